#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace artrec {

struct Event {
  std::uint64_t seq = 0;
  std::int64_t timestamp_ms = 0;
  std::string session_id;
  std::string kind;
  nlohmann::json payload;

  nlohmann::json to_json() const;
  static Event from_json(const nlohmann::json& j);
};

/// Append-only JSON-lines journal. One writer at a time (callers
/// serialize); each append is flushed before returning. A torn final line
/// left by a crash is cut off when the log is reopened.
class EventLog {
 public:
  /// Empty path: memory only, nothing persisted.
  explicit EventLog(std::filesystem::path path = {});

  const std::filesystem::path& path() const { return path_; }
  bool persistent() const { return !path_.empty(); }

  /// Events already on disk when the log was opened.
  const std::vector<Event>& recovered() const { return recovered_; }
  std::uint64_t size() const { return count_; }

  void append(const Event& event);

  static std::vector<Event> read_file(const std::filesystem::path& path);

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::vector<Event> recovered_;
  std::uint64_t count_ = 0;
};

}  // namespace artrec
