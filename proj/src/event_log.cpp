#include "artrec/event_log.hpp"

#include "artrec/error.hpp"

namespace artrec {

nlohmann::json Event::to_json() const {
  return {{"seq", seq},
          {"ts", timestamp_ms},
          {"session", session_id},
          {"kind", kind},
          {"payload", payload}};
}

Event Event::from_json(const nlohmann::json& j) {
  Event e;
  e.seq = j.at("seq").get<std::uint64_t>();
  e.timestamp_ms = j.at("ts").get<std::int64_t>();
  e.session_id = j.at("session").get<std::string>();
  e.kind = j.at("kind").get<std::string>();
  e.payload = j.at("payload");
  return e;
}

namespace {

// Parses complete lines; returns the byte length of the valid prefix.
std::uintmax_t scan(const std::filesystem::path& path, std::vector<Event>& events) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return 0;
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    const auto nl = content.find('\n', pos);
    if (nl == std::string::npos) break;  // torn tail
    ++line_no;
    const std::string line = content.substr(pos, nl - pos);
    try {
      Event e = Event::from_json(nlohmann::json::parse(line));
      if (e.seq != events.size()) {
        data_error(path.string() + " line " + std::to_string(line_no) + ": sequence gap");
      }
      events.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      data_error(path.string() + " line " + std::to_string(line_no) +
                 ": corrupt event: " + ex.what());
    }
    pos = nl + 1;
  }
  return pos;
}

}  // namespace

std::vector<Event> EventLog::read_file(const std::filesystem::path& path) {
  std::vector<Event> events;
  scan(path, events);
  return events;
}

EventLog::EventLog(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.empty()) return;
  if (std::filesystem::exists(path_)) {
    const auto valid = scan(path_, recovered_);
    if (valid != std::filesystem::file_size(path_)) {
      std::filesystem::resize_file(path_, valid);
    }
  }
  count_ = recovered_.size();
  out_.open(path_, std::ios::binary | std::ios::app);
  if (!out_) data_error("cannot open event log " + path_.string());
}

void EventLog::append(const Event& event) {
  if (event.seq != count_) data_error("event log sequence mismatch");
  if (out_.is_open()) {
    out_ << event.to_json().dump() << '\n';
    out_.flush();
    if (!out_) data_error("failed writing event log " + path_.string());
  }
  ++count_;
}

}  // namespace artrec
