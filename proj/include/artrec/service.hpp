#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "artrec/corpus.hpp"
#include "artrec/embed.hpp"
#include "artrec/event_log.hpp"
#include "artrec/recsys.hpp"

namespace artrec {

enum class VisitingStyle { Ant, Fish, Grasshopper, Butterfly };

std::optional<VisitingStyle> parse_visiting_style(const std::string& name);
const char* visiting_style_name(VisitingStyle style);

struct Demographics {
  std::string age;
  std::string gender;
};

/// Four 1..5 answers about one engine's recommendation set.
struct Feedback {
  int accuracy = 0;
  int diversity = 0;
  int novelty = 0;
  int serendipity = 0;
};

struct Session {
  std::string id;
  Demographics demographics;
  VisitingStyle visiting_style = VisitingStyle::Ant;
  std::vector<std::string> engine_order;
  std::vector<std::string> elicitation;
  std::optional<UserRatings> ratings;
  std::map<std::string, Ranking> rankings;  // derived from ratings
  int served = 0;                           // engines served so far
  std::map<std::string, Feedback> feedback;
  std::map<std::string, std::int64_t> timestamps;

  bool complete() const { return feedback.size() == engine_order.size(); }
  /// One of: elicitation, ratings, engine_<i>, feedback_<i>, done.
  std::string step() const;
};

/// Corpus and per-engine similarity matrices shared read-only by the service.
struct StudyData {
  Corpus corpus;
  std::map<std::string, SimilarityMatrix> matrices;  // lda, bert, resnet

  void validate() const;
};

struct ServiceConfig {
  int r = kDefaultRecommendations;
  std::uint64_t seed = 0;
  FusionMode fusion = FusionMode::WeightedReciprocalSum;
  std::filesystem::path log_path;     // empty: in-memory only
  std::uint64_t snapshot_every = 100;  // 0 disables snapshots
  std::string admin_token;
  std::function<std::int64_t()> clock;  // epoch ms; defaults to system clock
};

struct FeedbackRow {
  std::string session_id;
  Demographics demographics;
  VisitingStyle visiting_style;
  int position;
  std::string engine_id;
  Feedback feedback;
};

struct RankingRow {
  std::string session_id;
  std::string engine_id;
  std::vector<std::string> ids;
};

struct StudyExport {
  std::vector<FeedbackRow> feedback;
  std::vector<RankingRow> rankings;

  void write_feedback_csv(std::ostream& out) const;
  /// `session_id<TAB>engine<TAB>id1,id2,...`, readable by read_rankings_tsv.
  void write_rankings_tsv(std::ostream& out) const;
  nlohmann::json to_json() const;
};

/// Session table rebuilt purely from events. Rankings travel inside the
/// ratings event, so replay needs no similarity matrices.
class StudyState {
 public:
  void apply(const Event& event);

  std::map<std::string, Session> sessions;
  std::uint64_t sessions_created = 0;
  std::uint64_t events_applied = 0;

  nlohmann::json to_json() const;
  static StudyState from_json(const nlohmann::json& j);
  StudyExport export_sessions() const;
};

/// Snapshot (if present and consistent) plus the log tail.
StudyState replay(const std::vector<Event>& events, const std::filesystem::path& snapshot);
std::filesystem::path snapshot_path_for(const std::filesystem::path& log_path);

/// The elicitation -> recommendation -> feedback study flow. Every state
/// change is an event: validated, appended to the log, then applied, so
/// replaying the log rebuilds the same sessions.
class StudyService {
 public:
  StudyService(std::shared_ptr<const StudyData> data, ServiceConfig config);

  Session create_session(const Demographics& demographics, const std::string& visiting_style);
  std::vector<Painting> get_elicitation(const std::string& session_id);
  void submit_ratings(const std::string& session_id,
                      const std::vector<std::pair<std::string, int>>& ratings);
  /// Engine id and its ranked paintings for step `index` of the session's
  /// engine order.
  Ranking get_recommendations(const std::string& session_id, int index);
  /// Returns true when this feedback completes the session.
  bool submit_feedback(const std::string& session_id, const std::string& engine_id,
                       const Feedback& feedback);

  Session session(const std::string& session_id) const;
  std::size_t session_count() const;
  StudyExport export_sessions() const;
  bool check_admin_token(const std::string& token) const;

  /// Canonical JSON of every session, for comparing replayed state.
  nlohmann::json state_json() const;
  void write_snapshot() const;

  const StudyData& data() const { return *data_; }
  const ServiceConfig& config() const { return config_; }

 private:
  Session& find(const std::string& session_id);
  void record(Event event);
  void write_snapshot_locked() const;
  std::int64_t now() const;

  std::shared_ptr<const StudyData> data_;
  ServiceConfig config_;
  mutable std::mutex mutex_;
  StudyState state_;
  std::unique_ptr<EventLog> log_;
};

/// Export straight from a log file (and its snapshot), no matrices needed.
StudyExport export_from_log(const std::filesystem::path& log_path);

}  // namespace artrec
