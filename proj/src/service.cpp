#include "artrec/service.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "artrec/error.hpp"
#include "artrec/random.hpp"

namespace artrec {

namespace {

constexpr const char* kSessionCreated = "session_created";
constexpr const char* kElicitationShown = "elicitation_shown";
constexpr const char* kRatingsSubmitted = "ratings_submitted";
constexpr const char* kRecommendationsServed = "recommendations_served";
constexpr const char* kFeedbackSubmitted = "feedback_submitted";

constexpr const char* kSnapshotFormat = "artrec-snapshot";
constexpr int kSnapshotVersion = 1;

void check_likert(int v, const char* what) {
  if (v < 1 || v > 5) {
    fail(ErrorKind::Validation,
         std::string(what) + " must be in 1..5 (got " + std::to_string(v) + ")");
  }
}

nlohmann::json ranking_to_json(const Ranking& r) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& it : r.items) items.push_back({it.painting_id, it.score});
  return items;
}

Ranking ranking_from_json(const std::string& engine, const nlohmann::json& j) {
  Ranking r{engine, {}};
  for (const auto& it : j) r.items.push_back({it.at(0).get<std::string>(), it.at(1).get<double>()});
  return r;
}

nlohmann::json session_to_json(const Session& s) {
  nlohmann::json ratings = nullptr;
  if (s.ratings) {
    ratings = nlohmann::json::array();
    for (const auto& [id, v] : s.ratings->entries()) ratings.push_back({id, v});
  }
  nlohmann::json rankings = nlohmann::json::object();
  for (const auto& [engine, r] : s.rankings) rankings[engine] = ranking_to_json(r);
  nlohmann::json feedback = nlohmann::json::object();
  for (const auto& [engine, f] : s.feedback) {
    feedback[engine] = {{"accuracy", f.accuracy},
                        {"diversity", f.diversity},
                        {"novelty", f.novelty},
                        {"serendipity", f.serendipity}};
  }
  return {{"id", s.id},
          {"age", s.demographics.age},
          {"gender", s.demographics.gender},
          {"visiting_style", visiting_style_name(s.visiting_style)},
          {"engine_order", s.engine_order},
          {"elicitation", s.elicitation},
          {"ratings", ratings},
          {"rankings", rankings},
          {"served", s.served},
          {"feedback", feedback},
          {"timestamps", s.timestamps}};
}

Session session_from_json(const nlohmann::json& j) {
  Session s;
  s.id = j.at("id").get<std::string>();
  s.demographics.age = j.at("age").get<std::string>();
  s.demographics.gender = j.at("gender").get<std::string>();
  s.visiting_style = parse_visiting_style(j.at("visiting_style").get<std::string>()).value();
  s.engine_order = j.at("engine_order").get<std::vector<std::string>>();
  s.elicitation = j.at("elicitation").get<std::vector<std::string>>();
  if (!j.at("ratings").is_null()) {
    std::vector<std::pair<std::string, int>> entries;
    for (const auto& e : j.at("ratings")) {
      entries.emplace_back(e.at(0).get<std::string>(), e.at(1).get<int>());
    }
    s.ratings = UserRatings(std::move(entries));
  }
  for (const auto& [engine, r] : j.at("rankings").items()) {
    s.rankings[engine] = ranking_from_json(engine, r);
  }
  s.served = j.at("served").get<int>();
  for (const auto& [engine, f] : j.at("feedback").items()) {
    s.feedback[engine] = {f.at("accuracy").get<int>(), f.at("diversity").get<int>(),
                          f.at("novelty").get<int>(), f.at("serendipity").get<int>()};
  }
  s.timestamps = j.at("timestamps").get<std::map<std::string, std::int64_t>>();
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::optional<VisitingStyle> parse_visiting_style(const std::string& name) {
  if (name == "ant") return VisitingStyle::Ant;
  if (name == "fish") return VisitingStyle::Fish;
  if (name == "grasshopper") return VisitingStyle::Grasshopper;
  if (name == "butterfly") return VisitingStyle::Butterfly;
  return std::nullopt;
}

const char* visiting_style_name(VisitingStyle style) {
  switch (style) {
    case VisitingStyle::Ant:
      return "ant";
    case VisitingStyle::Fish:
      return "fish";
    case VisitingStyle::Grasshopper:
      return "grasshopper";
    case VisitingStyle::Butterfly:
      return "butterfly";
  }
  return "ant";
}

std::string Session::step() const {
  if (elicitation.empty()) return "elicitation";
  if (!ratings) return "ratings";
  if (complete()) return "done";
  if (static_cast<int>(feedback.size()) == served) return "engine_" + std::to_string(served);
  return "feedback_" + std::to_string(served - 1);
}

void StudyData::validate() const {
  for (const char* engine : {engines::kLda, engines::kBert, engines::kResnet}) {
    auto it = matrices.find(engine);
    if (it == matrices.end()) {
      data_error(std::string("missing similarity matrix for engine '") + engine + "'");
    }
    const SimilarityMatrix& m = it->second;
    if (m.size() != corpus.size()) {
      data_error(std::string("similarity matrix for '") + engine +
                 "' does not match the corpus size");
    }
    for (const auto& p : corpus.paintings()) {
      if (m.index_of(p.id) < 0) {
        data_error(std::string("similarity matrix for '") + engine + "' lacks painting '" +
                   p.id + "'");
      }
    }
  }
}

void StudyExport::write_feedback_csv(std::ostream& out) const {
  out << "session_id,age,gender,visiting_style,position,engine,accuracy,diversity,novelty,"
         "serendipity\n";
  for (const auto& r : feedback) {
    out << csv_field(r.session_id) << ',' << csv_field(r.demographics.age) << ','
        << csv_field(r.demographics.gender) << ',' << visiting_style_name(r.visiting_style)
        << ',' << r.position << ',' << r.engine_id << ',' << r.feedback.accuracy << ','
        << r.feedback.diversity << ',' << r.feedback.novelty << ',' << r.feedback.serendipity
        << '\n';
  }
}

void StudyExport::write_rankings_tsv(std::ostream& out) const {
  out << "session_id\tengine\tranking\n";
  for (const auto& r : rankings) {
    out << r.session_id << '\t' << r.engine_id << '\t';
    for (std::size_t i = 0; i < r.ids.size(); ++i) out << (i ? "," : "") << r.ids[i];
    out << '\n';
  }
}

nlohmann::json StudyExport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : feedback) {
    rows.push_back({{"session_id", r.session_id},
                    {"age", r.demographics.age},
                    {"gender", r.demographics.gender},
                    {"visiting_style", visiting_style_name(r.visiting_style)},
                    {"position", r.position},
                    {"engine", r.engine_id},
                    {"accuracy", r.feedback.accuracy},
                    {"diversity", r.feedback.diversity},
                    {"novelty", r.feedback.novelty},
                    {"serendipity", r.feedback.serendipity}});
  }
  nlohmann::json rankings_json = nlohmann::json::array();
  for (const auto& r : rankings) {
    rankings_json.push_back({{"session_id", r.session_id}, {"engine", r.engine_id}, {"ids", r.ids}});
  }
  return {{"feedback", rows}, {"rankings", rankings_json}};
}

void StudyState::apply(const Event& e) {
  const auto& p = e.payload;
  if (e.kind == kSessionCreated) {
    Session s;
    s.id = e.session_id;
    s.demographics = {p.at("age").get<std::string>(), p.at("gender").get<std::string>()};
    s.visiting_style = parse_visiting_style(p.at("visiting_style").get<std::string>()).value();
    s.engine_order = p.at("engine_order").get<std::vector<std::string>>();
    s.timestamps["created"] = e.timestamp_ms;
    sessions.emplace(s.id, std::move(s));
    ++sessions_created;
  } else {
    Session& s = sessions.at(e.session_id);
    if (e.kind == kElicitationShown) {
      s.elicitation = p.at("paintings").get<std::vector<std::string>>();
      s.timestamps["elicitation"] = e.timestamp_ms;
    } else if (e.kind == kRatingsSubmitted) {
      std::vector<std::pair<std::string, int>> entries;
      for (const auto& r : p.at("ratings")) {
        entries.emplace_back(r.at(0).get<std::string>(), r.at(1).get<int>());
      }
      s.ratings = UserRatings(std::move(entries));
      for (const auto& [engine, r] : p.at("rankings").items()) {
        s.rankings[engine] = ranking_from_json(engine, r);
      }
      s.timestamps["ratings"] = e.timestamp_ms;
    } else if (e.kind == kRecommendationsServed) {
      s.served = p.at("index").get<int>() + 1;
      s.timestamps["served_" + std::to_string(s.served - 1)] = e.timestamp_ms;
    } else if (e.kind == kFeedbackSubmitted) {
      const auto engine = p.at("engine").get<std::string>();
      s.feedback[engine] = {p.at("accuracy").get<int>(), p.at("diversity").get<int>(),
                            p.at("novelty").get<int>(), p.at("serendipity").get<int>()};
      s.timestamps["feedback_" + engine] = e.timestamp_ms;
      if (s.complete()) s.timestamps["completed"] = e.timestamp_ms;
    } else {
      data_error("unknown event kind '" + e.kind + "'");
    }
  }
  ++events_applied;
}

nlohmann::json StudyState::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [_, s] : sessions) list.push_back(session_to_json(s));
  return {{"sessions_created", sessions_created},
          {"events_applied", events_applied},
          {"sessions", list}};
}

StudyState StudyState::from_json(const nlohmann::json& j) {
  StudyState st;
  st.sessions_created = j.at("sessions_created").get<std::uint64_t>();
  st.events_applied = j.at("events_applied").get<std::uint64_t>();
  for (const auto& s : j.at("sessions")) {
    Session session = session_from_json(s);
    st.sessions.emplace(session.id, std::move(session));
  }
  return st;
}

StudyExport StudyState::export_sessions() const {
  StudyExport out;
  for (const auto& [id, s] : sessions) {
    for (std::size_t pos = 0; pos < s.engine_order.size(); ++pos) {
      const std::string& engine = s.engine_order[pos];
      auto f = s.feedback.find(engine);
      if (f == s.feedback.end()) continue;
      out.feedback.push_back(
          {id, s.demographics, s.visiting_style, static_cast<int>(pos), engine, f->second});
    }
    for (const auto& engine : engines::all()) {
      auto r = s.rankings.find(engine);
      if (r != s.rankings.end()) out.rankings.push_back({id, engine, r->second.ids()});
    }
  }
  return out;
}

std::filesystem::path snapshot_path_for(const std::filesystem::path& log_path) {
  return std::filesystem::path(log_path.string() + ".snapshot");
}

StudyState replay(const std::vector<Event>& events, const std::filesystem::path& snapshot) {
  StudyState state;
  std::size_t start = 0;
  if (!snapshot.empty() && std::filesystem::exists(snapshot)) {
    std::ifstream in(snapshot);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      data_error("corrupt snapshot " + snapshot.string() + ": " + e.what());
    }
    if (j.value("format", "") != kSnapshotFormat || j.value("version", 0) != kSnapshotVersion) {
      data_error("unsupported snapshot format in " + snapshot.string());
    }
    const auto count = j.at("event_count").get<std::uint64_t>();
    // A snapshot ahead of the log cannot be trusted; fall back to a full replay.
    if (count <= events.size()) {
      state = StudyState::from_json(j.at("state"));
      start = count;
    }
  }
  for (std::size_t i = start; i < events.size(); ++i) state.apply(events[i]);
  return state;
}

StudyExport export_from_log(const std::filesystem::path& log_path) {
  if (!std::filesystem::exists(log_path)) data_error("no event log at " + log_path.string());
  return replay(EventLog::read_file(log_path), snapshot_path_for(log_path)).export_sessions();
}

StudyService::StudyService(std::shared_ptr<const StudyData> data, ServiceConfig config)
    : data_(std::move(data)), config_(std::move(config)) {
  data_->validate();
  if (config_.r < 1 ||
      static_cast<std::size_t>(config_.r) + data_->corpus.story_groups().size() >
          data_->corpus.size()) {
    fail(ErrorKind::Usage, "r = " + std::to_string(config_.r) +
                               " leaves too few unrated paintings in the corpus");
  }
  if (!config_.clock) {
    config_.clock = [] {
      return std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::system_clock::now().time_since_epoch())
          .count();
    };
  }
  log_ = std::make_unique<EventLog>(config_.log_path);
  if (log_->persistent()) {
    state_ = replay(log_->recovered(), snapshot_path_for(config_.log_path));
  }
}

std::int64_t StudyService::now() const { return config_.clock(); }

Session& StudyService::find(const std::string& session_id) {
  auto it = state_.sessions.find(session_id);
  if (it == state_.sessions.end()) fail(ErrorKind::NotFound, "unknown session '" + session_id + "'");
  return it->second;
}

void StudyService::record(Event event) {
  event.seq = log_->size();
  event.timestamp_ms = now();
  log_->append(event);
  state_.apply(event);
  if (log_->persistent() && config_.snapshot_every > 0 &&
      log_->size() % config_.snapshot_every == 0) {
    write_snapshot_locked();
  }
}

Session StudyService::create_session(const Demographics& demographics,
                                     const std::string& visiting_style) {
  const auto style = parse_visiting_style(visiting_style);
  if (!style) {
    fail(ErrorKind::Validation,
         "visiting_style must be one of ant, fish, grasshopper, butterfly (got '" +
             visiting_style + "')");
  }
  std::lock_guard lock(mutex_);
  // Per-session generator keyed by the creation count, so a restarted
  // service continues the sequence instead of repeating it.
  std::mt19937_64 gen(mix_seed(config_.seed, state_.sessions_created));
  std::string id;
  do {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(gen()));
    id = buf;
  } while (state_.sessions.count(id));
  std::vector<std::string> order = engines::all();
  seeded_shuffle(order.begin(), order.end(), gen);

  Event e;
  e.session_id = id;
  e.kind = kSessionCreated;
  e.payload = {{"age", demographics.age},
               {"gender", demographics.gender},
               {"visiting_style", visiting_style_name(*style)},
               {"engine_order", order}};
  record(std::move(e));
  return state_.sessions.at(id);
}

std::vector<Painting> StudyService::get_elicitation(const std::string& session_id) {
  std::lock_guard lock(mutex_);
  Session& s = find(session_id);
  if (s.ratings) fail(ErrorKind::Sequence, "ratings already submitted for this session");
  if (s.elicitation.empty()) {
    std::vector<std::string> ids;
    for (const auto& p : sample_elicitation(data_->corpus, stable_hash(session_id))) {
      ids.push_back(p.id);
    }
    Event e;
    e.session_id = session_id;
    e.kind = kElicitationShown;
    e.payload = {{"paintings", ids}};
    record(std::move(e));
  }
  std::vector<Painting> out;
  for (const auto& id : find(session_id).elicitation) out.push_back(data_->corpus.get(id));
  return out;
}

void StudyService::submit_ratings(const std::string& session_id,
                                  const std::vector<std::pair<std::string, int>>& ratings) {
  std::lock_guard lock(mutex_);
  Session& s = find(session_id);
  if (s.ratings) fail(ErrorKind::Conflict, "ratings already submitted for this session");
  if (s.elicitation.empty()) {
    fail(ErrorKind::Sequence, "elicitation set has not been requested yet");
  }
  const std::set<std::string> expected(s.elicitation.begin(), s.elicitation.end());
  std::set<std::string> given;
  for (const auto& [id, v] : ratings) {
    if (!expected.count(id)) {
      fail(ErrorKind::Validation, "painting '" + id + "' is not in the elicitation set");
    }
    given.insert(id);
  }
  for (const auto& id : s.elicitation) {
    if (!given.count(id)) fail(ErrorKind::Validation, "missing rating for painting '" + id + "'");
  }
  const UserRatings user_ratings(ratings);  // range and duplicate checks

  std::map<std::string, const SimilarityMatrix*> refs;
  for (const auto& [engine, m] : data_->matrices) refs[engine] = &m;
  const auto rankings = engine_rankings(user_ratings, refs, config_.r, config_.fusion);

  nlohmann::json ratings_json = nlohmann::json::array();
  for (const auto& [id, v] : user_ratings.entries()) ratings_json.push_back({id, v});
  nlohmann::json rankings_json = nlohmann::json::object();
  for (const auto& [engine, r] : rankings) rankings_json[engine] = ranking_to_json(r);

  Event e;
  e.session_id = session_id;
  e.kind = kRatingsSubmitted;
  e.payload = {{"ratings", ratings_json}, {"rankings", rankings_json}};
  record(std::move(e));
}

Ranking StudyService::get_recommendations(const std::string& session_id, int index) {
  std::lock_guard lock(mutex_);
  Session& s = find(session_id);
  if (!s.ratings) fail(ErrorKind::Sequence, "ratings must be submitted before recommendations");
  const int engines_n = static_cast<int>(s.engine_order.size());
  if (index < 0 || index >= engines_n) {
    fail(ErrorKind::Validation,
         "engine index must be in 0.." + std::to_string(engines_n - 1));
  }
  const std::string& engine = s.engine_order[static_cast<std::size_t>(index)];
  const bool current_pending = index == s.served - 1 && !s.feedback.count(engine);
  const bool next_unlocked =
      index == s.served && static_cast<int>(s.feedback.size()) == s.served;
  if (!current_pending && !next_unlocked) {
    fail(ErrorKind::Sequence, "engine " + std::to_string(index) +
                                  " is not available now (session step: " + s.step() + ")");
  }
  if (next_unlocked) {
    Event e;
    e.session_id = session_id;
    e.kind = kRecommendationsServed;
    e.payload = {{"index", index}, {"engine", engine}};
    record(std::move(e));
  }
  return find(session_id).rankings.at(engine);
}

bool StudyService::submit_feedback(const std::string& session_id, const std::string& engine_id,
                                   const Feedback& feedback) {
  std::lock_guard lock(mutex_);
  Session& s = find(session_id);
  if (!engines::is_known(engine_id)) {
    fail(ErrorKind::Validation, "unknown engine '" + engine_id + "'");
  }
  bool served = false;
  for (int i = 0; i < s.served; ++i) served |= s.engine_order[static_cast<std::size_t>(i)] == engine_id;
  if (!served) fail(ErrorKind::Sequence, "engine '" + engine_id + "' has not been served yet");
  if (s.feedback.count(engine_id)) {
    fail(ErrorKind::Conflict, "feedback for engine '" + engine_id + "' already submitted");
  }
  check_likert(feedback.accuracy, "accuracy");
  check_likert(feedback.diversity, "diversity");
  check_likert(feedback.novelty, "novelty");
  check_likert(feedback.serendipity, "serendipity");

  Event e;
  e.session_id = session_id;
  e.kind = kFeedbackSubmitted;
  e.payload = {{"engine", engine_id},
               {"accuracy", feedback.accuracy},
               {"diversity", feedback.diversity},
               {"novelty", feedback.novelty},
               {"serendipity", feedback.serendipity}};
  record(std::move(e));
  return find(session_id).complete();
}

Session StudyService::session(const std::string& session_id) const {
  std::lock_guard lock(mutex_);
  auto it = state_.sessions.find(session_id);
  if (it == state_.sessions.end()) fail(ErrorKind::NotFound, "unknown session '" + session_id + "'");
  return it->second;
}

std::size_t StudyService::session_count() const {
  std::lock_guard lock(mutex_);
  return state_.sessions.size();
}

StudyExport StudyService::export_sessions() const {
  std::lock_guard lock(mutex_);
  return state_.export_sessions();
}

bool StudyService::check_admin_token(const std::string& token) const {
  return !config_.admin_token.empty() && token == config_.admin_token;
}

nlohmann::json StudyService::state_json() const {
  std::lock_guard lock(mutex_);
  return state_.to_json();
}

void StudyService::write_snapshot() const {
  std::lock_guard lock(mutex_);
  if (log_->persistent()) write_snapshot_locked();
}

void StudyService::write_snapshot_locked() const {
  const auto path = snapshot_path_for(config_.log_path);
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp);
    out << nlohmann::json{{"format", kSnapshotFormat},
                          {"version", kSnapshotVersion},
                          {"event_count", log_->size()},
                          {"state", state_.to_json()}}
               .dump()
        << '\n';
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace artrec
