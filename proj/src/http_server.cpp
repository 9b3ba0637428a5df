#include "artrec/http_server.hpp"

#include <sstream>

#include "httplib.h"

#include "artrec/error.hpp"

namespace artrec {

namespace {

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotFound:
      return 404;
    case ErrorKind::Sequence:
    case ErrorKind::Conflict:
      return 409;
    case ErrorKind::Unauthorized:
      return 401;
    case ErrorKind::Usage:
    case ErrorKind::Validation:
    case ErrorKind::Data:
      return 400;
  }
  return 500;
}

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage:
      return "usage";
    case ErrorKind::Data:
      return "data";
    case ErrorKind::NotFound:
      return "not_found";
    case ErrorKind::Validation:
      return "validation";
    case ErrorKind::Sequence:
      return "sequence";
    case ErrorKind::Conflict:
      return "conflict";
    case ErrorKind::Unauthorized:
      return "unauthorized";
  }
  return "error";
}

void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

nlohmann::json parse_body(const httplib::Request& req) {
  try {
    auto j = nlohmann::json::parse(req.body);
    if (!j.is_object()) fail(ErrorKind::Validation, "request body must be a JSON object");
    return j;
  } catch (const nlohmann::json::parse_error&) {
    fail(ErrorKind::Validation, "request body is not valid JSON");
  }
}

std::string optional_string(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number()) return it->dump();
  fail(ErrorKind::Validation, std::string("field '") + key + "' must be a string");
}

int required_int(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer()) {
    fail(ErrorKind::Validation, std::string("field '") + key + "' must be an integer");
  }
  return it->get<int>();
}

nlohmann::json painting_json(const Painting& p) {
  return {{"id", p.id},
          {"title", p.title},
          {"artist", p.artist},
          {"date", p.date},
          {"image_ref", p.image_ref}};
}

nlohmann::json session_status(const Session& s) {
  return {{"session_id", s.id},
          {"step", s.step()},
          {"engine_count", s.engine_order.size()},
          {"served", s.served},
          {"feedback_count", s.feedback.size()},
          {"complete", s.complete()}};
}

// Wraps a handler so domain errors become JSON error responses.
template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send_json(res, status_for(e.kind()), {{"error", e.what()}, {"kind", kind_name(e.kind())}});
    } catch (const nlohmann::json::exception& e) {
      send_json(res, 400, {{"error", e.what()}, {"kind", "validation"}});
    } catch (const std::exception& e) {
      send_json(res, 500, {{"error", e.what()}, {"kind", "internal"}});
    }
  };
}

}  // namespace

HttpFrontend::HttpFrontend(StudyService& service, HttpOptions options)
    : service_(service), options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  const int threads = options_.threads;
  server_->new_task_queue = [threads] {
    return new httplib::ThreadPool(static_cast<std::size_t>(threads));
  };
  install_routes();
}

HttpFrontend::~HttpFrontend() { stop(); }

int HttpFrontend::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = server_->bind_to_any_port(host);
    if (bound < 0) data_error("cannot bind HTTP server on " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port)) {
    data_error("cannot bind HTTP server on " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpFrontend::listen() { server_->listen_after_bind(); }

void HttpFrontend::stop() {
  if (server_) server_->stop();
}

bool HttpFrontend::running() const { return server_->is_running(); }

void HttpFrontend::install_routes() {
  auto& svc = service_;
  httplib::Server& s = *server_;

  s.Post("/sessions", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
           const auto body = parse_body(req);
           const Session session = svc.create_session(
               {optional_string(body, "age"), optional_string(body, "gender")},
               optional_string(body, "visiting_style"));
           auto status = session_status(session);
           status["r"] = svc.config().r;
           send_json(res, 201, status);
         }));

  s.Get(R"(/sessions/([0-9a-f]+))",
        guarded([&svc](const httplib::Request& req, httplib::Response& res) {
          send_json(res, 200, session_status(svc.session(req.matches[1])));
        }));

  s.Get(R"(/sessions/([0-9a-f]+)/elicitation)",
        guarded([&svc](const httplib::Request& req, httplib::Response& res) {
          nlohmann::json list = nlohmann::json::array();
          for (const auto& p : svc.get_elicitation(req.matches[1])) list.push_back(painting_json(p));
          send_json(res, 200, {{"paintings", list}});
        }));

  s.Post(R"(/sessions/([0-9a-f]+)/ratings)",
         guarded([&svc](const httplib::Request& req, httplib::Response& res) {
           const auto body = parse_body(req);
           auto it = body.find("ratings");
           if (it == body.end() || !it->is_object()) {
             fail(ErrorKind::Validation, "'ratings' must map painting ids to 1..5 ratings");
           }
           std::vector<std::pair<std::string, int>> ratings;
           for (const auto& [id, v] : it->items()) {
             if (!v.is_number_integer()) {
               fail(ErrorKind::Validation, "rating for '" + id + "' must be an integer");
             }
             ratings.emplace_back(id, v.get<int>());
           }
           svc.submit_ratings(req.matches[1], ratings);
           send_json(res, 200, {{"status", "ok"}, {"recommendations_available", true}});
         }));

  s.Get(R"(/sessions/([0-9a-f]+)/recommendations/(-?\d+))",
        guarded([&svc](const httplib::Request& req, httplib::Response& res) {
          const int index = std::stoi(req.matches[2]);
          const Ranking ranking = svc.get_recommendations(req.matches[1], index);
          nlohmann::json list = nlohmann::json::array();
          for (const auto& item : ranking.items) {
            auto p = painting_json(svc.data().corpus.get(item.painting_id));
            p["score"] = item.score;
            list.push_back(std::move(p));
          }
          send_json(res, 200, {{"index", index}, {"engine_id", ranking.engine_id}, {"paintings", list}});
        }));

  s.Post(R"(/sessions/([0-9a-f]+)/feedback)",
         guarded([&svc](const httplib::Request& req, httplib::Response& res) {
           const auto body = parse_body(req);
           const Feedback f{required_int(body, "accuracy"), required_int(body, "diversity"),
                            required_int(body, "novelty"), required_int(body, "serendipity")};
           const bool complete = svc.submit_feedback(req.matches[1], optional_string(body, "engine_id"), f);
           send_json(res, 200, {{"status", "ok"}, {"complete", complete}});
         }));

  s.Get("/export", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
          if (!svc.check_admin_token(req.get_header_value("X-Admin-Token"))) {
            fail(ErrorKind::Unauthorized, "missing or wrong admin token");
          }
          const StudyExport data = svc.export_sessions();
          const std::string table = req.has_param("table") ? req.get_param_value("table") : "";
          std::ostringstream out;
          if (table == "feedback") {
            data.write_feedback_csv(out);
            res.set_content(out.str(), "text/csv");
          } else if (table == "rankings") {
            data.write_rankings_tsv(out);
            res.set_content(out.str(), "text/tab-separated-values");
          } else if (table.empty()) {
            send_json(res, 200, data.to_json());
          } else {
            fail(ErrorKind::Validation, "table must be 'feedback' or 'rankings'");
          }
        }));

  if (!options_.image_dir.empty()) s.set_mount_point("/images", options_.image_dir.string());
  if (!options_.static_dir.empty()) s.set_mount_point("/", options_.static_dir.string());
}

}  // namespace artrec
