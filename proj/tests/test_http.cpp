#include <chrono>
#include <fstream>
#include <thread>

#include "httplib.h"
#include "doctest.h"

#include "artrec/http_server.hpp"
#include "service_support.hpp"

using namespace artrec;
using nlohmann::json;

namespace {

struct RunningServer {
  testing::TempDir tmp{"artrec-http"};
  std::unique_ptr<StudyService> service;
  std::unique_ptr<HttpFrontend> frontend;
  std::thread thread;
  int port = 0;

  RunningServer() {
    std::filesystem::create_directories(tmp / "static");
    std::filesystem::create_directories(tmp / "images");
    std::ofstream(tmp / "static" / "index.html") << "<html>study</html>";
    std::ofstream(tmp / "images" / "P001.jpg") << "jpegbytes";

    ServiceConfig cfg;
    cfg.seed = 5;
    cfg.admin_token = "tok";
    cfg.log_path = tmp / "events.jsonl";
    service = std::make_unique<StudyService>(testing::fixture_study_data(), cfg);
    frontend = std::make_unique<HttpFrontend>(*service, HttpOptions{tmp / "static", tmp / "images", 4});
    port = frontend->bind("127.0.0.1", 0);
    thread = std::thread([this] { frontend->listen(); });
    for (int i = 0; i < 200 && !frontend->running(); ++i) {
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  }
  ~RunningServer() {
    frontend->stop();
    thread.join();
  }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port);
    c.set_read_timeout(10, 0);
    return c;
  }
};

json body_of(const httplib::Result& r) {
  REQUIRE(r);
  return json::parse(r->body);
}

json post(httplib::Client& c, const std::string& path, const json& body, int expected) {
  const auto r = c.Post(path, body.dump(), "application/json");
  REQUIRE(r);
  CHECK(r->status == expected);
  return json::parse(r->body);
}

json get(httplib::Client& c, const std::string& path, int expected) {
  const auto r = c.Get(path);
  REQUIRE(r);
  CHECK(r->status == expected);
  return json::parse(r->body);
}

}  // namespace

TEST_SUITE("http") {

TEST_CASE("full study over HTTP") {
  RunningServer server;
  REQUIRE(server.frontend->running());
  auto c = server.client();

  const auto created = post(c, "/sessions", {{"age", "30-39"}, {"gender", "f"}, {"visiting_style", "fish"}}, 201);
  const std::string id = created.at("session_id");
  CHECK(created.at("step") == "elicitation");
  CHECK(created.at("r") == 9);

  const auto shown = get(c, "/sessions/" + id + "/elicitation", 200).at("paintings");
  REQUIRE(shown.size() == 9);
  CHECK(shown[0].contains("image_ref"));

  json ratings = json::object();
  for (const auto& p : shown) ratings[p.at("id").get<std::string>()] = 4;
  post(c, "/sessions/" + id + "/ratings", {{"ratings", ratings}}, 200);

  std::set<std::string> engines_seen;
  for (int i = 0; i < 5; ++i) {
    const auto rec = get(c, "/sessions/" + id + "/recommendations/" + std::to_string(i), 200);
    CHECK(rec.at("paintings").size() == 9);
    engines_seen.insert(rec.at("engine_id").get<std::string>());
    if (i + 1 < 5) get(c, "/sessions/" + id + "/recommendations/" + std::to_string(i + 1), 409);
    const auto fb = post(c, "/sessions/" + id + "/feedback",
                         {{"engine_id", rec.at("engine_id")}, {"accuracy", 4}, {"diversity", 3},
                          {"novelty", 2}, {"serendipity", 5}},
                         200);
    CHECK(fb.at("complete") == (i == 4));
  }
  CHECK(engines_seen.size() == 5);
  CHECK(get(c, "/sessions/" + id, 200).at("step") == "done");

  SUBCASE("export requires the admin token") {
    CHECK(c.Get("/export")->status == 401);
    httplib::Headers h = {{"X-Admin-Token", "tok"}};
    const auto all = c.Get("/export", h);
    REQUIRE(all);
    CHECK(all->status == 200);
    CHECK(json::parse(all->body).at("feedback").size() == 5);
    const auto csv = c.Get("/export?table=feedback", h);
    CHECK(csv->get_header_value("Content-Type") == "text/csv");
    CHECK(std::count(csv->body.begin(), csv->body.end(), '\n') == 6);
    const auto tsv = c.Get("/export?table=rankings", h);
    CHECK(std::count(tsv->body.begin(), tsv->body.end(), '\n') == 6);
    CHECK(c.Get("/export?table=other", h)->status == 400);
  }
}

TEST_CASE("error responses carry status and kind") {
  RunningServer server;
  auto c = server.client();
  CHECK(get(c, "/sessions/abcdef0123456789", 404).at("kind") == "not_found");
  CHECK(post(c, "/sessions", {{"visiting_style", "bee"}}, 400).at("kind") == "validation");
  const auto r = c.Post("/sessions", "{not json", "application/json");
  REQUIRE(r);
  CHECK(r->status == 400);

  const std::string id = post(c, "/sessions", {{"visiting_style", "ant"}}, 201).at("session_id");
  CHECK(post(c, "/sessions/" + id + "/ratings", {{"ratings", json::object()}}, 409).at("kind") == "sequence");
  const auto shown = get(c, "/sessions/" + id + "/elicitation", 200).at("paintings");
  CHECK(post(c, "/sessions/" + id + "/ratings", {{"ratings", {{"P001", "five"}}}}, 400).at("kind") ==
        "validation");
  json ratings = json::object();
  for (const auto& p : shown) ratings[p.at("id").get<std::string>()] = 2;
  post(c, "/sessions/" + id + "/ratings", {{"ratings", ratings}}, 200);
  CHECK(post(c, "/sessions/" + id + "/ratings", {{"ratings", ratings}}, 409).at("kind") == "conflict");
  CHECK(post(c, "/sessions/" + id + "/feedback", {{"engine_id", "lda"}, {"accuracy", 1}}, 400).at("kind") ==
        "validation");
}

TEST_CASE("static files and images are served") {
  RunningServer server;
  auto c = server.client();
  const auto index = c.Get("/index.html");
  REQUIRE(index);
  CHECK(index->status == 200);
  CHECK(index->body == "<html>study</html>");
  const auto img = c.Get("/images/P001.jpg");
  REQUIRE(img);
  CHECK(img->body == "jpegbytes");
  CHECK(c.Get("/images/missing.jpg")->status == 404);
}

TEST_CASE("concurrent sessions over HTTP") {
  RunningServer server;
  std::vector<std::thread> clients;
  std::atomic<int> completed{0};
  for (int t = 0; t < 8; ++t) {
    clients.emplace_back([&server, &completed] {
      auto c = server.client();
      auto r = c.Post("/sessions", R"({"visiting_style":"ant"})", "application/json");
      if (!r || r->status != 201) return;
      const std::string id = json::parse(r->body).at("session_id");
      const auto shown = json::parse(c.Get("/sessions/" + id + "/elicitation")->body).at("paintings");
      json ratings = json::object();
      for (const auto& p : shown) ratings[p.at("id").get<std::string>()] = 3;
      c.Post("/sessions/" + id + "/ratings", json{{"ratings", ratings}}.dump(), "application/json");
      for (int i = 0; i < 5; ++i) {
        const auto rec = json::parse(c.Get("/sessions/" + id + "/recommendations/" + std::to_string(i))->body);
        const json fb = {{"engine_id", rec.at("engine_id")}, {"accuracy", 3}, {"diversity", 3},
                         {"novelty", 3}, {"serendipity", 3}};
        const auto done = c.Post("/sessions/" + id + "/feedback", fb.dump(), "application/json");
        if (i == 4 && done && json::parse(done->body).at("complete") == true) ++completed;
      }
    });
  }
  for (auto& t : clients) t.join();
  CHECK(completed == 8);
  CHECK(server.service->export_sessions().feedback.size() == 40);
  // every event made it to disk in order
  CHECK(EventLog::read_file(server.tmp / "events.jsonl").size() == 8 * (1 + 1 + 1 + 5 + 5));
}

}  // TEST_SUITE
