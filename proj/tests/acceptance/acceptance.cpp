// Acceptance suite: one PASS/FAIL line per criterion, each under its time
// budget. Exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "httplib.h"

#include "artrec/ctfidf.hpp"
#include "artrec/embed.hpp"
#include "artrec/http_server.hpp"
#include "artrec/kernels.hpp"
#include "artrec/lda.hpp"
#include "artrec/metrics.hpp"
#include "artrec/recsys.hpp"
#include "artrec/service.hpp"
#include "oracles.hpp"
#include "service_support.hpp"

using namespace artrec;
using nlohmann::json;

namespace {

/// Collects failed expectations for one criterion.
struct Check {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
  bool ok() const { return failures.empty(); }
};

int failed = 0;

void criterion(const std::string& name, double budget_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(secs < budget_s, "runtime over budget");
  if (!c.ok()) ++failed;
  std::ostringstream t;
  t.precision(3);
  t << std::fixed << secs;
  std::cout << (c.ok() ? "PASS" : "FAIL") << "  " << name << "  (" << t.str() << " s / " << budget_s << " s)";
  for (const auto& f : c.failures) std::cout << "\n      " << f;
  std::cout << std::endl;
}

Ranking ranking_of(const std::vector<std::string>& ids, const std::string& engine = "X") {
  Ranking r{engine, {}};
  for (std::size_t i = 0; i < ids.size(); ++i) r.items.push_back({ids[i], static_cast<double>(ids.size() - i)});
  return r;
}

std::vector<std::string> prefix(const Ranking& r, int n) {
  auto ids = r.ids();
  ids.resize(static_cast<std::size_t>(n));
  return ids;
}

std::vector<std::string> shuffled(std::vector<std::string> v, std::mt19937_64& gen) {
  seeded_shuffle(v.begin(), v.end(), gen);
  return v;
}

std::vector<std::pair<std::string, int>> rate_all(const std::vector<Painting>& shown, int rating) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& p : shown) out.emplace_back(p.id, rating);
  return out;
}

void scoring_oracle(Check& c) {
  std::mt19937_64 gen(101);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 2 + uniform_index(gen, 9);
    const std::size_t n = 1 + uniform_index(gen, std::min<std::uint64_t>(5, m - 1));
    const std::size_t dim = 1 + uniform_index(gen, 6);
    const auto set = testing::random_embeddings(gen, m, dim, "x");
    const auto matrix = build_similarity(set);
    const auto rated = shuffled(set.ids(), gen);
    std::vector<std::pair<std::string, int>> entries;
    for (std::size_t j = 0; j < n; ++j) entries.emplace_back(rated[j], 1 + static_cast<int>(uniform_index(gen, 5)));
    const UserRatings ratings(entries);
    const auto got = score_paintings(matrix, ratings);
    const auto want = oracle::scores(matrix, ratings);
    for (std::size_t i = 0; i < m; ++i) {
      c.expect(std::abs(got[i] - want[i]) <= 1e-12, "trial " + std::to_string(trial) + " row " + std::to_string(i));
    }
  }
}

void similarity_properties(Check& c) {
  std::mt19937_64 gen(202);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 1 + uniform_index(gen, 200);
    const std::size_t dim = 1 + uniform_index(gen, 64);
    const auto set = testing::random_embeddings(gen, m, dim, "x");
    const auto a = build_similarity(set);

    std::vector<double> scaled(set.size() * dim);
    for (std::size_t i = 0; i < m; ++i) {
      const double s = std::exp(4.0 * (2.0 * uniform01(gen) - 1.0));
      const auto row = set.row(i);
      for (std::size_t d = 0; d < dim; ++d) scaled[i * dim + d] = s * row[d];
    }
    const auto b = build_similarity(EmbeddingSet("x", dim, set.ids(), std::move(scaled)));

    const std::string tag = "trial " + std::to_string(trial);
    for (std::size_t i = 0; i < m; ++i) {
      c.expect(std::abs(a.at(i, i) - 1.0) <= 1e-9, tag + ": diagonal");
      for (std::size_t j = 0; j < m; ++j) {
        c.expect(std::abs(a.at(i, j) - a.at(j, i)) <= 1e-9, tag + ": symmetry");
        c.expect(a.at(i, j) >= -1.0 - 1e-9 && a.at(i, j) <= 1.0 + 1e-9, tag + ": range");
        c.expect(std::abs(a.at(i, j) - b.at(i, j)) <= 1e-9, tag + ": scale invariance");
      }
    }
  }
}

void fusion(Check& c) {
  std::mt19937_64 gen(303);
  const auto a = ranking_of({"p1", "p2", "p3"}, "lda");
  const auto b = ranking_of({"p3", "p2", "p1"}, "resnet");
  const auto sum = fuse(a, b, 0.5, 0.5, 3, FusionMode::WeightedReciprocalSum);
  c.expect(sum.ids() == std::vector<std::string>{"p1", "p3", "p2"}, "hand example order (sum)");
  c.expect(std::abs(sum.items[0].score - (0.5 + 0.5 / 3)) <= 1e-12, "hand example p1 (sum)");
  c.expect(std::abs(sum.items[1].score - (0.5 + 0.5 / 3)) <= 1e-12, "hand example p3 (sum)");
  c.expect(std::abs(sum.items[2].score - 0.5) <= 1e-12, "hand example p2 (sum)");
  const auto prod = fuse(a, b, 0.5, 0.5, 3, FusionMode::ReciprocalProduct);
  c.expect(prod.ids() == std::vector<std::string>{"p1", "p3", "p2"}, "hand example order (product)");
  c.expect(std::abs(prod.items[0].score - 1.0 / 3) <= 1e-12, "hand example p1 (product)");
  c.expect(std::abs(prod.items[1].score - 1.0 / 3) <= 1e-12, "hand example p3 (product)");
  c.expect(std::abs(prod.items[2].score - 0.25) <= 1e-12, "hand example p2 (product)");

  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + uniform_index(gen, 40);
    const auto ids = testing::make_ids(m);
    const int r = 1 + static_cast<int>(uniform_index(gen, m));
    const auto ra = ranking_of(shuffled(ids, gen), "lda");
    const auto rb = ranking_of(shuffled(ids, gen), "resnet");
    const std::string tag = "pair " + std::to_string(trial);

    for (const auto mode : {FusionMode::WeightedReciprocalSum, FusionMode::ReciprocalProduct}) {
      const auto self = fuse(ra, ra, 0.5, 0.5, r, mode);
      c.expect(self.ids() == prefix(ra, r),
               tag + ": fuse(A, A) order");

      // Replace the scores with an arbitrary strictly decreasing transform.
      auto ta = ra, tb = rb;
      double s = 1e6 * uniform01(gen);
      for (auto& it : ta.items) it.score = (s -= 1.0 + uniform01(gen) * 100.0);
      for (auto& it : tb.items) it.score = std::exp(-static_cast<double>(&it - tb.items.data()));
      c.expect(fuse(ra, rb, 0.5, 0.5, r, mode) == fuse(ta, tb, 0.5, 0.5, r, mode), tag + ": score transform");
    }
    const auto only_a = fuse(ra, rb, 1.0, 0.0, r);
    c.expect(only_a.ids() == prefix(ra, r),
             tag + ": w = (1, 0)");
  }
}

void overlap_metrics(Check& c) {
  std::mt19937_64 gen(404);
  const IdList x{"a", "b", "c", "d"};
  const IdList y{"e", "f", "g", "h"};
  for (const double p : {0.5, 0.9, 0.98}) {
    c.expect(std::abs(rbo(x, x, p) - 1.0) <= 1e-12, "identical RBO");
    c.expect(rbo(x, y, p) == 0.0, "disjoint RBO");
  }
  c.expect(iou(x, x) == 1.0, "identical IoU");
  c.expect(iou(x, y) == 0.0, "disjoint IoU");

  const double ps[] = {0.5, 0.9, 0.98};
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t k = 1 + uniform_index(gen, 20);
    const auto pool = testing::make_ids(k + uniform_index(gen, 2 * k + 1));
    auto a = shuffled(pool, gen);
    auto b = shuffled(pool, gen);
    a.resize(k);
    b.resize(k);
    const double p = ps[trial % 3];
    const std::string tag = "pair " + std::to_string(trial);
    c.expect(std::abs(rbo(a, b, p) - oracle::rbo(a, b, p)) <= 1e-12, tag + ": RBO vs oracle");
    c.expect(std::abs(rbo(a, b, p) - rbo(b, a, p)) <= 1e-12, tag + ": RBO symmetry");
    c.expect(iou(a, b) == iou(b, a), tag + ": IoU symmetry");
  }
}

void lda_recovery(Check& c) {
  LdaConfig cfg;
  cfg.k = 3;
  cfg.alpha = 0.1;
  cfg.beta = 0.01;
  cfg.iterations = 500;
  cfg.burn_in = 250;
  cfg.seed = 42;
  const auto corpus = testing::planted_corpus(1);
  const auto vocab = build_vocabulary(corpus.docs, 1);
  const auto model = train_lda(corpus.docs, vocab, cfg);

  std::vector<int> predicted;
  for (std::size_t d = 0; d < model.doc_topic.rows; ++d) {
    const double* row = model.doc_topic.row(d);
    predicted.push_back(static_cast<int>(std::max_element(row, row + model.doc_topic.cols) - row));
  }
  const double purity = testing::purity(predicted, corpus.labels);
  c.expect(purity >= 0.8, "purity " + std::to_string(purity));

  for (const auto* m : {&model.doc_topic, &model.topic_word}) {
    for (std::size_t r = 0; r < m->rows; ++r) {
      const double sum = std::accumulate(m->row(r), m->row(r) + m->cols, 0.0);
      c.expect(std::abs(sum - 1.0) <= 1e-9, "row sum " + std::to_string(sum));
    }
  }
  const auto again = train_lda(corpus.docs, vocab, cfg);
  c.expect(again.doc_topic == model.doc_topic && again.topic_word == model.topic_word, "bitwise determinism");
}

void ctfidf(Check& c) {
  c.expect(std::abs(ctfidf_value(2, 10, 4, 20) - 0.2 * std::log(6.0)) <= 1e-9, "hand example");

  std::mt19937_64 gen(606);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t docs_n = 4 + uniform_index(gen, 20);
    std::vector<TokenizedDoc> docs;
    ClusterAssignment assignment;
    const int clusters = 1 + static_cast<int>(uniform_index(gen, 4));
    for (std::size_t d = 0; d < docs_n; ++d) {
      TokenizedDoc doc{"d" + std::to_string(d), {}};
      const std::size_t len = 1 + uniform_index(gen, 15);
      for (std::size_t i = 0; i < len; ++i) doc.tokens.push_back("w" + std::to_string(uniform_index(gen, 12)));
      docs.push_back(doc);
      assignment.ids.push_back(doc.painting_id);
      // the first documents seed every cluster so none is empty
      const int label = d < static_cast<std::size_t>(clusters)
                            ? static_cast<int>(d)
                            : static_cast<int>(uniform_index(gen, clusters + 1)) - 1;
      assignment.labels.push_back(label);
    }
    assignment.num_clusters = clusters;
    const std::string tag = "trial " + std::to_string(trial);
    for (const auto mode : {ClassTotalMode::Average, ClassTotalMode::PerClassTotal}) {
      const auto natural = ctfidf_scores(docs, assignment, {mode, 0.0});
      const auto base10 = ctfidf_scores(docs, assignment, {mode, 10.0});
      for (std::size_t k = 0; k < natural.clusters.size(); ++k) {
        for (const auto& [w, s] : natural.clusters[k]) c.expect(s >= 0.0, tag + ": negative score");
        std::vector<std::string> wa, wb;
        for (const auto& [w, s] : natural.clusters[k]) wa.push_back(w);
        for (const auto& [w, s] : base10.clusters[k]) wb.push_back(w);
        c.expect(wa == wb, tag + ": log-base ranking");
      }
    }
  }
}

void operating_points(Check& c) {
  c.expect(LdaConfig{}.k == 10, "default LDA k");
  c.expect(kDefaultRecommendations == 9 && ServiceConfig{}.r == 9, "default r");
  c.expect(engines::all().size() == 5, "five engines");
  const auto data = testing::fixture_study_data();
  std::set<std::string> groups;
  for (const auto& p : data->corpus.paintings()) {
    if (!p.story_group.empty()) groups.insert(p.story_group);
  }
  c.expect(groups.size() == 9, "nine story groups in the fixture corpus");
  StudyService service(data, ServiceConfig{});
  const auto s = service.create_session({}, "ant");
  c.expect(s.engine_order.size() == 5, "five engines per session");
  const auto shown = service.get_elicitation(s.id);
  std::set<std::string> shown_groups;
  for (const auto& p : shown) shown_groups.insert(p.story_group);
  c.expect(shown.size() == 9 && shown_groups.size() == 9, "one elicited painting per group");
}

/// Longest single request latency while driving `sessions` full sessions
/// through the HTTP frontend.
double http_max_latency(StudyService& service, int sessions, Check& c) {
  HttpFrontend frontend(service, HttpOptions{{}, {}, 4});
  const int port = frontend.bind("127.0.0.1", 0);
  std::thread server([&] { frontend.listen(); });
  for (int i = 0; i < 400 && !frontend.running(); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(5));

  httplib::Client client("127.0.0.1", port);
  client.set_read_timeout(10, 0);
  double worst = 0.0;
  auto timed = [&](auto&& call) {
    const auto t0 = std::chrono::steady_clock::now();
    auto res = call();
    worst = std::max(worst, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    if (!res || res->status >= 300) {
      c.expect(false, "http status " + (res ? std::to_string(res->status) : std::string("none")));
      throw std::runtime_error("http request failed");
    }
    return json::parse(res->body);
  };
  try {
    for (int n = 0; n < sessions; ++n) {
      const auto created = timed([&] {
        return client.Post("/sessions", json{{"age", "20-29"}, {"gender", "m"}, {"visiting_style", "ant"}}.dump(),
                           "application/json");
      });
      const std::string base = "/sessions/" + created.at("session_id").get<std::string>();
      const auto shown = timed([&] { return client.Get(base + "/elicitation"); }).at("paintings");
      json ratings = json::object();
      int i = 0;
      for (const auto& p : shown) ratings[p.at("id").get<std::string>()] = 1 + (i++ + n) % 5;
      timed([&] { return client.Post(base + "/ratings", json{{"ratings", ratings}}.dump(), "application/json"); });
      for (int e = 0; e < 5; ++e) {
        const auto rec = timed([&] { return client.Get(base + "/recommendations/" + std::to_string(e)); });
        c.expect(rec.at("paintings").size() == 9, "nine recommendations over HTTP");
        const json fb{{"engine_id", rec.at("engine_id")}, {"accuracy", 3}, {"diversity", 3}, {"novelty", 3}, {"serendipity", 3}};
        timed([&] { return client.Post(base + "/feedback", fb.dump(), "application/json"); });
      }
    }
    timed([&] { return client.Get("/export", httplib::Headers{{"X-Admin-Token", "adm"}}); });
  } catch (const std::runtime_error&) {
  }
  frontend.stop();
  server.join();
  return worst;
}

void service_flow(Check& c) {
  testing::TempDir tmp("artrec-accept");
  const auto log = tmp / "events.jsonl";
  ServiceConfig cfg;
  cfg.seed = 77;
  cfg.log_path = log;
  cfg.snapshot_every = 10;
  cfg.admin_token = "adm";

  json before;
  std::set<std::vector<std::string>> orders;
  {
    StudyService service(testing::fixture_study_data(), cfg);
    std::vector<std::map<std::string, Ranking>> per_session;
    for (int n = 0; n < 6; ++n) {
      const auto s = service.create_session({"30-39", "f"}, "fish");
      const auto shown = service.get_elicitation(s.id);
      c.expect(shown.size() == 9, "nine elicited");
      std::vector<std::pair<std::string, int>> ratings;
      for (std::size_t i = 0; i < shown.size(); ++i) {
        ratings.emplace_back(shown[i].id, n % 2 == 0 ? 5 - static_cast<int>(i % 5) : 1 + static_cast<int>(i % 5));
      }
      service.submit_ratings(s.id, ratings);
      std::map<std::string, Ranking> served;
      std::vector<std::string> order;
      for (int e = 0; e < 5; ++e) {
        const auto r = service.get_recommendations(s.id, e);
        c.expect(r.items.size() == 9, "nine recommendations");
        for (const auto& it : r.items) {
          c.expect(std::find_if(shown.begin(), shown.end(), [&](const Painting& p) { return p.id == it.painting_id; }) ==
                       shown.end(),
                   "rated painting recommended");
        }
        served[r.engine_id] = r;
        order.push_back(r.engine_id);
        const bool done = service.submit_feedback(s.id, r.engine_id, {4, 3, 2, 5});
        c.expect(done == (e == 4), "completion flag");
      }
      c.expect(served.size() == 5, "five distinct engines");
      c.expect(service.session(s.id).step() == "done", "session done");
      orders.insert(order);
      per_session.push_back(served);
    }
    c.expect(orders.size() > 1, "engine order is randomized");

    // Sessions 0 and 1 use opposite rating patterns.
    bool differs = false;
    for (const auto& e : engines::all()) differs |= per_session[0].at(e).ids() != per_session[1].at(e).ids();
    c.expect(differs, "different ratings give different rankings");

    const auto exported = service.export_sessions();
    c.expect(exported.feedback.size() == 30 && exported.rankings.size() == 30, "export sizes");
    std::ostringstream out;
    exported.write_feedback_csv(out);
    const auto csv = out.str();
    c.expect(std::count(csv.begin(), csv.end(), '\n') == 31, "feedback CSV rows");

    // Leave one session half-done, then "crash".
    const auto s = service.create_session({}, "butterfly");
    service.submit_ratings(s.id, rate_all(service.get_elicitation(s.id), 3));
    service.get_recommendations(s.id, 0);
    before = service.state_json();
  }
  StudyService restored(testing::fixture_study_data(), cfg);
  c.expect(restored.state_json() == before, "replay with snapshot");
  std::filesystem::remove(snapshot_path_for(log));
  cfg.snapshot_every = 0;
  StudyService full(testing::fixture_study_data(), cfg);
  c.expect(full.state_json() == before, "replay from the log alone");
  c.expect(export_from_log(log).feedback.size() == 30, "export from log");

  // Response time at study scale with cached matrices.
  const std::size_t m = 2368;
  const auto synthetic = testing::synthetic_study_data(m, 9, 32, 2368);
  std::map<std::string, SimilarityMatrix> cached;
  for (const auto& [engine, matrix] : synthetic->matrices) {
    const auto path = tmp / ("sim_" + engine + ".bin");
    save_similarity(matrix, path);
    cached.emplace(engine, load_similarity(path));
  }
  auto big = std::make_shared<const StudyData>(StudyData{synthetic->corpus, std::move(cached)});
  ServiceConfig big_cfg;
  big_cfg.seed = 9;
  big_cfg.admin_token = "adm";
  big_cfg.log_path = tmp / "big.jsonl";
  StudyService big_service(big, big_cfg);
  const double worst = http_max_latency(big_service, 3, c);
  std::ostringstream w;
  w << "slowest API response " << worst << " s at m = " << m;
  c.expect(worst < 1.0, w.str());
  c.expect(big_service.export_sessions().feedback.size() == 15, "big study export");
}

void overlap_report_check(Check& c) {
  const auto data = testing::synthetic_study_data(120, 9, 16, 909);
  StudyService service(data, ServiceConfig{});
  std::mt19937_64 gen(910);
  for (int u = 0; u < 10; ++u) {
    testing::run_session(service, [&](std::size_t, const Painting&) { return 1 + static_cast<int>(uniform_index(gen, 5)); });
  }
  std::ostringstream tsv;
  service.export_sessions().write_rankings_tsv(tsv);
  testing::TempDir tmp("artrec-overlap");
  std::ofstream(tmp / "rankings.tsv") << tsv.str();
  const auto rankings = read_rankings_tsv(tmp / "rankings.tsv");
  c.expect(rankings.size() == 10, "ten users");

  const auto report = overlap_report(rankings, 0.9, engines::all());
  std::vector<std::string> want_cols = engines::all();
  want_cols.push_back(kAllColumn);
  c.expect(report.columns == want_cols, "five engines plus All");
  for (const auto& col : want_cols) {
    const std::size_t pairs = col == kAllColumn ? 225 : 45;
    c.expect(report.iou.at(col).count == pairs && report.rbo.at(col).count == pairs, col + ": pair count");
    c.expect(report.iou.at(col).sd >= 0.0 && report.rbo.at(col).sd >= 0.0, col + ": sd");
  }
  std::ostringstream table;
  write_overlap_table(report, table);
  const auto text = table.str();
  c.expect(text.find("IoU") != std::string::npos && text.find("RBO") != std::string::npos, "IoU and RBO rows");
  c.expect(text.find("±") != std::string::npos, "Mean ± SD cells");
  for (const auto& col : want_cols) c.expect(text.find(col) != std::string::npos, "column " + col);

  UserRankings same;
  const IdList list = testing::make_ids(9);
  for (int u = 0; u < 10; ++u) {
    for (const auto& e : engines::all()) same["u" + std::to_string(u)][e] = list;
  }
  const auto degenerate = overlap_report(same, 0.9, engines::all());
  for (const auto& col : want_cols) {
    c.expect(std::abs(degenerate.iou.at(col).mean - 1.0) <= 1e-12 && degenerate.iou.at(col).sd <= 1e-12,
             col + ": identical IoU 1.0 ± 0.0");
    c.expect(std::abs(degenerate.rbo.at(col).mean - 1.0) <= 1e-12 && degenerate.rbo.at(col).sd <= 1e-12,
             col + ": identical RBO 1.0 ± 0.0");
  }
}

}  // namespace

int main() {
  std::cout << "SIMD kernels: " << kernels::isa_name(kernels::active_isa()) << std::endl;
  criterion("scores match the brute-force oracle (200 instances, 1e-12)", 5, scoring_oracle);
  criterion("similarity matrix properties (m <= 200)", 10, similarity_properties);
  criterion("late fusion correctness (hand example, 100 random pairs)", 5, fusion);
  criterion("RBO/IoU against the prefix oracle (500 pairs, 1e-12)", 5, overlap_metrics);
  criterion("LDA planted-topic recovery (purity >= 0.8, determinism)", 30, lda_recovery);
  criterion("c-TF-IDF hand example, non-negativity, log-base invariance", 2, ctfidf);
  criterion("default operating points (k=10, r=9, 5 engines, 9 elicited)", 5, operating_points);
  criterion("end-to-end study flow, replay, responses < 1 s at m = 2368", 60, service_flow);
  criterion("overlap report structure on 10 sessions", 30, overlap_report_check);
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << std::endl;
  return failed == 0 ? 0 : 1;
}
