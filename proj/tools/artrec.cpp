// artrec: command-line front end for the painting recommender pipeline.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "artrec/corpus.hpp"
#include "artrec/ctfidf.hpp"
#include "artrec/embed.hpp"
#include "artrec/error.hpp"
#include "artrec/http_server.hpp"
#include "artrec/kernels.hpp"
#include "artrec/lda.hpp"
#include "artrec/metrics.hpp"
#include "artrec/recsys.hpp"
#include "artrec/service.hpp"
#include "artrec/textprep.hpp"

namespace fs = std::filesystem;
using namespace artrec;

namespace {

struct GlobalOptions {
  std::uint64_t seed = 42;
  std::string out = "out";
};

fs::path out_dir(const GlobalOptions& g) {
  fs::create_directories(g.out);
  return fs::path(g.out);
}

StopwordSet stopwords_from(const std::string& path) {
  return path.empty() ? default_stopwords() : load_stopwords(path);
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) data_error("cannot write " + path.string());
  return out;
}

void print_ranking(const Ranking& ranking, std::ostream& out) {
  out << std::setprecision(17);
  for (std::size_t i = 0; i < ranking.items.size(); ++i) {
    out << i + 1 << '\t' << ranking.items[i].painting_id << '\t' << ranking.items[i].score << '\n';
  }
}

SimilarityMatrix load_engine_matrix(const fs::path& dir, const std::string& engine) {
  return load_similarity(dir / ("sim_" + engine + ".bin"));
}

// ---------------------------------------------------------------- ingest

struct IngestOptions {
  std::string corpus;
  std::string stopwords;
  long min_count = 2;
};

void run_ingest(const GlobalOptions& g, const IngestOptions& o) {
  const Corpus corpus = load_corpus(o.corpus);
  const auto docs = preprocess_corpus(corpus, stopwords_from(o.stopwords));
  const Vocabulary vocab = build_vocabulary(docs, o.min_count);
  const fs::path dir = out_dir(g);
  save_corpus(corpus, dir / "corpus.jsonl");
  auto vout = open_out(dir / "vocabulary.tsv");
  for (std::size_t i = 0; i < vocab.size(); ++i) vout << vocab.word(i) << '\t' << vocab.count(i) << '\n';

  std::cout << "paintings\t" << corpus.size() << '\n'
            << "story_groups\t" << corpus.story_groups().size() << '\n';
  for (const auto& group : corpus.story_groups()) {
    std::cout << "group\t" << group << '\t' << corpus.members(group).size() << '\n';
  }
  std::cout << "vocabulary\t" << vocab.size() << '\n';
}

// ------------------------------------------------------------- train-lda

struct LdaOptions {
  std::string corpus;
  std::string stopwords;
  long min_count = 2;
  int k = 10;
  std::optional<double> alpha;
  double beta = 0.01;
  int iterations = 1000;
  std::optional<int> burn_in;
  std::size_t n_top = 10;
};

LdaConfig lda_config(const GlobalOptions& g, const LdaOptions& o) {
  LdaConfig cfg;
  cfg.k = o.k;
  cfg.alpha = o.alpha;
  cfg.beta = o.beta;
  cfg.iterations = o.iterations;
  cfg.burn_in = o.burn_in.value_or(o.iterations / 2);
  cfg.seed = g.seed;
  return cfg;
}

void run_train_lda(const GlobalOptions& g, const LdaOptions& o) {
  const Corpus corpus = load_corpus(o.corpus);
  const auto docs = preprocess_corpus(corpus, stopwords_from(o.stopwords));
  const Vocabulary vocab = build_vocabulary(docs, o.min_count);
  const LdaModel model = train_lda(docs, vocab, lda_config(g, o));

  const fs::path dir = out_dir(g);
  save_lda_model(model, dir / "lda_model.json");
  EmbeddingSet theta(engines::kLda, model.doc_topic.cols, model.doc_ids, model.doc_topic.values);
  save_embeddings(theta, dir / "lda.tsv");

  const std::size_t n_top = std::min(o.n_top, vocab.size());
  for (std::size_t t = 0; t < model.topic_word.rows; ++t) {
    std::cout << "topic " << t << ':';
    for (std::size_t w : model.top_words(t, n_top)) std::cout << ' ' << vocab.word(w);
    std::cout << '\n';
  }
  if (n_top >= 2) {
    std::cout << "mean_coherence\t" << topic_coherence(model, docs, n_top).mean << '\n';
  }
  std::cout << "wrote " << (dir / "lda_model.json").string() << " and "
            << (dir / "lda.tsv").string() << '\n';
}

// ------------------------------------------------------- coherence-sweep

struct SweepOptions {
  LdaOptions lda;
  int k_min = 2;
  int k_max = 20;
};

void run_coherence_sweep(const GlobalOptions& g, const SweepOptions& o) {
  const Corpus corpus = load_corpus(o.lda.corpus);
  const auto docs = preprocess_corpus(corpus, stopwords_from(o.lda.stopwords));
  const Vocabulary vocab = build_vocabulary(docs, o.lda.min_count);
  const auto rows = coherence_sweep(docs, vocab, o.k_min, o.k_max, lda_config(g, o.lda), o.lda.n_top);
  auto out = open_out(out_dir(g) / "coherence.tsv");
  out << "k\tmean_coherence\n" << std::setprecision(17);
  std::cout << "k\tmean_coherence\n";
  for (const auto& row : rows) {
    out << row.k << '\t' << row.mean_coherence << '\n';
    std::cout << row.k << '\t' << row.mean_coherence << '\n';
  }
}

// ---------------------------------------------------------------- topics

struct TopicsOptions {
  std::string engine = "bert";
  std::string corpus;
  std::string embeddings;
  std::string model;
  std::string stopwords;
  std::size_t top_n = 10;
  std::size_t target_dim = 5;
  std::size_t min_cluster_size = 10;
  double cutoff_quantile = 0.25;
  std::string n_mode = "average";
};

void run_topics(const GlobalOptions& g, const TopicsOptions& o) {
  const fs::path dir = out_dir(g);
  auto out = open_out(dir / ("topics_" + o.engine + ".tsv"));
  out << "topic\trank\tword\tscore\n" << std::setprecision(17);

  if (o.engine == "lda") {
    if (o.model.empty()) fail(ErrorKind::Usage, "topics --engine lda needs --model");
    const LdaModel model = load_lda_model(o.model);
    for (std::size_t t = 0; t < model.topic_word.rows; ++t) {
      std::cout << "topic " << t << ':';
      std::size_t rank = 0;
      for (std::size_t w : model.top_words(t, o.top_n)) {
        out << t << '\t' << ++rank << '\t' << model.vocabulary.word(w) << '\t'
            << model.topic_word(t, w) << '\n';
        std::cout << ' ' << model.vocabulary.word(w);
      }
      std::cout << '\n';
    }
    return;
  }
  if (o.engine != "bert") fail(ErrorKind::Usage, "topics supports --engine bert or lda");
  if (o.embeddings.empty() || o.corpus.empty()) {
    fail(ErrorKind::Usage, "topics --engine bert needs --corpus and --embeddings");
  }
  const Corpus corpus = load_corpus(o.corpus);
  const EmbeddingSet emb = load_embeddings(o.embeddings, corpus);
  const EmbeddingSet reduced = reduce_dim(emb, o.target_dim);
  const ClusterAssignment clusters =
      cluster(reduced, {o.min_cluster_size, o.cutoff_quantile});
  CtfidfOptions copt;
  if (o.n_mode == "per_class_total") {
    copt.n_mode = ClassTotalMode::PerClassTotal;
  } else if (o.n_mode != "average") {
    fail(ErrorKind::Usage, "--n-mode must be average or per_class_total");
  }
  const auto docs = preprocess_corpus(corpus, stopwords_from(o.stopwords));
  const TopicWordScores scores = ctfidf_scores(docs, clusters, copt);

  auto cout_file = open_out(dir / "clusters_bert.tsv");
  cout_file << "painting_id\tcluster\n";
  for (std::size_t i = 0; i < clusters.ids.size(); ++i) {
    cout_file << clusters.ids[i] << '\t' << clusters.labels[i] << '\n';
  }
  std::cout << "clusters\t" << clusters.num_clusters << "\tnoise\t"
            << clusters.cluster_size(kNoise) << '\n';
  for (int c = 0; c < clusters.num_clusters; ++c) {
    std::cout << "topic " << c << " (" << clusters.cluster_size(c) << " paintings):";
    std::size_t rank = 0;
    for (const auto& [word, score] : topic_words(scores, c, o.top_n)) {
      out << c << '\t' << ++rank << '\t' << word << '\t' << score << '\n';
      std::cout << ' ' << word;
    }
    std::cout << '\n';
  }
}

// ------------------------------------------------------------- build-sim

struct BuildSimOptions {
  std::string engine;
  std::string embeddings;
  std::string corpus;
};

void run_build_sim(const GlobalOptions& g, const BuildSimOptions& o) {
  const Corpus corpus = load_corpus(o.corpus);
  const EmbeddingSet emb = load_embeddings(o.embeddings, corpus);
  if (emb.engine_id() != o.engine) {
    data_error("embedding file declares engine '" + emb.engine_id() + "', expected '" +
               o.engine + "'");
  }
  const SimilarityMatrix sim = build_similarity(emb);
  const fs::path path = out_dir(g) / ("sim_" + o.engine + ".bin");
  save_similarity(sim, path);
  std::cout << "engine\t" << o.engine << "\nm\t" << sim.size() << "\ndim\t" << emb.dim()
            << "\nkernel\t" << kernels::isa_name(kernels::active_isa()) << "\nwrote\t"
            << path.string() << '\n';
}

// ------------------------------------------------------ recommend / fuse

struct RecommendOptions {
  std::string ratings;
  std::string engine;
  int r = kDefaultRecommendations;
  std::string sim_dir;
  std::string mode = "weighted_rr_sum";
};

void run_recommend(const GlobalOptions& g, const RecommendOptions& o) {
  const fs::path dir = o.sim_dir.empty() ? fs::path(g.out) : fs::path(o.sim_dir);
  const UserRatings ratings = read_ratings_file(o.ratings);
  const FusionMode mode = parse_fusion_mode(o.mode);
  if (!engines::is_known(o.engine)) fail(ErrorKind::Usage, "unknown engine '" + o.engine + "'");

  const auto plus = o.engine.find('+');
  if (plus == std::string::npos) {
    print_ranking(recommend(load_engine_matrix(dir, o.engine), ratings, o.r), std::cout);
    return;
  }
  const auto a = load_engine_matrix(dir, o.engine.substr(0, plus));
  const auto b = load_engine_matrix(dir, o.engine.substr(plus + 1));
  print_ranking(fuse(rank_unrated(a, ratings), rank_unrated(b, ratings), 0.5, 0.5, o.r, mode),
                std::cout);
}

struct FuseOptions {
  std::string ratings;
  std::string engine_a;
  std::string engine_b;
  double weight_a = 0.5;
  int r = kDefaultRecommendations;
  std::string sim_dir;
  std::string mode = "weighted_rr_sum";
};

void run_fuse(const GlobalOptions& g, const FuseOptions& o) {
  const fs::path dir = o.sim_dir.empty() ? fs::path(g.out) : fs::path(o.sim_dir);
  const UserRatings ratings = read_ratings_file(o.ratings);
  const auto a = load_engine_matrix(dir, o.engine_a);
  const auto b = load_engine_matrix(dir, o.engine_b);
  print_ranking(fuse(rank_unrated(a, ratings), rank_unrated(b, ratings), o.weight_a,
                     1.0 - o.weight_a, o.r, parse_fusion_mode(o.mode)),
                std::cout);
}

// -------------------------------------------------------- overlap-report

struct OverlapOptions {
  std::string sessions;
  double p = 0.9;
};

void run_overlap_report(const GlobalOptions& g, const OverlapOptions& o) {
  fs::path source(o.sessions);
  if (fs::is_directory(source)) source /= "rankings.tsv";
  const auto rankings = read_rankings_tsv(source);
  const OverlapReport report = overlap_report(rankings, o.p, engines::all());
  write_overlap_table(report, std::cout);
  auto out = open_out(out_dir(g) / "overlap.tsv");
  write_overlap_tsv(report, out);
}

// ----------------------------------------------------------------- serve

struct ServeOptions {
  std::string corpus;
  std::string lda_embeddings;
  std::string bert_embeddings;
  std::string resnet_embeddings;
  std::string sim_dir;
  std::string host = "0.0.0.0";
  int port = 8080;
  int r = kDefaultRecommendations;
  std::string admin_token;
  std::string log;
  std::string static_dir;
  std::string image_dir;
  std::uint64_t snapshot_every = 100;
  std::string mode = "weighted_rr_sum";
};

HttpFrontend* g_frontend = nullptr;

void handle_signal(int) {
  if (g_frontend != nullptr) g_frontend->stop();
}

void run_serve(const GlobalOptions& g, const ServeOptions& o) {
  auto data = std::make_shared<StudyData>(StudyData{load_corpus(o.corpus), {}});
  const std::map<std::string, std::string> emb_paths = {{engines::kLda, o.lda_embeddings},
                                                        {engines::kBert, o.bert_embeddings},
                                                        {engines::kResnet, o.resnet_embeddings}};
  for (const auto& [engine, path] : emb_paths) {
    if (!path.empty()) {
      data->matrices.emplace(engine, build_similarity(load_embeddings(path, data->corpus)));
    } else if (!o.sim_dir.empty()) {
      data->matrices.emplace(engine, load_engine_matrix(o.sim_dir, engine));
    } else {
      fail(ErrorKind::Usage, "serve needs --" + engine + "-embeddings or --sim-dir");
    }
  }
  ServiceConfig cfg;
  cfg.r = o.r;
  cfg.seed = g.seed;
  cfg.fusion = parse_fusion_mode(o.mode);
  cfg.log_path = o.log.empty() ? out_dir(g) / "events.jsonl" : fs::path(o.log);
  cfg.snapshot_every = o.snapshot_every;
  cfg.admin_token = o.admin_token;
  StudyService service(data, cfg);

  HttpFrontend frontend(service, {o.static_dir, o.image_dir});
  const int port = frontend.bind(o.host, o.port);
  g_frontend = &frontend;
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
  std::cerr << "serving " << data->corpus.size() << " paintings on " << o.host << ':' << port
            << " (" << service.session_count() << " sessions restored from "
            << cfg.log_path.string() << ")\n";
  frontend.listen();
  g_frontend = nullptr;
  service.write_snapshot();
}

// ---------------------------------------------------------------- export

struct ExportOptions {
  std::string log;
};

void run_export(const GlobalOptions& g, const ExportOptions& o) {
  const fs::path log = o.log.empty() ? fs::path(g.out) / "events.jsonl" : fs::path(o.log);
  const StudyExport data = export_from_log(log);
  const fs::path dir = out_dir(g);
  auto f = open_out(dir / "feedback.csv");
  data.write_feedback_csv(f);
  auto r = open_out(dir / "rankings.tsv");
  data.write_rankings_tsv(r);
  std::cout << "feedback_rows\t" << data.feedback.size() << "\nranking_rows\t"
            << data.rankings.size() << '\n';
}

void add_lda_flags(CLI::App* cmd, LdaOptions& o, bool with_k) {
  cmd->add_option("--corpus", o.corpus, "Corpus file (JSON lines)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--stopwords", o.stopwords, "Stopword file, one word per line")->check(CLI::ExistingFile);
  cmd->add_option("--min-count", o.min_count, "Minimum corpus frequency for vocabulary words")
      ->capture_default_str();
  if (with_k) cmd->add_option("--k", o.k, "Number of topics")->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "Document-topic concentration (default 50/k)");
  cmd->add_option("--beta", o.beta, "Topic-word concentration")->capture_default_str();
  cmd->add_option("--iters", o.iterations, "Gibbs sweeps")->capture_default_str();
  cmd->add_option("--burn-in", o.burn_in, "Sweeps discarded before averaging (default iters/2)");
  cmd->add_option("--n-top", o.n_top, "Top words per topic for coherence")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"artrec: topic, embedding and fusion recommender for painting collections"};
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--out", g.out, "Output directory")->capture_default_str();

  IngestOptions ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Validate a corpus and write its vocabulary");
  c_ingest->add_option("--corpus", ingest.corpus, "Corpus file (JSON lines)")->required()->check(CLI::ExistingFile);
  c_ingest->add_option("--stopwords", ingest.stopwords, "Stopword file")->check(CLI::ExistingFile);
  c_ingest->add_option("--min-count", ingest.min_count, "Minimum word frequency")->capture_default_str();

  LdaOptions lda;
  auto* c_lda = app.add_subcommand("train-lda", "Train the LDA topic model and write document embeddings");
  add_lda_flags(c_lda, lda, true);

  SweepOptions sweep;
  auto* c_sweep = app.add_subcommand("coherence-sweep", "Mean topic coherence for a range of k");
  add_lda_flags(c_sweep, sweep.lda, false);
  c_sweep->add_option("--k-min", sweep.k_min, "Smallest k")->capture_default_str();
  c_sweep->add_option("--k-max", sweep.k_max, "Largest k")->capture_default_str();

  TopicsOptions topics;
  auto* c_topics = app.add_subcommand("topics", "Per-topic word tables (c-TF-IDF clusters or LDA)");
  c_topics->add_option("--engine", topics.engine, "bert or lda")->capture_default_str();
  c_topics->add_option("--corpus", topics.corpus, "Corpus file")->check(CLI::ExistingFile);
  c_topics->add_option("--embeddings", topics.embeddings, "Sentence-embedding TSV")->check(CLI::ExistingFile);
  c_topics->add_option("--model", topics.model, "LDA model file (engine lda)")->check(CLI::ExistingFile);
  c_topics->add_option("--stopwords", topics.stopwords, "Stopword file")->check(CLI::ExistingFile);
  c_topics->add_option("--top-n", topics.top_n, "Words per topic")->capture_default_str();
  c_topics->add_option("--target-dim", topics.target_dim, "Reduced dimensionality")->capture_default_str();
  c_topics->add_option("--min-cluster-size", topics.min_cluster_size, "Smaller clusters become noise")
      ->capture_default_str();
  c_topics->add_option("--cutoff-quantile", topics.cutoff_quantile,
                       "Linkage cutoff as a quantile of pairwise distances")
      ->capture_default_str();
  c_topics->add_option("--n-mode", topics.n_mode, "average or per_class_total")->capture_default_str();

  BuildSimOptions build;
  auto* c_build = app.add_subcommand("build-sim", "Build and cache a cosine-similarity matrix");
  c_build->add_option("--engine", build.engine, "Engine id (lda, bert, resnet, ...)")->required();
  c_build->add_option("--embeddings", build.embeddings, "Embedding TSV")->required()->check(CLI::ExistingFile);
  c_build->add_option("--corpus", build.corpus, "Corpus file")->required()->check(CLI::ExistingFile);

  RecommendOptions rec;
  auto* c_rec = app.add_subcommand("recommend", "Top-r recommendations for a ratings file");
  c_rec->add_option("--ratings", rec.ratings, "Lines of 'painting_id rating'")->required()->check(CLI::ExistingFile);
  c_rec->add_option("--engine", rec.engine, "lda, bert, resnet, lda+resnet or bert+resnet")->required();
  c_rec->add_option("--r", rec.r, "Recommendations to return")->capture_default_str();
  c_rec->add_option("--sim-dir", rec.sim_dir, "Directory with sim_<engine>.bin (default --out)");
  c_rec->add_option("--mode", rec.mode, "Fusion mode: weighted_rr_sum or paper_product")->capture_default_str();

  FuseOptions fuse_opts;
  auto* c_fuse = app.add_subcommand("fuse", "Late fusion of two engines' rankings");
  c_fuse->add_option("--ratings", fuse_opts.ratings, "Ratings file")->required()->check(CLI::ExistingFile);
  c_fuse->add_option("--engine-a", fuse_opts.engine_a, "First engine")->required();
  c_fuse->add_option("--engine-b", fuse_opts.engine_b, "Second engine")->required();
  c_fuse->add_option("--wa", fuse_opts.weight_a, "Weight of the first engine (second gets 1-wa)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  c_fuse->add_option("--r", fuse_opts.r, "Recommendations to return")->capture_default_str();
  c_fuse->add_option("--sim-dir", fuse_opts.sim_dir, "Directory with sim_<engine>.bin (default --out)");
  c_fuse->add_option("--mode", fuse_opts.mode, "weighted_rr_sum or paper_product")->capture_default_str();

  OverlapOptions overlap;
  auto* c_overlap = app.add_subcommand("overlap-report", "IoU / RBO overlap between users' rankings");
  c_overlap->add_option("--sessions", overlap.sessions, "Export directory or rankings.tsv")
      ->required()
      ->check(CLI::ExistingPath);
  c_overlap->add_option("--p", overlap.p, "RBO persistence")->capture_default_str();

  ServeOptions serve;
  auto* c_serve = app.add_subcommand("serve", "Run the study HTTP service");
  c_serve->add_option("--corpus", serve.corpus, "Corpus file")->required()->check(CLI::ExistingFile)->envname("ARTREC_CORPUS");
  c_serve->add_option("--lda-embeddings", serve.lda_embeddings, "LDA embedding TSV")->envname("ARTREC_LDA_EMBEDDINGS");
  c_serve->add_option("--bert-embeddings", serve.bert_embeddings, "Sentence-embedding TSV")->envname("ARTREC_BERT_EMBEDDINGS");
  c_serve->add_option("--resnet-embeddings", serve.resnet_embeddings, "Visual embedding TSV")->envname("ARTREC_RESNET_EMBEDDINGS");
  c_serve->add_option("--sim-dir", serve.sim_dir, "Cached similarity matrices (for engines without embeddings)")
      ->envname("ARTREC_SIM_DIR");
  c_serve->add_option("--host", serve.host, "Bind address")->capture_default_str();
  c_serve->add_option("--port", serve.port, "Port")->capture_default_str()->envname("ARTREC_PORT");
  c_serve->add_option("--r", serve.r, "Recommendations per engine")->capture_default_str()->envname("ARTREC_R");
  c_serve->add_option("--admin-token", serve.admin_token, "Token for GET /export")->envname("ARTREC_ADMIN_TOKEN");
  c_serve->add_option("--log", serve.log, "Event log path (default <out>/events.jsonl)")->envname("ARTREC_LOG");
  c_serve->add_option("--static-dir", serve.static_dir, "Web UI bundle directory");
  c_serve->add_option("--image-dir", serve.image_dir, "Painting image directory");
  c_serve->add_option("--snapshot-every", serve.snapshot_every, "Events between snapshots (0 = never)")
      ->capture_default_str();
  c_serve->add_option("--mode", serve.mode, "Fusion mode")->capture_default_str();

  ExportOptions exp;
  auto* c_export = app.add_subcommand("export", "Write feedback.csv and rankings.tsv from an event log");
  c_export->add_option("--log", exp.log, "Event log (default <out>/events.jsonl)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*c_ingest) run_ingest(g, ingest);
    else if (*c_lda) run_train_lda(g, lda);
    else if (*c_sweep) run_coherence_sweep(g, sweep);
    else if (*c_topics) run_topics(g, topics);
    else if (*c_build) run_build_sim(g, build);
    else if (*c_rec) run_recommend(g, rec);
    else if (*c_fuse) run_fuse(g, fuse_opts);
    else if (*c_overlap) run_overlap_report(g, overlap);
    else if (*c_serve) run_serve(g, serve);
    else if (*c_export) run_export(g, exp);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Usage ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
