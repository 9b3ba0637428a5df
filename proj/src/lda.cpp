#include "artrec/lda.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "json.hpp"

#include "artrec/error.hpp"
#include "artrec/random.hpp"

namespace artrec {

void LdaConfig::validate() const {
  if (k < 2) fail(ErrorKind::Usage, "LDA needs k >= 2 topics");
  if (resolved_alpha() <= 0.0) fail(ErrorKind::Usage, "LDA alpha must be > 0");
  if (beta <= 0.0) fail(ErrorKind::Usage, "LDA beta must be > 0");
  if (iterations < 1) fail(ErrorKind::Usage, "LDA iterations must be >= 1");
  if (burn_in < 0 || burn_in >= iterations) {
    fail(ErrorKind::Usage, "LDA burn_in must satisfy 0 <= burn_in < iterations");
  }
}

std::vector<double> LdaModel::doc_embedding(const std::string& painting_id) const {
  auto it = std::find(doc_ids.begin(), doc_ids.end(), painting_id);
  if (it == doc_ids.end()) {
    fail(ErrorKind::NotFound, "painting '" + painting_id + "' not in the LDA training set");
  }
  const auto row = static_cast<std::size_t>(it - doc_ids.begin());
  return {doc_topic.row(row), doc_topic.row(row) + doc_topic.cols};
}

std::vector<std::size_t> LdaModel::top_words(std::size_t topic, std::size_t n) const {
  std::vector<std::size_t> ids(topic_word.cols);
  std::iota(ids.begin(), ids.end(), 0);
  const double* row = topic_word.row(topic);
  n = std::min(n, ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<long>(n), ids.end(),
                    [row](std::size_t a, std::size_t b) {
                      return row[a] != row[b] ? row[a] > row[b] : a < b;
                    });
  ids.resize(n);
  return ids;
}

EncodedCorpus encode_docs(const std::vector<TokenizedDoc>& docs, const Vocabulary& vocab) {
  EncodedCorpus out;
  out.vocab_size = vocab.size();
  for (const auto& d : docs) {
    std::vector<int> ids;
    for (const auto& t : d.tokens) {
      const long id = vocab.id_of(t);
      if (id >= 0) ids.push_back(static_cast<int>(id));
    }
    if (ids.empty()) {
      data_error("document '" + d.painting_id + "' has no in-vocabulary tokens");
    }
    out.total_tokens += ids.size();
    out.doc_ids.push_back(d.painting_id);
    out.words.push_back(std::move(ids));
  }
  return out;
}

GibbsSampler::GibbsSampler(const EncodedCorpus& corpus, int k, double alpha, double beta,
                           std::uint64_t seed)
    : corpus_(corpus),
      k_(k),
      alpha_(alpha),
      beta_(beta),
      gen_(seed),
      n_wt_(corpus.vocab_size * static_cast<std::size_t>(k), 0),
      n_dt_(corpus.words.size() * static_cast<std::size_t>(k), 0),
      n_t_(static_cast<std::size_t>(k), 0),
      n_d_(corpus.words.size(), 0),
      p_(static_cast<std::size_t>(k), 0.0) {
  const auto K = static_cast<std::size_t>(k_);
  z_.resize(corpus.words.size());
  for (std::size_t d = 0; d < corpus.words.size(); ++d) {
    const auto& words = corpus.words[d];
    z_[d].resize(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
      const auto t = static_cast<int>(uniform_index(gen_, K));
      z_[d][i] = t;
      ++n_wt_[static_cast<std::size_t>(words[i]) * K + static_cast<std::size_t>(t)];
      ++n_dt_[d * K + static_cast<std::size_t>(t)];
      ++n_t_[static_cast<std::size_t>(t)];
    }
    n_d_[d] = static_cast<int>(words.size());
  }
}

void GibbsSampler::sweep() {
  const auto K = static_cast<std::size_t>(k_);
  const double v_beta = static_cast<double>(corpus_.vocab_size) * beta_;
  for (std::size_t d = 0; d < corpus_.words.size(); ++d) {
    const auto& words = corpus_.words[d];
    int* dt = n_dt_.data() + d * K;
    for (std::size_t i = 0; i < words.size(); ++i) {
      int* wt = n_wt_.data() + static_cast<std::size_t>(words[i]) * K;
      const auto old_t = static_cast<std::size_t>(z_[d][i]);
      --wt[old_t];
      --dt[old_t];
      --n_t_[old_t];

      double total = 0.0;
      for (std::size_t t = 0; t < K; ++t) {
        total += (dt[t] + alpha_) * (wt[t] + beta_) / (n_t_[t] + v_beta);
        p_[t] = total;
      }
      const double u = uniform01(gen_) * total;
      std::size_t new_t = 0;
      while (new_t + 1 < K && p_[new_t] <= u) ++new_t;

      z_[d][i] = static_cast<int>(new_t);
      ++wt[new_t];
      ++dt[new_t];
      ++n_t_[new_t];
    }
  }
}

void GibbsSampler::accumulate_estimates(DenseMatrix& doc_topic,
                                        DenseMatrix& topic_word) const {
  const auto K = static_cast<std::size_t>(k_);
  const std::size_t V = corpus_.vocab_size;
  const double k_alpha = static_cast<double>(K) * alpha_;
  const double v_beta = static_cast<double>(V) * beta_;
  for (std::size_t d = 0; d < corpus_.words.size(); ++d) {
    const double denom = n_d_[d] + k_alpha;
    for (std::size_t t = 0; t < K; ++t) {
      doc_topic(d, t) += (n_dt_[d * K + t] + alpha_) / denom;
    }
  }
  for (std::size_t t = 0; t < K; ++t) {
    const double denom = n_t_[t] + v_beta;
    for (std::size_t w = 0; w < V; ++w) {
      topic_word(t, w) += (n_wt_[w * K + t] + beta_) / denom;
    }
  }
}

namespace {

void normalize_rows(DenseMatrix& m) {
  for (std::size_t r = 0; r < m.rows; ++r) {
    double* row = m.values.data() + r * m.cols;
    const double s = std::accumulate(row, row + m.cols, 0.0);
    for (std::size_t c = 0; c < m.cols; ++c) row[c] /= s;
  }
}

}  // namespace

LdaModel train_lda(const std::vector<TokenizedDoc>& docs, const Vocabulary& vocab,
                   const LdaConfig& config) {
  config.validate();
  if (docs.empty()) data_error("LDA training needs at least one document");
  const EncodedCorpus encoded = encode_docs(docs, vocab);
  if (static_cast<std::size_t>(config.k) > encoded.total_tokens) {
    data_error("k = " + std::to_string(config.k) + " exceeds the total token count " +
               std::to_string(encoded.total_tokens));
  }
  const auto K = static_cast<std::size_t>(config.k);
  GibbsSampler sampler(encoded, config.k, config.resolved_alpha(), config.beta,
                       config.seed);

  DenseMatrix doc_topic(encoded.words.size(), K);
  DenseMatrix topic_word(K, vocab.size());
  for (int s = 1; s <= config.iterations; ++s) {
    sampler.sweep();
    if (s > config.burn_in) sampler.accumulate_estimates(doc_topic, topic_word);
  }
  // Averaging over samples then renormalizing keeps rows stochastic to
  // within a few ulps.
  normalize_rows(doc_topic);
  normalize_rows(topic_word);

  return LdaModel{config, vocab, encoded.doc_ids, std::move(doc_topic),
                  std::move(topic_word)};
}

double word_set_coherence(const std::vector<std::size_t>& word_ids,
                          const std::vector<TokenizedDoc>& docs, const Vocabulary& vocab) {
  // Per-word document-count vectors, only for the requested words.
  const std::size_t n = word_ids.size();
  std::vector<std::vector<double>> vec(n, std::vector<double>(docs.size(), 0.0));
  std::unordered_map<long, std::size_t> slot;
  for (std::size_t i = 0; i < n; ++i) slot.emplace(static_cast<long>(word_ids[i]), i);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& t : docs[d].tokens) {
      auto it = slot.find(vocab.id_of(t));
      if (it != slot.end()) vec[it->second][d] += 1.0;
    }
  }
  std::vector<double> norm(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (double x : vec[i]) s += x * x;
    norm[i] = std::sqrt(s);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (norm[i] == 0.0 || norm[j] == 0.0) continue;  // never-seen word: 0
      double dot = 0.0;
      for (std::size_t d = 0; d < docs.size(); ++d) dot += vec[i][d] * vec[j][d];
      total += dot / (norm[i] * norm[j]);
    }
  }
  return total;
}

CoherenceResult topic_coherence(const LdaModel& model, const std::vector<TokenizedDoc>& docs,
                                std::size_t n_top) {
  if (n_top < 2) fail(ErrorKind::Usage, "coherence needs n_top >= 2");
  if (n_top > model.vocabulary.size()) {
    fail(ErrorKind::Usage, "n_top = " + std::to_string(n_top) +
                               " exceeds vocabulary size " +
                               std::to_string(model.vocabulary.size()));
  }
  CoherenceResult out;
  for (std::size_t t = 0; t < model.topic_word.rows; ++t) {
    out.per_topic.push_back(
        word_set_coherence(model.top_words(t, n_top), docs, model.vocabulary));
  }
  out.mean = std::accumulate(out.per_topic.begin(), out.per_topic.end(), 0.0) /
             static_cast<double>(out.per_topic.size());
  return out;
}

std::vector<CoherencePoint> coherence_sweep(const std::vector<TokenizedDoc>& docs,
                                            const Vocabulary& vocab, int k_min, int k_max,
                                            const LdaConfig& base, std::size_t n_top) {
  if (k_min > k_max) fail(ErrorKind::Usage, "empty k range");
  std::vector<CoherencePoint> out;
  for (int k = k_min; k <= k_max; ++k) {
    LdaConfig cfg = base;
    cfg.k = k;
    const LdaModel model = train_lda(docs, vocab, cfg);
    out.push_back({k, topic_coherence(model, docs, n_top).mean});
  }
  return out;
}

namespace {

constexpr const char* kModelFormat = "artrec-lda";
constexpr int kModelVersion = 1;

nlohmann::json matrix_to_json(const DenseMatrix& m) {
  return {{"rows", m.rows}, {"cols", m.cols}, {"values", m.values}};
}

DenseMatrix matrix_from_json(const nlohmann::json& j) {
  DenseMatrix m;
  m.rows = j.at("rows").get<std::size_t>();
  m.cols = j.at("cols").get<std::size_t>();
  m.values = j.at("values").get<std::vector<double>>();
  if (m.values.size() != m.rows * m.cols) data_error("LDA model matrix has wrong size");
  return m;
}

}  // namespace

void save_lda_model(const LdaModel& model, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["format"] = kModelFormat;
  j["version"] = kModelVersion;
  j["config"] = {{"k", model.config.k},
                 {"alpha", model.config.resolved_alpha()},
                 {"beta", model.config.beta},
                 {"iterations", model.config.iterations},
                 {"burn_in", model.config.burn_in},
                 {"seed", model.config.seed}};
  j["vocabulary"] = {{"words", model.vocabulary.words()},
                     {"counts", model.vocabulary.counts()}};
  j["doc_ids"] = model.doc_ids;
  j["doc_topic"] = matrix_to_json(model.doc_topic);
  j["topic_word"] = matrix_to_json(model.topic_word);
  std::ofstream out(path);
  if (!out) data_error("cannot write LDA model " + path.string());
  out << j.dump() << '\n';
}

LdaModel load_lda_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) data_error("cannot open LDA model " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
    if (j.at("format") != kModelFormat || j.at("version") != kModelVersion) {
      data_error("unsupported LDA model format in " + path.string());
    }
    LdaModel m;
    const auto& c = j.at("config");
    m.config.k = c.at("k").get<int>();
    m.config.alpha = c.at("alpha").get<double>();
    m.config.beta = c.at("beta").get<double>();
    m.config.iterations = c.at("iterations").get<int>();
    m.config.burn_in = c.at("burn_in").get<int>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.vocabulary = Vocabulary(j.at("vocabulary").at("words").get<std::vector<std::string>>(),
                              j.at("vocabulary").at("counts").get<std::vector<long>>());
    m.doc_ids = j.at("doc_ids").get<std::vector<std::string>>();
    m.doc_topic = matrix_from_json(j.at("doc_topic"));
    m.topic_word = matrix_from_json(j.at("topic_word"));
    return m;
  } catch (const nlohmann::json::exception& e) {
    data_error("malformed LDA model " + path.string() + ": " + e.what());
  }
}

}  // namespace artrec
