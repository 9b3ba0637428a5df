#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "artrec/textprep.hpp"

namespace artrec {

struct LdaConfig {
  int k = 10;
  std::optional<double> alpha;  // defaults to 50/k
  double beta = 0.01;
  int iterations = 1000;
  int burn_in = 500;
  std::uint64_t seed = 42;

  double resolved_alpha() const { return alpha.value_or(50.0 / k); }
  void validate() const;
};

/// Dense row-major matrix of doubles.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return values[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  const double* row(std::size_t r) const { return values.data() + r * cols; }

  bool operator==(const DenseMatrix&) const = default;
};

struct LdaModel {
  LdaConfig config;
  Vocabulary vocabulary;
  std::vector<std::string> doc_ids;
  DenseMatrix doc_topic;   // m x k, P(t|d)
  DenseMatrix topic_word;  // k x V, P(w|t)

  /// The document's topic distribution; throws NotFound for unknown ids.
  std::vector<double> doc_embedding(const std::string& painting_id) const;
  /// Word ids of topic `t` ordered by P(w|t) desc, id asc.
  std::vector<std::size_t> top_words(std::size_t topic, std::size_t n) const;
};

/// Documents mapped to vocabulary ids; out-of-vocabulary tokens dropped.
struct EncodedCorpus {
  std::vector<std::string> doc_ids;
  std::vector<std::vector<int>> words;
  std::size_t vocab_size = 0;
  std::size_t total_tokens = 0;
};

EncodedCorpus encode_docs(const std::vector<TokenizedDoc>& docs, const Vocabulary& vocab);

/// Collapsed Gibbs sampler state. Exposed so tests can observe the count
/// tables between sweeps; train_lda is the normal entry point.
class GibbsSampler {
 public:
  GibbsSampler(const EncodedCorpus& corpus, int k, double alpha, double beta,
               std::uint64_t seed);

  void sweep();

  /// Smoothed point estimates from the current counts.
  void accumulate_estimates(DenseMatrix& doc_topic, DenseMatrix& topic_word) const;

  const std::vector<int>& topic_word_counts() const { return n_wt_; }  // V x k
  const std::vector<int>& doc_topic_counts() const { return n_dt_; }   // m x k
  const std::vector<int>& topic_totals() const { return n_t_; }
  std::size_t total_tokens() const { return corpus_.total_tokens; }

 private:
  const EncodedCorpus& corpus_;
  int k_;
  double alpha_;
  double beta_;
  std::mt19937_64 gen_;
  std::vector<std::vector<int>> z_;
  std::vector<int> n_wt_;
  std::vector<int> n_dt_;
  std::vector<int> n_t_;
  std::vector<int> n_d_;
  std::vector<double> p_;
};

LdaModel train_lda(const std::vector<TokenizedDoc>& docs, const Vocabulary& vocab,
                   const LdaConfig& config);

struct CoherenceResult {
  std::vector<double> per_topic;
  double mean = 0.0;
};

/// Sum of pairwise cosine similarities between the given words, each word
/// represented by its per-document occurrence counts over `docs`.
double word_set_coherence(const std::vector<std::size_t>& word_ids,
                          const std::vector<TokenizedDoc>& docs, const Vocabulary& vocab);

CoherenceResult topic_coherence(const LdaModel& model, const std::vector<TokenizedDoc>& docs,
                                std::size_t n_top);

struct CoherencePoint {
  int k;
  double mean_coherence;
};

/// One model per k in [k_min, k_max]. When base.alpha is unset each model
/// uses 50/k.
std::vector<CoherencePoint> coherence_sweep(const std::vector<TokenizedDoc>& docs,
                                            const Vocabulary& vocab, int k_min, int k_max,
                                            const LdaConfig& base, std::size_t n_top);

void save_lda_model(const LdaModel& model, const std::filesystem::path& path);
LdaModel load_lda_model(const std::filesystem::path& path);

}  // namespace artrec
