#include "artrec/ctfidf.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include <Eigen/Dense>

#include "artrec/error.hpp"

namespace artrec {

EmbeddingSet reduce_dim(const EmbeddingSet& embeddings, std::size_t target_dim) {
  const std::size_t m = embeddings.size();
  const std::size_t d = embeddings.dim();
  if (target_dim < 1 || target_dim >= d) {
    fail(ErrorKind::Usage, "target_dim must be in 1.." + std::to_string(d - 1) + " (got " +
                               std::to_string(target_dim) + ")");
  }
  if (m < target_dim + 1) {
    fail(ErrorKind::Usage, "reduce_dim needs at least target_dim + 1 vectors");
  }
  using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::MatrixXd x = Eigen::Map<const RowMatrix>(embeddings.data().data(),
                                                  static_cast<Eigen::Index>(m),
                                                  static_cast<Eigen::Index>(d));
  x.rowwise() -= x.colwise().mean();

  Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto k = static_cast<Eigen::Index>(target_dim);
  Eigen::MatrixXd directions = svd.matrixV().leftCols(k);
  for (Eigen::Index c = 0; c < k; ++c) {
    Eigen::Index arg = 0;
    directions.col(c).cwiseAbs().maxCoeff(&arg);
    if (directions(arg, c) < 0) directions.col(c) *= -1.0;
  }
  const Eigen::MatrixXd projected = x * directions;

  std::vector<double> data(m * target_dim);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t c = 0; c < target_dim; ++c) {
      data[i * target_dim + c] =
          projected(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c));
    }
  }
  return EmbeddingSet(embeddings.engine_id(), target_dim, embeddings.ids(), std::move(data));
}

std::size_t ClusterAssignment::cluster_size(int label) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

namespace {

struct DisjointSet {
  std::vector<std::size_t> parent;
  explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

double quantile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

}  // namespace

ClusterAssignment cluster(const EmbeddingSet& reduced, const ClusterOptions& options) {
  const std::size_t m = reduced.size();
  if (options.min_cluster_size < 1) fail(ErrorKind::Usage, "min_cluster_size must be >= 1");
  if (!(options.cutoff_quantile >= 0.0 && options.cutoff_quantile <= 1.0)) {
    fail(ErrorKind::Usage, "cutoff quantile must lie in [0, 1]");
  }
  if (m < options.min_cluster_size || m < 2) {
    fail(ErrorKind::Usage, "cluster needs at least min_cluster_size (and 2) vectors");
  }
  std::vector<double> dist;
  dist.reserve(m * (m - 1) / 2);
  for (std::size_t i = 0; i < m; ++i) {
    const auto a = reduced.row(i);
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto b = reduced.row(j);
      double s = 0.0;
      for (std::size_t c = 0; c < a.size(); ++c) s += (a[c] - b[c]) * (a[c] - b[c]);
      dist.push_back(std::sqrt(s));
    }
  }
  const double cutoff = quantile(dist, options.cutoff_quantile);

  DisjointSet sets(m);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j, ++pos) {
      if (dist[pos] <= cutoff) sets.unite(i, j);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> components;  // root is the min member
  for (std::size_t i = 0; i < m; ++i) components[sets.find(i)].push_back(i);

  std::vector<const std::vector<std::size_t>*> kept;
  for (const auto& [root, members] : components) {
    if (members.size() >= options.min_cluster_size) kept.push_back(&members);
  }
  if (kept.empty()) data_error("clustering produced no clusters (all points are noise)");
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto* a, const auto* b) { return a->size() > b->size(); });

  ClusterAssignment out;
  out.ids = reduced.ids();
  out.labels.assign(m, kNoise);
  out.num_clusters = static_cast<int>(kept.size());
  for (std::size_t label = 0; label < kept.size(); ++label) {
    for (std::size_t i : *kept[label]) out.labels[i] = static_cast<int>(label);
  }
  return out;
}

double ctfidf_value(double count_in_class, double class_total, double count_all, double n,
                    double log_base) {
  if (count_in_class <= 0.0) return 0.0;
  const double tf = count_in_class / class_total;
  const double l = std::log1p(n / count_all);
  return log_base > 0.0 ? tf * l / std::log(log_base) : tf * l;
}

double TopicWordScores::score(int cluster_label, const std::string& word) const {
  for (const auto& [w, s] : clusters.at(static_cast<std::size_t>(cluster_label))) {
    if (w == word) return s;
  }
  return 0.0;
}

TopicWordScores ctfidf_scores(const std::vector<TokenizedDoc>& docs,
                              const ClusterAssignment& assignment,
                              const CtfidfOptions& options) {
  std::unordered_map<std::string, const TokenizedDoc*> by_id;
  for (const auto& d : docs) by_id.emplace(d.painting_id, &d);

  const auto c = static_cast<std::size_t>(assignment.num_clusters);
  std::vector<std::map<std::string, double>> counts(c);
  std::vector<double> totals(c, 0.0);
  std::unordered_map<std::string, double> across;
  for (std::size_t i = 0; i < assignment.ids.size(); ++i) {
    const int label = assignment.labels[i];
    if (label == kNoise) continue;
    auto it = by_id.find(assignment.ids[i]);
    if (it == by_id.end()) {
      data_error("no tokenized document for clustered painting '" + assignment.ids[i] + "'");
    }
    for (const auto& t : it->second->tokens) {
      counts[static_cast<std::size_t>(label)][t] += 1.0;
      totals[static_cast<std::size_t>(label)] += 1.0;
      across[t] += 1.0;
    }
  }
  for (std::size_t k = 0; k < c; ++k) {
    if (totals[k] == 0.0) data_error("cluster " + std::to_string(k) + " has no tokens");
  }
  const double average = std::accumulate(totals.begin(), totals.end(), 0.0) /
                         static_cast<double>(c);

  TopicWordScores out;
  out.clusters.resize(c);
  for (std::size_t k = 0; k < c; ++k) {
    const double n = options.n_mode == ClassTotalMode::Average ? average : totals[k];
    auto& list = out.clusters[k];
    for (const auto& [word, count] : counts[k]) {
      list.emplace_back(word,
                        ctfidf_value(count, totals[k], across.at(word), n, options.log_base));
    }
    std::sort(list.begin(), list.end(), [](const WordScore& a, const WordScore& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
  }
  return out;
}

std::vector<WordScore> topic_words(const TopicWordScores& scores, int cluster_label,
                                   std::size_t top_n) {
  if (cluster_label < 0 || static_cast<std::size_t>(cluster_label) >= scores.clusters.size()) {
    fail(ErrorKind::NotFound, "unknown cluster " + std::to_string(cluster_label));
  }
  const auto& list = scores.clusters[static_cast<std::size_t>(cluster_label)];
  return {list.begin(), list.begin() + static_cast<long>(std::min(top_n, list.size()))};
}

}  // namespace artrec
