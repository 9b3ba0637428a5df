#pragma once

#include <string>
#include <utility>
#include <vector>

#include "artrec/embed.hpp"
#include "artrec/textprep.hpp"

namespace artrec {

/// Centered linear projection onto the top `target_dim` principal
/// directions. Each direction is signed so that its largest-magnitude
/// component is positive.
EmbeddingSet reduce_dim(const EmbeddingSet& embeddings, std::size_t target_dim);

inline constexpr int kNoise = -1;

struct ClusterAssignment {
  std::vector<std::string> ids;
  std::vector<int> labels;  // 0..num_clusters-1 or kNoise
  int num_clusters = 0;

  std::size_t cluster_size(int label) const;
};

struct ClusterOptions {
  std::size_t min_cluster_size = 10;
  double cutoff_quantile = 0.25;  // of the pairwise-distance distribution
};

/// Single-linkage agglomeration with a distance cutoff: points closer than
/// the cutoff end up in one cluster. Clusters smaller than
/// min_cluster_size become noise; labels follow descending cluster size.
ClusterAssignment cluster(const EmbeddingSet& reduced, const ClusterOptions& options = {});

/// Which quantity stands for N, the class word total.
enum class ClassTotalMode { Average, PerClassTotal };

struct CtfidfOptions {
  ClassTotalMode n_mode = ClassTotalMode::Average;
  double log_base = 0.0;  // <= 0 means natural log
};

/// f_wc * log(1 + N / f_w), with f_wc = count_in_class / class_total.
double ctfidf_value(double count_in_class, double class_total, double count_all, double n,
                    double log_base = 0.0);

using WordScore = std::pair<std::string, double>;

struct TopicWordScores {
  /// Per cluster label: words present in the cluster, score desc, word asc.
  std::vector<std::vector<WordScore>> clusters;

  /// 0 for words absent from the cluster.
  double score(int cluster_label, const std::string& word) const;
};

TopicWordScores ctfidf_scores(const std::vector<TokenizedDoc>& docs,
                              const ClusterAssignment& assignment,
                              const CtfidfOptions& options = {});

std::vector<WordScore> topic_words(const TopicWordScores& scores, int cluster_label,
                                   std::size_t top_n);

}  // namespace artrec
