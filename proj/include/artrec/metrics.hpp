#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace artrec {

using IdList = std::vector<std::string>;

/// |a ∩ b| / |a ∪ b|
double iou(const IdList& a, const IdList& b);

/// Extrapolated rank-biased overlap at depth k = |a| = |b|:
///   (X_k/k) p^k + ((1-p)/p) sum_{d=1..k} (X_d/d) p^d
/// where X_d is the overlap of the depth-d prefixes.
double rbo(const IdList& a, const IdList& b, double p = 0.9);

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // population
  std::size_t count = 0;
};

MeanSd mean_sd(const std::vector<double>& values);

inline constexpr const char* kAllColumn = "All";

/// Per engine, pairwise IoU/RBO statistics over all unordered user pairs.
/// The "All" column pools the per-engine pairwise values.
struct OverlapReport {
  double p = 0.9;
  std::size_t users = 0;
  std::vector<std::string> columns;  // engines in input order, then "All"
  std::map<std::string, MeanSd> iou;
  std::map<std::string, MeanSd> rbo;
};

/// user -> engine -> ranked ids
using UserRankings = std::map<std::string, std::map<std::string, IdList>>;

OverlapReport overlap_report(const UserRankings& rankings, double p = 0.9,
                             const std::vector<std::string>& engine_order = {});

/// Aligned-column table in the layout of a Mean ± SD overlap table.
void write_overlap_table(const OverlapReport& report, std::ostream& out);
/// Machine-readable: metric, column, mean, sd, pairs.
void write_overlap_tsv(const OverlapReport& report, std::ostream& out);

/// Reads `session_id<TAB>engine<TAB>id1,id2,...` lines (the export format).
UserRankings read_rankings_tsv(const std::filesystem::path& path);

}  // namespace artrec
