#include "artrec/recsys.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "artrec/error.hpp"
#include "artrec/kernels.hpp"

namespace artrec {

const std::vector<std::string>& engines::all() {
  static const std::vector<std::string> ids = {kLda, kBert, kResnet, kLdaResnet, kBertResnet};
  return ids;
}

bool engines::is_known(const std::string& engine_id) {
  const auto& a = all();
  return std::find(a.begin(), a.end(), engine_id) != a.end();
}

UserRatings::UserRatings(std::vector<std::pair<std::string, int>> entries)
    : entries_(std::move(entries)) {
  std::set<std::string> seen;
  for (const auto& [id, rating] : entries_) {
    if (rating < 1 || rating > 5) {
      fail(ErrorKind::Validation,
           "rating for '" + id + "' must be in 1..5 (got " + std::to_string(rating) + ")");
    }
    if (!seen.insert(id).second) fail(ErrorKind::Validation, "painting '" + id + "' rated twice");
  }
}

bool UserRatings::contains(const std::string& id) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const auto& e) { return e.first == id; });
}

UserRatings read_ratings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) data_error("cannot open ratings file " + path);
  std::vector<std::pair<std::string, int>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string id;
    int rating = 0;
    if (!(fields >> id >> rating)) {
      data_error(path + " line " + std::to_string(line_no) + ": expected 'painting_id rating'");
    }
    entries.emplace_back(id, rating);
  }
  try {
    return UserRatings(std::move(entries));
  } catch (const Error& e) {
    data_error(path + ": " + e.what());
  }
}

std::vector<std::string> Ranking::ids() const {
  std::vector<std::string> out;
  out.reserve(items.size());
  for (const auto& it : items) out.push_back(it.painting_id);
  return out;
}

std::vector<double> score_paintings(const SimilarityMatrix& matrix, const UserRatings& ratings) {
  if (ratings.empty()) fail(ErrorKind::Validation, "cannot score without ratings");
  std::vector<double> scores(matrix.size(), 0.0);
  for (const auto& [id, rating] : ratings.entries()) {
    const long j = matrix.index_of(id);
    if (j < 0) fail(ErrorKind::NotFound, "rated painting '" + id + "' not in similarity matrix");
    // A is symmetric, so column j of A is row j.
    kernels::axpy(UserRatings::weight(rating), matrix.row(static_cast<std::size_t>(j)), scores);
  }
  const double n = static_cast<double>(ratings.size());
  for (double& s : scores) s /= n;
  return scores;
}

namespace {

void sort_ranking(std::vector<RankedItem>& items) {
  std::sort(items.begin(), items.end(), [](const RankedItem& a, const RankedItem& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.painting_id < b.painting_id;
  });
}

}  // namespace

Ranking rank_unrated(const SimilarityMatrix& matrix, const UserRatings& ratings) {
  const auto scores = score_paintings(matrix, ratings);
  std::set<std::string> rated;
  for (const auto& e : ratings.entries()) rated.insert(e.first);
  Ranking out{matrix.engine_id(), {}};
  out.items.reserve(matrix.size());
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (rated.count(matrix.ids()[i])) continue;
    out.items.push_back({matrix.ids()[i], scores[i]});
  }
  sort_ranking(out.items);
  return out;
}

Ranking recommend(const SimilarityMatrix& matrix, const UserRatings& ratings, int r) {
  const auto available = static_cast<long>(matrix.size()) - static_cast<long>(ratings.size());
  if (r < 1 || r > available) {
    fail(ErrorKind::Usage, "r must be in 1.." + std::to_string(available) + " (got " +
                               std::to_string(r) + ")");
  }
  Ranking out = rank_unrated(matrix, ratings);
  out.items.resize(static_cast<std::size_t>(r));
  return out;
}

FusionMode parse_fusion_mode(const std::string& name) {
  if (name == "weighted_rr_sum") return FusionMode::WeightedReciprocalSum;
  if (name == "paper_product") return FusionMode::ReciprocalProduct;
  fail(ErrorKind::Usage, "unknown fusion mode '" + name + "'");
}

const char* fusion_mode_name(FusionMode mode) {
  return mode == FusionMode::WeightedReciprocalSum ? "weighted_rr_sum" : "paper_product";
}

Ranking fuse(const Ranking& a, const Ranking& b, double weight_a, double weight_b, int r,
             FusionMode mode) {
  if (weight_a < 0.0 || weight_b < 0.0 || std::abs(weight_a + weight_b - 1.0) > 1e-12) {
    fail(ErrorKind::Usage, "fusion weights must be non-negative and sum to 1");
  }
  if (a.items.size() != b.items.size()) {
    fail(ErrorKind::Validation, "fusion inputs rank different id sets");
  }
  std::unordered_map<std::string, std::size_t> rank_b;
  for (std::size_t i = 0; i < b.items.size(); ++i) {
    if (!rank_b.emplace(b.items[i].painting_id, i + 1).second) {
      fail(ErrorKind::Validation, "duplicate id in fusion input");
    }
  }
  std::vector<RankedItem> fused;
  fused.reserve(a.items.size());
  std::set<std::string> seen_a;
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    const std::string& id = a.items[i].painting_id;
    auto it = rank_b.find(id);
    if (it == rank_b.end() || !seen_a.insert(id).second) {
      fail(ErrorKind::Validation, "fusion inputs rank different id sets ('" + id + "')");
    }
    const double na = static_cast<double>(i + 1);
    const double nb = static_cast<double>(it->second);
    const double f = mode == FusionMode::WeightedReciprocalSum
                         ? weight_a / na + weight_b / nb
                         : 1.0 / (na * nb);
    fused.push_back({id, f});
  }
  const auto available = static_cast<long>(fused.size());
  if (r < 1 || r > available) {
    fail(ErrorKind::Usage, "r must be in 1.." + std::to_string(available) + " (got " +
                               std::to_string(r) + ")");
  }
  sort_ranking(fused);
  fused.resize(static_cast<std::size_t>(r));
  return Ranking{a.engine_id + "+" + b.engine_id, std::move(fused)};
}

std::map<std::string, Ranking> engine_rankings(
    const UserRatings& ratings, const std::map<std::string, const SimilarityMatrix*>& matrices,
    int r, FusionMode mode) {
  std::map<std::string, Ranking> full;
  for (const char* base : {engines::kLda, engines::kBert, engines::kResnet}) {
    auto it = matrices.find(base);
    if (it == matrices.end() || it->second == nullptr) {
      fail(ErrorKind::Data, std::string("missing similarity matrix for engine '") + base + "'");
    }
    full.emplace(base, rank_unrated(*it->second, ratings));
  }
  const long available = static_cast<long>(full.at(engines::kLda).items.size());
  if (r < 1 || r > available) {
    fail(ErrorKind::Usage, "r must be in 1.." + std::to_string(available));
  }
  std::map<std::string, Ranking> out;
  out[engines::kLdaResnet] =
      fuse(full.at(engines::kLda), full.at(engines::kResnet), 0.5, 0.5, r, mode);
  out[engines::kBertResnet] =
      fuse(full.at(engines::kBert), full.at(engines::kResnet), 0.5, 0.5, r, mode);
  for (auto& [id, ranking] : full) {
    ranking.items.resize(static_cast<std::size_t>(r));
    out[id] = std::move(ranking);
  }
  return out;
}

}  // namespace artrec
