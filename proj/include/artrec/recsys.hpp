#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "artrec/embed.hpp"

namespace artrec {

namespace engines {
inline constexpr const char* kLda = "lda";
inline constexpr const char* kBert = "bert";
inline constexpr const char* kResnet = "resnet";
inline constexpr const char* kLdaResnet = "lda+resnet";
inline constexpr const char* kBertResnet = "bert+resnet";

/// The five study engines in canonical order.
const std::vector<std::string>& all();
bool is_known(const std::string& engine_id);
}  // namespace engines

inline constexpr int kDefaultRecommendations = 9;

/// Elicited 1..5 ratings; the weight of a rating is rating / 5.
class UserRatings {
 public:
  UserRatings() = default;
  explicit UserRatings(std::vector<std::pair<std::string, int>> entries);

  const std::vector<std::pair<std::string, int>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool contains(const std::string& id) const;

  static double weight(int rating) { return rating / 5.0; }

 private:
  std::vector<std::pair<std::string, int>> entries_;
};

UserRatings read_ratings_file(const std::string& path);

struct RankedItem {
  std::string painting_id;
  double score;

  bool operator==(const RankedItem&) const = default;
};

struct Ranking {
  std::string engine_id;
  std::vector<RankedItem> items;

  std::vector<std::string> ids() const;
  bool operator==(const Ranking&) const = default;
};

/// S(p_i) = (1/n) sum_j w_j A_ij over the rated paintings, for every
/// painting in matrix order.
std::vector<double> score_paintings(const SimilarityMatrix& matrix, const UserRatings& ratings);

/// Every unrated painting, score descending, ties by ascending id.
Ranking rank_unrated(const SimilarityMatrix& matrix, const UserRatings& ratings);

/// First r entries of rank_unrated; 1 <= r <= m - |ratings|.
Ranking recommend(const SimilarityMatrix& matrix, const UserRatings& ratings, int r);

enum class FusionMode {
  WeightedReciprocalSum,  // F = wA/nA + wB/nB
  ReciprocalProduct,      // F = 1/(nA nB), weights ignored
};

FusionMode parse_fusion_mode(const std::string& name);
const char* fusion_mode_name(FusionMode mode);

/// Late fusion of two full rankings over the same ids, sliced to r.
Ranking fuse(const Ranking& a, const Ranking& b, double weight_a, double weight_b, int r,
             FusionMode mode = FusionMode::WeightedReciprocalSum);

/// The five engine rankings of length r. `matrices` must hold lda, bert and
/// resnet; the fused engines use equal weights.
std::map<std::string, Ranking> engine_rankings(
    const UserRatings& ratings, const std::map<std::string, const SimilarityMatrix*>& matrices,
    int r, FusionMode mode = FusionMode::WeightedReciprocalSum);

}  // namespace artrec
