#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace artrec {

struct Painting {
  std::string id;
  std::string title;
  std::string artist;
  std::string date;
  std::string technique;
  std::string description;
  std::string story_group;  // empty = uncategorized
  std::string image_ref;

  bool operator==(const Painting&) const = default;
};

/// Immutable, validated painting collection in file order.
class Corpus {
 public:
  /// Validates ids (non-empty, unique), text presence and m >= 2.
  explicit Corpus(std::vector<Painting> paintings);

  const std::vector<Painting>& paintings() const { return paintings_; }
  std::size_t size() const { return paintings_.size(); }
  const Painting& at(std::size_t i) const { return paintings_.at(i); }

  std::optional<std::size_t> index_of(const std::string& id) const;
  const Painting& get(const std::string& id) const;  // throws NotFound

  /// Distinct non-empty story group labels, sorted.
  const std::vector<std::string>& story_groups() const { return story_groups_; }
  /// Painting indices carrying the given label, in file order.
  const std::vector<std::size_t>& members(const std::string& group) const;

  bool operator==(const Corpus& other) const {
    return paintings_ == other.paintings_;
  }

 private:
  std::vector<Painting> paintings_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> story_groups_;
  std::unordered_map<std::string, std::vector<std::size_t>> members_;
};

Corpus read_corpus(std::istream& in);
Corpus load_corpus(const std::filesystem::path& path);
void write_corpus(const Corpus& corpus, std::ostream& out);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

/// One painting per story group (sorted label order), uniform within each
/// group. Uncategorized paintings are never drawn.
std::vector<Painting> sample_elicitation(const Corpus& corpus,
                                         std::uint64_t seed);

}  // namespace artrec
