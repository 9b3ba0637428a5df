#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "artrec/corpus.hpp"

namespace artrec {

using StopwordSet = std::unordered_set<std::string>;

struct TokenizedDoc {
  std::string painting_id;
  std::vector<std::string> tokens;
};

class Vocabulary {
 public:
  Vocabulary() = default;
  /// Words must already be in (count desc, word asc) order.
  Vocabulary(std::vector<std::string> words, std::vector<long> counts);

  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }
  const std::string& word(std::size_t id) const { return words_.at(id); }
  long count(std::size_t id) const { return counts_.at(id); }
  const std::vector<long>& counts() const { return counts_; }
  /// -1 when absent.
  long id_of(std::string_view word) const;

 private:
  std::vector<std::string> words_;
  std::vector<long> counts_;
  std::unordered_map<std::string, long> index_;
};

/// The fixed English list shipped with the project.
const StopwordSet& default_stopwords();
/// One word per line; blank lines and '#' comments ignored.
StopwordSet load_stopwords(const std::filesystem::path& path);

/// Lowercased word tokens of `text`: split on anything that is not a letter
/// or digit, single-character tokens dropped. No stopword removal.
std::vector<std::string> tokenize(std::string_view text);

/// Rule-based plural/gerund stripping, applied to a fixpoint.
std::string normalize_suffix(std::string_view word);

TokenizedDoc preprocess(const Painting& painting, const StopwordSet& stopwords);
TokenizedDoc preprocess_text(std::string painting_id, std::string_view text,
                             const StopwordSet& stopwords);
std::vector<TokenizedDoc> preprocess_corpus(const Corpus& corpus,
                                            const StopwordSet& stopwords);

Vocabulary build_vocabulary(const std::vector<TokenizedDoc>& docs, long min_count = 2);

}  // namespace artrec
