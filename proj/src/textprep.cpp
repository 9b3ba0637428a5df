#include "artrec/textprep.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "artrec/error.hpp"

namespace artrec {

// Generated from data/stopwords.txt at configure time.
extern const char* const kDefaultStopwordText;

namespace {

StopwordSet parse_stopwords(std::istream& in) {
  StopwordSet out;
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    std::string w = line.substr(b, e - b + 1);
    std::transform(w.begin(), w.end(), w.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    out.insert(std::move(w));
  }
  return out;
}

// Minimal UTF-8 decode; invalid bytes decode as U+FFFD (a separator).
char32_t next_codepoint(std::string_view s, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  auto cont = [&](std::size_t k) -> int {
    if (i + k >= s.size()) return -1;
    const auto b = static_cast<unsigned char>(s[i + k]);
    return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
  };
  if (b0 < 0x80) {
    i += 1;
    return b0;
  }
  if ((b0 & 0xE0) == 0xC0) {
    int c1 = cont(1);
    if (c1 >= 0) {
      i += 2;
      return (char32_t(b0 & 0x1F) << 6) | char32_t(c1);
    }
  } else if ((b0 & 0xF0) == 0xE0) {
    int c1 = cont(1), c2 = cont(2);
    if (c1 >= 0 && c2 >= 0) {
      i += 3;
      return (char32_t(b0 & 0x0F) << 12) | (char32_t(c1) << 6) | char32_t(c2);
    }
  } else if ((b0 & 0xF8) == 0xF0) {
    int c1 = cont(1), c2 = cont(2), c3 = cont(3);
    if (c1 >= 0 && c2 >= 0 && c3 >= 0) {
      i += 4;
      return (char32_t(b0 & 0x07) << 18) | (char32_t(c1) << 12) |
             (char32_t(c2) << 6) | char32_t(c3);
    }
  }
  i += 1;
  return 0xFFFD;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// ASCII alphanumerics plus the Latin-1 / Latin Extended-A/B letters.
bool is_word_char(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
           (cp >= '0' && cp <= '9');
  }
  return cp >= 0xC0 && cp <= 0x24F && cp != 0xD7 && cp != 0xF7;
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177)) {
    return cp % 2 == 0 ? cp + 1 : cp;
  }
  return cp;
}

const StopwordSet& suffix_exceptions() {
  static const StopwordSet words = {
      "always",  "anything", "atlas",    "bias",      "bring",   "bus",
      "canvas",  "ceiling",  "chaos",    "christmas", "cling",   "cosmos",
      "dais",    "during",   "evening",  "everything", "fling",  "gas",
      "hermes",  "iris",     "james",    "judas",     "king",    "lens",
      "lucas",   "mars",     "morning",  "moses",     "news",    "nicholas",
      "nothing", "offspring", "paris",   "perhaps",   "ring",    "series",
      "sibling", "sing",     "sling",    "something", "species", "spring",
      "sting",   "string",   "swing",    "thames",    "thing",   "thomas",
      "tobias",  "wing",     "wring",    "elias",     "pudding", "herodias"};
  return words;
}

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         w.substr(w.size() - suffix.size()) == suffix;
}

bool has_vowel(std::string_view s) {
  return s.find_first_of("aeiouy") != std::string_view::npos;
}

std::string strip_once(std::string_view w) {
  if (suffix_exceptions().count(std::string(w))) return std::string(w);
  const std::size_t n = w.size();
  if (ends_with(w, "ies") && n >= 5) {
    return std::string(w.substr(0, n - 3)) + "y";
  }
  if (ends_with(w, "sses")) return std::string(w.substr(0, n - 2));
  if (n >= 5 && (ends_with(w, "ches") || ends_with(w, "shes") ||
                 ends_with(w, "xes") || ends_with(w, "zzes"))) {
    return std::string(w.substr(0, n - 2));
  }
  if (ends_with(w, "s") && n >= 4 && !ends_with(w, "ss") && !ends_with(w, "us") &&
      !ends_with(w, "is")) {
    return std::string(w.substr(0, n - 1));
  }
  if (ends_with(w, "ing") && n >= 6) {
    std::string stem(w.substr(0, n - 3));
    if (!has_vowel(stem)) return std::string(w);
    const std::size_t s = stem.size();
    if (s >= 4 && stem[s - 1] == stem[s - 2] && !has_vowel(stem.substr(s - 1)) &&
        std::string_view("lsz").find(stem[s - 1]) == std::string_view::npos) {
      stem.pop_back();
    }
    return stem;
  }
  return std::string(w);
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> words, std::vector<long> counts)
    : words_(std::move(words)), counts_(std::move(counts)) {
  if (words_.size() != counts_.size()) data_error("vocabulary words/counts size mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], static_cast<long>(i)).second) {
      data_error("duplicate vocabulary word '" + words_[i] + "'");
    }
  }
}

long Vocabulary::id_of(std::string_view word) const {
  auto it = index_.find(std::string(word));
  return it == index_.end() ? -1 : it->second;
}

const StopwordSet& default_stopwords() {
  static const StopwordSet words = [] {
    std::istringstream in(kDefaultStopwordText);
    return parse_stopwords(in);
  }();
  return words;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) data_error("cannot open stopword file " + path.string());
  return parse_stopwords(in);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t current_len = 0;
  auto flush = [&] {
    if (current_len >= 2) tokens.push_back(current);
    current.clear();
    current_len = 0;
  };
  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t cp = next_codepoint(text, i);
    if (is_word_char(cp)) {
      append_utf8(current, to_lower(cp));
      ++current_len;
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::string normalize_suffix(std::string_view word) {
  std::string current(word);
  for (;;) {
    std::string next = strip_once(current);
    if (next == current) return current;
    current = std::move(next);
  }
}

TokenizedDoc preprocess_text(std::string painting_id, std::string_view text,
                             const StopwordSet& stopwords) {
  TokenizedDoc doc{std::move(painting_id), {}};
  for (std::string& tok : tokenize(text)) {
    if (stopwords.count(tok)) continue;
    std::string norm = normalize_suffix(tok);
    if (stopwords.count(norm)) continue;
    doc.tokens.push_back(std::move(norm));
  }
  return doc;
}

TokenizedDoc preprocess(const Painting& painting, const StopwordSet& stopwords) {
  std::string text;
  for (const std::string* field : {&painting.title, &painting.artist, &painting.date,
                                   &painting.technique, &painting.description}) {
    text += *field;
    text += ' ';
  }
  return preprocess_text(painting.id, text, stopwords);
}

std::vector<TokenizedDoc> preprocess_corpus(const Corpus& corpus,
                                            const StopwordSet& stopwords) {
  std::vector<TokenizedDoc> docs;
  docs.reserve(corpus.size());
  for (const Painting& p : corpus.paintings()) docs.push_back(preprocess(p, stopwords));
  return docs;
}

Vocabulary build_vocabulary(const std::vector<TokenizedDoc>& docs, long min_count) {
  if (docs.empty()) data_error("cannot build a vocabulary from zero documents");
  if (min_count < 1) fail(ErrorKind::Usage, "min_count must be >= 1");
  std::map<std::string, long> freq;
  for (const auto& d : docs) {
    for (const auto& t : d.tokens) ++freq[t];
  }
  std::vector<std::pair<std::string, long>> kept;
  for (auto& [w, c] : freq) {
    if (c >= min_count) kept.emplace_back(w, c);
  }
  if (kept.empty()) {
    data_error("empty vocabulary: no word occurs >= " + std::to_string(min_count) +
               " times");
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> words;
  std::vector<long> counts;
  for (auto& [w, c] : kept) {
    words.push_back(w);
    counts.push_back(c);
  }
  return Vocabulary(std::move(words), std::move(counts));
}

}  // namespace artrec
