#include <algorithm>
#include <numeric>

#include "doctest.h"

#include "artrec/error.hpp"
#include "artrec/random.hpp"
#include "artrec/textprep.hpp"
#include "test_support.hpp"

using namespace artrec;

namespace {

using Tokens = std::vector<std::string>;

Painting with_description(const std::string& text) {
  return {"p", "", "", "", "", text, "", ""};
}

std::string join(const Tokens& tokens) {
  std::string out;
  for (const auto& t : tokens) out += (out.empty() ? "" : " ") + t;
  return out;
}

}  // namespace

TEST_SUITE("textprep") {

TEST_CASE("punctuation and stopwords are removed") {
  const StopwordSet sw = {"the", "and"};
  CHECK(preprocess(with_description("The Virgin and Child."), sw).tokens ==
        Tokens{"virgin", "child"});
  CHECK(preprocess(with_description("\xE2\x80\x94!!\xE2\x80\x94"), sw).tokens.empty());
  CHECK(preprocess(with_description("the and"), sw).tokens.empty());
}

TEST_CASE("suffix normalization golden values") {
  CHECK(preprocess_text("p", "Saints praying", default_stopwords()).tokens == Tokens{"saint", "pray"});
  CHECK(normalize_suffix("churches") == "church");
  CHECK(normalize_suffix("ladies") == "lady");
  CHECK(normalize_suffix("painting") == "paint");
  CHECK(normalize_suffix("glass") == "glass");
  CHECK(normalize_suffix("king") == "king");
}

TEST_CASE("tokenizer rules") {
  CHECK(tokenize("A b-c DE,f9 x") == Tokens{"de", "f9"});
  CHECK(tokenize("Dürer's ÉTUDE") == Tokens{"dürer", "étude"});
  CHECK(tokenize("1650-55") == Tokens{"1650", "55"});
  CHECK(tokenize("").empty());
}

TEST_CASE("fields concatenate in a fixed order") {
  const Painting p{"id", "Title Word", "Artist Name", "1650", "Oil Canvas", "Body Text", "g", ""};
  CHECK(preprocess(p, {}).tokens ==
        Tokens{"title", "word", "artist", "name", "1650", "oil", "canvas", "body", "text"});
}

TEST_CASE("default stopwords ship with the library") {
  const auto& sw = default_stopwords();
  CHECK(sw.size() > 150);
  CHECK(sw.count("the") == 1);
  CHECK(sw.count("and") == 1);
  CHECK(sw.count("virgin") == 0);
}

TEST_CASE("stopword file loading") {
  testing::TempDir tmp;
  {
    std::ofstream out(tmp / "sw.txt");
    out << "# comment\nfoo\n\nBar\n";
  }
  const auto sw = load_stopwords(tmp / "sw.txt");
  CHECK(sw.count("foo") == 1);
  CHECK(sw.count("bar") == 1);
  CHECK(sw.size() == 2);
  CHECK_THROWS_AS(load_stopwords(tmp / "missing.txt"), Error);
}

TEST_CASE("vocabulary ordering and thresholds") {
  const std::vector<TokenizedDoc> docs = {{"d1", {"a", "b", "a"}}, {"d2", {"b", "c"}}};
  const auto v2 = build_vocabulary(docs, 2);
  CHECK(v2.words() == Tokens{"a", "b"});
  CHECK(v2.counts() == std::vector<long>{2, 2});
  CHECK(v2.id_of("b") == 1);
  CHECK(v2.id_of("c") == -1);
  CHECK(build_vocabulary(docs, 1).words() == Tokens{"a", "b", "c"});
  CHECK_THROWS_AS(build_vocabulary(docs, 10), Error);
  CHECK_THROWS_AS(build_vocabulary({}, 1), Error);
}

TEST_CASE("property: pipeline is idempotent and stopword-free on random text") {
  std::mt19937_64 gen(3);
  const std::vector<std::string> pieces = {
      "The", "saints", "were", "praying", "in", "churches", ",", "ladies", "dancing", ";",
      "Virgin", "and", "Child", "\u2014", "horses", "running", "glass", "boxes", "of", "É", "x",
      "1650", "it's", "kings", "paintings", "!!", "studies", "dress"};
  const auto& sw = default_stopwords();
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    const auto n = uniform_index(gen, 25);
    for (std::uint64_t i = 0; i < n; ++i) text += pieces[uniform_index(gen, pieces.size())] + " ";
    const auto once = preprocess_text("p", text, sw).tokens;
    const auto twice = preprocess_text("p", join(once), sw).tokens;
    CHECK(once == twice);
    for (const auto& t : once) {
      CHECK(sw.count(t) == 0);
      CHECK(t.size() > 1);
    }
  }
}

TEST_CASE("property: vocabulary ids dense, ordered and stable") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<TokenizedDoc> docs(1 + uniform_index(gen, 6));
    for (auto& d : docs) {
      const auto n = uniform_index(gen, 20);
      for (std::uint64_t i = 0; i < n; ++i) d.tokens.push_back(std::string(1, 'a' + uniform_index(gen, 8)) + "w");
    }
    Vocabulary v;
    try {
      v = build_vocabulary(docs, 2);
    } catch (const Error&) {
      continue;
    }
    const auto again = build_vocabulary(docs, 2);
    CHECK(again.words() == v.words());
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(v.id_of(v.word(i)) == static_cast<long>(i));
      CHECK(v.count(i) >= 2);
      if (i > 0) {
        const bool ordered = v.count(i - 1) > v.count(i) ||
                             (v.count(i - 1) == v.count(i) && v.word(i - 1) < v.word(i));
        CHECK(ordered);
      }
    }
  }
}

}  // TEST_SUITE
