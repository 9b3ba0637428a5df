#include "artrec/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include "json.hpp"

#include "artrec/error.hpp"
#include "artrec/random.hpp"

namespace artrec {

namespace {

constexpr const char* kFields[] = {"id",          "title",       "artist",
                                   "date",        "technique",   "description",
                                   "story_group", "image_ref"};

Painting painting_from_json(const nlohmann::json& j, std::size_t line) {
  if (!j.is_object()) {
    data_error("corpus line " + std::to_string(line) + ": record is not an object");
  }
  for (const char* field : kFields) {
    auto it = j.find(field);
    if (it == j.end() || !it->is_string()) {
      data_error("corpus line " + std::to_string(line) + ": field '" + field +
                 "' missing or not a string");
    }
  }
  Painting p;
  p.id = j["id"].get<std::string>();
  p.title = j["title"].get<std::string>();
  p.artist = j["artist"].get<std::string>();
  p.date = j["date"].get<std::string>();
  p.technique = j["technique"].get<std::string>();
  p.description = j["description"].get<std::string>();
  p.story_group = j["story_group"].get<std::string>();
  p.image_ref = j["image_ref"].get<std::string>();
  return p;
}

nlohmann::ordered_json painting_to_json(const Painting& p) {
  return {{"id", p.id},
          {"title", p.title},
          {"artist", p.artist},
          {"date", p.date},
          {"technique", p.technique},
          {"description", p.description},
          {"story_group", p.story_group},
          {"image_ref", p.image_ref}};
}

}  // namespace

Corpus::Corpus(std::vector<Painting> paintings) : paintings_(std::move(paintings)) {
  if (paintings_.size() < 2) {
    data_error("corpus must contain >= 2 paintings (got " +
               std::to_string(paintings_.size()) + ")");
  }
  std::set<std::string> groups;
  for (std::size_t i = 0; i < paintings_.size(); ++i) {
    const Painting& p = paintings_[i];
    if (p.id.empty()) {
      data_error("painting at record " + std::to_string(i + 1) + " has an empty id");
    }
    if (p.title.empty() && p.description.empty()) {
      data_error("painting '" + p.id + "' has neither title nor description");
    }
    if (!index_.emplace(p.id, i).second) {
      data_error("duplicate painting id '" + p.id + "'");
    }
    if (!p.story_group.empty()) {
      groups.insert(p.story_group);
      members_[p.story_group].push_back(i);
    }
  }
  story_groups_.assign(groups.begin(), groups.end());
}

std::optional<std::size_t> Corpus::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Painting& Corpus::get(const std::string& id) const {
  auto idx = index_of(id);
  if (!idx) fail(ErrorKind::NotFound, "unknown painting id '" + id + "'");
  return paintings_[*idx];
}

const std::vector<std::size_t>& Corpus::members(const std::string& group) const {
  auto it = members_.find(group);
  if (it == members_.end()) fail(ErrorKind::NotFound, "unknown story group '" + group + "'");
  return it->second;
}

Corpus read_corpus(std::istream& in) {
  std::vector<Painting> paintings;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      data_error("corpus line " + std::to_string(line_no) + ": " + e.what());
    }
    paintings.push_back(painting_from_json(j, line_no));
  }
  return Corpus(std::move(paintings));
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) data_error("cannot open corpus file " + path.string());
  return read_corpus(in);
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
  for (const Painting& p : corpus.paintings()) {
    out << painting_to_json(p).dump() << '\n';
  }
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) data_error("cannot write corpus file " + path.string());
  write_corpus(corpus, out);
}

std::vector<Painting> sample_elicitation(const Corpus& corpus, std::uint64_t seed) {
  if (corpus.story_groups().empty()) {
    data_error("corpus has no story groups to elicit from");
  }
  std::mt19937_64 gen(seed);
  std::vector<Painting> out;
  out.reserve(corpus.story_groups().size());
  for (const std::string& group : corpus.story_groups()) {
    const auto& idx = corpus.members(group);
    out.push_back(corpus.at(idx[uniform_index(gen, idx.size())]));
  }
  return out;
}

}  // namespace artrec
