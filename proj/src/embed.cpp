#include "artrec/embed.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include "artrec/error.hpp"
#include "artrec/kernels.hpp"

namespace artrec {

static_assert(std::endian::native == std::endian::little,
              "similarity cache I/O assumes a little-endian host");

EmbeddingSet::EmbeddingSet(std::string engine_id, std::size_t dim,
                           std::vector<std::string> ids, std::vector<double> data)
    : engine_id_(std::move(engine_id)),
      dim_(dim),
      ids_(std::move(ids)),
      data_(std::move(data)) {
  if (engine_id_.empty()) data_error("embedding set needs an engine id");
  if (dim_ == 0) data_error("embedding dim must be >= 1");
  if (data_.size() != ids_.size() * dim_) data_error("embedding data size mismatch");
}

namespace {

struct Header {
  std::string engine;
  std::size_t dim = 0;
  std::map<std::string, std::string> attributes;
};

Header parse_header(const std::string& line, const std::string& source) {
  if (line.rfind("#", 0) != 0) {
    data_error(source + ": missing '#engine=<id> dim=<d>' header line");
  }
  Header h;
  std::istringstream in(line.substr(1));
  std::string tok;
  bool have_dim = false;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) data_error(source + ": bad header token '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    const std::string value = tok.substr(eq + 1);
    if (key == "engine") {
      h.engine = value;
    } else if (key == "dim") {
      const auto r = std::from_chars(value.data(), value.data() + value.size(), h.dim);
      if (r.ec != std::errc{} || r.ptr != value.data() + value.size() || h.dim == 0) {
        data_error(source + ": bad dim '" + value + "' in header");
      }
      have_dim = true;
    } else {
      h.attributes[key] = value;
    }
  }
  if (h.engine.empty() || !have_dim) {
    data_error(source + ": header must carry engine=<id> and dim=<d>");
  }
  return h;
}

}  // namespace

EmbeddingSet read_embeddings(std::istream& in, const Corpus& corpus,
                             const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) data_error(source + ": empty embedding file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const Header header = parse_header(line, source);

  const std::size_t m = corpus.size();
  std::vector<double> data(m * header.dim, 0.0);
  std::vector<bool> seen(m, false);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      data_error(source + " line " + std::to_string(line_no) + ": expected id<TAB>values");
    }
    const std::string id = line.substr(0, tab);
    const auto idx = corpus.index_of(id);
    if (!idx) data_error(source + ": unknown painting id '" + id + "'");
    if (seen[*idx]) data_error(source + ": duplicate embedding for '" + id + "'");
    seen[*idx] = true;

    double* row = data.data() + *idx * header.dim;
    std::size_t count = 0;
    const char* p = line.data() + tab + 1;
    const char* end = line.data() + line.size();
    while (p < end) {
      const char* comma = std::find(p, end, ',');
      double v = 0.0;
      const auto r = std::from_chars(p, comma, v);
      if (r.ec != std::errc{} || r.ptr != comma) {
        data_error(source + ": unparseable value in row '" + id + "'");
      }
      if (!std::isfinite(v)) data_error(source + ": non-finite value in row '" + id + "'");
      if (count < header.dim) row[count] = v;
      ++count;
      p = comma == end ? end : comma + 1;
    }
    if (count != header.dim) {
      data_error(source + ": dimension mismatch for '" + id + "' (got " +
                 std::to_string(count) + ", header says " + std::to_string(header.dim) +
                 ")");
    }
    if (std::all_of(row, row + header.dim, [](double x) { return x == 0.0; })) {
      data_error(source + ": zero vector for '" + id + "' (cosine undefined)");
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!seen[i]) data_error(source + ": no embedding for painting '" + corpus.at(i).id + "'");
  }
  std::vector<std::string> ids;
  ids.reserve(m);
  for (const auto& p : corpus.paintings()) ids.push_back(p.id);
  EmbeddingSet set(header.engine, header.dim, std::move(ids), std::move(data));
  set.attributes = header.attributes;
  return set;
}

EmbeddingSet load_embeddings(const std::filesystem::path& path, const Corpus& corpus) {
  std::ifstream in(path);
  if (!in) data_error("cannot open embedding file " + path.string());
  return read_embeddings(in, corpus, path.string());
}

void write_embeddings(const EmbeddingSet& set, std::ostream& out) {
  out << "#engine=" << set.engine_id() << " dim=" << set.dim();
  for (const auto& [k, v] : set.attributes) out << ' ' << k << '=' << v;
  out << '\n';
  char buf[64];
  for (std::size_t i = 0; i < set.size(); ++i) {
    out << set.ids()[i] << '\t';
    const auto row = set.row(i);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      const auto r = std::to_chars(buf, buf + sizeof buf, row[c]);
      out.write(buf, r.ptr - buf);
    }
    out << '\n';
  }
}

void save_embeddings(const EmbeddingSet& set, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) data_error("cannot write embedding file " + path.string());
  write_embeddings(set, out);
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) data_error("cosine: vectors differ in length");
  const double nu = std::sqrt(kernels::dot(u, u));
  const double nv = std::sqrt(kernels::dot(v, v));
  if (nu == 0.0 || nv == 0.0) data_error("cosine: zero-norm vector");
  return kernels::dot(u, v) / (nu * nv);
}

SimilarityMatrix::SimilarityMatrix(std::string engine_id, std::vector<std::string> ids,
                                   std::vector<double> values)
    : engine_id_(std::move(engine_id)), ids_(std::move(ids)), values_(std::move(values)) {
  if (values_.size() != ids_.size() * ids_.size()) {
    data_error("similarity matrix size does not match its id list");
  }
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], static_cast<long>(i)).second) {
      data_error("duplicate id '" + ids_[i] + "' in similarity matrix");
    }
  }
}

long SimilarityMatrix::index_of(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

SimilarityMatrix build_similarity(const EmbeddingSet& set, unsigned threads) {
  const std::size_t m = set.size();
  std::vector<double> norms(m);
  for (std::size_t i = 0; i < m; ++i) {
    norms[i] = std::sqrt(kernels::dot(set.row(i), set.row(i)));
    if (norms[i] == 0.0) data_error("zero vector for '" + set.ids()[i] + "'");
  }
  std::vector<double> values(m * m);
  // Upper triangle including the diagonal, mirrored so symmetry is exact.
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < m; i += stride) {
      const auto ri = set.row(i);
      for (std::size_t j = i; j < m; ++j) {
        const double c = kernels::dot(ri, set.row(j)) / (norms[i] * norms[j]);
        values[i * m + j] = c;
        values[j * m + i] = c;
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(m, 1)));
  if (threads <= 1) {
    work(0, 1);
  } else {
    // Interleaved rows balance the triangular workload.
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }
  return SimilarityMatrix(set.engine_id(), set.ids(), std::move(values));
}

namespace {

constexpr char kSimMagic[8] = {'A', 'R', 'T', 'S', 'I', 'M', '\0', '\0'};
constexpr std::uint32_t kSimVersion = 1;

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& in, const std::string& source) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) {
    data_error(source + ": truncated similarity cache");
  }
  return v;
}

std::string get_string(std::istream& in, const std::string& source) {
  const auto len = get<std::uint32_t>(in, source);
  if (len > (1u << 20)) data_error(source + ": implausible string length");
  std::string s(len, '\0');
  if (!in.read(s.data(), len)) data_error(source + ": truncated similarity cache");
  return s;
}

void put_string(std::ostream& out, const std::string& s) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

}  // namespace

void save_similarity(const SimilarityMatrix& matrix, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) data_error("cannot write similarity cache " + path.string());
  out.write(kSimMagic, sizeof kSimMagic);
  put<std::uint32_t>(out, kSimVersion);
  put_string(out, matrix.engine_id());
  put<std::uint64_t>(out, matrix.size());
  for (const auto& id : matrix.ids()) put_string(out, id);
  std::vector<float> row(matrix.size());
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    const auto r = matrix.row(i);
    std::transform(r.begin(), r.end(), row.begin(),
                   [](double v) { return static_cast<float>(v); });
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) data_error("failed writing similarity cache " + path.string());
}

SimilarityMatrix load_similarity(const std::filesystem::path& path) {
  const std::string source = path.string();
  std::ifstream in(path, std::ios::binary);
  if (!in) data_error("cannot open similarity cache " + source);
  char magic[sizeof kSimMagic];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kSimMagic, sizeof magic) != 0) {
    data_error(source + ": not a similarity cache file");
  }
  if (get<std::uint32_t>(in, source) != kSimVersion) {
    data_error(source + ": unsupported similarity cache version");
  }
  std::string engine = get_string(in, source);
  const auto m = get<std::uint64_t>(in, source);
  if (m > (1u << 20)) data_error(source + ": implausible matrix size");
  std::vector<std::string> ids;
  ids.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) ids.push_back(get_string(in, source));
  std::vector<float> raw(m * m);
  if (!in.read(reinterpret_cast<char*>(raw.data()),
               static_cast<std::streamsize>(raw.size() * sizeof(float)))) {
    data_error(source + ": truncated similarity cache");
  }
  std::vector<double> values(raw.begin(), raw.end());
  return SimilarityMatrix(std::move(engine), std::move(ids), std::move(values));
}

}  // namespace artrec
