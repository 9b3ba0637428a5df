#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "artrec/corpus.hpp"

namespace artrec {

/// Engine-tagged dense vectors, one per painting, stored in corpus order.
class EmbeddingSet {
 public:
  EmbeddingSet(std::string engine_id, std::size_t dim, std::vector<std::string> ids,
               std::vector<double> data);

  const std::string& engine_id() const { return engine_id_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  const std::vector<double>& data() const { return data_; }

  /// Extra `key=value` pairs from the file header, beyond engine and dim.
  std::map<std::string, std::string> attributes;

 private:
  std::string engine_id_;
  std::size_t dim_;
  std::vector<std::string> ids_;
  std::vector<double> data_;
};

EmbeddingSet read_embeddings(std::istream& in, const Corpus& corpus,
                             const std::string& source = "<stream>");
/// Rows are reordered to corpus order; every painting must be present.
EmbeddingSet load_embeddings(const std::filesystem::path& path, const Corpus& corpus);
void write_embeddings(const EmbeddingSet& set, std::ostream& out);
void save_embeddings(const EmbeddingSet& set, const std::filesystem::path& path);

/// dot(u,v) / (|u| |v|); throws on zero norm or length mismatch.
double cosine(std::span<const double> u, std::span<const double> v);

/// Symmetric m x m cosine-similarity table for one engine.
class SimilarityMatrix {
 public:
  SimilarityMatrix(std::string engine_id, std::vector<std::string> ids,
                   std::vector<double> values);

  const std::string& engine_id() const { return engine_id_; }
  const std::vector<std::string>& ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  double at(std::size_t i, std::size_t j) const { return values_[i * ids_.size() + j]; }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * ids_.size(), ids_.size()};
  }
  const std::vector<double>& values() const { return values_; }
  /// -1 when absent.
  long index_of(const std::string& id) const;

 private:
  std::string engine_id_;
  std::vector<std::string> ids_;
  std::vector<double> values_;
  std::unordered_map<std::string, long> index_;
};

/// A_ij = cosine(p_i, p_j). Rows are split across threads; every entry is a
/// single kernel call, so the result does not depend on the split.
SimilarityMatrix build_similarity(const EmbeddingSet& set, unsigned threads = 0);

/// Binary cache: magic, version, engine id, id manifest, then m*m
/// little-endian float32 values in row-major order.
void save_similarity(const SimilarityMatrix& matrix, const std::filesystem::path& path);
SimilarityMatrix load_similarity(const std::filesystem::path& path);

}  // namespace artrec
