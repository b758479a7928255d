#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psel/syntactic_distance.hpp"
#include "psel/tree.hpp"

namespace psel {

// One training utterance of the embedding-selection corpus.
struct CorpusRecord {
  std::string id;
  std::string text;
  ParseTree tree;
  std::vector<double> cwe;
  std::vector<double> acoustic;

  friend bool operator==(const CorpusRecord&, const CorpusRecord&) = default;
};

// Immutable, validated set of records plus the per-record distance vectors.
// Record order is the order the records were supplied in.
class Corpus {
 public:
  Corpus() = default;

  // Validates ids, dimensions, finiteness and trees, then computes the
  // distance-vector cache. Throws CorpusError.
  static Corpus build(std::vector<CorpusRecord> records);

  // Reassembles a corpus whose distance vectors were computed earlier (index
  // load). Dimensions and sizes are still checked.
  static Corpus from_parts(std::vector<CorpusRecord> records, std::vector<DistanceVector> distances,
                           std::size_t cwe_dim, std::size_t acoustic_dim);

  std::span<const CorpusRecord> records() const noexcept { return records_; }
  const CorpusRecord& record(std::size_t i) const { return records_.at(i); }
  const DistanceVector& distances(std::size_t i) const { return distances_.at(i); }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  std::size_t cwe_dim() const noexcept { return cwe_dim_; }
  std::size_t acoustic_dim() const noexcept { return acoustic_dim_; }

  std::optional<std::size_t> find(std::string_view id) const;

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  std::vector<CorpusRecord> records_;
  std::vector<DistanceVector> distances_;
  std::size_t cwe_dim_ = 0;
  std::size_t acoustic_dim_ = 0;
};

// Reads a JSON Lines corpus: one object per line with exactly the fields
// id, text, tree, cwe, acoustic. Blank lines are skipped. Errors name the
// 1-based line number and, once known, the record id.
Corpus ingest(const std::filesystem::path& path);
Corpus ingest_stream(std::istream& in, const std::string& source_name = "<stream>");

}  // namespace psel
