#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "psel/corpus.hpp"
#include "psel/projector.hpp"
#include "psel/similarity.hpp"

namespace psel {

inline constexpr double kDefaultLsw = 0.9;
inline constexpr std::size_t kDefaultTopK = 5;

struct SelectionConfig {
  SimilarityMode mode = SimilarityMode::kSyntactic;
  // Linguistic similarity weight; the acoustic term gets 1 - lsw.
  double lsw = kDefaultLsw;
  bool normalize_d = true;
  std::size_t top_k = kDefaultTopK;
};

// Throws Error if lsw is outside [0, 1] or not finite.
void validate(const SelectionConfig& cfg);

struct RankedCandidate {
  std::string id;
  double ls = 0.0;
  double d = 0.0;
  double loss = 0.0;

  friend bool operator==(const RankedCandidate&, const RankedCandidate&) = default;
};

struct SelectionResult {
  std::string chosen_id;
  std::size_t chosen_index = 0;  // position in corpus order
  double ls = 0.0;
  double d = 0.0;
  double loss = 0.0;
  // Candidates ranked directly after the chosen one, best first.
  std::vector<RankedCandidate> runner_ups;
  // Number of candidates whose similarity hit a zero-norm operand.
  std::size_t degenerate_candidates = 0;

  friend bool operator==(const SelectionResult&, const SelectionResult&) = default;
};

// loss = lsw * (1 - ls) + (1 - lsw) * d
inline double selection_loss(double lsw, double ls, double d) {
  return lsw * (1.0 - ls) + (1.0 - lsw) * d;
}

// Candidate ordering used everywhere: lower loss first, then higher ls, then
// lexicographically smaller id. Corpus position never matters.
bool ranks_before(const RankedCandidate& a, const RankedCandidate& b);

// The representation a corpus record presents to similarity functions.
SentenceRepr repr_of(const Corpus& corpus, std::size_t index);

// Holds a corpus and the projected acoustic point of every record so repeated
// paragraph selections do not re-project. Both referents must outlive it.
class Selector {
 public:
  explicit Selector(const Corpus& corpus);
  Selector(const Corpus& corpus, const Projector& projector);

  // Record with the highest LS to `query`; d = 0, loss = 1 - ls.
  SelectionResult select_sentence(const SentenceRepr& query, SimilarityMode mode,
                                  std::size_t top_k = kDefaultTopK) const;

  // Greedy left-to-right minimization of the weighted loss. The first
  // sentence has d fixed at 0; each later sentence measures d against the
  // embedding chosen for the sentence before it. Requires a projector.
  std::vector<SelectionResult> select_paragraph(std::span<const SentenceRepr> queries,
                                                const SelectionConfig& cfg) const;

  // One step of the paragraph loop: `previous` is the corpus index chosen for
  // the preceding sentence, or npos for the first sentence.
  SelectionResult select_step(const SentenceRepr& query, const SelectionConfig& cfg,
                              std::size_t previous) const;

  // LS of `query` against every record, in corpus order.
  std::vector<Similarity> similarities(const SentenceRepr& query, SimilarityMode mode) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  SelectionResult rank(std::span<const Similarity> sims, double lsw, std::size_t previous,
                       bool normalize_d, std::size_t top_k) const;
  void check_query(const SentenceRepr& query, SimilarityMode mode, std::size_t position) const;

  const Corpus* corpus_;
  const Projector* projector_ = nullptr;
  std::vector<Point2> points_;
};

SelectionResult select_sentence(const Corpus& corpus, const SentenceRepr& query,
                                SimilarityMode mode, std::size_t top_k = kDefaultTopK);

std::vector<SelectionResult> select_paragraph(const Corpus& corpus,
                                              std::span<const SentenceRepr> queries,
                                              const SelectionConfig& cfg,
                                              const Projector& projector);

}  // namespace psel
