#include "psel/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "psel/error.hpp"

namespace psel {

void validate(const SelectionConfig& cfg) {
  if (!std::isfinite(cfg.lsw) || cfg.lsw < 0.0 || cfg.lsw > 1.0) {
    throw Error("lsw must lie in [0, 1], got " + std::to_string(cfg.lsw));
  }
}

bool ranks_before(const RankedCandidate& a, const RankedCandidate& b) {
  if (a.loss != b.loss) return a.loss < b.loss;
  if (a.ls != b.ls) return a.ls > b.ls;
  return a.id < b.id;
}

SentenceRepr repr_of(const Corpus& corpus, std::size_t index) {
  return SentenceRepr{corpus.record(index).cwe, corpus.distances(index)};
}

Selector::Selector(const Corpus& corpus) : corpus_(&corpus) {}

Selector::Selector(const Corpus& corpus, const Projector& projector)
    : corpus_(&corpus), projector_(&projector) {
  if (projector.dim() != corpus.acoustic_dim()) {
    throw DimensionError("projector dimension " + std::to_string(projector.dim()) +
                         " does not match corpus acoustic dimension " +
                         std::to_string(corpus.acoustic_dim()));
  }
  points_.reserve(corpus.size());
  for (const auto& r : corpus.records()) points_.push_back(projector.project(r.acoustic));
}

void Selector::check_query(const SentenceRepr& query, SimilarityMode mode,
                           std::size_t position) const {
  if (corpus_->empty()) throw Error("cannot select from an empty corpus");
  require_channels(mode, query, "query #" + std::to_string(position + 1));
  if (mode != SimilarityMode::kSyntactic && query.cwe->size() != corpus_->cwe_dim()) {
    throw DimensionError("query #" + std::to_string(position + 1) + ": cwe dimension " +
                         std::to_string(query.cwe->size()) + " does not match corpus dimension " +
                         std::to_string(corpus_->cwe_dim()));
  }
  if (mode != SimilarityMode::kCwe && query.syndist->values.empty()) {
    throw DimensionError("query #" + std::to_string(position + 1) + ": empty distance vector");
  }
}

std::vector<Similarity> Selector::similarities(const SentenceRepr& query,
                                               SimilarityMode mode) const {
  std::vector<Similarity> out;
  out.reserve(corpus_->size());
  for (std::size_t i = 0; i < corpus_->size(); ++i) {
    const CorpusRecord& r = corpus_->record(i);
    switch (mode) {
      case SimilarityMode::kSyntactic:
        out.push_back(syntactic_similarity(*query.syndist, corpus_->distances(i)));
        break;
      case SimilarityMode::kCwe:
        out.push_back(cosine(*query.cwe, r.cwe));
        break;
      case SimilarityMode::kCombined:
        out.push_back(combine(cosine(*query.cwe, r.cwe),
                              syntactic_similarity(*query.syndist, corpus_->distances(i))));
        break;
    }
  }
  return out;
}

SelectionResult Selector::rank(std::span<const Similarity> sims, double lsw, std::size_t previous,
                               bool normalize_d, std::size_t top_k) const {
  std::vector<RankedCandidate> candidates;
  candidates.reserve(sims.size());
  std::size_t degenerate = 0;
  for (std::size_t i = 0; i < sims.size(); ++i) {
    RankedCandidate c;
    c.id = corpus_->record(i).id;
    c.ls = sims[i].value;
    c.d = previous == npos ? 0.0 : projector_->distance(points_[i], points_[previous], normalize_d);
    c.loss = selection_loss(lsw, c.ls, c.d);
    if (sims[i].degenerate) ++degenerate;
    candidates.push_back(std::move(c));
  }

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t keep = std::min(order.size(), top_k + 1);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return ranks_before(candidates[a], candidates[b]);
                    });

  SelectionResult result;
  const std::size_t best = order.front();
  result.chosen_index = best;
  result.chosen_id = candidates[best].id;
  result.ls = candidates[best].ls;
  result.d = candidates[best].d;
  result.loss = candidates[best].loss;
  result.degenerate_candidates = degenerate;
  for (std::size_t k = 1; k < keep; ++k) result.runner_ups.push_back(candidates[order[k]]);
  return result;
}

SelectionResult Selector::select_sentence(const SentenceRepr& query, SimilarityMode mode,
                                          std::size_t top_k) const {
  check_query(query, mode, 0);
  const auto sims = similarities(query, mode);
  // With lsw = 1 and no predecessor, loss = 1 - ls and the ranking is
  // LS-descending.
  return rank(sims, 1.0, npos, false, top_k);
}

SelectionResult Selector::select_step(const SentenceRepr& query, const SelectionConfig& cfg,
                                      std::size_t previous) const {
  validate(cfg);
  check_query(query, cfg.mode, 0);
  if (previous != npos) {
    if (projector_ == nullptr) throw Error("paragraph selection requires a fitted projector");
    if (previous >= corpus_->size()) throw Error("previous selection index out of range");
  }
  const auto sims = similarities(query, cfg.mode);
  return rank(sims, cfg.lsw, previous, cfg.normalize_d, cfg.top_k);
}

std::vector<SelectionResult> Selector::select_paragraph(std::span<const SentenceRepr> queries,
                                                        const SelectionConfig& cfg) const {
  validate(cfg);
  if (queries.empty()) throw Error("paragraph has no sentences");
  if (projector_ == nullptr) throw Error("paragraph selection requires a fitted projector");
  for (std::size_t k = 0; k < queries.size(); ++k) check_query(queries[k], cfg.mode, k);

  std::vector<SelectionResult> out;
  out.reserve(queries.size());
  std::size_t previous = npos;
  for (const auto& query : queries) {
    const auto sims = similarities(query, cfg.mode);
    out.push_back(rank(sims, cfg.lsw, previous, cfg.normalize_d, cfg.top_k));
    previous = out.back().chosen_index;
  }
  return out;
}

SelectionResult select_sentence(const Corpus& corpus, const SentenceRepr& query,
                                SimilarityMode mode, std::size_t top_k) {
  return Selector(corpus).select_sentence(query, mode, top_k);
}

std::vector<SelectionResult> select_paragraph(const Corpus& corpus,
                                              std::span<const SentenceRepr> queries,
                                              const SelectionConfig& cfg,
                                              const Projector& projector) {
  return Selector(corpus, projector).select_paragraph(queries, cfg);
}

}  // namespace psel
