#include "psel/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "psel/error.hpp"

namespace psel {
namespace {

Similarity cosine_from_sums(double dot, double norm_a_sq, double norm_b_sq) {
  if (norm_a_sq == 0.0 || norm_b_sq == 0.0) return {0.0, true};
  // sqrt(fl(x*x)) == x, so identical operands score exactly 1.
  const double value = dot / std::sqrt(norm_a_sq * norm_b_sq);
  return {std::clamp(value, -1.0, 1.0), false};
}

}  // namespace

std::string_view to_string(SimilarityMode mode) {
  switch (mode) {
    case SimilarityMode::kSyntactic: return "syntactic";
    case SimilarityMode::kCwe: return "cwe";
    case SimilarityMode::kCombined: return "combined";
  }
  return "unknown";
}

SimilarityMode parse_similarity_mode(std::string_view name) {
  if (name == "syntactic") return SimilarityMode::kSyntactic;
  if (name == "cwe") return SimilarityMode::kCwe;
  if (name == "combined") return SimilarityMode::kCombined;
  throw Error("unknown similarity mode '" + std::string(name) + "'");
}

Similarity cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("cosine: length mismatch (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  }
  if (a.empty()) throw DimensionError("cosine: empty vectors");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return cosine_from_sums(dot, na, nb);
}

Similarity syntactic_similarity(const DistanceVector& a, const DistanceVector& b) {
  if (a.values.empty() || b.values.empty()) {
    throw DimensionError("syntactic_similarity: empty distance vector");
  }
  // Padding contributes nothing to the dot product or the norms, so the
  // padded cosine only needs the common prefix for the dot product.
  double dot = 0.0, na = 0.0, nb = 0.0;
  const std::size_t common = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < common; ++i) {
    dot += static_cast<double>(a.values[i]) * static_cast<double>(b.values[i]);
  }
  for (auto v : a.values) na += static_cast<double>(v) * static_cast<double>(v);
  for (auto v : b.values) nb += static_cast<double>(v) * static_cast<double>(v);
  return cosine_from_sums(dot, na, nb);
}

void require_channels(SimilarityMode mode, const SentenceRepr& repr, std::string_view who) {
  const bool need_cwe = mode != SimilarityMode::kSyntactic;
  const bool need_syn = mode != SimilarityMode::kCwe;
  if (need_cwe && !repr.cwe) {
    throw MissingRepresentationError(std::string(who) + " is missing field 'cwe' required by " +
                                     std::string(to_string(mode)) + " mode");
  }
  if (need_syn && !repr.syndist) {
    throw MissingRepresentationError(std::string(who) + " is missing field 'tree' (syntactic " +
                                     "distances) required by " + std::string(to_string(mode)) +
                                     " mode");
  }
}

Similarity combine(Similarity semantic, Similarity syntactic) {
  return {0.5 * (semantic.value + syntactic.value), semantic.degenerate || syntactic.degenerate};
}

Similarity combined_similarity(const SentenceRepr& a, const SentenceRepr& b) {
  require_channels(SimilarityMode::kCombined, a, "first operand");
  require_channels(SimilarityMode::kCombined, b, "second operand");
  return combine(cosine(*a.cwe, *b.cwe), syntactic_similarity(*a.syndist, *b.syndist));
}

Similarity similarity(SimilarityMode mode, const SentenceRepr& a, const SentenceRepr& b) {
  switch (mode) {
    case SimilarityMode::kSyntactic:
      require_channels(mode, a, "first operand");
      require_channels(mode, b, "second operand");
      return syntactic_similarity(*a.syndist, *b.syndist);
    case SimilarityMode::kCwe:
      require_channels(mode, a, "first operand");
      require_channels(mode, b, "second operand");
      return cosine(*a.cwe, *b.cwe);
    case SimilarityMode::kCombined:
      return combined_similarity(a, b);
  }
  throw Error("unhandled similarity mode");
}

}  // namespace psel
