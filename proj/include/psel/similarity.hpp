#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "psel/syntactic_distance.hpp"

namespace psel {

enum class SimilarityMode { kSyntactic, kCwe, kCombined };

std::string_view to_string(SimilarityMode mode);
// Accepts "syntactic", "cwe", "combined". Throws Error otherwise.
SimilarityMode parse_similarity_mode(std::string_view name);

// A cosine score. `degenerate` is set when a zero-norm operand forced the
// score to 0 instead of an undefined ratio.
struct Similarity {
  double value = 0.0;
  bool degenerate = false;
};

// Linguistic view of one sentence. At least one channel is present.
struct SentenceRepr {
  std::optional<std::vector<double>> cwe;
  std::optional<DistanceVector> syndist;
};

// Throws DimensionError on length mismatch or empty input.
Similarity cosine(std::span<const double> a, std::span<const double> b);

// Cosine after zero-padding the shorter vector.
Similarity syntactic_similarity(const DistanceVector& a, const DistanceVector& b);

// Unweighted mean of the CWE and syntactic channels. Throws
// MissingRepresentationError naming the absent field.
Similarity combined_similarity(const SentenceRepr& a, const SentenceRepr& b);

// Mean of the two channel scores; degenerate if either channel is.
Similarity combine(Similarity semantic, Similarity syntactic);

// Dispatches on mode; channels required by the mode must be present.
Similarity similarity(SimilarityMode mode, const SentenceRepr& a, const SentenceRepr& b);

// Throws MissingRepresentationError if `repr` lacks a channel `mode` needs.
// `who` names the operand in the message.
void require_channels(SimilarityMode mode, const SentenceRepr& repr, std::string_view who);

}  // namespace psel
