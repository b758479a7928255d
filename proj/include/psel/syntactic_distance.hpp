#pragma once

#include <cstdint>
#include <vector>

#include "psel/tree.hpp"

namespace psel {

// Per-token syntactic distances. values[0] is always 0; values[i] is the
// height of the lowest common ancestor of tokens i-1 and i in the collapsed,
// right-binarized tree.
struct DistanceVector {
  std::vector<std::uint32_t> values;

  std::size_t size() const noexcept { return values.size(); }

  friend bool operator==(const DistanceVector&, const DistanceVector&) = default;
};

// Merges every internal node that has exactly one child into that child,
// keeping the outer label. A chain ending in a leaf becomes a leaf.
ParseTree collapse_unary(const ParseTree& tree);

// Replaces each node with k > 2 children by a right-branching cascade
// (c1 (c2 (... ck))). Intermediate nodes are labeled parent label + "*".
ParseTree binarize_right(const ParseTree& tree);

// Height of the tree: 0 for a leaf, 1 + max child height otherwise.
std::uint32_t tree_height(const ParseTree& tree);

DistanceVector distance_vector(const ParseTree& tree);

}  // namespace psel
