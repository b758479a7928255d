#include "psel/syntactic_distance.hpp"

#include <algorithm>
#include <utility>

namespace psel {
namespace {

// Returns the height of `node` and writes the LCA height of every adjacent
// leaf pair inside it into `gaps`, numbered left to right from `cursor`.
std::uint32_t fill_gaps(const ParseTree& node, std::vector<std::uint32_t>& gaps,
                        std::size_t& cursor) {
  if (node.is_leaf()) return 0;
  std::uint32_t child_max = 0;
  std::vector<std::size_t> own;
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (i > 0) own.push_back(cursor++);
    child_max = std::max(child_max, fill_gaps(node.children[i], gaps, cursor));
  }
  const std::uint32_t height = child_max + 1;
  for (std::size_t slot : own) gaps[slot] = height;
  return height;
}

}  // namespace

ParseTree collapse_unary(const ParseTree& tree) {
  const ParseTree* bottom = &tree;
  while (bottom->children.size() == 1) bottom = &bottom->children.front();

  ParseTree out;
  out.label = tree.label;
  if (bottom->is_leaf()) {
    out.token = bottom->token;
    return out;
  }
  out.children.reserve(bottom->children.size());
  for (const auto& child : bottom->children) out.children.push_back(collapse_unary(child));
  return out;
}

ParseTree binarize_right(const ParseTree& tree) {
  if (tree.is_leaf()) return tree;

  std::vector<ParseTree> kids;
  kids.reserve(tree.children.size());
  for (const auto& child : tree.children) kids.push_back(binarize_right(child));

  if (kids.size() <= 2) {
    ParseTree out;
    out.label = tree.label;
    out.children = std::move(kids);
    return out;
  }

  // Build the cascade bottom-up: the last two children share the innermost node.
  const std::string synthetic = tree.label + "*";
  ParseTree tail;
  tail.label = synthetic;
  tail.children.push_back(std::move(kids[kids.size() - 2]));
  tail.children.push_back(std::move(kids[kids.size() - 1]));
  for (std::size_t i = kids.size() - 2; i-- > 1;) {
    ParseTree node;
    node.label = synthetic;
    node.children.push_back(std::move(kids[i]));
    node.children.push_back(std::move(tail));
    tail = std::move(node);
  }
  ParseTree out;
  out.label = tree.label;
  out.children.push_back(std::move(kids[0]));
  out.children.push_back(std::move(tail));
  return out;
}

std::uint32_t tree_height(const ParseTree& tree) {
  std::uint32_t child_max = 0;
  if (tree.is_leaf()) return 0;
  for (const auto& child : tree.children) child_max = std::max(child_max, tree_height(child));
  return child_max + 1;
}

DistanceVector distance_vector(const ParseTree& tree) {
  const ParseTree processed = binarize_right(collapse_unary(tree));
  std::vector<std::uint32_t> gaps(leaf_count(processed) - 1, 0);
  std::size_t cursor = 0;
  fill_gaps(processed, gaps, cursor);

  DistanceVector out;
  out.values.reserve(gaps.size() + 1);
  out.values.push_back(0);
  out.values.insert(out.values.end(), gaps.begin(), gaps.end());
  return out;
}

}  // namespace psel
