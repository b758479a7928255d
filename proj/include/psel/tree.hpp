#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace psel {

// A labeled constituency tree. A leaf is a preterminal "(TAG word)": it has a
// token and no children. Internal nodes have at least one child and an empty
// token.
struct ParseTree {
  std::string label;
  std::vector<ParseTree> children;
  std::string token;

  bool is_leaf() const noexcept { return children.empty(); }

  friend bool operator==(const ParseTree&, const ParseTree&) = default;
};

// Parses one bracketed tree, e.g. "(NP (DT the) (NN dog))". Throws ParseError
// carrying the character offset of the problem.
ParseTree parse_tree(std::string_view text);

// In-order leaf tokens.
std::vector<std::string> tokens(const ParseTree& tree);

// Single-space bracketed form; parse_tree(serialize_tree(t)) == t.
std::string serialize_tree(const ParseTree& tree);

std::size_t leaf_count(const ParseTree& tree);

}  // namespace psel
