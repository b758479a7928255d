#include "psel/tree.hpp"

#include <cctype>
#include <utility>

#include "psel/error.hpp"

namespace psel {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_atom_char(char c) { return !is_space(c) && c != '(' && c != ')'; }

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  ParseTree parse() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty input", pos_);
    if (text_[pos_] != '(') throw ParseError("expected '('", pos_);

    // Explicit stack so pathological nesting cannot overflow the call stack.
    struct Frame {
      ParseTree node;
      std::size_t open_offset;
      bool has_token = false;
    };
    std::vector<Frame> stack;
    ParseTree root;
    bool done = false;

    while (!done) {
      skip_space();
      if (pos_ == text_.size()) throw ParseError("unbalanced brackets", pos_);
      const char c = text_[pos_];
      if (c == '(') {
        if (!stack.empty() && stack.back().has_token) {
          throw ParseError("constituent mixes a bare token with subtrees", pos_);
        }
        const std::size_t open = pos_++;
        skip_space();
        const std::size_t label_at = pos_;
        std::string label = read_atom();
        if (label.empty()) throw ParseError("empty label", label_at);
        Frame frame;
        frame.node.label = std::move(label);
        frame.open_offset = open;
        stack.push_back(std::move(frame));
      } else if (c == ')') {
        if (stack.empty()) throw ParseError("unbalanced brackets", pos_);
        Frame frame = std::move(stack.back());
        stack.pop_back();
        if (!frame.has_token && frame.node.children.empty()) {
          throw ParseError("constituent '" + frame.node.label + "' has no children",
                           frame.open_offset);
        }
        ++pos_;
        if (stack.empty()) {
          root = std::move(frame.node);
          done = true;
        } else {
          stack.back().node.children.push_back(std::move(frame.node));
        }
      } else {
        if (stack.empty()) throw ParseError("unbalanced brackets", pos_);
        Frame& top = stack.back();
        if (top.has_token || !top.node.children.empty()) {
          throw ParseError("constituent mixes a bare token with subtrees", pos_);
        }
        top.node.token = read_atom();
        top.has_token = true;
      }
    }

    skip_space();
    if (pos_ != text_.size()) throw ParseError("trailing characters", pos_);
    return root;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  std::string read_atom() {
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && is_atom_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(begin, pos_ - begin));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void collect_tokens(const ParseTree& node, std::vector<std::string>& out) {
  if (node.is_leaf()) {
    out.push_back(node.token);
    return;
  }
  for (const auto& child : node.children) collect_tokens(child, out);
}

void write_tree(const ParseTree& node, std::string& out) {
  out += '(';
  out += node.label;
  if (node.is_leaf()) {
    out += ' ';
    out += node.token;
  } else {
    for (const auto& child : node.children) {
      out += ' ';
      write_tree(child, out);
    }
  }
  out += ')';
}

}  // namespace

ParseTree parse_tree(std::string_view text) { return TreeParser(text).parse(); }

std::vector<std::string> tokens(const ParseTree& tree) {
  std::vector<std::string> out;
  collect_tokens(tree, out);
  return out;
}

std::string serialize_tree(const ParseTree& tree) {
  std::string out;
  write_tree(tree, out);
  return out;
}

std::size_t leaf_count(const ParseTree& tree) {
  if (tree.is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& child : tree.children) n += leaf_count(child);
  return n;
}

}  // namespace psel
