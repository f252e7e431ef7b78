#include "selres/tree.hpp"

#include <cctype>

#include "selres/error.hpp"

namespace selres {

namespace {

struct Frame {
  std::size_t open = 0;
  ParseTree node;
  bool has_label = false;
  bool has_token = false;
};

bool is_delim(char ch) {
  return ch == '(' || ch == ')' || std::isspace(static_cast<unsigned char>(ch));
}

}  // namespace

std::vector<ParseTree> parse_bracketed(std::string_view text) {
  std::vector<ParseTree> out;
  std::vector<Frame> stack;
  std::size_t i = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (ch == '(') {
      stack.push_back(Frame{i, {}, false, false});
      ++i;
    } else if (ch == ')') {
      if (stack.empty()) throw BracketError(i, "unbalanced ')'");
      Frame f = std::move(stack.back());
      stack.pop_back();
      ParseTree done;
      if (!f.has_label) {
        if (f.node.children.size() != 1)
          throw BracketError(f.open, f.node.children.empty() ? "empty constituent"
                                                             : "constituent without label");
        done = std::move(f.node.children.front());
      } else {
        if (!f.has_token && f.node.children.empty())
          throw BracketError(f.open, "empty constituent '" + f.node.label + "'");
        done = std::move(f.node);
      }
      ++i;
      if (stack.empty()) {
        out.push_back(std::move(done));
      } else {
        Frame& parent = stack.back();
        if (parent.has_token)
          throw BracketError(f.open, "constituent inside leaf '" + parent.node.label + "'");
        parent.node.children.push_back(std::move(done));
      }
    } else {
      std::size_t start = i;
      while (i < text.size() && !is_delim(text[i])) ++i;
      std::string_view atom = text.substr(start, i - start);
      if (stack.empty()) throw BracketError(start, "token outside brackets");
      Frame& f = stack.back();
      if (!f.has_label) {
        if (!f.node.children.empty())
          throw BracketError(start, "label after constituent");
        f.node.label = std::string(atom);
        f.has_label = true;
      } else if (f.has_token) {
        throw BracketError(start, "second token in leaf '" + f.node.label + "'");
      } else if (!f.node.children.empty()) {
        throw BracketError(start, "token after constituent in '" + f.node.label + "'");
      } else {
        f.node.token = std::string(atom);
        f.has_token = true;
      }
    }
  }
  if (!stack.empty()) throw BracketError(text.size(), "unbalanced '(' at end of input");
  return out;
}

std::string to_bracketed(const ParseTree& tree) {
  if (tree.is_leaf()) return "(" + tree.label + " " + tree.token + ")";
  std::string out = "(" + tree.label;
  for (const auto& c : tree.children) out += " " + to_bracketed(c);
  return out + ")";
}

}  // namespace selres
