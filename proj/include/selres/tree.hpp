#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace selres {

// A constituent of a skeletal parse. Preterminals `(TAG token)` are leaves
// that carry a token; every other node carries children.
struct ParseTree {
  std::string label;
  std::string token;
  std::vector<ParseTree> children;

  bool is_leaf() const { return children.empty(); }
};

// Reads every top-level bracket in `text`, in order. A label-less wrapper
// around a single tree, as in `( (S ...) )`, is unwrapped. Throws
// BracketError carrying the byte offset of the problem.
std::vector<ParseTree> parse_bracketed(std::string_view text);

std::string to_bracketed(const ParseTree& tree);

}  // namespace selres
