#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cbugscan/ast.hpp"

namespace cbugscan {

/// AST template whose MetaVar leaves match arbitrary subtrees.
class Pattern {
public:
  Pattern(std::string name, AstPtr templ);
  Pattern(const Pattern &other);
  Pattern &operator=(const Pattern &other);
  Pattern(Pattern &&) = default;
  Pattern &operator=(Pattern &&) = default;

  const std::string &name() const { return name_; }
  const AstNode &templ() const { return *template_; }
  /// Distinct metavariable names, sorted.
  const std::vector<std::string> &metavariables() const { return metavars_; }

private:
  std::string name_;
  AstPtr template_;
  std::vector<std::string> metavars_;
};

/// Metavariable name -> bound subtree of the subject AST.
using Binding = std::map<std::string, const AstNode *>;

/// Parses C expression/statement text with `%NAME` metavariables.
Pattern parsePattern(std::string name, std::string_view source);

/// Structural match at `node` only; callers walk the tree. A metavariable
/// used twice must bind structurally equal subtrees.
std::optional<Binding> matchNode(const Pattern &pattern, const AstNode &node);

/// Replaces MetaVar leaves of `templ` by copies of their bound subtrees.
AstPtr substitute(const AstNode &templ, const Binding &binding);

/// Canonical text of a binding, e.g. "X=&a" or "A=x;B=y".
std::string bindingKey(const Binding &binding);

/// Replaces every `%NAME` in `text` with the given rendering.
std::string expandTemplate(std::string_view text,
                           const std::map<std::string, std::string> &values);

/// Every match of any pattern inside one CFG node's AST, in post-order
/// (evaluation order) of the subject subtrees.
struct PatternMatch {
  const Pattern *pattern;
  const AstNode *node;
  Binding binding;
};
std::vector<PatternMatch> findMatches(const std::vector<Pattern> &patterns,
                                      const AstNode &root);

/// Pattern file syntax: `pattern NAME "TEMPLATE"` per line, `#` comments.
std::vector<Pattern> parsePatternFile(std::string_view text);

} // namespace cbugscan
