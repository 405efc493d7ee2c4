#pragma once

#include <map>
#include <string>
#include <vector>

#include "cbugscan/pattern.hpp"
#include "cbugscan/traverse.hpp"

namespace cbugscan {

/// A pattern match at a supergraph point, with every bound expression
/// rewritten into the root function's terms.
struct InstanceMatch {
  const Pattern *pattern = nullptr;
  const AstNode *node = nullptr;
  /// Metavariable name -> canonical source text.
  std::map<std::string, std::string> values;
  /// `X=...;Y=...` over `values`; identifies the instance.
  std::string key;
};

/// Maps `expr` outward through `frames` (innermost last) with
/// calleeToCaller; if any step fails the unmapped text is used.
std::string canonicalText(const AstNode &expr, const std::vector<CallFrame> &frames);

/// Matches of `patterns` against the AST of the node at `p`, in post-order.
std::vector<InstanceMatch> instanceMatches(const std::vector<Pattern> &patterns,
                                           const Supergraph &graph, const ProgramPoint &p);

} // namespace cbugscan
