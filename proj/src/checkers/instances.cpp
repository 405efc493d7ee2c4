#include "cbugscan/checkers/instances.hpp"

namespace cbugscan {

std::string canonicalText(const AstNode &expr, const std::vector<CallFrame> &frames) {
  AstPtr current = cloneTree(expr);
  for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
    auto mapped = mapExpression(*current, *it, MapDirection::CalleeToCaller);
    if (!mapped)
      return toSource(expr);
    current = std::move(*mapped);
  }
  return toSource(*current);
}

std::vector<InstanceMatch> instanceMatches(const std::vector<Pattern> &patterns,
                                           const Supergraph &graph, const ProgramPoint &p) {
  std::vector<InstanceMatch> out;
  const CfgNode &node = graph.node(p);
  if (!node.ast)
    return out;
  auto matches = findMatches(patterns, *node.ast);
  if (matches.empty())
    return out;
  auto frames = graph.callStack(p.context);
  for (auto &m : matches) {
    InstanceMatch im{m.pattern, m.node, {}, {}};
    for (const auto &[name, bound] : m.binding) {
      im.values[name] = canonicalText(*bound, frames);
      if (!im.key.empty())
        im.key += ";";
      im.key += name + "=" + im.values[name];
    }
    out.push_back(std::move(im));
  }
  return out;
}

} // namespace cbugscan
