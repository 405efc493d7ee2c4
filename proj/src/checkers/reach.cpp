#include "cbugscan/checkers/reach.hpp"

#include <algorithm>
#include <set>

namespace cbugscan {

namespace {

/// The unreachable predecessor `id` is folded into, or -1 if `id` starts
/// its own run.
int foldTarget(const Cfg &cfg, int id) {
  const auto &preds = cfg.predecessors(id);
  if (preds.size() != 1)
    return -1;
  int p = preds.front().target;
  if (p == cfg.entry() || cfg.reachable(p) || cfg.node(p).kind == CfgNodeKind::Condition)
    return -1;
  if (cfg.successors(p).size() != 1)
    return -1;
  return p;
}

int runHead(const Cfg &cfg, int id) {
  std::vector<int> chain{id};
  std::set<int> seen{id};
  int cur = id;
  while (true) {
    int p = foldTarget(cfg, cur);
    if (p < 0)
      return cur;
    if (!seen.insert(p).second) {
      // a closed loop of unreachable nodes: anchor at its smallest id
      int lowest = p;
      for (auto it = std::find(chain.begin(), chain.end(), p); it != chain.end(); ++it)
        lowest = std::min(lowest, *it);
      return lowest;
    }
    chain.push_back(p);
    cur = p;
  }
}

void emptyBodies(const AstNode &n, std::vector<ErrorTrace> &out) {
  auto flag = [&](const AstNode &body, const char *construct) {
    if (body.kind != AstKind::EmptyStatement)
      return;
    ErrorTrace t;
    t.importance = Importance::Warning;
    t.message = std::string("superfluous semicolon after ") + construct;
    t.steps.push_back({body.location, std::string("empty statement is the whole body of ") +
                                          construct});
    out.push_back(std::move(t));
  };
  switch (n.kind) {
  case AstKind::If:
    flag(n.child(1), "if");
    if (n.size() > 2)
      flag(n.child(2), "else");
    break;
  case AstKind::While:
    flag(n.child(1), "while");
    break;
  case AstKind::For:
    flag(n.child(3), "for");
    break;
  default:
    break;
  }
  for (const auto &c : n.children)
    emptyBodies(*c, out);
}

} // namespace

std::vector<ErrorTrace> checkReachability(const TranslationUnit &unit) {
  std::vector<ErrorTrace> out;
  for (const auto &cfg : unit.cfgs()) {
    std::set<int> heads;
    for (const auto &node : cfg.nodes()) {
      if (node.kind == CfgNodeKind::Entry || node.kind == CfgNodeKind::Exit ||
          cfg.reachable(node.id))
        continue;
      heads.insert(runHead(cfg, node.id));
    }
    for (int id : heads) {
      const CfgNode &node = cfg.node(id);
      std::string text = node.ast ? toSource(*node.ast) : std::string();
      ErrorTrace t;
      t.importance = Importance::Error;
      t.message = "unreachable code in " + cfg.functionName();
      t.steps.push_back({node.location, "never executed: " + text});
      out.push_back(std::move(t));
    }
  }
  emptyBodies(unit.ast(), out);
  return out;
}

} // namespace cbugscan
