#pragma once

// Unreachable statements by breadth-first search, grouped into runs:
// an unreachable node belongs to the run of its sole predecessor when
// that predecessor is itself an unreachable, non-branching statement.

#include <deque>
#include <functional>
#include <map>
#include <set>

#include "cbugscan/cfg.hpp"

namespace oracle {

struct ReachAnswer {
  std::set<int> unreachable;
  /// Node -> representative of its run.
  std::map<int, int> runOf;
  std::size_t runCount() const {
    std::set<int> reps;
    for (const auto &[n, r] : runOf)
      reps.insert(r);
    return reps.size();
  }
};

inline ReachAnswer unreachableRuns(const cbugscan::Cfg &cfg) {
  using namespace cbugscan;
  std::set<int> seen{cfg.entry()};
  std::deque<int> q{cfg.entry()};
  while (!q.empty()) {
    int n = q.front();
    q.pop_front();
    for (const auto &e : cfg.successors(n))
      if (seen.insert(e.target).second)
        q.push_back(e.target);
  }
  ReachAnswer ans;
  for (const auto &n : cfg.nodes())
    if (n.kind != CfgNodeKind::Exit && !seen.count(n.id))
      ans.unreachable.insert(n.id);

  std::map<int, int> parent;
  for (int n : ans.unreachable)
    parent[n] = n;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int n : ans.unreachable) {
    const auto &preds = cfg.predecessors(n);
    if (preds.size() != 1)
      continue;
    int p = preds[0].target;
    if (!ans.unreachable.count(p) || cfg.node(p).kind == CfgNodeKind::Condition ||
        cfg.successors(p).size() != 1)
      continue;
    parent[find(n)] = find(p);
  }
  for (int n : ans.unreachable)
    ans.runOf[n] = find(n);
  return ans;
}

} // namespace oracle
