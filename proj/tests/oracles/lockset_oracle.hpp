#pragma once

// Must-hold locksets by path enumeration: for every access in a loop-free
// function, intersect the held sets over all entry paths reaching it.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cbugscan/cfg.hpp"
#include "cbugscan/checkers/lockstat.hpp"
#include "cbugscan/pattern.hpp"

namespace oracle {

/// (variable, location, occurrence within node) -> must-hold set.
using AccessKey = std::tuple<std::string, cbugscan::SourceLocation, int>;

inline std::map<AccessKey, std::set<std::string>>
mustHold(const cbugscan::Cfg &cfg, const cbugscan::LockStatConfig &config) {
  using namespace cbugscan;
  enum Kind { Access, Lock, Unlock };
  std::vector<Pattern> patterns;
  std::vector<Kind> kinds;
  for (const auto &p : config.accesses) {
    patterns.push_back(p);
    kinds.push_back(Access);
  }
  for (const auto &pair : config.locks) {
    patterns.push_back(pair.lock);
    kinds.push_back(Lock);
    patterns.push_back(pair.unlock);
    kinds.push_back(Unlock);
  }
  auto joined = [](const Binding &b) {
    std::string s;
    for (const auto &[name, node] : b)
      s += (s.empty() ? "" : ", ") + toSource(*node);
    return s;
  };

  std::map<AccessKey, std::set<std::string>> result;
  std::vector<int> path{cfg.entry()};
  std::function<void(std::set<std::string>)> walk = [&](std::set<std::string> held) {
    int id = path.back();
    const CfgNode &n = cfg.node(id);
    if (n.ast) {
      std::map<std::string, int> occurrence;
      for (const auto &m : findMatches(patterns, *n.ast)) {
        Kind k = kinds[static_cast<std::size_t>(m.pattern - patterns.data())];
        if (k == Lock) {
          held.insert(joined(m.binding));
        } else if (k == Unlock) {
          held.erase(joined(m.binding));
        } else {
          auto v = m.binding.count("V") ? m.binding.at("V") : m.binding.begin()->second;
          std::string var = toSource(*v);
          AccessKey key{var, n.location, occurrence[var]++};
          auto it = result.find(key);
          if (it == result.end()) {
            result.emplace(key, held);
          } else {
            std::set<std::string> meet;
            for (const auto &l : it->second)
              if (held.count(l))
                meet.insert(l);
            it->second = meet;
          }
        }
      }
    }
    for (const auto &e : cfg.successors(id)) {
      path.push_back(e.target);
      walk(held);
      path.pop_back();
    }
  };
  walk({});
  return result;
}

} // namespace oracle
