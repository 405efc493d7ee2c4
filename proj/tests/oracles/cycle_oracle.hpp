#pragma once

// Elementary cycles by exhaustive search over ordered node sequences.
// Exponential; meant for graphs of at most six or seven nodes.

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

/// Each cycle rotated so that its smallest node comes first.
inline std::set<std::vector<std::string>>
simpleCycles(const std::set<std::pair<std::string, std::string>> &edges) {
  std::set<std::string> nodeSet;
  for (const auto &[a, b] : edges) {
    nodeSet.insert(a);
    nodeSet.insert(b);
  }
  std::vector<std::string> nodes(nodeSet.begin(), nodeSet.end());
  std::set<std::vector<std::string>> cycles;
  const std::size_t n = nodes.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::string> members;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i))
        members.push_back(nodes[i]);
    // members is sorted; fix the smallest first and permute the rest
    do {
      bool closed = true;
      for (std::size_t i = 0; i < members.size() && closed; ++i)
        closed = edges.count({members[i], members[(i + 1) % members.size()]}) != 0;
      if (closed && (members.size() > 1 || edges.count({members[0], members[0]})))
        cycles.insert(members);
    } while (std::next_permutation(members.begin() + 1, members.end()));
  }
  return cycles;
}

} // namespace oracle
