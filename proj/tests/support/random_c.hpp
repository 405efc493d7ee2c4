#pragma once

#include <random>
#include <string>
#include <vector>

namespace testing_support {

/// Random straight-line and branching C statements drawn from `atoms`;
/// no loops and no calls into the unit.
class RandomBody {
public:
  RandomBody(std::mt19937 &rng, std::vector<std::string> atoms) : rng_(rng), atoms_(std::move(atoms)) {}

  std::string statements(int count, int depth = 0) {
    std::string out;
    for (int i = 0; i < count; ++i)
      out += statement(depth) + "\n";
    return out;
  }

  std::string statement(int depth) {
    int pick = uniform(0, depth >= 2 ? 5 : 9);
    if (pick <= 5)
      return atoms_[static_cast<std::size_t>(uniform(0, static_cast<int>(atoms_.size()) - 1))];
    if (pick == 6)
      return "if (c" + std::to_string(depth) + ") { " + statements(uniform(1, 2), depth + 1) + "}";
    if (pick == 7)
      return "if (d" + std::to_string(depth) + ") { " + statements(1, depth + 1) + "} else { " +
             statements(1, depth + 1) + "}";
    if (pick == 8)
      return "if (e) return 0;";
    return "if (f) { " + statements(1, depth + 1) + "return 1; }";
  }

private:
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  std::mt19937 &rng_;
  std::vector<std::string> atoms_;
};

} // namespace testing_support
