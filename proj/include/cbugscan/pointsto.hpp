#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cbugscan/unit.hpp"

namespace cbugscan {

enum class ConstraintKind {
  AddressOf, // x = &y
  Copy,      // x = y
  Load,      // x = *y
  Store,     // *x = y
};

struct PointerConstraint {
  ConstraintKind kind;
  int lhs = 0;
  int rhs = 0;

  bool operator==(const PointerConstraint &) const = default;
};

/// Abstract variables of one unit, indexed in order of first declaration
/// (then first mention). Locals are qualified as `function::name`;
/// allocation sites are named `<alloc:LINE:COL>`.
class VariableTable {
public:
  int intern(const std::string &name);
  std::optional<int> find(const std::string &name) const;
  const std::string &name(int id) const { return names_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return names_.size(); }

private:
  std::vector<std::string> names_;
  std::map<std::string, int> ids_;
};

struct ConstraintSet {
  VariableTable variables;
  std::vector<PointerConstraint> constraints;
};

/// Field- and array-insensitive constraint extraction from `=` assignments
/// and initialized declarations. Shapes other than the four constraint
/// kinds (and allocator calls, which act as `x = &<alloc>`) are ignored.
ConstraintSet collectConstraints(const TranslationUnit &unit);

enum class PointsToAnalysis { Steensgaard, ShapiroHorowitz };

struct PointsToResult {
  PointsToAnalysis analysis = PointsToAnalysis::Steensgaard;
  int k = 1;
  /// Defined for every variable mentioned by a constraint.
  std::map<int, std::set<int>> pointsTo;

  const std::set<int> &of(int variable) const;
};

/// Unification-based analysis: every variable class has one pointee class.
PointsToResult steensgaard(const std::vector<PointerConstraint> &constraints);

/// k-category refinement over `variableCount` variables. With k = 1 the
/// result equals steensgaard(); with k >= variableCount no two variables
/// are ever unified. Throws Error for k < 1.
PointsToResult shapiroHorowitz(const std::vector<PointerConstraint> &constraints,
                               std::size_t variableCount, int k);

/// True when every set in `a` is contained in the same variable's set in `b`.
bool pointwiseSubset(const PointsToResult &a, const PointsToResult &b);

/// `name -> {a, b}` per variable, sorted by name.
std::string dumpPointsTo(const PointsToResult &result, const VariableTable &variables);

} // namespace cbugscan
