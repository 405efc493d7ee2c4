#pragma once

#include <vector>

#include "cbugscan/checker.hpp"

namespace cbugscan {

/// Unreachable statements (errors, one per run of nodes that can only be
/// entered from the previous one) and empty statements serving as the
/// whole body of if/else/while/for (warnings).
std::vector<ErrorTrace> checkReachability(const TranslationUnit &unit);

class ReachChecker : public Checker {
public:
  std::vector<ErrorTrace> check(const TranslationUnit &unit, FrameworkServices &) override {
    return checkReachability(unit);
  }
};

} // namespace cbugscan
