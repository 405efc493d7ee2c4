#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cbugscan/checker.hpp"
#include "cbugscan/pattern.hpp"

namespace cbugscan {

/// Finite-state property over pattern matches. States are indices into
/// `states` (at most 64).
struct PropertyAutomaton {
  std::string name;
  std::vector<std::string> states;
  int start = 0;
  std::vector<Pattern> patterns;
  std::map<std::pair<int, std::string>, int> transitions;
  std::map<std::pair<int, std::string>, std::string> errorTransitions;
  std::map<int, std::string> exitErrors;

  std::optional<int> stateIndex(std::string_view state) const;
};

/// Grammar, one directive per line, `#` comments:
///   automaton NAME
///   states S1 S2 ...
///   start S
///   pattern NAME "TEMPLATE"
///   transition S PATTERN -> S'
///   error S PATTERN "MESSAGE with %X"
///   error-at-exit S "MESSAGE"
/// Throws ConfigError with the offending line.
PropertyAutomaton parseAutomaton(std::string_view text, std::string_view origin = "<automaton>");
PropertyAutomaton loadAutomaton(const std::string &path);

/// The two-state mutex_lock/mutex_unlock automaton.
PropertyAutomaton defaultLockAutomaton();
extern const char *const kDefaultLockAutomatonText;

/// Functions analysed as roots: those no other function in the unit calls,
/// plus any function not reachable from such a root.
std::vector<std::string> automatonEntryFunctions(const TranslationUnit &unit);

/// Forward may-analysis over state sets per instance, interprocedural
/// within the unit. One trace per (instance, message, location).
std::vector<ErrorTrace> checkAutomaton(const PropertyAutomaton &automaton,
                                       const TranslationUnit &unit);

class AutomatonChecker : public Checker {
public:
  explicit AutomatonChecker(PropertyAutomaton automaton) : automaton_(std::move(automaton)) {}
  std::vector<ErrorTrace> check(const TranslationUnit &unit, FrameworkServices &) override {
    return checkAutomaton(automaton_, unit);
  }

private:
  PropertyAutomaton automaton_;
};

} // namespace cbugscan
