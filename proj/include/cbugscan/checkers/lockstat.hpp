#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cbugscan/checker.hpp"
#include "cbugscan/pattern.hpp"

namespace cbugscan {

/// A fraction `numerator / denominator` kept exact so that the 70%
/// boundary is decided in integer arithmetic.
struct Ratio {
  long numerator = 7;
  long denominator = 10;
};

/// Parses "0.7", "0.75" or "1"; the value must lie in (0, 1].
Ratio parseRatio(std::string_view text);

struct LockPatternPair {
  Pattern lock;
  Pattern unlock;
};

struct LockStatConfig {
  std::vector<Pattern> accesses;
  std::vector<LockPatternPair> locks;
  Ratio threshold;
  long minSamples = 5;
};

/// Config lines: `access "T"`, `lock "T" unlock "T"`, `threshold 0.7`,
/// `min-samples 5`, `#` comments.
LockStatConfig parseLockStatConfig(std::string_view text, std::string_view origin = "<lock>");
LockStatConfig loadLockStatConfig(const std::string &path);
LockStatConfig defaultLockStatConfig();
extern const char *const kDefaultLockStatConfigText;

struct PairStats {
  long locked = 0;
  long total = 0;
  std::vector<SourceLocation> lockedSites;
  std::vector<SourceLocation> unlockedSites;
};

struct AccessStats {
  /// (variable, lock) -> counts.
  std::map<std::pair<std::string, std::string>, PairStats> pairs;
  Ratio threshold;
  long minSamples = 5;
};

struct AccessEvent {
  std::string variable;
  SourceLocation location;
  std::set<std::string> held;
};

/// Access events of every function, each with its must-hold lock set.
std::vector<AccessEvent> collectAccesses(const TranslationUnit &unit,
                                         const LockStatConfig &config);

/// Groups events into per-(variable, lock) counts over the locks ever held
/// at some access of the variable.
AccessStats accumulate(const std::vector<AccessEvent> &events, const LockStatConfig &config);
AccessStats accumulate(const TranslationUnit &unit, const LockStatConfig &config);

/// total >= minSamples, locked/total >= threshold and locked < total.
bool imbalanced(long locked, long total, const Ratio &threshold, long minSamples);

/// One trace per unlocked access of each imbalanced pair.
std::vector<ErrorTrace> reportImbalance(const AccessStats &stats);

class LockStatChecker : public Checker {
public:
  explicit LockStatChecker(LockStatConfig config) : config_(std::move(config)) {}
  std::vector<ErrorTrace> check(const TranslationUnit &unit, FrameworkServices &) override {
    return reportImbalance(accumulate(unit, config_));
  }

private:
  LockStatConfig config_;
};

} // namespace cbugscan
