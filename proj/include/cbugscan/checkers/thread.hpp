#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cbugscan/checker.hpp"
#include "cbugscan/pattern.hpp"

namespace cbugscan {

struct ThreadConfig {
  /// Must bind %F to the thread function.
  Pattern spawn;
  std::vector<std::string> entries;
  std::vector<Pattern> locks;
  std::vector<Pattern> unlocks;
};

/// Config lines: `spawn "T"`, `entry NAME`, `lock "T"`, `unlock "T"`.
/// Omitted spawn/lock/unlock fall back to pthread_create(%A, %B, %F, %D),
/// mutex_lock(%L) and mutex_unlock(%L).
ThreadConfig parseThreadConfig(std::string_view text, std::string_view origin = "<thread>");
ThreadConfig loadThreadConfig(const std::string &path);
ThreadConfig defaultThreadConfig();

struct ThreadEntry {
  enum class Origin { SpawnMatch, ConfigListed, AllFunctions };

  std::string function;
  Origin origin = Origin::SpawnMatch;

  bool operator==(const ThreadEntry &) const = default;
};

/// Spawn-pattern targets plus configured names, sorted and deduplicated;
/// every defined function when both are empty. Names not defined in the
/// unit are skipped and reported through `diagnostics`.
std::vector<ThreadEntry> findThreadEntries(const TranslationUnit &unit, const ThreadConfig &config,
                                           std::vector<std::string> *diagnostics = nullptr);

struct LockWitness {
  std::string entry;
  /// Acquisition of the held lock, then of the lock taken under it.
  SourceLocation held;
  SourceLocation acquired;

  auto operator<=>(const LockWitness &) const = default;
};

/// Edge (A, B): B acquired while A held, written A <- B.
struct LockOrderGraph {
  std::map<std::pair<std::string, std::string>, std::set<LockWitness>> edges;

  void merge(const LockOrderGraph &other);
};

/// Lock identity: canonical expression text with a leading `&` removed.
std::string lockIdentity(const std::string &expression);

/// Interprocedural may-lockset walk from the entry function.
LockOrderGraph buildDependencyGraph(const ThreadEntry &entry, const TranslationUnit &unit,
                                    const ThreadConfig &config);

/// Elementary cycles, each rotated to start at its smallest lock and
/// listed in edge order; at most `cap` cycles.
std::vector<std::vector<std::string>>
elementaryCycles(const std::set<std::pair<std::string, std::string>> &edges, std::size_t cap = 1000);

std::vector<ErrorTrace> detectCycles(const std::vector<LockOrderGraph> &graphs,
                                     std::size_t cap = 1000);

class ThreadChecker : public Checker {
public:
  explicit ThreadChecker(ThreadConfig config) : config_(std::move(config)) {}
  std::vector<ErrorTrace> check(const TranslationUnit &unit, FrameworkServices &services) override;

private:
  ThreadConfig config_;
};

} // namespace cbugscan
