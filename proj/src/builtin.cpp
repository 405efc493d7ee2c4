#include "cbugscan/checker.hpp"
#include "cbugscan/checkers/automaton.hpp"
#include "cbugscan/checkers/lockstat.hpp"
#include "cbugscan/checkers/reach.hpp"
#include "cbugscan/checkers/thread.hpp"
#include "cbugscan/error.hpp"

namespace cbugscan {

void registerBuiltinCheckers(CheckerRegistry &registry) {
  registry.registerChecker(
      {"automaton", "property automaton file (default: mutex_lock/mutex_unlock pairing)",
       [](const std::optional<std::string> &config) -> std::unique_ptr<Checker> {
         return std::make_unique<AutomatonChecker>(config ? loadAutomaton(*config)
                                                          : defaultLockAutomaton());
       }});
  registry.registerChecker(
      {"lock", "access/lock pattern file with optional threshold and min-samples",
       [](const std::optional<std::string> &config) -> std::unique_ptr<Checker> {
         return std::make_unique<LockStatChecker>(config ? loadLockStatConfig(*config)
                                                         : defaultLockStatConfig());
       }});
  registry.registerChecker(
      {"thread", "spawn/entry/lock/unlock file (default: pthread_create, mutex_lock)",
       [](const std::optional<std::string> &config) -> std::unique_ptr<Checker> {
         return std::make_unique<ThreadChecker>(config ? loadThreadConfig(*config)
                                                       : defaultThreadConfig());
       }});
  registry.registerChecker({"reach", "no configuration",
                            [](const std::optional<std::string> &config)
                                -> std::unique_ptr<Checker> {
                              if (config)
                                throw ConfigError("checker 'reach' takes no configuration");
                              return std::make_unique<ReachChecker>();
                            }});
}

} // namespace cbugscan
