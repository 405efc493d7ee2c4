#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cbugscan/report.hpp"
#include "cbugscan/source.hpp"
#include "cbugscan/unit.hpp"

namespace cbugscan {

struct CheckerSpec {
  std::string name;
  std::optional<std::string> configPath;

  bool operator==(const CheckerSpec &) const = default;
};

/// A validated, fully expanded analysis request.
struct AnalysisJob {
  std::vector<SourceDescriptor> sources;
  std::vector<CheckerSpec> checkers;
  /// nullopt = unlimited.
  std::optional<std::size_t> memoryBudgetUnits;
  std::optional<std::string> outputPath;
  ReportFormat outputFormat = ReportFormat::Console;
  std::string preprocessCommand;
  Importance minImportance = Importance::Warning;

  bool operator==(const AnalysisJob &) const = default;
};

/// What a checker may use besides the unit it is handed.
class FrameworkServices {
public:
  explicit FrameworkServices(UnitManager &units) : units_(units) {}

  UnitManager &units() { return units_; }
  /// Records a non-fatal problem; shown to the user, not part of the report.
  void diagnostic(std::string message) { diagnostics_.push_back(std::move(message)); }
  const std::vector<std::string> &diagnostics() const { return diagnostics_; }

private:
  UnitManager &units_;
  std::vector<std::string> diagnostics_;
};

class Checker {
public:
  virtual ~Checker() = default;
  /// Returns findings for one unit. The framework fills in `checker` and `id`.
  virtual std::vector<ErrorTrace> check(const TranslationUnit &unit,
                                        FrameworkServices &services) = 0;
};

struct CheckerDescriptor {
  std::string name;
  std::string configSchema;
  std::function<std::unique_ptr<Checker>(const std::optional<std::string> &configPath)>
      instantiate;
};

class CheckerRegistry {
public:
  /// Throws RegistryError on a duplicate name.
  void registerChecker(CheckerDescriptor descriptor);
  bool contains(const std::string &name) const { return descriptors_.count(name) != 0; }
  const CheckerDescriptor &descriptor(const std::string &name) const;
  /// Throws RegistryError for unknown names; config errors propagate.
  std::unique_ptr<Checker> instantiate(const std::string &name,
                                       const std::optional<std::string> &configPath) const;
  std::vector<std::string> names() const;

private:
  std::map<std::string, CheckerDescriptor> descriptors_;
};

/// Registers "automaton", "lock", "thread" and "reach".
void registerBuiltinCheckers(CheckerRegistry &registry);

struct JobResult {
  std::vector<ErrorTrace> traces;
  std::vector<std::string> diagnostics;
};

/// Runs every job checker over every job source. Each checker gets its own
/// instance; units come from `units`. Parse failures and checker exceptions
/// become diagnostics. Traces are filtered by job.minImportance and sorted.
JobResult runJob(const AnalysisJob &job, const CheckerRegistry &registry, UnitManager &units);

} // namespace cbugscan
