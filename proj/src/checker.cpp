#include "cbugscan/checker.hpp"

#include "cbugscan/error.hpp"

namespace cbugscan {

void CheckerRegistry::registerChecker(CheckerDescriptor descriptor) {
  if (descriptor.name.empty())
    throw RegistryError("checker name must not be empty");
  if (!descriptor.instantiate)
    throw RegistryError("checker '" + descriptor.name + "' has no constructor");
  std::string name = descriptor.name;
  if (!descriptors_.emplace(name, std::move(descriptor)).second)
    throw RegistryError("checker '" + name + "' is already registered");
}

const CheckerDescriptor &CheckerRegistry::descriptor(const std::string &name) const {
  auto it = descriptors_.find(name);
  if (it == descriptors_.end())
    throw RegistryError("unknown checker '" + name + "'");
  return it->second;
}

std::unique_ptr<Checker>
CheckerRegistry::instantiate(const std::string &name,
                             const std::optional<std::string> &configPath) const {
  return descriptor(name).instantiate(configPath);
}

std::vector<std::string> CheckerRegistry::names() const {
  std::vector<std::string> out;
  for (const auto &[name, d] : descriptors_)
    out.push_back(name);
  return out;
}

JobResult runJob(const AnalysisJob &job, const CheckerRegistry &registry, UnitManager &units) {
  JobResult result;
  std::vector<std::pair<std::string, std::unique_ptr<Checker>>> checkers;
  for (const auto &spec : job.checkers)
    checkers.emplace_back(spec.name, registry.instantiate(spec.name, spec.configPath));

  for (const auto &source : job.sources) {
    std::shared_ptr<const TranslationUnit> unit;
    try {
      unit = units.getUnit(source.path);
    } catch (const Error &e) {
      result.diagnostics.push_back(source.path + ": " + e.what());
      continue;
    }
    for (auto &[name, checker] : checkers) {
      FrameworkServices services(units);
      try {
        for (auto &t : checker->check(*unit, services)) {
          if (t.steps.empty())
            continue;
          t.checker = name;
          t.id = traceId(t);
          if (t.importance >= job.minImportance)
            result.traces.push_back(std::move(t));
        }
      } catch (const std::exception &e) {
        result.diagnostics.push_back(source.path + ": checker " + name + ": " + e.what());
      }
      for (const auto &d : services.diagnostics())
        result.diagnostics.push_back(source.path + ": " + name + ": " + d);
    }
  }
  sortTraces(result.traces);
  return result;
}

} // namespace cbugscan
