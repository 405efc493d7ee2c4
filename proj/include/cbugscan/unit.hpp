#pragma once

#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cbugscan/ast.hpp"
#include "cbugscan/cfg.hpp"
#include "cbugscan/source.hpp"

namespace cbugscan {

struct CallEdge {
  std::string caller;
  int callSite = 0;
  std::string callee;
  /// Callee has no definition in the unit (always true for "<indirect>").
  bool external = false;

  bool operator==(const CallEdge &) const = default;
};

struct CallGraph {
  std::vector<std::string> functions;
  std::vector<CallEdge> edges;
};

/// A parsed source file with its CFGs and call graph. Immutable once built.
class TranslationUnit {
public:
  TranslationUnit(std::string path, AstPtr root);
  TranslationUnit(const TranslationUnit &) = delete;
  TranslationUnit &operator=(const TranslationUnit &) = delete;

  const std::string &path() const { return path_; }
  const AstNode &ast() const { return *root_; }
  const std::vector<Cfg> &cfgs() const { return cfgs_; }
  const CallGraph &callGraph() const { return callGraph_; }

  const Cfg *findCfg(const std::string &function) const;
  /// The CFG owning a unit-unique node id.
  const Cfg &cfgOfNode(int id) const;
  const CfgNode &node(int id) const { return cfgOfNode(id).node(id); }

private:
  std::string path_;
  AstPtr root_;
  std::vector<Cfg> cfgs_;
  std::map<std::string, std::size_t> byName_;
  CallGraph callGraph_;
};

/// One call graph edge per syntactic call expression.
CallGraph buildCallGraph(const std::vector<Cfg> &cfgs);

/// parse -> buildCfg per function -> buildCallGraph.
std::shared_ptr<const TranslationUnit> buildUnit(const std::string &text,
                                                 const std::string &path);

/// Lazily builds translation units and keeps at most `budget` of them
/// resident, evicting the least recently used unit. Evicted units are
/// dropped, never spilled; callers holding a unit keep it alive.
/// All operations are serialized by an internal mutex.
class UnitManager {
public:
  /// `budget` of nullopt means unlimited.
  UnitManager(std::vector<SourceDescriptor> sources, std::optional<std::size_t> budget,
              std::string preprocessCommand = {});

  std::shared_ptr<const TranslationUnit> getUnit(const std::string &path);

  /// Evicts LRU units until the budget holds; returns evicted paths.
  std::vector<std::string> evictIfNeeded();

  std::size_t pipelineRuns() const;
  std::size_t residentCount() const;
  /// Largest resident count observed at any return from getUnit.
  std::size_t maxResident() const;
  std::vector<std::string> residentPaths() const;

private:
  std::vector<std::string> evictLocked();

  std::map<std::string, SourceDescriptor> sources_;
  std::optional<std::size_t> budget_;
  std::string preprocessCommand_;

  mutable std::mutex mutex_;
  // front = most recently used
  std::list<std::pair<std::string, std::shared_ptr<const TranslationUnit>>> resident_;
  std::size_t pipelineRuns_ = 0;
  std::size_t maxResident_ = 0;
};

} // namespace cbugscan
