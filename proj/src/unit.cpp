#include "cbugscan/unit.hpp"

#include <algorithm>

#include "cbugscan/error.hpp"
#include "cbugscan/parser.hpp"

namespace cbugscan {

TranslationUnit::TranslationUnit(std::string path, AstPtr root)
    : path_(std::move(path)), root_(std::move(root)) {
  int nextId = 0;
  for (const auto &decl : root_->children) {
    if (decl->kind != AstKind::FunctionDef)
      continue;
    if (byName_.count(decl->text))
      throw CfgError(decl->location.str() + ": redefinition of '" + decl->text + "'");
    byName_[decl->text] = cfgs_.size();
    cfgs_.push_back(buildCfg(*decl, nextId));
    nextId = cfgs_.back().endId();
  }
  callGraph_ = buildCallGraph(cfgs_);
}

const Cfg *TranslationUnit::findCfg(const std::string &function) const {
  auto it = byName_.find(function);
  return it == byName_.end() ? nullptr : &cfgs_[it->second];
}

const Cfg &TranslationUnit::cfgOfNode(int id) const {
  auto it = std::upper_bound(cfgs_.begin(), cfgs_.end(), id,
                             [](int v, const Cfg &c) { return v < c.endId(); });
  if (it == cfgs_.end() || !it->contains(id))
    throw Error("node id " + std::to_string(id) + " is not part of " + path_);
  return *it;
}

CallGraph buildCallGraph(const std::vector<Cfg> &cfgs) {
  CallGraph graph;
  for (const auto &cfg : cfgs)
    graph.functions.push_back(cfg.functionName());
  auto defined = [&](const std::string &name) {
    return std::find(graph.functions.begin(), graph.functions.end(), name) !=
           graph.functions.end();
  };
  for (const auto &cfg : cfgs) {
    for (const auto &node : cfg.nodes()) {
      if (!node.ast)
        continue;
      std::vector<const AstNode *> calls;
      forEachSubexpression(*node.ast, [&](const AstNode &e) {
        if (e.kind == AstKind::Call)
          calls.push_back(&e);
      });
      // post-order lists nested calls first; keep source order of callees
      std::stable_sort(calls.begin(), calls.end(), [](const AstNode *a, const AstNode *b) {
        return a->location < b->location;
      });
      for (const AstNode *call : calls) {
        std::string callee = calleeName(*call);
        graph.edges.push_back(CallEdge{cfg.functionName(), node.id, callee,
                                       callee == "<indirect>" || !defined(callee)});
      }
    }
  }
  return graph;
}

std::shared_ptr<const TranslationUnit> buildUnit(const std::string &text,
                                                 const std::string &path) {
  return std::make_shared<const TranslationUnit>(path, parseTranslationUnit(text, path));
}

UnitManager::UnitManager(std::vector<SourceDescriptor> sources,
                         std::optional<std::size_t> budget, std::string preprocessCommand)
    : budget_(budget), preprocessCommand_(std::move(preprocessCommand)) {
  if (budget_ && *budget_ == 0)
    throw ConfigError("memory budget must be at least one unit");
  for (auto &s : sources)
    sources_[s.path] = std::move(s);
}

std::shared_ptr<const TranslationUnit> UnitManager::getUnit(const std::string &path) {
  std::lock_guard lock(mutex_);
  auto it = std::find_if(resident_.begin(), resident_.end(),
                         [&](const auto &entry) { return entry.first == path; });
  if (it != resident_.end()) {
    resident_.splice(resident_.begin(), resident_, it);
    return resident_.front().second;
  }
  auto src = sources_.find(path);
  if (src == sources_.end())
    throw Error("'" + path + "' is not a source of this job");
  ++pipelineRuns_;
  auto unit = buildUnit(preprocess(src->second, preprocessCommand_), path);
  resident_.emplace_front(path, unit);
  evictLocked();
  maxResident_ = std::max(maxResident_, resident_.size());
  return unit;
}

std::vector<std::string> UnitManager::evictIfNeeded() {
  std::lock_guard lock(mutex_);
  return evictLocked();
}

std::vector<std::string> UnitManager::evictLocked() {
  std::vector<std::string> evicted;
  if (!budget_)
    return evicted;
  while (resident_.size() > *budget_) {
    evicted.push_back(resident_.back().first);
    resident_.pop_back();
  }
  return evicted;
}

std::size_t UnitManager::pipelineRuns() const {
  std::lock_guard lock(mutex_);
  return pipelineRuns_;
}

std::size_t UnitManager::residentCount() const {
  std::lock_guard lock(mutex_);
  return resident_.size();
}

std::size_t UnitManager::maxResident() const {
  std::lock_guard lock(mutex_);
  return maxResident_;
}

std::vector<std::string> UnitManager::residentPaths() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto &entry : resident_)
    out.push_back(entry.first);
  return out;
}

} // namespace cbugscan
