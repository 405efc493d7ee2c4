#pragma once

#include <string>
#include <vector>

#include "cbugscan/ast.hpp"

namespace cbugscan {

enum class CfgNodeKind { Entry, Exit, Statement, Condition };

enum class EdgeLabel { None, True, False };

struct CfgNode {
  /// Unique within the translation unit.
  int id = 0;
  CfgNodeKind kind = CfgNodeKind::Statement;
  /// Statement or condition expression; null only for entry/exit.
  const AstNode *ast = nullptr;
  SourceLocation location;
};

struct CfgEdge {
  int target = 0;
  EdgeLabel label = EdgeLabel::None;

  bool operator==(const CfgEdge &) const = default;
};

/// Control flow graph of one function.
///
/// Statements map to one node each; blocks produce no node. If, While and
/// the For condition become condition nodes with a true and a false edge,
/// except literal constant conditions, which keep only the feasible edge.
/// Branches flow straight into whatever follows the statement, so no
/// synthetic join nodes exist.
class Cfg {
public:
  Cfg(std::string functionName, const AstNode *function, int firstId);

  const std::string &functionName() const { return name_; }
  const AstNode &function() const { return *function_; }

  int entry() const { return firstId_; }
  int exit() const { return firstId_ + 1; }
  int firstId() const { return firstId_; }
  int endId() const { return firstId_ + static_cast<int>(nodes_.size()); }
  bool contains(int id) const { return id >= firstId_ && id < endId(); }

  const std::vector<CfgNode> &nodes() const { return nodes_; }
  const CfgNode &node(int id) const { return nodes_.at(local(id)); }
  const std::vector<CfgEdge> &successors(int id) const { return succ_.at(local(id)); }
  const std::vector<CfgEdge> &predecessors(int id) const { return pred_.at(local(id)); }

  /// False for nodes no path from entry reaches.
  bool reachable(int id) const { return reachable_.at(local(id)); }

  // Construction interface, used by buildCfg.
  int addNode(CfgNodeKind kind, const AstNode *ast, SourceLocation loc);
  void addEdge(int from, int to, EdgeLabel label = EdgeLabel::None);
  void finalize();

private:
  std::size_t local(int id) const { return static_cast<std::size_t>(id - firstId_); }

  std::string name_;
  const AstNode *function_;
  int firstId_;
  std::vector<CfgNode> nodes_;
  std::vector<std::vector<CfgEdge>> succ_;
  std::vector<std::vector<CfgEdge>> pred_;
  std::vector<bool> reachable_;
};

/// Builds the CFG of a FunctionDef. Node ids start at `firstId`.
/// Throws CfgError on a goto to an undefined label.
Cfg buildCfg(const AstNode &functionAst, int firstId = 0);

/// The call a call-site node performs at its top level: `f(...);`,
/// `x = f(...);`, `T x = f(...);` or `return f(...);`. Null otherwise.
const AstNode *topLevelCall(const CfgNode &node);

/// Name of a directly called function, or "<indirect>".
std::string calleeName(const AstNode &call);

/// Nonzero integer literal -> 1, zero literal -> 0, anything else -> -1.
int constantTruth(const AstNode &cond);

/// DOT rendering: one digraph per function, `id: source-text` labels.
std::string cfgToDot(const Cfg &cfg);

} // namespace cbugscan
