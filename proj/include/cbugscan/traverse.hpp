#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cbugscan/unit.hpp"

namespace cbugscan {

enum class Direction { Forward, Backward };
enum class Order { BreadthFirst, DepthFirst };
enum class VisitAction { Continue, PruneBranch, StopAll };
enum class MapDirection { CallerToCallee, CalleeToCaller };

/// One active call: `caller` reached `callSite` and descended into `callee`.
struct CallFrame {
  const Cfg *caller = nullptr;
  int callSite = 0;
  const AstNode *call = nullptr;
  const Cfg *callee = nullptr;
};

/// A CFG node under a call context. Context 0 is the traversal root.
struct ProgramPoint {
  int context = 0;
  int node = 0;

  auto operator<=>(const ProgramPoint &) const = default;
};

struct SupergraphStep {
  ProgramPoint point;
  EdgeLabel label = EdgeLabel::None;
};

/// The CFGs of one unit glued at call sites, as seen from one root
/// function. A call whose callee is defined in the unit is entered with a
/// new context (call-string) and left back to the call site's successors.
/// A callee already on the call string, or a call beyond `maxCallDepth`,
/// is treated as an ordinary statement. Indirect and external calls are
/// never entered.
class Supergraph {
public:
  Supergraph(const TranslationUnit &unit, const Cfg &root, Direction direction,
             bool interprocedural, int maxCallDepth = 16);

  const TranslationUnit &unit() const { return unit_; }
  const Cfg &root() const { return root_; }
  Direction direction() const { return direction_; }

  ProgramPoint start() const;
  /// Successors in the traversal direction; contexts are created on demand.
  std::vector<SupergraphStep> next(const ProgramPoint &p);

  const CfgNode &node(const ProgramPoint &p) const { return unit_.node(p.node); }
  const Cfg &cfg(const ProgramPoint &p) const { return unit_.cfgOfNode(p.node); }

  /// Frames from outermost to innermost.
  std::vector<CallFrame> callStack(int context) const;
  int depth(int context) const { return contexts_.at(static_cast<std::size_t>(context)).depth; }
  /// The root-function node through which `p` is reached (the outermost
  /// call site for points inside callees).
  int rootNode(const ProgramPoint &p) const;
  /// Callee that `p` would enter, if it is an enterable call site.
  const Cfg *enteredCallee(const ProgramPoint &p) const;

private:
  struct Context {
    int parent = -1;
    CallFrame frame;
    int depth = 0;
  };

  int childContext(int parent, const CallFrame &frame);

  const TranslationUnit &unit_;
  const Cfg &root_;
  Direction direction_;
  bool interprocedural_;
  int maxCallDepth_;
  std::vector<Context> contexts_;
  std::map<std::pair<int, int>, int> childIndex_;
};

struct PathContext {
  /// Points from the start to the visited point (inclusive). For
  /// depth-first order this is the current DFS path; for breadth-first
  /// order it is the chain of BFS-tree parents.
  std::vector<ProgramPoint> path;
  const Supergraph *graph = nullptr;

  std::vector<CallFrame> callStack() const { return graph->callStack(path.back().context); }
};

using Visitor = std::function<VisitAction(const CfgNode &, const PathContext &)>;

struct TraversalSpec {
  Direction direction = Direction::Forward;
  Order order = Order::DepthFirst;
  bool interprocedural = false;
  int maxCallDepth = 16;
  Visitor visitor;
};

struct TraversalOutcome {
  bool stopped = false;
  std::size_t visited = 0;
};

/// Visits each reachable (context, node) pair at most once, starting at
/// entry (forward) or exit (backward).
TraversalOutcome traverseCfg(const Cfg &cfg, const TraversalSpec &spec,
                             const TranslationUnit &unit);

/// As traverseCfg, descending into callees defined in the same unit.
TraversalOutcome traverseInterprocedural(const Cfg &cfg, const TraversalSpec &spec,
                                         const TranslationUnit &unit);

/// Names of parameters and local variables of a function definition.
std::set<std::string> functionLocals(const AstNode &function);

/// Rewrites an expression across a call boundary by positional
/// actual/formal substitution. Fails (nullopt) on arity mismatch or when
/// the result would still mention a local of the side being left.
std::optional<AstPtr> mapExpression(const AstNode &expr, const CallFrame &frame,
                                    MapDirection direction);

/// For a call site `x = g(...)` (or `T x = g(...)`) and a callee statement
/// `return E;`, builds the caller-side assignment `x = E'`.
std::optional<AstPtr> mapReturnValue(const CallFrame &frame, const AstNode &returnStmt);

} // namespace cbugscan
