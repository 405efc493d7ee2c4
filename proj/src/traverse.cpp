#include "cbugscan/traverse.hpp"

#include <algorithm>
#include <deque>

#include "cbugscan/error.hpp"

namespace cbugscan {

Supergraph::Supergraph(const TranslationUnit &unit, const Cfg &root, Direction direction,
                       bool interprocedural, int maxCallDepth)
    : unit_(unit), root_(root), direction_(direction), interprocedural_(interprocedural),
      maxCallDepth_(maxCallDepth) {
  if (maxCallDepth < 1)
    throw Error("maxCallDepth must be at least 1");
  contexts_.push_back(Context{});
}

ProgramPoint Supergraph::start() const {
  return ProgramPoint{0, direction_ == Direction::Forward ? root_.entry() : root_.exit()};
}

int Supergraph::childContext(int parent, const CallFrame &frame) {
  auto key = std::make_pair(parent, frame.callSite);
  auto it = childIndex_.find(key);
  if (it != childIndex_.end())
    return it->second;
  int id = static_cast<int>(contexts_.size());
  contexts_.push_back(Context{parent, frame, contexts_[static_cast<std::size_t>(parent)].depth + 1});
  childIndex_.emplace(key, id);
  return id;
}

std::vector<CallFrame> Supergraph::callStack(int context) const {
  std::vector<CallFrame> frames;
  for (int c = context; c > 0; c = contexts_.at(static_cast<std::size_t>(c)).parent)
    frames.push_back(contexts_[static_cast<std::size_t>(c)].frame);
  return {frames.rbegin(), frames.rend()};
}

int Supergraph::rootNode(const ProgramPoint &p) const {
  int node = p.node;
  int c = p.context;
  while (c > 0) {
    const auto &ctx = contexts_.at(static_cast<std::size_t>(c));
    node = ctx.frame.callSite;
    c = ctx.parent;
  }
  return node;
}

const Cfg *Supergraph::enteredCallee(const ProgramPoint &p) const {
  if (!interprocedural_)
    return nullptr;
  const AstNode *call = topLevelCall(node(p));
  if (!call)
    return nullptr;
  const Cfg *callee = unit_.findCfg(calleeName(*call));
  if (!callee)
    return nullptr;
  const Context *ctx = &contexts_.at(static_cast<std::size_t>(p.context));
  if (ctx->depth >= maxCallDepth_)
    return nullptr;
  for (int c = p.context; c > 0; c = contexts_[static_cast<std::size_t>(c)].parent)
    if (contexts_[static_cast<std::size_t>(c)].frame.callee == callee)
      return nullptr;
  return callee;
}

std::vector<SupergraphStep> Supergraph::next(const ProgramPoint &p) {
  const bool forward = direction_ == Direction::Forward;
  const Cfg &cfg = unit_.cfgOfNode(p.node);
  std::vector<SupergraphStep> out;

  auto along = [&](int context, int node) {
    const auto &edges = forward ? cfg.successors(node) : cfg.predecessors(node);
    for (const auto &e : edges)
      out.push_back({ProgramPoint{context, e.target}, e.label});
  };

  const int boundary = forward ? cfg.exit() : cfg.entry();
  if (p.node == boundary) {
    if (p.context == 0)
      return out;
    const Context ctx = contexts_.at(static_cast<std::size_t>(p.context));
    const Cfg &caller = *ctx.frame.caller;
    const auto &edges =
        forward ? caller.successors(ctx.frame.callSite) : caller.predecessors(ctx.frame.callSite);
    for (const auto &e : edges)
      out.push_back({ProgramPoint{ctx.parent, e.target}, e.label});
    return out;
  }

  if (const Cfg *callee = enteredCallee(p)) {
    CallFrame frame{&cfg, p.node, topLevelCall(node(p)), callee};
    int child = childContext(p.context, frame);
    out.push_back({ProgramPoint{child, forward ? callee->entry() : callee->exit()},
                   EdgeLabel::None});
    return out;
  }

  along(p.context, p.node);
  return out;
}

namespace {

TraversalOutcome traverse(const Cfg &cfg, const TraversalSpec &spec,
                          const TranslationUnit &unit) {
  if (!spec.visitor)
    throw Error("traversal requires a visitor");
  Supergraph graph(unit, cfg, spec.direction, spec.interprocedural, spec.maxCallDepth);
  TraversalOutcome outcome;
  std::set<ProgramPoint> visited;
  PathContext ctx;
  ctx.graph = &graph;

  const ProgramPoint start = graph.start();
  visited.insert(start);

  if (spec.order == Order::DepthFirst) {
    struct Frame {
      std::vector<SupergraphStep> next;
      std::size_t index = 0;
    };
    std::vector<Frame> stack;
    ctx.path.push_back(start);
    ++outcome.visited;
    VisitAction action = spec.visitor(graph.node(start), ctx);
    if (action == VisitAction::StopAll)
      return TraversalOutcome{true, outcome.visited};
    if (action == VisitAction::Continue)
      stack.push_back(Frame{graph.next(start)});
    else
      ctx.path.pop_back();
    while (!stack.empty()) {
      Frame &top = stack.back();
      if (top.index >= top.next.size()) {
        stack.pop_back();
        ctx.path.pop_back();
        continue;
      }
      ProgramPoint p = top.next[top.index++].point;
      if (!visited.insert(p).second)
        continue;
      ctx.path.push_back(p);
      ++outcome.visited;
      action = spec.visitor(graph.node(p), ctx);
      if (action == VisitAction::StopAll)
        return TraversalOutcome{true, outcome.visited};
      if (action == VisitAction::PruneBranch) {
        ctx.path.pop_back();
        continue;
      }
      stack.push_back(Frame{graph.next(p)});
    }
    return outcome;
  }

  std::map<ProgramPoint, ProgramPoint> parent;
  std::deque<ProgramPoint> queue{start};
  while (!queue.empty()) {
    ProgramPoint p = queue.front();
    queue.pop_front();
    ctx.path.clear();
    for (ProgramPoint q = p;;) {
      ctx.path.push_back(q);
      auto it = parent.find(q);
      if (it == parent.end())
        break;
      q = it->second;
    }
    std::reverse(ctx.path.begin(), ctx.path.end());
    ++outcome.visited;
    VisitAction action = spec.visitor(graph.node(p), ctx);
    if (action == VisitAction::StopAll)
      return TraversalOutcome{true, outcome.visited};
    if (action == VisitAction::PruneBranch)
      continue;
    for (const auto &step : graph.next(p)) {
      if (visited.insert(step.point).second) {
        parent.emplace(step.point, p);
        queue.push_back(step.point);
      }
    }
  }
  return outcome;
}

} // namespace

TraversalOutcome traverseCfg(const Cfg &cfg, const TraversalSpec &spec,
                             const TranslationUnit &unit) {
  return traverse(cfg, spec, unit);
}

TraversalOutcome traverseInterprocedural(const Cfg &cfg, const TraversalSpec &spec,
                                         const TranslationUnit &unit) {
  if (!spec.interprocedural)
    throw Error("traverseInterprocedural requires spec.interprocedural");
  return traverse(cfg, spec, unit);
}

// ---- actual/formal mapping --------------------------------------------------

namespace {

void collectLocals(const AstNode &n, std::set<std::string> &out) {
  if ((n.kind == AstKind::ParamDecl || n.kind == AstKind::VarDecl) && !n.text.empty())
    out.insert(n.text);
  for (const auto &c : n.children)
    collectLocals(*c, out);
}

// Variable references only: member names and direct callee names are not
// variables.
void variableNames(const AstNode &n, std::set<std::string> &out) {
  if (n.kind == AstKind::Identifier) {
    out.insert(n.text);
    return;
  }
  if (n.kind == AstKind::Member) {
    variableNames(n.child(0), out);
    return;
  }
  std::size_t first = 0;
  if (n.kind == AstKind::Call && n.child(0).kind == AstKind::Identifier)
    first = 1;
  for (std::size_t i = first; i < n.size(); ++i)
    variableNames(n.child(i), out);
}

struct Correspondence {
  std::vector<std::string> formals;
  std::vector<const AstNode *> actuals;
};

std::optional<Correspondence> correspondence(const CallFrame &frame) {
  Correspondence c;
  for (const auto &child : frame.callee->function().children)
    if (child->kind == AstKind::ParamDecl)
      c.formals.push_back(child->text);
  for (std::size_t i = 1; i < frame.call->size(); ++i)
    c.actuals.push_back(&frame.call->child(i));
  if (c.formals.size() != c.actuals.size())
    return std::nullopt;
  return c;
}

AstPtr replaceActuals(const AstNode &e, const Correspondence &c) {
  for (std::size_t i = 0; i < c.actuals.size(); ++i)
    if (!c.formals[i].empty() && structurallyEqual(e, *c.actuals[i]))
      return makeNode(AstKind::Identifier, c.formals[i], e.location);
  auto copy = std::make_unique<AstNode>(e.kind, e.text, e.location);
  copy->type = e.type;
  for (std::size_t i = 0; i < e.size(); ++i) {
    bool fieldName = e.kind == AstKind::Member && i == 1;
    copy->children.push_back(fieldName ? cloneTree(e.child(i)) : replaceActuals(e.child(i), c));
  }
  return copy;
}

AstPtr replaceFormals(const AstNode &e, const Correspondence &c) {
  if (e.kind == AstKind::Identifier) {
    for (std::size_t i = 0; i < c.formals.size(); ++i)
      if (!c.formals[i].empty() && e.text == c.formals[i])
        return cloneTree(*c.actuals[i]);
    return cloneTree(e);
  }
  auto copy = std::make_unique<AstNode>(e.kind, e.text, e.location);
  copy->type = e.type;
  for (std::size_t i = 0; i < e.size(); ++i) {
    bool fieldName = e.kind == AstKind::Member && i == 1;
    bool directCallee = e.kind == AstKind::Call && i == 0 &&
                        e.child(0).kind == AstKind::Identifier;
    copy->children.push_back(fieldName || directCallee ? cloneTree(e.child(i))
                                                       : replaceFormals(e.child(i), c));
  }
  return copy;
}

void residualNames(const AstNode &e, const Correspondence &c, std::set<std::string> &out) {
  for (std::size_t i = 0; i < c.actuals.size(); ++i)
    if (!c.formals[i].empty() && structurallyEqual(e, *c.actuals[i]))
      return;
  if (e.kind == AstKind::Identifier) {
    out.insert(e.text);
    return;
  }
  for (std::size_t i = 0; i < e.size(); ++i) {
    bool fieldName = e.kind == AstKind::Member && i == 1;
    bool directCallee = e.kind == AstKind::Call && i == 0 &&
                        e.child(0).kind == AstKind::Identifier;
    if (!fieldName && !directCallee)
      residualNames(e.child(i), c, out);
  }
}

} // namespace

std::set<std::string> functionLocals(const AstNode &function) {
  std::set<std::string> out;
  collectLocals(function, out);
  return out;
}

std::optional<AstPtr> mapExpression(const AstNode &expr, const CallFrame &frame,
                                    MapDirection direction) {
  auto c = correspondence(frame);
  if (!c)
    return std::nullopt;
  const bool down = direction == MapDirection::CallerToCallee;
  // names of the side being left that are not covered by the substitution
  std::set<std::string> residual;
  std::set<std::string> forbidden =
      functionLocals(down ? frame.caller->function() : frame.callee->function());
  if (down) {
    residualNames(expr, *c, residual);
  } else {
    variableNames(expr, residual);
    for (const auto &f : c->formals)
      residual.erase(f);
  }
  for (const auto &n : residual)
    if (forbidden.count(n))
      return std::nullopt;
  return down ? replaceActuals(expr, *c) : replaceFormals(expr, *c);
}

std::optional<AstPtr> mapReturnValue(const CallFrame &frame, const AstNode &returnStmt) {
  if (returnStmt.kind != AstKind::Return || returnStmt.children.empty())
    return std::nullopt;
  const AstNode *site = frame.caller->node(frame.callSite).ast;
  AstPtr target;
  if (site->kind == AstKind::ExprStatement && site->child(0).kind == AstKind::Assign &&
      site->child(0).text == "=" && &site->child(0).child(1) == frame.call) {
    target = cloneTree(site->child(0).child(0));
  } else if (site->kind == AstKind::VarDecl && !site->children.empty() &&
             &site->child(0) == frame.call) {
    target = makeNode(AstKind::Identifier, site->text, site->location);
  } else {
    return std::nullopt;
  }
  auto value = mapExpression(returnStmt.child(0), frame, MapDirection::CalleeToCaller);
  if (!value)
    return std::nullopt;
  auto loc = target->location;
  std::vector<AstPtr> kids;
  kids.push_back(std::move(target));
  kids.push_back(std::move(*value));
  return makeNode(AstKind::Assign, "=", loc, std::move(kids));
}

} // namespace cbugscan
