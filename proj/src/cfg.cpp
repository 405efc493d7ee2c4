#include "cbugscan/cfg.hpp"

#include <deque>
#include <map>
#include <sstream>

#include "cbugscan/error.hpp"

namespace cbugscan {

Cfg::Cfg(std::string functionName, const AstNode *function, int firstId)
    : name_(std::move(functionName)), function_(function), firstId_(firstId) {}

int Cfg::addNode(CfgNodeKind kind, const AstNode *ast, SourceLocation loc) {
  int id = endId();
  nodes_.push_back(CfgNode{id, kind, ast, std::move(loc)});
  succ_.emplace_back();
  pred_.emplace_back();
  return id;
}

void Cfg::addEdge(int from, int to, EdgeLabel label) {
  succ_.at(local(from)).push_back(CfgEdge{to, label});
  pred_.at(local(to)).push_back(CfgEdge{from, label});
}

void Cfg::finalize() {
  reachable_.assign(nodes_.size(), false);
  std::deque<int> work{entry()};
  reachable_[local(entry())] = true;
  while (!work.empty()) {
    int n = work.front();
    work.pop_front();
    for (const auto &e : successors(n)) {
      if (!reachable_[local(e.target)]) {
        reachable_[local(e.target)] = true;
        work.push_back(e.target);
      }
    }
  }
}

int constantTruth(const AstNode &cond) {
  if (cond.kind != AstKind::IntLiteral)
    return -1;
  const std::string &t = cond.text;
  if (t.empty() || t.front() == '\'')
    return -1;
  for (char c : t)
    if (c != '0' && c != 'x' && c != 'X' && c != 'u' && c != 'U' && c != 'l' && c != 'L')
      return 1;
  return 0;
}

namespace {

struct Pending {
  int from;
  EdgeLabel label;
};

using Outs = std::vector<Pending>;

class CfgBuilder {
public:
  CfgBuilder(const AstNode &fn, int firstId)
      : fn_(fn), cfg_(fn.text, &fn, firstId) {}

  Cfg build() {
    const AstNode &body = fn_.child(fn_.size() - 1);
    int entry = cfg_.addNode(CfgNodeKind::Entry, nullptr, fn_.location);
    int exit = cfg_.addNode(CfgNodeKind::Exit, nullptr, body.endLocation);
    exit_ = exit;
    Outs outs = lower(body, {{entry, EdgeLabel::None}});
    connect(outs, exit);
    for (const auto &[label, gotos] : pendingGotos_) {
      auto it = labels_.find(label);
      if (it == labels_.end())
        throw CfgError(gotos.front().second.str() + ": goto to undefined label '" +
                       label + "' in function '" + fn_.text + "'");
      for (const auto &g : gotos)
        cfg_.addEdge(g.first, it->second);
    }
    cfg_.finalize();
    return std::move(cfg_);
  }

private:
  struct Loop {
    int continueTarget;
    Outs breaks;
  };

  void connect(const Outs &outs, int to) {
    for (const auto &p : outs)
      cfg_.addEdge(p.from, to, p.label);
  }

  int statementNode(const AstNode &s, const Outs &in) {
    int id = cfg_.addNode(CfgNodeKind::Statement, &s, s.location);
    connect(in, id);
    return id;
  }

  Outs lower(const AstNode &s, Outs in) {
    switch (s.kind) {
    case AstKind::Block:
      for (const auto &c : s.children)
        in = lower(*c, std::move(in));
      return in;

    case AstKind::If: {
      int cond = cfg_.addNode(CfgNodeKind::Condition, &s.child(0), s.child(0).location);
      connect(in, cond);
      int truth = constantTruth(s.child(0));
      Outs thenIn, elseIn;
      if (truth != 0)
        thenIn.push_back({cond, EdgeLabel::True});
      if (truth != 1)
        elseIn.push_back({cond, EdgeLabel::False});
      Outs out = lower(s.child(1), std::move(thenIn));
      Outs elseOut = s.size() > 2 ? lower(s.child(2), std::move(elseIn)) : std::move(elseIn);
      out.insert(out.end(), elseOut.begin(), elseOut.end());
      return out;
    }

    case AstKind::While: {
      int cond = cfg_.addNode(CfgNodeKind::Condition, &s.child(0), s.child(0).location);
      connect(in, cond);
      return loopBody(cond, constantTruth(s.child(0)), s.child(1), cond);
    }

    case AstKind::For: {
      const AstNode &init = s.child(0);
      const AstNode &condAst = s.child(1);
      const AstNode &step = s.child(2);
      if (init.kind != AstKind::EmptyStatement)
        in = {{statementNode(init, in), EdgeLabel::None}};
      bool noCond = condAst.kind == AstKind::EmptyStatement;
      const AstNode &condRef = noCond ? s : condAst;
      int cond = cfg_.addNode(CfgNodeKind::Condition, &condRef, condRef.location);
      connect(in, cond);
      int truth = noCond ? 1 : constantTruth(condAst);
      if (step.kind == AstKind::EmptyStatement)
        return loopBody(cond, truth, s.child(3), cond);
      // the step node is created after the body so ids follow source order
      loops_.push_back(Loop{-1, {}});
      std::size_t loopIndex = loops_.size() - 1;
      Outs bodyIn;
      if (truth != 0)
        bodyIn.push_back({cond, EdgeLabel::True});
      pendingContinues_.emplace_back();
      Outs bodyOut = lower(s.child(3), std::move(bodyIn));
      int stepId = statementNode(step, bodyOut);
      for (int from : pendingContinues_.back())
        cfg_.addEdge(from, stepId);
      pendingContinues_.pop_back();
      cfg_.addEdge(stepId, cond);
      Outs out = std::move(loops_[loopIndex].breaks);
      loops_.pop_back();
      if (truth != 1)
        out.push_back({cond, EdgeLabel::False});
      return out;
    }

    case AstKind::Return: {
      int id = statementNode(s, in);
      cfg_.addEdge(id, exit_);
      return {};
    }

    case AstKind::Goto: {
      int id = statementNode(s, in);
      pendingGotos_[s.text].emplace_back(id, s.location);
      return {};
    }

    case AstKind::Label: {
      if (labels_.count(s.text))
        throw CfgError(s.location.str() + ": duplicate label '" + s.text + "'");
      int id = statementNode(s, in);
      labels_[s.text] = id;
      return lower(s.child(0), {{id, EdgeLabel::None}});
    }

    case AstKind::Break: {
      int id = statementNode(s, in);
      if (loops_.empty())
        throw CfgError(s.location.str() + ": break outside of a loop");
      loops_.back().breaks.push_back({id, EdgeLabel::None});
      return {};
    }

    case AstKind::Continue: {
      int id = statementNode(s, in);
      if (loops_.empty())
        throw CfgError(s.location.str() + ": continue outside of a loop");
      if (loops_.back().continueTarget >= 0)
        cfg_.addEdge(id, loops_.back().continueTarget);
      else
        pendingContinues_.back().push_back(id);
      return {};
    }

    default:
      return {{statementNode(s, in), EdgeLabel::None}};
    }
  }

  Outs loopBody(int cond, int truth, const AstNode &body, int continueTarget) {
    loops_.push_back(Loop{continueTarget, {}});
    Outs bodyIn;
    if (truth != 0)
      bodyIn.push_back({cond, EdgeLabel::True});
    Outs bodyOut = lower(body, std::move(bodyIn));
    connect(bodyOut, cond);
    Outs out = std::move(loops_.back().breaks);
    loops_.pop_back();
    if (truth != 1)
      out.push_back({cond, EdgeLabel::False});
    return out;
  }

  const AstNode &fn_;
  Cfg cfg_;
  int exit_ = 0;
  std::vector<Loop> loops_;
  std::vector<std::vector<int>> pendingContinues_;
  std::map<std::string, int> labels_;
  std::map<std::string, std::vector<std::pair<int, SourceLocation>>> pendingGotos_;
};

} // namespace

Cfg buildCfg(const AstNode &functionAst, int firstId) {
  if (functionAst.kind != AstKind::FunctionDef)
    throw CfgError("buildCfg expects a function definition");
  return CfgBuilder(functionAst, firstId).build();
}

const AstNode *topLevelCall(const CfgNode &node) {
  if (!node.ast)
    return nullptr;
  const AstNode *e = nullptr;
  switch (node.ast->kind) {
  case AstKind::ExprStatement:
    e = &node.ast->child(0);
    if (e->kind == AstKind::Assign && e->text == "=")
      e = &e->child(1);
    break;
  case AstKind::VarDecl:
  case AstKind::Return:
    if (!node.ast->children.empty())
      e = &node.ast->child(0);
    break;
  default:
    break;
  }
  return e && e->kind == AstKind::Call ? e : nullptr;
}

std::string calleeName(const AstNode &call) {
  const AstNode &callee = call.child(0);
  return callee.kind == AstKind::Identifier ? callee.text : "<indirect>";
}

namespace {

std::string dotEscape(const std::string &s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out;
}

} // namespace

std::string cfgToDot(const Cfg &cfg) {
  std::ostringstream os;
  os << "digraph \"" << dotEscape(cfg.functionName()) << "\" {\n";
  for (const auto &n : cfg.nodes()) {
    std::string text;
    if (n.kind == CfgNodeKind::Entry)
      text = "entry";
    else if (n.kind == CfgNodeKind::Exit)
      text = "exit";
    else
      text = toSource(*n.ast);
    os << "  n" << n.id << " [label=\"" << n.id << ": " << dotEscape(text) << "\"";
    if (n.kind == CfgNodeKind::Condition)
      os << ", shape=diamond";
    os << "];\n";
  }
  for (const auto &n : cfg.nodes()) {
    for (const auto &e : cfg.successors(n.id)) {
      os << "  n" << n.id << " -> n" << e.target;
      if (e.label == EdgeLabel::True)
        os << " [label=\"true\"]";
      else if (e.label == EdgeLabel::False)
        os << " [label=\"false\"]";
      os << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

} // namespace cbugscan
