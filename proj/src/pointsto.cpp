#include "cbugscan/pointsto.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "cbugscan/error.hpp"
#include "cbugscan/traverse.hpp"

namespace cbugscan {

int VariableTable::intern(const std::string &name) {
  auto [it, inserted] = ids_.emplace(name, static_cast<int>(names_.size()));
  if (inserted)
    names_.push_back(name);
  return it->second;
}

std::optional<int> VariableTable::find(const std::string &name) const {
  auto it = ids_.find(name);
  if (it == ids_.end())
    return std::nullopt;
  return it->second;
}

const std::set<int> &PointsToResult::of(int variable) const {
  static const std::set<int> empty;
  auto it = pointsTo.find(variable);
  return it == pointsTo.end() ? empty : it->second;
}

// ---- constraint extraction --------------------------------------------------

namespace {

const std::set<std::string> kAllocators = {"malloc", "calloc", "realloc", "kmalloc", "kzalloc"};

class ConstraintCollector {
public:
  ConstraintCollector(const TranslationUnit &unit, ConstraintSet &out) : unit_(unit), out_(out) {
    for (const auto &f : unit.callGraph().functions)
      functions_.insert(f);
  }

  void run() {
    const AstNode &root = unit_.ast();
    for (const auto &top : root.children)
      if (top->kind == AstKind::VarDecl)
        declare(*top);
    for (const auto &top : root.children) {
      if (top->kind != AstKind::FunctionDef)
        continue;
      function_ = top->text;
      locals_ = functionLocals(*top);
      declareAll(*top);
    }
    function_.clear();
    locals_.clear();
    for (const auto &top : root.children) {
      if (top->kind == AstKind::FunctionDef) {
        function_ = top->text;
        locals_ = functionLocals(*top);
      } else {
        function_.clear();
        locals_.clear();
      }
      visit(*top);
    }
  }

private:
  std::string qualify(const std::string &name) const {
    if (!function_.empty() && locals_.count(name))
      return function_ + "::" + name;
    return name;
  }

  void declare(const AstNode &decl) {
    if (!decl.text.empty())
      out_.variables.intern(qualify(decl.text));
  }

  void declareAll(const AstNode &n) {
    if (n.kind == AstKind::ParamDecl || n.kind == AstKind::VarDecl)
      declare(n);
    for (const auto &c : n.children)
      declareAll(*c);
  }

  std::optional<int> base(const AstNode &e) {
    switch (e.kind) {
    case AstKind::Identifier:
      if (!locals_.count(e.text) && functions_.count(e.text))
        return std::nullopt;
      return out_.variables.intern(qualify(e.text));
    case AstKind::Member:
    case AstKind::Index:
      return base(e.child(0));
    default:
      return std::nullopt;
    }
  }

  void emit(ConstraintKind kind, int lhs, int rhs) {
    out_.constraints.push_back(PointerConstraint{kind, lhs, rhs});
  }

  void assignment(const AstNode &lhs, const AstNode &rhs) {
    if (lhs.kind == AstKind::UnaryOp && lhs.text == "*") {
      auto p = base(lhs.child(0));
      if (!p)
        return;
      if (rhs.kind == AstKind::Identifier || rhs.kind == AstKind::Member ||
          rhs.kind == AstKind::Index)
        if (auto q = base(rhs))
          emit(ConstraintKind::Store, *p, *q);
      return;
    }
    auto x = base(lhs);
    if (!x)
      return;
    assignTo(*x, rhs);
  }

  void assignTo(int x, const AstNode &rhs) {
    if (rhs.kind == AstKind::UnaryOp && rhs.text == "&") {
      if (auto y = base(rhs.child(0)))
        emit(ConstraintKind::AddressOf, x, *y);
    } else if (rhs.kind == AstKind::UnaryOp && rhs.text == "*") {
      if (auto y = base(rhs.child(0)))
        emit(ConstraintKind::Load, x, *y);
    } else if (rhs.kind == AstKind::Call) {
      const AstNode &callee = rhs.child(0);
      if (callee.kind == AstKind::Identifier && kAllocators.count(callee.text))
        emit(ConstraintKind::AddressOf, x,
             out_.variables.intern("<alloc:" + std::to_string(rhs.location.line) + ":" +
                                   std::to_string(rhs.location.column) + ">"));
    } else if (auto y = base(rhs)) {
      emit(ConstraintKind::Copy, x, *y);
    }
  }

  void visit(const AstNode &n) {
    if (n.kind == AstKind::Assign && n.text == "=") {
      assignment(n.child(0), n.child(1));
    } else if (n.kind == AstKind::VarDecl && !n.children.empty() && !n.text.empty()) {
      assignTo(out_.variables.intern(qualify(n.text)), n.child(0));
    }
    for (const auto &c : n.children)
      visit(*c);
  }

  const TranslationUnit &unit_;
  ConstraintSet &out_;
  std::set<std::string> functions_;
  std::string function_;
  std::set<std::string> locals_;
};

} // namespace

ConstraintSet collectConstraints(const TranslationUnit &unit) {
  ConstraintSet out;
  ConstraintCollector(unit, out).run();
  return out;
}

// ---- unification (one pointee per class) -----------------------------------

namespace {

std::set<int> mentioned(const std::vector<PointerConstraint> &constraints) {
  std::set<int> vars;
  for (const auto &c : constraints) {
    vars.insert(c.lhs);
    vars.insert(c.rhs);
  }
  return vars;
}

class Unifier {
public:
  explicit Unifier(std::size_t n) : parent_(n), pointee_(n), pending_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  void addressOf(int x, int y) { setPointee(x, y); }
  void copy(int x, int y) { flowFrom(x, y); }

  void load(int x, int y) {
    int c = find(y);
    if (pointee_[c])
      flowFrom(x, *pointee_[c]);
    else
      pending_[c].push_back({Action::Load, x});
  }

  void store(int x, int y) {
    int c = find(x);
    if (pointee_[c])
      flowFrom(*pointee_[c], y);
    else
      pending_[c].push_back({Action::Store, y});
  }

  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  std::optional<int> pointee(int v) {
    auto p = pointee_[find(v)];
    if (!p)
      return std::nullopt;
    return find(*p);
  }

private:
  struct Action {
    enum Kind { Copy, Load, Store } kind;
    int other;
  };

  // pointee(x) absorbs pointee(y), now or once y gets one
  void flowFrom(int x, int y) {
    int c = find(y);
    if (pointee_[c])
      setPointee(x, *pointee_[c]);
    else
      pending_[c].push_back({Action::Copy, x});
  }

  void setPointee(int x, int t) {
    int c = find(x);
    if (pointee_[c]) {
      join(*pointee_[c], t);
      return;
    }
    pointee_[c] = find(t);
    fire(c, std::exchange(pending_[c], {}));
  }

  void fire(int c, const std::vector<Action> &actions) {
    for (const auto &a : actions) {
      int z = find(*pointee_[find(c)]);
      switch (a.kind) {
      case Action::Copy:
        setPointee(a.other, z);
        break;
      case Action::Load:
        flowFrom(a.other, z);
        break;
      case Action::Store:
        flowFrom(z, a.other);
        break;
      }
    }
  }

  void join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return;
    if (b < a)
      std::swap(a, b);
    auto pa = pointee_[a];
    auto pb = pointee_[b];
    std::vector<Action> waiting = std::move(pending_[a]);
    waiting.insert(waiting.end(), pending_[b].begin(), pending_[b].end());
    pending_[a].clear();
    pending_[b].clear();
    parent_[b] = a;
    pointee_[b].reset();
    if (pa && pb) {
      join(*pa, *pb);
    } else if (pa || pb) {
      pointee_[a] = pa ? pa : pb;
      fire(a, waiting);
    } else {
      pending_[a] = std::move(waiting);
    }
  }

  std::vector<int> parent_;
  std::vector<std::optional<int>> pointee_;
  std::vector<std::vector<Action>> pending_;
};

std::size_t universe(const std::vector<PointerConstraint> &constraints) {
  int top = -1;
  for (const auto &c : constraints) {
    if (c.lhs < 0 || c.rhs < 0)
      throw Error("negative variable id in pointer constraint");
    top = std::max({top, c.lhs, c.rhs});
  }
  return static_cast<std::size_t>(top + 1);
}

} // namespace

PointsToResult steensgaard(const std::vector<PointerConstraint> &constraints) {
  const std::size_t n = universe(constraints);
  Unifier u(n);
  for (const auto &c : constraints) {
    switch (c.kind) {
    case ConstraintKind::AddressOf:
      u.addressOf(c.lhs, c.rhs);
      break;
    case ConstraintKind::Copy:
      u.copy(c.lhs, c.rhs);
      break;
    case ConstraintKind::Load:
      u.load(c.lhs, c.rhs);
      break;
    case ConstraintKind::Store:
      u.store(c.lhs, c.rhs);
      break;
    }
  }
  std::map<int, std::set<int>> members;
  for (int v = 0; v < static_cast<int>(n); ++v)
    members[u.find(v)].insert(v);
  PointsToResult result;
  result.analysis = PointsToAnalysis::Steensgaard;
  for (int v : mentioned(constraints)) {
    auto &set = result.pointsTo[v];
    if (auto p = u.pointee(v))
      set = members[*p];
  }
  return result;
}

// ---- k-category refinement --------------------------------------------------

namespace {

/// Classes hold variables of one category and point to at most one class
/// per category. Inclusion constraints are solved to a fixpoint; two
/// distinct classes competing for the same slot are merged.
class CategoryGraph {
public:
  CategoryGraph(std::size_t n, std::vector<int> category)
      : parent_(n), slots_(n), category_(std::move(category)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  std::vector<int> targets(int v) {
    std::vector<int> out;
    for (const auto &[cat, t] : slots_[find(v)])
      out.push_back(find(t));
    return out;
  }

  bool add(int v, int t) {
    int c = find(v);
    t = find(t);
    auto &slots = slots_[c];
    auto it = slots.find(category_[t]);
    if (it == slots.end()) {
      slots.emplace(category_[t], t);
      return true;
    }
    if (find(it->second) == t)
      return false;
    merge(it->second, t);
    return true;
  }

private:
  void merge(int a, int b) {
    std::vector<std::pair<int, int>> work{{a, b}};
    while (!work.empty()) {
      auto [x, y] = work.back();
      work.pop_back();
      x = find(x);
      y = find(y);
      if (x == y)
        continue;
      if (y < x)
        std::swap(x, y);
      parent_[y] = x;
      for (const auto &[cat, t] : slots_[y]) {
        auto it = slots_[x].find(cat);
        if (it == slots_[x].end())
          slots_[x].emplace(cat, t);
        else
          work.emplace_back(it->second, t);
      }
      slots_[y].clear();
    }
  }

  std::vector<int> parent_;
  std::vector<std::map<int, int>> slots_;
  std::vector<int> category_;
};

std::map<int, std::set<int>> solveRound(const std::vector<PointerConstraint> &constraints,
                                        std::size_t n, const std::vector<int> &category) {
  CategoryGraph g(n, category);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto &c : constraints) {
      switch (c.kind) {
      case ConstraintKind::AddressOf:
        changed |= g.add(c.lhs, c.rhs);
        break;
      case ConstraintKind::Copy:
        for (int t : g.targets(c.rhs))
          changed |= g.add(c.lhs, t);
        break;
      case ConstraintKind::Load:
        for (int z : g.targets(c.rhs))
          for (int t : g.targets(z))
            changed |= g.add(c.lhs, t);
        break;
      case ConstraintKind::Store:
        for (int z : g.targets(c.lhs))
          for (int t : g.targets(c.rhs))
            changed |= g.add(z, t);
        break;
      }
    }
  }
  std::map<int, std::set<int>> members;
  for (int v = 0; v < static_cast<int>(n); ++v)
    members[g.find(v)].insert(v);
  std::map<int, std::set<int>> out;
  for (int v : mentioned(constraints)) {
    auto &set = out[v];
    for (int t : g.targets(v))
      set.insert(members[t].begin(), members[t].end());
  }
  return out;
}

} // namespace

PointsToResult shapiroHorowitz(const std::vector<PointerConstraint> &constraints,
                               std::size_t variableCount, int k) {
  if (k < 1)
    throw Error("shapiroHorowitz: k must be at least 1");
  const std::size_t n = std::max(variableCount, universe(constraints));

  int rounds = 1;
  if (k > 1) {
    rounds = 0;
    for (std::size_t reach = 1; reach < n; reach *= static_cast<std::size_t>(k))
      ++rounds;
    rounds = std::max(rounds, 1);
  }

  PointsToResult result;
  result.analysis = PointsToAnalysis::ShapiroHorowitz;
  result.k = k;
  std::size_t scale = 1;
  for (int r = 0; r < rounds; ++r, scale *= static_cast<std::size_t>(k)) {
    std::vector<int> category(n);
    for (std::size_t v = 0; v < n; ++v)
      category[v] = static_cast<int>((v / scale) % static_cast<std::size_t>(k));
    auto round = solveRound(constraints, n, category);
    if (r == 0) {
      result.pointsTo = std::move(round);
      continue;
    }
    for (auto &[v, set] : result.pointsTo) {
      const auto &other = round[v];
      std::set<int> both;
      std::set_intersection(set.begin(), set.end(), other.begin(), other.end(),
                            std::inserter(both, both.begin()));
      set = std::move(both);
    }
  }
  return result;
}

bool pointwiseSubset(const PointsToResult &a, const PointsToResult &b) {
  for (const auto &[v, set] : a.pointsTo) {
    const auto &other = b.of(v);
    if (!std::includes(other.begin(), other.end(), set.begin(), set.end()))
      return false;
  }
  return true;
}

std::string dumpPointsTo(const PointsToResult &result, const VariableTable &variables) {
  std::vector<std::string> lines;
  for (const auto &[v, set] : result.pointsTo) {
    std::vector<std::string> names;
    for (int t : set)
      names.push_back(variables.name(t));
    std::sort(names.begin(), names.end());
    std::string line = variables.name(v) + " -> {";
    for (std::size_t i = 0; i < names.size(); ++i)
      line += (i ? ", " : "") + names[i];
    lines.push_back(line + "}");
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto &l : lines)
    out += l + "\n";
  return out;
}

} // namespace cbugscan
