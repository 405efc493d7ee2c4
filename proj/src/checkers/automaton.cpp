#include "cbugscan/checkers/automaton.hpp"

#include <set>
#include <tuple>

#include "cbugscan/checkers/instances.hpp"
#include "cbugscan/error.hpp"
#include "cbugscan/line_config.hpp"
#include "cbugscan/traverse.hpp"

namespace cbugscan {

const char *const kDefaultLockAutomatonText = R"aut(automaton locking
states U L
start U
pattern lock "mutex_lock(%X)"
pattern unlock "mutex_unlock(%X)"
transition U lock -> L
transition L unlock -> U
error U unlock "double unlock of %X"
error L lock "double lock of %X"
error-at-exit L "lock %X held at exit"
)aut";

std::optional<int> PropertyAutomaton::stateIndex(std::string_view state) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == state)
      return static_cast<int>(i);
  return std::nullopt;
}

PropertyAutomaton parseAutomaton(std::string_view text, std::string_view origin) {
  struct Pending {
    int line;
    std::string from, pattern, to, message;
    enum { Move, Fail, Exit } kind;
  };
  PropertyAutomaton a;
  std::optional<std::pair<int, std::string>> start;
  std::vector<Pending> pending;
  std::set<std::string> patternNames;

  auto fail = [&](int line, const std::string &what) -> ConfigError {
    return ConfigError(std::string(origin) + ":" + std::to_string(line) + ": " + what);
  };
  auto word = [](const ConfigToken &t) { return !t.quoted; };

  for (const auto &line : splitConfigLines(text, origin)) {
    const auto &t = line.tokens;
    const int n = line.number;
    if (line.is(0, "automaton") && t.size() == 2 && word(t[1])) {
      a.name = t[1].text;
    } else if (line.is(0, "states") && t.size() >= 2) {
      for (std::size_t i = 1; i < t.size(); ++i) {
        if (!word(t[i]))
          throw fail(n, "state names must be bare words");
        if (a.stateIndex(t[i].text))
          throw fail(n, "duplicate state '" + t[i].text + "'");
        a.states.push_back(t[i].text);
      }
    } else if (line.is(0, "start") && t.size() == 2 && word(t[1])) {
      if (start)
        throw fail(n, "start state given twice");
      start = std::make_pair(n, t[1].text);
    } else if (line.is(0, "pattern") && t.size() == 3 && word(t[1]) && t[2].quoted) {
      if (!patternNames.insert(t[1].text).second)
        throw fail(n, "duplicate pattern '" + t[1].text + "'");
      try {
        a.patterns.push_back(parsePattern(t[1].text, t[2].text));
      } catch (const SyntaxError &e) {
        throw fail(n, "pattern '" + t[1].text + "': " + e.what());
      }
    } else if (line.is(0, "transition") && t.size() == 5 && line.is(3, "->") && word(t[1]) &&
               word(t[2]) && word(t[4])) {
      pending.push_back({n, t[1].text, t[2].text, t[4].text, {}, Pending::Move});
    } else if (line.is(0, "error") && t.size() == 4 && word(t[1]) && word(t[2]) && t[3].quoted) {
      pending.push_back({n, t[1].text, t[2].text, {}, t[3].text, Pending::Fail});
    } else if (line.is(0, "error-at-exit") && t.size() == 3 && word(t[1]) && t[2].quoted) {
      pending.push_back({n, t[1].text, {}, {}, t[2].text, Pending::Exit});
    } else {
      throw fail(n, "unrecognized directive");
    }
  }

  if (a.states.empty())
    throw ConfigError(std::string(origin) + ": no states declared");
  if (a.states.size() > 64)
    throw ConfigError(std::string(origin) + ": more than 64 states");
  if (!start)
    throw ConfigError(std::string(origin) + ": missing start state");
  auto state = [&](int line, const std::string &s) {
    auto idx = a.stateIndex(s);
    if (!idx)
      throw fail(line, "unknown state '" + s + "'");
    return *idx;
  };
  a.start = state(start->first, start->second);

  std::set<std::pair<int, std::string>> used;
  for (const auto &p : pending) {
    int from = state(p.line, p.from);
    if (p.kind == Pending::Exit) {
      if (!a.exitErrors.emplace(from, p.message).second)
        throw fail(p.line, "duplicate exit error for state '" + p.from + "'");
      continue;
    }
    if (!patternNames.count(p.pattern))
      throw fail(p.line, "unknown pattern '" + p.pattern + "'");
    if (!used.emplace(from, p.pattern).second)
      throw fail(p.line, "duplicate rule for state '" + p.from + "' and pattern '" + p.pattern +
                             "'");
    if (p.kind == Pending::Move)
      a.transitions[{from, p.pattern}] = state(p.line, p.to);
    else
      a.errorTransitions[{from, p.pattern}] = p.message;
  }
  return a;
}

PropertyAutomaton loadAutomaton(const std::string &path) {
  std::string text;
  try {
    text = readFile(path);
  } catch (const Error &e) {
    throw ConfigError(e.what());
  }
  return parseAutomaton(text, path);
}

PropertyAutomaton defaultLockAutomaton() {
  return parseAutomaton(kDefaultLockAutomatonText, "<builtin locking automaton>");
}

std::vector<std::string> automatonEntryFunctions(const TranslationUnit &unit) {
  const auto &cg = unit.callGraph();
  std::map<std::string, std::set<std::string>> callees;
  std::set<std::string> calledByOthers;
  for (const auto &e : cg.edges) {
    if (e.external || e.callee == e.caller)
      continue;
    callees[e.caller].insert(e.callee);
    calledByOthers.insert(e.callee);
  }
  std::vector<std::string> roots;
  std::set<std::string> reached;
  std::vector<std::string> work;
  for (const auto &f : cg.functions) {
    if (!calledByOthers.count(f)) {
      roots.push_back(f);
      work.push_back(f);
      reached.insert(f);
    }
  }
  while (!work.empty()) {
    auto f = work.back();
    work.pop_back();
    for (const auto &g : callees[f])
      if (reached.insert(g).second)
        work.push_back(g);
  }
  std::vector<std::string> out;
  for (const auto &f : cg.functions)
    if (!calledByOthers.count(f) || !reached.count(f))
      out.push_back(f);
  return out;
}

namespace {

using Mask = std::uint64_t;
/// Instance key -> set of states. An absent key is an instance still in
/// the start state.
using StateMap = std::map<std::string, Mask>;

Mask bit(int s) { return Mask{1} << s; }

std::string statementText(const AstNode &n) {
  std::string text = toSource(n);
  if (!text.empty() && text.back() == ';')
    text.pop_back();
  return text;
}

struct ErrorRecord {
  enum Kind { Transition, Exit } kind;
  std::string key;
  std::string message;
  SourceLocation location;
  int node; // matched node, or the root-level node flowing into exit
};

class Engine {
public:
  Engine(const PropertyAutomaton &a, const TranslationUnit &unit, const Cfg &root)
      : a_(a), graph_(unit, root, Direction::Forward, true) {}

  void run(std::vector<ErrorRecord> &errors, std::set<std::tuple<std::string, std::string,
                                                                 SourceLocation>> &seen) {
    std::map<ProgramPoint, StateMap> in;
    std::set<ProgramPoint> queued;
    std::vector<ProgramPoint> work;
    const ProgramPoint start = graph_.start();
    in[start] = {};
    work.push_back(start);
    queued.insert(start);
    const int rootExit = graph_.root().exit();

    while (!work.empty()) {
      // lowest point first keeps the iteration order stable
      auto best = std::min_element(work.begin(), work.end());
      ProgramPoint p = *best;
      work.erase(best);
      queued.erase(p);

      StateMap out = in[p];
      applyNode(p, out, [&](const std::string &key, const std::string &message) {
        record(errors, seen, {ErrorRecord::Transition, key, message, graph_.node(p).location,
                              p.node});
      });

      for (const auto &step : graph_.next(p)) {
        if (step.point.context == 0 && step.point.node == rootExit) {
          for (const auto &[key, mask] : out)
            for (int s = 0; s < static_cast<int>(a_.states.size()); ++s)
              if ((mask & bit(s)) && a_.exitErrors.count(s))
                record(errors, seen,
                       {ErrorRecord::Exit, key, expand(a_.exitErrors.at(s), key),
                        graph_.node(p).location, p.node});
        }
        auto [it, fresh] = in.try_emplace(step.point, out);
        bool changed = fresh;
        if (!fresh)
          changed = join(it->second, out);
        if (changed && queued.insert(step.point).second)
          work.push_back(step.point);
      }
    }
  }

  std::vector<TraceStep> witness(const ErrorRecord &rec);

private:
  const std::vector<InstanceMatch> &matches(const ProgramPoint &p) {
    auto it = cache_.find(p);
    if (it == cache_.end()) {
      it = cache_.emplace(p, instanceMatches(a_.patterns, graph_, p)).first;
      for (const auto &m : it->second)
        values_.try_emplace(m.key, m.values);
    }
    return it->second;
  }

  std::string expand(const std::string &message, const std::string &key) {
    auto it = values_.find(key);
    return it == values_.end() ? message : expandTemplate(message, it->second);
  }

  template <typename OnError>
  void applyNode(const ProgramPoint &p, StateMap &state, OnError onError) {
    for (const auto &m : matches(p)) {
      auto found = state.find(m.key);
      Mask mask = found == state.end() ? bit(a_.start) : found->second;
      Mask next = 0;
      for (int s = 0; s < static_cast<int>(a_.states.size()); ++s) {
        if (!(mask & bit(s)))
          continue;
        const std::pair<int, std::string> rule{s, m.pattern->name()};
        if (auto t = a_.transitions.find(rule); t != a_.transitions.end()) {
          next |= bit(t->second);
        } else {
          if (auto e = a_.errorTransitions.find(rule); e != a_.errorTransitions.end())
            onError(m.key, expandTemplate(e->second, m.values));
          next |= bit(s);
        }
      }
      state[m.key] = next;
    }
  }

  bool join(StateMap &into, const StateMap &from) {
    bool changed = false;
    auto merge = [&](const std::string &key, Mask add) {
      auto it = into.try_emplace(key, bit(a_.start)).first;
      Mask before = it->second;
      it->second |= add;
      changed |= it->second != before;
    };
    for (const auto &[key, mask] : from)
      merge(key, mask);
    // keys only in `into` meet an implicit start state from `from`
    for (auto &[key, mask] : into) {
      if (from.count(key))
        continue;
      Mask before = mask;
      mask |= bit(a_.start);
      changed |= mask != before;
    }
    return changed;
  }

  void record(std::vector<ErrorRecord> &errors,
              std::set<std::tuple<std::string, std::string, SourceLocation>> &seen,
              ErrorRecord rec) {
    if (seen.emplace(rec.key, rec.message, rec.location).second)
      errors.push_back(std::move(rec));
  }

  const PropertyAutomaton &a_;
  Supergraph graph_;
  std::map<ProgramPoint, std::vector<InstanceMatch>> cache_;
  std::map<std::string, std::map<std::string, std::string>> values_;
};

std::vector<TraceStep> Engine::witness(const ErrorRecord &rec) {
  struct Frame {
    ProgramPoint point;
    int before;
    int after;
    EdgeLabel label;
    std::vector<SupergraphStep> next;
    std::size_t index = 0;
  };
  // runs the node's matches for this instance only; reports whether the
  // recorded transition error fires here
  auto simulate = [&](const ProgramPoint &p, int s, bool &hit) {
    StateMap state{{rec.key, bit(s)}};
    bool fired = false;
    applyNode(p, state, [&](const std::string &key, const std::string &message) {
      fired |= key == rec.key && message == rec.message;
    });
    hit = fired;
    Mask m = state[rec.key];
    int out = 0;
    while (!(m & bit(out)))
      ++out;
    return out;
  };

  const int rootExit = graph_.root().exit();
  std::set<std::pair<ProgramPoint, int>> visited;
  std::vector<Frame> stack;
  bool found = false;
  std::optional<SupergraphStep> exitStep;

  auto push = [&](const ProgramPoint &p, int s, EdgeLabel label) {
    bool hit = false;
    int after = simulate(p, s, hit);
    stack.push_back(Frame{p, s, after, label, graph_.next(p)});
    if (rec.kind == ErrorRecord::Transition && hit && p.node == rec.node) {
      found = true;
      return;
    }
    if (rec.kind == ErrorRecord::Exit && p.context == 0 && p.node == rec.node &&
        a_.exitErrors.count(after) && expand(a_.exitErrors.at(after), rec.key) == rec.message) {
      for (const auto &step : stack.back().next)
        if (step.point.context == 0 && step.point.node == rootExit) {
          found = true;
          exitStep = step;
          return;
        }
    }
  };

  visited.emplace(graph_.start(), a_.start);
  push(graph_.start(), a_.start, EdgeLabel::None);
  while (!found && !stack.empty()) {
    Frame &top = stack.back();
    if (top.index >= top.next.size()) {
      stack.pop_back();
      continue;
    }
    const SupergraphStep step = top.next[top.index++];
    const int s = top.after;
    if (!visited.emplace(step.point, s).second)
      continue;
    push(step.point, s, step.label);
  }

  std::vector<TraceStep> steps;
  if (!found) {
    steps.push_back({rec.location, rec.message});
    return steps;
  }
  for (std::size_t i = 0; i < stack.size(); ++i) {
    const Frame &f = stack[i];
    const CfgNode &node = graph_.node(f.point);
    if (i > 0) {
      const Frame &prev = stack[i - 1];
      const CfgNode &from = graph_.node(prev.point);
      if (from.kind == CfgNodeKind::Condition && f.label != EdgeLabel::None && from.ast)
        steps.push_back({from.location, "condition `" + toSource(*from.ast) + "` is " +
                                            (f.label == EdgeLabel::True ? "true" : "false")});
      if (f.point.context != prev.point.context &&
          graph_.depth(f.point.context) > graph_.depth(prev.point.context))
        steps.push_back({from.location, "enters " + graph_.cfg(f.point).functionName()});
    }
    if (f.before != f.after && node.ast)
      steps.push_back({node.location, statementText(*node.ast) + ": " + a_.states[f.before] +
                                          " -> " + a_.states[f.after]});
  }
  steps.push_back({rec.location, rec.message});
  return steps;
}

} // namespace

std::vector<ErrorTrace> checkAutomaton(const PropertyAutomaton &automaton,
                                       const TranslationUnit &unit) {
  std::vector<ErrorTrace> traces;
  std::set<std::tuple<std::string, std::string, SourceLocation>> seen;
  for (const auto &fn : automatonEntryFunctions(unit)) {
    const Cfg *cfg = unit.findCfg(fn);
    if (!cfg)
      continue;
    Engine engine(automaton, unit, *cfg);
    std::vector<ErrorRecord> errors;
    engine.run(errors, seen);
    for (const auto &rec : errors) {
      ErrorTrace t;
      t.importance = Importance::Error;
      t.message = rec.message;
      t.steps = engine.witness(rec);
      traces.push_back(std::move(t));
    }
  }
  return traces;
}

} // namespace cbugscan
