#include "cbugscan/checkers/thread.hpp"

#include <algorithm>
#include <optional>

#include "cbugscan/checkers/instances.hpp"
#include "cbugscan/error.hpp"
#include "cbugscan/line_config.hpp"
#include "cbugscan/traverse.hpp"

namespace cbugscan {

ThreadConfig parseThreadConfig(std::string_view text, std::string_view origin) {
  std::optional<Pattern> spawn;
  ThreadConfig config{parsePattern("spawn", "pthread_create(%A, %B, %F, %D)"), {}, {}, {}};
  auto fail = [&](int line, const std::string &what) {
    return ConfigError(std::string(origin) + ":" + std::to_string(line) + ": " + what);
  };
  auto pattern = [&](int line, const std::string &name, const std::string &templ) {
    try {
      return parsePattern(name, templ);
    } catch (const SyntaxError &e) {
      throw fail(line, e.what());
    }
  };
  for (const auto &line : splitConfigLines(text, origin)) {
    const auto &t = line.tokens;
    if (line.is(0, "spawn") && t.size() == 2 && t[1].quoted) {
      if (spawn)
        throw fail(line.number, "spawn pattern given twice");
      spawn = pattern(line.number, "spawn", t[1].text);
      const auto &mv = spawn->metavariables();
      if (std::find(mv.begin(), mv.end(), "F") == mv.end())
        throw fail(line.number, "spawn pattern must bind %F");
    } else if (line.is(0, "entry") && t.size() == 2 && !t[1].quoted) {
      config.entries.push_back(t[1].text);
    } else if (line.is(0, "lock") && t.size() == 2 && t[1].quoted) {
      config.locks.push_back(pattern(line.number, "lock", t[1].text));
    } else if (line.is(0, "unlock") && t.size() == 2 && t[1].quoted) {
      config.unlocks.push_back(pattern(line.number, "unlock", t[1].text));
    } else {
      throw fail(line.number, "unrecognized directive");
    }
  }
  if (spawn)
    config.spawn = *spawn;
  if (config.locks.empty())
    config.locks.push_back(parsePattern("lock", "mutex_lock(%L)"));
  if (config.unlocks.empty())
    config.unlocks.push_back(parsePattern("unlock", "mutex_unlock(%L)"));
  return config;
}

ThreadConfig loadThreadConfig(const std::string &path) {
  std::string text;
  try {
    text = readFile(path);
  } catch (const Error &e) {
    throw ConfigError(e.what());
  }
  return parseThreadConfig(text, path);
}

ThreadConfig defaultThreadConfig() { return parseThreadConfig("", "<builtin thread config>"); }

std::vector<ThreadEntry> findThreadEntries(const TranslationUnit &unit, const ThreadConfig &config,
                                           std::vector<std::string> *diagnostics) {
  std::map<std::string, ThreadEntry::Origin> found;
  const std::vector<Pattern> spawn{config.spawn};
  for (const auto &cfg : unit.cfgs()) {
    for (const auto &node : cfg.nodes()) {
      if (!node.ast)
        continue;
      for (const auto &m : findMatches(spawn, *node.ast)) {
        const AstNode *f = m.binding.at("F");
        if (f->kind == AstKind::UnaryOp && f->text == "&")
          f = &f->child(0);
        if (f->kind != AstKind::Identifier || !unit.findCfg(f->text)) {
          if (diagnostics)
            diagnostics->push_back(node.location.str() + ": thread function `" + toSource(*f) +
                                   "` is not defined in this unit");
          continue;
        }
        found.try_emplace(f->text, ThreadEntry::Origin::SpawnMatch);
      }
    }
  }
  for (const auto &name : config.entries) {
    if (!unit.findCfg(name)) {
      if (diagnostics)
        diagnostics->push_back("configured entry `" + name + "` is not defined in this unit");
      continue;
    }
    found.try_emplace(name, ThreadEntry::Origin::ConfigListed);
  }
  std::vector<ThreadEntry> out;
  for (const auto &[name, origin] : found)
    out.push_back(ThreadEntry{name, origin});
  if (out.empty()) {
    std::vector<std::string> all = unit.callGraph().functions;
    std::sort(all.begin(), all.end());
    for (const auto &f : all)
      out.push_back(ThreadEntry{f, ThreadEntry::Origin::AllFunctions});
  }
  return out;
}

void LockOrderGraph::merge(const LockOrderGraph &other) {
  for (const auto &[edge, witnesses] : other.edges)
    edges[edge].insert(witnesses.begin(), witnesses.end());
}

std::string lockIdentity(const std::string &expression) {
  if (!expression.empty() && expression.front() == '&')
    return expression.substr(1);
  return expression;
}

namespace {

/// Lock expression -> acquisition sites that may hold it.
using Lockset = std::set<std::pair<std::string, SourceLocation>>;

std::string keyOf(const InstanceMatch &m) {
  auto it = m.values.find("L");
  if (it == m.values.end())
    it = m.values.begin();
  return it == m.values.end() ? std::string() : lockIdentity(it->second);
}

} // namespace

LockOrderGraph buildDependencyGraph(const ThreadEntry &entry, const TranslationUnit &unit,
                                    const ThreadConfig &config) {
  LockOrderGraph graph;
  const Cfg *root = unit.findCfg(entry.function);
  if (!root)
    return graph;
  Supergraph sg(unit, *root, Direction::Forward, true);

  std::vector<Pattern> patterns;
  patterns.insert(patterns.end(), config.locks.begin(), config.locks.end());
  const std::size_t lockCount = patterns.size();
  patterns.insert(patterns.end(), config.unlocks.begin(), config.unlocks.end());

  std::map<ProgramPoint, Lockset> in;
  std::set<ProgramPoint> work{sg.start()};
  in[sg.start()] = {};
  while (!work.empty()) {
    ProgramPoint p = *work.begin();
    work.erase(work.begin());
    Lockset held = in[p];
    const SourceLocation &here = sg.node(p).location;
    for (const auto &m : instanceMatches(patterns, sg, p)) {
      std::string key = keyOf(m);
      const bool isLock = static_cast<std::size_t>(m.pattern - patterns.data()) < lockCount;
      if (isLock) {
        for (const auto &[other, site] : held)
          if (other != key)
            graph.edges[{other, key}].insert(LockWitness{entry.function, site, here});
        held.emplace(key, here);
      } else {
        for (auto it = held.begin(); it != held.end();)
          it = it->first == key ? held.erase(it) : std::next(it);
      }
    }
    for (const auto &step : sg.next(p)) {
      auto [it, fresh] = in.try_emplace(step.point, held);
      bool changed = fresh;
      if (!fresh) {
        auto before = it->second.size();
        it->second.insert(held.begin(), held.end());
        changed = it->second.size() != before;
      }
      if (changed)
        work.insert(step.point);
    }
  }
  return graph;
}

std::vector<std::vector<std::string>>
elementaryCycles(const std::set<std::pair<std::string, std::string>> &edges, std::size_t cap) {
  std::map<std::string, std::vector<std::string>> succ;
  std::set<std::string> nodes;
  for (const auto &[a, b] : edges) {
    succ[a].push_back(b);
    nodes.insert(a);
    nodes.insert(b);
  }
  std::vector<std::vector<std::string>> cycles;
  for (const auto &start : nodes) {
    // only nodes greater than `start`, so each cycle is found once, from
    // its smallest member
    std::vector<std::string> path{start};
    std::set<std::string> onPath{start};
    std::vector<std::size_t> cursor{0};
    while (!path.empty() && cycles.size() < cap) {
      const auto &next = succ[path.back()];
      std::size_t &i = cursor.back();
      if (i >= next.size()) {
        onPath.erase(path.back());
        path.pop_back();
        cursor.pop_back();
        continue;
      }
      const std::string &n = next[i++];
      if (n == start) {
        cycles.push_back(path);
      } else if (n > start && !onPath.count(n)) {
        path.push_back(n);
        onPath.insert(n);
        cursor.push_back(0);
      }
    }
    if (cycles.size() >= cap)
      break;
  }
  return cycles;
}

std::vector<ErrorTrace> detectCycles(const std::vector<LockOrderGraph> &graphs, std::size_t cap) {
  LockOrderGraph combined;
  for (const auto &g : graphs)
    combined.merge(g);
  std::set<std::pair<std::string, std::string>> edges;
  for (const auto &[edge, w] : combined.edges)
    edges.insert(edge);

  std::vector<ErrorTrace> traces;
  for (const auto &cycle : elementaryCycles(edges, cap)) {
    ErrorTrace t;
    t.importance = Importance::Error;
    t.message = "lock order cycle:";
    for (const auto &lock : cycle)
      t.message += " " + lock + " <-";
    t.message += " " + cycle.front();
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const auto &a = cycle[i];
      const auto &b = cycle[(i + 1) % cycle.size()];
      const LockWitness &w = *combined.edges.at({a, b}).begin();
      t.steps.push_back({w.held, a + " acquired in " + w.entry});
      t.steps.push_back({w.acquired, b + " acquired while " + a + " held"});
    }
    traces.push_back(std::move(t));
  }
  return traces;
}

std::vector<ErrorTrace> ThreadChecker::check(const TranslationUnit &unit,
                                             FrameworkServices &services) {
  std::vector<std::string> diagnostics;
  std::vector<LockOrderGraph> graphs;
  for (const auto &entry : findThreadEntries(unit, config_, &diagnostics))
    graphs.push_back(buildDependencyGraph(entry, unit, config_));
  for (auto &d : diagnostics)
    services.diagnostic(std::move(d));
  return detectCycles(graphs);
}

} // namespace cbugscan
