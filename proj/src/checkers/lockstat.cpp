#include "cbugscan/checkers/lockstat.hpp"

#include <cctype>
#include <optional>

#include "cbugscan/error.hpp"
#include "cbugscan/line_config.hpp"
#include "cbugscan/traverse.hpp"

namespace cbugscan {

const char *const kDefaultLockStatConfigText = R"cfg(access "%V = %E"
lock "mutex_lock(%L)" unlock "mutex_unlock(%L)"
lock "spin_lock(%L)" unlock "spin_unlock(%L)"
threshold 0.7
min-samples 5
)cfg";

Ratio parseRatio(std::string_view text) {
  Ratio r{0, 1};
  bool dot = false;
  bool digits = false;
  for (char c : text) {
    if (c == '.' && !dot) {
      dot = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c)) || r.denominator > 100000000)
      throw ConfigError("invalid threshold '" + std::string(text) + "'");
    digits = true;
    r.numerator = r.numerator * 10 + (c - '0');
    if (dot)
      r.denominator *= 10;
  }
  if (!digits || r.numerator <= 0 || r.numerator > r.denominator)
    throw ConfigError("threshold must lie in (0, 1], got '" + std::string(text) + "'");
  return r;
}

LockStatConfig parseLockStatConfig(std::string_view text, std::string_view origin) {
  LockStatConfig config;
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
    if (line.is(0, "access") && t.size() == 2 && t[1].quoted) {
      config.accesses.push_back(pattern(line.number, "access", t[1].text));
    } else if (line.is(0, "lock") && t.size() == 4 && t[1].quoted && line.is(2, "unlock") &&
               t[3].quoted) {
      config.locks.push_back(LockPatternPair{pattern(line.number, "lock", t[1].text),
                                             pattern(line.number, "unlock", t[3].text)});
    } else if (line.is(0, "threshold") && t.size() == 2 && !t[1].quoted) {
      try {
        config.threshold = parseRatio(t[1].text);
      } catch (const ConfigError &e) {
        throw fail(line.number, e.what());
      }
    } else if (line.is(0, "min-samples") && t.size() == 2 && !t[1].quoted) {
      try {
        std::size_t used = 0;
        config.minSamples = std::stol(t[1].text, &used);
        if (used != t[1].text.size() || config.minSamples < 1)
          throw std::invalid_argument("range");
      } catch (const std::logic_error &) {
        throw fail(line.number, "min-samples must be a positive integer");
      }
    } else {
      throw fail(line.number, "unrecognized directive");
    }
  }
  if (config.accesses.empty())
    throw ConfigError(std::string(origin) + ": no access pattern");
  if (config.locks.empty())
    throw ConfigError(std::string(origin) + ": no lock/unlock pattern pair");
  return config;
}

LockStatConfig loadLockStatConfig(const std::string &path) {
  std::string text;
  try {
    text = readFile(path);
  } catch (const Error &e) {
    throw ConfigError(e.what());
  }
  return parseLockStatConfig(text, path);
}

LockStatConfig defaultLockStatConfig() {
  return parseLockStatConfig(kDefaultLockStatConfigText, "<builtin lock config>");
}

namespace {

/// Bound values joined in metavariable order, so `lock(%L)` and
/// `unlock(%X)` on the same expression agree.
std::string lockKey(const Binding &b) {
  std::string key;
  for (const auto &[name, node] : b) {
    if (!key.empty())
      key += ", ";
    key += toSource(*node);
  }
  return key;
}

std::string variableKey(const Binding &b) {
  auto it = b.find("V");
  if (it == b.end())
    it = b.begin();
  return it == b.end() ? std::string() : toSource(*it->second);
}

enum class EventKind { Lock, Unlock, Access };

struct NodeEvent {
  EventKind kind;
  std::string key;
};

class FunctionScan {
public:
  FunctionScan(const Cfg &cfg, const LockStatConfig &config) : cfg_(cfg) {
    for (const auto &p : config.accesses)
      patterns_.push_back(p);
    for (const auto &pair : config.locks) {
      patterns_.push_back(pair.lock);
      kinds_.push_back(EventKind::Lock);
      patterns_.push_back(pair.unlock);
      kinds_.push_back(EventKind::Unlock);
    }
    accessCount_ = config.accesses.size();
    for (const auto &node : cfg.nodes())
      events_[node.id] = eventsOf(node);
  }

  void run(std::vector<AccessEvent> &out) {
    using Held = std::optional<std::set<std::string>>; // nullopt = not yet reached
    std::map<int, Held> in;
    for (const auto &node : cfg_.nodes())
      in[node.id] = std::nullopt;
    in[cfg_.entry()] = std::set<std::string>{};
    std::set<int> work{cfg_.entry()};
    while (!work.empty()) {
      int id = *work.begin();
      work.erase(work.begin());
      auto held = *in[id];
      apply(id, held, nullptr);
      for (const auto &e : cfg_.successors(id)) {
        auto &target = in[e.target];
        std::set<std::string> next;
        if (!target) {
          next = held;
        } else {
          for (const auto &k : *target)
            if (held.count(k))
              next.insert(k);
          if (next == *target)
            continue;
        }
        target = std::move(next);
        work.insert(e.target);
      }
    }
    for (const auto &node : cfg_.nodes()) {
      if (!in[node.id])
        continue;
      auto held = *in[node.id];
      apply(node.id, held, &out);
    }
  }

private:
  std::vector<NodeEvent> eventsOf(const CfgNode &node) const {
    std::vector<NodeEvent> events;
    if (!node.ast)
      return events;
    for (const auto &m : findMatches(patterns_, *node.ast)) {
      std::size_t index = static_cast<std::size_t>(m.pattern - patterns_.data());
      if (index < accessCount_)
        events.push_back({EventKind::Access, variableKey(m.binding)});
      else
        events.push_back({kinds_[index - accessCount_], lockKey(m.binding)});
    }
    return events;
  }

  void apply(int id, std::set<std::string> &held, std::vector<AccessEvent> *out) const {
    for (const auto &e : events_.at(id)) {
      switch (e.kind) {
      case EventKind::Lock:
        held.insert(e.key);
        break;
      case EventKind::Unlock:
        held.erase(e.key);
        break;
      case EventKind::Access:
        if (out)
          out->push_back(AccessEvent{e.key, cfg_.node(id).location, held});
        break;
      }
    }
  }

  const Cfg &cfg_;
  std::vector<Pattern> patterns_;
  std::vector<EventKind> kinds_;
  std::size_t accessCount_ = 0;
  std::map<int, std::vector<NodeEvent>> events_;
};

} // namespace

std::vector<AccessEvent> collectAccesses(const TranslationUnit &unit,
                                         const LockStatConfig &config) {
  std::vector<AccessEvent> events;
  for (const auto &cfg : unit.cfgs())
    FunctionScan(cfg, config).run(events);
  return events;
}

AccessStats accumulate(const std::vector<AccessEvent> &events, const LockStatConfig &config) {
  AccessStats stats;
  stats.threshold = config.threshold;
  stats.minSamples = config.minSamples;
  std::map<std::string, std::set<std::string>> locksOf;
  for (const auto &e : events)
    locksOf[e.variable].insert(e.held.begin(), e.held.end());
  for (const auto &e : events) {
    for (const auto &lock : locksOf[e.variable]) {
      auto &s = stats.pairs[{e.variable, lock}];
      ++s.total;
      if (e.held.count(lock)) {
        ++s.locked;
        s.lockedSites.push_back(e.location);
      } else {
        s.unlockedSites.push_back(e.location);
      }
    }
  }
  return stats;
}

AccessStats accumulate(const TranslationUnit &unit, const LockStatConfig &config) {
  return accumulate(collectAccesses(unit, config), config);
}

bool imbalanced(long locked, long total, const Ratio &threshold, long minSamples) {
  return total >= minSamples && locked < total &&
         locked * threshold.denominator >= threshold.numerator * total;
}

std::vector<ErrorTrace> reportImbalance(const AccessStats &stats) {
  std::vector<ErrorTrace> traces;
  for (const auto &[key, s] : stats.pairs) {
    if (!imbalanced(s.locked, s.total, stats.threshold, stats.minSamples))
      continue;
    const auto &[variable, lock] = key;
    const std::string message = "variable " + variable + " accessed without lock " + lock +
                                " held; " + lock + " held at " + std::to_string(s.locked) +
                                " of " + std::to_string(s.total) + " accesses";
    for (const auto &site : s.unlockedSites) {
      ErrorTrace t;
      t.importance = Importance::Error;
      t.message = message;
      if (!s.lockedSites.empty())
        t.steps.push_back({s.lockedSites.front(), variable + " accessed with " + lock + " held"});
      t.steps.push_back({site, variable + " accessed without " + lock});
      traces.push_back(std::move(t));
    }
  }
  return traces;
}

} // namespace cbugscan
