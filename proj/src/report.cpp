#include "cbugscan/report.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "cbugscan/error.hpp"

namespace cbugscan {

std::string_view importanceName(Importance importance) {
  return importance == Importance::Error ? "error" : "warning";
}

Importance parseImportance(std::string_view text) {
  if (text == "error")
    return Importance::Error;
  if (text == "warning")
    return Importance::Warning;
  throw ConfigError("unknown importance '" + std::string(text) + "' (expected error|warning)");
}

std::string_view triageName(Triage triage) {
  switch (triage) {
  case Triage::RealBug:
    return "real";
  case Triage::FalsePositive:
    return "false-positive";
  default:
    return "unclassified";
  }
}

Triage parseTriage(std::string_view text) {
  if (text == "real")
    return Triage::RealBug;
  if (text == "false-positive")
    return Triage::FalsePositive;
  if (text == "unclassified")
    return Triage::Unclassified;
  throw ConfigError("unknown triage status '" + std::string(text) +
                    "' (expected real|false-positive)");
}

ReportFormat parseReportFormat(std::string_view text) {
  if (text == "json")
    return ReportFormat::Json;
  if (text == "xml")
    return ReportFormat::Xml;
  if (text == "console")
    return ReportFormat::Console;
  throw ConfigError("unknown format '" + std::string(text) + "' (expected json|xml|console)");
}

const SourceLocation &ErrorTrace::location() const {
  if (steps.empty())
    throw Error("error trace without steps");
  return steps.back().location;
}

std::string traceId(const ErrorTrace &trace) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff; // field separator
    h *= 0x100000001b3ULL;
  };
  feed(trace.checker);
  feed(trace.message);
  for (const auto &s : trace.steps)
    feed(s.location.str());
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

void sortTraces(std::vector<ErrorTrace> &traces) {
  std::stable_sort(traces.begin(), traces.end(), [](const ErrorTrace &a, const ErrorTrace &b) {
    const auto &la = a.location();
    const auto &lb = b.location();
    return std::tie(la.file, la.line, a.checker, a.id) <
           std::tie(lb.file, lb.line, b.checker, b.id);
  });
}

// ---- export -----------------------------------------------------------------

namespace {

nlohmann::json toJson(const ErrorTrace &t) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto &s : t.steps)
    steps.push_back({{"file", s.location.file},
                     {"line", s.location.line},
                     {"col", s.location.column},
                     {"description", s.description}});
  return {{"id", t.id},
          {"checker", t.checker},
          {"importance", importanceName(t.importance)},
          {"message", t.message},
          {"steps", steps},
          {"triage", triageName(t.triage)}};
}

std::string xmlEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&':
      out += "&amp;";
      break;
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '"':
      out += "&quot;";
      break;
    default:
      out += c;
    }
  }
  return out;
}

std::string exportXml(const std::vector<ErrorTrace> &traces) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<errors>\n";
  for (const auto &t : traces) {
    out += "  <error checker=\"" + xmlEscape(t.checker) + "\" importance=\"" +
           std::string(importanceName(t.importance)) + "\" id=\"" + xmlEscape(t.id) +
           "\" triage=\"" + std::string(triageName(t.triage)) + "\">\n";
    out += "    <msg>" + xmlEscape(t.message) + "</msg>\n";
    for (const auto &s : t.steps)
      out += "    <step file=\"" + xmlEscape(s.location.file) + "\" line=\"" +
             std::to_string(s.location.line) + "\" col=\"" + std::to_string(s.location.column) +
             "\">" + xmlEscape(s.description) + "</step>\n";
    out += "  </error>\n";
  }
  return out + "</errors>\n";
}

std::string exportConsole(const std::vector<ErrorTrace> &traces) {
  std::string out;
  for (const auto &t : traces) {
    std::string head = t.importance == Importance::Error ? "ERROR" : "WARNING";
    const auto &loc = t.location();
    out += head + " [" + t.checker + "] " + t.message + " (" + loc.file + ":" +
           std::to_string(loc.line) + ")\n";
    for (const auto &s : t.steps)
      out += "    " + s.location.str() + ": " + s.description + "\n";
  }
  return out;
}

} // namespace

std::string exportTraces(const std::vector<ErrorTrace> &traces, ReportFormat format) {
  switch (format) {
  case ReportFormat::Json: {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto &t : traces)
      doc.push_back(toJson(t));
    return doc.dump(2) + "\n";
  }
  case ReportFormat::Xml:
    return exportXml(traces);
  case ReportFormat::Console:
    return exportConsole(traces);
  }
  return {};
}

std::vector<ErrorTrace> parseTracesJson(std::string_view text) {
  std::vector<ErrorTrace> out;
  try {
    auto doc = nlohmann::json::parse(text);
    if (!doc.is_array())
      throw ConfigError("report: expected a JSON array");
    for (const auto &e : doc) {
      ErrorTrace t;
      t.id = e.at("id").get<std::string>();
      t.checker = e.at("checker").get<std::string>();
      t.importance = parseImportance(e.at("importance").get<std::string>());
      t.message = e.at("message").get<std::string>();
      t.triage = parseTriage(e.value("triage", std::string("unclassified")));
      for (const auto &s : e.at("steps")) {
        TraceStep step;
        step.location.file = s.at("file").get<std::string>();
        step.location.line = s.at("line").get<int>();
        step.location.column = s.at("col").get<int>();
        step.description = s.at("description").get<std::string>();
        t.steps.push_back(std::move(step));
      }
      if (t.steps.empty())
        throw ConfigError("report: trace " + t.id + " has no steps");
      out.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(std::string("report: ") + e.what());
  }
  return out;
}

// ---- triage -----------------------------------------------------------------

TriageDb::TriageDb(std::filesystem::path journal) : journal_(std::move(journal)) { reload(); }

std::filesystem::path TriageDb::journalFor(const std::filesystem::path &report) {
  return report.string() + ".triage";
}

void TriageDb::reload() {
  entries_.clear();
  std::ifstream in(journal_);
  if (!in)
    return;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty())
      continue;
    std::istringstream fields(line);
    std::string id, status, stamp;
    if (!std::getline(fields, id, '\t') || !std::getline(fields, status, '\t') ||
        !std::getline(fields, stamp))
      throw ConfigError(journal_.string() + ":" + std::to_string(number) +
                        ": malformed triage record");
    entries_[id] = Entry{parseTriage(status), std::stoll(stamp)};
  }
}

void TriageDb::mark(const std::string &id, Triage status) {
  auto now = std::chrono::duration_cast<std::chrono::seconds>(
                 std::chrono::system_clock::now().time_since_epoch())
                 .count();
  mark(id, status, static_cast<std::int64_t>(now));
}

void TriageDb::mark(const std::string &id, Triage status, std::int64_t timestamp) {
  if (id.empty() || id.find_first_of("\t\n") != std::string::npos)
    throw ConfigError("invalid error id");
  int fd = ::open(journal_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0)
    throw Error("cannot open " + journal_.string() + ": " + std::strerror(errno));
  if (::flock(fd, LOCK_EX) != 0) {
    ::close(fd);
    throw Error("cannot lock " + journal_.string());
  }
  std::string record =
      id + "\t" + std::string(triageName(status)) + "\t" + std::to_string(timestamp) + "\n";
  ssize_t written = ::write(fd, record.data(), record.size());
  ::flock(fd, LOCK_UN);
  ::close(fd);
  if (written != static_cast<ssize_t>(record.size()))
    throw Error("short write to " + journal_.string());
  entries_[id] = Entry{status, timestamp};
}

Triage TriageDb::status(const std::string &id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? Triage::Unclassified : it->second.status;
}

void applyTriage(std::vector<ErrorTrace> &traces, const TriageDb &db) {
  for (auto &t : traces)
    t.triage = db.status(t.id);
}

// ---- statistics -------------------------------------------------------------

std::string formatRatio(long real, long falsePositive) {
  long classified = real + falsePositive;
  if (classified <= 0)
    return "n/a";
  long tenths = (real * 2000 + classified) / (2 * classified);
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
}

Statistics computeStatistics(const std::vector<ErrorTrace> &traces) {
  std::map<std::string, CheckerStats> byChecker;
  std::map<std::pair<std::string, std::string>, long> byMessage;
  Statistics stats;
  stats.overall.checker = "Overall";
  for (const auto &t : traces) {
    auto &c = byChecker[t.checker];
    c.checker = t.checker;
    for (CheckerStats *s : {&c, &stats.overall}) {
      ++s->found;
      switch (t.triage) {
      case Triage::RealBug:
        ++s->real;
        break;
      case Triage::FalsePositive:
        ++s->falsePositive;
        break;
      case Triage::Unclassified:
        ++s->unclassified;
        break;
      }
    }
    ++byMessage[{t.checker, t.message}];
  }
  for (auto &[name, c] : byChecker)
    stats.perChecker.push_back(c);
  for (const auto &[key, n] : byMessage)
    stats.messages.push_back(MessageCount{key.first, key.second, n});
  std::stable_sort(stats.messages.begin(), stats.messages.end(),
                   [](const MessageCount &a, const MessageCount &b) { return a.count > b.count; });
  return stats;
}

std::string renderStatistics(const Statistics &stats) {
  std::ostringstream out;
  auto row = [&out](const CheckerStats &c) {
    out << std::left << std::setw(20) << c.checker << std::right << std::setw(7) << c.found
        << std::setw(7) << c.real << std::setw(7) << c.falsePositive << std::setw(8)
        << c.unclassified << std::setw(9) << formatRatio(c.real, c.falsePositive) << "\n";
  };
  out << std::left << std::setw(20) << "checker" << std::right << std::setw(7) << "found"
      << std::setw(7) << "real" << std::setw(7) << "fp" << std::setw(8) << "unclass"
      << std::setw(9) << "ratio" << "\n";
  for (const auto &c : stats.perChecker)
    row(c);
  row(stats.overall);
  if (!stats.messages.empty()) {
    out << "\nmessage frequency\n";
    for (const auto &m : stats.messages)
      out << std::setw(6) << m.count << "  [" << m.checker << "] " << m.message << "\n";
  }
  return out.str();
}

} // namespace cbugscan
