#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cbugscan/location.hpp"

namespace cbugscan {

enum class Importance { Warning, Error };
enum class Triage { Unclassified, RealBug, FalsePositive };
enum class ReportFormat { Json, Xml, Console };

std::string_view importanceName(Importance importance);
Importance parseImportance(std::string_view text);
/// "unclassified", "real", "false-positive".
std::string_view triageName(Triage triage);
/// Accepts the names above; throws ConfigError otherwise.
Triage parseTriage(std::string_view text);
ReportFormat parseReportFormat(std::string_view text);

struct TraceStep {
  SourceLocation location;
  std::string description;

  bool operator==(const TraceStep &) const = default;
};

/// An annotated path demonstrating one finding. The last step is the
/// finding's primary location.
struct ErrorTrace {
  std::string id;
  std::string checker;
  Importance importance = Importance::Error;
  std::string message;
  std::vector<TraceStep> steps;
  Triage triage = Triage::Unclassified;

  const SourceLocation &location() const;
  bool operator==(const ErrorTrace &) const = default;
};

/// 64-bit FNV-1a over checker, message and step locations, as 16 hex digits.
std::string traceId(const ErrorTrace &trace);

/// Orders by primary file, line, checker, then id.
void sortTraces(std::vector<ErrorTrace> &traces);

std::string exportTraces(const std::vector<ErrorTrace> &traces, ReportFormat format);
/// Inverse of the JSON export. Throws ConfigError on malformed input.
std::vector<ErrorTrace> parseTracesJson(std::string_view text);

/// Append-only triage journal stored next to a report as `<report>.triage`,
/// one `id<TAB>status<TAB>epoch-seconds` line per mark. Appends take an
/// exclusive flock; the latest mark for an id wins on replay.
class TriageDb {
public:
  struct Entry {
    Triage status = Triage::Unclassified;
    std::int64_t timestamp = 0;
  };

  explicit TriageDb(std::filesystem::path journal);
  static std::filesystem::path journalFor(const std::filesystem::path &report);

  void mark(const std::string &id, Triage status);
  void mark(const std::string &id, Triage status, std::int64_t timestamp);
  /// Re-reads the journal from disk.
  void reload();

  Triage status(const std::string &id) const;
  const std::map<std::string, Entry> &entries() const { return entries_; }
  const std::filesystem::path &path() const { return journal_; }

private:
  std::filesystem::path journal_;
  std::map<std::string, Entry> entries_;
};

void applyTriage(std::vector<ErrorTrace> &traces, const TriageDb &db);

struct CheckerStats {
  std::string checker;
  long found = 0;
  long real = 0;
  long falsePositive = 0;
  long unclassified = 0;
};

struct MessageCount {
  std::string checker;
  std::string message;
  long count = 0;
};

struct Statistics {
  std::vector<CheckerStats> perChecker;
  CheckerStats overall;
  std::vector<MessageCount> messages;
};

/// real / (real + falsePositive) as a percentage with one decimal, rounded
/// half up, e.g. "46.2%"; "n/a" when nothing is classified.
std::string formatRatio(long real, long falsePositive);

/// Triage status is read from each trace (see applyTriage).
Statistics computeStatistics(const std::vector<ErrorTrace> &traces);
std::string renderStatistics(const Statistics &stats);

} // namespace cbugscan
