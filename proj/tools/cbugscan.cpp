// cbugscan command-line driver.

#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "cbugscan/checker.hpp"
#include "cbugscan/error.hpp"
#include "cbugscan/job.hpp"
#include "cbugscan/pointsto.hpp"
#include "cbugscan/report.hpp"
#include "cbugscan/unit.hpp"

using namespace cbugscan;

namespace {

int runCheck(const std::vector<std::string> &args) {
  CheckerRegistry registry;
  registerBuiltinCheckers(registry);
  AnalysisJob job = buildJob(args, registry);
  UnitManager units(job.sources, job.memoryBudgetUnits, job.preprocessCommand);
  JobResult result = runJob(job, registry, units);
  for (const auto &d : result.diagnostics)
    std::cerr << "cbugscan: " << d << "\n";
  std::string text = exportTraces(result.traces, job.outputFormat);
  if (job.outputPath) {
    std::ofstream out(*job.outputPath, std::ios::binary);
    if (!out)
      throw ConfigError("cannot write " + *job.outputPath);
    out << text;
  } else {
    std::cout << text;
  }
  return 0;
}

std::shared_ptr<const TranslationUnit> loadUnit(const std::string &path) {
  return buildUnit(readFile(path), path);
}

int runReport(const std::string &db) {
  auto traces = parseTracesJson(readFile(db));
  TriageDb triage(TriageDb::journalFor(db));
  applyTriage(traces, triage);
  std::cout << renderStatistics(computeStatistics(traces));
  return 0;
}

int runTriage(const std::string &db, const std::string &id, const std::string &status) {
  Triage t = parseTriage(status);
  if (t == Triage::Unclassified)
    throw ConfigError("status must be real or false-positive");
  auto traces = parseTracesJson(readFile(db));
  bool known = std::any_of(traces.begin(), traces.end(),
                           [&](const ErrorTrace &e) { return e.id == id; });
  if (!known)
    std::cerr << "cbugscan: warning: error id " << id << " is not in " << db
              << "; recording anyway\n";
  TriageDb(TriageDb::journalFor(db)).mark(id, t);
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!args.empty() && args.front() == "check") {
    try {
      return runCheck(args);
    } catch (const Error &e) {
      std::cerr << "cbugscan: " << e.what() << "\n";
      return 2;
    }
  }

  CLI::App app{"Static bug finder for a C subset"};
  app.require_subcommand(1);

  app.add_subcommand("check", "analyse sources (see `cbugscan check --help`)")
      ->allow_extras();

  std::string file;
  auto *dumpAstCmd = app.add_subcommand("dump-ast", "print the syntax tree");
  dumpAstCmd->add_option("file", file)->required();

  std::string function;
  auto *dumpCfgCmd = app.add_subcommand("dump-cfg", "print control flow graphs as DOT");
  dumpCfgCmd->add_option("file", file)->required();
  dumpCfgCmd->add_option("--function", function, "only this function");

  int k = 0;
  auto *dumpPtsCmd = app.add_subcommand("dump-pointsto", "print may-points-to sets");
  dumpPtsCmd->add_option("file", file)->required();
  dumpPtsCmd->add_option("-k", k, "category count (0 = unification only)");

  std::string db;
  auto *reportCmd = app.add_subcommand("report", "statistics for a JSON report");
  reportCmd->add_option("db", db, "report produced with --format json")->required();

  std::string id, status;
  auto *triageCmd = app.add_subcommand("triage", "classify a reported error");
  triageCmd->add_option("db", db)->required();
  triageCmd->add_option("id", id)->required();
  triageCmd->add_option("status", status, "real|false-positive")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }

  try {
    if (*dumpAstCmd) {
      std::cout << dumpAst(loadUnit(file)->ast());
    } else if (*dumpCfgCmd) {
      auto unit = loadUnit(file);
      if (!function.empty()) {
        const Cfg *cfg = unit->findCfg(function);
        if (!cfg)
          throw ConfigError("no function '" + function + "' in " + file);
        std::cout << cfgToDot(*cfg);
      } else {
        for (const auto &cfg : unit->cfgs())
          std::cout << cfgToDot(cfg);
      }
    } else if (*dumpPtsCmd) {
      auto unit = loadUnit(file);
      auto cs = collectConstraints(*unit);
      auto result = k > 0 ? shapiroHorowitz(cs.constraints, cs.variables.size(), k)
                          : steensgaard(cs.constraints);
      std::cout << dumpPointsTo(result, cs.variables);
    } else if (*reportCmd) {
      return runReport(db);
    } else if (*triageCmd) {
      return runTriage(db, id, status);
    }
  } catch (const Error &e) {
    std::cerr << "cbugscan: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
