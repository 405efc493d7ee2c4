#include <gtest/gtest.h>

#include <filesystem>

#include "cbugscan/checker.hpp"
#include "cbugscan/job.hpp"
#include "cbugscan/source.hpp"

using namespace cbugscan;

TEST(Golden, CorpusReportMatchesFrozenJson) {
  std::filesystem::current_path(CBUGSCAN_SOURCE_DIR);
  CheckerRegistry registry;
  registerBuiltinCheckers(registry);
  AnalysisJob job = buildJob({"check", "--dir", "corpus", "--checker", "automaton", "--checker",
                              "lock", "--checker", "thread", "--checker", "reach"},
                             registry);
  UnitManager units(job.sources, 2);
  auto result = runJob(job, registry, units);
  EXPECT_TRUE(result.diagnostics.empty());
  EXPECT_EQ(exportTraces(result.traces, ReportFormat::Json),
            readFile("tests/golden/corpus.json"));
}

TEST(Golden, TraceIdsInjectiveOverCorpus) {
  auto traces = parseTracesJson(readFile(std::string(CBUGSCAN_SOURCE_DIR) +
                                         "/tests/golden/corpus.json"));
  std::set<std::string> ids;
  for (const auto &t : traces)
    EXPECT_TRUE(ids.insert(t.id).second) << t.id;
  EXPECT_FALSE(traces.empty());
}
