#include <gtest/gtest.h>

#include <random>

#include "cbugscan/checkers/reach.hpp"
#include "cbugscan/source.hpp"
#include "oracles/reach_oracle.hpp"
#include "support/helpers.hpp"

using namespace cbugscan;
using testing_support::sourcePath;
using testing_support::unitOf;

namespace {

std::vector<std::pair<Importance, int>> summary(const std::vector<ErrorTrace> &traces) {
  std::vector<std::pair<Importance, int>> out;
  for (const auto &t : traces)
    out.emplace_back(t.importance, t.location().line);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

TEST(Reach, AfterReturn) {
  auto u = unitOf("void f(void)\n{\n return;\n x = 1;\n}\n");
  auto traces = checkReachability(*u);
  ASSERT_EQ(traces.size(), 1u);
  EXPECT_EQ(traces[0].message, "unreachable code in f");
  EXPECT_EQ(traces[0].location().line, 4);
}

TEST(Reach, SemicolonAfterIf) {
  auto u = unitOf("void f(int cond)\n{\n if (cond);\n return;\n x = 1;\n}\n");
  EXPECT_EQ(summary(checkReachability(*u)),
            (std::vector<std::pair<Importance, int>>{{Importance::Warning, 3},
                                                     {Importance::Error, 5}}));
}

TEST(Reach, InfiniteLoop) {
  auto u = unitOf("void f(void)\n{\n while (1) { }\n x = 1;\n}\n");
  EXPECT_EQ(summary(checkReachability(*u)),
            (std::vector<std::pair<Importance, int>>{{Importance::Error, 4}}));
}

TEST(Reach, ConsecutiveStatementsCollapse) {
  auto u = unitOf("int f(void)\n{\n return 0;\n a = 1;\n b = 2;\n c = 3;\n}\n");
  EXPECT_EQ(summary(checkReachability(*u)),
            (std::vector<std::pair<Importance, int>>{{Importance::Error, 4}}));
}

TEST(Reach, SemicolonBodiesOfEveryConstruct) {
  auto u = unitOf("void f(int c)\n{\n if (c) x = 1; else;\n while (c);\n"
                  " for (c = 0; c < 2; c = c + 1);\n}\n");
  auto traces = checkReachability(*u);
  std::set<std::string> messages;
  for (const auto &t : traces) {
    EXPECT_EQ(t.importance, Importance::Warning);
    messages.insert(t.message);
  }
  EXPECT_EQ(messages, (std::set<std::string>{"superfluous semicolon after else",
                                             "superfluous semicolon after while",
                                             "superfluous semicolon after for"}));
}

TEST(Reach, CleanFixtureHasNoReports) {
  auto path = sourcePath("tests/fixtures/pciehp_balanced.c");
  EXPECT_TRUE(checkReachability(*unitOf(readFile(path), path)).empty());
}

TEST(Reach, RunsMatchOracleOnRandomPrograms) {
  std::mt19937 rng(3);
  auto stmt = [&](auto &&self, int depth) -> std::string {
    switch (std::uniform_int_distribution<int>(0, depth > 2 ? 2 : 8)(rng)) {
    case 0:
    case 1:
      return "x = x + 1;";
    case 2:
      return "return x;";
    case 3:
      return "if (x) { " + self(self, depth + 1) + " " + self(self, depth + 1) + " }";
    case 4:
      return "while (x) { " + self(self, depth + 1) + " " + self(self, depth + 1) + " }";
    case 5:
      return "while (1) { " + self(self, depth + 1) + " }";
    case 6:
      return "while (x) { " + self(self, depth + 1) + " break; " + self(self, depth + 1) + " }";
    case 7:
      return "if (0) { " + self(self, depth + 1) + " }";
    default:
      return "goto L" + std::to_string(depth) + "; " + self(self, depth + 1) + " L" +
             std::to_string(depth) + ": x = 0;";
    }
  };
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::string body;
    for (int i = 0; i < 3; ++i)
      body += stmt(stmt, 10 * i) + "\n";
    std::string src = "int f(int x)\n{\n" + body + " return 0;\n}\n";
    std::shared_ptr<const TranslationUnit> u;
    try {
      u = unitOf(src);
    } catch (const std::exception &) {
      continue; // duplicate label from the generator
    }
    ++checked;
    const Cfg &cfg = *u->findCfg("f");
    auto answer = oracle::unreachableRuns(cfg);
    std::set<int> reportedRuns;
    std::size_t errors = 0;
    for (const auto &t : checkReachability(*u)) {
      if (t.importance != Importance::Error)
        continue;
      ++errors;
      int anchor = -1;
      for (int n : answer.unreachable)
        if (cfg.node(n).location == t.location())
          anchor = n;
      ASSERT_NE(anchor, -1) << src;
      EXPECT_TRUE(reportedRuns.insert(answer.runOf.at(anchor)).second) << src;
    }
    EXPECT_EQ(errors, answer.runCount()) << src;
  }
  EXPECT_GT(checked, 400);
}

TEST(Reach, WhitespaceDoesNotChangeCounts) {
  std::string src = "int f(int c)\n{\n if (c);\n return 1;\n c = 2;\n while (c) { c = c - 1; }\n}\n";
  auto base = checkReachability(*unitOf(src)).size();
  std::mt19937 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::string fuzzed;
    for (char ch : src) {
      fuzzed += ch;
      if (ch == ';' || ch == '{' || ch == ')')
        fuzzed += std::string(std::uniform_int_distribution<std::size_t>(0, 3)(rng),
                              std::uniform_int_distribution<int>(0, 1)(rng) ? ' ' : '\n');
    }
    EXPECT_EQ(checkReachability(*unitOf(fuzzed)).size(), base) << fuzzed;
  }
}
