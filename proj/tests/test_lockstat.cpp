#include <gtest/gtest.h>

#include "cbugscan/checkers/lockstat.hpp"
#include "cbugscan/error.hpp"
#include "cbugscan/source.hpp"
#include "oracles/lockset_oracle.hpp"
#include "oracles/path_oracle.hpp"
#include "support/helpers.hpp"
#include "support/random_c.hpp"

using namespace cbugscan;
using testing_support::sourcePath;
using testing_support::unitOf;

namespace {

/// `locked` accesses under the lock and `total - locked` without it,
/// one function per access.
std::string gridProgram(int locked, int total) {
  std::string src = "struct mutex m;\nint v;\n";
  for (int i = 0; i < total; ++i) {
    src += "void f" + std::to_string(i) + "(void)\n{\n";
    if (i < locked)
      src += " mutex_lock(&m);\n v = " + std::to_string(i) + ";\n mutex_unlock(&m);\n";
    else
      src += " v = " + std::to_string(i) + ";\n";
    src += "}\n";
  }
  return src;
}

} // namespace

TEST(LockStatConfig, Ratio) {
  auto r = parseRatio("0.7");
  EXPECT_EQ(r.numerator, 7);
  EXPECT_EQ(r.denominator, 10);
  r = parseRatio("1");
  EXPECT_EQ(r.numerator, r.denominator);
  r = parseRatio("0.75");
  EXPECT_EQ(r.numerator * 4, r.denominator * 3);
  for (const char *bad : {"0", "1.5", "", ".", "abc", "0.7.1", "-0.5"})
    EXPECT_THROW(parseRatio(bad), ConfigError) << bad;
}

TEST(LockStatConfig, ParseAndReject) {
  auto c = parseLockStatConfig("access \"%V = %E\"\nlock \"spin_lock(%L)\" unlock "
                               "\"spin_unlock(%L)\"\nthreshold 0.9\nmin-samples 3\n");
  EXPECT_EQ(c.minSamples, 3);
  EXPECT_EQ(c.threshold.numerator, 9);
  EXPECT_EQ(c.locks.size(), 1u);
  EXPECT_THROW(parseLockStatConfig("lock \"a(%L)\" unlock \"b(%L)\"\n"), ConfigError);
  EXPECT_THROW(parseLockStatConfig("access \"%V = %E\"\n"), ConfigError);
  EXPECT_THROW(parseLockStatConfig("access \"%V = %E\"\nlock \"a(%L)\" unlock \"b(%L)\"\n"
                                   "min-samples 0\n"),
               ConfigError);
  EXPECT_THROW(parseLockStatConfig("access \"%V = %E\"\nlock \"a(%L)\"\n"), ConfigError);
  auto file = loadLockStatConfig(sourcePath("configs/lock.cfg"));
  EXPECT_EQ(file.locks.size(), defaultLockStatConfig().locks.size());
  EXPECT_EQ(file.minSamples, 5);
}

TEST(LockStat, ThresholdGridThroughWholeChecker) {
  auto config = defaultLockStatConfig();
  for (int total = 1; total <= 12; ++total) {
    for (int locked = 0; locked <= total; ++locked) {
      auto u = unitOf(gridProgram(locked, total));
      auto traces = reportImbalance(accumulate(*u, config));
      bool expect = 10 * locked >= 7 * total && locked < total && total >= 5;
      EXPECT_EQ(!traces.empty(), expect) << locked << "/" << total;
      if (expect) {
        EXPECT_EQ(traces.size(), static_cast<std::size_t>(total - locked));
      }
    }
  }
}

TEST(LockStat, NineOfTenFixture) {
  auto path = sourcePath("tests/fixtures/lock_nine_of_ten.c");
  auto u = unitOf(readFile(path), path);
  auto traces = reportImbalance(accumulate(*u, defaultLockStatConfig()));
  ASSERT_EQ(traces.size(), 1u);
  EXPECT_EQ(traces[0].message, "variable hits accessed without lock &stats_lock held; "
                               "&stats_lock held at 9 of 10 accesses");
  EXPECT_EQ(traces[0].location().line, 16);
  ASSERT_EQ(traces[0].steps.size(), 2u);
  EXPECT_EQ(traces[0].steps[0].location.line, 4);
}

TEST(LockStat, MustHoldNotMayHold) {
  auto u = unitOf("void f(int c)\n{\n if (c)\n  mutex_lock(&m);\n v = 1;\n}\n");
  auto events = collectAccesses(*u, defaultLockStatConfig());
  ASSERT_EQ(events.size(), 1u);
  EXPECT_TRUE(events[0].held.empty());
}

TEST(LockStat, HeldSetsMatchPathOracle) {
  std::mt19937 rng(99);
  auto config = defaultLockStatConfig();
  testing_support::RandomBody gen(
      rng, {"mutex_lock(&a);", "mutex_unlock(&a);", "spin_lock(&b);", "spin_unlock(&b);",
            "v = 1;", "w = v;", "v = 2;"});
  int compared = 0;
  for (int trial = 0; trial < 800; ++trial) {
    std::string src = "int f(void)\n{\n" + gen.statements(5) + " return 0;\n}\n";
    auto u = unitOf(src);
    const Cfg &cfg = *u->findCfg("f");
    if (!oracle::loopFree(cfg) || cfg.nodes().size() > 20)
      continue;
    ++compared;
    std::map<oracle::AccessKey, std::set<std::string>> mine;
    std::map<std::pair<std::string, SourceLocation>, int> occurrence;
    for (const auto &e : collectAccesses(*u, config)) {
      int k = occurrence[{e.variable, e.location}]++;
      mine[{e.variable, e.location, k}] = e.held;
    }
    EXPECT_EQ(mine, oracle::mustHold(cfg, config)) << src;
  }
  EXPECT_GT(compared, 300);
}

TEST(LockStat, MinSamplesAndThresholdOverrides) {
  auto config = parseLockStatConfig("access \"%V = %E\"\nlock \"mutex_lock(%L)\" unlock "
                                    "\"mutex_unlock(%L)\"\nthreshold 0.5\nmin-samples 2\n");
  auto u = unitOf(gridProgram(1, 2));
  EXPECT_EQ(reportImbalance(accumulate(*u, config)).size(), 1u);
  EXPECT_TRUE(reportImbalance(accumulate(*u, defaultLockStatConfig())).empty());
}

TEST(LockStat, ImbalancedPredicate) {
  Ratio r{7, 10};
  EXPECT_TRUE(imbalanced(7, 10, r, 5));
  EXPECT_FALSE(imbalanced(6, 10, r, 5));
  EXPECT_FALSE(imbalanced(10, 10, r, 5));
  EXPECT_FALSE(imbalanced(3, 4, r, 5));
  EXPECT_TRUE(imbalanced(99, 100, r, 5));
}
