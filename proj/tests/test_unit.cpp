#include <gtest/gtest.h>

#include "cbugscan/error.hpp"
#include "cbugscan/unit.hpp"
#include "support/helpers.hpp"

using namespace cbugscan;
using testing_support::TempDir;
using testing_support::unitOf;

TEST(Unit, CallGraphEdges) {
  auto u = unitOf("void leaf(void) { }\n"
                  "void mid(void) { leaf(); ext(); }\n"
                  "void top(struct ops *o) { mid(); o->run(); }\n");
  const auto &cg = u->callGraph();
  EXPECT_EQ(cg.functions, (std::vector<std::string>{"leaf", "mid", "top"}));
  std::vector<std::tuple<std::string, std::string, bool>> edges;
  for (const auto &e : cg.edges)
    edges.emplace_back(e.caller, e.callee, e.external);
  EXPECT_EQ(edges, (std::vector<std::tuple<std::string, std::string, bool>>{
                       {"mid", "leaf", false},
                       {"mid", "ext", true},
                       {"top", "mid", false},
                       {"top", "<indirect>", true}}));
}

TEST(Unit, FindCfgAndNodeOwner) {
  auto u = unitOf("void a(void) { x = 1; }\nvoid b(void) { y = 1; }\n");
  const Cfg *b = u->findCfg("b");
  ASSERT_NE(b, nullptr);
  EXPECT_EQ(u->findCfg("c"), nullptr);
  EXPECT_EQ(&u->cfgOfNode(b->entry()), b);
}

class UnitManagerTest : public ::testing::Test {
protected:
  void SetUp() override {
    for (int i = 0; i < 4; ++i)
      paths.push_back(dir.file("u" + std::to_string(i) + ".c",
                               "void f" + std::to_string(i) + "(void) { }\n"));
  }
  std::vector<SourceDescriptor> sources() const {
    std::vector<SourceDescriptor> out;
    for (const auto &p : paths)
      out.push_back(SourceDescriptor{p, {}, PreprocessMode::None});
    return out;
  }
  TempDir dir;
  std::vector<std::string> paths;
};

TEST_F(UnitManagerTest, BudgetOneKeepsOneResident) {
  UnitManager m(sources(), 1);
  for (const auto &p : paths)
    m.getUnit(p);
  EXPECT_EQ(m.residentCount(), 1u);
  EXPECT_EQ(m.maxResident(), 1u);
  EXPECT_EQ(m.residentPaths(), std::vector<std::string>{paths.back()});
  EXPECT_EQ(m.pipelineRuns(), 4u);
}

TEST_F(UnitManagerTest, LruOrderAndRebuildAfterEviction) {
  UnitManager m(sources(), 2);
  m.getUnit(paths[0]);
  m.getUnit(paths[1]);
  m.getUnit(paths[0]); // refresh
  m.getUnit(paths[2]); // evicts paths[1]
  EXPECT_EQ(m.residentPaths(), (std::vector<std::string>{paths[2], paths[0]}));
  EXPECT_EQ(m.pipelineRuns(), 3u);
  m.getUnit(paths[1]);
  EXPECT_EQ(m.pipelineRuns(), 4u);
}

TEST_F(UnitManagerTest, HeldUnitOutlivesEviction) {
  UnitManager m(sources(), 1);
  auto held = m.getUnit(paths[0]);
  m.getUnit(paths[1]);
  EXPECT_EQ(held->callGraph().functions, std::vector<std::string>{"f0"});
}

TEST_F(UnitManagerTest, UnlimitedNeverEvicts) {
  UnitManager m(sources(), std::nullopt);
  for (const auto &p : paths)
    m.getUnit(p);
  EXPECT_EQ(m.residentCount(), 4u);
  EXPECT_TRUE(m.evictIfNeeded().empty());
}

TEST_F(UnitManagerTest, RejectsZeroBudgetAndUnknownPath) {
  EXPECT_THROW(UnitManager(sources(), 0), ConfigError);
  UnitManager m(sources(), 1);
  EXPECT_THROW(m.getUnit("/elsewhere.c"), Error);
}

TEST_F(UnitManagerTest, RebuiltUnitIsEquivalent) {
  UnitManager m(sources(), 1);
  auto first = m.getUnit(paths[0]);
  std::string before = dumpAst(first->ast());
  first.reset();
  m.getUnit(paths[1]);
  EXPECT_EQ(dumpAst(m.getUnit(paths[0])->ast()), before);
}
