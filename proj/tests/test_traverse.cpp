#include <gtest/gtest.h>

#include <map>
#include <set>

#include "cbugscan/error.hpp"
#include "cbugscan/parser.hpp"
#include "cbugscan/traverse.hpp"
#include "support/helpers.hpp"

using namespace cbugscan;
using testing_support::unitOf;

namespace {

const char *kCalls = "int g;\n"
                     "void leaf(int *p)\n{\n *p = 1;\n}\n"      // 2-5
                     "void top(int a)\n{\n"                      // 6-7
                     " leaf(&a);\n"                              // 8
                     " leaf(&g);\n"                              // 9
                     "}\n";

std::vector<int> lines(const std::vector<const CfgNode *> &nodes) {
  std::vector<int> out;
  for (const auto *n : nodes)
    if (n->kind == CfgNodeKind::Statement || n->kind == CfgNodeKind::Condition)
      out.push_back(n->location.line);
  return out;
}

CallFrame frameFor(const TranslationUnit &u, const std::string &caller, int line) {
  const Cfg *c = u.findCfg(caller);
  for (const auto &n : c->nodes())
    if (n.location.line == line && n.kind == CfgNodeKind::Statement) {
      const AstNode *call = topLevelCall(n);
      return CallFrame{c, n.id, call, u.findCfg(calleeName(*call))};
    }
  throw std::runtime_error("no call");
}

std::string mapped(const std::string &expr, const CallFrame &f, MapDirection d) {
  auto e = parsePatternTemplate(expr);
  auto r = mapExpression(*e, f, d);
  return r ? toSource(**r) : "<none>";
}

} // namespace

TEST(Traverse, DepthFirstVisitsEachNodeOnceWithValidPaths) {
  auto u = unitOf("int f(int x)\n{\n if (x)\n  x = 1;\n else\n  x = 2;\n return x;\n}\n");
  const Cfg &cfg = *u->findCfg("f");
  std::multiset<int> seen;
  TraversalSpec spec;
  spec.visitor = [&](const CfgNode &n, const PathContext &ctx) {
    seen.insert(n.id);
    EXPECT_EQ(ctx.path.front().node, cfg.entry());
    EXPECT_EQ(ctx.path.back().node, n.id);
    for (std::size_t i = 1; i < ctx.path.size(); ++i) {
      const auto &succ = cfg.successors(ctx.path[i - 1].node);
      EXPECT_TRUE(std::any_of(succ.begin(), succ.end(), [&](const CfgEdge &e) {
        return e.target == ctx.path[i].node;
      }));
    }
    return VisitAction::Continue;
  };
  auto out = traverseCfg(cfg, spec, *u);
  EXPECT_FALSE(out.stopped);
  EXPECT_EQ(out.visited, cfg.nodes().size());
  for (const auto &n : cfg.nodes())
    EXPECT_EQ(seen.count(n.id), 1u);
}

TEST(Traverse, BreadthFirstOrderByDistance) {
  auto u = unitOf("void f(int x)\n{\n if (x)\n  a = 1;\n b = 2;\n c = 3;\n}\n");
  std::vector<const CfgNode *> order;
  TraversalSpec spec;
  spec.order = Order::BreadthFirst;
  spec.visitor = [&](const CfgNode &n, const PathContext &ctx) {
    order.push_back(&n);
    EXPECT_EQ(ctx.path.back().node, n.id);
    return VisitAction::Continue;
  };
  traverseCfg(*u->findCfg("f"), spec, *u);
  auto ls = lines(order);
  // condition, then its two successors, then the last statement
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(ls[0], 3);
  EXPECT_EQ(std::set<int>(ls.begin() + 1, ls.begin() + 3), (std::set<int>{4, 5}));
  EXPECT_EQ(ls[3], 6);
}

TEST(Traverse, PruneAndStop) {
  auto u = unitOf("void f(void)\n{\n a = 1;\n b = 2;\n c = 3;\n}\n");
  const Cfg &cfg = *u->findCfg("f");
  std::vector<const CfgNode *> order;
  TraversalSpec spec;
  spec.visitor = [&](const CfgNode &n, const PathContext &) {
    order.push_back(&n);
    return n.location.line == 4 ? VisitAction::PruneBranch : VisitAction::Continue;
  };
  auto out = traverseCfg(cfg, spec, *u);
  EXPECT_EQ(lines(order), (std::vector<int>{3, 4}));
  EXPECT_FALSE(out.stopped);

  order.clear();
  spec.visitor = [&](const CfgNode &n, const PathContext &) {
    order.push_back(&n);
    return n.location.line == 3 ? VisitAction::StopAll : VisitAction::Continue;
  };
  out = traverseCfg(cfg, spec, *u);
  EXPECT_TRUE(out.stopped);
  EXPECT_EQ(lines(order), (std::vector<int>{3}));
}

TEST(Traverse, BackwardStartsAtExit) {
  auto u = unitOf("void f(void)\n{\n a = 1;\n b = 2;\n}\n");
  const Cfg &cfg = *u->findCfg("f");
  std::vector<const CfgNode *> order;
  TraversalSpec spec;
  spec.direction = Direction::Backward;
  spec.visitor = [&](const CfgNode &n, const PathContext &) {
    order.push_back(&n);
    return VisitAction::Continue;
  };
  traverseCfg(cfg, spec, *u);
  ASSERT_FALSE(order.empty());
  EXPECT_EQ(order.front()->id, cfg.exit());
  EXPECT_EQ(lines(order), (std::vector<int>{4, 3}));
}

TEST(Traverse, InterproceduralContextsPerCallSite) {
  auto u = unitOf(kCalls);
  const Cfg &top = *u->findCfg("top");
  std::map<int, std::vector<std::size_t>> leafStmt; // context -> stack depth
  TraversalSpec spec;
  spec.interprocedural = true;
  spec.visitor = [&](const CfgNode &n, const PathContext &ctx) {
    if (n.location.line == 4) {
      auto stack = ctx.callStack();
      leafStmt[ctx.path.back().context].push_back(stack.size());
      EXPECT_EQ(stack.back().callee->functionName(), "leaf");
      EXPECT_EQ(stack.back().caller, &top);
    }
    return VisitAction::Continue;
  };
  traverseInterprocedural(top, spec, *u);
  ASSERT_EQ(leafStmt.size(), 2u);
  for (const auto &[ctx, depths] : leafStmt) {
    EXPECT_NE(ctx, 0);
    EXPECT_EQ(depths, std::vector<std::size_t>{1});
  }
}

TEST(Traverse, IntraproceduralDoesNotEnterCallees) {
  auto u = unitOf(kCalls);
  std::set<int> seen;
  TraversalSpec spec;
  spec.visitor = [&](const CfgNode &n, const PathContext &) {
    seen.insert(n.location.line);
    return VisitAction::Continue;
  };
  traverseCfg(*u->findCfg("top"), spec, *u);
  EXPECT_EQ(seen.count(4), 0u);
  EXPECT_THROW(traverseInterprocedural(*u->findCfg("top"), spec, *u), Error);
}

TEST(Traverse, RecursionIsCutOff) {
  auto u = unitOf("int r(int n)\n{\n if (n)\n  r(n - 1);\n return n;\n}\n"
                  "void a(void)\n{\n b();\n}\nvoid b(void)\n{\n a();\n}\n");
  // the root is not a frame, so a -> b -> a is entered once more before b repeats
  for (auto [root, limit] : std::vector<std::pair<const char *, int>>{{"r", 1}, {"a", 2}}) {
    Supergraph sg(*u, *u->findCfg(root), Direction::Forward, true);
    std::set<ProgramPoint> seen{sg.start()};
    std::vector<ProgramPoint> work{sg.start()};
    int maxDepth = 0;
    while (!work.empty()) {
      auto p = work.back();
      work.pop_back();
      maxDepth = std::max(maxDepth, sg.depth(p.context));
      for (const auto &s : sg.next(p))
        if (seen.insert(s.point).second)
          work.push_back(s.point);
    }
    EXPECT_EQ(maxDepth, limit) << root;
  }
}

TEST(Traverse, DepthLimitRespected) {
  std::string src;
  for (int i = 0; i < 6; ++i)
    src += "void f" + std::to_string(i) + "(void) { f" + std::to_string(i + 1) + "(); }\n";
  src += "void f6(void) { }\n";
  auto u = unitOf(src);
  Supergraph sg(*u, *u->findCfg("f0"), Direction::Forward, true, 3);
  std::set<ProgramPoint> seen{sg.start()};
  std::vector<ProgramPoint> work{sg.start()};
  int maxDepth = 0;
  while (!work.empty()) {
    auto p = work.back();
    work.pop_back();
    maxDepth = std::max(maxDepth, sg.depth(p.context));
    for (const auto &s : sg.next(p))
      if (seen.insert(s.point).second)
        work.push_back(s.point);
  }
  EXPECT_EQ(maxDepth, 3);
}

TEST(Traverse, RootNodeOfCalleePoint) {
  auto u = unitOf(kCalls);
  const Cfg &top = *u->findCfg("top");
  Supergraph sg(*u, top, Direction::Forward, true);
  std::vector<ProgramPoint> work{sg.start()};
  std::set<ProgramPoint> seen{sg.start()};
  while (!work.empty()) {
    auto p = work.back();
    work.pop_back();
    if (p.context != 0) {
      int r = sg.rootNode(p);
      EXPECT_TRUE(top.contains(r));
      EXPECT_NE(topLevelCall(u->node(r)), nullptr);
    }
    for (const auto &s : sg.next(p))
      if (seen.insert(s.point).second)
        work.push_back(s.point);
  }
}

TEST(MapExpression, CallerToCallee) {
  auto u = unitOf(kCalls);
  auto f1 = frameFor(*u, "top", 8);
  auto f2 = frameFor(*u, "top", 9);
  EXPECT_EQ(mapped("&a", f1, MapDirection::CallerToCallee), "p");
  EXPECT_EQ(mapped("*&a", f1, MapDirection::CallerToCallee), "*p");
  EXPECT_EQ(mapped("a", f1, MapDirection::CallerToCallee), "<none>");
  EXPECT_EQ(mapped("g", f2, MapDirection::CallerToCallee), "g");
  EXPECT_EQ(mapped("&g", f1, MapDirection::CallerToCallee), "&g");
  EXPECT_EQ(mapped("a + 1", f2, MapDirection::CallerToCallee), "<none>");
}

TEST(MapExpression, CalleeToCaller) {
  auto u = unitOf(kCalls);
  auto f1 = frameFor(*u, "top", 8);
  EXPECT_EQ(mapped("p", f1, MapDirection::CalleeToCaller), "&a");
  EXPECT_EQ(mapped("*p", f1, MapDirection::CalleeToCaller), "*&a");
  EXPECT_EQ(mapped("g", f1, MapDirection::CalleeToCaller), "g");
  auto v = unitOf("void h(int q) { int tmp = q; }\nvoid m(void) { h(1); }\n");
  auto f = frameFor(*v, "m", 2);
  EXPECT_EQ(mapped("tmp", f, MapDirection::CalleeToCaller), "<none>");
  EXPECT_EQ(mapped("q + 2", f, MapDirection::CalleeToCaller), "1 + 2");
}

TEST(MapExpression, ReturnValue) {
  auto u = unitOf("int g(int v)\n{\n return v + 1;\n}\n"
                  "void f(void)\n{\n int x = g(4);\n x = g(x);\n g(0);\n}\n");
  const Cfg &g = *u->findCfg("g");
  const AstNode *ret = nullptr;
  for (const auto &n : g.nodes())
    if (n.ast && n.ast->kind == AstKind::Return)
      ret = n.ast;
  ASSERT_NE(ret, nullptr);
  auto r1 = mapReturnValue(frameFor(*u, "f", 7), *ret);
  ASSERT_TRUE(r1);
  EXPECT_EQ(toSource(**r1), "x = 4 + 1");
  auto r2 = mapReturnValue(frameFor(*u, "f", 8), *ret);
  ASSERT_TRUE(r2);
  EXPECT_EQ(toSource(**r2), "x = x + 1");
  EXPECT_FALSE(mapReturnValue(frameFor(*u, "f", 9), *ret));
}

TEST(MapExpression, FunctionLocals) {
  auto u = unitOf("int f(int a, int *b) { int c; { int d = 1; } return a; }");
  EXPECT_EQ(functionLocals(u->findCfg("f")->function()),
            (std::set<std::string>{"a", "b", "c", "d"}));
}
