#include <gtest/gtest.h>

#include <random>

#include "cbugscan/checkers/thread.hpp"
#include "cbugscan/error.hpp"
#include "cbugscan/source.hpp"
#include "oracles/cycle_oracle.hpp"
#include "support/helpers.hpp"

using namespace cbugscan;
using testing_support::sourcePath;
using testing_support::unitOf;

namespace {

std::vector<ErrorTrace> runThread(const TranslationUnit &u, const ThreadConfig &config) {
  std::vector<LockOrderGraph> graphs;
  for (const auto &e : findThreadEntries(u, config))
    graphs.push_back(buildDependencyGraph(e, u, config));
  return detectCycles(graphs);
}

std::set<std::pair<std::string, std::string>> edgesOf(const TranslationUnit &u,
                                                      const ThreadConfig &config) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto &e : findThreadEntries(u, config))
    for (const auto &[edge, w] : buildDependencyGraph(e, u, config).edges)
      out.insert(edge);
  return out;
}

} // namespace

TEST(ThreadConfig, DefaultsAndOverrides) {
  auto d = defaultThreadConfig();
  EXPECT_EQ(d.locks.size(), 1u);
  EXPECT_EQ(d.unlocks.size(), 1u);
  auto c = parseThreadConfig("spawn \"kthread_run(%F, %D)\"\nentry worker\n"
                             "lock \"spin_lock(%L)\"\nunlock \"spin_unlock(%L)\"\n");
  EXPECT_EQ(c.entries, std::vector<std::string>{"worker"});
  EXPECT_EQ(toSource(c.spawn.templ()), "kthread_run(%F, %D)");
  EXPECT_THROW(parseThreadConfig("spawn \"run(%X)\"\n"), ConfigError);
  EXPECT_THROW(parseThreadConfig("spawn \"a(%F)\"\nspawn \"b(%F)\"\n"), ConfigError);
  EXPECT_THROW(parseThreadConfig("entry\n"), ConfigError);
  EXPECT_NO_THROW(loadThreadConfig(sourcePath("configs/thread.cfg")));
}

TEST(ThreadEntries, SpawnTargetsConfiguredAndFallback) {
  auto u = unitOf("void *w1(void *a) { return 0; }\nvoid *w2(void *a) { return 0; }\n"
                  "void helper(void) { }\n"
                  "void start(void) { int t; pthread_create(&t, 0, w2, 0);"
                  " pthread_create(&t, 0, &w1, 0); pthread_create(&t, 0, ext, 0); }\n");
  std::vector<std::string> diags;
  auto config = defaultThreadConfig();
  config.entries = {"helper", "missing"};
  auto entries = findThreadEntries(*u, config, &diags);
  EXPECT_EQ(entries, (std::vector<ThreadEntry>{{"helper", ThreadEntry::Origin::ConfigListed},
                                               {"w1", ThreadEntry::Origin::SpawnMatch},
                                               {"w2", ThreadEntry::Origin::SpawnMatch}}));
  EXPECT_EQ(diags.size(), 2u);

  auto plain = unitOf("void b(void) { }\nvoid a(void) { }\n");
  auto all = findThreadEntries(*plain, defaultThreadConfig());
  EXPECT_EQ(all, (std::vector<ThreadEntry>{{"a", ThreadEntry::Origin::AllFunctions},
                                           {"b", ThreadEntry::Origin::AllFunctions}}));
}

TEST(Thread, EcryptfsThreeCycle) {
  auto path = sourcePath("corpus/ecryptfs_messaging.c");
  auto u = unitOf(readFile(path), path);
  auto traces = runThread(*u, defaultThreadConfig());
  ASSERT_EQ(traces.size(), 1u);
  EXPECT_EQ(traces[0].message,
            "lock order cycle: ecryptfs_daemon_hash_mux <- ecryptfs_msg_ctx_lists_mux <- "
            "msg_ctx->mux <- ecryptfs_daemon_hash_mux");
  auto edges = edgesOf(*u, defaultThreadConfig());
  EXPECT_TRUE(edges.count({"ecryptfs_daemon_hash_mux", "ecryptfs_msg_ctx_lists_mux"}));
  EXPECT_TRUE(edges.count({"ecryptfs_msg_ctx_lists_mux", "msg_ctx->mux"}));
  EXPECT_TRUE(edges.count({"msg_ctx->mux", "ecryptfs_daemon_hash_mux"}));
  EXPECT_EQ(traces[0].steps.size(), 6u);
}

TEST(Thread, LockIdentity) {
  EXPECT_EQ(lockIdentity("&a->b"), "a->b");
  EXPECT_EQ(lockIdentity("p->lock"), "p->lock");
}

TEST(Thread, NoCycleWithConsistentOrder) {
  auto u = unitOf("void f(void) { mutex_lock(&a); mutex_lock(&b); mutex_unlock(&b); "
                  "mutex_unlock(&a); }\n"
                  "void g(void) { mutex_lock(&a); mutex_lock(&b); mutex_unlock(&b); "
                  "mutex_unlock(&a); }\n");
  EXPECT_TRUE(runThread(*u, defaultThreadConfig()).empty());
  EXPECT_EQ(edgesOf(*u, defaultThreadConfig()),
            (std::set<std::pair<std::string, std::string>>{{"a", "b"}}));
}

TEST(Thread, ReleasedLockCreatesNoEdge) {
  auto u = unitOf("void f(void) { mutex_lock(&a); mutex_unlock(&a); mutex_lock(&b); "
                  "mutex_unlock(&b); }\n");
  EXPECT_TRUE(edgesOf(*u, defaultThreadConfig()).empty());
}

TEST(Thread, ReversingOrderReversesEdges) {
  std::mt19937 rng(5);
  const std::vector<std::string> locks{"a", "b", "c", "d"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string forward, backward;
    for (int fn = 0; fn < 3; ++fn) {
      auto order = locks;
      std::shuffle(order.begin(), order.end(), rng);
      order.resize(std::uniform_int_distribution<std::size_t>(2, 3)(rng));
      auto emit = [&](const std::vector<std::string> &seq) {
        std::string body;
        for (const auto &l : seq)
          body += " mutex_lock(&" + l + ");";
        for (auto it = seq.rbegin(); it != seq.rend(); ++it)
          body += " mutex_unlock(&" + *it + ");";
        return body;
      };
      forward += "void f" + std::to_string(fn) + "(void) {" + emit(order) + " }\n";
      std::vector<std::string> rev(order.rbegin(), order.rend());
      backward += "void f" + std::to_string(fn) + "(void) {" + emit(rev) + " }\n";
    }
    auto uf = unitOf(forward);
    auto ub = unitOf(backward);
    auto ef = edgesOf(*uf, defaultThreadConfig());
    auto eb = edgesOf(*ub, defaultThreadConfig());
    std::set<std::pair<std::string, std::string>> flipped;
    for (const auto &[x, y] : ef)
      flipped.emplace(y, x);
    EXPECT_EQ(flipped, eb) << forward;
    EXPECT_EQ(runThread(*uf, defaultThreadConfig()).size(),
              runThread(*ub, defaultThreadConfig()).size());
  }
}

TEST(Thread, ElementaryCyclesMatchBruteForce) {
  std::mt19937 rng(11);
  const std::vector<std::string> nodes{"a", "b", "c", "d", "e", "f"};
  for (int trial = 0; trial < 400; ++trial) {
    std::set<std::pair<std::string, std::string>> edges;
    for (const auto &x : nodes)
      for (const auto &y : nodes)
        if (x != y && std::uniform_int_distribution<int>(0, 99)(rng) < 30)
          edges.emplace(x, y);
    auto cycles = elementaryCycles(edges);
    std::set<std::vector<std::string>> got(cycles.begin(), cycles.end());
    EXPECT_EQ(got.size(), cycles.size());
    EXPECT_EQ(got, oracle::simpleCycles(edges));
  }
}

TEST(Thread, CycleCap) {
  std::set<std::pair<std::string, std::string>> complete;
  for (char x = 'a'; x <= 'g'; ++x)
    for (char y = 'a'; y <= 'g'; ++y)
      if (x != y)
        complete.emplace(std::string(1, x), std::string(1, y));
  EXPECT_EQ(elementaryCycles(complete, 10).size(), 10u);
  EXPECT_EQ(elementaryCycles(complete, 100000).size(), oracle::simpleCycles(complete).size());
}

TEST(Thread, SingleEntryInversionStillReported) {
  auto u = unitOf("void f(int c) {\n if (c) { mutex_lock(&a); mutex_lock(&b); mutex_unlock(&b);"
                  " mutex_unlock(&a); }\n else { mutex_lock(&b); mutex_lock(&a); "
                  "mutex_unlock(&a); mutex_unlock(&b); }\n}\n");
  auto traces = runThread(*u, defaultThreadConfig());
  ASSERT_EQ(traces.size(), 1u);
  EXPECT_EQ(traces[0].message, "lock order cycle: a <- b <- a");
}
