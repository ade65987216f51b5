#include <doctest.h>

#include "carcass/maxflow.hpp"
#include "test_support.hpp"

using namespace carcass;
using namespace testsupport;

namespace {

// Independent minimum over all (S1,S2)-cuts by bitmask enumeration.
int brute_min_cut(const MultiGraph& g, const std::vector<int>& s1, const std::vector<int>& s2) {
  int n = g.vertex_count();
  int best = -1;
  for (int m = 1; m < (1 << n) - 1; ++m) {
    bool ok = true;
    for (int v : s1) ok = ok && ((m >> v) & 1);
    for (int v : s2) ok = ok && !((m >> v) & 1);
    if (!ok) continue;
    int cap = 0;
    for (const EdgeBundle& e : g.edges())
      if (((m >> e.u) & 1) != ((m >> e.v) & 1)) cap += e.multiplicity;
    if (best < 0 || cap < best) best = cap;
  }
  return best;
}

}  // namespace

TEST_CASE("max_flow values") {
  CHECK(max_flow(p3().graph, {0}, {2}).value == 1);
  CHECK(max_flow(par3().graph, {0}, {1}).value == 3);
  SteinerContext c = c4();
  CHECK(max_flow(c.graph, {0}, {2}).value == brute_min_cut(c.graph, {0}, {2}));
  CHECK(max_flow(c.graph, {0}, {2}).value == 2);
}

TEST_CASE("max_flow rejects overlapping terminals") {
  CHECK_THROWS_AS(max_flow(p3().graph, {0, 1}, {1}), DomainError);
  CHECK_THROWS_AS(max_flow(p3().graph, {}, {1}), DomainError);
}

TEST_CASE("flow respects conservation and bundle capacities") {
  std::mt19937 rng(11);
  for (int i = 0; i < 40; ++i) {
    SteinerContext ctx = random_instance(rng);
    int s = ctx.steiner.front(), t = ctx.steiner.back();
    FlowResult f = max_flow(ctx.graph, {s}, {t});
    std::vector<int> net(ctx.graph.vertex_count(), 0);
    for (int e = 0; e < ctx.graph.bundle_count(); ++e) {
      const EdgeBundle& b = ctx.graph.edge(e);
      CHECK(std::abs(f.edge_flow[e]) <= b.multiplicity);
      net[b.u] -= f.edge_flow[e];
      net[b.v] += f.edge_flow[e];
    }
    for (int v = 0; v < ctx.graph.vertex_count(); ++v) {
      if (v == s) CHECK(net[v] == -f.value);
      else if (v == t) CHECK(net[v] == f.value);
      else CHECK(net[v] == 0);
    }
  }
}

TEST_CASE("duality against exhaustive enumeration") {
  std::mt19937 rng(13);
  for (int i = 0; i < 60; ++i) {
    SteinerContext ctx = random_instance(rng);
    int s = ctx.steiner.front(), t = ctx.steiner.back();
    CHECK(max_flow(ctx.graph, {s}, {t}).value == brute_min_cut(ctx.graph, {s}, {t}));
  }
}

TEST_CASE("tight and loose mincuts on the fixtures") {
  SteinerContext p = p3();
  CHECK(tight_mincut(p.graph, {0}, {2}).inside_vertices() == std::vector<int>{0});
  CHECK(loose_mincut(p.graph, {0}, {2}).inside_vertices() == std::vector<int>{0, 1});

  SteinerContext st = star();
  CHECK(tight_mincut(st.graph, {1, 2}, {0}).inside_vertices() == std::vector<int>{1, 2, 3});

  SteinerContext c = c4();
  CHECK(tight_mincut(c.graph, {0}, {2}).inside_vertices() == std::vector<int>{0});
}

TEST_CASE("tight is the intersection and loose the union of all mincuts") {
  std::mt19937 rng(17);
  for (int i = 0; i < 40; ++i) {
    SteinerContext ctx = random_instance(rng);
    int n = ctx.graph.vertex_count();
    int s = ctx.steiner.front(), t = ctx.steiner.back();
    int value = max_flow(ctx.graph, {s}, {t}).value;
    std::uint32_t inter = (1u << n) - 1, uni = 0;
    for (int m = 1; m < (1 << n) - 1; ++m) {
      if (!((m >> s) & 1) || ((m >> t) & 1)) continue;
      int cap = 0;
      for (const EdgeBundle& e : ctx.graph.edges())
        if (((m >> e.u) & 1) != ((m >> e.v) & 1)) cap += e.multiplicity;
      if (cap != value) continue;
      inter &= static_cast<std::uint32_t>(m);
      uni |= static_cast<std::uint32_t>(m);
    }
    std::uint32_t tight = 0, loose = 0;
    for (int v : tight_mincut(ctx.graph, {s}, {t}).inside_vertices()) tight |= 1u << v;
    for (int v : loose_mincut(ctx.graph, {s}, {t}).inside_vertices()) loose |= 1u << v;
    CHECK(tight == inter);
    CHECK(loose == uni);
  }
}

TEST_CASE("tight mincut is the opposite of the reverse loose mincut") {
  std::mt19937 rng(19);
  for (int i = 0; i < 40; ++i) {
    SteinerContext ctx = random_instance(rng);
    int s = ctx.steiner.front(), t = ctx.steiner.back();
    VertexCut n_st = tight_mincut(ctx.graph, {s}, {t});
    VertexCut f_ts = loose_mincut(ctx.graph, {t}, {s});
    CHECK(n_st == f_ts.opposite());
  }
}

TEST_CASE("steiner_mincut_capacity") {
  SteinerContext p = p3();
  CHECK(steiner_mincut_capacity(p) == 1);
  SteinerContext c = c4();
  CHECK(steiner_mincut_capacity(c) == 2);
  SteinerContext k = k4();
  CHECK(steiner_mincut_capacity(k) == 3);
  CHECK(k.lambda == 3);

  // Brute force over all 7 bipartitions of K4.
  int best = -1;
  for (int m = 1; m < 15; ++m) {
    if (!(m & 1)) continue;
    int cap = 0;
    for (const EdgeBundle& e : k.graph.edges())
      if (((m >> e.u) & 1) != ((m >> e.v) & 1)) cap += e.multiplicity;
    if (best < 0 || cap < best) best = cap;
  }
  CHECK(best == 3);
}

TEST_CASE("flow call counter is monotone") {
  long before = flow_call_count();
  max_flow(p3().graph, {0}, {2});
  CHECK(flow_call_count() == before + 1);
}
