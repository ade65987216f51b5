#include <doctest.h>

#include <sstream>

#include "carcass/multigraph.hpp"
#include "test_support.hpp"

using namespace carcass;
using namespace testsupport;

TEST_CASE("load_graph parses the bundled instances") {
  SteinerContext p = p3();
  CHECK(p.graph.vertex_count() == 3);
  CHECK(p.graph.total_multiplicity() == 2);
  CHECK(p.steiner == std::vector<int>{0, 2});

  SteinerContext q = par3();
  CHECK(q.graph.vertex_count() == 2);
  CHECK(q.graph.bundle_count() == 1);
  CHECK(q.graph.total_multiplicity() == 3);

  SteinerContext c = c4();
  CHECK(c.graph.vertex_count() == 4);
  CHECK(c.steiner.size() == 4);
}

TEST_CASE("load_graph rejects malformed input") {
  auto fails = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(load_graph(in), ParseError);
  };
  fails("");                                    // missing header
  fails("3 2 2\n1 2 1\n1 3\n");                 // truncated edge list
  fails("3 2 2\n1 2 1\n2 5 1\n1 3\n");          // vertex id out of range
  fails("3 2 2\n1 2 1\n2 2 1\n1 3\n");          // self-loop
  fails("3 2 1\n1 2 1\n2 3 1\n1\n");            // |S| < 2
  fails("4 2 2\n1 2 1\n2 3 1\n1 3\n");          // disconnected (vertex 4 isolated)
  fails("3 2 2\n1 2 1\n2 3 0\n1 3\n");          // zero multiplicity
}

TEST_CASE("load_graph reports the offending line") {
  std::istringstream in("# comment\n3 2 2\n1 2 1\nbogus\n1 3\n");
  try {
    load_graph(in);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("comment lines are ignored") {
  SteinerContext p = parse("# a path\n3 2 2\n# edges\n1 2 1\n2 3 1\n# terminals\n1 3\n");
  CHECK(p.graph.vertex_count() == 3);
}

TEST_CASE("cut_capacity") {
  SteinerContext p = p3();
  CHECK(cut_capacity(p.graph, VertexCut::from_vertices(3, {0})) == 1);

  SteinerContext c = c4();
  CHECK(cut_capacity(c.graph, VertexCut::from_vertices(4, {0, 2})) == 4);
  CHECK(cut_capacity(c.graph, VertexCut::from_vertices(4, {0, 1})) == 2);
}

TEST_CASE("cut capacity is symmetric under complement") {
  SteinerContext c = c4();
  for (int mask = 1; mask < 15; ++mask) {
    std::vector<int> inside;
    for (int v = 0; v < 4; ++v)
      if (mask & (1 << v)) inside.push_back(v);
    VertexCut cut = VertexCut::from_vertices(4, inside);
    CHECK(cut_capacity(c.graph, cut) == cut_capacity(c.graph, cut.opposite()));
  }
}

TEST_CASE("contract") {
  SteinerContext p = p3();
  ContractResult r = contract(p.graph, Partition::from_groups(3, {{0}, {1, 2}}));
  CHECK(r.quotient.vertex_count() == 2);
  CHECK(r.quotient.total_multiplicity() == 1);

  SteinerContext c = c4();
  ContractResult r2 = contract(c.graph, Partition::from_groups(4, {{0, 1}, {2, 3}}));
  CHECK(r2.quotient.vertex_count() == 2);
  CHECK(r2.quotient.bundle_count() == 1);
  CHECK(r2.quotient.edge(0).multiplicity == 2);

  ContractResult r3 = contract(c.graph, Partition::from_groups(4, {{0}, {1}, {2}, {3}}));
  CHECK(r3.quotient.vertex_count() == 4);
  CHECK(r3.quotient.total_multiplicity() == 4);
}

TEST_CASE("contract rejects invalid partitions") {
  SteinerContext p = p3();
  CHECK_THROWS_AS(contract(p.graph, Partition::from_groups(3, {{0}, {1}})), DomainError);
  CHECK_THROWS_AS(Partition::from_groups(3, {{0, 1}, {1, 2}}), DomainError);
}

TEST_CASE("quotient_by_cut_family") {
  SteinerContext p = p3();
  QuotientResult one = quotient_by_cut_family(p.graph, {VertexCut::from_vertices(3, {0})});
  CHECK(one.quotient.vertex_count() == 2);
  CHECK_FALSE(one.degenerate);

  QuotientResult two = quotient_by_cut_family(
      p.graph, {VertexCut::from_vertices(3, {0}), VertexCut::from_vertices(3, {0, 1})});
  CHECK(two.quotient.vertex_count() == 3);

  QuotientResult none = quotient_by_cut_family(p.graph, {});
  CHECK(none.degenerate);
  CHECK(none.quotient.vertex_count() == 1);
}

TEST_CASE("quotient preserves every cut of the family") {
  std::mt19937 rng(7);
  for (int i = 0; i < 30; ++i) {
    SteinerContext ctx = random_instance(rng);
    int n = ctx.graph.vertex_count();
    std::vector<VertexCut> family;
    for (int j = 0; j < 4; ++j) {
      std::uint32_t mask = std::uniform_int_distribution<std::uint32_t>(1, (1u << n) - 2)(rng);
      std::vector<int> inside;
      for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) inside.push_back(v);
      family.push_back(VertexCut::from_vertices(n, inside));
    }
    QuotientResult q = quotient_by_cut_family(ctx.graph, family);
    for (const VertexCut& cut : family) {
      std::vector<char> group_inside(q.quotient.vertex_count(), 0);
      for (int v = 0; v < n; ++v)
        if (cut.contains(v)) group_inside[q.mapping.group_of(v)] = 1;
      int cap = 0;
      for (const EdgeBundle& e : q.quotient.edges())
        if (group_inside[e.u] != group_inside[e.v]) cap += e.multiplicity;
      CHECK(cap == cut_capacity(ctx.graph, cut));
    }
  }
}

TEST_CASE("submodularity on small instances") {
  for (SteinerContext ctx : {p3(), c4(), k4(), star()}) {
    int n = ctx.graph.vertex_count();
    int full = (1 << n) - 1;
    std::vector<int> cap(full + 1, 0);
    for (int m = 0; m <= full; ++m) {
      for (const EdgeBundle& e : ctx.graph.edges())
        if (((m >> e.u) & 1) != ((m >> e.v) & 1)) cap[m] += e.multiplicity;
    }
    for (int a = 1; a < full; ++a)
      for (int b = 1; b < full; ++b) {
        int i = a & b, u = a | b;
        if (i == 0 || u == full) continue;
        CHECK(cap[a] + cap[b] >= cap[i] + cap[u]);
      }
  }
}

TEST_CASE("four point inequality exhaustively for n <= 6") {
  for (SteinerContext ctx : {c4(), k4(), lambda3_star(), glued_stars()}) {
    int n = ctx.graph.vertex_count();
    REQUIRE(n <= 6);
    int full = (1 << n) - 1;
    std::vector<int> cap(full + 1, 0);
    for (int m = 0; m <= full; ++m)
      for (const EdgeBundle& e : ctx.graph.edges())
        if (((m >> e.u) & 1) != ((m >> e.v) & 1)) cap[m] += e.multiplicity;
    bool ok = true;
    for (int c1 = 1; c1 < full && ok; ++c1)
      for (int c2 = 1; c2 < full && ok; ++c2)
        for (int c3 = 1; c3 < full && ok; ++c3) {
          int lhs = cap[c1] + cap[c2] + cap[c3];
          int rhs = cap[c1 & ~c2 & ~c3 & full] + cap[~c1 & c2 & ~c3 & full] +
                    cap[~c1 & ~c2 & c3 & full] + cap[c1 & c2 & c3];
          if (lhs < rhs) ok = false;
        }
    CHECK(ok);
  }
}
