#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "carcass/maxflow.hpp"
#include "carcass/multigraph.hpp"

namespace testsupport {

inline carcass::SteinerContext parse(const std::string& text) {
  std::istringstream in(text);
  return carcass::load_graph(in);
}

// Fixtures; vertex ids in comments are 1-based as in the file format.

// Path 1-2-3, S={1,3}.
inline carcass::SteinerContext p3() { return parse("3 2 2\n1 2 1\n2 3 1\n1 3\n"); }

// Two vertices, 3 parallel edges, S={1,2}.
inline carcass::SteinerContext par3() { return parse("2 1 2\n1 2 3\n1 2\n"); }

// Cycle 1-2-3-4, S=V.
inline carcass::SteinerContext c4() {
  return parse("4 4 4\n1 2 1\n2 3 1\n3 4 1\n4 1 1\n1 2 3 4\n");
}

// Complete graph on 4 vertices, S=V.
inline carcass::SteinerContext k4() {
  return parse("4 6 4\n1 2 1\n1 3 1\n1 4 1\n2 3 1\n2 4 1\n3 4 1\n1 2 3 4\n");
}

// Star: leaves 1,2,3, center 4, S = leaves.
inline carcass::SteinerContext star() {
  return parse("4 3 3\n1 4 1\n2 4 1\n3 4 1\n1 2 3\n");
}

// Cycle a(1) w(5) b(2) c(3) d(4): subdividing one edge of C4 gives an even
// lambda instance whose extra vertex projects through one cycle edge.
inline carcass::SteinerContext cyc5() {
  return parse("5 5 4\n1 5 1\n5 2 1\n2 3 1\n3 4 1\n4 1 1\n1 2 3 4\n");
}

// Triple-edge star with two subdivided arms: s1(1)=u(4)=c(6), s2(2)=v(5)=c,
// s3(3)=c, every bundle of multiplicity 3. Odd lambda, two stretched units
// projecting to distinct skeleton edges.
inline carcass::SteinerContext lambda3_star() {
  return parse("6 5 3\n1 4 3\n4 6 3\n2 5 3\n5 6 3\n3 6 3\n1 2 3\n");
}

// Two doubled stars glued by a doubled center edge: leaves 1,2 on center 5,
// leaves 3,4 on center 6, S = leaves. Each center is its own terminal unit.
inline carcass::SteinerContext glued_stars() {
  return parse("6 5 4\n1 5 2\n2 5 2\n3 6 2\n4 6 2\n5 6 2\n1 2 3 4\n");
}

// P3 plus a pendant vertex 4 on vertex 1; 4 shares a unit with 1.
inline carcass::SteinerContext pendant() {
  return parse("4 3 2\n1 2 1\n2 3 1\n1 4 1\n1 3\n");
}

// Connected random multigraph: n in [3,8], distinct edges <= 14,
// multiplicities <= 3, |S| in [2,n].
inline carcass::SteinerContext random_instance(std::mt19937& rng) {
  std::uniform_int_distribution<int> n_dist(3, 8);
  int n = n_dist(rng);
  std::vector<carcass::EdgeBundle> edges;
  std::vector<char> used(n * n, 0);
  auto add = [&](int u, int v, int w) {
    if (u == v) return;
    if (u > v) std::swap(u, v);
    if (used[u * n + v]) return;
    used[u * n + v] = 1;
    edges.push_back({u, v, w});
  };
  std::uniform_int_distribution<int> w_dist(1, 3);
  // Random spanning tree first, extra edges after.
  for (int v = 1; v < n; ++v)
    add(std::uniform_int_distribution<int>(0, v - 1)(rng), v, w_dist(rng));
  int extra = std::uniform_int_distribution<int>(0, 14 - (n - 1))(rng);
  for (int i = 0; i < extra; ++i) {
    int u = std::uniform_int_distribution<int>(0, n - 1)(rng);
    int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
    add(u, v, w_dist(rng));
  }
  int k = std::uniform_int_distribution<int>(2, n)(rng);
  std::vector<int> verts(n);
  for (int v = 0; v < n; ++v) verts[v] = v;
  std::shuffle(verts.begin(), verts.end(), rng);
  std::vector<int> steiner(verts.begin(), verts.begin() + k);
  std::sort(steiner.begin(), steiner.end());
  return {carcass::MultiGraph(n, std::move(edges)), std::move(steiner), std::nullopt};
}

inline std::vector<int> vertices_1based(const std::vector<int>& zero_based) {
  std::vector<int> out;
  for (int v : zero_based) out.push_back(v + 1);
  return out;
}

}  // namespace testsupport
