#include "carcass/skeleton.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "carcass/errors.hpp"

namespace carcass {

void Skeleton::finalize() {
  adjacency_.assign(nodes.size(), {});
  for (int e = 0; e < edge_count(); ++e) {
    const StructuralEdge& se = edges[e];
    if (se.a < 0 || se.a >= node_count() || se.b < 0 || se.b >= node_count() || se.a == se.b)
      throw InvariantBreach("skeleton edge endpoints invalid");
    adjacency_[se.a].push_back(e);
    adjacency_[se.b].push_back(e);
  }
  for (int c = 0; c < static_cast<int>(cycles.size()); ++c) {
    const SkeletonCycle& cyc = cycles[c];
    int k = static_cast<int>(cyc.nodes.size());
    if (k != static_cast<int>(cyc.edges.size()))
      throw InvariantBreach("cycle node/edge count mismatch");
    for (int i = 0; i < k; ++i) {
      const StructuralEdge& se = edges[cyc.edges[i]];
      int x = cyc.nodes[i], y = cyc.nodes[(i + 1) % k];
      if (!((se.a == x && se.b == y) || (se.a == y && se.b == x)))
        throw InvariantBreach("cycle edge order inconsistent");
      if (se.kind != EdgeKind::cycle || se.cycle != c)
        throw InvariantBreach("cycle edge mislabeled");
    }
  }
  phi_.clear();
  for (int v = 0; v < node_count(); ++v) {
    for (int s : nodes[v].steiner) {
      if (!phi_.emplace(s, v).second)
        throw InvariantBreach("Steiner vertex stored at two nodes");
    }
  }
}

int Skeleton::node_of(int steiner_vertex) const {
  auto it = phi_.find(steiner_vertex);
  if (it == phi_.end()) throw DomainError("not a Steiner vertex");
  return it->second;
}

int Skeleton::position_in_cycle(int cycle, int node) const {
  const auto& cn = cycles[cycle].nodes;
  for (int i = 0; i < static_cast<int>(cn.size()); ++i)
    if (cn[i] == node) return i;
  return -1;
}

int Skeleton::cycle_edge_between(int cycle, int node_a, int node_b) const {
  int k = static_cast<int>(cycles[cycle].nodes.size());
  int p = position_in_cycle(cycle, node_a);
  int q = position_in_cycle(cycle, node_b);
  if (p < 0 || q < 0) return -1;
  if ((p + 1) % k == q) return cycles[cycle].edges[p];
  if ((q + 1) % k == p) return cycles[cycle].edges[q];
  return -1;
}

std::vector<char> Skeleton::split_side(const std::vector<int>& removed_edges, int seed) const {
  std::vector<char> banned(edge_count(), 0);
  for (int e : removed_edges) banned[e] = 1;
  std::vector<char> side(node_count(), 0);
  std::vector<int> stack{seed};
  side[seed] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : adjacency_[v]) {
      if (banned[e]) continue;
      int w = other_end(e, v);
      if (!side[w]) {
        side[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return side;
}

std::vector<int> Skeleton::side_of_tree_edge(int node, int edge) const {
  if (edges[edge].kind != EdgeKind::tree) throw DomainError("not a tree edge");
  if (edges[edge].a != node && edges[edge].b != node)
    throw DomainError("edge not incident on node");
  std::vector<char> side = split_side({edge}, node);
  std::vector<int> out;
  for (int v = 0; v < node_count(); ++v)
    if (side[v]) out.insert(out.end(), nodes[v].steiner.begin(), nodes[v].steiner.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Skeleton::side_of_cycle_segment(int cycle, int pos_p, int pos_q) const {
  const SkeletonCycle& cyc = cycles[cycle];
  int k = static_cast<int>(cyc.nodes.size());
  if (pos_p < 0 || pos_p >= k || pos_q < 0 || pos_q >= k)
    throw DomainError("cycle position out of range");
  std::vector<int> out;
  for (int i = pos_p;; i = (i + 1) % k) {
    // Subset hanging at this cycle node: its side once both cycle edges go.
    std::vector<char> side =
        split_side({cyc.edges[(i + k - 1) % k], cyc.edges[i]}, cyc.nodes[i]);
    for (int v = 0; v < node_count(); ++v)
      if (side[v]) out.insert(out.end(), nodes[v].steiner.begin(), nodes[v].steiner.end());
    if (i == pos_q) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MinimalSkeletonCut> Skeleton::minimal_cuts() const {
  std::vector<MinimalSkeletonCut> out;
  for (int e = 0; e < edge_count(); ++e)
    if (edges[e].kind == EdgeKind::tree)
      out.push_back({MinimalSkeletonCut::Kind::tree_edge, e, -1});
  for (const SkeletonCycle& cyc : cycles) {
    int k = static_cast<int>(cyc.edges.size());
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        bool adjacent = (j == i + 1) || (i == 0 && j == k - 1);
        if (!adjacent)
          out.push_back({MinimalSkeletonCut::Kind::cycle_pair, cyc.edges[i], cyc.edges[j]});
      }
  }
  return out;
}

std::vector<int> Skeleton::cut_edge_ids(const MinimalSkeletonCut& cut) const {
  if (cut.kind == MinimalSkeletonCut::Kind::tree_edge) return {cut.e1};
  return {cut.e1, cut.e2};
}

std::uint32_t Skeleton::steiner_side_mask(const MinimalSkeletonCut& cut) const {
  std::vector<char> side = split_side(cut_edge_ids(cut), edges[cut.e1].a);
  std::uint32_t mask = 0;
  for (int v = 0; v < node_count(); ++v)
    if (side[v]) mask |= mask_of(nodes[v].steiner);
  return normalize(mask);
}

std::vector<char> Skeleton::node_side(const MinimalSkeletonCut& cut) const {
  int anchor_node = node_of(steiner_universe.front());
  return split_side(cut_edge_ids(cut), anchor_node);
}

std::uint32_t Skeleton::mask_of(const std::vector<int>& steiner_vertices) const {
  std::uint32_t mask = 0;
  for (int v : steiner_vertices) {
    auto it = std::lower_bound(steiner_universe.begin(), steiner_universe.end(), v);
    if (it == steiner_universe.end() || *it != v) throw DomainError("not a Steiner vertex");
    mask |= 1u << (it - steiner_universe.begin());
  }
  return mask;
}

std::uint32_t Skeleton::full_mask() const {
  return (steiner_universe.size() >= 32) ? ~0u : ((1u << steiner_universe.size()) - 1u);
}

void validate_structure(const Skeleton& sk) {
  std::vector<int> cycles_of_node(sk.node_count(), 0);
  for (int c = 0; c < static_cast<int>(sk.cycles.size()); ++c) {
    const SkeletonCycle& cyc = sk.cycles[c];
    if (cyc.edges.size() < 4)
      throw InvariantBreach("structural-P2: cycle shorter than 4 edges");
    for (int v : cyc.nodes) {
      ++cycles_of_node[v];
      if (!sk.nodes[v].steiner.empty())
        throw InvariantBreach("structural-P2: cycle node is not empty");
      if (sk.nodes[v].kind != NodeKind::cycle)
        throw InvariantBreach("structural-P2: cycle node mislabeled");
      int cyc_deg = 0, tree_deg = 0;
      for (int e : sk.incident(v))
        (sk.edges[e].kind == EdgeKind::cycle ? cyc_deg : tree_deg)++;
      if (cyc_deg != 2 || tree_deg != 1)
        throw InvariantBreach("structural-P2: cycle node degree is not 2+1");
    }
  }
  for (int v = 0; v < sk.node_count(); ++v) {
    if (cycles_of_node[v] > 1)
      throw InvariantBreach("t-cactus: node shared by two cycles");
    if (sk.nodes[v].kind == NodeKind::tree && sk.nodes[v].steiner.empty() && sk.degree(v) < 3)
      throw InvariantBreach("structural-P3: empty tree node with degree < 3");
  }
}

LaminarTree build_laminar_tree(const ValidCutSet& cuts) {
  const std::uint32_t full = cuts.full_mask();
  LaminarTree t;
  t.nodes.push_back({full, {}});
  std::vector<std::uint32_t> laminar_away;
  for (size_t i = 0; i < cuts.cuts.size(); ++i) {
    if (cuts.laminar[i])
      laminar_away.push_back(full & ~cuts.cuts[i]);
    else
      t.nodes[0].crossing.push_back(cuts.cuts[i]);
  }
  // Ascending side cardinality: later cuts never belong to an inner region,
  // so every split happens at the root node.
  std::sort(laminar_away.begin(), laminar_away.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  for (std::uint32_t away : laminar_away) {
    int inner = static_cast<int>(t.nodes.size());
    t.nodes.push_back({t.nodes[0].steiner_mask & away, {}});
    t.nodes[0].steiner_mask &= ~away;
    for (LaminarTree::Edge& e : t.edges) {
      if (e.parent != 0) continue;
      if ((e.child_side & ~away) == 0) {
        e.parent = inner;
      } else if (e.child_side & away) {
        throw InvariantBreach("laminar cuts are not pairwise parallel");
      }
    }
    auto& root_crossing = t.nodes[0].crossing;
    for (auto it = root_crossing.begin(); it != root_crossing.end();) {
      std::uint32_t c_away = full & ~*it;
      if ((c_away & ~away) == 0) {
        t.nodes[inner].crossing.push_back(*it);
        it = root_crossing.erase(it);
      } else {
        ++it;
      }
    }
    t.edges.push_back({0, inner, away});
  }
  return t;
}

namespace {

std::vector<std::uint32_t> segment_unions(const std::vector<std::uint32_t>& elements,
                                          const std::vector<int>& order) {
  int l = static_cast<int>(order.size());
  std::vector<std::uint32_t> segs;
  for (int start = 0; start < l; ++start) {
    std::uint32_t acc = 0;
    for (int len = 1; len < l; ++len) {
      acc |= elements[order[(start + len - 1) % l]];
      segs.push_back(acc);
    }
  }
  return segs;
}

bool cycle_order_valid(const std::vector<std::uint32_t>& elements,
                       const std::vector<std::uint32_t>& crossing,
                       const ValidCutSet& cuts, const std::vector<int>& order) {
  std::uint32_t full = cuts.full_mask();
  std::vector<std::uint32_t> segs = segment_unions(elements, order);
  for (std::uint32_t s : segs)
    if (!cuts.contains_partition(s)) return false;
  for (std::uint32_t c : crossing) {
    bool found = false;
    for (std::uint32_t s : segs)
      if (s == c || s == (full & ~c)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

}  // namespace

std::vector<int> order_circular_family(const std::vector<std::uint32_t>& elements,
                                       const std::vector<std::uint32_t>& crossing,
                                       const ValidCutSet& cuts) {
  int l = static_cast<int>(elements.size());
  if (l < 4) throw InvariantBreach("no consistent cycle");
  if (l == 4) {
    // Complements blur the pair-union adjacency test at this size; the three
    // distinct cyclic orders are cheaper to try outright.
    for (const std::vector<int>& order :
         {std::vector<int>{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}}) {
      if (cycle_order_valid(elements, crossing, cuts, order)) return order;
    }
    throw InvariantBreach("no consistent cycle");
  }
  // Elements are cycle-adjacent iff their union is a valid cut.
  std::vector<std::vector<int>> adj(l);
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j)
      if (cuts.contains_partition(elements[i] | elements[j])) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
  for (int i = 0; i < l; ++i)
    if (adj[i].size() != 2) throw InvariantBreach("no consistent cycle");
  std::vector<int> order{0, std::min(adj[0][0], adj[0][1])};
  while (static_cast<int>(order.size()) < l) {
    int cur = order.back(), prev = order[order.size() - 2];
    int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
    order.push_back(next);
  }
  int last = order.back();
  if (adj[last][0] != 0 && adj[last][1] != 0) throw InvariantBreach("no consistent cycle");
  if (!cycle_order_valid(elements, crossing, cuts, order))
    throw InvariantBreach("no consistent cycle");
  return order;
}

Skeleton implant_cycles(const LaminarTree& tree, const ValidCutSet& cuts) {
  const std::uint32_t full = cuts.full_mask();
  int tn = static_cast<int>(tree.nodes.size());
  std::vector<std::vector<std::pair<int, std::uint32_t>>> branches(tn);  // (edge, side away)
  for (int e = 0; e < static_cast<int>(tree.edges.size()); ++e) {
    branches[tree.edges[e].parent].push_back({e, tree.edges[e].child_side});
    branches[tree.edges[e].child].push_back({e, full & ~tree.edges[e].child_side});
  }

  Skeleton sk;
  sk.steiner_universe = cuts.steiner;
  std::vector<char> exploded(tn, 0);
  std::vector<int> plain_id(tn, -1);
  for (int v = 0; v < tn; ++v) {
    if (!tree.nodes[v].crossing.empty()) {
      if (tree.nodes[v].steiner_mask != 0)
        throw InvariantBreach("crossing cuts assigned to a nonempty node");
      if (branches[v].size() < 4)
        throw InvariantBreach("crossing cuts assigned to a node of degree < 4");
      exploded[v] = 1;
    } else {
      plain_id[v] = sk.node_count();
      sk.nodes.push_back({cuts.side_vertices(tree.nodes[v].steiner_mask), NodeKind::tree, -1});
    }
  }

  // Per exploded node, one fresh empty cycle node per incident edge, joined
  // in circular-family order.
  std::vector<std::map<int, int>> cycle_node_for_edge(tn);
  for (int v = 0; v < tn; ++v) {
    if (!exploded[v]) continue;
    std::vector<std::pair<int, std::uint32_t>> br = branches[v];
    std::sort(br.begin(), br.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    std::vector<std::uint32_t> elems;
    for (const auto& [edge, side] : br) elems.push_back(side);
    std::vector<int> order = order_circular_family(elems, tree.nodes[v].crossing, cuts);
    int cycle_id = static_cast<int>(sk.cycles.size());
    SkeletonCycle cyc;
    for (int pos : order) {
      int id = sk.node_count();
      sk.nodes.push_back({{}, NodeKind::cycle, cycle_id});
      cyc.nodes.push_back(id);
      cycle_node_for_edge[v][br[pos].first] = id;
    }
    sk.cycles.push_back(std::move(cyc));
  }

  auto resolve = [&](int tree_node, int tree_edge) {
    return exploded[tree_node] ? cycle_node_for_edge[tree_node].at(tree_edge)
                               : plain_id[tree_node];
  };
  for (int e = 0; e < static_cast<int>(tree.edges.size()); ++e) {
    int a = resolve(tree.edges[e].parent, e);
    int b = resolve(tree.edges[e].child, e);
    sk.edges.push_back({a, b, EdgeKind::tree, -1});
  }
  for (int c = 0; c < static_cast<int>(sk.cycles.size()); ++c) {
    SkeletonCycle& cyc = sk.cycles[c];
    int k = static_cast<int>(cyc.nodes.size());
    for (int i = 0; i < k; ++i) {
      cyc.edges.push_back(sk.edge_count());
      sk.edges.push_back({cyc.nodes[i], cyc.nodes[(i + 1) % k], EdgeKind::cycle, c});
    }
  }
  sk.finalize();
  return sk;
}

Skeleton build_skeleton(const ValidCutSet& cuts) {
  Skeleton sk = implant_cycles(build_laminar_tree(cuts), cuts);
  validate_structure(sk);
  return sk;
}

SkeletonTree::SkeletonTree(const Skeleton& sk) {
  f_.assign(sk.node_count(), -1);
  std::vector<int> cycle_vertex(sk.cycles.size(), -1);
  int vertices = 0;
  std::vector<int> implanted;
  for (int v = 0; v < sk.node_count(); ++v) {
    if (sk.nodes[v].kind == NodeKind::tree) {
      f_[v] = vertices++;
      implanted.push_back(-1);
    } else {
      int c = sk.nodes[v].cycle;
      if (cycle_vertex[c] == -1) {
        cycle_vertex[c] = vertices++;
        implanted.push_back(c);
      }
      f_[v] = cycle_vertex[c];
    }
  }
  implanted_ = std::move(implanted);

  std::vector<std::vector<std::pair<int, int>>> adj(vertices);  // (vertex, skeleton edge)
  for (int e = 0; e < sk.edge_count(); ++e) {
    if (sk.edges[e].kind != EdgeKind::tree) continue;
    int a = f_[sk.edges[e].a], b = f_[sk.edges[e].b];
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }
  for (auto& l : adj) std::sort(l.begin(), l.end());

  int root = 0;
  for (int v = 0; v < vertices; ++v)
    if (adj[v].size() == 1) {
      root = v;
      break;
    }
  parent_.assign(vertices, -1);
  parent_edge_.assign(vertices, -1);
  depth_.assign(vertices, 0);
  first_visit_.assign(vertices, -1);

  // Euler tour for the sparse-table LCA.
  struct Frame {
    int v;
    size_t next;
  };
  std::vector<Frame> stack{{root, 0}};
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next == 0) {
      first_visit_[v] = static_cast<int>(euler_.size());
      euler_.push_back(v);
      euler_depth_.push_back(depth_[v]);
    }
    bool descended = false;
    while (next < adj[v].size()) {
      auto [w, e] = adj[v][next++];
      if (w == parent_[v]) continue;
      parent_[w] = v;
      parent_edge_[w] = e;
      depth_[w] = depth_[v] + 1;
      stack.push_back({w, 0});
      descended = true;
      break;
    }
    if (!descended) {
      stack.pop_back();
      if (!stack.empty()) {
        euler_.push_back(stack.back().v);
        euler_depth_.push_back(depth_[stack.back().v]);
      }
    }
  }

  int m = static_cast<int>(euler_.size());
  log2_.assign(m + 1, 0);
  for (int i = 2; i <= m; ++i) log2_[i] = log2_[i / 2] + 1;
  int levels = log2_[m] + 1;
  sparse_.assign(levels, std::vector<int>(m));
  for (int i = 0; i < m; ++i) sparse_[0][i] = i;
  for (int lv = 1; lv < levels; ++lv) {
    int span = 1 << lv;
    for (int i = 0; i + span <= m; ++i) {
      int l = sparse_[lv - 1][i], r = sparse_[lv - 1][i + span / 2];
      sparse_[lv][i] = euler_depth_[l] <= euler_depth_[r] ? l : r;
    }
  }
}

int SkeletonTree::lca(int u, int v) const {
  int a = first_visit_[u], b = first_visit_[v];
  if (a > b) std::swap(a, b);
  int lv = log2_[b - a + 1];
  int l = sparse_[lv][a], r = sparse_[lv][b - (1 << lv) + 1];
  return euler_[euler_depth_[l] <= euler_depth_[r] ? l : r];
}

std::vector<int> SkeletonTree::f_path_edges(int node_a, int node_b) const {
  int u = f_[node_a], v = f_[node_b];
  if (u == v) return {};
  int l = lca(u, v);
  std::vector<int> down, up;
  for (int x = u; x != l; x = parent_[x]) down.push_back(parent_edge_[x]);
  for (int x = v; x != l; x = parent_[x]) up.push_back(parent_edge_[x]);
  down.insert(down.end(), up.rbegin(), up.rend());
  return down;
}

bool ProperPath::contains_edge(int e) const {
  return std::find(edge_seq.begin(), edge_seq.end(), e) != edge_seq.end();
}

std::optional<ProperPath> proper_path(const Skeleton& sk, const SkeletonTree& tree,
                                      int node_a, int node_b) {
  ProperPath p;
  if (node_a == node_b) {
    p.node_seq = {node_a};
    return p;
  }
  std::vector<int> tedges = tree.f_path_edges(node_a, node_b);
  if (tedges.empty()) {
    int cyc = sk.nodes[node_a].cycle;
    if (cyc < 0 || sk.nodes[node_b].cycle != cyc)
      throw InvariantBreach("distinct nodes with equal companion-tree image");
    int e = sk.cycle_edge_between(cyc, node_a, node_b);
    if (e < 0) return std::nullopt;
    p.node_seq = {node_a, node_b};
    p.edge_seq = {e};
    return p;
  }
  auto bridge = [&](int from, int to) -> bool {
    // Hop within one cycle; a proper path allows at most one edge of it.
    if (from == to) return true;
    int cyc = sk.nodes[from].cycle;
    if (cyc < 0 || sk.nodes[to].cycle != cyc)
      throw InvariantBreach("path expansion left the cycle");
    int ce = sk.cycle_edge_between(cyc, from, to);
    if (ce < 0) return false;
    p.edge_seq.push_back(ce);
    p.node_seq.push_back(to);
    return true;
  };
  p.node_seq.push_back(node_a);
  int cur = node_a;
  int fcur = tree.f(node_a);
  for (int t : tedges) {
    const StructuralEdge& se = sk.edges[t];
    int near = tree.f(se.a) == fcur ? se.a : se.b;
    int far = sk.other_end(t, near);
    if (!bridge(cur, near)) return std::nullopt;
    p.edge_seq.push_back(t);
    p.node_seq.push_back(far);
    cur = far;
    fcur = tree.f(far);
  }
  if (!bridge(cur, node_b)) return std::nullopt;
  return p;
}

bool paths_intersect(const Skeleton& sk, const SkeletonTree& tree,
                     std::pair<int, int> endpoints1, std::pair<int, int> endpoints2) {
  auto p1 = proper_path(sk, tree, endpoints1.first, endpoints1.second);
  auto p2 = proper_path(sk, tree, endpoints2.first, endpoints2.second);
  if (!p1 || !p2) throw DomainError("no proper path between endpoints");
  std::vector<char> tree_edge_in_p1(sk.edge_count(), 0);
  std::vector<char> cycle_in_p1(sk.cycles.size(), 0);
  for (int e : p1->edge_seq) {
    if (sk.edges[e].kind == EdgeKind::tree)
      tree_edge_in_p1[e] = 1;
    else
      cycle_in_p1[sk.edges[e].cycle] = 1;
  }
  for (int e : p2->edge_seq) {
    if (sk.edges[e].kind == EdgeKind::tree) {
      if (tree_edge_in_p1[e]) return true;
    } else if (cycle_in_p1[sk.edges[e].cycle]) {
      return true;
    }
  }
  return false;
}

std::string skeleton_to_dot(const Skeleton& sk, const std::string& name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (int v = 0; v < sk.node_count(); ++v) {
    out << "  n" << v << " [label=\"";
    for (size_t i = 0; i < sk.nodes[v].steiner.size(); ++i)
      out << (i ? " " : "") << sk.nodes[v].steiner[i] + 1;
    out << "\"";
    if (sk.nodes[v].steiner.empty()) out << ", shape=point, width=0.12";
    out << "];\n";
  }
  for (const StructuralEdge& e : sk.edges) {
    out << "  n" << e.a << " -- n" << e.b;
    if (e.kind == EdgeKind::cycle) out << " [style=dashed]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace carcass
