#include "carcass/queries.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace carcass {

namespace {

// Relabel classes canonically (source 0, sink 1, non-terminals by smallest
// member vertex), contract, and recover the orientation Kahn-style.
Strip assemble_strip(const MultiGraph& g, const std::vector<int>& raw_label, int raw_source,
                     int raw_sink, int raw_classes) {
  std::vector<int> smallest(raw_classes, -1);
  for (int v = g.vertex_count() - 1; v >= 0; --v) smallest[raw_label[v]] = v;
  std::vector<int> nonterminals;
  for (int c = 0; c < raw_classes; ++c)
    if (c != raw_source && c != raw_sink) nonterminals.push_back(c);
  std::sort(nonterminals.begin(), nonterminals.end(),
            [&](int a, int b) { return smallest[a] < smallest[b]; });
  std::vector<int> relabel(raw_classes, -1);
  relabel[raw_source] = 0;
  relabel[raw_sink] = 1;
  for (size_t i = 0; i < nonterminals.size(); ++i)
    relabel[nonterminals[i]] = 2 + static_cast<int>(i);
  std::vector<int> label(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) label[v] = relabel[raw_label[v]];

  Partition part(raw_classes, std::move(label));
  ContractResult contracted = contract(g, part);
  Strip strip{std::move(contracted.quotient), std::move(contracted.mapping), 0, 1, {}};
  strip.direction = orient_undirected_analogue(strip.quotient, 0, 1);
  return strip;
}

struct Corridor {
  std::vector<int> tree_edges;  // skeleton tree edges along the f-path
  std::vector<int> cycles;      // corridor cycle ids
  std::vector<int> comp_of_node;
  int comp_count = 0;
};

Corridor corridor_between(const Carcass& cc, int node_a, int node_b) {
  const Skeleton& sk = cc.skeleton;
  Corridor cor;
  cor.tree_edges = cc.tree.f_path_edges(node_a, node_b);
  // Implant vertices interior to the f-path carry the corridor cycles.
  int fprev = cc.tree.f(node_a);
  for (size_t i = 0; i + 1 < cor.tree_edges.size(); ++i) {
    const StructuralEdge& se = sk.edges[cor.tree_edges[i]];
    int fnext = cc.tree.f(se.a) == fprev ? cc.tree.f(se.b) : cc.tree.f(se.a);
    if (cc.tree.implanted_cycle(fnext) >= 0) cor.cycles.push_back(cc.tree.implanted_cycle(fnext));
    fprev = fnext;
  }
  std::vector<int> removed(cor.tree_edges);
  for (int c : cor.cycles)
    removed.insert(removed.end(), sk.cycles[c].edges.begin(), sk.cycles[c].edges.end());
  std::vector<char> banned(sk.edge_count(), 0);
  for (int e : removed) banned[e] = 1;
  cor.comp_of_node.assign(sk.node_count(), -1);
  for (int seed = 0; seed < sk.node_count(); ++seed) {
    if (cor.comp_of_node[seed] != -1) continue;
    int comp = cor.comp_count++;
    std::vector<int> stack{seed};
    cor.comp_of_node[seed] = comp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : sk.incident(v)) {
        if (banned[e]) continue;
        int w = sk.other_end(e, v);
        if (cor.comp_of_node[w] == -1) {
          cor.comp_of_node[w] = comp;
          stack.push_back(w);
        }
      }
    }
  }
  return cor;
}

// Does the stretched unit's projection share an edge with the corridor?
bool projection_meets_corridor(const Carcass& cc, const Corridor& cor,
                               const std::vector<int>& unit_edges) {
  std::vector<char> in_corridor_cycle(cc.skeleton.cycles.size(), 0);
  for (int c : cor.cycles) in_corridor_cycle[c] = 1;
  for (int e : unit_edges) {
    const StructuralEdge& se = cc.skeleton.edges[e];
    if (se.kind == EdgeKind::tree) {
      if (std::find(cor.tree_edges.begin(), cor.tree_edges.end(), e) != cor.tree_edges.end())
        return true;
    } else if (in_corridor_cycle[se.cycle]) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<MinimalSkeletonCut> QuerySubcactus::separating_minimal_cuts() const {
  std::vector<MinimalSkeletonCut> out;
  for (const MinimalSkeletonCut& cut : quotient.minimal_cuts()) {
    std::vector<char> side = quotient.split_side(quotient.cut_edge_ids(cut), anchor_a);
    if (!side[anchor_b]) out.push_back(cut);
  }
  return out;
}

Strip strip_for_minimal_cut(const Carcass& cc, const MinimalSkeletonCut& cut) {
  const Skeleton& sk = cc.skeleton;
  std::vector<char> on_source_side = sk.node_side(cut);  // anchor side
  std::vector<int> cut_edges = sk.cut_edge_ids(cut);

  int units = cc.flesh.unit_count();
  std::vector<int> unit_class(units, -1);  // 0 source, 1 sink, 2+i per distinguished unit
  int next = 2;
  for (int u = 0; u < units; ++u) {
    if (cc.flesh.kind[u] == UnitKind::stretched) {
      std::vector<int> pe = projected_edges(cc, u);
      bool hit = false;
      for (int e : cut_edges)
        if (std::find(pe.begin(), pe.end(), e) != pe.end()) hit = true;
      if (hit) {
        unit_class[u] = next++;
        continue;
      }
    }
    unit_class[u] = on_source_side[cc.projection.endpoints[u].first] ? 0 : 1;
  }
  std::vector<int> label(cc.ctx.graph.vertex_count());
  for (int v = 0; v < cc.ctx.graph.vertex_count(); ++v)
    label[v] = unit_class[cc.flesh.unit_of.group_of(v)];
  return assemble_strip(cc.ctx.graph, label, 0, 1, next);
}

QuerySubcactus subcactus_between(const Carcass& cc, int s, int t) {
  const Skeleton& sk = cc.skeleton;
  int na = sk.node_of(s), nb = sk.node_of(t);
  if (na == nb) throw DomainError("not separated");
  Corridor cor = corridor_between(cc, na, nb);

  QuerySubcactus out;
  out.contained.assign(cor.comp_count, {});
  for (int v = 0; v < sk.node_count(); ++v) out.contained[cor.comp_of_node[v]].push_back(v);
  out.quotient.steiner_universe = sk.steiner_universe;
  out.quotient.nodes.assign(cor.comp_count, {});
  for (int v = 0; v < sk.node_count(); ++v) {
    auto& steiner = out.quotient.nodes[cor.comp_of_node[v]].steiner;
    steiner.insert(steiner.end(), sk.nodes[v].steiner.begin(), sk.nodes[v].steiner.end());
  }
  for (auto& node : out.quotient.nodes) std::sort(node.steiner.begin(), node.steiner.end());
  for (int e : cor.tree_edges)
    out.quotient.edges.push_back(
        {cor.comp_of_node[sk.edges[e].a], cor.comp_of_node[sk.edges[e].b], EdgeKind::tree, -1});
  for (int c : cor.cycles) {
    int qc = static_cast<int>(out.quotient.cycles.size());
    SkeletonCycle cyc;
    for (int node : sk.cycles[c].nodes) {
      int comp = cor.comp_of_node[node];
      cyc.nodes.push_back(comp);
      out.quotient.nodes[comp].kind = NodeKind::cycle;
      out.quotient.nodes[comp].cycle = qc;
    }
    int k = static_cast<int>(cyc.nodes.size());
    for (int i = 0; i < k; ++i) {
      cyc.edges.push_back(out.quotient.edge_count());
      out.quotient.edges.push_back({cyc.nodes[i], cyc.nodes[(i + 1) % k], EdgeKind::cycle, qc});
    }
    out.quotient.cycles.push_back(std::move(cyc));
  }
  out.quotient.finalize();
  out.anchor_a = cor.comp_of_node[na];
  out.anchor_b = cor.comp_of_node[nb];
  return out;
}

Strip strip_between(const Carcass& cc, int s, int t) {
  const Skeleton& sk = cc.skeleton;
  int na = sk.node_of(s), nb = sk.node_of(t);
  if (na == nb) throw DomainError("not separated");
  Corridor cor = corridor_between(cc, na, nb);

  int units = cc.flesh.unit_count();
  // Classes: corridor components first, surviving stretched units after.
  std::vector<int> unit_class(units, -1);
  int next = cor.comp_count;
  for (int u = 0; u < units; ++u) {
    if (cc.flesh.kind[u] == UnitKind::stretched) {
      std::vector<int> pe = projected_edges(cc, u);
      if (projection_meets_corridor(cc, cor, pe)) {
        unit_class[u] = next++;
        continue;
      }
    }
    unit_class[u] = cor.comp_of_node[cc.projection.endpoints[u].first];
  }
  // Components that gathered no unit (empty entry/exit cycle nodes) vanish.
  std::vector<int> compact(next, -1);
  std::vector<int> label(cc.ctx.graph.vertex_count());
  int classes = 0;
  for (int v = 0; v < cc.ctx.graph.vertex_count(); ++v) {
    int raw = unit_class[cc.flesh.unit_of.group_of(v)];
    if (compact[raw] == -1) compact[raw] = classes++;
    label[v] = compact[raw];
  }
  int source = compact[cor.comp_of_node[na]];
  int sink = compact[cor.comp_of_node[nb]];
  if (source < 0 || sink < 0) throw InvariantBreach("anchor component lost its units");
  return assemble_strip(cc.ctx.graph, label, source, sink, classes);
}

namespace {

std::optional<VertexCut> lex_smallest(std::vector<VertexCut> candidates) {
  if (candidates.empty()) return std::nullopt;
  auto best = candidates.begin();
  for (auto it = std::next(best); it != candidates.end(); ++it)
    if (it->inside_vertices() < best->inside_vertices()) best = it;
  return *best;
}

}  // namespace

std::optional<VertexCut> report_separating_mincut(const Carcass& cc, int unit_x, int unit_y) {
  if (unit_x == unit_y) return std::nullopt;
  int x = unit_x, y = unit_y;
  std::vector<int> ex = projected_edges(cc, x), ey = projected_edges(cc, y);
  if (ex.empty() && !ey.empty()) {
    std::swap(x, y);
    std::swap(ex, ey);
  }
  std::vector<VertexCut> candidates;
  if (ex.empty()) {
    // Two terminal units sit at distinct tree nodes; any tree edge between
    // them defines a separating bunch.
    int nx = cc.projection.endpoints[x].first, ny = cc.projection.endpoints[y].first;
    if (nx == ny) throw InvariantBreach("distinct terminal units share a node");
    std::vector<int> path = cc.tree.f_path_edges(nx, ny);
    if (path.empty()) throw InvariantBreach("terminal units with no tree edge between them");
    Strip strip = strip_for_minimal_cut(cc, {MinimalSkeletonCut::Kind::tree_edge, path.front(), -1});
    candidates.push_back(preimage_cut(strip, {strip.source}));
    std::vector<int> all_but_sink;
    for (int v = 0; v < strip.vertex_count(); ++v)
      if (v != strip.sink) all_but_sink.push_back(v);
    candidates.push_back(preimage_cut(strip, all_but_sink));
  } else {
    // Prefer a shared tree edge so both units appear as non-terminals.
    int chosen = -1;
    for (int e : ex)
      if (cc.skeleton.edges[e].kind == EdgeKind::tree &&
          std::find(ey.begin(), ey.end(), e) != ey.end()) {
        chosen = e;
        break;
      }
    bool shared = chosen >= 0;
    if (!shared) {
      for (int e : ex)
        if (cc.skeleton.edges[e].kind == EdgeKind::tree) {
          chosen = e;
          break;
        }
    }
    Strip strip = strip_for_minimal_cut(cc, {MinimalSkeletonCut::Kind::tree_edge, chosen, -1});
    int cx = strip.mapping.group_of(cc.flesh.members(x).front());
    int cy = strip.mapping.group_of(cc.flesh.members(y).front());
    if (shared) {
      std::vector<int> cone_x = reachability_cone(strip, cx, ConeDirection::toward_source);
      if (!std::count(cone_x.begin(), cone_x.end(), cy))
        candidates.push_back(preimage_cut(strip, cone_x));
      std::vector<int> cone_y = reachability_cone(strip, cy, ConeDirection::toward_source);
      if (!std::count(cone_y.begin(), cone_y.end(), cx))
        candidates.push_back(preimage_cut(strip, cone_y));
    } else if (cy == strip.sink) {
      std::vector<int> cone = reachability_cone(strip, cx, ConeDirection::toward_source);
      candidates.push_back(preimage_cut(strip, cone));
      std::vector<int> all_but_sink;
      for (int v = 0; v < strip.vertex_count(); ++v)
        if (v != strip.sink) all_but_sink.push_back(v);
      candidates.push_back(preimage_cut(strip, all_but_sink));
    } else if (cy == strip.source) {
      std::vector<int> cone = reachability_cone(strip, cx, ConeDirection::toward_sink);
      std::vector<int> complement;
      std::vector<char> in_cone(strip.vertex_count(), 0);
      for (int v : cone) in_cone[v] = 1;
      for (int v = 0; v < strip.vertex_count(); ++v)
        if (!in_cone[v]) complement.push_back(v);
      candidates.push_back(preimage_cut(strip, complement));
      candidates.push_back(preimage_cut(strip, {strip.source}));
    } else {
      throw InvariantBreach("undistinguished unit away from both terminals");
    }
  }
  auto best = lex_smallest(std::move(candidates));
  if (!best) throw InvariantBreach("no separating candidate survived");
  if (cut_capacity(cc.ctx.graph, *best) != cc.ctx.require_lambda())
    throw InvariantBreach("reported cut is not a Steiner mincut");
  if (best->contains(cc.flesh.members(unit_x).front()) ==
      best->contains(cc.flesh.members(unit_y).front()))
    throw InvariantBreach("reported cut does not separate the units");
  return best;
}

std::optional<VertexCut> report_edge_separating_mincut(const Carcass& cc, int u, int v) {
  bool found = false;
  for (int e : cc.ctx.graph.incident(u))
    if (cc.ctx.graph.other_end(e, u) == v) found = true;
  if (!found) throw DomainError("no such edge");
  int ux = cc.flesh.unit_of.group_of(u), uy = cc.flesh.unit_of.group_of(v);
  return report_separating_mincut(cc, ux, uy);
}

RingGraph ring_view(const Carcass& cc, int cycle_id) {
  const Skeleton& sk = cc.skeleton;
  if (cycle_id < 0 || cycle_id >= static_cast<int>(sk.cycles.size()))
    throw DomainError("no such cycle");
  const SkeletonCycle& cyc = sk.cycles[cycle_id];
  int k = static_cast<int>(cyc.nodes.size());

  std::vector<int> comp_of_node(sk.node_count(), -1);
  {
    std::vector<char> banned(sk.edge_count(), 0);
    for (int e : cyc.edges) banned[e] = 1;
    for (int i = 0; i < k; ++i) {
      std::vector<int> stack{cyc.nodes[i]};
      comp_of_node[cyc.nodes[i]] = i;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e : sk.incident(v)) {
          if (banned[e]) continue;
          int w = sk.other_end(e, v);
          if (comp_of_node[w] == -1) {
            comp_of_node[w] = i;
            stack.push_back(w);
          }
        }
      }
    }
  }

  int units = cc.flesh.unit_count();
  std::vector<int> unit_class(units, -1);
  std::vector<int> survivors;
  std::vector<int> survivor_cycle_edge;
  for (int u = 0; u < units; ++u) {
    if (cc.flesh.kind[u] == UnitKind::stretched) {
      std::vector<int> pe = projected_edges(cc, u);
      int through = -1;
      for (int e : pe)
        if (sk.edges[e].kind == EdgeKind::cycle && sk.edges[e].cycle == cycle_id) {
          if (through != -1)
            throw InvariantBreach("projection shares two edges with one cycle");
          through = e;
        }
      if (through != -1) {
        unit_class[u] = k + static_cast<int>(survivors.size());
        survivors.push_back(u);
        survivor_cycle_edge.push_back(through);
        continue;
      }
    }
    unit_class[u] = comp_of_node[cc.projection.endpoints[u].first];
  }

  RingGraph ring;
  ring.cycle = cycle_id;
  for (int i = 0; i < k; ++i)
    ring.vertices.push_back({RingVertex::Kind::cycle_node, cyc.nodes[i]});
  for (int u : survivors) ring.vertices.push_back({RingVertex::Kind::unit, u});

  std::vector<int> label(cc.ctx.graph.vertex_count());
  for (int v = 0; v < cc.ctx.graph.vertex_count(); ++v)
    label[v] = unit_class[cc.flesh.unit_of.group_of(v)];
  Partition part(k + static_cast<int>(survivors.size()), std::move(label));
  ContractResult contracted = contract(cc.ctx.graph, part);
  ring.quotient = std::move(contracted.quotient);
  ring.mapping = std::move(contracted.mapping);

  // Ring constraints.
  for (const EdgeBundle& b : ring.quotient.edges()) {
    bool u_node = b.u < k, v_node = b.v < k;
    if (u_node && v_node) {
      int d = std::abs(b.u - b.v);
      if (std::min(d, k - d) > 1)
        throw InvariantBreach("ring constraint: edge between non-adjacent cycle nodes");
    } else if (!u_node && !v_node) {
      if (survivor_cycle_edge[b.u - k] != survivor_cycle_edge[b.v - k])
        throw InvariantBreach("ring constraint: adjacent units on different cycle edges");
    } else {
      int pos = u_node ? b.u : b.v;
      int through = survivor_cycle_edge[(u_node ? b.v : b.u) - k];
      int e_prev = cyc.edges[(pos + k - 1) % k], e_next = cyc.edges[pos];
      if (through != e_prev && through != e_next)
        throw InvariantBreach("ring constraint: unit adjacent to a far cycle node");
    }
  }
  return ring;
}

}  // namespace carcass
