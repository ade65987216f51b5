#include "carcass/carcass.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "carcass/maxflow.hpp"

namespace carcass {

std::vector<int> Flesh::members(int unit) const {
  std::vector<int> out;
  for (int v = 0; v < unit_of.size(); ++v)
    if (unit_of.group_of(v) == unit) out.push_back(v);
  return out;
}

int flesh_bundle_between(const Flesh& flesh, int unit_x, int unit_y) {
  for (int e : flesh.quotient.incident(unit_x))
    if (flesh.quotient.other_end(e, unit_x) == unit_y) return e;
  return -1;
}

namespace {

// Common refinement of the strip partitions, relabeled so unit ids ascend
// with their smallest member vertex.
Partition refine_by_strips(int n, const std::vector<Partition>& strip_parts) {
  std::map<std::vector<int>, int> group_of_sig;
  std::vector<int> label(n);
  for (int v = 0; v < n; ++v) {
    std::vector<int> sig;
    sig.reserve(strip_parts.size());
    for (const Partition& p : strip_parts) sig.push_back(p.group_of(v));
    auto [it, fresh] = group_of_sig.emplace(std::move(sig), static_cast<int>(group_of_sig.size()));
    label[v] = it->second;
  }
  int groups = static_cast<int>(group_of_sig.size());
  std::vector<int> smallest(groups, -1);
  for (int v = n - 1; v >= 0; --v) smallest[label[v]] = v;
  std::vector<int> order(groups);
  for (int i = 0; i < groups; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return smallest[a] < smallest[b]; });
  std::vector<int> rank(groups);
  for (int i = 0; i < groups; ++i) rank[order[i]] = i;
  for (int v = 0; v < n; ++v) label[v] = rank[label[v]];
  return Partition(groups, std::move(label));
}

Flesh flesh_from_parts(const SteinerContext& ctx, const std::vector<Partition>& parts) {
  Flesh flesh;
  flesh.unit_of = refine_by_strips(ctx.graph.vertex_count(), parts);
  flesh.quotient = contract(ctx.graph, flesh.unit_of).quotient;
  flesh.kind.assign(flesh.unit_count(), UnitKind::terminal);
  for (int s : ctx.steiner) flesh.kind[flesh.unit_of.group_of(s)] = UnitKind::steiner;
  flesh.inherent.assign(flesh.unit_count(), {});
  return flesh;
}

// Normalized bipartition of a stretched unit's incident flesh bundles,
// extracted from one strip that keeps it as a non-terminal.
std::vector<std::pair<int, int>> extract_inherent(const Flesh& flesh, const Strip& strip,
                                                  int unit, int unit_vertex) {
  int cls = strip.mapping.group_of(unit_vertex);
  if (strip.is_terminal(cls))
    throw InvariantBreach("distinctness: distinguished unit merged into a terminal");
  std::vector<std::pair<int, int>> sides;
  for (int fb : flesh.quotient.incident(unit)) {
    int other_unit = flesh.quotient.other_end(fb, unit);
    int other_vertex = -1;
    for (int v = 0; v < flesh.unit_of.size(); ++v)
      if (flesh.unit_of.group_of(v) == other_unit) {
        other_vertex = v;
        break;
      }
    int other_cls = strip.mapping.group_of(other_vertex);
    if (other_cls == cls)
      throw InvariantBreach("distinctness: flesh neighbors merged with the unit");
    int a = std::min(cls, other_cls), b = std::max(cls, other_cls);
    int se = -1;
    for (int e : strip.quotient.incident(a))
      if (strip.quotient.other_end(e, a) == b) {
        se = e;
        break;
      }
    if (se < 0) throw InvariantBreach("flesh bundle lost in strip quotient");
    sides.push_back({fb, strip.head(se) == cls ? 0 : 1});
  }
  std::sort(sides.begin(), sides.end());
  if (!sides.empty() && sides.front().second == 1)
    for (auto& [fb, s] : sides) s ^= 1;
  return sides;
}

}  // namespace

Flesh build_flesh(const SteinerContext& ctx) {
  int lambda = ctx.require_lambda();
  int x = ctx.steiner.front();
  std::vector<Partition> parts;
  for (size_t i = 1; i < ctx.steiner.size(); ++i) {
    FlowResult f = max_flow(ctx.graph, {x}, {ctx.steiner[i]});
    if (f.value == lambda)
      parts.push_back(build_strip_from_flow(ctx.graph, f).mapping);
  }
  return flesh_from_parts(ctx, parts);
}

Carcass build_carcass(const SteinerContext& ctx_in, int max_steiner) {
  long flows_before = flow_call_count();
  SteinerContext ctx = ctx_in;

  // Lambda and the flesh pull from the same anchored flows.
  int x = ctx.steiner.front();
  std::vector<FlowResult> anchored;
  int lambda = std::numeric_limits<int>::max();
  for (size_t i = 1; i < ctx.steiner.size(); ++i) {
    anchored.push_back(max_flow(ctx.graph, {x}, {ctx.steiner[i]}));
    lambda = std::min(lambda, anchored.back().value);
  }
  ctx.lambda = lambda;

  ValidCutSet cuts = enumerate_valid_cuts(ctx, max_steiner);
  Skeleton skeleton = build_skeleton(cuts);
  SkeletonTree tree(skeleton);

  std::vector<Partition> parts;
  for (const FlowResult& f : anchored)
    if (f.value == lambda) parts.push_back(build_strip_from_flow(ctx.graph, f).mapping);
  Flesh flesh = flesh_from_parts(ctx, parts);
  int units = flesh.unit_count();
  std::vector<int> unit_vertex(units, -1);
  for (int v = ctx.graph.vertex_count() - 1; v >= 0; --v)
    unit_vertex[flesh.unit_of.group_of(v)] = v;

  // One flow per skeleton tree edge: the tight mincuts of its valid cut give
  // each unit's placement, the strip gives inherent partitions.
  std::vector<int> tree_edges;
  for (int e = 0; e < skeleton.edge_count(); ++e)
    if (skeleton.edges[e].kind == EdgeKind::tree) tree_edges.push_back(e);

  // placement[t][u]: 0 = tight side of edge endpoint a, 1 = tight side of b,
  // 2 = distinguished.
  std::map<int, std::vector<int>> placement;
  std::map<int, Strip> edge_strip;
  std::map<int, std::vector<char>> a_side_nodes;
  for (int e : tree_edges) {
    a_side_nodes.emplace(e, skeleton.split_side({e}, skeleton.edges[e].a));
    std::vector<int> side_a = skeleton.side_of_tree_edge(skeleton.edges[e].a, e);
    std::vector<int> side_b;
    std::set_difference(ctx.steiner.begin(), ctx.steiner.end(), side_a.begin(), side_a.end(),
                        std::back_inserter(side_b));
    FlowResult f = max_flow(ctx.graph, side_a, side_b);
    if (f.value != lambda)
      throw InvariantBreach("skeleton cut is not a Steiner mincut partition");
    std::vector<int>& pl = placement[e];
    pl.assign(units, -1);
    for (int u = 0; u < units; ++u) {
      int v = unit_vertex[u];
      bool tight_a = f.source_reachable[v] != 0;
      bool tight_b = f.sink_coreachable[v] != 0;
      if (tight_a && tight_b) throw InvariantBreach("tight mincuts overlap");
      pl[u] = tight_a ? 0 : (tight_b ? 1 : 2);
      if (pl[u] == 2 && flesh.kind[u] == UnitKind::steiner)
        throw InvariantBreach("Steiner unit distinguished by a minimal cut");
    }
    edge_strip.emplace(e, build_strip_from_flow(ctx.graph, f));
  }

  // Distinguishing tree edges per unit; a cycle edge joins in when both
  // flanking tree edges are present.
  std::vector<std::set<int>> projected(units);
  for (int e : tree_edges)
    for (int u = 0; u < units; ++u)
      if (placement[e][u] == 2) projected[u].insert(e);
  auto tree_edge_at = [&](int cycle_node) {
    for (int e : skeleton.incident(cycle_node))
      if (skeleton.edges[e].kind == EdgeKind::tree) return e;
    throw InvariantBreach("cycle node without a tree edge");
  };
  for (int e = 0; e < skeleton.edge_count(); ++e) {
    if (skeleton.edges[e].kind != EdgeKind::cycle) continue;
    int t1 = tree_edge_at(skeleton.edges[e].a);
    int t2 = tree_edge_at(skeleton.edges[e].b);
    for (int u = 0; u < units; ++u)
      if (projected[u].count(t1) && projected[u].count(t2)) projected[u].insert(e);
  }

  ProjectionMapping projection;
  projection.endpoints.assign(units, {-1, -1});
  for (int u = 0; u < units; ++u) {
    if (flesh.kind[u] == UnitKind::steiner) {
      int node = -1;
      for (int v : flesh.members(u))
        if (ctx.is_steiner(v)) {
          node = skeleton.node_of(v);
          break;
        }
      projection.endpoints[u] = {node, node};
      continue;
    }
    if (projected[u].empty()) {
      // Terminal unit: direct every tree edge toward the unit's tight side;
      // the unique all-inward tree node is its image.
      int image = -1;
      for (int node = 0; node < skeleton.node_count(); ++node) {
        if (skeleton.nodes[node].kind != NodeKind::tree) continue;
        bool all_inward = true;
        for (int e : skeleton.incident(node)) {
          // All incident edges of a tree node are tree edges.
          bool node_on_a = a_side_nodes.at(e)[node] != 0;
          bool unit_on_a = placement.at(e)[u] == 0;
          if (node_on_a != unit_on_a) {
            all_inward = false;
            break;
          }
        }
        if (all_inward) {
          if (image != -1) throw InvariantBreach("terminal unit maps to two nodes");
          image = node;
        }
      }
      if (image == -1) throw InvariantBreach("terminal unit maps to no node");
      flesh.kind[u] = UnitKind::terminal;
      projection.endpoints[u] = {image, image};
      continue;
    }
    // Stretched unit: the distinguishing edges must form a proper path whose
    // first and last edges are tree edges.
    flesh.kind[u] = UnitKind::stretched;
    std::map<int, int> deg;
    for (int e : projected[u]) {
      ++deg[skeleton.edges[e].a];
      ++deg[skeleton.edges[e].b];
    }
    std::vector<int> ends;
    for (auto [node, d] : deg) {
      if (d > 2) throw InvariantBreach("projected edges do not form a path");
      if (d == 1) ends.push_back(node);
    }
    if (ends.size() != 2) throw InvariantBreach("projected edges do not form a path");
    auto path = proper_path(skeleton, tree, ends[0], ends[1]);
    if (!path || std::set<int>(path->edge_seq.begin(), path->edge_seq.end()) != projected[u])
      throw InvariantBreach("projected edges do not form a proper path");
    if (skeleton.edges[path->edge_seq.front()].kind != EdgeKind::tree ||
        skeleton.edges[path->edge_seq.back()].kind != EdgeKind::tree)
      throw InvariantBreach("projection does not start and end with tree edges");
    projection.endpoints[u] = {ends[0], ends[1]};
  }

  // Inherent partitions, identical across every distinguishing strip.
  for (int u = 0; u < units; ++u) {
    if (flesh.kind[u] != UnitKind::stretched) continue;
    bool have = false;
    for (int e : tree_edges) {
      if (placement[e][u] != 2) continue;
      auto sides = extract_inherent(flesh, edge_strip.at(e), u, unit_vertex[u]);
      if (!have) {
        flesh.inherent[u] = std::move(sides);
        have = true;
      } else if (flesh.inherent[u] != sides) {
        throw InvariantBreach("inherent partition differs between strips");
      }
    }
  }

  Carcass cc{std::move(ctx),      std::move(cuts), std::move(skeleton),
             std::move(tree),     std::move(flesh), std::move(projection),
             flow_call_count() - flows_before};
  return cc;
}

std::vector<int> projected_edges(const Carcass& cc, int unit) {
  if (cc.flesh.kind[unit] != UnitKind::stretched) return {};
  auto [a, b] = cc.projection.endpoints[unit];
  auto path = proper_path(cc.skeleton, cc.tree, a, b);
  if (!path) throw InvariantBreach("stored projection endpoints admit no proper path");
  return path->edge_seq;
}

bool distinguished_by(const Carcass& cc, int unit, const MinimalSkeletonCut& cut) {
  if (cc.flesh.kind[unit] != UnitKind::stretched) return false;
  std::vector<int> edges = projected_edges(cc, unit);
  for (int e : cc.skeleton.cut_edge_ids(cut))
    if (std::find(edges.begin(), edges.end(), e) != edges.end()) return true;
  return false;
}

namespace {

std::vector<int> unit_path_ends(const Carcass& cc, int unit) {
  auto [a, b] = cc.projection.endpoints[unit];
  if (a == b) return {a};
  return {a, b};
}

// Endpoints of the proper path covering exactly `edge_set`, oriented so the
// first endpoint belongs to `front_unit`'s projection and the last to
// `back_unit`'s.
std::pair<int, int> path_endpoints_of_union(const Carcass& cc, const std::set<int>& edge_set,
                                            int front_unit, int back_unit) {
  if (edge_set.empty()) {
    int a = cc.projection.endpoints[front_unit].first;
    int b = cc.projection.endpoints[back_unit].first;
    if (a != b) throw InvariantBreach("empty projection union with distinct endpoints");
    return {a, b};
  }
  std::map<int, int> deg;
  for (int e : edge_set) {
    ++deg[cc.skeleton.edges[e].a];
    ++deg[cc.skeleton.edges[e].b];
  }
  std::vector<int> ends;
  for (auto [node, d] : deg) {
    if (d > 2) throw InvariantBreach("projection union is not a path");
    if (d == 1) ends.push_back(node);
  }
  if (ends.size() != 2) throw InvariantBreach("projection union is not a path");
  auto pp = proper_path(cc.skeleton, cc.tree, ends[0], ends[1]);
  if (!pp || std::set<int>(pp->edge_seq.begin(), pp->edge_seq.end()) != edge_set)
    throw InvariantBreach("projection union is not a proper path");

  auto is_end_of = [&](int node, int unit) {
    auto e = unit_path_ends(cc, unit);
    return std::find(e.begin(), e.end(), node) != e.end();
  };
  int start = ends[0], finish = ends[1];
  bool st_front = is_end_of(start, front_unit), st_back = is_end_of(start, back_unit);
  bool fin_front = is_end_of(finish, front_unit), fin_back = is_end_of(finish, back_unit);
  if (st_front && fin_back) return {start, finish};
  if (st_back && fin_front) return {finish, start};
  if (fin_back) return {start, finish};
  if (st_back) return {finish, start};
  throw InvariantBreach("projection union misses its endpoint projections");
}

std::set<int> connect_projections(const Carcass& cc, int unit_x, int unit_y) {
  std::vector<int> ex = projected_edges(cc, unit_x);
  std::vector<int> ey = projected_edges(cc, unit_y);
  std::set<int> uni(ex.begin(), ex.end());
  size_t before = uni.size();
  uni.insert(ey.begin(), ey.end());
  bool disjoint = uni.size() == before + ey.size();
  if (!disjoint || (ex.empty() && ey.empty() &&
                    cc.projection.endpoints[unit_x].first ==
                        cc.projection.endpoints[unit_y].first))
    return uni;
  // Disjoint projections: exactly one endpoint pair admits a connector that
  // avoids both projections (possibly the empty path).
  for (int p : unit_path_ends(cc, unit_x)) {
    for (int q : unit_path_ends(cc, unit_y)) {
      auto conn = proper_path(cc.skeleton, cc.tree, p, q);
      if (!conn) continue;
      bool clean = true;
      for (int e : conn->edge_seq)
        if (uni.count(e)) {
          clean = false;
          break;
        }
      if (!clean) continue;
      uni.insert(conn->edge_seq.begin(), conn->edge_seq.end());
      return uni;
    }
  }
  throw InvariantBreach("no proper connector between endpoint projections");
}

}  // namespace

std::pair<int, int> project_edge(const Carcass& cc, int unit_x, int unit_y) {
  if (flesh_bundle_between(cc.flesh, unit_x, unit_y) < 0)
    throw DomainError("units are not adjacent in the flesh");
  std::set<int> uni = connect_projections(cc, unit_x, unit_y);
  return path_endpoints_of_union(cc, uni, unit_x, unit_y);
}

std::pair<int, int> project_coherent_path(const Carcass& cc, const std::vector<int>& units) {
  if (units.size() < 2) throw DomainError("coherent path needs at least one edge");
  std::vector<int> bundles;
  for (size_t i = 0; i + 1 < units.size(); ++i) {
    int fb = flesh_bundle_between(cc.flesh, units[i], units[i + 1]);
    if (fb < 0) throw DomainError("consecutive units are not adjacent");
    bundles.push_back(fb);
  }
  for (size_t i = 1; i + 1 < units.size(); ++i) {
    int u = units[i];
    if (cc.flesh.kind[u] != UnitKind::stretched) throw DomainError("not coherent");
    auto side_of = [&](int fb) {
      for (auto [b, s] : cc.flesh.inherent[u])
        if (b == fb) return s;
      throw InvariantBreach("bundle missing from inherent partition");
    };
    if (side_of(bundles[i - 1]) == side_of(bundles[i])) throw DomainError("not coherent");
  }
  std::set<int> uni;
  for (size_t i = 0; i + 1 < units.size(); ++i) {
    std::set<int> part = connect_projections(cc, units[i], units[i + 1]);
    uni.insert(part.begin(), part.end());
  }
  return path_endpoints_of_union(cc, uni, units.front(), units.back());
}

std::string flesh_to_dot(const Carcass& cc, const std::string& name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (int u = 0; u < cc.flesh.unit_count(); ++u) {
    out << "  u" << u << " [label=\"";
    std::vector<int> mem = cc.flesh.members(u);
    for (size_t i = 0; i < mem.size(); ++i) out << (i ? " " : "") << mem[i] + 1;
    out << "\"";
    switch (cc.flesh.kind[u]) {
      case UnitKind::steiner: out << ", shape=doublecircle"; break;
      case UnitKind::terminal: out << ", shape=circle"; break;
      case UnitKind::stretched: out << ", shape=box"; break;
    }
    out << "];\n";
  }
  for (int e = 0; e < cc.flesh.quotient.bundle_count(); ++e) {
    const EdgeBundle& b = cc.flesh.quotient.edge(e);
    out << "  u" << b.u << " -- u" << b.v << " [label=\"" << b.multiplicity << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string projection_dump(const Carcass& cc) {
  std::ostringstream out;
  for (int u = 0; u < cc.flesh.unit_count(); ++u) {
    auto [a, b] = cc.projection.endpoints[u];
    out << "unit " << u << " -> ";
    if (cc.flesh.kind[u] == UnitKind::stretched)
      out << "(node " << a << ", node " << b << ")";
    else
      out << "node " << a;
    out << "\n";
  }
  return out.str();
}

}  // namespace carcass
