#include "carcass/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "carcass/maxflow.hpp"

namespace carcass {

namespace {

// Capacity of every vertex subset, indexed by bitmask.
std::vector<int> capacity_table(const MultiGraph& g) {
  int n = g.vertex_count();
  std::vector<int> table(std::size_t{1} << n, 0);
  for (std::uint32_t m = 0; m < table.size(); ++m) {
    int cap = 0;
    for (const EdgeBundle& e : g.edges()) {
      bool iu = (m >> e.u) & 1u, iv = (m >> e.v) & 1u;
      if (iu != iv) cap += e.multiplicity;
    }
    table[m] = cap;
  }
  return table;
}

std::uint32_t vertex_mask(const VertexCut& cut) {
  std::uint32_t m = 0;
  for (int v : cut.inside_vertices()) m |= 1u << v;
  return m;
}

VertexCut cut_from_mask(int n, std::uint32_t mask) {
  std::vector<char> inside(n, 0);
  for (int v = 0; v < n; ++v)
    if ((mask >> v) & 1u) inside[v] = 1;
  return VertexCut(n, std::move(inside));
}

std::uint32_t steiner_part(std::uint32_t vmask, const std::vector<int>& steiner) {
  std::uint32_t m = 0;
  for (size_t i = 0; i < steiner.size(); ++i)
    if ((vmask >> steiner[i]) & 1u) m |= 1u << i;
  return m;
}

}  // namespace

int OracleReport::bunch_of(std::uint32_t side_mask) const {
  auto it = std::lower_bound(bunch_side.begin(), bunch_side.end(), side_mask);
  if (it == bunch_side.end() || *it != side_mask) return -1;
  return static_cast<int>(it - bunch_side.begin());
}

OracleReport enumerate_all(const SteinerContext& ctx, int max_vertices) {
  int n = ctx.graph.vertex_count();
  if (n > max_vertices) throw DomainError("instance too large");
  std::vector<int> table = capacity_table(ctx.graph);
  std::uint32_t full = (n >= 32) ? ~0u : ((1u << n) - 1u);
  std::uint32_t steiner_full = (1u << ctx.steiner.size()) - 1u;

  OracleReport rep;
  rep.lambda = -1;
  std::vector<std::uint32_t> mincut_masks;
  // Vertex 0 fixed inside halves the enumeration.
  for (std::uint32_t half = 0; half < (1u << (n - 1)); ++half) {
    std::uint32_t m = (half << 1) | 1u;
    if (m == full) continue;
    std::uint32_t sp = steiner_part(m, ctx.steiner);
    if (sp == 0 || sp == steiner_full) continue;
    if (rep.lambda < 0 || table[m] < rep.lambda) rep.lambda = table[m];
  }
  for (std::uint32_t half = 0; half < (1u << (n - 1)); ++half) {
    std::uint32_t m = (half << 1) | 1u;
    if (m == full) continue;
    std::uint32_t sp = steiner_part(m, ctx.steiner);
    if (sp == 0 || sp == steiner_full) continue;
    if (table[m] == rep.lambda) mincut_masks.push_back(m);
  }
  for (std::uint32_t m : mincut_masks) rep.mincuts.push_back(cut_from_mask(n, m));

  std::map<std::uint32_t, std::vector<int>> bunch;
  for (size_t i = 0; i < mincut_masks.size(); ++i) {
    std::uint32_t sp = steiner_part(mincut_masks[i], ctx.steiner);
    if (!(sp & 1u)) sp = steiner_full & ~sp;
    bunch[sp].push_back(static_cast<int>(i));
  }
  for (auto& [side, members] : bunch) {
    rep.bunch_side.push_back(side);
    rep.bunch_members.push_back(std::move(members));
  }

  // Units: signature of a vertex = its side in every mincut.
  std::map<std::vector<char>, int> group;
  std::vector<int> raw(n);
  for (int v = 0; v < n; ++v) {
    std::vector<char> s;
    s.reserve(mincut_masks.size());
    for (std::uint32_t m : mincut_masks) s.push_back((m >> v) & 1u);
    auto [it, fresh] = group.emplace(std::move(s), static_cast<int>(group.size()));
    raw[v] = it->second;
  }
  rep.unit_count = static_cast<int>(group.size());
  std::vector<int> smallest(rep.unit_count, -1);
  for (int v = n - 1; v >= 0; --v) smallest[raw[v]] = v;
  std::vector<int> order(rep.unit_count);
  for (int i = 0; i < rep.unit_count; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return smallest[a] < smallest[b]; });
  std::vector<int> rank(rep.unit_count);
  for (int i = 0; i < rep.unit_count; ++i) rank[order[i]] = i;
  rep.unit_label.resize(n);
  for (int v = 0; v < n; ++v) rep.unit_label[v] = rank[raw[v]];
  return rep;
}

namespace {

// Tight source/sink sides per bunch, as vertex masks oriented so the inside
// Steiner part equals the (anchor-normalized) bunch side.
struct BunchTights {
  std::vector<std::uint32_t> n_src;  // intersection of oriented insides
  std::vector<std::uint32_t> f_src;  // union of oriented insides
};

BunchTights bunch_tights(const SteinerContext& ctx, const OracleReport& rep) {
  int n = ctx.graph.vertex_count();
  std::uint32_t full = (n >= 32) ? ~0u : ((1u << n) - 1u);
  BunchTights bt;
  for (size_t b = 0; b < rep.bunch_side.size(); ++b) {
    std::uint32_t inter = full, uni = 0;
    for (int idx : rep.bunch_members[b]) {
      std::uint32_t m = vertex_mask(rep.mincuts[idx]);
      std::uint32_t sp = steiner_part(m, ctx.steiner);
      if (sp != rep.bunch_side[b]) m = full & ~m;
      inter &= m;
      uni |= m;
    }
    bt.n_src.push_back(inter);
    bt.f_src.push_back(uni);
  }
  return bt;
}

}  // namespace

std::vector<std::vector<char>> distinguish_relation(const SteinerContext& ctx,
                                                    const OracleReport& rep,
                                                    const Skeleton& sk) {
  BunchTights bt = bunch_tights(ctx, rep);
  std::vector<MinimalSkeletonCut> mcuts = sk.minimal_cuts();
  std::vector<int> unit_vertex(rep.unit_count, -1);
  for (int v = static_cast<int>(rep.unit_label.size()) - 1; v >= 0; --v)
    unit_vertex[rep.unit_label[v]] = v;
  int n = ctx.graph.vertex_count();
  std::uint32_t full = (n >= 32) ? ~0u : ((1u << n) - 1u);

  std::vector<std::vector<char>> rel(rep.unit_count, std::vector<char>(mcuts.size(), 0));
  for (size_t c = 0; c < mcuts.size(); ++c) {
    int b = rep.bunch_of(sk.steiner_side_mask(mcuts[c]));
    if (b < 0) continue;  // caught by the multiset verdict
    std::uint32_t n_src = bt.n_src[b];
    std::uint32_t n_snk = full & ~bt.f_src[b];
    for (int u = 0; u < rep.unit_count; ++u) {
      std::uint32_t v = 1u << unit_vertex[u];
      rel[u][c] = !(n_src & v) && !(n_snk & v);
    }
  }
  return rel;
}

namespace {

struct Checker {
  std::vector<Verdict> verdicts;
  void add(const std::string& anchor, bool ok, const std::string& detail = "") {
    verdicts.push_back({anchor, ok, ok ? "" : detail});
  }
};

std::string mask_str(std::uint32_t m) {
  std::ostringstream s;
  s << "0x" << std::hex << m;
  return s.str();
}

// All simple paths between two skeleton nodes, as edge-id sequences.
void all_simple_paths(const Skeleton& sk, int from, int to, std::vector<char>& vis,
                      std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (from == to) {
    out.push_back(cur);
    return;
  }
  for (int e : sk.incident(from)) {
    int w = sk.other_end(e, from);
    if (vis[w]) continue;
    vis[w] = 1;
    cur.push_back(e);
    all_simple_paths(sk, w, to, vis, cur, out);
    cur.pop_back();
    vis[w] = 0;
  }
}

bool path_is_proper(const Skeleton& sk, const std::vector<int>& edges) {
  std::map<int, int> per_cycle;
  for (int e : edges)
    if (sk.edges[e].kind == EdgeKind::cycle) ++per_cycle[sk.edges[e].cycle];
  for (auto [c, cnt] : per_cycle)
    if (cnt != 1) return false;
  return true;
}

std::vector<std::pair<int, int>> strip_inherent(const Flesh& flesh, const Strip& strip,
                                                int unit, int unit_vertex) {
  int cls = strip.mapping.group_of(unit_vertex);
  std::vector<std::pair<int, int>> sides;
  for (int fb : flesh.quotient.incident(unit)) {
    int other_unit = flesh.quotient.other_end(fb, unit);
    int ov = -1;
    for (int v = 0; v < flesh.unit_of.size(); ++v)
      if (flesh.unit_of.group_of(v) == other_unit) {
        ov = v;
        break;
      }
    int ocls = strip.mapping.group_of(ov);
    int a = std::min(cls, ocls), b = std::max(cls, ocls);
    int se = -1;
    for (int e : strip.quotient.incident(a))
      if (strip.quotient.other_end(e, a) == b) se = e;
    if (se < 0 || ocls == cls) return {};  // caller reports distinctness failure
    sides.push_back({fb, strip.head(se) == cls ? 0 : 1});
  }
  std::sort(sides.begin(), sides.end());
  if (!sides.empty() && sides.front().second == 1)
    for (auto& [fb, s] : sides) s ^= 1;
  return sides;
}

}  // namespace

std::vector<Verdict> check_carcass(const SteinerContext& ctx, const Carcass& cc,
                                   const OracleReport& rep) {
  Checker ck;
  const MultiGraph& g = ctx.graph;
  const int n = g.vertex_count();
  const std::uint32_t full = (n >= 32) ? ~0u : ((1u << n) - 1u);
  const std::uint32_t sfull = (1u << ctx.steiner.size()) - 1u;
  const std::vector<int> table = capacity_table(g);
  const std::vector<MinimalSkeletonCut> mcuts = cc.skeleton.minimal_cuts();
  const std::vector<std::vector<char>> rel = distinguish_relation(ctx, rep, cc.skeleton);
  const BunchTights bt = bunch_tights(ctx, rep);
  const int units = cc.flesh.unit_count();
  std::mt19937 rng(20240817u);

  std::vector<std::uint32_t> mincut_masks;
  for (const VertexCut& c : rep.mincuts) mincut_masks.push_back(vertex_mask(c));

  // --- lambda -------------------------------------------------------------
  ck.add("steiner-mincut-capacity", ctx.lambda && *ctx.lambda == rep.lambda,
         "library lambda disagrees with exhaustive enumeration");

  // --- oracle self-consistency --------------------------------------------
  {
    bool ok = rep.bunch_side.size() == std::set<std::uint32_t>(rep.bunch_side.begin(),
                                                               rep.bunch_side.end())
                                           .size();
    size_t covered = 0;
    for (const auto& m : rep.bunch_members) covered += m.size();
    ok = ok && covered == rep.mincuts.size();
    ck.add("oracle-self-consistency", ok, "bunches do not partition the mincut set");
  }

  // --- submodularity -------------------------------------------------------
  {
    bool ok = true;
    std::string detail;
    auto test_pair = [&](std::uint32_t a, std::uint32_t b) {
      std::uint32_t i = a & b, u = (a | b) & full;
      if (i == 0 || u == full) return;
      if (table[a] + table[b] < table[i] + table[u]) {
        ok = false;
        detail = "violated for " + mask_str(a) + "," + mask_str(b);
      }
    };
    if (n <= 8) {
      for (std::uint32_t a = 1; a < full && ok; ++a)
        for (std::uint32_t b = a; b < full && ok; ++b) test_pair(a, b);
    } else {
      for (std::uint32_t a : mincut_masks)
        for (std::uint32_t b : mincut_masks) test_pair(a, b);
      for (int i = 0; i < 20000 && ok; ++i)
        test_pair(rng() & full, rng() & full);
    }
    ck.add("submodularity-of-cuts", ok, detail);
  }

  // --- four-point inequality ----------------------------------------------
  {
    bool ok = true;
    std::string detail;
    auto test_triple = [&](std::uint32_t c1, std::uint32_t c2, std::uint32_t c3) {
      int lhs = table[c1] + table[c2] + table[c3];
      int rhs = table[c1 & ~c2 & ~c3 & full] + table[~c1 & c2 & ~c3 & full] +
                table[~c1 & ~c2 & c3 & full] + table[c1 & c2 & c3];
      if (lhs < rhs) {
        ok = false;
        detail = "violated for " + mask_str(c1) + "," + mask_str(c2) + "," + mask_str(c3);
      }
    };
    if (n <= 6) {
      for (std::uint32_t a = 1; a < full && ok; ++a)
        for (std::uint32_t b = 1; b < full && ok; ++b)
          for (std::uint32_t c = 1; c < full && ok; ++c) test_triple(a, b, c);
    } else {
      for (std::uint32_t a : mincut_masks)
        for (std::uint32_t b : mincut_masks)
          for (std::uint32_t c : mincut_masks) {
            test_triple(a, b, c);
            if (!ok) break;
          }
      for (int i = 0; i < 50000 && ok; ++i)
        test_triple(rng() & full, rng() & full, rng() & full);
    }
    ck.add("four-point-inequality", ok, detail);
  }

  // --- three disjoint-side mincuts intersect trivially ---------------------
  {
    bool ok = true;
    size_t cap = mincut_masks.size() <= 48 ? mincut_masks.size() : 48;
    for (size_t i = 0; i < cap && ok; ++i)
      for (size_t j = i; j < cap && ok; ++j)
        for (size_t k = j; k < cap && ok; ++k)
          for (int bits = 0; bits < 8 && ok; ++bits) {
            std::uint32_t c1 = (bits & 1) ? (full & ~mincut_masks[i]) : mincut_masks[i];
            std::uint32_t c2 = (bits & 2) ? (full & ~mincut_masks[j]) : mincut_masks[j];
            std::uint32_t c3 = (bits & 4) ? (full & ~mincut_masks[k]) : mincut_masks[k];
            std::uint32_t s1 = steiner_part(c1, ctx.steiner);
            std::uint32_t s2 = steiner_part(c2, ctx.steiner);
            std::uint32_t s3 = steiner_part(c3, ctx.steiner);
            if ((s1 & s2) || (s1 & s3) || (s2 & s3)) continue;
            if (c1 & c2 & c3) ok = false;
          }
    ck.add("three-mincuts-empty-intersection", ok,
           "mincuts with disjoint Steiner sides share a vertex");
  }

  // --- quotient by the mincut family preserves its cuts --------------------
  {
    QuotientResult q = quotient_by_cut_family(g, rep.mincuts);
    bool ok = true;
    for (const VertexCut& c : rep.mincuts) {
      std::vector<char> ginside(q.quotient.vertex_count(), 0);
      for (int v = 0; v < n; ++v)
        if (c.contains(v)) ginside[q.mapping.group_of(v)] = 1;
      int cap = 0;
      for (const EdgeBundle& e : q.quotient.edges())
        if (ginside[e.u] != ginside[e.v]) cap += e.multiplicity;
      if (cap != rep.lambda) ok = false;
    }
    ck.add("quotient-preserves-family-cuts", ok, "a family cut changed capacity");
  }

  // --- max-flow duality -----------------------------------------------------
  {
    bool ok = true;
    for (size_t i = 0; i < ctx.steiner.size() && ok; ++i)
      for (size_t j = i + 1; j < ctx.steiner.size() && ok; ++j) {
        int x = ctx.steiner[i], y = ctx.steiner[j];
        int best = -1;
        for (std::uint32_t m = 1; m < full; ++m) {
          bool ix = (m >> x) & 1u, iy = (m >> y) & 1u;
          if (ix == iy) continue;
          if (best < 0 || table[m] < best) best = table[m];
        }
        if (max_flow(g, {x}, {y}).value != best) ok = false;
      }
    ck.add("maxflow-mincut-duality", ok, "flow value differs from enumerated minimum");
  }

  // --- tight and loose mincuts vs bunch intersections/unions ---------------
  {
    bool ok = true;
    std::string detail;
    for (size_t b = 0; b < rep.bunch_side.size() && ok; ++b) {
      std::vector<int> s1 = cc.valid_cuts.side_vertices(rep.bunch_side[b]);
      std::vector<int> s2 = cc.valid_cuts.side_vertices(sfull & ~rep.bunch_side[b]);
      FlowResult f = max_flow(g, s1, s2);
      std::uint32_t tight = vertex_mask(tight_mincut_from(g, f));
      std::uint32_t loose = vertex_mask(loose_mincut_from(g, f));
      if (tight != bt.n_src[b] || loose != bt.f_src[b]) {
        ok = false;
        detail = "bunch " + mask_str(rep.bunch_side[b]);
      }
      if (table[tight] != rep.lambda || table[loose] != rep.lambda) ok = false;
    }
    ck.add("tight-loose-mincuts", ok, detail);
  }

  // --- N(s,t) is the opposite cut of F(t,s) --------------------------------
  {
    bool ok = true;
    for (size_t i = 0; i < ctx.steiner.size() && ok; ++i)
      for (size_t j = 0; j < ctx.steiner.size() && ok; ++j) {
        if (i == j) continue;
        int x = ctx.steiner[i], y = ctx.steiner[j];
        VertexCut nxt = tight_mincut(g, {x}, {y});
        VertexCut fyx = loose_mincut(g, {y}, {x});
        if (vertex_mask(nxt) != (full & ~vertex_mask(fyx))) ok = false;
      }
    ck.add("tight-opposite-of-loose", ok, "N(x,y) is not the opposite of F(y,x)");
  }

  // --- mincut dividing a tight side divides its Steiner side ----------------
  {
    bool ok = true;
    for (size_t b = 0; b < rep.bunch_side.size() && ok; ++b) {
      std::uint32_t tight = bt.n_src[b];
      for (std::uint32_t m : mincut_masks) {
        std::uint32_t sp = steiner_part(m, ctx.steiner);
        bool divides_tight = (m & tight) && (tight & ~m);
        bool divides_side = (sp & rep.bunch_side[b]) && (rep.bunch_side[b] & ~sp & sfull);
        if (divides_tight && !divides_side) ok = false;
      }
    }
    ck.add("tight-mincut-crossing", ok, "a mincut splits a tight side without its Steiner set");
  }

  // --- nesting of tight/loose under domination ------------------------------
  {
    bool ok = true;
    for (size_t a = 0; a < rep.bunch_side.size() && ok; ++a)
      for (size_t b = 0; b < rep.bunch_side.size() && ok; ++b) {
        std::uint32_t sa = rep.bunch_side[a], sb = rep.bunch_side[b];
        if (sa == sb || (sa & ~sb)) continue;  // need sa strictly inside sb
        if ((bt.n_src[a] & ~bt.n_src[b]) || bt.n_src[a] == bt.n_src[b]) ok = false;
        if ((bt.f_src[a] & ~bt.f_src[b]) || bt.f_src[a] == bt.f_src[b]) ok = false;
      }
    ck.add("tight-loose-nesting", ok, "dominating valid cut fails to dominate tight/loose");
  }

  // --- no edge across opposite corners -------------------------------------
  {
    bool ok = true;
    for (std::uint32_t a : mincut_masks) {
      for (std::uint32_t b : mincut_masks) {
        std::uint32_t sp_i = steiner_part(a & b, ctx.steiner);
        std::uint32_t sp_u = steiner_part((a | b) & full, ctx.steiner);
        if (sp_i == 0 || sp_i == sfull || sp_u == 0 || sp_u == sfull) continue;
        std::uint32_t ab = a & ~b, ba = b & ~a;
        for (const EdgeBundle& e : g.edges()) {
          bool one = ((ab >> e.u) & 1u) && ((ba >> e.v) & 1u);
          bool two = ((ab >> e.v) & 1u) && ((ba >> e.u) & 1u);
          if (one || two) ok = false;
        }
      }
    }
    ck.add("no-edge-between-corners", ok, "edge between A\\B and B\\A of two mincuts");
  }

  // --- valid cut enumeration matches oracle bunches -------------------------
  {
    std::vector<std::uint32_t> lib(cc.valid_cuts.cuts);
    std::vector<std::uint32_t> ora(rep.bunch_side);
    std::sort(lib.begin(), lib.end());
    std::sort(ora.begin(), ora.end());
    ck.add("valid-cut-enumeration", lib == ora, "valid cut sides differ from oracle bunches");
  }

  // --- crossing family law ---------------------------------------------------
  {
    bool ok = true;
    for (size_t i = 0; i < cc.valid_cuts.cuts.size() && ok; ++i)
      for (size_t j = i + 1; j < cc.valid_cuts.cuts.size() && ok; ++j) {
        std::uint32_t a = cc.valid_cuts.cuts[i], b = cc.valid_cuts.cuts[j];
        if (!masks_cross(a, b, sfull)) continue;
        for (std::uint32_t corner : {a & b, a & ~b & sfull, b & ~a & sfull,
                                     sfull & ~(a | b)})
          if (!cc.valid_cuts.contains_partition(corner)) ok = false;
        std::uint32_t diagonal = (a & ~b & sfull) | (b & ~a & sfull);
        if (cc.valid_cuts.contains_partition(diagonal)) ok = false;
      }
    ck.add("valid-cuts-crossing-family", ok, "corner or diagonal law violated");
  }

  // --- laminar cut count ------------------------------------------------------
  {
    int laminar = 0;
    for (char f : cc.valid_cuts.laminar) laminar += f;
    ck.add("laminar-cut-count", laminar <= 2 * static_cast<int>(ctx.steiner.size()),
           "more than 2|S| laminar valid cuts");
  }

  // --- tight valid cut between Steiner vertices is laminar --------------------
  {
    bool ok = true;
    for (size_t i = 0; i < ctx.steiner.size() && ok; ++i)
      for (size_t j = 0; j < ctx.steiner.size() && ok; ++j) {
        if (i == j) continue;
        std::uint32_t want_in = 1u << i, want_out = 1u << j;
        std::uint32_t inter = sfull;
        bool any = false;
        for (std::uint32_t c : cc.valid_cuts.cuts)
          for (std::uint32_t side : {c, sfull & ~c})
            if ((side & want_in) && !(side & want_out)) {
              inter &= side;
              any = true;
            }
        if (!any) continue;
        int idx = cc.valid_cuts.index_of(inter);
        if (idx < 0 || !cc.valid_cuts.laminar[idx]) ok = false;
      }
    ck.add("tight-valid-cut-laminar", ok, "intersection of separating sides is not laminar");
  }

  // --- flesh units -------------------------------------------------------------
  const bool units_match = cc.flesh.unit_of.labels() == rep.unit_label;
  ck.add("flesh-unit-partition", units_match, "unit partition differs from oracle classes");

  // --- skeleton structural properties ------------------------------------------
  {
    bool ok = true;
    for (int v = 0; v < cc.skeleton.node_count() && ok; ++v) {
      if (cc.skeleton.degree(v) != 1) continue;
      std::uint32_t side = cc.skeleton.mask_of(cc.skeleton.nodes[v].steiner);
      if (side == 0 || !cc.valid_cuts.contains_partition(side) ||
          !is_indivisible(cc.valid_cuts, side))
        ok = false;
    }
    ck.add("skeleton-structure-P1", ok, "leaf subset is not an indivisible valid cut");
  }
  {
    bool ok = true;
    std::vector<int> in_cycles(cc.skeleton.node_count(), 0);
    for (const SkeletonCycle& cyc : cc.skeleton.cycles) {
      if (cyc.edges.size() < 4) ok = false;
      for (int v : cyc.nodes) {
        ++in_cycles[v];
        if (!cc.skeleton.nodes[v].steiner.empty()) ok = false;
        int cdeg = 0, tdeg = 0;
        for (int e : cc.skeleton.incident(v))
          (cc.skeleton.edges[e].kind == EdgeKind::cycle ? cdeg : tdeg)++;
        if (cdeg != 2 || tdeg != 1) ok = false;
      }
    }
    for (int v = 0; v < cc.skeleton.node_count(); ++v)
      if (in_cycles[v] > 1) ok = false;
    ck.add("skeleton-structure-P2", ok, "cycle shape violated");
  }
  {
    bool ok = true;
    for (int v = 0; v < cc.skeleton.node_count(); ++v)
      if (cc.skeleton.nodes[v].kind == NodeKind::tree && cc.skeleton.nodes[v].steiner.empty() &&
          cc.skeleton.degree(v) < 3)
        ok = false;
    ck.add("skeleton-structure-P3", ok, "empty tree node of degree < 3");
  }

  // --- skeleton minimal cuts represent exactly the valid cuts -------------------
  {
    std::map<std::uint32_t, int> seen;
    bool ok = true;
    for (const MinimalSkeletonCut& cut : mcuts) {
      std::uint32_t side = cc.skeleton.steiner_side_mask(cut);
      ++seen[side];
      if (rep.bunch_of(side) < 0) ok = false;
    }
    for (std::uint32_t side : rep.bunch_side) {
      auto it = seen.find(side);
      if (it == seen.end() || it->second < 1 || it->second > 3) ok = false;
    }
    if (seen.size() != rep.bunch_side.size()) ok = false;
    ck.add("skeleton-minimal-cuts-multiset", ok,
           "minimal-cut partitions do not match valid cuts with multiplicity in [1,3]");
  }

  // --- proper path uniqueness & cut-in-cactus -----------------------------------
  {
    bool unique_ok = true, cactus_ok = true;
    int nodes = cc.skeleton.node_count();
    for (int a = 0; a < nodes; ++a) {
      for (int b = a + 1; b < nodes; ++b) {
        std::vector<char> vis(nodes, 0);
        vis[a] = 1;
        std::vector<int> cur;
        std::vector<std::vector<int>> paths;
        all_simple_paths(cc.skeleton, a, b, vis, cur, paths);
        int proper = 0;
        for (const auto& p : paths) proper += path_is_proper(cc.skeleton, p);
        if (proper > 1) unique_ok = false;
        auto lib = proper_path(cc.skeleton, cc.tree, a, b);
        if ((proper == 1) != lib.has_value()) unique_ok = false;
        for (int e = 0; e < cc.skeleton.edge_count(); ++e) {
          bool through = false;
          for (const auto& p : paths)
            if (std::find(p.begin(), p.end(), e) != p.end()) through = true;
          bool separated = false;
          if (cc.skeleton.edges[e].kind == EdgeKind::tree) {
            std::vector<char> side = cc.skeleton.split_side({e}, cc.skeleton.edges[e].a);
            separated = side[a] != side[b];
          } else {
            const SkeletonCycle& cyc = cc.skeleton.cycles[cc.skeleton.edges[e].cycle];
            for (int e2 : cyc.edges) {
              if (e2 == e) continue;
              std::vector<char> side = cc.skeleton.split_side({e, e2}, cc.skeleton.edges[e].a);
              if (side[a] != side[b]) separated = true;
            }
          }
          if (through != separated) cactus_ok = false;
        }
      }
    }
    ck.add("proper-path-uniqueness", unique_ok, "proper path not unique or existence mismatch");
    ck.add("cut-in-cactus", cactus_ok, "edge-separation differs from path membership");
  }

  // Checks below compare per-unit data; they need matching unit partitions.
  if (!units_match) {
    ck.add("unit-dependent-checks", false, "skipped: unit partitions differ");
    return ck.verdicts;
  }

  std::vector<std::vector<int>> pedges(units);
  for (int u = 0; u < units; ++u) pedges[u] = projected_edges(cc, u);
  std::vector<int> unit_vertex(units, -1);
  for (int v = n - 1; v >= 0; --v) unit_vertex[cc.flesh.unit_of.group_of(v)] = v;

  // --- unit classification --------------------------------------------------
  {
    bool ok = true;
    for (int u = 0; u < units && ok; ++u) {
      bool any = false;
      for (size_t c = 0; c < mcuts.size(); ++c) any = any || rel[u][c];
      bool has_steiner = false;
      for (int v : cc.flesh.members(u)) has_steiner = has_steiner || ctx.is_steiner(v);
      UnitKind want = has_steiner ? UnitKind::steiner
                                  : (any ? UnitKind::stretched : UnitKind::terminal);
      if (cc.flesh.kind[u] != want) ok = false;
      if (has_steiner && any) ok = false;
    }
    ck.add("unit-classification", ok, "steiner/terminal/stretched kinds disagree with oracle");
  }

  // --- stretched projections cover exactly the distinguishing cuts ----------
  {
    bool ok = true;
    std::string detail;
    for (int u = 0; u < units && ok; ++u) {
      if (cc.flesh.kind[u] != UnitKind::stretched) continue;
      for (size_t c = 0; c < mcuts.size(); ++c) {
        if (distinguished_by(cc, u, mcuts[c]) != static_cast<bool>(rel[u][c])) {
          ok = false;
          detail = "unit " + std::to_string(u) + " cut " + std::to_string(c);
          break;
        }
      }
      if (!pedges[u].empty()) {
        if (cc.skeleton.edges[pedges[u].front()].kind != EdgeKind::tree ||
            cc.skeleton.edges[pedges[u].back()].kind != EdgeKind::tree)
          ok = false;
      } else {
        ok = false;
      }
    }
    ck.add("projection-proper-path", ok, detail);
  }

  // --- terminal units sit on the correct side of every cut -------------------
  {
    bool ok = true;
    for (int u = 0; u < units && ok; ++u) {
      if (cc.flesh.kind[u] == UnitKind::stretched) continue;
      int node = cc.projection.endpoints[u].first;
      for (size_t c = 0; c < mcuts.size(); ++c) {
        int b = rep.bunch_of(cc.skeleton.steiner_side_mask(mcuts[c]));
        std::uint32_t v = 1u << unit_vertex[u];
        bool in_tight_src = (bt.n_src[b] & v) != 0;
        bool in_tight_snk = ((full & ~bt.f_src[b]) & v) != 0;
        if (in_tight_src == in_tight_snk) {
          ok = false;
          break;
        }
        bool node_on_src = cc.skeleton.node_side(mcuts[c])[node] != 0;
        if (node_on_src != in_tight_src) {
          ok = false;
          break;
        }
      }
    }
    ck.add("terminal-unit-node", ok, "terminal unit on the wrong side of a minimal cut");
  }

  // --- strips of minimal cuts: equality, distinctness, orientation laws ------
  std::vector<Strip> cut_strips;
  {
    bool equal_ok = true, distinct_ok = true, orient_ok = true, balance_ok = true,
         cone_ok = true, inherent_ok = true;
    for (size_t c = 0; c < mcuts.size(); ++c) {
      Strip qs = strip_for_minimal_cut(cc, mcuts[c]);
      std::uint32_t side = cc.skeleton.steiner_side_mask(mcuts[c]);
      Strip fs = build_strip(g, cc.valid_cuts.side_vertices(side),
                             cc.valid_cuts.side_vertices(sfull & ~side));
      if (qs.mapping.labels() != fs.mapping.labels() || qs.direction != fs.direction ||
          qs.source != fs.source || qs.sink != fs.sink)
        equal_ok = false;

      for (int u = 0; u < units; ++u) {
        if (!rel[u][c]) continue;
        int cls = qs.mapping.group_of(unit_vertex[u]);
        if (qs.is_terminal(cls)) {
          distinct_ok = false;
          continue;
        }
        std::vector<int> strip_members, unit_members = cc.flesh.members(u);
        for (int v = 0; v < n; ++v)
          if (qs.mapping.group_of(v) == cls) strip_members.push_back(v);
        if (strip_members != unit_members) distinct_ok = false;
        auto sides = strip_inherent(cc.flesh, qs, u, unit_vertex[u]);
        if (sides.empty() || sides != cc.flesh.inherent[u]) inherent_ok = false;
      }

      // Orientation recovery round-trip.
      std::vector<signed char> redone =
          orient_undirected_analogue(qs.quotient, qs.source, qs.sink);
      if (redone != qs.direction) orient_ok = false;

      // Balanced DAG laws.
      int out_src = 0, in_snk = 0;
      for (int e = 0; e < qs.quotient.bundle_count(); ++e) {
        if (qs.tail(e) == qs.source) out_src += qs.quotient.edge(e).multiplicity;
        if (qs.head(e) == qs.sink) in_snk += qs.quotient.edge(e).multiplicity;
      }
      if (out_src != in_snk) balance_ok = false;
      std::vector<char> from_src(qs.vertex_count(), 0), to_snk(qs.vertex_count(), 0);
      from_src[qs.source] = 1;
      to_snk[qs.sink] = 1;
      for (int pass = 0; pass < qs.vertex_count(); ++pass)
        for (int e = 0; e < qs.quotient.bundle_count(); ++e) {
          if (from_src[qs.tail(e)]) from_src[qs.head(e)] = 1;
          if (to_snk[qs.head(e)]) to_snk[qs.tail(e)] = 1;
        }
      for (int e = 0; e < qs.quotient.bundle_count(); ++e)
        if (!from_src[qs.tail(e)] || !to_snk[qs.head(e)]) balance_ok = false;

      // Reachability cones: antisymmetry and cut validity.
      for (int v = 2; v < qs.vertex_count(); ++v) {
        std::vector<int> cone = reachability_cone(qs, v, ConeDirection::toward_source);
        VertexCut cv = preimage_cut(qs, cone);
        if (cut_capacity(g, cv) != rep.lambda || !is_transversal(qs, cone)) cone_ok = false;
        for (int w = 2; w < qs.vertex_count(); ++w) {
          if (v == w) continue;
          std::vector<int> cw = reachability_cone(qs, w, ConeDirection::toward_source);
          bool v_in_w = std::count(cw.begin(), cw.end(), v);
          bool w_in_v = std::count(cone.begin(), cone.end(), w);
          if (v_in_w && w_in_v) cone_ok = false;
        }
      }
      cut_strips.push_back(std::move(qs));
    }
    ck.add("strip-equals-contracted-build", equal_ok,
           "query-layer strip differs from flow-built strip");
    ck.add("distinctness-in-strip", distinct_ok,
           "distinguished unit not a standalone non-terminal");
    ck.add("unique-inherent-partition", inherent_ok,
           "inherent partition differs between strips");
    ck.add("orientation-round-trip", orient_ok, "Kahn recovery changed the orientation");
    ck.add("balanced-dag-laws", balance_ok, "degree balance or path cover violated");
    ck.add("reachability-cone-laws", cone_ok, "cone asymmetry or cone cut violated");
  }

  // --- inherent partition balance --------------------------------------------
  {
    bool ok = true;
    for (int u = 0; u < units; ++u) {
      if (cc.flesh.kind[u] != UnitKind::stretched) continue;
      int side0 = 0, side1 = 0;
      for (auto [fb, s] : cc.flesh.inherent[u])
        (s == 0 ? side0 : side1) += cc.flesh.quotient.edge(fb).multiplicity;
      if (side0 != side1) ok = false;
    }
    ck.add("inherent-partition-balance", ok, "sides of an inherent partition differ in size");
  }

  // --- forbidden combinations & per-cycle projection bound --------------------
  {
    bool laminar_ok = true, crossing_ok = true, one_edge_ok = true;
    for (int u = 0; u < units; ++u) {
      if (cc.flesh.kind[u] != UnitKind::stretched) continue;
      for (int cyc = 0; cyc < static_cast<int>(cc.skeleton.cycles.size()); ++cyc) {
        // Laminar cuts of a cycle are its nodes' tree-edge cuts.
        int tree_hits = 0;
        for (int node : cc.skeleton.cycles[cyc].nodes)
          for (int e : cc.skeleton.incident(node))
            if (cc.skeleton.edges[e].kind == EdgeKind::tree &&
                std::find(pedges[u].begin(), pedges[u].end(), e) != pedges[u].end())
              ++tree_hits;
        if (tree_hits > 2) laminar_ok = false;
        int cycle_hits = 0;
        for (int e : pedges[u])
          if (cc.skeleton.edges[e].kind == EdgeKind::cycle && cc.skeleton.edges[e].cycle == cyc)
            ++cycle_hits;
        if (cycle_hits > 1) one_edge_ok = false;
      }
      // No crossing pair of minimal cuts may both distinguish.
      for (size_t c1 = 0; c1 < mcuts.size(); ++c1) {
        if (!rel[u][c1] || mcuts[c1].kind != MinimalSkeletonCut::Kind::cycle_pair) continue;
        for (size_t c2 = c1 + 1; c2 < mcuts.size(); ++c2) {
          if (!rel[u][c2] || mcuts[c2].kind != MinimalSkeletonCut::Kind::cycle_pair) continue;
          if (cc.skeleton.edges[mcuts[c1].e1].cycle != cc.skeleton.edges[mcuts[c2].e1].cycle)
            continue;
          std::uint32_t a = cc.skeleton.steiner_side_mask(mcuts[c1]);
          std::uint32_t b = cc.skeleton.steiner_side_mask(mcuts[c2]);
          if (masks_cross(a, b, sfull)) crossing_ok = false;
        }
      }
    }
    ck.add("forbidden-cut-combinations", laminar_ok && crossing_ok,
           "unit distinguished by forbidden cut combination");
    ck.add("atmost-one-cycle-edge", one_edge_ok,
           "projection claims two edges of one cycle");
  }

  // --- edge projection vs subdivision oracle ---------------------------------
  {
    bool ok = true;
    std::string detail;
    for (int fb = 0; fb < cc.flesh.quotient.bundle_count() && ok; ++fb) {
      int ux = cc.flesh.quotient.edge(fb).u, uy = cc.flesh.quotient.edge(fb).v;
      auto [pa, pb] = project_edge(cc, ux, uy);
      auto path = proper_path(cc.skeleton, cc.tree, pa, pb);
      if (!path) {
        ok = false;
        break;
      }
      // Subdivide one instance of a graph edge joining the two units.
      int gu = -1, gv = -1;
      for (const EdgeBundle& e : g.edges()) {
        int cu = cc.flesh.unit_of.group_of(e.u), cv = cc.flesh.unit_of.group_of(e.v);
        if ((cu == ux && cv == uy) || (cu == uy && cv == ux)) {
          gu = e.u;
          gv = e.v;
          break;
        }
      }
      std::vector<EdgeBundle> edges2;
      for (const EdgeBundle& e : g.edges()) {
        EdgeBundle copy = e;
        if (e.u == std::min(gu, gv) && e.v == std::max(gu, gv)) copy.multiplicity -= 1;
        if (copy.multiplicity > 0) edges2.push_back(copy);
      }
      int z = n;
      edges2.push_back({gu, z, 1});
      edges2.push_back({z, gv, 1});
      SteinerContext ctx2{MultiGraph(n + 1, std::move(edges2)), ctx.steiner, std::nullopt};
      OracleReport rep2 = enumerate_all(ctx2);
      ctx2.lambda = rep2.lambda;
      if (rep2.lambda != rep.lambda) {
        ok = false;
        detail = "subdivision changed lambda";
        break;
      }
      std::vector<std::vector<char>> rel2 = distinguish_relation(ctx2, rep2, cc.skeleton);
      int zu = rep2.unit_label[z];
      for (size_t c = 0; c < mcuts.size(); ++c) {
        bool lib = false;
        for (int e : cc.skeleton.cut_edge_ids(mcuts[c]))
          if (path->contains_edge(e)) lib = true;
        if (lib != static_cast<bool>(rel2[zu][c])) {
          ok = false;
          detail = "bundle " + std::to_string(fb) + " cut " + std::to_string(c);
          break;
        }
      }
    }
    ck.add("edge-projection-subdivision", ok, detail);
  }

  // --- unidirectionality and prefix/suffix orientation ------------------------
  {
    bool ok = true;
    for (int fb = 0; fb < cc.flesh.quotient.bundle_count() && ok; ++fb) {
      int ux = cc.flesh.quotient.edge(fb).u, uy = cc.flesh.quotient.edge(fb).v;
      auto [pa, pb] = project_edge(cc, ux, uy);
      auto path = proper_path(cc.skeleton, cc.tree, pa, pb);
      if (!path || path->edge_seq.empty()) continue;
      int front = path->front_node();
      std::vector<char> x_front_flags;
      for (size_t c = 0; c < mcuts.size(); ++c) {
        bool on_path = false;
        for (int e : cc.skeleton.cut_edge_ids(mcuts[c]))
          if (path->contains_edge(e)) on_path = true;
        if (!on_path) continue;
        std::uint32_t side = cc.skeleton.steiner_side_mask(mcuts[c]);
        bool front_on_anchor = cc.skeleton.node_side(mcuts[c])[front] != 0;
        std::uint32_t front_side = front_on_anchor ? side : (sfull & ~side);
        int b = rep.bunch_of(side);
        for (int idx : rep.bunch_members[b]) {
          std::uint32_t m = vertex_mask(rep.mincuts[idx]);
          if (steiner_part(m, ctx.steiner) != front_side) m = full & ~m;
          bool x_in = (m >> unit_vertex[ux]) & 1u;
          bool y_in = (m >> unit_vertex[uy]) & 1u;
          if (x_in == y_in) continue;
          x_front_flags.push_back(x_in);
        }
      }
      for (char f : x_front_flags)
        if (f != x_front_flags.front()) ok = false;
      if (!x_front_flags.empty() && !x_front_flags.front()) {
        // project_edge promises the start endpoint on x's side.
        ok = false;
      }
    }
    ck.add("edge-projection-prefix-suffix", ok,
           "separating mincuts disagree on the side of x along the projection");
  }

  // --- transversal cuts are exactly the Steiner mincuts -----------------------
  {
    bool ok = true;
    // Forward: every oracle mincut appears in the strip of a minimal cut of
    // its bunch.
    for (size_t i = 0; i < rep.mincuts.size() && ok; ++i) {
      std::uint32_t m = mincut_masks[i];
      std::uint32_t sp = steiner_part(m, ctx.steiner);
      std::uint32_t side = (sp & 1u) ? sp : (sfull & ~sp);
      int cut_idx = -1;
      for (size_t c = 0; c < mcuts.size(); ++c)
        if (cc.skeleton.steiner_side_mask(mcuts[c]) == side) {
          cut_idx = static_cast<int>(c);
          break;
        }
      if (cut_idx < 0) {
        ok = false;
        break;
      }
      const Strip& strip = cut_strips[cut_idx];
      std::uint32_t oriented = (steiner_part(m, ctx.steiner) == side) ? m : (full & ~m);
      std::vector<char> cls_in(strip.vertex_count(), 0), cls_out(strip.vertex_count(), 0);
      for (int v = 0; v < n; ++v)
        (((oriented >> v) & 1u) ? cls_in : cls_out)[strip.mapping.group_of(v)] = 1;
      std::vector<int> inside;
      bool well = true;
      for (int cl = 0; cl < strip.vertex_count(); ++cl) {
        if (cls_in[cl] && cls_out[cl]) well = false;
        if (cls_in[cl]) inside.push_back(cl);
      }
      if (!well || !is_transversal(strip, inside)) ok = false;
    }
    // Backward: every transversal cut of every strip is an oracle mincut of
    // the right bunch, and counts match.
    for (size_t c = 0; c < mcuts.size() && ok; ++c) {
      const Strip& strip = cut_strips[c];
      std::uint32_t side = cc.skeleton.steiner_side_mask(mcuts[c]);
      int b = rep.bunch_of(side);
      std::vector<int> nonterminals;
      for (int v = 2; v < strip.vertex_count(); ++v) nonterminals.push_back(v);
      int found = 0;
      for (std::uint32_t sub = 0; sub < (1u << nonterminals.size()); ++sub) {
        std::vector<int> inside{strip.source};
        for (size_t k = 0; k < nonterminals.size(); ++k)
          if ((sub >> k) & 1u) inside.push_back(nonterminals[k]);
        if (!is_transversal(strip, inside)) continue;
        ++found;
        std::uint32_t m = vertex_mask(preimage_cut(strip, inside));
        std::uint32_t canon = (m & 1u) ? m : (full & ~m);
        if (std::find(mincut_masks.begin(), mincut_masks.end(), canon) == mincut_masks.end())
          ok = false;
      }
      if (b < 0 || found != static_cast<int>(rep.bunch_members[b].size())) ok = false;
    }
    ck.add("transversal-mincut-bijection", ok,
           "transversal cuts and Steiner mincuts do not coincide");
  }

  // --- pair queries -------------------------------------------------------------
  {
    bool strip_ok = true, cactus_ok = true;
    for (size_t i = 0; i < ctx.steiner.size(); ++i)
      for (size_t j = i + 1; j < ctx.steiner.size(); ++j) {
        int s = ctx.steiner[i], t = ctx.steiner[j];
        bool separated =
            cc.flesh.unit_of.group_of(s) != cc.flesh.unit_of.group_of(t);
        if (!separated) {
          try {
            (void)strip_between(cc, s, t);
            strip_ok = false;
          } catch (const DomainError&) {
          }
          continue;
        }
        Strip qs = strip_between(cc, s, t);
        Strip fs = build_strip(g, {s}, {t});
        if (qs.mapping.labels() != fs.mapping.labels() || qs.direction != fs.direction)
          strip_ok = false;

        QuerySubcactus sub = subcactus_between(cc, s, t);
        std::map<std::uint32_t, int> seen;
        for (const MinimalSkeletonCut& cut : sub.separating_minimal_cuts())
          ++seen[sub.quotient.steiner_side_mask(cut)];
        std::set<std::uint32_t> expected;
        for (std::uint32_t side : rep.bunch_side) {
          bool si = (side >> i) & 1u, sj = (side >> j) & 1u;
          if (si != sj) expected.insert(side);
        }
        if (seen.size() != expected.size()) cactus_ok = false;
        for (auto [side, cnt] : seen)
          if (!expected.count(side) || cnt < 1 || cnt > 3) cactus_ok = false;
      }
    ck.add("pair-strip-equals-build", strip_ok, "query (s,t)-strip differs from direct build");
    ck.add("pair-subcactus-cuts", cactus_ok,
           "quotient cactus cuts differ from valid cuts separating the pair");
  }

  // --- reported separating mincuts ----------------------------------------------
  {
    bool ok = true;
    for (int x = 0; x < units && ok; ++x)
      for (int y = 0; y < units && ok; ++y) {
        auto res = report_separating_mincut(cc, x, y);
        if (x == y) {
          if (res) ok = false;
          continue;
        }
        if (!res) {
          ok = false;
          continue;
        }
        if (cut_capacity(g, *res) != rep.lambda) ok = false;
        if (res->contains(unit_vertex[x]) == res->contains(unit_vertex[y])) ok = false;
      }
    for (const EdgeBundle& e : g.edges()) {
      auto res = report_edge_separating_mincut(cc, e.u, e.v);
      bool same = cc.flesh.unit_of.group_of(e.u) == cc.flesh.unit_of.group_of(e.v);
      if (same != !res.has_value()) ok = false;
    }
    ck.add("reported-cut-validity", ok, "reported cut wrong or wrongly absent");
  }

  // --- ring graphs ----------------------------------------------------------------
  {
    bool ok = true;
    std::string detail;
    for (int cyc = 0; cyc < static_cast<int>(cc.skeleton.cycles.size()); ++cyc) {
      try {
        (void)ring_view(cc, cyc);
      } catch (const std::exception& ex) {
        ok = false;
        detail = ex.what();
      }
    }
    ck.add("ring-graph-constraints", ok, detail);
  }

  return ck.verdicts;
}

std::string tap_format(const std::vector<Verdict>& verdicts) {
  std::ostringstream out;
  out << "1.." << verdicts.size() << "\n";
  for (size_t i = 0; i < verdicts.size(); ++i) {
    const Verdict& v = verdicts[i];
    out << (v.ok ? "ok " : "not ok ") << i + 1 << " - " << v.anchor;
    if (!v.ok && !v.detail.empty()) out << " (" << v.detail << ")";
    out << "\n";
  }
  return out.str();
}

}  // namespace carcass
