#include "carcass/maxflow.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace carcass {

namespace {

thread_local long g_flow_calls = 0;

// Residual arc arena. Arc i and i^1 are a forward/backward pair.
struct Network {
  struct Arc {
    int head;
    int residual;
  };
  int nodes;
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> adj;

  explicit Network(int n) : nodes(n), adj(n) {}

  void add_pair(int u, int v, int cap_uv, int cap_vu) {
    adj[u].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({v, cap_uv});
    adj[v].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({u, cap_vu});
  }
};

}  // namespace

long flow_call_count() { return g_flow_calls; }

FlowResult max_flow(const MultiGraph& g, const std::vector<int>& S1,
                    const std::vector<int>& S2) {
  ++g_flow_calls;
  int n = g.vertex_count();
  if (S1.empty() || S2.empty()) throw DomainError("terminal sets must be nonempty");
  std::vector<char> in1(n, 0), in2(n, 0);
  for (int v : S1) in1.at(v) = 1;
  for (int v : S2) in2.at(v) = 1;
  for (int v = 0; v < n; ++v)
    if (in1[v] && in2[v]) throw DomainError("overlapping terminal sets");

  const int src = n, snk = n + 1;
  const int inf = g.total_multiplicity() + 1;
  Network net(n + 2);
  // Arc pair 2e / 2e+1 mirrors edge bundle e. Terminal arcs follow.
  for (const EdgeBundle& e : g.edges()) net.add_pair(e.u, e.v, e.multiplicity, e.multiplicity);
  for (int v = 0; v < n; ++v) {
    if (in1[v]) net.add_pair(src, v, inf, 0);
    if (in2[v]) net.add_pair(v, snk, inf, 0);
  }
  for (auto& a : net.adj)
    std::stable_sort(a.begin(), a.end(),
                     [&](int x, int y) { return net.arcs[x].head < net.arcs[y].head; });

  // Edmonds-Karp; instances are desk scale.
  std::vector<int> parent_arc(net.nodes);
  int value = 0;
  while (true) {
    std::fill(parent_arc.begin(), parent_arc.end(), -1);
    parent_arc[src] = -2;
    std::deque<int> q{src};
    while (!q.empty() && parent_arc[snk] == -1) {
      int u = q.front();
      q.pop_front();
      for (int a : net.adj[u]) {
        int w = net.arcs[a].head;
        if (parent_arc[w] == -1 && net.arcs[a].residual > 0) {
          parent_arc[w] = a;
          q.push_back(w);
        }
      }
    }
    if (parent_arc[snk] == -1) break;
    int bottleneck = std::numeric_limits<int>::max();
    for (int v = snk; v != src;) {
      int a = parent_arc[v];
      bottleneck = std::min(bottleneck, net.arcs[a].residual);
      v = net.arcs[a ^ 1].head;
    }
    for (int v = snk; v != src;) {
      int a = parent_arc[v];
      net.arcs[a].residual -= bottleneck;
      net.arcs[a ^ 1].residual += bottleneck;
      v = net.arcs[a ^ 1].head;
    }
    value += bottleneck;
  }

  FlowResult out;
  out.value = value;
  out.edge_flow.resize(g.bundle_count());
  for (int e = 0; e < g.bundle_count(); ++e)
    out.edge_flow[e] = g.edge(e).multiplicity - net.arcs[2 * e].residual;

  out.source_reachable.assign(n, 0);
  {
    std::vector<char> seen(net.nodes, 0);
    std::vector<int> stack{src};
    seen[src] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int a : net.adj[u]) {
        int w = net.arcs[a].head;
        if (!seen[w] && net.arcs[a].residual > 0) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    for (int v = 0; v < n; ++v) out.source_reachable[v] = seen[v];
  }
  out.sink_coreachable.assign(n, 0);
  {
    std::vector<char> seen(net.nodes, 0);
    std::vector<int> stack{snk};
    seen[snk] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      // Arc into u with residual = pair arcs of u's own list.
      for (int a : net.adj[u]) {
        int w = net.arcs[a].head;
        if (!seen[w] && net.arcs[a ^ 1].residual > 0) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    for (int v = 0; v < n; ++v) out.sink_coreachable[v] = seen[v];
  }
  return out;
}

VertexCut tight_mincut_from(const MultiGraph& g, const FlowResult& f) {
  return VertexCut(g.vertex_count(), f.source_reachable);
}

VertexCut loose_mincut_from(const MultiGraph& g, const FlowResult& f) {
  std::vector<char> mask(f.sink_coreachable);
  for (char& c : mask) c = !c;
  return VertexCut(g.vertex_count(), std::move(mask));
}

VertexCut tight_mincut(const MultiGraph& g, const std::vector<int>& S1,
                       const std::vector<int>& S2) {
  return tight_mincut_from(g, max_flow(g, S1, S2));
}

VertexCut loose_mincut(const MultiGraph& g, const std::vector<int>& S1,
                       const std::vector<int>& S2) {
  return loose_mincut_from(g, max_flow(g, S1, S2));
}

int steiner_mincut_capacity(SteinerContext& ctx) {
  if (ctx.steiner.size() < 2) throw DomainError("|S| < 2");
  int x = ctx.steiner.front();
  int best = std::numeric_limits<int>::max();
  for (size_t i = 1; i < ctx.steiner.size(); ++i)
    best = std::min(best, max_flow(ctx.graph, {x}, {ctx.steiner[i]}).value);
  ctx.lambda = best;
  return best;
}

}  // namespace carcass
