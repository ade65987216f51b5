#include "carcass/strip.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace carcass {

namespace {

// Iterative Tarjan over the residual digraph restricted to middle vertices.
class SccFinder {
 public:
  SccFinder(int n, const std::vector<std::vector<int>>& out_arcs)
      : out_(out_arcs), index_(n, -1), low_(n, 0), on_stack_(n, 0), comp_(n, -1) {}

  void run() {
    for (int v = 0; v < static_cast<int>(index_.size()); ++v)
      if (index_[v] == -1) strong_connect(v);
  }

  const std::vector<int>& component() const { return comp_; }
  int component_count() const { return comps_; }

 private:
  void strong_connect(int root) {
    struct Frame {
      int v;
      size_t next;
    };
    std::vector<Frame> call{{root, 0}};
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next == 0) {
        index_[v] = low_[v] = counter_++;
        stack_.push_back(v);
        on_stack_[v] = 1;
      }
      bool descended = false;
      while (next < out_[v].size()) {
        int w = out_[v][next++];
        if (index_[w] == -1) {
          call.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack_[w]) low_[v] = std::min(low_[v], index_[w]);
      }
      if (descended) continue;
      if (low_[v] == index_[v]) {
        while (true) {
          int w = stack_.back();
          stack_.pop_back();
          on_stack_[w] = 0;
          comp_[w] = comps_;
          if (w == v) break;
        }
        ++comps_;
      }
      int child = v;
      call.pop_back();
      if (!call.empty())
        low_[call.back().v] = std::min(low_[call.back().v], low_[child]);
    }
  }

  const std::vector<std::vector<int>>& out_;
  std::vector<int> index_, low_;
  std::vector<char> on_stack_;
  std::vector<int> comp_;
  std::vector<int> stack_;
  int counter_ = 0;
  int comps_ = 0;
};

}  // namespace

Strip::InherentPartition Strip::inherent_partition(int v) const {
  if (is_terminal(v)) throw DomainError("terminals have no inherent partition");
  InherentPartition p;
  for (int e : quotient.incident(v))
    (head(e) == v ? p.in_side : p.out_side).push_back(e);
  return p;
}

Strip build_strip(const MultiGraph& g, const std::vector<int>& S1,
                  const std::vector<int>& S2) {
  return build_strip_from_flow(g, max_flow(g, S1, S2));
}

Strip build_strip_from_flow(const MultiGraph& g, const FlowResult& flow) {
  int n = g.vertex_count();

  // Residual adjacency among middle vertices; terminal classes are forced by
  // residual reachability (tight side) and coreachability (loose complement).
  std::vector<std::vector<int>> out(n);
  for (int e = 0; e < g.bundle_count(); ++e) {
    const EdgeBundle& b = g.edge(e);
    if (b.multiplicity - flow.edge_flow[e] > 0) out[b.u].push_back(b.v);
    if (b.multiplicity + flow.edge_flow[e] > 0) out[b.v].push_back(b.u);
  }
  SccFinder scc(n, out);
  scc.run();

  std::vector<int> label(n, -1);
  std::map<int, int> class_of_comp;
  std::vector<int> smallest_member;
  for (int v = 0; v < n; ++v) {
    if (flow.source_reachable[v]) {
      if (flow.sink_coreachable[v]) throw InvariantBreach("augmenting path survived max flow");
      label[v] = 0;
      continue;
    }
    if (flow.sink_coreachable[v]) {
      label[v] = 1;
      continue;
    }
    auto [it, fresh] = class_of_comp.emplace(scc.component()[v], 0);
    if (fresh) {
      it->second = 2 + static_cast<int>(smallest_member.size());
      smallest_member.push_back(v);
    }
    label[v] = it->second;
  }
  // Canonical non-terminal order: ascending smallest member.
  int nt = static_cast<int>(smallest_member.size());
  std::vector<int> order(nt);
  for (int i = 0; i < nt; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return smallest_member[a] < smallest_member[b]; });
  std::vector<int> rank(nt);
  for (int i = 0; i < nt; ++i) rank[order[i]] = i;
  for (int v = 0; v < n; ++v)
    if (label[v] >= 2) label[v] = 2 + rank[label[v] - 2];

  Partition part(2 + nt, std::move(label));
  ContractResult contracted = contract(g, part);

  Strip strip{std::move(contracted.quotient), std::move(contracted.mapping), 0, 1, {}};
  strip.direction.assign(strip.quotient.bundle_count(), 0);
  // Every cross-class bundle is saturated one way; orient along the flow.
  std::vector<std::map<int, int>> dir_to(strip.vertex_count());
  for (int e = 0; e < g.bundle_count(); ++e) {
    const EdgeBundle& b = g.edge(e);
    int a = strip.mapping.group_of(b.u), c = strip.mapping.group_of(b.v);
    if (a == c) continue;
    if (flow.edge_flow[e] == 0) throw InvariantBreach("cross-class edge carries no flow");
    int from = flow.edge_flow[e] > 0 ? a : c;
    int to = flow.edge_flow[e] > 0 ? c : a;
    auto [it, fresh] = dir_to[std::min(from, to)].emplace(std::max(from, to), from);
    if (!fresh && it->second != from)
      throw InvariantBreach("parallel strip edges carry opposing flow");
  }
  for (int e = 0; e < strip.quotient.bundle_count(); ++e) {
    const EdgeBundle& b = strip.quotient.edge(e);
    strip.direction[e] = dir_to[b.u].at(b.v) == b.u ? 1 : -1;
  }
  return strip;
}

std::vector<signed char> orient_undirected_analogue(const MultiGraph& quotient,
                                                    int source, int sink) {
  int n = quotient.vertex_count();
  if (source == sink || source < 0 || sink < 0 || source >= n || sink >= n)
    throw DomainError("bad terminals");
  std::vector<int> degree(n, 0);
  for (const EdgeBundle& e : quotient.edges()) {
    degree[e.u] += e.multiplicity;
    degree[e.v] += e.multiplicity;
  }
  for (int v = 0; v < n; ++v)
    if (v != source && v != sink && degree[v] % 2 != 0)
      throw DomainError("not a balanced analogue");

  std::vector<signed char> dir(quotient.bundle_count(), 0);
  std::vector<int> remaining(degree);
  std::deque<int> queue{source};
  std::vector<char> queued(n, 0);
  queued[source] = 1;
  int undirected = quotient.bundle_count();
  while (!queue.empty()) {
    int w = queue.front();
    queue.pop_front();
    std::vector<int> ready;
    for (int e : quotient.incident(w)) {
      if (dir[e] != 0) continue;
      const EdgeBundle& b = quotient.edge(e);
      dir[e] = (b.u == w) ? 1 : -1;
      --undirected;
      int x = quotient.other_end(e, w);
      remaining[x] -= b.multiplicity;
      if (x != source && x != sink && !queued[x] && remaining[x] == degree[x] / 2)
        ready.push_back(x);
    }
    std::sort(ready.begin(), ready.end());
    for (int x : ready) {
      queued[x] = 1;
      queue.push_back(x);
    }
  }
  if (undirected != 0) throw DomainError("not a balanced analogue");
  return dir;
}

bool is_transversal(const Strip& strip, const std::vector<int>& inside) {
  std::vector<char> in(strip.vertex_count(), 0);
  for (int v : inside) in.at(v) = 1;
  if (!in[strip.source] || in[strip.sink]) throw DomainError("bad terminal placement");
  for (int e = 0; e < strip.quotient.bundle_count(); ++e)
    if (!in[strip.tail(e)] && in[strip.head(e)]) return false;
  return true;
}

std::vector<int> reachability_cone(const Strip& strip, int x, ConeDirection dir) {
  if (strip.is_terminal(x)) throw DomainError("reachability cone of a terminal");
  std::vector<char> seen(strip.vertex_count(), 0);
  std::vector<int> stack{x};
  seen[x] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : strip.quotient.incident(v)) {
      int from = dir == ConeDirection::toward_sink ? strip.tail(e) : strip.head(e);
      int to = dir == ConeDirection::toward_sink ? strip.head(e) : strip.tail(e);
      if (from == v && !seen[to]) {
        seen[to] = 1;
        stack.push_back(to);
      }
    }
  }
  std::vector<int> cone;
  for (int v = 0; v < strip.vertex_count(); ++v)
    if (seen[v]) cone.push_back(v);
  return cone;
}

VertexCut preimage_cut(const Strip& strip, const std::vector<int>& inside) {
  std::vector<char> in(strip.vertex_count(), 0);
  for (int v : inside) in.at(v) = 1;
  std::vector<char> mask(strip.mapping.size(), 0);
  for (int v = 0; v < strip.mapping.size(); ++v)
    mask[v] = in[strip.mapping.group_of(v)];
  return VertexCut(strip.mapping.size(), std::move(mask));
}

std::string strip_to_dot(const Strip& strip, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=LR;\n";
  auto members = strip.mapping.members();
  auto label_of = [&](int v) {
    std::string s;
    for (size_t i = 0; i < members[v].size(); ++i)
      s += (i ? " " : "") + std::to_string(members[v][i] + 1);
    return s;
  };
  for (int v = 0; v < strip.vertex_count(); ++v) {
    if (strip.is_terminal(v)) {
      out << "  n" << v << " [shape=doublecircle, label=\"" << label_of(v) << "\"];\n";
    } else {
      out << "  n" << v << " [shape=record, label=\"{<in>in|" << label_of(v)
          << "|<out>out}\"];\n";
    }
  }
  for (int e = 0; e < strip.quotient.bundle_count(); ++e) {
    int t = strip.tail(e), h = strip.head(e);
    out << "  n" << t;
    if (!strip.is_terminal(t)) out << ":out";
    out << " -> n" << h;
    if (!strip.is_terminal(h)) out << ":in";
    out << " [label=\"" << strip.quotient.edge(e).multiplicity << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace carcass
