#include "carcass/multigraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <utility>

namespace carcass {

MultiGraph::MultiGraph(int vertex_count, std::vector<EdgeBundle> edges) : n_(vertex_count) {
  if (n_ < 1) throw DomainError("graph needs at least one vertex");
  std::map<std::pair<int, int>, int> merged;
  for (const EdgeBundle& e : edges) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
      throw DomainError("vertex id out of range");
    if (e.u == e.v) throw DomainError("self-loops are not supported");
    if (e.multiplicity < 1) throw DomainError("edge multiplicity must be positive");
    merged[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.multiplicity;
  }
  edges_.reserve(merged.size());
  for (const auto& [key, mult] : merged) {
    edges_.push_back({key.first, key.second, mult});
    total_multiplicity_ += mult;
  }
  incident_.assign(n_, {});
  for (int e = 0; e < bundle_count(); ++e) {
    incident_[edges_[e].u].push_back(e);
    incident_[edges_[e].v].push_back(e);
  }
  for (int v = 0; v < n_; ++v) {
    std::sort(incident_[v].begin(), incident_[v].end(),
              [&](int a, int b) { return other_end(a, v) < other_end(b, v); });
  }
}

bool MultiGraph::is_connected() const {
  if (n_ == 0) return false;
  std::vector<char> seen(n_, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : incident_[v]) {
      int w = other_end(e, v);
      if (!seen[w]) {
        seen[w] = 1;
        ++visited;
        stack.push_back(w);
      }
    }
  }
  return visited == n_;
}

VertexCut::VertexCut(int vertex_count, std::vector<char> inside)
    : n_(vertex_count), inside_(std::move(inside)) {
  if (static_cast<int>(inside_.size()) != n_) throw DomainError("cut mask size mismatch");
  inside_size_ = 0;
  for (char c : inside_) inside_size_ += (c != 0);
  if (inside_size_ == 0 || inside_size_ == n_)
    throw DomainError("cut sides must both be nonempty");
}

VertexCut VertexCut::from_vertices(int vertex_count, const std::vector<int>& inside) {
  std::vector<char> mask(vertex_count, 0);
  for (int v : inside) {
    if (v < 0 || v >= vertex_count) throw DomainError("vertex id out of range");
    mask[v] = 1;
  }
  return VertexCut(vertex_count, std::move(mask));
}

std::vector<int> VertexCut::inside_vertices() const {
  std::vector<int> out;
  out.reserve(inside_size_);
  for (int v = 0; v < n_; ++v)
    if (inside_[v]) out.push_back(v);
  return out;
}

VertexCut VertexCut::opposite() const {
  std::vector<char> mask(inside_);
  for (char& c : mask) c = !c;
  return VertexCut(n_, std::move(mask));
}

bool VertexCut::same_bipartition(const VertexCut& other) const {
  if (n_ != other.n_) return false;
  return inside_ == other.inside_ || (inside_[0] != other.inside_[0] && *this == other.opposite());
}

int cut_capacity(const MultiGraph& g, const VertexCut& cut) {
  if (cut.vertex_count() != g.vertex_count()) throw DomainError("cut size mismatch");
  int cap = 0;
  for (const EdgeBundle& e : g.edges())
    if (cut.contains(e.u) != cut.contains(e.v)) cap += e.multiplicity;
  return cap;
}

bool divides(const VertexCut& cut, const std::vector<int>& vertices) {
  bool in = false, out = false;
  for (int v : vertices) (cut.contains(v) ? in : out) = true;
  return in && out;
}

Partition::Partition(int group_count, std::vector<int> label_of_vertex)
    : groups_(group_count), label_(std::move(label_of_vertex)) {
  if (groups_ < 1) throw DomainError("invalid partition: no groups");
  std::vector<char> seen(groups_, 0);
  for (int l : label_) {
    if (l < 0 || l >= groups_) throw DomainError("invalid partition: label out of range");
    seen[l] = 1;
  }
  for (char c : seen)
    if (!c) throw DomainError("invalid partition: empty group");
}

Partition Partition::from_groups(int vertex_count, const std::vector<std::vector<int>>& groups) {
  std::vector<int> label(vertex_count, -1);
  for (int gi = 0; gi < static_cast<int>(groups.size()); ++gi) {
    for (int v : groups[gi]) {
      if (v < 0 || v >= vertex_count) throw DomainError("invalid partition: vertex out of range");
      if (label[v] != -1) throw DomainError("invalid partition: vertex in two groups");
      label[v] = gi;
    }
  }
  for (int v = 0; v < vertex_count; ++v)
    if (label[v] == -1) throw DomainError("invalid partition: uncovered vertex");
  return Partition(static_cast<int>(groups.size()), std::move(label));
}

std::vector<std::vector<int>> Partition::members() const {
  std::vector<std::vector<int>> out(groups_);
  for (int v = 0; v < size(); ++v) out[label_[v]].push_back(v);
  return out;
}

ContractResult contract(const MultiGraph& g, const Partition& groups) {
  if (groups.size() != g.vertex_count()) throw DomainError("invalid partition: size mismatch");
  std::vector<EdgeBundle> edges;
  for (const EdgeBundle& e : g.edges()) {
    int a = groups.group_of(e.u), b = groups.group_of(e.v);
    if (a != b) edges.push_back({a, b, e.multiplicity});
  }
  return {MultiGraph(groups.group_count(), std::move(edges)), groups};
}

QuotientResult quotient_by_cut_family(const MultiGraph& g, const std::vector<VertexCut>& cuts) {
  int n = g.vertex_count();
  // Signature of a vertex = its side in every cut; equal signatures share a group.
  std::map<std::vector<char>, int> group_of_sig;
  std::vector<int> label(n);
  for (int v = 0; v < n; ++v) {
    std::vector<char> sig;
    sig.reserve(cuts.size());
    for (const VertexCut& c : cuts) {
      if (c.vertex_count() != n) throw DomainError("cut size mismatch");
      sig.push_back(c.contains(v) ? 1 : 0);
    }
    auto [it, fresh] = group_of_sig.emplace(std::move(sig), static_cast<int>(group_of_sig.size()));
    label[v] = it->second;
  }
  Partition part(static_cast<int>(group_of_sig.size()), std::move(label));
  auto contracted = contract(g, part);
  return {std::move(contracted.quotient), std::move(contracted.mapping), part.group_count() == 1};
}

bool SteinerContext::is_steiner(int v) const {
  return std::binary_search(steiner.begin(), steiner.end(), v);
}

namespace {

// Next content line, skipping blanks and '#' comments. Tracks the line number.
bool next_line(std::istream& in, std::string& out, int& lineno) {
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    out = line;
    return true;
  }
  return false;
}

}  // namespace

SteinerContext load_graph(std::istream& in) {
  int lineno = 0;
  std::string line;
  if (!next_line(in, line, lineno)) throw ParseError("missing header line", lineno);
  int n, m, k;
  {
    std::istringstream h(line);
    if (!(h >> n >> m >> k)) throw ParseError("expected \"n m k\" header", lineno);
  }
  if (n < 1) throw ParseError("vertex count must be positive", lineno);
  if (m < 0 || k < 0) throw ParseError("negative count in header", lineno);

  std::vector<EdgeBundle> edges;
  edges.reserve(m);
  for (int i = 0; i < m; ++i) {
    if (!next_line(in, line, lineno)) throw ParseError("unexpected end of file in edge list", lineno);
    std::istringstream es(line);
    int u, v, w;
    if (!(es >> u >> v >> w)) throw ParseError("expected \"u v w\" edge line", lineno);
    if (u < 1 || u > n || v < 1 || v > n) throw ParseError("vertex id out of range", lineno);
    if (u == v) throw ParseError("self-loop", lineno);
    if (w < 1) throw ParseError("multiplicity must be >= 1", lineno);
    edges.push_back({u - 1, v - 1, w});
  }

  if (!next_line(in, line, lineno)) throw ParseError("missing Steiner set line", lineno);
  std::istringstream ss(line);
  std::vector<int> steiner;
  int s;
  while (ss >> s) {
    if (s < 1 || s > n) throw ParseError("vertex id out of range", lineno);
    steiner.push_back(s - 1);
  }
  if (static_cast<int>(steiner.size()) != k)
    throw ParseError("Steiner line has wrong count", lineno);
  std::sort(steiner.begin(), steiner.end());
  steiner.erase(std::unique(steiner.begin(), steiner.end()), steiner.end());
  if (static_cast<int>(steiner.size()) < 2) throw ParseError("|S| < 2", lineno);

  MultiGraph g(n, std::move(edges));
  if (!g.is_connected()) throw ParseError("disconnected graph", lineno);
  return {std::move(g), std::move(steiner), std::nullopt};
}

SteinerContext load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return load_graph(in);
}

}  // namespace carcass
