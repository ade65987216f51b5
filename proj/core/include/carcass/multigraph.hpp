#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "carcass/errors.hpp"

namespace carcass {

// Parallel edges are stored as one bundle with an integer multiplicity.
// Capacity arithmetic is multiplicity-weighted throughout.
struct EdgeBundle {
  int u;             // endpoints, u < v after normalization
  int v;
  int multiplicity;  // >= 1
};

// Undirected connected multigraph. Vertices are 0-based internally;
// the text format is 1-based. Immutable after construction.
class MultiGraph {
 public:
  MultiGraph() = default;
  // Normalizes endpoints (u < v), merges parallel bundles, builds incidence
  // lists. Rejects self-loops and out-of-range endpoints.
  MultiGraph(int vertex_count, std::vector<EdgeBundle> edges);

  int vertex_count() const { return n_; }
  // Number of distinct edge bundles.
  int bundle_count() const { return static_cast<int>(edges_.size()); }
  // Edge count with multiplicities, the m of the capacity arithmetic.
  int total_multiplicity() const { return total_multiplicity_; }

  const std::vector<EdgeBundle>& edges() const { return edges_; }
  const EdgeBundle& edge(int e) const { return edges_[e]; }
  // Bundle ids incident on v, ordered by the other endpoint.
  const std::vector<int>& incident(int v) const { return incident_[v]; }
  int other_end(int e, int v) const {
    return edges_[e].u == v ? edges_[e].v : edges_[e].u;
  }

  bool is_connected() const;

 private:
  int n_ = 0;
  int total_multiplicity_ = 0;
  std::vector<EdgeBundle> edges_;
  std::vector<std::vector<int>> incident_;
};

// One side of an ordered cut (A, A-complement) of the vertex set.
// Invariant: neither side is empty.
class VertexCut {
 public:
  VertexCut(int vertex_count, std::vector<char> inside);
  static VertexCut from_vertices(int vertex_count, const std::vector<int>& inside);

  int vertex_count() const { return n_; }
  bool contains(int v) const { return inside_[v] != 0; }
  int inside_size() const { return inside_size_; }
  const std::vector<char>& inside_mask() const { return inside_; }
  std::vector<int> inside_vertices() const;
  VertexCut opposite() const;

  // Same unordered bipartition.
  bool same_bipartition(const VertexCut& other) const;
  bool operator==(const VertexCut& other) const {
    return n_ == other.n_ && inside_ == other.inside_;
  }

 private:
  int n_;
  int inside_size_;
  std::vector<char> inside_;
};

// Multiplicity-weighted number of edges with exactly one endpoint inside.
int cut_capacity(const MultiGraph& g, const VertexCut& cut);
// Does the cut put vertices u and v on different sides?
inline bool separates(const VertexCut& cut, int u, int v) {
  return cut.contains(u) != cut.contains(v);
}
// Does the cut split the given vertex set?
bool divides(const VertexCut& cut, const std::vector<int>& vertices);

// A partition of the vertex set into labeled groups 0..group_count-1.
// Every label must occur at least once.
class Partition {
 public:
  Partition() = default;  // empty placeholder, no groups
  Partition(int group_count, std::vector<int> label_of_vertex);
  static Partition from_groups(int vertex_count, const std::vector<std::vector<int>>& groups);

  int group_count() const { return groups_; }
  int size() const { return static_cast<int>(label_.size()); }
  int group_of(int v) const { return label_[v]; }
  const std::vector<int>& labels() const { return label_; }
  std::vector<std::vector<int>> members() const;

  bool operator==(const Partition& other) const = default;

 private:
  int groups_ = 0;
  std::vector<int> label_;
};

struct ContractResult {
  MultiGraph quotient;
  Partition mapping;  // vertex of g -> quotient vertex
};

// Quotient multigraph: groups become vertices, parallel edges keep summed
// multiplicity, self-loops are dropped.
ContractResult contract(const MultiGraph& g, const Partition& groups);

struct QuotientResult {
  MultiGraph quotient;
  Partition mapping;
  bool degenerate;  // family imposed no separation at all
};

// Two vertices share a group iff no cut in the family separates them.
QuotientResult quotient_by_cut_family(const MultiGraph& g,
                                      const std::vector<VertexCut>& cuts);

// Steiner instance: graph, terminal set S, and the Steiner mincut capacity
// lambda once computed.
struct SteinerContext {
  MultiGraph graph;
  std::vector<int> steiner;  // sorted, 0-based
  std::optional<int> lambda;

  bool is_steiner(int v) const;
  int require_lambda() const {
    if (!lambda) throw InvariantBreach("lambda not computed");
    return *lambda;
  }
};

// Text format, 1-based ids:
//   line 1: "n m k"
//   m lines: "u v w"   (w >= 1, parallel lines accumulate)
//   last line: k Steiner vertex ids
// Lines starting with '#' are ignored. Verifies connectivity and |S| >= 2.
SteinerContext load_graph(std::istream& in);
SteinerContext load_graph_file(const std::string& path);

}  // namespace carcass
