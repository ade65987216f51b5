#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "carcass/valid_cuts.hpp"

namespace carcass {

enum class NodeKind { tree, cycle };
enum class EdgeKind { tree, cycle };

struct SkeletonNode {
  std::vector<int> steiner;  // sorted vertex ids stored at this node
  NodeKind kind = NodeKind::tree;
  int cycle = -1;            // cycle id for cycle nodes
};

struct StructuralEdge {
  int a = -1;
  int b = -1;
  EdgeKind kind = EdgeKind::tree;
  int cycle = -1;
};

struct SkeletonCycle {
  std::vector<int> nodes;  // cyclic order
  std::vector<int> edges;  // edges[i] joins nodes[i] and nodes[(i+1) % k]
};

// Either a tree edge or a pair of non-adjacent edges of one cycle. Minimal
// cuts defined by adjacent cycle-edge pairs repeat the incident tree edge's
// partition and are not enumerated.
struct MinimalSkeletonCut {
  enum class Kind { tree_edge, cycle_pair };
  Kind kind = Kind::tree_edge;
  int e1 = -1;
  int e2 = -1;  // only for cycle pairs
};

// A t-cactus over (possibly empty) disjoint Steiner subsets. No node is
// shared by two cycles; every edge is a tree edge or belongs to exactly one
// cycle. Also reused for quotient cacti, whose nodes may violate the
// canonical structural properties of a freshly built skeleton.
class Skeleton {
 public:
  std::vector<SkeletonNode> nodes;
  std::vector<StructuralEdge> edges;
  std::vector<SkeletonCycle> cycles;
  std::vector<int> steiner_universe;  // sorted S

  // Builds adjacency and the Steiner->node mapping; validates basic shape.
  void finalize();

  int node_count() const { return static_cast<int>(nodes.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  const std::vector<int>& incident(int node) const { return adjacency_[node]; }
  int other_end(int edge, int node) const {
    return edges[edge].a == node ? edges[edge].b : edges[edge].a;
  }
  int degree(int node) const { return static_cast<int>(adjacency_[node].size()); }
  // Node holding a Steiner vertex.
  int node_of(int steiner_vertex) const;
  int position_in_cycle(int cycle, int node) const;
  // Cycle edge joining two nodes of a cycle, or -1 if not adjacent.
  int cycle_edge_between(int cycle, int node_a, int node_b) const;

  // Nodes on `seed`'s side after deleting the given structural edges.
  std::vector<char> split_side(const std::vector<int>& removed_edges, int seed) const;

  // Steiner subset of the subcactus containing `node` after removing tree
  // edge `edge` (which must be incident on it).
  std::vector<int> side_of_tree_edge(int node, int edge) const;
  // Union of the per-node subsets along cycle positions p..q (inclusive,
  // cyclic). Position i names nodes[i] of the cycle.
  std::vector<int> side_of_cycle_segment(int cycle, int pos_p, int pos_q) const;

  std::vector<MinimalSkeletonCut> minimal_cuts() const;
  // Side mask of the valid cut a minimal cut defines, normalized so the
  // anchor (bit 0) is inside.
  std::uint32_t steiner_side_mask(const MinimalSkeletonCut& cut) const;
  // Which nodes lie on the normalized side.
  std::vector<char> node_side(const MinimalSkeletonCut& cut) const;
  std::vector<int> cut_edge_ids(const MinimalSkeletonCut& cut) const;

  std::uint32_t mask_of(const std::vector<int>& steiner_vertices) const;
  std::uint32_t full_mask() const;
  std::uint32_t normalize(std::uint32_t side) const {
    return (side & 1u) ? side : (full_mask() & ~side);
  }

 private:
  std::vector<std::vector<int>> adjacency_;
  std::map<int, int> phi_;
};

// Structural properties of a canonically built skeleton: every cycle has >= 4
// edges and only degree-3 empty nodes; empty tree nodes have degree >= 3;
// cycles share no node. Throws InvariantBreach naming the violated property.
void validate_structure(const Skeleton& sk);

// Intermediate tree representing exactly the laminar valid cuts: one edge per
// laminar cut, crossing cuts assigned to the empty node whose region holds
// them.
struct LaminarTree {
  struct Node {
    std::uint32_t steiner_mask = 0;
    std::vector<std::uint32_t> crossing;  // crossing cuts assigned here
  };
  struct Edge {
    int parent = -1;
    int child = -1;
    std::uint32_t child_side;  // Steiner mask of the subtree hanging at child
  };
  std::vector<Node> nodes;
  std::vector<Edge> edges;
};

LaminarTree build_laminar_tree(const ValidCutSet& cuts);

// Cyclic order of a circular family: every contiguous segment union is a
// valid cut and every assigned crossing cut appears as a segment. Unique up
// to rotation and reflection; returned as a permutation of element indices.
std::vector<int> order_circular_family(const std::vector<std::uint32_t>& elements,
                                       const std::vector<std::uint32_t>& crossing,
                                       const ValidCutSet& cuts);

// Replace every empty node carrying crossing cuts by an implanted cycle.
Skeleton implant_cycles(const LaminarTree& tree, const ValidCutSet& cuts);

// build_laminar_tree + order_circular_family + implant_cycles.
Skeleton build_skeleton(const ValidCutSet& cuts);

// Rooted companion tree: each cycle collapses to the vertex it was implanted
// at, everything else maps to itself. Carries an Euler-tour LCA index.
// Self-contained after construction.
class SkeletonTree {
 public:
  explicit SkeletonTree(const Skeleton& sk);

  int vertex_count() const { return static_cast<int>(parent_.size()); }
  int f(int skeleton_node) const { return f_[skeleton_node]; }
  int implanted_cycle(int vertex) const { return implanted_[vertex]; }
  int parent(int vertex) const { return parent_[vertex]; }
  // Skeleton tree-edge id connecting vertex to its parent.
  int parent_edge(int vertex) const { return parent_edge_[vertex]; }
  int depth(int vertex) const { return depth_[vertex]; }
  int lca(int u, int v) const;

  // Skeleton tree-edge ids along the f-image of the a..b path, in order.
  std::vector<int> f_path_edges(int node_a, int node_b) const;

 private:
  std::vector<int> f_;
  std::vector<int> implanted_;
  std::vector<int> parent_, parent_edge_, depth_;
  std::vector<int> euler_, first_visit_, euler_depth_;
  std::vector<std::vector<int>> sparse_;  // argmin-depth over euler ranges
  std::vector<int> log2_;
};

// A path in a t-cactus that shares exactly one edge with each cycle it
// passes through; unique between its endpoints when it exists.
struct ProperPath {
  std::vector<int> node_seq;  // endpoints included; single node when no edges
  std::vector<int> edge_seq;

  int front_node() const { return node_seq.front(); }
  int back_node() const { return node_seq.back(); }
  bool contains_edge(int e) const;
};

std::optional<ProperPath> proper_path(const Skeleton& sk, const SkeletonTree& tree,
                                      int node_a, int node_b);

// True iff the two proper paths share a tree edge or some cycle shares an
// edge with each of them.
bool paths_intersect(const Skeleton& sk, const SkeletonTree& tree,
                     std::pair<int, int> endpoints1, std::pair<int, int> endpoints2);

// Cycle edges dashed, labels list stored Steiner vertices, empty nodes small.
std::string skeleton_to_dot(const Skeleton& sk, const std::string& name = "skeleton");

}  // namespace carcass
