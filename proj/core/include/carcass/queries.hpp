#pragma once

#include <optional>
#include <vector>

#include "carcass/carcass.hpp"

namespace carcass {

// Quotient of the skeleton whose minimal cuts are exactly the valid cuts
// separating two Steiner vertices.
struct QuerySubcactus {
  Skeleton quotient;
  std::vector<std::vector<int>> contained;  // per quotient node: skeleton nodes
  int anchor_a = -1;                        // quotient node holding s
  int anchor_b = -1;                        // quotient node holding t

  // Minimal cuts of the quotient that separate the two anchors; their valid
  // cuts are exactly the valid cuts separating s and t. (A corridor cycle
  // retains all of its crossing cuts, including ones parallel to the pair.)
  std::vector<MinimalSkeletonCut> separating_minimal_cuts() const;
};

// The flesh from the perspective of one skeleton cycle: cycle nodes absorb
// their subcactus sides, units projected through the cycle survive.
struct RingVertex {
  enum class Kind { cycle_node, unit };
  Kind kind;
  int id;  // skeleton node / flesh unit
};

struct RingGraph {
  int cycle = -1;
  MultiGraph quotient;
  Partition mapping;  // graph vertex -> ring vertex
  std::vector<RingVertex> vertices;
};

// Strip of a minimal skeleton cut, assembled in O(1) placement decisions per
// unit from phi, pi and the projections; no flow computation. The valid
// cut's anchor side is the source. Identical to build_strip on the same
// terminal sets.
Strip strip_for_minimal_cut(const Carcass& cc, const MinimalSkeletonCut& cut);

// Quotient skeleton storing exactly the valid cuts separating s and t.
// Throws "not separated" when both share a unit.
QuerySubcactus subcactus_between(const Carcass& cc, int s, int t);

// The (s,t)-strip of all Steiner mincuts separating s and t, with its
// vertex mapping; equals build_strip(g, {s}, {t}) whenever the (s,t)-mincut
// capacity is lambda.
Strip strip_between(const Carcass& cc, int s, int t);

// A Steiner mincut separating two units, or nullopt when x == y. Among the
// candidate transversal cuts the one with the lexicographically smallest
// inside vertex list is returned.
std::optional<VertexCut> report_separating_mincut(const Carcass& cc, int unit_x, int unit_y);

// Same for the endpoints of a graph edge; nullopt when they share a unit.
std::optional<VertexCut> report_edge_separating_mincut(const Carcass& cc, int u, int v);

// Throws "no such cycle" for an out-of-range id; asserts the ring edge
// constraints at build.
RingGraph ring_view(const Carcass& cc, int cycle_id);

}  // namespace carcass
