#pragma once

#include <string>
#include <vector>

#include "carcass/maxflow.hpp"
#include "carcass/multigraph.hpp"

namespace carcass {

// Quotient of the graph by all (S1,S2)-mincuts, realized as the undirected
// analogue of a single-source single-sink balanced DAG plus the orientation.
// The orientation of the edges incident on a non-terminal is its inherent
// partition: entering edges on one side, leaving edges on the other.
struct Strip {
  MultiGraph quotient;
  Partition mapping;          // graph vertex -> strip vertex
  int source = -1;
  int sink = -1;
  // +1 directs bundle (u,v) as u->v, -1 as v->u (bundles store u < v).
  std::vector<signed char> direction;

  int vertex_count() const { return quotient.vertex_count(); }
  bool is_terminal(int v) const { return v == source || v == sink; }
  int tail(int e) const { return direction[e] > 0 ? quotient.edge(e).u : quotient.edge(e).v; }
  int head(int e) const { return direction[e] > 0 ? quotient.edge(e).v : quotient.edge(e).u; }

  // The two sides of a non-terminal's inherent partition, as bundle ids.
  struct InherentPartition {
    std::vector<int> in_side;
    std::vector<int> out_side;
  };
  InherentPartition inherent_partition(int v) const;
};

// Build the strip for the (S1,S2)-mincut family: strongly connected components
// of one max flow's residual graph give the quotient, flow direction gives the
// orientation. Strip vertices are relabeled canonically: source 0, sink 1,
// non-terminals by smallest member vertex.
Strip build_strip(const MultiGraph& g, const std::vector<int>& S1,
                  const std::vector<int>& S2);

// Same construction from an already computed flow; issues no flow call.
Strip build_strip_from_flow(const MultiGraph& g, const FlowResult& flow);

// Recover the unique balanced-DAG orientation of an undirected analogue by
// simulating Kahn's algorithm: a non-terminal becomes ready once it has lost
// half of its (multiplicity-weighted) degree. Throws "not a balanced analogue"
// if a degree is odd or the process stalls.
std::vector<signed char> orient_undirected_analogue(const MultiGraph& quotient,
                                                    int source, int sink);

// True iff no oriented edge enters U. Requires source in U, sink outside.
bool is_transversal(const Strip& strip, const std::vector<int>& inside);

enum class ConeDirection { toward_source, toward_sink };

// Vertices reachable from non-terminal x along (reversed) orientation,
// including x itself.
std::vector<int> reachability_cone(const Strip& strip, int x, ConeDirection dir);

// Transversal cut -> the (S1,S2)-mincut it defines in the original graph.
VertexCut preimage_cut(const Strip& strip, const std::vector<int>& inside);

// DOT rendering: terminals as doublecircles, non-terminals as records whose
// in/out ports encode the inherent partition.
std::string strip_to_dot(const Strip& strip, const std::string& name = "strip");

}  // namespace carcass
