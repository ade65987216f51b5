#pragma once

#include <vector>

#include "carcass/multigraph.hpp"

namespace carcass {

// Integral maximum flow between two contracted vertex sets, plus the residual
// reachability data the mincut extractions need.
struct FlowResult {
  int value = 0;
  // Net flow per edge bundle, positive in the u->v direction, |f| <= multiplicity.
  std::vector<int> edge_flow;
  // Vertices reachable from the contracted source in the residual graph.
  // Equals the inside of the tight mincut.
  std::vector<char> source_reachable;
  // Vertices that can reach the contracted sink in the residual graph.
  // Complement equals the inside of the loose mincut.
  std::vector<char> sink_coreachable;
};

// (S1,S2)-maxflow by virtual terminal contraction. Augmenting paths follow
// lowest-vertex-id BFS order, so the result is deterministic.
FlowResult max_flow(const MultiGraph& g, const std::vector<int>& S1,
                    const std::vector<int>& S2);

// Intersection of all (S1,S2)-mincut source sides.
VertexCut tight_mincut_from(const MultiGraph& g, const FlowResult& f);
// Union of all (S1,S2)-mincut source sides.
VertexCut loose_mincut_from(const MultiGraph& g, const FlowResult& f);

VertexCut tight_mincut(const MultiGraph& g, const std::vector<int>& S1,
                       const std::vector<int>& S2);
VertexCut loose_mincut(const MultiGraph& g, const std::vector<int>& S1,
                       const std::vector<int>& S2);

// Computes lambda as min over y in S of maxflow(x, y) for a fixed anchor x,
// stores it in the context, and returns it.
int steiner_mincut_capacity(SteinerContext& ctx);

// Monotone count of max_flow invocations in this thread. The carcass build
// budget and the zero-flow query guarantee are asserted against it.
long flow_call_count();

}  // namespace carcass
