#pragma once

#include <string>
#include <utility>
#include <vector>

#include "carcass/skeleton.hpp"
#include "carcass/strip.hpp"

namespace carcass {

// Units carrying a Steiner vertex; units no minimal skeleton cut
// distinguishes; units distinguished by at least one.
enum class UnitKind { steiner, terminal, stretched };

// Quotient of the graph by all Steiner mincuts. Vertices of the quotient are
// units, canonically ordered by smallest member vertex.
struct Flesh {
  MultiGraph quotient;
  Partition unit_of;  // graph vertex -> unit
  std::vector<UnitKind> kind;
  // Per stretched unit: (flesh bundle id, side) sorted by bundle, the side of
  // the lowest incident bundle normalized to 0. The same bipartition holds in
  // every strip that keeps the unit as a non-terminal. Empty for other kinds.
  std::vector<std::vector<std::pair<int, int>>> inherent;

  int unit_count() const { return unit_of.group_count(); }
  std::vector<int> members(int unit) const;
};

// Per unit, the endpoints of its image in the skeleton: a single node
// (stored twice) for Steiner and terminal units, the two ends of the proper
// path of distinguishing cuts for stretched units.
struct ProjectionMapping {
  std::vector<std::pair<int, int>> endpoints;
};

struct Carcass {
  SteinerContext ctx;
  ValidCutSet valid_cuts;
  Skeleton skeleton;
  SkeletonTree tree;
  Flesh flesh;
  ProjectionMapping projection;
  long build_flow_calls = 0;
};

// Assemble the whole structure: lambda, valid cuts, skeleton, flesh, unit
// classification and projection mapping. Issues at most
// 2^(|S|-1) + 3 * (#tree edges) + |S| max-flow calls; queries afterwards
// issue none.
Carcass build_carcass(const SteinerContext& ctx, int max_steiner = 14);

// Quotient by all Steiner mincuts, one strip per second terminal.
// Standalone variant; build_carcass shares flows internally.
Flesh build_flesh(const SteinerContext& ctx);

// Structural edges of a stretched unit's proper path; empty otherwise.
std::vector<int> projected_edges(const Carcass& cc, int unit);

// Does the minimal cut keep the unit out of both strip terminals?
bool distinguished_by(const Carcass& cc, int unit, const MinimalSkeletonCut& cut);

// Proper-path endpoints of a flesh edge, assembled by concatenating the
// endpoint projections; the first endpoint lies on x's side.
std::pair<int, int> project_edge(const Carcass& cc, int unit_x, int unit_y);

// Proper-path endpoints of a coherent path: consecutive edges must lie on
// opposite sides of every interior unit's inherent partition.
std::pair<int, int> project_coherent_path(const Carcass& cc, const std::vector<int>& units);

// Flesh bundle joining two units, -1 if absent.
int flesh_bundle_between(const Flesh& flesh, int unit_x, int unit_y);

// DOT rendering of the flesh with unit kinds and member labels.
std::string flesh_to_dot(const Carcass& cc, const std::string& name = "flesh");
// Textual dump of the projection mapping, one line per unit.
std::string projection_dump(const Carcass& cc);

}  // namespace carcass
