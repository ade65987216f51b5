#pragma once

#include <cstdint>
#include <vector>

#include "carcass/maxflow.hpp"
#include "carcass/multigraph.hpp"

namespace carcass {

// All bipartitions of S induced by at least one Steiner mincut, one
// representative per unordered partition. Subsets are bitmasks over the
// positions of the sorted Steiner list; bit 0 (the anchor, lowest Steiner
// vertex) is set in every stored representative.
struct ValidCutSet {
  int lambda = 0;
  std::vector<int> steiner;        // sorted vertex ids
  std::vector<std::uint32_t> cuts; // representative side masks, ascending
  std::vector<char> laminar;       // flag per cut

  std::uint32_t full_mask() const {
    return (steiner.size() >= 32) ? ~0u : ((1u << steiner.size()) - 1u);
  }
  // Representative of an arbitrary side mask: the side containing the anchor.
  std::uint32_t normalize(std::uint32_t side) const {
    return (side & 1u) ? side : (full_mask() & ~side);
  }
  bool contains_partition(std::uint32_t side) const;
  int index_of(std::uint32_t side) const;  // -1 when absent

  std::vector<int> side_vertices(std::uint32_t side) const;
  std::uint32_t mask_of(const std::vector<int>& vertices) const;
};

// Test every subset of S with the anchor fixed inside: the subset is a valid
// cut side iff the (subset, rest)-maxflow equals lambda. At most 2^(|S|-1)
// flow calls. Throws above `max_steiner` ("steiner set too large...").
ValidCutSet enumerate_valid_cuts(const SteinerContext& ctx, int max_steiner = 14);

// Pairwise corner-emptiness over S-side masks; a cut is laminar iff parallel
// to every other cut in the set.
std::vector<char> classify_laminar(const ValidCutSet& cuts);

// True iff no enumerated valid cut splits the given side.
bool is_indivisible(const ValidCutSet& cuts, std::uint32_t side);

// Do the two cuts cross, i.e. are all four corner subsets of S nonempty?
bool masks_cross(std::uint32_t a, std::uint32_t b, std::uint32_t full);

}  // namespace carcass
