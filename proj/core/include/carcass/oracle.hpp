#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "carcass/carcass.hpp"
#include "carcass/queries.hpp"

namespace carcass {

// Exhaustive ground truth from 2^(n-1) cut enumerations. Everything else in
// the library is measured against this.
struct OracleReport {
  int lambda = 0;
  // All Steiner mincuts, inside = the side containing vertex 0.
  std::vector<VertexCut> mincuts;
  // Bunches: mincuts grouped by the Steiner partition they define.
  // Sides are masks over sorted S, normalized to contain the anchor,
  // ascending.
  std::vector<std::uint32_t> bunch_side;
  std::vector<std::vector<int>> bunch_members;  // indices into mincuts
  // Equivalence classes under "no Steiner mincut separates", labeled by
  // smallest member (same canonical order the flesh uses).
  std::vector<int> unit_label;
  int unit_count = 0;

  int bunch_of(std::uint32_t side_mask) const;  // -1 when absent
};

// Bitmask enumeration with vertex 0 fixed inside. Throws "instance too
// large" above max_vertices.
OracleReport enumerate_all(const SteinerContext& ctx, int max_vertices = 20);

// distinguish[unit][cut]: does the minimal skeleton cut keep the oracle unit
// outside both tight mincuts of its bunch? Columns follow sk.minimal_cuts().
std::vector<std::vector<char>> distinguish_relation(const SteinerContext& ctx,
                                                    const OracleReport& report,
                                                    const Skeleton& sk);

struct Verdict {
  std::string anchor;
  bool ok;
  std::string detail;
};

// Runs every structural law of the strip, skeleton, carcass and query layers
// against the oracle. Failures come back as verdicts, never exceptions.
std::vector<Verdict> check_carcass(const SteinerContext& ctx, const Carcass& cc,
                                   const OracleReport& report);

// "ok N — anchor" / "not ok N — anchor (detail)" lines.
std::string tap_format(const std::vector<Verdict>& verdicts);

}  // namespace carcass
