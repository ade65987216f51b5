#include "carcass/valid_cuts.hpp"

#include <algorithm>

namespace carcass {

bool ValidCutSet::contains_partition(std::uint32_t side) const {
  return index_of(side) >= 0;
}

int ValidCutSet::index_of(std::uint32_t side) const {
  std::uint32_t rep = normalize(side);
  auto it = std::lower_bound(cuts.begin(), cuts.end(), rep);
  if (it == cuts.end() || *it != rep) return -1;
  return static_cast<int>(it - cuts.begin());
}

std::vector<int> ValidCutSet::side_vertices(std::uint32_t side) const {
  std::vector<int> out;
  for (size_t i = 0; i < steiner.size(); ++i)
    if (side & (1u << i)) out.push_back(steiner[i]);
  return out;
}

std::uint32_t ValidCutSet::mask_of(const std::vector<int>& vertices) const {
  std::uint32_t mask = 0;
  for (int v : vertices) {
    auto it = std::lower_bound(steiner.begin(), steiner.end(), v);
    if (it == steiner.end() || *it != v) throw DomainError("not a Steiner vertex");
    mask |= 1u << (it - steiner.begin());
  }
  return mask;
}

bool masks_cross(std::uint32_t a, std::uint32_t b, std::uint32_t full) {
  return (a & b) && (a & ~b & full) && (~a & b & full) && (~a & ~b & full);
}

ValidCutSet enumerate_valid_cuts(const SteinerContext& ctx, int max_steiner) {
  int k = static_cast<int>(ctx.steiner.size());
  if (k > max_steiner) throw DomainError("steiner set too large for enumeration");
  ValidCutSet out;
  out.lambda = ctx.require_lambda();
  out.steiner = ctx.steiner;
  std::uint32_t full = out.full_mask();
  // Masks with the anchor bit set, excluding the full set; ascending order
  // keeps the result deterministic.
  for (std::uint32_t rest = 0; rest + 1 < (1u << (k - 1)); ++rest) {
    std::uint32_t side = (rest << 1) | 1u;
    std::vector<int> s1 = out.side_vertices(side);
    std::vector<int> s2 = out.side_vertices(full & ~side);
    if (max_flow(ctx.graph, s1, s2).value == out.lambda) out.cuts.push_back(side);
  }
  out.laminar = classify_laminar(out);
  return out;
}

std::vector<char> classify_laminar(const ValidCutSet& cuts) {
  std::uint32_t full = cuts.full_mask();
  std::vector<char> laminar(cuts.cuts.size(), 1);
  for (size_t i = 0; i < cuts.cuts.size(); ++i)
    for (size_t j = i + 1; j < cuts.cuts.size(); ++j)
      if (masks_cross(cuts.cuts[i], cuts.cuts[j], full))
        laminar[i] = laminar[j] = 0;
  return laminar;
}

bool is_indivisible(const ValidCutSet& cuts, std::uint32_t side) {
  std::uint32_t full = cuts.full_mask();
  for (std::uint32_t c : cuts.cuts) {
    if ((c & side) && (~c & side & full)) return false;
  }
  return true;
}

}  // namespace carcass
