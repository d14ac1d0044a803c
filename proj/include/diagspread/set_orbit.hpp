#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "diagspread/perm_group.hpp"

namespace diagspread {

/// The distinct images X^g of a point set, in breadth-first order from X.
/// The search tree is kept so any image can be traced back to an element.
struct SetOrbit {
  std::vector<PointSet> sets;
  std::vector<std::uint32_t> parent;     // sets[i] == image_of_set(sets[parent[i]], gens[generator[i]])
  std::vector<std::uint32_t> generator;

  std::size_t size() const noexcept { return sets.size(); }

  /// A group element g with sets[0]^g == sets[i].
  Permutation element_for(std::size_t i, PermutationGroup const& g) const {
    std::vector<std::uint32_t> path;
    while (i != 0) {
      path.push_back(generator[i]);
      i = parent[i];
    }
    Permutation result = Permutation::identity(g.degree());
    for (auto it = path.rbegin(); it != path.rend(); ++it) result = result * g.generators()[*it];
    return result;
  }
};

inline SetOrbit set_orbit(PermutationGroup const& g, std::vector<point_t> x,
                          std::uint64_t cap = kDefaultSetOrbitCap) {
  SetOrbit result;
  std::unordered_map<PointSet, std::uint32_t, PointSetHash> seen;
  PointSet start = normalize_point_set(std::move(x), g.degree());
  seen.emplace(start, 0);
  result.sets.push_back(std::move(start));
  result.parent.push_back(0);
  result.generator.push_back(0);
  auto const& gens = g.generators();
  for (std::size_t k = 0; k < result.sets.size(); ++k) {
    for (std::uint32_t gi = 0; gi < gens.size(); ++gi) {
      PointSet y = image_of_set(result.sets[k], gens[gi]);
      if (seen.contains(y)) continue;
      if (result.sets.size() >= cap) throw CapExceeded("set orbit", cap);
      seen.emplace(y, static_cast<std::uint32_t>(result.sets.size()));
      result.sets.push_back(std::move(y));
      result.parent.push_back(static_cast<std::uint32_t>(k));
      result.generator.push_back(gi);
    }
  }
  return result;
}

}  // namespace diagspread
