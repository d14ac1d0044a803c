#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "diagspread/perm_group.hpp"

namespace diagspread {

/// A conjugacy class; member indices refer to an ElementEnumeration (or to
/// the element indexing of a GroupTable).
struct ConjClass {
  Permutation representative;
  std::uint32_t representative_index = 0;
  std::vector<std::uint32_t> members;  // sorted

  std::size_t size() const noexcept { return members.size(); }
};

/// Conjugation orbits over an enumerated group, found by breadth-first search
/// with a visited bitmap. Classes come out sorted by size, then by smallest
/// member index; each representative is the smallest member.
inline std::vector<ConjClass> conjugacy_classes(ElementEnumeration const& e,
                                                std::span<Permutation const> generators) {
  std::vector<ConjClass> classes;
  std::vector<bool> visited(e.elements.size(), false);
  for (std::uint32_t i = 0; i < e.elements.size(); ++i) {
    if (visited[i]) continue;
    ConjClass cls;
    cls.members.push_back(i);
    visited[i] = true;
    for (std::size_t k = 0; k < cls.members.size(); ++k) {
      auto const& x = e.elements[cls.members[k]];
      for (auto const& s : generators) {
        std::uint32_t y = e.index.at(conjugate(x, s));
        if (!visited[y]) {
          visited[y] = true;
          cls.members.push_back(y);
        }
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    cls.representative_index = cls.members.front();
    cls.representative = e.elements[cls.representative_index];
    classes.push_back(std::move(cls));
  }
  std::stable_sort(classes.begin(), classes.end(), [](ConjClass const& a, ConjClass const& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.representative_index < b.representative_index;
  });
  return classes;
}

inline std::vector<ConjClass> conjugacy_classes(PermutationGroup const& g,
                                                std::uint64_t cap = kDefaultElementCap) {
  ElementEnumeration e = enumerate_elements(g, cap);
  return conjugacy_classes(e, g.generators());
}

}  // namespace diagspread
