#pragma once

#include <cstdint>
#include <vector>

#include "diagspread/group_table.hpp"

namespace diagspread {

/// Right cosets A x of a subgroup in a GroupTable.
struct CosetSpace {
  Subgroup subgroup;
  std::vector<elem_t> representatives;  // coset i is A * representatives[i]
  std::vector<std::uint32_t> point_of;  // element index -> coset id

  std::size_t size() const noexcept { return representatives.size(); }
};

/// The action of R on the right cosets of A by right multiplication.
class CosetAction {
 public:
  CosetAction(GroupTable const& r, Subgroup a) : table_(&r) {
    space_.subgroup = std::move(a);
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    space_.point_of.assign(r.size(), unset);
    for (elem_t x = 0; x < r.size(); ++x) {
      if (space_.point_of[x] != unset) continue;
      auto id = static_cast<std::uint32_t>(space_.representatives.size());
      space_.representatives.push_back(x);
      for (elem_t y : space_.subgroup.elements()) space_.point_of[r.multiply(y, x)] = id;
    }
    if (space_.size() * space_.subgroup.order() != r.size()) {
      throw InternalError("cosets do not partition the group");
    }
  }

  CosetSpace const& space() const noexcept { return space_; }
  std::size_t degree() const noexcept { return space_.size(); }

  /// The permutation of cosets induced by the element r: A x -> A x r.
  Permutation act(elem_t r) const {
    std::vector<point_t> images(space_.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
      images[i] = space_.point_of[table_->multiply(space_.representatives[i], r)];
    }
    return Permutation::from_images_unchecked(std::move(images));
  }

  PermutationGroup image_of(std::vector<elem_t> const& gens) const {
    std::vector<Permutation> perms;
    for (elem_t g : gens) perms.push_back(act(g));
    return PermutationGroup(degree(), std::move(perms));
  }

  PermutationGroup image_of(Subgroup const& h) const { return image_of(h.generators()); }

  /// Image of the whole of R.
  PermutationGroup image() const { return image_of(table_->generators()); }

 private:
  GroupTable const* table_;
  CosetSpace space_;
};

/// Validates that A is a subgroup and builds the coset action. The returned
/// object refers to `r`, which must outlive it.
inline CosetAction coset_action(GroupTable const& r, std::vector<elem_t> a_elements) {
  return CosetAction(r, Subgroup::from_elements(r, std::move(a_elements)));
}

inline CosetAction coset_action(GroupTable const& r, Subgroup const& a) { return CosetAction(r, a); }

}  // namespace diagspread
