#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diagspread/automorphism.hpp"
#include "diagspread/group_table.hpp"

namespace diagspread {

inline constexpr std::uint64_t kDefaultDiagonalCap = 10'000;

// Permutations of the domain Omega = T, with points labelled by element index.
// Point 0 is the identity of T.

/// x -> x t
inline Permutation right_translation(GroupTable const& t, elem_t x) {
  std::vector<point_t> images(t.size());
  for (elem_t y = 0; y < t.size(); ++y) images[y] = t.multiply(y, x);
  return Permutation::from_images_unchecked(std::move(images));
}

/// x -> t^-1 x
inline Permutation left_translation(GroupTable const& t, elem_t x) {
  elem_t inv = t.inverse(x);
  std::vector<point_t> images(t.size());
  for (elem_t y = 0; y < t.size(); ++y) images[y] = t.multiply(inv, y);
  return Permutation::from_images_unchecked(std::move(images));
}

/// x -> x^-1
inline Permutation inversion_map(GroupTable const& t) {
  return Permutation::from_images_unchecked(
      std::vector<point_t>(t.inverses().begin(), t.inverses().end()));
}

inline Permutation automorphism_permutation(Automorphism const& a) {
  return Permutation::from_images_unchecked(std::vector<point_t>(a.mapping.begin(), a.mapping.end()));
}

enum class DiagonalRole { RightTranslation, LeftTranslation, Automorphism, Inversion };

inline char const* to_string(DiagonalRole r) {
  switch (r) {
    case DiagonalRole::RightTranslation: return "right-translation";
    case DiagonalRole::LeftTranslation: return "left-translation";
    case DiagonalRole::Automorphism: return "automorphism";
    case DiagonalRole::Inversion: return "inversion";
  }
  return "?";
}

struct DiagonalGenerator {
  DiagonalRole role;
  elem_t element = 0;             // translating element, for translations
  std::size_t outer_index = 0;    // index into outer representatives, for automorphisms
};

/// The diagonal group W(T) on Omega = T generated by right and left
/// translations, automorphisms of T and inversion. Its order is
/// |T|^2 |Out(T)| 2.
struct DiagonalGroup {
  std::string base_name;
  std::size_t base_order = 0;
  std::uint64_t out_order = 1;
  PermutationGroup group;
  std::vector<DiagonalGenerator> roles;  // parallel to group.generators()

  std::uint64_t expected_order() const {
    return static_cast<std::uint64_t>(base_order) * base_order * out_order * 2;
  }
};

inline DiagonalGroup build_diagonal_group(GroupTable const& t, AutomorphismGroup const& aut,
                                          std::uint64_t cap = kDefaultDiagonalCap) {
  if (t.size() > cap) throw CapExceeded("diagonal domain of size " + std::to_string(t.size()), cap);
  std::vector<Permutation> gens;
  std::vector<DiagonalGenerator> roles;
  for (elem_t g : t.generators()) {
    gens.push_back(right_translation(t, g));
    roles.push_back({DiagonalRole::RightTranslation, g, 0});
  }
  for (elem_t g : t.generators()) {
    gens.push_back(left_translation(t, g));
    roles.push_back({DiagonalRole::LeftTranslation, g, 0});
  }
  for (std::size_t i = 1; i < aut.outer_representatives.size(); ++i) {
    gens.push_back(automorphism_permutation(aut.outer_representatives[i]));
    roles.push_back({DiagonalRole::Automorphism, 0, i});
  }
  gens.push_back(inversion_map(t));
  roles.push_back({DiagonalRole::Inversion, 0, 0});
  return DiagonalGroup{t.name(), t.size(), aut.out_order, PermutationGroup(t.size(), std::move(gens)),
                       std::move(roles)};
}

enum class Side { Left, Right };

/// {x -> x a : a in A} for the right side, {x -> a^-1 x} for the left side.
inline PermutationGroup subgroup_image_in_diagonal(GroupTable const& t, Side side, Subgroup const& a) {
  std::vector<Permutation> gens;
  for (elem_t g : a.generators()) {
    gens.push_back(side == Side::Right ? right_translation(t, g) : left_translation(t, g));
  }
  return PermutationGroup(t.size(), std::move(gens));
}

/// Sorted point set of Omega occupied by the elements of `elements`.
inline PointSet as_point_set(std::vector<elem_t> const& elements) {
  PointSet s(elements.begin(), elements.end());
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace diagspread
