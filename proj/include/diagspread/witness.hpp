#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "diagspread/multiset.hpp"
#include "diagspread/perm_group.hpp"
#include "diagspread/set_orbit.hpp"

namespace diagspread {

/// A verified pair (X, J): every image X^g has the same J-weight.
struct Witness {
  PointSet set;
  Multiset multiset;
  std::int64_t constant = 0;
  std::size_t images_checked = 0;
};

enum class Violation {
  NotTransitive,
  DomainMismatch,
  TrivialSet,
  TrivialMultiset,
  CardinalityNotDividing,
  NonConstantSum,
};

inline char const* to_string(Violation v) {
  switch (v) {
    case Violation::NotTransitive: return "not-transitive";
    case Violation::DomainMismatch: return "domain-mismatch";
    case Violation::TrivialSet: return "trivial-set";
    case Violation::TrivialMultiset: return "trivial-multiset";
    case Violation::CardinalityNotDividing: return "cardinality-not-dividing";
    case Violation::NonConstantSum: return "non-constant-sum";
  }
  return "?";
}

/// Why (X, J) is not a witness, with data that can be re-checked directly.
struct Refutation {
  Violation violation;
  std::string message;
  // NonConstantSum: an element g and the image X^g whose weight `value`
  // differs from the weight `expected` of X itself.
  // NotTransitive: `image` holds the orbit of point 0.
  PointSet image;
  std::optional<Permutation> element;
  std::int64_t value = 0;
  std::int64_t expected = 0;
};

using WitnessResult = std::variant<Witness, Refutation>;

inline bool is_witness(WitnessResult const& r) { return std::holds_alternative<Witness>(r); }

/// Checks (X, J) against the definition of a witness for G. Instead of
/// ranging over all g in G, it ranges over the distinct images X^g, since the
/// weight depends only on the image set.
inline WitnessResult verify_witness(PermutationGroup const& g, std::vector<point_t> x,
                                    Multiset const& j, std::uint64_t cap = kDefaultSetOrbitCap) {
  std::size_t n = g.degree();
  PointSet xs = normalize_point_set(std::move(x), n);
  if (j.domain_size() != n) {
    return Refutation{Violation::DomainMismatch,
                      "multiset is over " + std::to_string(j.domain_size()) + " points, group acts on " +
                          std::to_string(n),
                      {}, std::nullopt, 0, 0};
  }
  PointSet orbit0 = orbit(g, 0);
  if (orbit0.size() != n) {
    return Refutation{Violation::NotTransitive, "group is not transitive", orbit0, std::nullopt, 0, 0};
  }
  if (is_trivial_set(xs, n)) {
    return Refutation{Violation::TrivialSet,
                      "set of size " + std::to_string(xs.size()) + " is trivial", xs, std::nullopt, 0, 0};
  }
  if (is_trivial_multiset(j)) {
    return Refutation{Violation::TrivialMultiset, "multiset is trivial", {}, std::nullopt, 0, 0};
  }
  if (j.cardinality() == 0 || static_cast<std::int64_t>(n) % j.cardinality() != 0) {
    return Refutation{Violation::CardinalityNotDividing,
                      "|J| = " + std::to_string(j.cardinality()) + " does not divide " + std::to_string(n),
                      {}, std::nullopt, j.cardinality(), static_cast<std::int64_t>(n)};
  }
  SetOrbit images = set_orbit(g, xs, cap);
  std::int64_t expected = j.sum_over(images.sets[0]);
  for (std::size_t i = 1; i < images.size(); ++i) {
    std::int64_t value = j.sum_over(images.sets[i]);
    if (value != expected) {
      return Refutation{Violation::NonConstantSum,
                        "image weight " + std::to_string(value) + " differs from " + std::to_string(expected),
                        images.sets[i], images.element_for(i, g), value, expected};
    }
  }
  return Witness{std::move(xs), j, expected, images.size()};
}

/// Re-derives a refutation from its own data, without a set-orbit search.
inline bool recheck_refutation(PermutationGroup const& g, std::vector<point_t> x, Multiset const& j,
                               Refutation const& r) {
  std::size_t n = g.degree();
  PointSet xs = normalize_point_set(std::move(x), n);
  switch (r.violation) {
    case Violation::DomainMismatch:
      return j.domain_size() != n;
    case Violation::NotTransitive:
      return !r.image.empty() && r.image.size() < n && r.image == orbit(g, r.image.front());
    case Violation::TrivialSet:
      return is_trivial_set(xs, n);
    case Violation::TrivialMultiset:
      return is_trivial_multiset(j);
    case Violation::CardinalityNotDividing:
      return j.cardinality() == 0 || static_cast<std::int64_t>(n) % j.cardinality() != 0;
    case Violation::NonConstantSum:
      return r.element && g.contains(*r.element) && image_of_set(xs, *r.element) == r.image &&
             j.sum_over(r.image) == r.value && j.sum_over(xs) == r.expected && r.value != r.expected;
  }
  return false;
}

}  // namespace diagspread
