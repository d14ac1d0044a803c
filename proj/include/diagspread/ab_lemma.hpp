#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "diagspread/automorphism.hpp"
#include "diagspread/diagonal.hpp"
#include "diagspread/witness.hpp"

namespace diagspread {

enum class AbFailure {
  BNotInA,
  BNotNormal,
  BNotProper,
  NotTransitive,
  InvalidSet,
  FewerThanTwoBOrbits,
  BNotTransitiveOnAOrbit,
  WitnessRejected,
};

inline char const* to_string(AbFailure f) {
  switch (f) {
    case AbFailure::BNotInA: return "B-not-in-A";
    case AbFailure::BNotNormal: return "B-not-normal";
    case AbFailure::BNotProper: return "B-not-proper";
    case AbFailure::NotTransitive: return "G-not-transitive";
    case AbFailure::InvalidSet: return "invalid-set";
    case AbFailure::FewerThanTwoBOrbits: return "fewer-than-two-B-orbits";
    case AbFailure::BNotTransitiveOnAOrbit: return "B-not-transitive-on-A-orbit";
    case AbFailure::WitnessRejected: return "witness-rejected";
  }
  return "?";
}

/// A violated hypothesis of the AB construction, with its counterexample.
struct AbLemmaFailure {
  AbFailure reason;
  std::string message;
  std::vector<PointSet> offending_orbit;      // an A-orbit on Delta that B splits
  std::optional<Permutation> a_element;       // BNotNormal / BNotInA
  std::optional<Permutation> b_element;
  std::optional<Refutation> refutation;       // WitnessRejected
};

struct AbLemmaWitness {
  Witness witness;
  std::size_t k = 0;              // number of B-orbits in the A-orbit of the base point
  PointSet a_orbit;               // base_point^A
  PointSet b_orbit;               // base_point^B
  std::size_t delta_size = 0;     // images of X meeting base_point^A
  std::size_t a_orbits_on_delta = 0;
};

using AbLemmaResult = std::variant<AbLemmaWitness, AbLemmaFailure>;

/// Builds (X, Omega + k * w^B - w^A) from B normal and proper in A <= G,
/// after checking that B is transitive on every A-orbit of
/// Delta = {Y in X^G : Y meets w^A}. The result is re-verified against the
/// witness definition before it is returned.
inline AbLemmaResult ab_lemma_check(PermutationGroup const& g, PermutationGroup const& a,
                                    PermutationGroup const& b, point_t base_point,
                                    std::vector<point_t> x, std::uint64_t cap = kDefaultSetOrbitCap) {
  std::size_t n = g.degree();
  if (a.degree() != n) throw DegreeMismatch(n, a.degree());
  if (b.degree() != n) throw DegreeMismatch(n, b.degree());
  if (base_point >= n) throw OutOfRange("base point out of range");
  for (auto const& bg : b.generators()) {
    if (!a.contains(bg)) {
      return AbLemmaFailure{AbFailure::BNotInA, "a generator of B is not in A", {}, std::nullopt, bg, {}};
    }
  }
  for (auto const& ag : a.generators()) {
    for (auto const& bg : b.generators()) {
      if (!b.contains(conjugate(bg, ag))) {
        return AbLemmaFailure{AbFailure::BNotNormal, "B is not normalized by A", {}, ag, bg, {}};
      }
    }
  }
  if (b.order() >= a.order()) {
    return AbLemmaFailure{AbFailure::BNotProper, "B is not a proper subgroup of A", {}, {}, {}, {}};
  }
  if (!is_transitive(g)) {
    return AbLemmaFailure{AbFailure::NotTransitive, "G is not transitive", {}, {}, {}, {}};
  }
  PointSet xs = normalize_point_set(std::move(x), n);
  if (xs.empty() || xs.size() == n) {
    return AbLemmaFailure{AbFailure::InvalidSet, "X must be non-empty and proper", {}, {}, {}, {}};
  }

  PointSet a_orbit = orbit(a, base_point);
  PointSet b_orbit = orbit(b, base_point);
  std::vector<bool> in_a_orbit(n, false);
  for (point_t p : a_orbit) in_a_orbit[p] = true;
  // B-orbits inside base_point^A; B normal in A makes them equal in size
  std::size_t k = 0;
  std::vector<bool> covered(n, false);
  for (point_t p : a_orbit) {
    if (covered[p]) continue;
    ++k;
    for (point_t q : orbit(b, p)) covered[q] = true;
  }
  if (k < 2) {
    return AbLemmaFailure{AbFailure::FewerThanTwoBOrbits,
                          "the A-orbit of the base point is a single B-orbit", {a_orbit}, {}, {}, {}};
  }
  if (k * b_orbit.size() != a_orbit.size()) throw InternalError("unequal B-orbits in an A-orbit");

  SetOrbit images = set_orbit(g, xs, cap);
  std::vector<PointSet> delta;
  for (auto const& y : images.sets) {
    if (std::any_of(y.begin(), y.end(), [&](point_t p) { return in_a_orbit[p]; })) delta.push_back(y);
  }
  std::unordered_map<PointSet, std::size_t, PointSetHash> delta_index;
  for (std::size_t i = 0; i < delta.size(); ++i) delta_index.emplace(delta[i], i);

  auto setwise_orbit = [&](PermutationGroup const& h, std::size_t start) {
    std::vector<std::size_t> members{start};
    std::vector<bool> seen(delta.size(), false);
    seen[start] = true;
    for (std::size_t q = 0; q < members.size(); ++q) {
      for (auto const& s : h.generators()) {
        auto it = delta_index.find(image_of_set(delta[members[q]], s));
        if (it == delta_index.end()) throw InternalError("Delta is not invariant");
        if (!seen[it->second]) {
          seen[it->second] = true;
          members.push_back(it->second);
        }
      }
    }
    return members;
  };

  std::vector<bool> assigned(delta.size(), false);
  std::size_t a_orbit_count = 0;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    if (assigned[i]) continue;
    ++a_orbit_count;
    auto a_members = setwise_orbit(a, i);
    for (auto m : a_members) assigned[m] = true;
    auto b_members = setwise_orbit(b, i);
    if (b_members.size() != a_members.size()) {
      std::vector<PointSet> offending;
      for (auto m : a_members) offending.push_back(delta[m]);
      return AbLemmaFailure{AbFailure::BNotTransitiveOnAOrbit,
                            "B has " + std::to_string(b_members.size()) + " of the " +
                                std::to_string(a_members.size()) + " sets in an A-orbit on Delta",
                            std::move(offending), {}, {}, {}};
    }
  }

  Multiset j = Multiset::constant(n, 1)
                   .plus(Multiset::indicator(n, b_orbit), static_cast<std::int64_t>(k))
                   .plus(Multiset::indicator(n, a_orbit), -1);
  WitnessResult checked = verify_witness(g, xs, j, cap);
  if (auto const* r = std::get_if<Refutation>(&checked)) {
    return AbLemmaFailure{AbFailure::WitnessRejected,
                          std::string("constructed pair is not a witness: ") + to_string(r->violation),
                          {}, {}, {}, *r};
  }
  return AbLemmaWitness{std::get<Witness>(std::move(checked)), k, std::move(a_orbit),
                        std::move(b_orbit), delta.size(), a_orbit_count};
}

struct DiagonalWitness {
  AbLemmaWitness construction;
  std::uint64_t group_order = 0;
  std::size_t domain_size = 0;
};

using DiagonalWitnessResult = std::variant<DiagonalWitness, AbLemmaFailure>;

/// The witness (A, Omega + |A:B| B - A) for W(T), obtained from the AB
/// construction with G = W(T), right translations by A and B, base point 1_T
/// and X = A as a subset of Omega.
inline DiagonalWitnessResult diagonal_witness(GroupTable const& t, AutomorphismGroup const& aut,
                                              Subgroup const& a, Subgroup const& b,
                                              std::uint64_t cap = kDefaultSetOrbitCap) {
  if (!is_normal_subgroup(t, b, a)) throw PreconditionViolation("B must be a normal subgroup of A");
  if (b.order() >= a.order()) throw PreconditionViolation("B must be a proper subgroup of A");
  if (a.order() >= t.size()) throw PreconditionViolation("A must be a proper subgroup of T");
  DiagonalGroup w = build_diagonal_group(t, aut);
  PermutationGroup a_img = subgroup_image_in_diagonal(t, Side::Right, a);
  PermutationGroup b_img = subgroup_image_in_diagonal(t, Side::Right, b);
  AbLemmaResult r = ab_lemma_check(w.group, a_img, b_img, 0, as_point_set(a.elements()), cap);
  if (auto* f = std::get_if<AbLemmaFailure>(&r)) return std::move(*f);
  auto& ok = std::get<AbLemmaWitness>(r);
  std::int64_t expected_cardinality = static_cast<std::int64_t>(t.size());
  if (ok.witness.multiset.cardinality() != expected_cardinality) {
    throw InternalError("|J| = " + std::to_string(ok.witness.multiset.cardinality()) + " but |Omega| = " +
                        std::to_string(expected_cardinality));
  }
  return DiagonalWitness{std::move(ok), w.group.order(), t.size()};
}

}  // namespace diagspread
