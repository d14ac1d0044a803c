#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diagspread/automorphism.hpp"
#include "diagspread/coset_action.hpp"
#include "diagspread/group_table.hpp"

namespace diagspread {

enum class SupplementScope { Inner, Full };  // t in T, or tau in Aut(T)

inline char const* to_string(SupplementScope s) { return s == SupplementScope::Inner ? "T" : "Aut(T)"; }

/// Result of checking A = B(A ∩ A^tau) over a range of tau.
struct SupplementReport {
  bool holds = true;
  SupplementScope scope = SupplementScope::Inner;
  // First failure: tau = (outer representative failing_outer_index) then
  // conjugation by failing_element. The outer index is 0 for scope T.
  std::optional<elem_t> failing_element;
  std::size_t failing_outer_index = 0;
  std::size_t intersection_order = 0;  // |A ∩ A^tau| at the failure
  std::size_t product_order = 0;       // |B (A ∩ A^tau)| at the failure
  std::size_t checks = 0;
};

namespace detail {

inline void check_supplement_inputs(GroupTable const& t, Subgroup const& a, Subgroup const& b) {
  if (!is_normal_subgroup(t, b, a)) throw PreconditionViolation("B must be a normal subgroup of A");
  if (b.order() >= a.order()) throw PreconditionViolation("B must be a proper subgroup of A");
  if (a.order() >= t.size()) throw PreconditionViolation("A must be a proper subgroup of T");
}

// |A ∩ C^t| and |B ∩ A ∩ C^t| where C is given by its membership vector.
// x lies in C^t = t^-1 C t exactly when t x t^-1 lies in C.
inline std::pair<std::size_t, std::size_t> intersection_orders(GroupTable const& t, Subgroup const& a,
                                                               Subgroup const& b,
                                                               std::vector<bool> const& c_member,
                                                               elem_t conj) {
  elem_t conj_inv = t.inverse(conj);
  std::size_t s = 0, bs = 0;
  for (elem_t x : a.elements()) {
    if (c_member[t.conjugate(x, conj_inv)]) {
      ++s;
      if (b.contains(x)) ++bs;
    }
  }
  return {s, bs};
}

}  // namespace detail

/// Checks |B (A ∩ A^t)| = |A| for every t in T, using |B S| = |B||S| / |B ∩ S|.
/// A^t only depends on the coset A t, so one t per coset is tested; the
/// reported failure is the smallest failing element index.
inline SupplementReport supplement_property(GroupTable const& t, Subgroup const& a, Subgroup const& b) {
  detail::check_supplement_inputs(t, a, b);
  SupplementReport report;
  report.scope = SupplementScope::Inner;
  std::vector<bool> covered(t.size(), false);
  for (elem_t x = 0; x < t.size(); ++x) {
    if (covered[x]) continue;
    for (elem_t y : a.elements()) covered[t.multiply(y, x)] = true;
    auto [s, bs] = detail::intersection_orders(t, a, b, a.membership(), x);
    ++report.checks;
    std::size_t product = b.order() * s / bs;
    if (product != a.order()) {
      report.holds = false;
      report.failing_element = x;
      report.intersection_order = s;
      report.product_order = product;
      return report;
    }
  }
  return report;
}

/// Checks |B (A ∩ A^tau)| = |A| for every tau in Aut(T), as tau = rho * inn(t)
/// over outer representatives rho and all t, using A^(rho inn(t)) = (A^rho)^t.
/// As for scope T, one t per coset A^rho t is enough.
inline SupplementReport supplement_property(GroupTable const& t, Subgroup const& a, Subgroup const& b,
                                            AutomorphismGroup const& aut) {
  detail::check_supplement_inputs(t, a, b);
  SupplementReport report;
  report.scope = SupplementScope::Full;
  for (std::size_t r = 0; r < aut.outer_representatives.size(); ++r) {
    std::vector<bool> image_member(t.size(), false);
    std::vector<elem_t> image = apply_to_set(aut.outer_representatives[r], a.elements());
    for (elem_t x : image) image_member[x] = true;
    std::vector<bool> covered(t.size(), false);
    for (elem_t x = 0; x < t.size(); ++x) {
      if (covered[x]) continue;
      for (elem_t y : image) covered[t.multiply(y, x)] = true;
      auto [s, bs] = detail::intersection_orders(t, a, b, image_member, x);
      ++report.checks;
      std::size_t product = b.order() * s / bs;
      if (product != a.order()) {
        report.holds = false;
        report.failing_element = x;
        report.failing_outer_index = r;
        report.intersection_order = s;
        report.product_order = product;
        return report;
      }
    }
  }
  return report;
}

/// Recomputes B (A ∩ A^tau) as an explicit set for a reported failure, where
/// tau is conjugation by `element` after the automorphism `outer`.
inline std::size_t supplement_product_size(GroupTable const& t, Subgroup const& a, Subgroup const& b,
                                           Automorphism const& outer, elem_t element) {
  std::vector<bool> image_member(t.size(), false);
  for (elem_t x : a.elements()) image_member[outer(x)] = true;
  std::vector<elem_t> s;
  elem_t inv = t.inverse(element);
  for (elem_t x : a.elements()) {
    if (image_member[t.conjugate(x, inv)]) s.push_back(x);
  }
  std::vector<bool> product(t.size(), false);
  std::size_t count = 0;
  for (elem_t y : b.elements()) {
    for (elem_t x : s) {
      elem_t p = t.multiply(y, x);
      if (!product[p]) {
        product[p] = true;
        ++count;
      }
    }
  }
  return count;
}

struct OrbitCounts {
  std::uint64_t c_a = 0;
  std::uint64_t c_b = 0;
  std::uint64_t c_a_fixed_points = 0;  // Cauchy–Frobenius values
  std::uint64_t c_b_fixed_points = 0;
  std::size_t cosets = 0;
};

namespace detail {

inline std::size_t count_orbits(PermutationGroup const& g) { return orbits(g).size(); }

// Average number of fixed points over H of the action of R on cosets of A.
// An element of class K fixes |R| |K ∩ A| / (|K| |A|) cosets.
inline std::uint64_t fixed_point_average(GroupTable const& r, Subgroup const& a,
                                         std::vector<std::uint64_t> const& in_a_per_class,
                                         Subgroup const& h) {
  std::vector<std::uint64_t> in_h(r.class_count(), 0);
  for (elem_t x : h.elements()) ++in_h[r.class_of(x)];
  std::uint64_t total = 0;
  for (class_id k = 0; k < r.class_count(); ++k) {
    if (in_h[k] == 0) continue;
    std::uint64_t num = static_cast<std::uint64_t>(r.size()) * in_a_per_class[k];
    std::uint64_t den = static_cast<std::uint64_t>(r.class_size(k)) * a.order();
    if (num % den != 0) throw InternalError("fractional fixed-point count");
    total += in_h[k] * (num / den);
  }
  if (total % h.order() != 0) throw InternalError("fixed-point average is not an integer");
  return total / h.order();
}

}  // namespace detail

/// Numbers of orbits of A and of B on the right cosets of A in R, each
/// computed from the coset action and from class data; the two must agree.
inline OrbitCounts orbit_count_pair(GroupTable const& r, Subgroup const& a, Subgroup const& b) {
  if (!is_subgroup_of(b, a)) throw InvalidSubgroup("B is not contained in A");
  CosetAction action(r, a);
  OrbitCounts out;
  out.cosets = action.degree();
  out.c_a = detail::count_orbits(action.image_of(a));
  out.c_b = detail::count_orbits(action.image_of(b));
  std::vector<std::uint64_t> in_a(r.class_count(), 0);
  for (elem_t x : a.elements()) ++in_a[r.class_of(x)];
  out.c_a_fixed_points = detail::fixed_point_average(r, a, in_a, a);
  out.c_b_fixed_points = detail::fixed_point_average(r, a, in_a, b);
  if (out.c_a != out.c_a_fixed_points || out.c_b != out.c_b_fixed_points) {
    throw InternalError("orbit counts disagree: direct " + std::to_string(out.c_a) + "," +
                        std::to_string(out.c_b) + " vs fixed points " +
                        std::to_string(out.c_a_fixed_points) + "," + std::to_string(out.c_b_fixed_points));
  }
  return out;
}

/// First t in index order with A ∩ A^t trivial. The intersection only
/// depends on the coset A t, whose smallest element is met first.
inline std::optional<elem_t> two_point_stabilizer_trivial(GroupTable const& t, Subgroup const& a) {
  if (a.order() >= t.size()) throw PreconditionViolation("A must be a proper subgroup");
  std::vector<bool> covered(t.size(), false);
  for (elem_t x = 0; x < t.size(); ++x) {
    if (covered[x]) continue;
    for (elem_t y : a.elements()) covered[t.multiply(y, x)] = true;
    auto [s, bs] = detail::intersection_orders(t, a, a, a.membership(), x);
    (void)bs;
    if (s == 1) return x;
  }
  return std::nullopt;
}

struct OrbitBound {
  std::uint64_t orbits = 0;  // c: orbits of A on cosets of A
  std::uint64_t index = 0;   // |R : A|
  bool holds = false;        // c |A| / 2 >= |R : A|
};

inline OrbitBound orbit_bound(GroupTable const& r, Subgroup const& a) {
  if (a.order() >= r.size()) throw PreconditionViolation("A must be a proper subgroup");
  CosetAction action(r, a);
  OrbitBound out;
  out.orbits = detail::count_orbits(action.image_of(a));
  out.index = action.degree();
  out.holds = out.orbits * a.order() >= 2 * out.index;
  return out;
}

inline bool orbit_bound_holds(GroupTable const& r, Subgroup const& a) { return orbit_bound(r, a).holds; }

}  // namespace diagspread
