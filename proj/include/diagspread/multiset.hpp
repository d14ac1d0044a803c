#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "diagspread/errors.hpp"
#include "diagspread/perm.hpp"

namespace diagspread {

/// A multiset of points of a finite domain, held as a multiplicity vector.
/// Multiplicities are never negative.
class Multiset {
 public:
  Multiset() = default;
  explicit Multiset(std::size_t domain_size) : mult_(domain_size, 0) {}

  explicit Multiset(std::vector<std::int64_t> mult) : mult_(std::move(mult)) {
    for (auto m : mult_) {
      if (m < 0) throw PreconditionViolation("negative multiplicity");
    }
    cardinality_ = std::accumulate(mult_.begin(), mult_.end(), std::int64_t{0});
  }

  static Multiset constant(std::size_t domain_size, std::int64_t m) {
    return Multiset(std::vector<std::int64_t>(domain_size, m));
  }

  static Multiset indicator(std::size_t domain_size, PointSet const& set) {
    std::vector<std::int64_t> mult(domain_size, 0);
    for (point_t p : set) {
      if (p >= domain_size) throw OutOfRange("point out of range");
      mult[p] += 1;
    }
    return Multiset(std::move(mult));
  }

  std::size_t domain_size() const noexcept { return mult_.size(); }
  std::int64_t cardinality() const noexcept { return cardinality_; }
  std::int64_t operator[](point_t p) const { return mult_.at(p); }
  std::vector<std::int64_t> const& multiplicities() const noexcept { return mult_; }

  std::size_t support_size() const {
    return static_cast<std::size_t>(
        std::count_if(mult_.begin(), mult_.end(), [](std::int64_t m) { return m != 0; }));
  }

  /// this + factor * other; throws if any multiplicity would go negative.
  Multiset plus(Multiset const& other, std::int64_t factor = 1) const {
    if (other.domain_size() != domain_size()) throw DegreeMismatch(domain_size(), other.domain_size());
    std::vector<std::int64_t> out(mult_);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] += factor * other.mult_[i];
      if (out[i] < 0) {
        throw PreconditionViolation("multiset difference is negative at point " + std::to_string(i));
      }
    }
    return Multiset(std::move(out));
  }

  std::int64_t sum_over(PointSet const& set) const {
    std::int64_t s = 0;
    for (point_t p : set) s += mult_.at(p);
    return s;
  }

  friend Multiset operator+(Multiset const& a, Multiset const& b) { return a.plus(b, 1); }
  friend Multiset operator-(Multiset const& a, Multiset const& b) { return a.plus(b, -1); }
  friend bool operator==(Multiset const& a, Multiset const& b) { return a.mult_ == b.mult_; }

 private:
  std::vector<std::int64_t> mult_;
  std::int64_t cardinality_ = 0;
};

/// Trivial: constant on the domain, or supported on exactly one point.
inline bool is_trivial_multiset(Multiset const& j) {
  auto const& m = j.multiplicities();
  if (std::adjacent_find(m.begin(), m.end(), std::not_equal_to<>()) == m.end()) return true;
  return j.support_size() == 1;
}

/// A set is trivial when its indicator multiset is: empty, everything, or a point.
inline bool is_trivial_set(PointSet const& x, std::size_t domain_size) {
  return x.size() <= 1 || x.size() == domain_size;
}

}  // namespace diagspread
