#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "diagspread/errors.hpp"

namespace diagspread {

using point_t = std::uint32_t;

/// A bijection of {0, ..., n-1} stored as its image table.
///
/// Composition convention, used everywhere in the library: the left factor
/// acts first, so `compose(p, q)` maps `i` to `q(p(i))`. This matches writing
/// actions as exponents, `i^(pq) = (i^p)^q`.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<point_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (point_t v : images_) {
      if (v >= images_.size() || seen[v]) {
        throw InvalidPermutation("image table is not a bijection of {0.." +
                                 std::to_string(images_.size()) + "-1}");
      }
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t degree) {
    std::vector<point_t> images(degree);
    std::iota(images.begin(), images.end(), point_t{0});
    return from_images_unchecked(std::move(images));
  }

  // Caller guarantees bijectivity. Used on hot paths.
  static Permutation from_images_unchecked(std::vector<point_t> images) {
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  /// Builds a permutation of the given degree from disjoint cycles.
  static Permutation from_cycles(std::size_t degree,
                                 std::vector<std::vector<point_t>> const& cycles) {
    std::vector<point_t> images(degree);
    std::iota(images.begin(), images.end(), point_t{0});
    std::vector<bool> touched(degree, false);
    for (auto const& cycle : cycles) {
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        point_t from = cycle[k];
        point_t to = cycle[(k + 1) % cycle.size()];
        if (from >= degree || to >= degree) {
          throw InvalidPermutation("cycle point " + std::to_string(std::max(from, to)) +
                                   " out of range for degree " + std::to_string(degree));
        }
        if (touched[from]) {
          throw InvalidPermutation("point " + std::to_string(from) +
                                   " appears in more than one cycle");
        }
        touched[from] = true;
        images[from] = to;
      }
    }
    return from_images_unchecked(std::move(images));
  }

  std::size_t degree() const noexcept { return images_.size(); }

  point_t operator()(point_t i) const {
    if (i >= images_.size()) {
      throw OutOfRange("point " + std::to_string(i) + " out of range");
    }
    return images_[i];
  }

  point_t operator[](point_t i) const noexcept { return images_[i]; }

  std::span<point_t const> images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  Permutation inverse() const {
    std::vector<point_t> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) {
      inv[images_[i]] = static_cast<point_t>(i);
    }
    return from_images_unchecked(std::move(inv));
  }

  /// Smallest moved point, or degree() for the identity.
  point_t first_moved_point() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return static_cast<point_t>(i);
    }
    return static_cast<point_t>(images_.size());
  }

  /// Nontrivial cycles, each starting at its smallest point, ordered by that point.
  std::vector<std::vector<point_t>> cycles() const {
    std::vector<std::vector<point_t>> out;
    std::vector<bool> seen(images_.size(), false);
    for (point_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      std::vector<point_t> cycle;
      for (point_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        cycle.push_back(j);
      }
      out.push_back(std::move(cycle));
    }
    return out;
  }

  std::uint64_t order() const {
    std::uint64_t result = 1;
    for (auto const& cycle : cycles()) {
      result = std::lcm(result, static_cast<std::uint64_t>(cycle.size()));
    }
    return result;
  }

  std::string to_cycle_string() const {
    auto cs = cycles();
    if (cs.empty()) return "()";
    std::string s;
    for (auto const& cycle : cs) {
      s += '(';
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        if (k) s += ' ';
        s += std::to_string(cycle[k]);
      }
      s += ')';
    }
    return s;
  }

  friend bool operator==(Permutation const&, Permutation const&) = default;
  friend auto operator<=>(Permutation const& a, Permutation const& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<point_t> images_;
};

/// Apply p first, then q.
inline Permutation compose(Permutation const& p, Permutation const& q) {
  if (p.degree() != q.degree()) throw DegreeMismatch(p.degree(), q.degree());
  std::vector<point_t> images(p.degree());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = q[p[i]];
  return Permutation::from_images_unchecked(std::move(images));
}

inline Permutation operator*(Permutation const& p, Permutation const& q) {
  return compose(p, q);
}

/// g^-1 p g, the image of p under conjugation by g.
inline Permutation conjugate(Permutation const& p, Permutation const& g) {
  if (p.degree() != g.degree()) throw DegreeMismatch(p.degree(), g.degree());
  // (g^-1 p g)(g(i)) = g(p(i))
  std::vector<point_t> images(p.degree());
  for (std::size_t i = 0; i < images.size(); ++i) images[g[i]] = g[p[i]];
  return Permutation::from_images_unchecked(std::move(images));
}

inline Permutation power(Permutation const& p, std::uint64_t k) {
  Permutation result = Permutation::identity(p.degree());
  Permutation base = p;
  while (k) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

struct PermutationHash {
  std::size_t operator()(Permutation const& p) const noexcept {
    // FNV-1a over the image table
    std::uint64_t h = 1469598103934665603ull;
    for (point_t v : p.images()) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Sorted point set used as a canonical key for subsets of the domain.
using PointSet = std::vector<point_t>;

struct PointSetHash {
  std::size_t operator()(PointSet const& s) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (point_t v : s) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

inline PointSet image_of_set(PointSet const& set, Permutation const& g) {
  PointSet out;
  out.reserve(set.size());
  for (point_t x : set) out.push_back(g[x]);
  std::sort(out.begin(), out.end());
  return out;
}

/// Sorts, deduplicates and range-checks a set of points.
inline PointSet normalize_point_set(std::vector<point_t> points, std::size_t degree) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (!points.empty() && points.back() >= degree) {
    throw OutOfRange("point " + std::to_string(points.back()) + " out of range for degree " +
                     std::to_string(degree));
  }
  return points;
}

}  // namespace diagspread
