#pragma once

// Brute-force reference implementations used to check the library. They
// trade speed for directness: whole-group loops, explicit product sets,
// explicit cosets.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "diagspread.hpp"

namespace oracle {

using namespace diagspread;

/// Weights sum_{x in X^g} J(x) over every element g of G.
struct WeightScan {
  std::set<std::int64_t> weights;
  std::set<PointSet> images;
};

inline WeightScan scan_weights(PermutationGroup const& g, PointSet const& x, Multiset const& j) {
  WeightScan out;
  auto visit = [&](Permutation const& p) {
    PointSet y;
    for (point_t v : x) y.push_back(p(v));
    std::sort(y.begin(), y.end());
    std::int64_t w = 0;
    for (point_t v : y) w += j[v];
    out.weights.insert(w);
    out.images.insert(std::move(y));
  };
  if (g.order() <= kDefaultElementCap) {
    for (auto const& p : enumerate_elements(g).elements) visit(p);
    return out;
  }
  // too many elements to hold at once: walk the products u_{d-1} ... u_0 of
  // transversal elements, one per level, which lists every element once
  auto const& chain = g.chain();
  std::uint64_t count = 0;
  auto walk = [&](auto&& self, std::size_t level, Permutation const& prefix) -> void {
    if (level == 0) {
      visit(prefix);
      ++count;
      return;
    }
    for (auto const& u : chain.level(level - 1).transversal) self(self, level - 1, prefix * u);
  };
  walk(walk, chain.depth(), Permutation::identity(g.degree()));
  if (count != g.order()) throw InternalError("transversal walk missed elements");
  return out;
}

/// Same weights, collected over the images X^g reached by breadth-first
/// search on generators. Independent of the library's set-orbit code.
inline WeightScan scan_images(PermutationGroup const& g, PointSet const& x, Multiset const& j) {
  WeightScan out;
  std::vector<PointSet> queue{x};
  out.images.insert(x);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    std::int64_t w = 0;
    for (point_t v : queue[k]) w += j[v];
    out.weights.insert(w);
    for (auto const& s : g.generators()) {
      PointSet y;
      for (point_t v : queue[k]) y.push_back(s(v));
      std::sort(y.begin(), y.end());
      if (out.images.insert(y).second) queue.push_back(std::move(y));
    }
  }
  return out;
}

/// The conditions on (X, J) other than constancy, restated directly.
inline bool admissible(std::size_t n, PointSet const& x, Multiset const& j) {
  auto const& m = j.multiplicities();
  std::size_t support = 0;
  bool constant = true;
  for (auto v : m) {
    if (v != 0) ++support;
    if (v != m[0]) constant = false;
  }
  auto size = j.cardinality();
  return x.size() >= 2 && x.size() < n && !constant && support >= 2 && size > 0 &&
         static_cast<std::int64_t>(n) % size == 0;
}

/// #{(x, y) in C1 x C2 : xy = h} by a double loop over the classes.
inline std::uint64_t class_mult(GroupTable const& t, class_id c1, class_id c2, elem_t h) {
  std::uint64_t n = 0;
  for (elem_t x : t.classes()[c1].members) {
    for (elem_t y : t.classes()[c2].members) {
      if (t.multiply(x, y) == h) ++n;
    }
  }
  return n;
}

inline std::vector<bool> members(GroupTable const& t, std::vector<elem_t> const& s) {
  std::vector<bool> m(t.size(), false);
  for (elem_t x : s) m[x] = true;
  return m;
}

/// Explicit set {y^-1 x y : x in s} built from permutations.
inline std::vector<elem_t> conjugate_set(GroupTable const& t, std::vector<elem_t> const& s, elem_t y) {
  Permutation py = t.element(y);
  Permutation inv = py.inverse();
  std::vector<elem_t> out;
  for (elem_t x : s) out.push_back(t.index_of(inv * t.element(x) * py));
  std::sort(out.begin(), out.end());
  return out;
}

/// |B S| with the product set written out.
inline std::size_t product_size(GroupTable const& t, std::vector<elem_t> const& b, std::vector<elem_t> const& s) {
  std::set<elem_t> prod;
  for (elem_t y : b) {
    for (elem_t x : s) prod.insert(t.multiply(y, x));
  }
  return prod.size();
}

inline std::vector<elem_t> intersect(GroupTable const& t, std::vector<elem_t> const& a, std::vector<elem_t> const& c) {
  auto m = members(t, c);
  std::vector<elem_t> out;
  for (elem_t x : a) {
    if (m[x]) out.push_back(x);
  }
  return out;
}

/// Whether B(A ∩ A^t) = A for every t in T, by explicit sets.
inline bool supplement_inner(GroupTable const& t, Subgroup const& a, Subgroup const& b,
                             std::optional<elem_t>* first_failure = nullptr) {
  for (elem_t y = 0; y < t.size(); ++y) {
    auto s = intersect(t, a.elements(), conjugate_set(t, a.elements(), y));
    if (product_size(t, b.elements(), s) != a.order()) {
      if (first_failure) *first_failure = y;
      return false;
    }
  }
  return true;
}

/// Same over all automorphisms, each one written out as rho followed by
/// conjugation by y.
inline bool supplement_full(GroupTable const& t, Subgroup const& a, Subgroup const& b, AutomorphismGroup const& aut) {
  for (auto const& rho : aut.outer_representatives) {
    std::vector<elem_t> image;
    for (elem_t x : a.elements()) image.push_back(rho(x));
    for (elem_t y = 0; y < t.size(); ++y) {
      auto s = intersect(t, a.elements(), conjugate_set(t, image, y));
      if (product_size(t, b.elements(), s) != a.order()) return false;
    }
  }
  return true;
}

/// Orbits of H on the right cosets A x, with cosets stored as sorted sets.
inline std::size_t coset_orbits(GroupTable const& t, Subgroup const& a, Subgroup const& h) {
  std::map<std::vector<elem_t>, std::size_t> id;
  std::vector<std::vector<elem_t>> cosets;
  for (elem_t x = 0; x < t.size(); ++x) {
    std::vector<elem_t> c;
    for (elem_t y : a.elements()) c.push_back(t.multiply(y, x));
    std::sort(c.begin(), c.end());
    if (!id.contains(c)) {
      id.emplace(c, cosets.size());
      cosets.push_back(c);
    }
  }
  std::vector<std::size_t> parent(cosets.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    for (elem_t g : h.elements()) {
      std::vector<elem_t> c;
      for (elem_t y : cosets[i]) c.push_back(t.multiply(y, g));
      std::sort(c.begin(), c.end());
      parent[find(i)] = find(id.at(c));
    }
  }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < cosets.size(); ++i) roots.insert(find(i));
  return roots.size();
}

/// Some t with A ∩ A^t = 1, scanning every element.
inline std::optional<elem_t> trivial_intersection(GroupTable const& t, Subgroup const& a) {
  for (elem_t y = 0; y < t.size(); ++y) {
    if (intersect(t, a.elements(), conjugate_set(t, a.elements(), y)).size() == 1) return y;
  }
  return std::nullopt;
}

/// Point set of a random image X^g, g a random word in the generators.
inline PointSet random_image(PermutationGroup const& g, PointSet const& x, std::mt19937& rng, int steps = 12) {
  std::uniform_int_distribution<std::size_t> pick(0, g.generators().size() - 1);
  Permutation p = Permutation::identity(g.degree());
  for (int i = 0; i < steps; ++i) p = p * g.generators()[pick(rng)];
  return image_of_set(x, p);
}

inline Permutation random_permutation(std::size_t n, std::mt19937& rng) {
  std::vector<point_t> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(std::move(img));
}

}  // namespace oracle
