#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "diagspread/errors.hpp"
#include "diagspread/perm.hpp"

namespace diagspread {

inline constexpr std::uint64_t kDefaultElementCap = 1'000'000;
inline constexpr std::uint64_t kDefaultSetOrbitCap = 1'000'000;

namespace detail {

struct StabLevel {
  point_t base_point = 0;
  std::vector<Permutation> generators;    // strong generators fixing all earlier base points
  std::vector<point_t> orbit;             // BFS order from base_point
  std::vector<std::int32_t> orbit_pos;    // point -> index into orbit, or -1
  std::vector<Permutation> transversal;   // base_point^transversal[k] == orbit[k]
  std::vector<Permutation> transversal_inv;

  void rebuild_orbit(std::size_t degree) {
    orbit.assign(1, base_point);
    orbit_pos.assign(degree, -1);
    orbit_pos[base_point] = 0;
    transversal.assign(1, Permutation::identity(degree));
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      point_t y = orbit[k];
      for (auto const& s : generators) {
        point_t z = s[y];
        if (orbit_pos[z] >= 0) continue;
        orbit_pos[z] = static_cast<std::int32_t>(orbit.size());
        orbit.push_back(z);
        transversal.push_back(transversal[k] * s);
      }
    }
    transversal_inv.clear();
    transversal_inv.reserve(transversal.size());
    for (auto const& u : transversal) transversal_inv.push_back(u.inverse());
  }
};

/// Base and strong generating set built by deterministic Schreier-Sims.
/// Each new base point is the smallest point moved by the element that
/// forced the extension.
class StabChain {
 public:
  StabChain(std::size_t degree, std::span<Permutation const> generators,
            std::span<point_t const> initial_base)
      : degree_(degree) {
    std::vector<Permutation> gens;
    for (auto const& g : generators) {
      if (!g.is_identity()) gens.push_back(g);
    }
    std::vector<point_t> base(initial_base.begin(), initial_base.end());
    for (auto const& g : gens) {
      bool fixes_base = std::all_of(base.begin(), base.end(),
                                    [&](point_t b) { return g[b] == b; });
      if (fixes_base) base.push_back(g.first_moved_point());
    }
    levels_.resize(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      levels_[i].base_point = base[i];
      for (auto const& g : gens) {
        bool fixes = true;
        for (std::size_t j = 0; j < i && fixes; ++j) fixes = g[base[j]] == base[j];
        if (fixes) levels_[i].generators.push_back(g);
      }
      levels_[i].rebuild_orbit(degree_);
    }
    run_schreier_sims();
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t depth() const noexcept { return levels_.size(); }
  StabLevel const& level(std::size_t i) const { return levels_.at(i); }

  std::vector<point_t> base() const {
    std::vector<point_t> b;
    for (auto const& l : levels_) b.push_back(l.base_point);
    return b;
  }

  /// Residue of g after stripping levels from `start`, and the level at which
  /// sifting stopped (depth() when it went all the way through).
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t start = 0) const {
    for (std::size_t l = start; l < levels_.size(); ++l) {
      auto const& lv = levels_[l];
      std::int32_t pos = lv.orbit_pos[g[lv.base_point]];
      if (pos < 0) return {std::move(g), l};
      g = g * lv.transversal_inv[static_cast<std::size_t>(pos)];
    }
    return {std::move(g), levels_.size()};
  }

  bool contains(Permutation const& g) const {
    auto [residue, level] = sift(g);
    return level == levels_.size() && residue.is_identity();
  }

  std::uint64_t order() const {
    std::uint64_t result = 1;
    for (auto const& l : levels_) {
      if (__builtin_mul_overflow(result, static_cast<std::uint64_t>(l.orbit.size()), &result)) {
        throw Error("group order does not fit in 64 bits");
      }
    }
    return result;
  }

 private:
  void run_schreier_sims() {
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
      auto level = static_cast<std::size_t>(i);
      std::optional<std::size_t> restart = test_level(level);
      if (restart) {
        i = static_cast<std::ptrdiff_t>(*restart);
      } else {
        --i;
      }
    }
  }

  // Tests all Schreier generators at `level`. On the first one that does not
  // sift, extends the chain and returns the level to resume from.
  std::optional<std::size_t> test_level(std::size_t level) {
    auto& lv = levels_[level];
    for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
      for (std::size_t gi = 0; gi < lv.generators.size(); ++gi) {
        Permutation us = lv.transversal[k] * lv.generators[gi];
        point_t target = lv.generators[gi][lv.orbit[k]];
        auto pos = static_cast<std::size_t>(lv.orbit_pos[target]);
        if (us == lv.transversal[pos]) continue;
        Permutation schreier = us * lv.transversal_inv[pos];
        auto [residue, stop] = sift(std::move(schreier), level + 1);
        if (stop == levels_.size() && residue.is_identity()) continue;
        if (stop == levels_.size()) {
          StabLevel fresh;
          fresh.base_point = residue.first_moved_point();
          levels_.push_back(std::move(fresh));
        }
        for (std::size_t l = level + 1; l <= stop; ++l) {
          levels_[l].generators.push_back(residue);
          levels_[l].rebuild_orbit(degree_);
        }
        return stop;
      }
    }
    return std::nullopt;
  }

  std::size_t degree_;
  std::vector<StabLevel> levels_;
};

}  // namespace detail

/// A permutation group given by generators. The base and strong generating
/// set is built on first use and shared between copies.
class PermutationGroup {
 public:
  PermutationGroup(std::size_t degree, std::vector<Permutation> generators)
      : degree_(degree), generators_(std::move(generators)),
        lazy_(std::make_shared<Lazy>()) {
    for (auto const& g : generators_) {
      if (g.degree() != degree_) throw DegreeMismatch(degree_, g.degree());
    }
    if (generators_.empty()) generators_.push_back(Permutation::identity(degree_));
  }

  static PermutationGroup trivial(std::size_t degree) {
    return PermutationGroup(degree, {Permutation::identity(degree)});
  }

  std::size_t degree() const noexcept { return degree_; }
  std::vector<Permutation> const& generators() const noexcept { return generators_; }

  detail::StabChain const& chain() const {
    std::call_once(lazy_->flag, [this] {
      lazy_->chain = std::make_unique<detail::StabChain>(
          degree_, generators_, std::span<point_t const>{});
    });
    return *lazy_->chain;
  }

  std::uint64_t order() const { return chain().order(); }

  bool contains(Permutation const& p) const {
    if (p.degree() != degree_) throw DegreeMismatch(degree_, p.degree());
    return chain().contains(p);
  }

  bool is_trivial() const {
    return std::all_of(generators_.begin(), generators_.end(),
                       [](Permutation const& g) { return g.is_identity(); });
  }

 private:
  struct Lazy {
    std::once_flag flag;
    std::unique_ptr<detail::StabChain> chain;
  };

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::shared_ptr<Lazy> lazy_;
};

inline bool contains(PermutationGroup const& g, Permutation const& p) { return g.contains(p); }
inline std::uint64_t order(PermutationGroup const& g) { return g.order(); }

/// Sorted orbit of `point` under G.
inline PointSet orbit(PermutationGroup const& g, point_t point) {
  if (point >= g.degree()) {
    throw OutOfRange("point " + std::to_string(point) + " out of range for degree " +
                     std::to_string(g.degree()));
  }
  std::vector<bool> seen(g.degree(), false);
  PointSet out{point};
  seen[point] = true;
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (auto const& s : g.generators()) {
      point_t z = s[out[k]];
      if (!seen[z]) {
        seen[z] = true;
        out.push_back(z);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All orbits, ordered by smallest point.
inline std::vector<PointSet> orbits(PermutationGroup const& g) {
  std::vector<PointSet> out;
  std::vector<bool> seen(g.degree(), false);
  for (point_t p = 0; p < g.degree(); ++p) {
    if (seen[p]) continue;
    out.push_back(orbit(g, p));
    for (point_t q : out.back()) seen[q] = true;
  }
  return out;
}

inline bool is_transitive(PermutationGroup const& g) {
  return g.degree() == 0 || orbit(g, 0).size() == g.degree();
}

/// Point stabilizer, generated by the Schreier generators that survive a
/// Schreier-Sims run with `point` as first base point.
inline PermutationGroup stabilizer(PermutationGroup const& g, point_t point) {
  if (point >= g.degree()) {
    throw OutOfRange("point " + std::to_string(point) + " out of range for degree " +
                     std::to_string(g.degree()));
  }
  point_t base[] = {point};
  detail::StabChain chain(g.degree(), g.generators(), base);
  if (chain.depth() < 2) return PermutationGroup::trivial(g.degree());
  return PermutationGroup(g.degree(), chain.level(1).generators);
}

/// Elements of a group listed breadth-first from the identity, multiplying on
/// the right by generators in their given order.
struct ElementEnumeration {
  std::vector<Permutation> elements;
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> index;
  // elements[i] == elements[parent[i]] * generators[label[i]] for i > 0
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> label;

  std::optional<std::uint32_t> find(Permutation const& p) const {
    auto it = index.find(p);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

inline ElementEnumeration enumerate_elements(PermutationGroup const& g,
                                             std::uint64_t cap = kDefaultElementCap) {
  std::uint64_t n = g.order();
  if (n > cap) throw CapExceeded("group of order " + std::to_string(n), cap);
  ElementEnumeration e;
  e.elements.reserve(n);
  e.index.reserve(n);
  e.elements.push_back(Permutation::identity(g.degree()));
  e.index.emplace(e.elements.back(), 0);
  e.parent.push_back(0);
  e.label.push_back(0);
  auto const& gens = g.generators();
  for (std::size_t k = 0; k < e.elements.size(); ++k) {
    for (std::uint32_t gi = 0; gi < gens.size(); ++gi) {
      Permutation y = e.elements[k] * gens[gi];
      if (e.index.contains(y)) continue;
      auto id = static_cast<std::uint32_t>(e.elements.size());
      e.index.emplace(y, id);
      e.elements.push_back(std::move(y));
      e.parent.push_back(static_cast<std::uint32_t>(k));
      e.label.push_back(gi);
    }
  }
  if (e.elements.size() != n) {
    throw InternalError("closure size " + std::to_string(e.elements.size()) +
                        " disagrees with BSGS order " + std::to_string(n));
  }
  return e;
}

}  // namespace diagspread
