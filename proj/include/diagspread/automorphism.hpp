#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "diagspread/group_table.hpp"

namespace diagspread {

inline constexpr std::uint64_t kDefaultAutomorphismCap = 10'000;
inline constexpr std::uint64_t kDefaultAutSearchLimit = 50'000'000;

/// An automorphism of a GroupTable, as a table of element indices.
struct Automorphism {
  std::vector<elem_t> mapping;
  std::optional<elem_t> inner_witness;  // t with mapping(x) == t^-1 x t

  bool is_inner() const noexcept { return inner_witness.has_value(); }
  elem_t operator()(elem_t x) const { return mapping.at(x); }

  friend bool operator==(Automorphism const& a, Automorphism const& b) {
    return a.mapping == b.mapping;
  }
};

inline Automorphism identity_automorphism(GroupTable const& t) {
  Automorphism a;
  a.mapping.resize(t.size());
  std::iota(a.mapping.begin(), a.mapping.end(), elem_t{0});
  a.inner_witness = GroupTable::identity();
  return a;
}

/// x -> t^-1 x t
inline Automorphism inner_automorphism(GroupTable const& t, elem_t x) {
  if (x >= t.size()) throw OutOfRange("element index out of range");
  Automorphism a;
  a.mapping.resize(t.size());
  for (elem_t y = 0; y < t.size(); ++y) a.mapping[y] = t.conjugate(y, x);
  a.inner_witness = x;
  return a;
}

/// Apply a first, then b.
inline Automorphism compose(Automorphism const& a, Automorphism const& b) {
  Automorphism c;
  c.mapping.resize(a.mapping.size());
  for (std::size_t x = 0; x < a.mapping.size(); ++x) c.mapping[x] = b.mapping[a.mapping[x]];
  return c;
}

inline Automorphism inverse(Automorphism const& a) {
  Automorphism c;
  c.mapping.resize(a.mapping.size());
  for (std::size_t x = 0; x < a.mapping.size(); ++x) c.mapping[a.mapping[x]] = static_cast<elem_t>(x);
  return c;
}

/// Checks the homomorphism law on every pair when |T| <= exhaustive_limit,
/// otherwise on `samples` random pairs.
inline bool verify_homomorphism(GroupTable const& t, Automorphism const& a,
                                std::size_t exhaustive_limit = 500, std::size_t samples = 100'000,
                                std::uint64_t seed = 1) {
  if (a.mapping.size() != t.size() || a.mapping[0] != 0) return false;
  std::vector<bool> hit(t.size(), false);
  for (elem_t y : a.mapping) {
    if (y >= t.size() || hit[y]) return false;
    hit[y] = true;
  }
  auto check = [&](elem_t x, elem_t y) {
    return a.mapping[t.multiply(x, y)] == t.multiply(a.mapping[x], a.mapping[y]);
  };
  if (t.size() <= exhaustive_limit) {
    for (elem_t x = 0; x < t.size(); ++x) {
      for (elem_t y = 0; y < t.size(); ++y) {
        if (!check(x, y)) return false;
      }
    }
    return true;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<elem_t> pick(0, static_cast<elem_t>(t.size() - 1));
  for (std::size_t k = 0; k < samples; ++k) {
    if (!check(pick(rng), pick(rng))) return false;
  }
  return true;
}

/// Some t with a(g) == t^-1 g t for every generator g of T, if a is inner.
inline std::optional<elem_t> find_inner_witness(GroupTable const& t, Automorphism const& a) {
  for (elem_t x = 0; x < t.size(); ++x) {
    bool ok = std::all_of(t.generators().begin(), t.generators().end(),
                          [&](elem_t g) { return t.conjugate(g, x) == a.mapping[g]; });
    if (ok) return x;
  }
  return std::nullopt;
}

inline bool same_inner_coset(GroupTable const& t, Automorphism const& a, Automorphism const& b) {
  return find_inner_witness(t, compose(inverse(a), b)).has_value();
}

struct AutomorphismGroup {
  std::uint64_t order = 1;
  std::uint64_t out_order = 1;
  /// Conjugations by the generators of T, followed by the non-identity outer
  /// coset representatives.
  std::vector<Automorphism> generators;
  /// One automorphism per coset of Inn(T); the identity comes first.
  std::vector<Automorphism> outer_representatives;
};

namespace detail {

// Extends generator images to a full map along the Cayley-graph spanning tree
// and checks it is a bijective homomorphism. `images[i]` is the image of the
// i-th representation generator.
inline std::optional<std::vector<elem_t>> extend_generator_images(GroupTable const& t,
                                                                  std::vector<elem_t> const& images) {
  std::vector<elem_t> phi(t.size());
  std::vector<bool> used(t.size(), false);
  phi[0] = 0;
  used[0] = true;
  for (elem_t x = 1; x < t.size(); ++x) {
    elem_t y = t.multiply(phi[t.parent(x)], images[t.label(x)]);
    if (used[y]) return std::nullopt;
    used[y] = true;
    phi[x] = y;
  }
  auto const& gens = t.generators();
  for (elem_t x = 0; x < t.size(); ++x) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (phi[t.multiply(x, gens[j])] != t.multiply(phi[x], images[j])) return std::nullopt;
    }
  }
  return phi;
}

inline AutomorphismGroup assemble_aut_group(GroupTable const& t, std::uint64_t order,
                                            std::vector<Automorphism> const& candidates) {
  AutomorphismGroup result;
  result.order = order;
  if (order % t.size() != 0) {
    throw InternalError("|Aut(T)| = " + std::to_string(order) + " is not divisible by |T|");
  }
  result.out_order = order / t.size();
  result.outer_representatives.push_back(identity_automorphism(t));
  for (auto const& a : candidates) {
    if (result.outer_representatives.size() == result.out_order) break;
    bool known = std::any_of(result.outer_representatives.begin(),
                             result.outer_representatives.end(),
                             [&](Automorphism const& r) { return same_inner_coset(t, r, a); });
    if (!known) {
      Automorphism rep = a;
      rep.inner_witness.reset();
      result.outer_representatives.push_back(std::move(rep));
    }
  }
  if (result.outer_representatives.size() != result.out_order) {
    throw InternalError("found " + std::to_string(result.outer_representatives.size()) +
                        " outer cosets, expected " + std::to_string(result.out_order));
  }
  for (elem_t g : t.generators()) result.generators.push_back(inner_automorphism(t, g));
  for (std::size_t i = 1; i < result.outer_representatives.size(); ++i) {
    result.generators.push_back(result.outer_representatives[i]);
  }
  return result;
}

}  // namespace detail

/// Aut(T) by backtracking over images of the generators of T.
///
/// Images must preserve element order and class size, and products of pairs
/// of generator images must have the same orders as the original products.
/// The image of the first generator is fixed to a class representative; every
/// automorphism is an inner automorphism times one of those, so
/// |Aut| = sum over candidate classes K of |K| * (extensions found for K).
inline AutomorphismGroup automorphism_group(GroupTable const& t,
                                            std::uint64_t cap = kDefaultAutomorphismCap,
                                            std::uint64_t search_limit = kDefaultAutSearchLimit) {
  if (t.size() > cap) throw CapExceeded("automorphism search on group of order " +
                                        std::to_string(t.size()), cap);
  auto const& gens = t.generators();
  // distinct non-identity generator positions; the others copy an earlier image
  std::vector<std::size_t> free_pos;
  std::vector<std::optional<std::size_t>> same_as(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i] == GroupTable::identity()) continue;
    for (std::size_t j = 0; j < i; ++j) {
      if (gens[j] == gens[i]) same_as[i] = j;
    }
    if (!same_as[i]) free_pos.push_back(i);
  }
  if (free_pos.empty()) {
    return detail::assemble_aut_group(t, 1, {});
  }

  auto matches = [&](elem_t x, elem_t y) {
    return t.element_order(x) == t.element_order(y) &&
           t.class_size(t.class_of(x)) == t.class_size(t.class_of(y));
  };
  std::vector<std::vector<elem_t>> candidates(free_pos.size());
  elem_t first = gens[free_pos[0]];
  for (auto const& cls : t.classes()) {
    if (matches(first, cls.representative_index)) candidates[0].push_back(cls.representative_index);
  }
  for (std::size_t k = 1; k < free_pos.size(); ++k) {
    for (elem_t y = 0; y < t.size(); ++y) {
      if (matches(gens[free_pos[k]], y)) candidates[k].push_back(y);
    }
  }

  std::uint64_t order = 0;
  std::uint64_t tried = 0;
  std::vector<Automorphism> found;
  std::vector<elem_t> chosen(free_pos.size());
  auto full_images = [&] {
    std::vector<elem_t> images(gens.size(), GroupTable::identity());
    for (std::size_t k = 0; k < free_pos.size(); ++k) images[free_pos[k]] = chosen[k];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (same_as[i]) images[i] = images[*same_as[i]];
    }
    return images;
  };
  auto search = [&](auto&& self, std::size_t depth) -> void {
    if (depth == free_pos.size()) {
      if (++tried > search_limit) throw CapExceeded("automorphism search space", search_limit);
      if (auto phi = detail::extend_generator_images(t, full_images())) {
        order += t.class_size(t.class_of(chosen[0]));
        found.push_back(Automorphism{std::move(*phi), std::nullopt});
      }
      return;
    }
    for (elem_t y : candidates[depth]) {
      bool ok = true;
      for (std::size_t k = 0; k < depth && ok; ++k) {
        elem_t orig = t.multiply(gens[free_pos[k]], gens[free_pos[depth]]);
        ok = t.element_order(t.multiply(chosen[k], y)) == t.element_order(orig);
      }
      if (!ok) continue;
      chosen[depth] = y;
      self(self, depth + 1);
    }
  };
  search(search, 0);
  for (auto& a : found) a.inner_witness = find_inner_witness(t, a);
  return detail::assemble_aut_group(t, order, found);
}

/// Aut(T) from permutations of the representation's domain that normalize T
/// and act by conjugation. |Aut| is |N| / |C_N(T)| where N is generated by T
/// and the given permutations.
inline AutomorphismGroup automorphism_group_from_permutations(
    GroupTable const& t, std::vector<Permutation> const& normalizing,
    std::uint64_t cap = kDefaultElementCap) {
  auto const& rep = t.representation();
  std::vector<Permutation> ngens = rep.generators();
  for (auto const& p : normalizing) {
    if (p.degree() != rep.degree()) throw DegreeMismatch(rep.degree(), p.degree());
    for (auto const& g : rep.generators()) {
      if (!t.find(conjugate(g, p))) {
        throw InvalidSubgroup("permutation " + p.to_cycle_string() + " does not normalize " +
                              t.name());
      }
    }
    ngens.push_back(p);
  }
  PermutationGroup n(rep.degree(), ngens);
  ElementEnumeration ne = enumerate_elements(n, cap);
  std::uint64_t centralizer_order = 0;
  for (auto const& x : ne.elements) {
    bool central = std::all_of(rep.generators().begin(), rep.generators().end(),
                               [&](Permutation const& g) { return conjugate(g, x) == g; });
    if (central) ++centralizer_order;
  }
  std::uint64_t order = ne.elements.size() / centralizer_order;
  // coset representatives of T in N; each induces an automorphism
  std::vector<Permutation> reps{Permutation::identity(rep.degree())};
  std::uint64_t index = ne.elements.size() / t.size();
  for (auto const& x : ne.elements) {
    if (reps.size() == index) break;
    bool known = std::any_of(reps.begin(), reps.end(),
                             [&](Permutation const& r) { return rep.contains(x * r.inverse()); });
    if (!known) reps.push_back(x);
  }
  std::vector<Automorphism> candidates;
  for (std::size_t i = 1; i < reps.size(); ++i) {
    Automorphism a;
    a.mapping.resize(t.size());
    for (elem_t y = 0; y < t.size(); ++y) a.mapping[y] = t.index_of(conjugate(t.element(y), reps[i]));
    candidates.push_back(std::move(a));
  }
  return detail::assemble_aut_group(t, order, candidates);
}

/// Orbits of the automorphisms on conjugacy classes, each sorted, ordered by
/// smallest class id.
inline std::vector<std::vector<class_id>> aut_orbits_on_classes(GroupTable const& t,
                                                                std::vector<Automorphism> const& auts) {
  std::vector<class_id> root(t.class_count());
  std::iota(root.begin(), root.end(), class_id{0});
  auto find = [&](class_id c) {
    while (root[c] != c) c = root[c] = root[root[c]];
    return c;
  };
  for (auto const& a : auts) {
    for (class_id c = 0; c < t.class_count(); ++c) {
      class_id d = t.class_of(a(t.classes()[c].representative_index));
      class_id rc = find(c), rd = find(d);
      if (rc != rd) root[std::max(rc, rd)] = std::min(rc, rd);
    }
  }
  std::vector<std::vector<class_id>> out;
  std::vector<int> slot(t.class_count(), -1);
  for (class_id c = 0; c < t.class_count(); ++c) {
    class_id r = find(c);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[r])].push_back(c);
  }
  return out;
}

inline std::vector<elem_t> apply_to_set(Automorphism const& a, std::vector<elem_t> const& set) {
  std::vector<elem_t> out;
  out.reserve(set.size());
  for (elem_t x : set) out.push_back(a(x));
  std::sort(out.begin(), out.end());
  return out;
}

/// True if for every outer representative tau there is t in T with A^tau == A^t.
inline bool aut_conjugates_are_inner(GroupTable const& t, Subgroup const& a,
                                     AutomorphismGroup const& aut) {
  // A^x only depends on the coset A x, so one x per coset is tried
  std::vector<elem_t> reps;
  std::vector<bool> covered(t.size(), false);
  for (elem_t x = 0; x < t.size(); ++x) {
    if (covered[x]) continue;
    reps.push_back(x);
    for (elem_t y : a.elements()) covered[t.multiply(y, x)] = true;
  }
  for (std::size_t r = 1; r < aut.outer_representatives.size(); ++r) {
    std::vector<elem_t> image = apply_to_set(aut.outer_representatives[r], a.elements());
    std::vector<bool> in_image(t.size(), false);
    for (elem_t y : image) in_image[y] = true;
    bool hit = false;
    for (std::size_t i = 0; i < reps.size() && !hit; ++i) {
      hit = std::all_of(a.generators().begin(), a.generators().end(),
                        [&](elem_t g) { return in_image[t.conjugate(g, reps[i])]; });
    }
    if (!hit) return false;
  }
  return true;
}

}  // namespace diagspread
