#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "diagspread/character_table.hpp"
#include "diagspread/diagonal.hpp"
#include "diagspread/witness.hpp"

namespace diagspread {

/// #{(x, y) in C1 x C2 : x y = h}
inline std::uint64_t class_mult_coefficient(GroupTable const& t, class_id c1, class_id c2, elem_t h) {
  if (c1 >= t.class_count() || c2 >= t.class_count()) throw OutOfRange("class id out of range");
  if (h >= t.size()) throw OutOfRange("element index out of range");
  std::uint64_t count = 0;
  for (elem_t x : t.classes()[c1].members) {
    if (t.class_of(t.multiply(t.inverse(x), h)) == c2) ++count;
  }
  return count;
}

/// A class triple (r, s1, s2) passing the character test: |s1^T| = |s2^T| and
/// every irreducible character separating s1 from s2 vanishes on the whole
/// Aut(T)-orbit of r.
struct CharWitnessSpec {
  class_id r = 0;
  class_id s1 = 0;
  class_id s2 = 0;
  bool sizes_equal = false;
  bool vanishing = false;
  std::vector<std::size_t> separating_characters;  // rows of the table
};

enum class CharTestFailure { SizesDiffer, NonVanishing };

inline char const* to_string(CharTestFailure f) {
  return f == CharTestFailure::SizesDiffer ? "class-sizes-differ" : "character-does-not-vanish";
}

struct CharTestRefutation {
  CharTestFailure failure;
  std::string message;
  std::optional<std::size_t> character;  // NonVanishing: row index
  std::optional<class_id> on_class;      // NonVanishing: class in the Aut-orbit of r
};

using CharTestResult = std::variant<CharWitnessSpec, CharTestRefutation>;

/// `aut_class_orbits` partitions the classes into orbits of Aut(T).
inline CharTestResult lemma25_check(CharacterTable const& table,
                                    std::vector<std::vector<class_id>> const& aut_class_orbits, class_id r,
                                    class_id s1, class_id s2) {
  std::size_t k = table.classes.size();
  if (r >= k || s1 >= k || s2 >= k) throw OutOfRange("class id out of range");
  if (r == s1 || r == s2 || s1 == s2) throw PreconditionViolation("classes r, s1, s2 must be distinct");
  if (table.classes[s1].size != table.classes[s2].size) {
    return CharTestRefutation{CharTestFailure::SizesDiffer,
                              table.classes[s1].name + " and " + table.classes[s2].name + " have sizes " +
                                  std::to_string(table.classes[s1].size) + " and " +
                                  std::to_string(table.classes[s2].size),
                              std::nullopt, std::nullopt};
  }
  std::vector<class_id> const* r_orbit = nullptr;
  for (auto const& o : aut_class_orbits) {
    if (std::find(o.begin(), o.end(), r) != o.end()) r_orbit = &o;
  }
  if (r_orbit == nullptr) throw PreconditionViolation("class partition does not contain r");
  CharWitnessSpec spec{r, s1, s2, true, true, {}};
  for (std::size_t chi = 0; chi < table.size(); ++chi) {
    if (table.values[chi][s1] == table.values[chi][s2]) continue;
    spec.separating_characters.push_back(chi);
    for (class_id c : *r_orbit) {
      if (!table.values[chi][c].is_zero()) {
        return CharTestRefutation{CharTestFailure::NonVanishing,
                                  "character " + std::to_string(chi) + " separates " + table.classes[s1].name +
                                      " from " + table.classes[s2].name + " but is " +
                                      table.values[chi][c].to_string() + " on " + table.classes[c].name,
                                  chi, c};
      }
    }
  }
  return spec;
}

/// Every passing triple, with s1 < s2, ordered by (r, s1, s2).
inline std::vector<CharWitnessSpec> lemma25_search(CharacterTable const& table,
                                                   std::vector<std::vector<class_id>> const& aut_class_orbits) {
  std::vector<CharWitnessSpec> out;
  auto k = static_cast<class_id>(table.classes.size());
  for (class_id r = 0; r < k; ++r) {
    for (class_id s1 = 0; s1 < k; ++s1) {
      for (class_id s2 = s1 + 1; s2 < k; ++s2) {
        if (r == s1 || r == s2 || table.classes[s1].size != table.classes[s2].size) continue;
        auto res = lemma25_check(table, aut_class_orbits, r, s1, s2);
        if (auto* spec = std::get_if<CharWitnessSpec>(&res)) out.push_back(std::move(*spec));
      }
    }
  }
  return out;
}

inline PointSet class_as_point_set(GroupTable const& t, class_id c) {
  return as_point_set(t.classes().at(c).members);
}

/// The multiset Omega + s1^T - s2^T on Omega = T.
inline Multiset char_witness_multiset(GroupTable const& t, class_id s1, class_id s2) {
  return Multiset::constant(t.size(), 1)
      .plus(Multiset::indicator(t.size(), class_as_point_set(t, s1)))
      .plus(Multiset::indicator(t.size(), class_as_point_set(t, s2)), -1);
}

/// Verifies (r^T, Omega + s1^T - s2^T) on W(T) by full set-orbit enumeration.
/// A verified witness must have constant |r^T|; anything else is a bug.
inline WitnessResult char_witness_validate(GroupTable const& t, DiagonalGroup const& w, CharWitnessSpec const& spec,
                                           std::uint64_t cap = kDefaultSetOrbitCap) {
  if (w.group.degree() != t.size()) throw DegreeMismatch(t.size(), w.group.degree());
  PointSet x = class_as_point_set(t, spec.r);
  WitnessResult res = verify_witness(w.group, x, char_witness_multiset(t, spec.s1, spec.s2), cap);
  if (auto const* wit = std::get_if<Witness>(&res)) {
    if (wit->constant != static_cast<std::int64_t>(x.size())) {
      throw InternalError("character witness has constant " + std::to_string(wit->constant) + ", expected " +
                          std::to_string(x.size()));
    }
  }
  return res;
}

}  // namespace diagspread
