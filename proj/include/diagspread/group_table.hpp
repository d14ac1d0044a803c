#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "diagspread/conjugacy.hpp"
#include "diagspread/perm_group.hpp"

namespace diagspread {

using elem_t = std::uint32_t;    // element index inside a GroupTable
using class_id = std::uint32_t;  // conjugacy class index inside a GroupTable

/// A finite group with canonical element indices 0..|T|-1, backed by a
/// faithful permutation representation. Index 0 is the identity; the order of
/// the remaining indices is breadth-first from the identity, multiplying on
/// the right by the generators in their given order.
///
/// Products are formed by composing the underlying permutations and looking
/// the result up again; no |T| x |T| table is stored.
class GroupTable {
 public:
  GroupTable(std::string name, PermutationGroup rep, std::uint64_t cap = kDefaultElementCap)
      : name_(std::move(name)), rep_(std::move(rep)), enum_(enumerate_elements(rep_, cap)) {
    auto n = static_cast<elem_t>(enum_.elements.size());
    inverses_.resize(n);
    orders_.resize(n);
    for (elem_t i = 0; i < n; ++i) {
      inverses_[i] = enum_.index.at(enum_.elements[i].inverse());
      orders_[i] = enum_.elements[i].order();
    }
    for (auto const& g : rep_.generators()) generators_.push_back(enum_.index.at(g));
    classes_ = conjugacy_classes(enum_, rep_.generators());
    class_of_.assign(n, 0);
    for (class_id c = 0; c < classes_.size(); ++c) {
      for (elem_t x : classes_[c].members) class_of_[x] = c;
    }
    std::map<std::uint64_t, int> letters;
    for (auto const& cls : classes_) {
      std::uint64_t o = orders_[cls.representative_index];
      int k = letters[o]++;
      std::string suffix;
      do {
        suffix.insert(suffix.begin(), static_cast<char>('A' + k % 26));
        k = k / 26 - 1;
      } while (k >= 0);
      class_names_.push_back(std::to_string(o) + suffix);
    }
    exponent_ = 1;
    for (auto o : orders_) exponent_ = std::lcm(exponent_, o);
  }

  std::string const& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return enum_.elements.size(); }
  std::size_t degree() const noexcept { return rep_.degree(); }
  PermutationGroup const& representation() const noexcept { return rep_; }

  static constexpr elem_t identity() noexcept { return 0; }

  Permutation const& element(elem_t i) const { return enum_.elements.at(i); }
  std::vector<Permutation> const& elements() const noexcept { return enum_.elements; }

  std::optional<elem_t> find(Permutation const& p) const { return enum_.find(p); }

  elem_t index_of(Permutation const& p) const {
    auto i = enum_.find(p);
    if (!i) throw Error("permutation " + p.to_cycle_string() + " is not an element of " + name_);
    return *i;
  }

  elem_t multiply(elem_t i, elem_t j) const {
    return enum_.index.at(enum_.elements[i] * enum_.elements[j]);
  }

  elem_t inverse(elem_t i) const { return inverses_.at(i); }
  std::vector<elem_t> const& inverses() const noexcept { return inverses_; }

  /// t^-1 x t
  elem_t conjugate(elem_t x, elem_t t) const {
    return enum_.index.at(diagspread::conjugate(enum_.elements[x], enum_.elements[t]));
  }

  elem_t power(elem_t x, std::uint64_t k) const {
    return enum_.index.at(diagspread::power(enum_.elements[x], k));
  }

  std::uint64_t element_order(elem_t i) const { return orders_.at(i); }
  std::uint64_t exponent() const noexcept { return exponent_; }

  /// Indices of the representation's generators, in order.
  std::vector<elem_t> const& generators() const noexcept { return generators_; }

  // Spanning tree of the Cayley graph: element(i) == element(parent(i)) * generator label(i).
  elem_t parent(elem_t i) const { return enum_.parent.at(i); }
  std::uint32_t label(elem_t i) const { return enum_.label.at(i); }

  std::vector<ConjClass> const& classes() const noexcept { return classes_; }
  std::size_t class_count() const noexcept { return classes_.size(); }
  class_id class_of(elem_t i) const { return class_of_.at(i); }
  std::vector<class_id> const& class_map() const noexcept { return class_of_; }
  std::size_t class_size(class_id c) const { return classes_.at(c).size(); }
  std::uint64_t class_element_order(class_id c) const {
    return orders_[classes_.at(c).representative_index];
  }

  /// Element order followed by a letter in class-size order, e.g. "5A", "5B".
  /// These letters need not agree with Atlas conventions.
  std::string const& class_name(class_id c) const { return class_names_.at(c); }

  std::optional<class_id> find_class(std::string const& name) const {
    for (class_id c = 0; c < class_names_.size(); ++c) {
      if (class_names_[c] == name) return c;
    }
    return std::nullopt;
  }

 private:
  std::string name_;
  PermutationGroup rep_;
  ElementEnumeration enum_;
  std::vector<elem_t> inverses_;
  std::vector<std::uint64_t> orders_;
  std::vector<elem_t> generators_;
  std::vector<ConjClass> classes_;
  std::vector<class_id> class_of_;
  std::vector<std::string> class_names_;
  std::uint64_t exponent_ = 1;
};

inline GroupTable build_group_table(PermutationGroup rep, std::uint64_t cap = kDefaultElementCap,
                                    std::string name = "T") {
  return GroupTable(std::move(name), std::move(rep), cap);
}

inline elem_t multiply(GroupTable const& t, elem_t i, elem_t j) { return t.multiply(i, j); }

namespace detail {

// Closure of `gens` under right multiplication, breadth-first from the identity.
inline std::vector<elem_t> closure(GroupTable const& t, std::vector<elem_t> const& gens,
                                   std::uint64_t cap) {
  std::vector<bool> seen(t.size(), false);
  std::vector<elem_t> out{GroupTable::identity()};
  seen[0] = true;
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (elem_t g : gens) {
      elem_t y = t.multiply(out[k], g);
      if (seen[y]) continue;
      if (out.size() >= cap) throw CapExceeded("subgroup closure", cap);
      seen[y] = true;
      out.push_back(y);
    }
  }
  return out;
}

}  // namespace detail

/// A subgroup of a GroupTable, held as a sorted element-index set with a
/// membership bitmap and a (small) generating set.
class Subgroup {
 public:
  static Subgroup generated_by(GroupTable const& t, std::vector<elem_t> gens,
                               std::uint64_t cap = kDefaultElementCap) {
    for (elem_t g : gens) {
      if (g >= t.size()) throw InvalidSubgroup("generator index out of range");
    }
    gens.erase(std::remove(gens.begin(), gens.end(), GroupTable::identity()), gens.end());
    Subgroup s;
    s.generators_ = gens;
    s.elements_ = detail::closure(t, gens, cap);
    s.finish(t.size());
    return s;
  }

  /// Validates that `elements` is closed; a greedy generating set is extracted
  /// and its closure must reproduce the input exactly.
  static Subgroup from_elements(GroupTable const& t, std::vector<elem_t> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.empty() || elements.front() != GroupTable::identity()) {
      throw InvalidSubgroup("subset does not contain the identity");
    }
    if (elements.back() >= t.size()) throw InvalidSubgroup("element index out of range");
    std::vector<bool> in_set(t.size(), false);
    for (elem_t x : elements) in_set[x] = true;
    std::vector<elem_t> gens;
    std::vector<bool> in_closure(t.size(), false);
    in_closure[0] = true;
    std::size_t closure_size = 1;
    for (elem_t x : elements) {
      if (in_closure[x]) continue;
      gens.push_back(x);
      std::vector<elem_t> cl;
      try {
        cl = detail::closure(t, gens, elements.size() + 1);
      } catch (CapExceeded const&) {
        throw InvalidSubgroup("subset is not closed under multiplication");
      }
      for (elem_t y : cl) {
        if (!in_set[y]) {
          throw InvalidSubgroup("subset is not closed under multiplication");
        }
        in_closure[y] = true;
      }
      closure_size = cl.size();
    }
    if (closure_size != elements.size()) throw InternalError("closure bookkeeping");
    Subgroup s;
    s.generators_ = std::move(gens);
    s.elements_ = std::move(elements);
    s.finish(t.size());
    return s;
  }

  static Subgroup trivial(GroupTable const& t) { return generated_by(t, {}); }
  static Subgroup whole(GroupTable const& t) { return generated_by(t, t.generators()); }

  std::size_t order() const noexcept { return elements_.size(); }
  std::vector<elem_t> const& elements() const noexcept { return elements_; }
  std::vector<elem_t> const& generators() const noexcept { return generators_; }
  bool contains(elem_t x) const { return x < member_.size() && member_[x]; }
  std::vector<bool> const& membership() const noexcept { return member_; }

  friend bool operator==(Subgroup const& a, Subgroup const& b) { return a.elements_ == b.elements_; }

 private:
  void finish(std::size_t group_size) {
    std::sort(elements_.begin(), elements_.end());
    member_.assign(group_size, false);
    for (elem_t x : elements_) member_[x] = true;
  }

  std::vector<elem_t> elements_;
  std::vector<elem_t> generators_;
  std::vector<bool> member_;
};

/// Indices of the given permutations, which must all lie in T.
inline std::vector<elem_t> indices_of(GroupTable const& t, std::vector<Permutation> const& perms) {
  std::vector<elem_t> out;
  for (auto const& p : perms) {
    auto i = t.find(p);
    if (!i) throw InvalidSubgroup("generator " + p.to_cycle_string() + " is not in " + t.name());
    out.push_back(*i);
  }
  return out;
}

inline bool is_subgroup_of(Subgroup const& b, Subgroup const& a) {
  return std::all_of(b.generators().begin(), b.generators().end(),
                     [&](elem_t x) { return a.contains(x); });
}

/// B is normalized by A (B need not lie in A).
inline bool is_normalized_by(GroupTable const& t, Subgroup const& b, Subgroup const& a) {
  for (elem_t x : a.generators()) {
    for (elem_t y : b.generators()) {
      if (!b.contains(t.conjugate(y, x))) return false;
    }
  }
  return true;
}

inline bool is_normal_subgroup(GroupTable const& t, Subgroup const& b, Subgroup const& a) {
  return is_subgroup_of(b, a) && is_normalized_by(t, b, a);
}

/// Sorted element set of A^x = x^-1 A x.
inline std::vector<elem_t> conjugate_elements(GroupTable const& t, Subgroup const& a, elem_t x) {
  std::vector<elem_t> out;
  out.reserve(a.order());
  for (elem_t y : a.elements()) out.push_back(t.conjugate(y, x));
  std::sort(out.begin(), out.end());
  return out;
}

inline Subgroup conjugate_subgroup(GroupTable const& t, Subgroup const& a, elem_t x) {
  std::vector<elem_t> gens;
  for (elem_t g : a.generators()) gens.push_back(t.conjugate(g, x));
  return Subgroup::generated_by(t, std::move(gens));
}

inline std::size_t intersection_order(Subgroup const& a, Subgroup const& b) {
  auto const& small = a.order() <= b.order() ? a : b;
  auto const& large = a.order() <= b.order() ? b : a;
  return static_cast<std::size_t>(std::count_if(small.elements().begin(), small.elements().end(),
                                                [&](elem_t x) { return large.contains(x); }));
}

/// N_T(A) by a scan of all of T.
inline Subgroup normalizer(GroupTable const& t, Subgroup const& a) {
  std::vector<elem_t> members;
  for (elem_t x = 0; x < t.size(); ++x) {
    bool ok = std::all_of(a.generators().begin(), a.generators().end(),
                          [&](elem_t g) { return a.contains(t.conjugate(g, x)); });
    if (ok) members.push_back(x);
  }
  return Subgroup::from_elements(t, std::move(members));
}

inline Subgroup centralizer(GroupTable const& t, elem_t x) {
  std::vector<elem_t> members;
  for (elem_t y = 0; y < t.size(); ++y) {
    if (t.conjugate(x, y) == x) members.push_back(y);
  }
  return Subgroup::from_elements(t, std::move(members));
}

/// Smallest subgroup of A containing S that is normalized by A.
inline Subgroup normal_closure(GroupTable const& t, Subgroup const& s, Subgroup const& a) {
  std::vector<elem_t> gens = s.generators();
  Subgroup current = Subgroup::generated_by(t, gens);
  bool grew = true;
  while (grew) {
    grew = false;
    for (elem_t x : a.generators()) {
      for (std::size_t k = 0; k < gens.size(); ++k) {
        elem_t c = t.conjugate(gens[k], x);
        if (!current.contains(c)) {
          gens.push_back(c);
          current = Subgroup::generated_by(t, gens);
          grew = true;
        }
      }
    }
  }
  return current;
}

/// [A, A]: normal closure in A of the commutators of A's generators.
inline Subgroup derived_subgroup(GroupTable const& t, Subgroup const& a) {
  std::vector<elem_t> comms;
  auto const& g = a.generators();
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      // x^-1 y^-1 x y
      elem_t c = t.multiply(t.multiply(t.inverse(g[i]), t.inverse(g[j])), t.multiply(g[i], g[j]));
      if (c != GroupTable::identity()) comms.push_back(c);
    }
  }
  return normal_closure(t, Subgroup::generated_by(t, comms), a);
}

/// Elements of T whose permutation fixes `point`.
inline Subgroup point_stabilizer_subgroup(GroupTable const& t, point_t point) {
  if (point >= t.degree()) throw OutOfRange("point out of range");
  std::vector<elem_t> members;
  for (elem_t x = 0; x < t.size(); ++x) {
    if (t.element(x)[point] == point) members.push_back(x);
  }
  return Subgroup::from_elements(t, std::move(members));
}

/// Elements of T stabilizing `set` setwise.
inline Subgroup setwise_stabilizer_subgroup(GroupTable const& t, std::vector<point_t> set) {
  PointSet s = normalize_point_set(std::move(set), t.degree());
  std::vector<elem_t> members;
  for (elem_t x = 0; x < t.size(); ++x) {
    if (image_of_set(s, t.element(x)) == s) members.push_back(x);
  }
  return Subgroup::from_elements(t, std::move(members));
}

/// A Sylow p-subgroup: start from an element of largest p-power order (first
/// in class order), then repeatedly adjoin the first p-element (by index) that
/// normalizes the current subgroup without lying in it.
inline Subgroup sylow_subgroup(GroupTable const& t, std::uint64_t p) {
  if (p < 2) throw PreconditionViolation("p must be a prime");
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) throw PreconditionViolation(std::to_string(p) + " is not prime");
  }
  std::uint64_t p_part = 1;
  for (std::uint64_t n = t.size(); n % p == 0; n /= p) p_part *= p;
  auto is_p_power = [p](std::uint64_t n) {
    while (n % p == 0) n /= p;
    return n == 1;
  };
  if (p_part == 1) return Subgroup::trivial(t);
  elem_t best = GroupTable::identity();
  for (auto const& cls : t.classes()) {
    elem_t x = cls.representative_index;
    if (is_p_power(t.element_order(x)) && t.element_order(x) > t.element_order(best)) best = x;
  }
  std::vector<elem_t> gens{best};
  Subgroup current = Subgroup::generated_by(t, gens);
  while (current.order() < p_part) {
    bool extended = false;
    for (elem_t y = 1; y < t.size() && !extended; ++y) {
      if (!is_p_power(t.element_order(y)) || current.contains(y)) continue;
      bool normalizes = std::all_of(gens.begin(), gens.end(),
                                    [&](elem_t g) { return current.contains(t.conjugate(g, y)); });
      if (!normalizes) continue;
      gens.push_back(y);
      current = Subgroup::generated_by(t, gens);
      extended = true;
    }
    if (!extended) throw InternalError("Sylow construction stalled");
  }
  return current;
}

/// All normal subgroups of A, sorted by order then elements. Every normal
/// subgroup is a join of normal closures of A-classes.
inline std::vector<Subgroup> normal_subgroups(GroupTable const& t, Subgroup const& a) {
  std::vector<Subgroup> closures;
  std::vector<bool> done(t.size(), false);
  for (elem_t x : a.elements()) {
    if (done[x]) continue;
    // the A-class of x
    std::vector<elem_t> cls{x};
    done[x] = true;
    for (std::size_t k = 0; k < cls.size(); ++k) {
      for (elem_t g : a.generators()) {
        elem_t y = t.conjugate(cls[k], g);
        if (!done[y]) {
          done[y] = true;
          cls.push_back(y);
        }
      }
    }
    Subgroup n = Subgroup::generated_by(t, cls);
    if (std::find(closures.begin(), closures.end(), n) == closures.end()) closures.push_back(n);
  }
  std::vector<Subgroup> all = closures;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < closures.size(); ++j) {
      auto gens = all[i].generators();
      gens.insert(gens.end(), closures[j].generators().begin(), closures[j].generators().end());
      Subgroup join = Subgroup::generated_by(t, gens);
      if (std::find(all.begin(), all.end(), join) == all.end()) all.push_back(join);
    }
  }
  std::sort(all.begin(), all.end(), [](Subgroup const& x, Subgroup const& y) {
    if (x.order() != y.order()) return x.order() < y.order();
    return x.elements() < y.elements();
  });
  return all;
}

}  // namespace diagspread
