#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diagspread/automorphism.hpp"
#include "diagspread/group_table.hpp"
#include "diagspread/io.hpp"

namespace diagspread {

/// Environment variable naming a directory of group-spec JSON files
/// (<normalized name>.json) that take precedence over the built-in entries.
inline constexpr char const* kCatalogDirEnv = "DIAGSPREAD_CATALOG_DIR";

/// A named subgroup: explicit generators, or a recipe resolved against the
/// group (see resolve_subgroup).
struct SubgroupDef {
  std::vector<Permutation> generators;
  std::string recipe;
};

struct CatalogEntry {
  std::string name;
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  std::uint64_t known_order = 0;
  // Permutations normalizing the group whose conjugation action, together
  // with the inner automorphisms, gives all of Aut(T). Empty optional means
  // "search"; an empty list means Out(T) is trivial.
  std::optional<std::vector<Permutation>> aut_generators;
  std::uint64_t aut_search_cap = kDefaultAutomorphismCap;  // group order limit for the search
  std::map<std::string, SubgroupDef> subgroups;
  std::vector<std::pair<std::string, std::string>> triples;  // (A, B) labels
};

/// "PSL(2,7)" -> "psl27", "A7_3sets" -> "a73sets".
inline std::string normalize_group_name(std::string const& name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

namespace detail {

inline std::uint64_t half_factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f / 2;
}

// Generators of the alternating group on the points first, ..., first + m - 1:
// a 3-cycle together with an m-cycle (m odd) or an (m-1)-cycle (m even).
inline std::vector<std::vector<point_t>> alternating_cycles(point_t first, std::size_t m) {
  if (m < 3) return {};
  std::vector<std::vector<point_t>> out{{first, first + 1, first + 2}};
  if (m == 3) return out;
  std::vector<point_t> cycle;
  for (std::size_t i = (m % 2 == 1 ? 0 : 1); i < m; ++i) cycle.push_back(first + static_cast<point_t>(i));
  out.push_back(cycle);
  return out;
}

inline std::vector<Permutation> cycles_to_perms(std::size_t degree, std::vector<std::vector<point_t>> const& cycles) {
  std::vector<Permutation> out;
  for (auto const& c : cycles) out.push_back(Permutation::from_cycles(degree, {c}));
  return out;
}

inline std::vector<Permutation> parse_all(std::size_t degree, std::vector<std::string> const& texts) {
  std::vector<Permutation> out;
  for (auto const& s : texts) out.push_back(parse_cycle_string(s, degree));
  return out;
}

inline std::vector<std::vector<point_t>> three_subsets(std::size_t n) {
  std::vector<std::vector<point_t>> out;
  for (point_t a = 0; a < n; ++a)
    for (point_t b = a + 1; b < n; ++b)
      for (point_t c = b + 1; c < n; ++c) out.push_back({a, b, c});
  return out;
}

// The action of p on 3-subsets, numbered in lexicographic order.
inline Permutation induced_on_three_subsets(Permutation const& p, std::size_t n) {
  auto subsets = three_subsets(n);
  std::map<std::vector<point_t>, point_t> index;
  for (std::size_t i = 0; i < subsets.size(); ++i) index[subsets[i]] = static_cast<point_t>(i);
  std::vector<point_t> images;
  for (auto const& s : subsets) images.push_back(index.at(image_of_set(s, p)));
  return Permutation(std::move(images));
}

inline CatalogEntry alternating_entry(std::size_t n, bool on_three_subsets) {
  CatalogEntry e;
  std::size_t m = n - 3;
  auto natural = cycles_to_perms(n, alternating_cycles(0, n));
  auto big = "S3xS" + std::to_string(m);
  auto small = "A3xA" + std::to_string(m);
  std::vector<std::vector<point_t>> b_cycles{{0, 1, 2}};
  for (auto const& c : alternating_cycles(3, m)) b_cycles.push_back(c);
  auto b_gens = cycles_to_perms(n, b_cycles);
  Permutation transposition = Permutation::from_cycles(n, {{0, 1}});
  e.known_order = half_factorial(n);
  e.triples.emplace_back(big, small);
  if (!on_three_subsets) {
    e.name = "A" + std::to_string(n);
    e.degree = n;
    e.generators = natural;
    // conjugation by a transposition gives Aut(A_n) = S_n except for n = 6
    if (n != 6) e.aut_generators = std::vector<Permutation>{transposition};
    e.subgroups[big] = {{}, "setwise_stabilizer:0,1,2"};
    e.subgroups[small] = {b_gens, ""};
    return e;
  }
  e.name = "A" + std::to_string(n) + "_3sets";
  e.degree = n * (n - 1) * (n - 2) / 6;
  for (auto const& g : natural) e.generators.push_back(induced_on_three_subsets(g, n));
  if (n != 6) e.aut_generators = std::vector<Permutation>{induced_on_three_subsets(transposition, n)};
  e.subgroups[big] = {{}, "point_stabilizer:0"};  // point 0 is {0, 1, 2}
  std::vector<Permutation> induced;
  for (auto const& g : b_gens) induced.push_back(induced_on_three_subsets(g, n));
  e.subgroups[small] = {induced, ""};
  return e;
}

inline CatalogEntry psl2_entry(std::uint64_t q, std::uint64_t p, std::vector<std::string> const& gens,
                               std::vector<std::string> const& aut) {
  CatalogEntry e;
  e.name = "PSL(2," + std::to_string(q) + ")";
  e.degree = q + 1;
  e.generators = parse_all(e.degree, gens);
  e.known_order = q * (q * q - 1) / (q % 2 == 1 ? 2 : 1);
  e.aut_generators = parse_all(e.degree, aut);
  std::string ps = std::to_string(p);
  e.subgroups["U"] = {{}, "sylow:" + ps};
  e.subgroups["borel"] = {{}, "sylow_normalizer:" + ps};
  e.subgroups["sylow" + ps + "_normalizer"] = {{}, "sylow_normalizer:" + ps};
  e.triples.emplace_back("borel", "U");
  return e;
}

inline std::vector<CatalogEntry> builtin_catalog() {
  std::vector<CatalogEntry> out;
  for (std::size_t n = 5; n <= 9; ++n) {
    out.push_back(alternating_entry(n, false));
    if (n == 5) {
      auto& a5 = out.back();
      a5.subgroups["A4"] = {parse_all(5, {"(0 1 2)", "(0 1)(2 3)"}), ""};
      a5.subgroups["V4"] = {parse_all(5, {"(0 1)(2 3)", "(0 2)(1 3)"}), ""};
      a5.subgroups["C5"] = {parse_all(5, {"(0 1 2 3 4)"}), ""};
      a5.subgroups["D10"] = {parse_all(5, {"(0 1 2 3 4)", "(1 4)(2 3)"}), ""};
      a5.subgroups["C3"] = {parse_all(5, {"(0 1 2)"}), ""};
      a5.triples.emplace_back("A4", "V4");
      a5.triples.emplace_back("D10", "C5");
      a5.triples.emplace_back("C5", "1");
    }
    out.push_back(alternating_entry(n, true));
  }
  out.push_back(psl2_entry(7, 7, {"(0 1 2 3 4 5 6)", "(0 7)(1 6)(2 3)(4 5)"}, {"(1 3 2 6 4 5)"}));
  out.back().subgroups["C7"] = {{}, "sylow:7"};
  out.push_back(psl2_entry(8, 2, {"(0 2 6 5 3 4 1)", "(0 8)(2 5)(3 6)(4 7)"}, {"(2 4 6)(3 5 7)"}));
  out.push_back(psl2_entry(11, 11, {"(0 1 2 3 4 5 6 7 8 9 10)", "(0 11)(1 10)(2 5)(3 7)(4 8)(6 9)"},
                           {"(1 2 4 8 5 10 9 7 3 6)"}));
  out.push_back(psl2_entry(13, 13, {"(0 1 2 3 4 5 6 7 8 9 10 11 12)", "(0 13)(1 12)(2 6)(3 4)(7 11)(9 10)"},
                           {"(1 2 4 8 3 6 12 11 9 5 10 7)"}));
  {
    CatalogEntry e;
    e.name = "PSL(3,2)";
    e.degree = 7;
    e.generators = parse_all(7, {"(0 1 2 3 4 5 6)", "(2 4)(5 6)"});
    e.known_order = 168;
    // the graph automorphism swaps points and lines, so it is not induced by
    // a permutation of the 7 points; Aut(T) comes from the search
    e.subgroups["S4"] = {{}, "point_stabilizer:0"};
    e.subgroups["S4_line"] = {{}, "setwise_stabilizer:0,1,3"};
    e.subgroups["A4"] = {{}, "derived:S4"};
    e.subgroups["U"] = {{}, "sylow:2"};
    e.triples.emplace_back("S4", "A4");
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "M11";
    e.degree = 11;
    e.generators = parse_all(11, {"(0 1 2 3 4 5 6 7 8 9 10)", "(2 6 10 7)(3 9 4 5)"});
    e.known_order = 7920;
    e.aut_generators = std::vector<Permutation>{};  // Out(M11) = 1
    e.subgroups["M10.2"] = {{}, "point_stabilizer:0"};
    e.subgroups["A6"] = {{}, "derived:M10.2"};
    e.triples.emplace_back("M10.2", "A6");
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "M12";
    e.degree = 12;
    e.generators = parse_all(12, {"(0 10 11)(1 5 9)(2 7 4)(3 8 6)", "(2 6 10 7)(3 9 4 5)"});
    e.known_order = 95040;
    // the outer automorphism of M12 is not realized on 12 points, so the
    // search has to run on all 95040 elements
    e.aut_search_cap = 95040;
    e.subgroups["2xS5"] = {parse_all(12, {"(2 3)(5 7)(8 10)(9 11)", "(2 9 3 11)(5 8 7 10)",
                                          "(1 5 7 8)(3 4 9 11)", "(0 1)(2 5)(3 7)(4 6)(8 11)(9 10)"}),
                           ""};
    e.subgroups["S5"] = {parse_all(12, {"(2 3)(5 7)(8 10)(9 11)", "(1 5 10 8 7)(2 3 11 4 9)",
                                        "(0 1)(2 5)(3 7)(4 6)(8 11)(9 10)"}),
                         ""};
    e.triples.emplace_back("2xS5", "S5");
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace detail

inline CatalogEntry entry_from_spec(GroupSpec spec) {
  CatalogEntry e;
  e.name = std::move(spec.name);
  e.degree = spec.degree;
  e.generators = std::move(spec.generators);
  e.known_order = spec.known_order.value_or(0);
  e.aut_generators = std::move(spec.aut_generators);
  for (auto& [label, gens] : spec.subgroups) e.subgroups[label] = {std::move(gens), ""};
  return e;
}

namespace detail {

inline std::optional<CatalogEntry> entry_from_directory(std::string const& name) {
  char const* dir = std::getenv(kCatalogDirEnv);
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  std::filesystem::path path = std::filesystem::path(dir) / (normalize_group_name(name) + ".json");
  if (!std::filesystem::exists(path)) return std::nullopt;
  std::ifstream in(path);
  json j;
  try {
    j = json::parse(in);
  } catch (json::exception const& ex) {
    throw Error("cannot parse " + path.string() + ": " + ex.what());
  }
  return entry_from_spec(group_spec_from_json(j));
}

}  // namespace detail

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (auto const& e : detail::builtin_catalog()) out.push_back(e.name);
  return out;
}

/// Looks the name up (directory first, then built-ins) and checks the order
/// of the generated group against the recorded one.
inline CatalogEntry catalog_load(std::string const& name) {
  std::optional<CatalogEntry> found = detail::entry_from_directory(name);
  if (!found) {
    std::string key = normalize_group_name(name);
    for (auto& e : detail::builtin_catalog()) {
      if (normalize_group_name(e.name) == key) {
        found = std::move(e);
        break;
      }
    }
  }
  if (!found) throw Error("unknown group \"" + name + "\"");
  PermutationGroup g(found->degree, found->generators);
  if (found->known_order != 0 && g.order() != found->known_order) {
    throw Error("catalog entry " + found->name + " generates a group of order " + std::to_string(g.order()) +
                ", expected " + std::to_string(found->known_order));
  }
  for (auto const& [label, def] : found->subgroups) {
    for (auto const& s : def.generators) {
      if (!g.contains(s)) throw Error("generator of subgroup " + label + " is not in " + found->name);
    }
  }
  return *found;
}

inline PermutationGroup permutation_group(CatalogEntry const& e) { return PermutationGroup(e.degree, e.generators); }

inline GroupTable group_table(CatalogEntry const& e, std::uint64_t cap = kDefaultElementCap) {
  return build_group_table(permutation_group(e), cap, e.name);
}

/// Resolves a subgroup label of the entry, or one of the recipes
///   1 | T | sylow:p | sylow_normalizer:p | normalizer:<label> |
///   point_stabilizer:k | setwise_stabilizer:a,b,... | derived:<label> |
///   gens:<cycles>;<cycles>;...
inline Subgroup resolve_subgroup(GroupTable const& t, CatalogEntry const& e, std::string const& spec,
                                 int depth = 0) {
  if (depth > 8) throw Error("subgroup definition of " + spec + " is circular");
  if (spec == "1" || spec == "trivial") return Subgroup::trivial(t);
  if (spec == "T") return Subgroup::whole(t);
  auto it = e.subgroups.find(spec);
  if (it != e.subgroups.end()) {
    if (!it->second.recipe.empty()) return resolve_subgroup(t, e, it->second.recipe, depth + 1);
    return Subgroup::generated_by(t, indices_of(t, it->second.generators));
  }
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error("unknown subgroup \"" + spec + "\" of " + e.name);
  std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
  auto number = [&](std::string const& s) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &pos);
    } catch (std::exception const&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw Error("expected a number in \"" + spec + "\"");
    return v;
  };
  if (kind == "sylow") return sylow_subgroup(t, number(arg));
  if (kind == "sylow_normalizer") return normalizer(t, sylow_subgroup(t, number(arg)));
  if (kind == "normalizer") return normalizer(t, resolve_subgroup(t, e, arg, depth + 1));
  if (kind == "derived") return derived_subgroup(t, resolve_subgroup(t, e, arg, depth + 1));
  if (kind == "point_stabilizer") return point_stabilizer_subgroup(t, static_cast<point_t>(number(arg)));
  if (kind == "setwise_stabilizer") {
    std::vector<point_t> pts;
    std::size_t start = 0;
    while (start <= arg.size()) {
      std::size_t comma = arg.find(',', start);
      if (comma == std::string::npos) comma = arg.size();
      pts.push_back(static_cast<point_t>(number(arg.substr(start, comma - start))));
      start = comma + 1;
    }
    return setwise_stabilizer_subgroup(t, pts);
  }
  if (kind == "gens") {
    std::vector<Permutation> gens;
    std::size_t start = 0;
    while (start <= arg.size()) {
      std::size_t semi = arg.find(';', start);
      if (semi == std::string::npos) semi = arg.size();
      gens.push_back(parse_cycle_string(arg.substr(start, semi - start), t.degree()));
      start = semi + 1;
    }
    for (auto const& g : gens) {
      if (!t.find(g)) throw InvalidSubgroup("generator " + g.to_cycle_string() + " is not in " + t.name());
    }
    return Subgroup::generated_by(t, indices_of(t, gens));
  }
  throw Error("unknown subgroup recipe \"" + kind + "\"");
}

/// Aut(T) from the entry's normalizing permutations if it has them, otherwise
/// by search. The search cap is the larger of `cap` and the entry's own.
inline AutomorphismGroup catalog_automorphisms(GroupTable const& t, CatalogEntry const& e,
                                               std::uint64_t cap = kDefaultAutomorphismCap) {
  if (e.aut_generators) return automorphism_group_from_permutations(t, *e.aut_generators);
  return automorphism_group(t, std::max(cap, e.aut_search_cap));
}

}  // namespace diagspread
