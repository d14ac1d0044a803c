#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"  // nlohmann::json, vendored

#include "diagspread/character_table.hpp"
#include "diagspread/perm.hpp"
#include "diagspread/witness.hpp"

namespace diagspread {

using json = nlohmann::json;

/// Parses "(0 1 2)(3 4)" (commas also accepted as separators); "()" is the identity.
inline Permutation parse_cycle_string(std::string const& text, std::size_t degree) {
  std::vector<std::vector<point_t>> cycles;
  std::vector<point_t>* current = nullptr;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '(') {
      if (current) throw InvalidPermutation("nested '(' in \"" + text + "\"");
      cycles.emplace_back();
      current = &cycles.back();
      ++i;
    } else if (c == ')') {
      if (!current) throw InvalidPermutation("unbalanced ')' in \"" + text + "\"");
      current = nullptr;
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      if (!current) throw InvalidPermutation("point outside a cycle in \"" + text + "\"");
      std::size_t end = i;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      current->push_back(static_cast<point_t>(std::stoul(text.substr(i, end - i))));
      i = end;
    } else if (c == ' ' || c == ',' || c == '\t') {
      ++i;
    } else {
      throw InvalidPermutation(std::string("unexpected character '") + c + "' in \"" + text + "\"");
    }
  }
  if (current) throw InvalidPermutation("unterminated cycle in \"" + text + "\"");
  return Permutation::from_cycles(degree, cycles);
}

/// Accepts an image array [p(0), ..., p(n-1)], a list of cycles [[0,1,2],[3,4]],
/// or a cycle string "(0 1 2)(3 4)".
inline Permutation permutation_from_json(json const& j, std::size_t degree) {
  if (j.is_string()) return parse_cycle_string(j.get<std::string>(), degree);
  if (!j.is_array()) throw InvalidPermutation("permutation must be an array or a cycle string");
  bool nested = !j.empty() && j.front().is_array();
  if (nested) {
    std::vector<std::vector<point_t>> cycles;
    for (auto const& c : j) {
      if (!c.is_array()) throw InvalidPermutation("mixed cycle and image notation");
      cycles.push_back(c.get<std::vector<point_t>>());
    }
    return Permutation::from_cycles(degree, cycles);
  }
  auto images = j.get<std::vector<std::int64_t>>();
  if (images.size() != degree) throw DegreeMismatch(degree, images.size());
  std::vector<point_t> pts;
  for (auto v : images) {
    if (v < 0) throw InvalidPermutation("negative point in image array");
    pts.push_back(static_cast<point_t>(v));
  }
  return Permutation(std::move(pts));
}

inline json permutation_to_json(Permutation const& p) {
  return json(std::vector<point_t>(p.images().begin(), p.images().end()));
}

inline std::vector<Permutation> permutations_from_json(json const& j, std::size_t degree) {
  if (!j.is_array()) throw InvalidPermutation("expected a list of permutations");
  std::vector<Permutation> out;
  for (auto const& g : j) out.push_back(permutation_from_json(g, degree));
  return out;
}

/// A group given by generators, as read from a group-spec file.
struct GroupSpec {
  std::string name;
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  std::optional<std::vector<Permutation>> aut_generators;
  std::optional<std::uint64_t> known_order;
  std::map<std::string, std::vector<Permutation>> subgroups;
};

inline GroupSpec group_spec_from_json(json const& j) {
  if (!j.is_object()) throw Error("group spec must be a JSON object");
  GroupSpec s;
  s.name = j.value("name", std::string("G"));
  if (!j.contains("degree") || !j["degree"].is_number_unsigned()) {
    throw Error("group spec needs a non-negative integer \"degree\"");
  }
  s.degree = j["degree"].get<std::size_t>();
  if (!j.contains("generators")) throw Error("group spec needs \"generators\"");
  s.generators = permutations_from_json(j["generators"], s.degree);
  if (j.contains("aut_generators")) s.aut_generators = permutations_from_json(j["aut_generators"], s.degree);
  if (j.contains("order")) s.known_order = j["order"].get<std::uint64_t>();
  if (j.contains("subgroups")) {
    for (auto const& [label, gens] : j["subgroups"].items()) {
      s.subgroups[label] = permutations_from_json(gens, s.degree);
    }
  }
  return s;
}

inline json group_spec_to_json(GroupSpec const& s) {
  json j;
  j["name"] = s.name;
  j["degree"] = s.degree;
  j["generators"] = json::array();
  for (auto const& g : s.generators) j["generators"].push_back(permutation_to_json(g));
  if (s.aut_generators) {
    j["aut_generators"] = json::array();
    for (auto const& g : *s.aut_generators) j["aut_generators"].push_back(permutation_to_json(g));
  }
  if (s.known_order) j["order"] = *s.known_order;
  if (!s.subgroups.empty()) {
    j["subgroups"] = json::object();
    for (auto const& [label, gens] : s.subgroups) {
      json list = json::array();
      for (auto const& g : gens) list.push_back(permutation_to_json(g));
      j["subgroups"][label] = list;
    }
  }
  return j;
}

inline PointSet point_set_from_json(json const& j, std::size_t degree) {
  if (!j.is_array()) throw Error("point set must be an array");
  return normalize_point_set(j.get<std::vector<point_t>>(), degree);
}

/// Either {"point": multiplicity, ...} or a full multiplicity array.
inline Multiset multiset_from_json(json const& j, std::size_t degree) {
  std::vector<std::int64_t> mult(degree, 0);
  if (j.is_array()) {
    if (j.size() != degree) throw DegreeMismatch(degree, j.size());
    mult = j.get<std::vector<std::int64_t>>();
  } else if (j.is_object()) {
    for (auto const& [key, value] : j.items()) {
      std::size_t pos = 0;
      unsigned long p = 0;
      try {
        p = std::stoul(key, &pos);
      } catch (std::exception const&) {
        throw Error("multiset key \"" + key + "\" is not a point");
      }
      if (pos != key.size()) throw Error("multiset key \"" + key + "\" is not a point");
      if (p >= degree) throw OutOfRange("multiset point " + key + " out of range");
      mult[p] = value.get<std::int64_t>();
    }
  } else {
    throw Error("multiset must be an object or an array");
  }
  return Multiset(std::move(mult));
}

/// Sparse form: only points with non-zero multiplicity.
inline json multiset_to_json(Multiset const& m) {
  json j = json::object();
  auto const& mult = m.multiplicities();
  for (std::size_t p = 0; p < mult.size(); ++p) {
    if (mult[p] != 0) j[std::to_string(p)] = mult[p];
  }
  return j;
}

inline json witness_to_json(Witness const& w, std::string const& group) {
  return json{{"set", w.set},
              {"multiset", multiset_to_json(w.multiset)},
              {"constant", w.constant},
              {"cardinality", w.multiset.cardinality()},
              {"images_checked", w.images_checked},
              {"group", group},
              {"verified", true}};
}

inline json refutation_to_json(Refutation const& r, PointSet const& x, Multiset const& j,
                               std::string const& group) {
  json counterexample = json::object();
  if (!r.image.empty()) counterexample["image"] = r.image;
  if (r.element) counterexample["element"] = permutation_to_json(*r.element);
  if (r.violation == Violation::NonConstantSum || r.violation == Violation::CardinalityNotDividing) {
    counterexample["value"] = r.value;
    counterexample["expected"] = r.expected;
  }
  return json{{"set", x},
              {"multiset", multiset_to_json(j)},
              {"group", group},
              {"verified", false},
              {"violation", to_string(r.violation)},
              {"message", r.message},
              {"counterexample", counterexample}};
}

inline json cyclotomic_to_json(CyclotomicValue const& v) {
  return json{{"order", v.order()}, {"coeffs", v.coeffs()}};
}

inline CyclotomicValue cyclotomic_from_json(json const& j) {
  return CyclotomicValue::from_powers(j.at("order").get<std::uint32_t>(),
                                      j.at("coeffs").get<std::vector<std::int64_t>>());
}

inline json character_table_to_json(CharacterTable const& t) {
  json classes = json::array();
  for (auto const& c : t.classes) {
    classes.push_back({{"name", c.name}, {"order", c.element_order}, {"size", c.size}});
  }
  json values = json::array();
  for (auto const& row : t.values) {
    json r = json::array();
    for (auto const& v : row) r.push_back(cyclotomic_to_json(v));
    values.push_back(r);
  }
  return json{{"group", t.group_name}, {"group_order", t.group_order}, {"prime", t.prime},
              {"classes", classes},    {"degrees", t.degrees},         {"values", values}};
}

}  // namespace diagspread
