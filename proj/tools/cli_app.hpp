#pragma once

// Command-line front end. run_cli() is kept separate from main() so the test
// suite can drive it in-process.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "diagspread.hpp"

namespace diagspread::cli {

enum ExitCode : int { kVerified = 0, kRefuted = 1, kUsageOrError = 2 };

struct Options {
  std::string group;
  std::string file;
  std::string a = "";
  std::string b = "";
  std::string scope = "T";
  std::string action = "natural";
  std::string set;
  std::string multiset;
  std::string witness_file;
  std::string r, s1, s2;
  std::uint32_t omega = 0;
  bool json = false;
  bool validate = false;
  std::uint64_t cap = kDefaultElementCap;
};

/// What a command produced, before it is rendered.
struct Outcome {
  std::string verdict;  // verified | refuted | error
  json inputs = json::object();
  json certificate = json::object();
  std::vector<std::string> lines;  // human-readable summary
};

inline json perm_json(Permutation const& p) {
  return json{{"images", permutation_to_json(p)}, {"cycles", p.to_cycle_string()}};
}

inline std::vector<point_t> parse_points(std::string const& text) {
  std::vector<point_t> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    auto first = token.find_first_not_of(" \t[]");
    auto last = token.find_last_not_of(" \t[]");
    if (first == std::string::npos) continue;
    token = token.substr(first, last - first + 1);
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(token, &pos);
    } catch (std::exception const&) {
      pos = 0;
    }
    if (pos == 0 || pos != token.size()) throw Error("\"" + token + "\" is not a point");
    out.push_back(static_cast<point_t>(v));
  }
  return out;
}

/// Loaded group with lazily computed derived data.
class Context {
 public:
  explicit Context(Options const& o) : opts_(o) {
    if (!o.file.empty()) {
      std::ifstream in(o.file);
      if (!in) throw Error("cannot open " + o.file);
      json j;
      try {
        j = json::parse(in);
      } catch (json::exception const& ex) {
        throw Error("cannot parse " + o.file + ": " + ex.what());
      }
      entry_ = entry_from_spec(group_spec_from_json(j));
      PermutationGroup g = permutation_group(entry_);
      if (entry_.known_order != 0 && g.order() != entry_.known_order) {
        throw Error("group in " + o.file + " has order " + std::to_string(g.order()) + ", file says " +
                    std::to_string(entry_.known_order));
      }
    } else if (!o.group.empty()) {
      entry_ = catalog_load(o.group);
    } else {
      throw Error("one of --group or --file is required");
    }
  }

  CatalogEntry const& entry() const { return entry_; }

  GroupTable const& table() {
    if (!table_) table_.emplace(group_table(entry_, opts_.cap));
    return *table_;
  }

  AutomorphismGroup const& aut() {
    if (!aut_) aut_.emplace(catalog_automorphisms(table(), entry_));
    return *aut_;
  }

  DiagonalGroup const& diagonal() {
    if (!diagonal_) diagonal_.emplace(build_diagonal_group(table(), aut()));
    return *diagonal_;
  }

  Subgroup subgroup(std::string const& label) {
    if (label.empty()) throw Error("subgroup label missing");
    return resolve_subgroup(table(), entry_, label);
  }

  class_id class_named(std::string const& name) {
    auto c = table().find_class(name);
    if (!c) throw Error("no class named \"" + name + "\" in " + entry_.name);
    return *c;
  }

 private:
  Options const& opts_;
  CatalogEntry entry_;
  std::optional<GroupTable> table_;
  std::optional<AutomorphismGroup> aut_;
  std::optional<DiagonalGroup> diagonal_;
};

inline PermutationGroup as_permutation_group(GroupTable const& t, Subgroup const& s) {
  std::vector<Permutation> gens;
  for (elem_t g : s.generators()) gens.push_back(t.element(g));
  return PermutationGroup(t.degree(), std::move(gens));
}

inline json subgroup_json(GroupTable const& t, std::string const& label, Subgroup const& s) {
  json gens = json::array();
  for (elem_t g : s.generators()) gens.push_back(t.element(g).to_cycle_string());
  return json{{"label", label}, {"order", s.order()}, {"generators", gens}};
}

inline json ab_failure_json(AbLemmaFailure const& f) {
  json j{{"reason", to_string(f.reason)}, {"message", f.message}};
  if (!f.offending_orbit.empty()) j["offending_orbit"] = f.offending_orbit;
  if (f.a_element) j["a_element"] = perm_json(*f.a_element);
  if (f.b_element) j["b_element"] = perm_json(*f.b_element);
  if (f.refutation) j["violation"] = to_string(f.refutation->violation);
  return j;
}

inline json ab_witness_json(AbLemmaWitness const& w, std::string const& group) {
  json j = witness_to_json(w.witness, group);
  j["k"] = w.k;
  j["delta_size"] = w.delta_size;
  j["a_orbits_on_delta"] = w.a_orbits_on_delta;
  return j;
}

// ---- commands -------------------------------------------------------------

inline Outcome group_info(Context& ctx) {
  Outcome out;
  auto const& e = ctx.entry();
  PermutationGroup g = permutation_group(e);
  json subs = json::array();
  for (auto const& [label, def] : e.subgroups) {
    Subgroup s = ctx.subgroup(label);
    subs.push_back(subgroup_json(ctx.table(), label, s));
  }
  json gens = json::array();
  for (auto const& p : e.generators) gens.push_back(p.to_cycle_string());
  out.certificate = {{"name", e.name},          {"degree", e.degree},
                     {"order", g.order()},      {"transitive", is_transitive(g)},
                     {"generators", gens},      {"subgroups", subs}};
  out.verdict = "verified";
  out.lines.push_back(e.name + ": degree " + std::to_string(e.degree) + ", order " + std::to_string(g.order()));
  for (auto const& s : subs) {
    out.lines.push_back("  subgroup " + s["label"].get<std::string>() + " of order " +
                        std::to_string(s["order"].get<std::size_t>()));
  }
  return out;
}

inline Outcome group_classes(Context& ctx) {
  Outcome out;
  auto const& t = ctx.table();
  json classes = json::array();
  for (class_id c = 0; c < t.class_count(); ++c) {
    elem_t rep = t.classes()[c].representative_index;
    classes.push_back({{"name", t.class_name(c)},
                       {"size", t.class_size(c)},
                       {"order", t.class_element_order(c)},
                       {"representative", t.element(rep).to_cycle_string()}});
    out.lines.push_back(t.class_name(c) + "  size " + std::to_string(t.class_size(c)) + "  rep " +
                        t.element(rep).to_cycle_string());
  }
  out.certificate = {{"order", t.size()}, {"classes", classes}};
  out.verdict = "verified";
  return out;
}

inline Outcome group_aut(Context& ctx) {
  Outcome out;
  auto const& t = ctx.table();
  auto const& aut = ctx.aut();
  auto orbits = aut_orbits_on_classes(t, aut.generators);
  json fused = json::array();
  for (auto const& o : orbits) {
    json names = json::array();
    for (class_id c : o) names.push_back(t.class_name(c));
    fused.push_back(names);
  }
  out.certificate = {{"order", aut.order}, {"outer_order", aut.out_order}, {"class_orbits", fused}};
  out.verdict = "verified";
  out.lines.push_back("|Aut| = " + std::to_string(aut.order) + ", |Out| = " + std::to_string(aut.out_order));
  out.lines.push_back("classes fused by Aut: " + fused.dump());
  return out;
}

inline Outcome chartab_compute(Context& ctx) {
  Outcome out;
  auto const& t = ctx.table();
  CharacterTable tab = dixon_character_table(t);
  out.certificate = character_table_to_json(tab);
  out.certificate["rows_orthogonal"] = rows_orthogonal(tab);
  out.certificate["columns_orthogonal"] = columns_orthogonal(tab);
  out.verdict = "verified";
  std::string header = "     ";
  for (auto const& c : tab.classes) header += "  " + c.name;
  out.lines.push_back(header);
  for (std::size_t i = 0; i < tab.size(); ++i) {
    std::string row = "X" + std::to_string(i + 1) + "  ";
    for (auto const& v : tab.values[i]) row += "  " + v.to_string();
    out.lines.push_back(row);
  }
  return out;
}

inline Outcome verify_witness_cmd(Context& ctx, Options const& o) {
  Outcome out;
  bool diagonal = o.action == "diagonal";
  PermutationGroup g = diagonal ? ctx.diagonal().group : permutation_group(ctx.entry());
  std::size_t n = g.degree();
  std::vector<point_t> x;
  std::optional<Multiset> j;
  if (!o.witness_file.empty()) {
    std::ifstream in(o.witness_file);
    if (!in) throw Error("cannot open " + o.witness_file);
    json w = json::parse(in);
    x = w.at("set").get<std::vector<point_t>>();
    j = multiset_from_json(w.at("multiset"), n);
  }
  if (!o.set.empty()) x = parse_points(o.set);
  if (!o.multiset.empty()) j = multiset_from_json(json::parse(o.multiset), n);
  if (!j) throw Error("a multiset is required (--multiset or --witness)");
  PointSet xs = normalize_point_set(x, n);
  std::string name = diagonal ? "W(" + ctx.entry().name + ")" : ctx.entry().name;
  out.inputs = {{"set", xs}, {"multiset", multiset_to_json(*j)}, {"action", o.action}};
  WitnessResult r = verify_witness(g, xs, *j, o.cap);
  if (auto const* w = std::get_if<Witness>(&r)) {
    out.verdict = "verified";
    out.certificate = witness_to_json(*w, name);
    out.lines.push_back("witness on " + name + ": constant " + std::to_string(w->constant) + " over " +
                        std::to_string(w->images_checked) + " images");
  } else {
    auto const& ref = std::get<Refutation>(r);
    out.verdict = "refuted";
    out.certificate = refutation_to_json(ref, xs, *j, name);
    out.lines.push_back(std::string("not a witness: ") + to_string(ref.violation) + " (" + ref.message + ")");
  }
  return out;
}

inline Outcome ab_check_cmd(Context& ctx, Options const& o) {
  Outcome out;
  auto const& t = ctx.table();
  Subgroup a = ctx.subgroup(o.a), b = ctx.subgroup(o.b);
  out.inputs = {{"A", o.a}, {"B", o.b}, {"action", o.action}, {"omega", o.omega}};
  AbLemmaResult r;
  std::string name;
  if (o.action == "diagonal") {
    auto const& w = ctx.diagonal();
    name = "W(" + t.name() + ")";
    std::vector<point_t> x = o.set.empty() ? as_point_set(a.elements()) : parse_points(o.set);
    r = ab_lemma_check(w.group, subgroup_image_in_diagonal(t, Side::Right, a),
                       subgroup_image_in_diagonal(t, Side::Right, b), o.omega, x, o.cap);
  } else {
    if (o.set.empty()) throw Error("--set is required for the natural action");
    name = t.name();
    r = ab_lemma_check(t.representation(), as_permutation_group(t, a), as_permutation_group(t, b), o.omega,
                       parse_points(o.set), o.cap);
  }
  if (auto const* w = std::get_if<AbLemmaWitness>(&r)) {
    out.verdict = "verified";
    out.certificate = ab_witness_json(*w, name);
    out.lines.push_back("witness on " + name + " with k = " + std::to_string(w->k) + ", constant " +
                        std::to_string(w->witness.constant));
  } else {
    auto const& f = std::get<AbLemmaFailure>(r);
    out.verdict = "refuted";
    out.certificate = ab_failure_json(f);
    out.lines.push_back(std::string("hypothesis fails: ") + to_string(f.reason) + " (" + f.message + ")");
  }
  return out;
}

inline Outcome diagonal_witness_cmd(Context& ctx, Options const& o) {
  Outcome out;
  auto const& t = ctx.table();
  Subgroup a = ctx.subgroup(o.a), b = ctx.subgroup(o.b);
  out.inputs = {{"A", o.a}, {"B", o.b}};
  auto r = diagonal_witness(t, ctx.aut(), a, b, o.cap);
  std::string name = "W(" + t.name() + ")";
  if (auto const* w = std::get_if<DiagonalWitness>(&r)) {
    out.verdict = "verified";
    out.certificate = ab_witness_json(w->construction, name);
    out.certificate["group_order"] = w->group_order;
    out.certificate["domain_size"] = w->domain_size;
    out.lines.push_back("witness on " + name + " (order " + std::to_string(w->group_order) + ", " +
                        std::to_string(w->domain_size) + " points): |X| = " +
                        std::to_string(w->construction.witness.set.size()) + ", |J| = " +
                        std::to_string(w->construction.witness.multiset.cardinality()) + ", constant " +
                        std::to_string(w->construction.witness.constant));
  } else {
    auto const& f = std::get<AbLemmaFailure>(r);
    out.verdict = "refuted";
    out.certificate = ab_failure_json(f);
    out.lines.push_back(std::string("no witness: ") + to_string(f.reason) + " (" + f.message + ")");
  }
  return out;
}

inline Outcome supplement_cmd(Context& ctx, Options const& o) {
  Outcome out;
  auto const& t = ctx.table();
  Subgroup a = ctx.subgroup(o.a), b = ctx.subgroup(o.b);
  out.inputs = {{"A", o.a}, {"B", o.b}, {"scope", o.scope}};
  SupplementReport rep;
  if (o.scope == "T") {
    rep = supplement_property(t, a, b);
  } else if (o.scope == "Aut") {
    rep = supplement_property(t, a, b, ctx.aut());
  } else {
    throw Error("--scope must be T or Aut");
  }
  out.certificate = {{"holds", rep.holds}, {"scope", to_string(rep.scope)}, {"checks", rep.checks},
                     {"order_A", a.order()}, {"order_B", b.order()}};
  if (rep.holds) {
    out.verdict = "verified";
    out.lines.push_back("A = B(A ∩ A^t) for every " + std::string(o.scope == "T" ? "t in T" : "t in Aut(T)"));
  } else {
    out.verdict = "refuted";
    elem_t x = *rep.failing_element;
    out.certificate["failing_element"] = {{"index", x}, {"permutation", perm_json(t.element(x))}};
    out.certificate["failing_outer_index"] = rep.failing_outer_index;
    out.certificate["intersection_order"] = rep.intersection_order;
    out.certificate["product_order"] = rep.product_order;
    out.lines.push_back("fails at t = " + t.element(x).to_cycle_string() + ": |A ∩ A^t| = " +
                        std::to_string(rep.intersection_order) + ", |B(A ∩ A^t)| = " +
                        std::to_string(rep.product_order) + " < |A| = " + std::to_string(a.order()));
  }
  return out;
}

inline json spec_json(GroupTable const& t, CharWitnessSpec const& s) {
  return json{{"r", t.class_name(s.r)}, {"s1", t.class_name(s.s1)}, {"s2", t.class_name(s.s2)},
              {"separating_characters", s.separating_characters}};
}

inline Outcome char_witness_cmd(Context& ctx, Options const& o) {
  Outcome out;
  auto const& t = ctx.table();
  class_id r = ctx.class_named(o.r), s1 = ctx.class_named(o.s1), s2 = ctx.class_named(o.s2);
  out.inputs = {{"r", o.r}, {"s1", o.s1}, {"s2", o.s2}};
  CharacterTable tab = dixon_character_table(t);
  auto orbits = aut_orbits_on_classes(t, ctx.aut().generators);
  auto res = lemma25_check(tab, orbits, r, s1, s2);
  if (auto const* ref = std::get_if<CharTestRefutation>(&res)) {
    out.verdict = "refuted";
    out.certificate = {{"failure", to_string(ref->failure)}, {"message", ref->message}};
    if (ref->character) out.certificate["character"] = *ref->character;
    if (ref->on_class) out.certificate["class"] = t.class_name(*ref->on_class);
    out.lines.push_back("character test fails: " + ref->message);
    return out;
  }
  auto const& spec = std::get<CharWitnessSpec>(res);
  WitnessResult w = char_witness_validate(t, ctx.diagonal(), spec, o.cap);
  std::string name = "W(" + t.name() + ")";
  if (auto const* wit = std::get_if<Witness>(&w)) {
    out.verdict = "verified";
    out.certificate = witness_to_json(*wit, name);
    out.certificate["spec"] = spec_json(t, spec);
    out.lines.push_back("witness (" + o.r + "^T, Omega + " + o.s1 + "^T - " + o.s2 + "^T) on " + name +
                        ", constant " + std::to_string(wit->constant));
  } else {
    auto const& ref = std::get<Refutation>(w);
    out.verdict = "refuted";
    out.certificate = refutation_to_json(ref, class_as_point_set(t, r), char_witness_multiset(t, s1, s2), name);
    out.lines.push_back(std::string("verification failed: ") + to_string(ref.violation));
  }
  return out;
}

inline Outcome char_search_cmd(Context& ctx, Options const& o) {
  Outcome out;
  auto const& t = ctx.table();
  CharacterTable tab = dixon_character_table(t);
  auto orbits = aut_orbits_on_classes(t, ctx.aut().generators);
  auto found = lemma25_search(tab, orbits);
  json list = json::array();
  bool all_valid = true;
  for (auto const& s : found) {
    json item = spec_json(t, s);
    std::string line = "(" + t.class_name(s.r) + ", " + t.class_name(s.s1) + ", " + t.class_name(s.s2) + ")";
    if (o.validate) {
      WitnessResult w = char_witness_validate(t, ctx.diagonal(), s, o.cap);
      item["validated"] = is_witness(w);
      all_valid = all_valid && is_witness(w);
      line += is_witness(w) ? " validated" : " NOT validated";
    }
    list.push_back(item);
    out.lines.push_back(line);
  }
  out.inputs = {{"validate", o.validate}};
  out.certificate = {{"triples", list}};
  out.verdict = !found.empty() && all_valid ? "verified" : "refuted";
  if (found.empty()) out.lines.push_back("no class triple passes");
  return out;
}

inline Outcome orbits_count_cmd(Context& ctx, Options const& o) {
  Outcome out;
  auto const& t = ctx.table();
  Subgroup a = ctx.subgroup(o.a), b = ctx.subgroup(o.b);
  out.inputs = {{"A", o.a}, {"B", o.b}};
  OrbitCounts c = orbit_count_pair(t, a, b);
  out.certificate = {{"c_A", c.c_a}, {"c_B", c.c_b}, {"cosets", c.cosets},
                     {"c_A_cauchy_frobenius", c.c_a_fixed_points}, {"c_B_cauchy_frobenius", c.c_b_fixed_points},
                     {"equal", c.c_a == c.c_b}};
  out.verdict = c.c_a == c.c_b ? "verified" : "refuted";
  out.lines.push_back("on " + std::to_string(c.cosets) + " cosets: c_A = " + std::to_string(c.c_a) +
                      ", c_B = " + std::to_string(c.c_b) + " (direct and Cauchy-Frobenius agree)");
  return out;
}

inline Outcome basesize_cmd(Context& ctx, Options const& o) {
  Outcome out;
  auto const& t = ctx.table();
  Subgroup a = ctx.subgroup(o.a);
  out.inputs = {{"A", o.a}};
  auto found = two_point_stabilizer_trivial(t, a);
  OrbitBound bound = orbit_bound(t, a);
  out.certificate = {{"orbits", bound.orbits}, {"index", bound.index}, {"orbit_bound_holds", bound.holds}};
  if (found) {
    out.verdict = "verified";
    out.certificate["element"] = {{"index", *found}, {"permutation", perm_json(t.element(*found))}};
    out.lines.push_back("A ∩ A^t = 1 for t = " + t.element(*found).to_cycle_string());
  } else {
    out.verdict = "refuted";
    out.lines.push_back("no t with A ∩ A^t = 1");
  }
  out.lines.push_back("c = " + std::to_string(bound.orbits) + ", c|A|/2 >= |T:A| is " +
                      (bound.holds ? "true" : "false"));
  return out;
}

// ---- driver ---------------------------------------------------------------

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"diagspread: witnesses for diagonal-type permutation groups"};
  app.require_subcommand(1, 1);
  app.failure_message(CLI::FailureMessage::help);
  Options o;
  std::string command;
  std::function<Outcome(Context&)> action;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--group", o.group, "catalog group name, e.g. A5 or PSL(2,7)");
    sub->add_option("--file", o.file, "group-spec JSON file");
    sub->add_flag("--json", o.json, "print the report as JSON");
    sub->add_option("--cap", o.cap, "enumeration cap");
  };
  auto leaf = [&](CLI::App* parent, std::string const& name, std::string const& help,
                  std::function<Outcome(Context&)> fn) {
    CLI::App* sub = parent->add_subcommand(name, help);
    add_common(sub);
    sub->callback([&, fn, full = parent->get_name() + " " + name] {
      command = full;
      action = fn;
    });
    return sub;
  };

  CLI::App* group = app.add_subcommand("group", "group data");
  group->require_subcommand(1, 1);
  leaf(group, "info", "order, generators and named subgroups", group_info);
  leaf(group, "classes", "conjugacy classes", group_classes);
  leaf(group, "aut", "automorphism group", group_aut);

  CLI::App* chartab = app.add_subcommand("chartab", "character tables");
  chartab->require_subcommand(1, 1);
  leaf(chartab, "compute", "exact character table", chartab_compute);

  CLI::App* spreading = app.add_subcommand("spreading", "witness construction and verification");
  spreading->require_subcommand(1, 1);
  auto* vw = leaf(spreading, "verify-witness", "check a pair (X, J)", [&](Context& c) { return verify_witness_cmd(c, o); });
  vw->add_option("--set", o.set, "points of X, comma separated");
  vw->add_option("--multiset", o.multiset, "J as JSON: {\"point\": mult} or an array");
  vw->add_option("--witness", o.witness_file, "witness JSON file with set and multiset");
  vw->add_option("--action", o.action, "natural | diagonal")->check(CLI::IsMember({"natural", "diagonal"}));

  auto* ab = leaf(spreading, "ab-check", "build a witness from B normal in A", [&](Context& c) { return ab_check_cmd(c, o); });
  ab->add_option("--A", o.a, "subgroup label or recipe")->required();
  ab->add_option("--B", o.b, "subgroup label or recipe")->required();
  ab->add_option("--set", o.set, "X, comma separated (diagonal default: A)");
  ab->add_option("--omega", o.omega, "base point");
  ab->add_option("--action", o.action, "natural | diagonal")->check(CLI::IsMember({"natural", "diagonal"}));

  auto* dw = leaf(spreading, "diagonal-witness", "witness (A, Omega + |A:B| B - A) on W(T)",
                  [&](Context& c) { return diagonal_witness_cmd(c, o); });
  dw->add_option("--A", o.a, "subgroup label or recipe")->required();
  dw->add_option("--B", o.b, "subgroup label or recipe")->required();

  auto* sp = leaf(spreading, "supplement", "check A = B(A ∩ A^t)", [&](Context& c) { return supplement_cmd(c, o); });
  sp->add_option("--A", o.a, "subgroup label or recipe")->required();
  sp->add_option("--B", o.b, "subgroup label or recipe")->required();
  sp->add_option("--scope", o.scope, "T | Aut")->check(CLI::IsMember({"T", "Aut"}));

  auto* cw = leaf(spreading, "char-witness", "character test and witness for classes r, s1, s2",
                  [&](Context& c) { return char_witness_cmd(c, o); });
  cw->add_option("--r", o.r, "class name, e.g. 3A")->required();
  cw->add_option("--s1", o.s1, "class name")->required();
  cw->add_option("--s2", o.s2, "class name")->required();

  auto* cs = leaf(spreading, "char-search", "all class triples passing the character test",
                  [&](Context& c) { return char_search_cmd(c, o); });
  cs->add_flag("--validate", o.validate, "verify each triple's witness on W(T)");

  CLI::App* orbits_cmd = app.add_subcommand("orbits", "orbit counts on cosets");
  orbits_cmd->require_subcommand(1, 1);
  auto* oc = leaf(orbits_cmd, "count", "orbits of A and B on the cosets of A", [&](Context& c) { return orbits_count_cmd(c, o); });
  oc->add_option("--A", o.a, "subgroup label or recipe")->required();
  oc->add_option("--B", o.b, "subgroup label or recipe")->required();

  CLI::App* basesize = app.add_subcommand("basesize", "two-point stabilizers");
  basesize->require_subcommand(1, 1);
  auto* bs = leaf(basesize, "two-check", "find t with A ∩ A^t = 1", [&](Context& c) { return basesize_cmd(c, o); });
  bs->add_option("--A", o.a, "subgroup label or recipe")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (CLI::CallForHelp const& e) {
    app.exit(e, out, err);
    return kVerified;
  } catch (CLI::CallForAllHelp const& e) {
    app.exit(e, out, err);
    return kVerified;
  } catch (CLI::ParseError const& e) {
    app.exit(e, out, err);
    return kUsageOrError;
  }
  if (!action) {
    err << app.help();
    return kUsageOrError;
  }

  auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  json args_json = json::array();
  for (auto const& a : args) args_json.push_back(a);
  try {
    Context ctx(o);
    outcome = action(ctx);
    outcome.inputs["group"] = ctx.entry().name;
  } catch (std::exception const& ex) {
    outcome = Outcome{"error", json::object(), json{{"message", ex.what()}}, {std::string("error: ") + ex.what()}};
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  if (o.json) {
    json report{{"command", command},         {"arguments", args_json},
                {"inputs", outcome.inputs},   {"verdict", outcome.verdict},
                {"certificate", outcome.certificate}, {"timing_ms", ms}};
    out << report.dump(2) << "\n";
  } else {
    for (auto const& line : outcome.lines) (outcome.verdict == "error" ? err : out) << line << "\n";
    if (outcome.verdict != "error") out << "verdict: " << outcome.verdict << "\n";
  }
  if (outcome.verdict == "verified") return kVerified;
  if (outcome.verdict == "refuted") return kRefuted;
  return kUsageOrError;
}

}  // namespace diagspread::cli
