#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"
#include "oracle.hpp"

using namespace diagspread;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "diagspread_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_file(std::string const& name, std::string const& content) {
  auto path = temp_dir() / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST(Catalog, Examples) {
  auto a5 = catalog_load("A5");
  EXPECT_EQ(a5.degree, 5u);
  EXPECT_EQ(permutation_group(a5).order(), 60u);
  auto p8 = catalog_load("PSL(2,8)");
  EXPECT_EQ(p8.degree, 9u);
  EXPECT_EQ(permutation_group(p8).order(), 504u);
  auto m11 = catalog_load("M11");
  EXPECT_EQ(m11.degree, 11u);
  EXPECT_EQ(permutation_group(m11).order(), 7920u);
  EXPECT_THROW(catalog_load("A4"), Error);
  EXPECT_EQ(catalog_load("psl(2,7)").name, "PSL(2,7)");
}

TEST(Catalog, EveryEntryIsConsistent) {
  for (auto const& name : catalog_names()) {
    auto e = catalog_load(name);
    PermutationGroup g = permutation_group(e);
    EXPECT_EQ(g.order(), e.known_order) << name;
    EXPECT_TRUE(is_transitive(g)) << name;
    for (auto const& [a, b] : e.triples) {
      EXPECT_TRUE(e.subgroups.contains(a) || a == "1") << name << " " << a;
      EXPECT_TRUE(e.subgroups.contains(b) || b == "1") << name << " " << b;
    }
  }
}

TEST(Catalog, NamedSubgroupOrders) {
  struct Case {
    std::string group, label;
    std::size_t order;
  };
  for (auto const& c : std::vector<Case>{{"A5", "A4", 12},
                                         {"A5", "V4", 4},
                                         {"A5", "D10", 10},
                                         {"A7", "S3xS4", 72},
                                         {"A7_3sets", "A3xA4", 36},
                                         {"PSL(2,7)", "sylow7_normalizer", 21},
                                         {"PSL(2,7)", "C7", 7},
                                         {"PSL(2,8)", "borel", 56},
                                         {"PSL(2,13)", "U", 13},
                                         {"PSL(3,2)", "S4", 24},
                                         {"PSL(3,2)", "A4", 12},
                                         {"M11", "M10.2", 720},
                                         {"M11", "A6", 360}}) {
    auto e = catalog_load(c.group);
    GroupTable t = group_table(e);
    EXPECT_EQ(resolve_subgroup(t, e, c.label).order(), c.order) << c.group << " " << c.label;
  }
}

TEST(Catalog, Recipes) {
  auto e = catalog_load("A5");
  GroupTable t = group_table(e);
  EXPECT_EQ(resolve_subgroup(t, e, "1").order(), 1u);
  EXPECT_EQ(resolve_subgroup(t, e, "T").order(), 60u);
  EXPECT_EQ(resolve_subgroup(t, e, "sylow:2").order(), 4u);
  EXPECT_EQ(resolve_subgroup(t, e, "sylow_normalizer:5").order(), 10u);
  EXPECT_EQ(resolve_subgroup(t, e, "normalizer:V4").order(), 12u);
  EXPECT_EQ(resolve_subgroup(t, e, "derived:A4").order(), 4u);
  EXPECT_EQ(resolve_subgroup(t, e, "point_stabilizer:0").order(), 12u);
  EXPECT_EQ(resolve_subgroup(t, e, "setwise_stabilizer:0,1").order(), 6u);
  EXPECT_EQ(resolve_subgroup(t, e, "gens:(0 1 2);(0 1)(3 4)").order(), 6u);
  EXPECT_THROW(resolve_subgroup(t, e, "nonsense"), Error);
  EXPECT_THROW(resolve_subgroup(t, e, "gens:(0 1)"), Error);
}

TEST(Catalog, DirectoryOverride) {
  auto dir = temp_dir() / "catalog";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "s3.json") << R"j({"name": "S3", "degree": 3, "order": 6,
      "generators": ["(0 1 2)", [[0, 1]]], "subgroups": {"C3": ["(0 1 2)"]}})j";
  ::setenv(kCatalogDirEnv, dir.string().c_str(), 1);
  auto e = catalog_load("S3");
  ::unsetenv(kCatalogDirEnv);
  EXPECT_EQ(e.name, "S3");
  EXPECT_EQ(permutation_group(e).order(), 6u);
  GroupTable t = group_table(e);
  EXPECT_EQ(resolve_subgroup(t, e, "C3").order(), 3u);
}

TEST(GroupSpecJson, RoundTrip) {
  GroupSpec s;
  s.name = "PSL(2,7)";
  s.degree = 8;
  s.generators = {parse_cycle_string("(0 1 2 3 4 5 6)", 8), parse_cycle_string("(0 7)(1 6)(2 3)(4 5)", 8)};
  s.known_order = 168;
  s.aut_generators = std::vector<Permutation>{parse_cycle_string("(1 3 2 6 4 5)", 8)};
  s.subgroups["C7"] = {parse_cycle_string("(0 1 2 3 4 5 6)", 8)};
  GroupSpec back = group_spec_from_json(json::parse(group_spec_to_json(s).dump()));
  EXPECT_EQ(back.name, s.name);
  EXPECT_EQ(back.degree, s.degree);
  EXPECT_EQ(back.generators, s.generators);
  EXPECT_EQ(back.known_order, s.known_order);
  EXPECT_EQ(back.aut_generators, s.aut_generators);
  EXPECT_EQ(back.subgroups, s.subgroups);
  EXPECT_THROW(group_spec_from_json(json::parse(R"j({"generators": []})j")), Error);
}

TEST(MultisetJson, BothForms) {
  Multiset m = multiset_from_json(json::parse(R"j({"0": 2, "3": 1})j"), 5);
  EXPECT_EQ(m.multiplicities(), (std::vector<std::int64_t>{2, 0, 0, 1, 0}));
  EXPECT_EQ(multiset_from_json(json::parse("[2,0,0,1,0]"), 5), m);
  EXPECT_EQ(multiset_from_json(multiset_to_json(m), 5), m);
  EXPECT_THROW(multiset_from_json(json::parse(R"j({"9": 1})j"), 5), OutOfRange);
  EXPECT_THROW(multiset_from_json(json::parse(R"j({"a": 1})j"), 5), Error);
}

TEST(Cli, DiagonalWitnessReport) {
  CliRun r = run({"spreading", "diagonal-witness", "--group", "A5", "--A", "A4", "--B", "V4", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json rep = r.report();
  EXPECT_EQ(rep["verdict"], "verified");
  EXPECT_EQ(rep["command"], "spreading diagonal-witness");
  auto const& cert = rep["certificate"];
  EXPECT_EQ(cert["group_order"], 14400);
  EXPECT_EQ(cert["domain_size"], 60);
  EXPECT_EQ(cert["cardinality"], 60);
  EXPECT_EQ(cert["constant"], 12);
  EXPECT_TRUE(rep.contains("timing_ms"));

  // the report alone is enough to recheck: rebuild W(A5) from the catalog
  // and scan all of its elements
  auto e = catalog_load("A5");
  GroupTable t = group_table(e);
  DiagonalGroup w = build_diagonal_group(t, catalog_automorphisms(t, e));
  PointSet x = cert["set"].get<PointSet>();
  Multiset j = multiset_from_json(cert["multiset"], 60);
  auto scan = oracle::scan_weights(w.group, x, j);
  EXPECT_EQ(scan.weights, (std::set<std::int64_t>{cert["constant"].get<std::int64_t>()}));
}

TEST(Cli, SupplementFailureReport) {
  CliRun r = run({"spreading", "supplement", "--group", "A5", "--A", "C5", "--B", "1", "--scope", "T", "--json"});
  ASSERT_EQ(r.code, 1) << r.err;
  json rep = r.report();
  EXPECT_EQ(rep["verdict"], "refuted");
  auto perm = rep["certificate"]["failing_element"]["permutation"]["images"].get<std::vector<point_t>>();
  // C5 ∩ C5^t is trivial for the reported t
  auto e = catalog_load("A5");
  GroupTable t = group_table(e);
  Subgroup c5 = resolve_subgroup(t, e, "C5");
  elem_t x = t.index_of(Permutation(perm));
  EXPECT_EQ(oracle::intersect(t, c5.elements(), oracle::conjugate_set(t, c5.elements(), x)).size(), 1u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"spreading", "supplement", "--group", "A5", "--A", "A4", "--B", "V4", "--scope", "Aut"}).code, 0);
  EXPECT_EQ(run({"orbits", "count", "--group", "A5", "--A", "A4", "--B", "V4"}).code, 0);
  EXPECT_EQ(run({"orbits", "count", "--group", "A5", "--A", "C5", "--B", "1"}).code, 1);
  EXPECT_EQ(run({"basesize", "two-check", "--group", "A5", "--A", "C5"}).code, 0);
  EXPECT_EQ(run({"basesize", "two-check", "--group", "A5", "--A", "A4"}).code, 1);
  EXPECT_EQ(run({"spreading", "char-witness", "--group", "A5", "--r", "3A", "--s1", "5A", "--s2", "5B"}).code, 0);
  EXPECT_EQ(run({"spreading", "char-witness", "--group", "A5", "--r", "2A", "--s1", "5A", "--s2", "5B"}).code, 1);
  EXPECT_EQ(run({"spreading", "char-search", "--group", "PSL(2,7)", "--validate"}).code, 0);
  EXPECT_EQ(run({"group", "classes", "--group", "M11"}).code, 0);
  EXPECT_EQ(run({"group", "aut", "--group", "PSL(2,8)"}).code, 0);
  EXPECT_EQ(run({"chartab", "compute", "--group", "A5"}).code, 0);
}

TEST(Cli, UsageErrors) {
  CliRun unknown = run({"group", "info", "--group", "A5", "--frobnicate"});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({"teleport"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"group", "info"}).code, 2);
  EXPECT_EQ(run({"group", "info", "--group", "NoSuchGroup"}).code, 2);
  EXPECT_EQ(run({"spreading", "supplement", "--group", "A5", "--A", "A4", "--B", "C3"}).code, 2);
  EXPECT_EQ(run({"spreading", "supplement", "--group", "A5", "--A", "A4", "--B", "V4", "--scope", "X"}).code, 2);
}

TEST(Cli, BadGroupFile) {
  std::string bad = write_file("bad.json", R"j({"name": "bad", "degree": 3, "generators": [[0, 0, 1]]})j");
  CliRun r = run({"group", "info", "--file", bad, "--json"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.report()["verdict"], "error");
  std::string broken = write_file("broken.json", "{ not json");
  EXPECT_EQ(run({"group", "info", "--file", broken}).code, 2);
  std::string wrong_order =
      write_file("order.json", R"j({"name": "C3", "degree": 3, "order": 6, "generators": ["(0 1 2)"]})j");
  EXPECT_EQ(run({"group", "info", "--file", wrong_order}).code, 2);
  std::string good = write_file("good.json", R"j({"name": "S3", "degree": 3, "generators": ["(0 1 2)", "(0 1)"]})j");
  CliRun ok = run({"group", "info", "--file", good, "--json"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.report()["certificate"]["order"], 6);
}

TEST(Cli, VerifyWitnessFromFileAndFlags) {
  CliRun made = run({"spreading", "diagonal-witness", "--group", "A5", "--A", "D10", "--B", "C5", "--json"});
  ASSERT_EQ(made.code, 0);
  std::string path = write_file("witness.json", made.report()["certificate"].dump());
  CliRun check = run({"spreading", "verify-witness", "--group", "A5", "--action", "diagonal", "--witness", path, "--json"});
  EXPECT_EQ(check.code, 0) << check.err;
  EXPECT_EQ(check.report()["certificate"]["constant"], made.report()["certificate"]["constant"]);

  CliRun natural = run({"spreading", "verify-witness", "--group", "A5", "--set", "0,1", "--multiset",
                     R"j({"0": 2, "1": 1, "2": 1, "3": 1})j", "--json"});
  EXPECT_EQ(natural.code, 1);
  json cert = natural.report()["certificate"];
  EXPECT_EQ(cert["violation"], "non-constant-sum");
  // recheck the counterexample from the report alone
  Permutation g(cert["counterexample"]["element"].get<std::vector<point_t>>());
  EXPECT_EQ(image_of_set({0, 1}, g), cert["counterexample"]["image"].get<PointSet>());
  Multiset j = multiset_from_json(cert["multiset"], 5);
  EXPECT_EQ(j.sum_over(cert["counterexample"]["image"].get<PointSet>()), cert["counterexample"]["value"]);
  EXPECT_NE(cert["counterexample"]["value"], cert["counterexample"]["expected"]);
}

TEST(Cli, AbCheckNatural) {
  CliRun r = run({"spreading", "ab-check", "--group", "A5", "--A", "A4", "--B", "V4", "--set", "0,1", "--omega", "0",
               "--json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.report()["certificate"]["reason"], "fewer-than-two-B-orbits");
  CliRun d = run({"spreading", "ab-check", "--group", "PSL(2,7)", "--A", "borel", "--B", "U", "--action", "diagonal"});
  EXPECT_EQ(d.code, 0) << d.err;
}

TEST(Cli, ReportsAreDeterministic) {
  std::vector<std::vector<std::string>> commands{
      {"spreading", "diagonal-witness", "--group", "PSL(2,7)", "--A", "sylow7_normalizer", "--B", "C7", "--json"},
      {"spreading", "char-search", "--group", "A5", "--validate", "--json"},
      {"chartab", "compute", "--group", "PSL(2,8)", "--json"},
      {"orbits", "count", "--group", "A7_3sets", "--A", "S3xS4", "--B", "A3xA4", "--json"}};
  for (auto const& c : commands) {
    json a = run(c).report(), b = run(c).report();
    a.erase("timing_ms");
    b.erase("timing_ms");
    EXPECT_EQ(a.dump(), b.dump());
  }
}

TEST(Cli, CharacterTableText) {
  CliRun r = run({"chartab", "compute", "--group", "A5"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("z5"), std::string::npos);
  EXPECT_NE(r.out.find("3A"), std::string::npos);
}
