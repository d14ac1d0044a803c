// Builds the witness (A, Omega + |A:B| B - A) for W(T) and checks it.
//
//   demo_corollary_witness [group] [A] [B]     defaults: A5 A4 V4

#include <iostream>

#include "diagspread.hpp"

using namespace diagspread;

int main(int argc, char** argv) {
  std::string name = argc > 1 ? argv[1] : "A5";
  std::string a_label = argc > 2 ? argv[2] : "A4";
  std::string b_label = argc > 3 ? argv[3] : "V4";
  try {
    CatalogEntry e = catalog_load(name);
    GroupTable t = group_table(e);
    AutomorphismGroup aut = catalog_automorphisms(t, e);
    Subgroup a = resolve_subgroup(t, e, a_label), b = resolve_subgroup(t, e, b_label);
    std::cout << e.name << ": |T| = " << t.size() << ", |Out(T)| = " << aut.out_order << "\n";
    std::cout << "A = " << a_label << " (order " << a.order() << "), B = " << b_label << " (order " << b.order()
              << ")\n";

    auto result = diagonal_witness(t, aut, a, b);
    if (auto const* f = std::get_if<AbLemmaFailure>(&result)) {
      std::cout << "no witness: " << to_string(f->reason) << ": " << f->message << "\n";
      return 1;
    }
    auto const& w = std::get<DiagonalWitness>(result);
    auto const& wit = w.construction.witness;
    std::cout << "W(T) has order " << w.group_order << " on " << w.domain_size << " points\n";
    std::cout << "X = A as a subset of T, |X| = " << wit.set.size() << "\n";
    std::cout << "J = Omega + " << w.construction.k << " B - A, |J| = " << wit.multiset.cardinality() << "\n";
    std::cout << "every image of X has weight " << wit.constant << " (" << wit.images_checked << " images)\n";
    std::cout << witness_to_json(wit, "W(" + e.name + ")").dump() << "\n";
  } catch (std::exception const& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
