// For each catalog triple (T, A, B) small enough to handle, compares the
// orbit counts of A and B on the cosets of A with the supplement property
// over T and over Aut(T).

#include <iomanip>
#include <iostream>

#include "diagspread.hpp"

using namespace diagspread;

int main() {
  std::cout << std::left << std::setw(11) << "group" << std::setw(10) << "A" << std::setw(10) << "B" << std::setw(8)
            << "index" << std::setw(6) << "c_A" << std::setw(6) << "c_B" << std::setw(10) << "supp(T)"
            << "supp(Aut)\n";
  for (auto const& name : catalog_names()) {
    CatalogEntry e = catalog_load(name);
    if (e.known_order > 20160) continue;
    GroupTable t = group_table(e);
    AutomorphismGroup aut = catalog_automorphisms(t, e);
    for (auto const& [al, bl] : e.triples) {
      Subgroup a = resolve_subgroup(t, e, al), b = resolve_subgroup(t, e, bl);
      OrbitCounts c = orbit_count_pair(t, a, b);
      bool inner = supplement_property(t, a, b).holds;
      bool full = supplement_property(t, a, b, aut).holds;
      std::cout << std::setw(11) << name << std::setw(10) << al << std::setw(10) << bl << std::setw(8) << c.cosets
                << std::setw(6) << c.c_a << std::setw(6) << c.c_b << std::setw(10) << (inner ? "yes" : "no")
                << (full ? "yes" : "no") << "\n";
    }
  }
}
