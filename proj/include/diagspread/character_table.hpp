#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "diagspread/cyclotomic.hpp"
#include "diagspread/group_table.hpp"

namespace diagspread {

inline constexpr std::size_t kDefaultClassCap = 60;

struct ClassInfo {
  std::string name;
  std::size_t size = 0;
  std::uint64_t element_order = 0;
  elem_t representative = 0;
};

/// Irreducible characters; values[i][c] is the i-th character on class c.
/// Row 0 is the trivial character; the rest are ordered by degree, then by
/// their values.
struct CharacterTable {
  std::string group_name;
  std::uint64_t group_order = 0;
  std::uint64_t exponent = 1;
  std::uint64_t prime = 0;  // modulus used for the reduction
  std::vector<ClassInfo> classes;
  std::vector<class_id> inverse_class;
  std::vector<std::int64_t> degrees;
  std::vector<std::vector<CyclotomicValue>> values;

  std::size_t size() const noexcept { return degrees.size(); }
  CyclotomicValue const& operator()(std::size_t chi, class_id c) const { return values.at(chi).at(c); }
};

namespace detail {

using Row = std::vector<std::uint64_t>;
using Matrix = std::vector<Row>;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t k, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (k) {
    if (k & 1) r = r * a % p;
    a = a * a % p;
    k >>= 1;
  }
  return r;
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw InternalError("inverse of zero modulo p");
  return pow_mod(a, p - 2, p);
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Smallest prime p = 1 mod e with p > 2 sqrt(n).
inline std::uint64_t dixon_prime(std::uint64_t e, std::uint64_t n, std::uint64_t bound = 1ULL << 31) {
  for (std::uint64_t p = e + 1; p < bound; p += e) {
    if (p * p > 4 * n && is_prime(p)) return p;
  }
  throw Error("no prime = 1 mod " + std::to_string(e) + " below " + std::to_string(bound));
}

inline std::uint64_t primitive_root(std::uint64_t p) {
  auto factors = prime_factors(p - 1);
  for (std::uint64_t g = 2; g < p; ++g) {
    if (std::all_of(factors.begin(), factors.end(),
                    [&](std::uint64_t q) { return pow_mod(g, (p - 1) / q, p) != 1; })) {
      return g;
    }
  }
  return 1;  // p = 2
}

// Row-reduces in place; returns pivot columns. Rows that become zero are removed.
inline std::vector<std::size_t> rref(Matrix& m, std::uint64_t p) {
  std::vector<std::size_t> pivots;
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[r], m[sel]);
    std::uint64_t inv = inv_mod(m[r][c], p);
    for (auto& v : m[r]) v = v * inv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      std::uint64_t f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = (m[i][j] + (p - f) * m[r][j]) % p;
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

// Basis of {x : A x = 0} for a square matrix A.
inline Matrix nullspace(Matrix a, std::uint64_t p) {
  std::size_t n = a.empty() ? 0 : a[0].size();
  auto pivots = rref(a, p);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Row v(n, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (p - a[i][f]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

// Characteristic polynomial (ascending coefficients) via reduction to upper
// Hessenberg form.
inline Row characteristic_polynomial(Matrix h, std::uint64_t p) {
  std::size_t n = h.size();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m + 1;
    while (i < n && h[i][m - 1] == 0) ++i;
    if (i == n) {
      if (h[m][m - 1] == 0) continue;
    } else if (h[m][m - 1] == 0) {
      std::swap(h[i], h[m]);
      for (auto& row : h) std::swap(row[i], row[m]);
    }
    std::uint64_t inv = inv_mod(h[m][m - 1], p);
    for (i = m + 1; i < n; ++i) {
      std::uint64_t u = h[i][m - 1] * inv % p;
      if (u == 0) continue;
      for (std::size_t j = 0; j < n; ++j) h[i][j] = (h[i][j] + (p - u) * h[m][j]) % p;
      for (std::size_t j = 0; j < n; ++j) h[j][m] = (h[j][m] + u * h[j][i]) % p;
    }
  }
  // polys[k] is the characteristic polynomial of the leading k x k block
  std::vector<Row> polys(n + 1);
  polys[0] = {1};
  for (std::size_t k = 1; k <= n; ++k) {
    Row next(k + 1, 0);
    Row const& prev = polys[k - 1];
    for (std::size_t d = 0; d < prev.size(); ++d) {
      next[d + 1] = (next[d + 1] + prev[d]) % p;
      next[d] = (next[d] + (p - h[k - 1][k - 1]) * prev[d]) % p;
    }
    std::uint64_t prod = 1;
    for (std::size_t i = 1; i < k; ++i) {
      prod = prod * h[k - i][k - i - 1] % p;
      std::uint64_t coeff = prod * h[k - i - 1][k - 1] % p;
      if (coeff == 0) continue;
      Row const& q = polys[k - i - 1];
      for (std::size_t d = 0; d < q.size(); ++d) next[d] = (next[d] + (p - coeff) * q[d]) % p;
    }
    polys[k] = std::move(next);
  }
  return polys[n];
}

inline std::vector<std::uint64_t> roots_mod_p(Row const& poly, std::uint64_t p) {
  std::vector<std::uint64_t> roots;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t v = 0;
    for (std::size_t d = poly.size(); d-- > 0;) v = (v * x + poly[d]) % p;
    if (v == 0) roots.push_back(x);
  }
  return roots;
}

// c[j][k][l] = #{(x, y) in C_j x C_k : x y = representative of C_l}
inline std::vector<std::vector<std::vector<std::uint64_t>>> class_structure_constants(GroupTable const& t) {
  std::size_t k = t.class_count();
  std::vector<std::vector<std::vector<std::uint64_t>>> c(
      k, std::vector<std::vector<std::uint64_t>>(k, std::vector<std::uint64_t>(k, 0)));
  for (class_id l = 0; l < k; ++l) {
    elem_t h = t.classes()[l].representative_index;
    for (elem_t x = 0; x < t.size(); ++x) {
      elem_t y = t.multiply(t.inverse(x), h);
      ++c[t.class_of(x)][t.class_of(y)][l];
    }
  }
  return c;
}

}  // namespace detail

/// Character table by simultaneous diagonalization of the class matrices
/// over F_p, lifted to exact cyclotomic values through eigenvalue
/// multiplicities.
inline CharacterTable dixon_character_table(GroupTable const& t, std::size_t class_cap = kDefaultClassCap) {
  using detail::Matrix;
  using detail::Row;
  std::size_t k = t.class_count();
  if (k > class_cap) throw CapExceeded("character table with " + std::to_string(k) + " classes", class_cap);

  CharacterTable table;
  table.group_name = t.name();
  table.group_order = t.size();
  table.exponent = t.exponent();
  for (class_id c = 0; c < k; ++c) {
    elem_t rep = t.classes()[c].representative_index;
    table.classes.push_back({t.class_name(c), t.class_size(c), t.element_order(rep), rep});
    table.inverse_class.push_back(t.class_of(t.inverse(rep)));
  }
  std::uint64_t e = t.exponent();
  std::uint64_t p = detail::dixon_prime(e, t.size());
  table.prime = p;
  std::uint64_t z = detail::pow_mod(detail::primitive_root(p), (p - 1) / e, p);

  auto coeff = detail::class_structure_constants(t);
  // M_j acts on column vectors: (M_j)[a][l] = c[j][a][l]; the vector of central
  // character values w_l = |C_l| chi(g_l) / chi(1) is a common eigenvector.
  std::vector<Matrix> ms(k, Matrix(k, Row(k, 0)));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t l = 0; l < k; ++l) ms[j][a][l] = coeff[j][a][l] % p;

  // each subspace is a basis in reduced row-echelon form (rows are vectors)
  std::vector<Matrix> spaces;
  {
    Matrix id(k, Row(k, 0));
    for (std::size_t i = 0; i < k; ++i) id[i][i] = 1;
    spaces.push_back(std::move(id));
  }
  for (std::size_t j = 1; j < k && spaces.size() < k; ++j) {
    std::vector<Matrix> next;
    for (auto& basis : spaces) {
      std::size_t d = basis.size();
      if (d == 1) {
        next.push_back(std::move(basis));
        continue;
      }
      Matrix tmp = basis;
      auto pivots = detail::rref(tmp, p);
      // restriction R with M_j b_i = sum_m R[m][i] b_m
      Matrix r(d, Row(d, 0));
      std::vector<Row> images(d, Row(k, 0));
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t a = 0; a < k; ++a) {
          std::uint64_t s = 0;
          for (std::size_t l = 0; l < k; ++l) s = (s + ms[j][a][l] * basis[i][l]) % p;
          images[i][a] = s;
        }
        for (std::size_t m = 0; m < d; ++m) r[m][i] = images[i][pivots[m]];
      }
      auto roots = detail::roots_mod_p(detail::characteristic_polynomial(r, p), p);
      std::size_t total = 0;
      std::vector<Matrix> pieces;
      for (std::uint64_t lambda : roots) {
        Matrix shifted = r;
        for (std::size_t i = 0; i < d; ++i) shifted[i][i] = (shifted[i][i] + p - lambda) % p;
        Matrix coords = detail::nullspace(shifted, p);
        Matrix piece;
        for (auto const& c : coords) {
          Row v(k, 0);
          for (std::size_t m = 0; m < d; ++m) {
            if (c[m] == 0) continue;
            for (std::size_t l = 0; l < k; ++l) v[l] = (v[l] + c[m] * basis[m][l]) % p;
          }
          piece.push_back(std::move(v));
        }
        detail::rref(piece, p);
        total += piece.size();
        pieces.push_back(std::move(piece));
      }
      if (total != d) throw InternalError("class matrix is not diagonalizable modulo p");
      for (auto& piece : pieces) next.push_back(std::move(piece));
    }
    spaces = std::move(next);
  }
  if (spaces.size() != k) throw InternalError("eigenspace splitting left a subspace of dimension > 1");

  std::uint64_t n = t.size();
  std::vector<std::vector<std::uint64_t>> power_class(k);  // class of g_l^m, m < order
  for (class_id l = 0; l < k; ++l) {
    std::uint64_t o = table.classes[l].element_order;
    elem_t g = table.classes[l].representative;
    elem_t x = GroupTable::identity();
    for (std::uint64_t m = 0; m < o; ++m) {
      power_class[l].push_back(t.class_of(x));
      x = t.multiply(x, g);
    }
  }

  struct RawCharacter {
    std::int64_t degree;
    std::vector<CyclotomicValue> values;
  };
  std::vector<RawCharacter> chars;
  for (auto const& space : spaces) {
    Row w = space[0];
    if (w[0] == 0) throw InternalError("central character vanishes at the identity");
    std::uint64_t inv0 = detail::inv_mod(w[0], p);
    for (auto& v : w) v = v * inv0 % p;
    std::uint64_t s = 0;
    for (class_id l = 0; l < k; ++l) {
      s = (s + w[l] * w[table.inverse_class[l]] % p * detail::inv_mod(table.classes[l].size % p, p)) % p;
    }
    std::uint64_t d2 = n % p * detail::inv_mod(s, p) % p;
    std::int64_t degree = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
      if (d * d % p == d2) {
        degree = static_cast<std::int64_t>(d);
        break;
      }
    }
    if (degree == 0) throw InternalError("no degree matches the character norm");
    std::vector<std::uint64_t> chi_mod(k);
    for (class_id l = 0; l < k; ++l) {
      chi_mod[l] = static_cast<std::uint64_t>(degree) * w[l] % p *
                   detail::inv_mod(table.classes[l].size % p, p) % p;
    }
    RawCharacter ch{degree, {}};
    for (class_id l = 0; l < k; ++l) {
      std::uint64_t o = table.classes[l].element_order;
      std::uint64_t zo = detail::pow_mod(z, e / o, p);
      std::uint64_t inv_o = detail::inv_mod(o % p, p);
      std::vector<std::int64_t> mult(o, 0);
      std::int64_t count = 0;
      for (std::uint64_t sidx = 0; sidx < o; ++sidx) {
        // m_s = (1/o) sum_m chi(g^m) zo^(-m s)
        std::uint64_t acc = 0;
        std::uint64_t step = detail::pow_mod(zo, (o - sidx % o) % o, p);
        std::uint64_t pw = 1;
        for (std::uint64_t m = 0; m < o; ++m) {
          acc = (acc + chi_mod[power_class[l][m]] * pw) % p;
          pw = pw * step % p;
        }
        acc = acc * inv_o % p;
        if (acc > static_cast<std::uint64_t>(degree)) {
          throw InternalError("eigenvalue multiplicity out of range on class " + table.classes[l].name);
        }
        mult[sidx] = static_cast<std::int64_t>(acc);
        count += mult[sidx];
      }
      if (count != degree) throw InternalError("eigenvalue multiplicities do not sum to the degree");
      CyclotomicValue v = CyclotomicValue::from_powers(static_cast<std::uint32_t>(o), mult);
      if (v.mod_p(p, zo) != chi_mod[l]) throw InternalError("lifted value disagrees modulo p");
      ch.values.push_back(std::move(v));
    }
    chars.push_back(std::move(ch));
  }

  auto key = [e](RawCharacter const& c) {
    std::vector<std::int64_t> flat;
    for (auto const& v : c.values) {
      CyclotomicValue w = v.promote(static_cast<std::uint32_t>(e));
      flat.insert(flat.end(), w.coeffs().begin(), w.coeffs().end());
    }
    return flat;
  };
  auto is_trivial = [](RawCharacter const& c) {
    return c.degree == 1 && std::all_of(c.values.begin(), c.values.end(),
                                        [](CyclotomicValue const& v) { return v == CyclotomicValue(1); });
  };
  std::stable_sort(chars.begin(), chars.end(), [&](RawCharacter const& a, RawCharacter const& b) {
    bool ta = is_trivial(a), tb = is_trivial(b);
    if (ta != tb) return ta;
    if (a.degree != b.degree) return a.degree < b.degree;
    return key(a) < key(b);
  });
  for (auto& c : chars) {
    table.degrees.push_back(c.degree);
    table.values.push_back(std::move(c.values));
  }
  return table;
}

inline std::int64_t sum_of_squared_degrees(CharacterTable const& table) {
  std::int64_t s = 0;
  for (auto d : table.degrees) s += d * d;
  return s;
}

/// sum_C |C| chi_i(C) conj(chi_j(C))
inline CyclotomicValue row_inner_product(CharacterTable const& table, std::size_t i, std::size_t j) {
  CyclotomicValue s(0);
  for (std::size_t c = 0; c < table.classes.size(); ++c) {
    s += CyclotomicValue(static_cast<std::int64_t>(table.classes[c].size)) * table.values[i][c] *
         table.values[j][c].conj();
  }
  return s;
}

/// sum_chi chi(C_a) conj(chi(C_b))
inline CyclotomicValue column_inner_product(CharacterTable const& table, class_id a, class_id b) {
  CyclotomicValue s(0);
  for (std::size_t i = 0; i < table.size(); ++i) s += table.values[i][a] * table.values[i][b].conj();
  return s;
}

inline bool rows_orthogonal(CharacterTable const& table) {
  auto n = static_cast<std::int64_t>(table.group_order);
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = i; j < table.size(); ++j) {
      if (!(row_inner_product(table, i, j) == CyclotomicValue(i == j ? n : 0))) return false;
    }
  }
  return true;
}

inline bool columns_orthogonal(CharacterTable const& table) {
  auto n = static_cast<std::int64_t>(table.group_order);
  for (class_id a = 0; a < table.classes.size(); ++a) {
    for (class_id b = a; b < table.classes.size(); ++b) {
      std::int64_t expected = a == b ? n / static_cast<std::int64_t>(table.classes[a].size) : 0;
      if (!(column_inner_product(table, a, b) == CyclotomicValue(expected))) return false;
    }
  }
  return true;
}

}  // namespace diagspread
