#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "diagspread/errors.hpp"

namespace diagspread {

namespace detail {

using Poly = std::vector<std::int64_t>;  // ascending coefficients

// Exact division of a by a monic b; the remainder must vanish.
inline Poly exact_divide(Poly a, Poly const& b) {
  std::size_t db = b.size() - 1;
  Poly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    std::int64_t c = a[i];
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (std::size_t i = 0; i < db; ++i) {
    if (a[i] != 0) throw InternalError("inexact cyclotomic division");
  }
  return q;
}

inline Poly const& cyclotomic_polynomial(std::uint32_t n) {
  static std::mutex mu;
  static std::map<std::uint32_t, Poly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // x^n - 1 divided by Phi_d for the proper divisors d of n
  Poly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (std::uint32_t d = 1; d < n; ++d) {
    if (n % d == 0) p = exact_divide(std::move(p), cyclotomic_polynomial(d));
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, std::move(p)).first->second;
}

// Reduces a polynomial modulo the monic polynomial m in place.
inline void reduce_mod(Poly& a, Poly const& m) {
  std::size_t dm = m.size() - 1;
  for (std::size_t i = a.size(); i-- > dm;) {
    std::int64_t c = a[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dm; ++j) a[i - dm + j] -= c * m[j];
  }
  a.resize(dm, 0);
}

}  // namespace detail

/// An element of Z[z_e], z_e = exp(2 pi i / e), in the power basis
/// 1, z, ..., z^(phi(e)-1). Values of different orders compare equal when
/// they agree after promotion to a common order.
class CyclotomicValue {
 public:
  CyclotomicValue() : CyclotomicValue(0) {}

  /// A rational integer.
  CyclotomicValue(std::int64_t n) : order_(1), coeffs_{n} {}  // NOLINT: implicit by design

  /// The value of sum_k c[k] z_e^k, for any number of coefficients.
  static CyclotomicValue from_powers(std::uint32_t e, std::vector<std::int64_t> const& c) {
    if (e == 0) throw PreconditionViolation("root-of-unity order must be positive");
    detail::Poly folded(e, 0);
    for (std::size_t k = 0; k < c.size(); ++k) folded[k % e] += c[k];
    detail::reduce_mod(folded, detail::cyclotomic_polynomial(e));
    CyclotomicValue v;
    v.order_ = e;
    v.coeffs_ = std::move(folded);
    return v;
  }

  /// z_e^k
  static CyclotomicValue root_of_unity(std::uint32_t e, std::int64_t k) {
    if (e == 0) throw PreconditionViolation("root-of-unity order must be positive");
    std::vector<std::int64_t> c(e, 0);
    c[static_cast<std::size_t>(((k % e) + e) % e)] = 1;
    return from_powers(e, c);
  }

  std::uint32_t order() const noexcept { return order_; }
  std::vector<std::int64_t> const& coeffs() const noexcept { return coeffs_; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c == 0; });
  }

  /// The same number written over z_f for a multiple f of the order.
  CyclotomicValue promote(std::uint32_t f) const {
    if (f % order_ != 0) throw PreconditionViolation("promotion target is not a multiple of the order");
    if (f == order_) return *this;
    std::uint32_t step = f / order_;
    std::vector<std::int64_t> c(f, 0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k * step] += coeffs_[k];
    return from_powers(f, c);
  }

  /// Complex conjugate: z -> z^-1.
  CyclotomicValue conj() const {
    std::vector<std::int64_t> c(order_, 0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) c[(order_ - k) % order_] += coeffs_[k];
    return from_powers(order_, c);
  }

  std::optional<std::int64_t> as_integer() const {
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
      if (coeffs_[k] != 0) return std::nullopt;
    }
    return coeffs_.empty() ? 0 : coeffs_[0];
  }

  std::complex<double> to_complex() const {
    std::complex<double> s = 0;
    double const tau = 6.283185307179586476925286766559;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      s += static_cast<double>(coeffs_[k]) * std::polar(1.0, tau * static_cast<double>(k) / order_);
    }
    return s;
  }

  /// Image under z_e -> root, for a ring map Z[z_e] -> F_p.
  std::uint64_t mod_p(std::uint64_t p, std::uint64_t root) const {
    std::uint64_t s = 0, pw = 1;
    for (std::int64_t c : coeffs_) {
      std::int64_t r = c % static_cast<std::int64_t>(p);
      if (r < 0) r += static_cast<std::int64_t>(p);
      s = (s + static_cast<std::uint64_t>(r) * pw) % p;
      pw = pw * root % p;
    }
    return s;
  }

  /// Integer combination of powers of z_e, e.g. "-1 - z5^2 - z5^3".
  std::string to_string() const {
    if (auto n = as_integer()) return std::to_string(*n);
    std::string out;
    std::string z = "z" + std::to_string(order_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      std::int64_t c = coeffs_[k];
      if (c == 0) continue;
      std::int64_t mag = c < 0 ? -c : c;
      if (out.empty()) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      if (k == 0) {
        out += std::to_string(mag);
        continue;
      }
      if (mag != 1) out += std::to_string(mag) + "*";
      out += z;
      if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
  }

  friend CyclotomicValue operator+(CyclotomicValue const& a, CyclotomicValue const& b) {
    return combine(a, b, 1);
  }
  friend CyclotomicValue operator-(CyclotomicValue const& a, CyclotomicValue const& b) {
    return combine(a, b, -1);
  }
  friend CyclotomicValue operator-(CyclotomicValue const& a) { return combine(CyclotomicValue(0), a, -1); }

  friend CyclotomicValue operator*(CyclotomicValue const& a, CyclotomicValue const& b) {
    std::uint32_t f = std::lcm(a.order_, b.order_);
    CyclotomicValue x = a.promote(f), y = b.promote(f);
    std::vector<std::int64_t> c(x.coeffs_.size() + y.coeffs_.size(), 0);
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
      if (x.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < y.coeffs_.size(); ++j) c[i + j] += x.coeffs_[i] * y.coeffs_[j];
    }
    return from_powers(f, c);
  }

  CyclotomicValue& operator+=(CyclotomicValue const& b) { return *this = *this + b; }
  CyclotomicValue& operator*=(CyclotomicValue const& b) { return *this = *this * b; }

  friend bool operator==(CyclotomicValue const& a, CyclotomicValue const& b) {
    std::uint32_t f = std::lcm(a.order_, b.order_);
    return a.promote(f).coeffs_ == b.promote(f).coeffs_;
  }

 private:
  static CyclotomicValue combine(CyclotomicValue const& a, CyclotomicValue const& b, std::int64_t sign) {
    std::uint32_t f = std::lcm(a.order_, b.order_);
    CyclotomicValue x = a.promote(f), y = b.promote(f);
    for (std::size_t k = 0; k < x.coeffs_.size(); ++k) x.coeffs_[k] += sign * y.coeffs_[k];
    return x;
  }

  std::uint32_t order_;
  std::vector<std::int64_t> coeffs_;
};

}  // namespace diagspread
