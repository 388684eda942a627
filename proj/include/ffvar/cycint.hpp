#pragma once

// Exact elements of Z[ζ_M]: position a holds the multiplicity of exp(2πi a/M).
// The representation modulo x^M - 1 is redundant; normalized() reduces modulo
// the cyclotomic polynomial Φ_M, which gives a canonical form.

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <vector>

#include "ffvar/errors.hpp"
#include "ffvar/numeric.hpp"

namespace ffvar {

namespace detail {

inline std::vector<BigInt> poly_mul_int(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  std::vector<BigInt> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// Exact division by a monic divisor.
inline std::vector<BigInt> poly_div_int(std::vector<BigInt> a, const std::vector<BigInt>& m) {
  std::vector<BigInt> quot(a.size() - m.size() + 1, 0);
  for (std::size_t i = a.size(); i-- >= m.size();) {
    BigInt c = a[i];
    quot[i - (m.size() - 1)] = c;
    if (c != 0) {
      for (std::size_t j = 0; j < m.size(); ++j) a[i - (m.size() - 1) + j] -= c * m[j];
    }
    if (i == m.size() - 1) break;
  }
  for (auto& x : a) check_internal(x == 0, "inexact cyclotomic division");
  return quot;
}

}  // namespace detail

/// Integer coefficients of the M-th cyclotomic polynomial, constant first.
inline const std::vector<BigInt>& cyclotomic_poly(std::uint64_t M) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const std::vector<BigInt>>> memo;
  std::lock_guard lock(mu);
  auto it = memo.find(M);
  if (it != memo.end()) return *it->second;
  std::vector<BigInt> num{1}, den{1};
  for (auto d : divisors(M)) {
    int mu_v = mobius(M / d);
    if (mu_v == 0) continue;
    std::vector<BigInt> factor(d + 1, 0);  // x^d - 1
    factor[0] = -1;
    factor[d] = 1;
    if (mu_v == 1) {
      num = detail::poly_mul_int(num, factor);
    } else {
      den = detail::poly_mul_int(den, factor);
    }
  }
  // den is (-1)^s times a monic polynomial; normalize sign so division is by a monic.
  BigInt lead = den.back();
  if (lead < 0) {
    for (auto& x : den) x = -x;
    for (auto& x : num) x = -x;
  }
  auto result = std::make_shared<const std::vector<BigInt>>(detail::poly_div_int(num, den));
  return *memo.emplace(M, result).first->second;
}

class CycInt {
 public:
  CycInt() : CycInt(1) {}
  explicit CycInt(std::uint64_t order) : coeffs_(static_cast<std::size_t>(order), 0) {
    require(order >= 1, "cyclotomic order must be >= 1");
  }

  static CycInt from_int(std::uint64_t order, std::int64_t v) {
    CycInt c(order);
    c.coeffs_[0] = v;
    return c;
  }
  /// ζ_M^a
  static CycInt root(std::uint64_t order, std::uint64_t a) {
    CycInt c(order);
    c.coeffs_[a % order] = 1;
    return c;
  }

  std::uint64_t order() const { return coeffs_.size(); }
  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  std::int64_t operator[](std::size_t a) const { return coeffs_[a]; }

  void add_root(std::uint64_t a, std::int64_t mult = 1) { coeffs_[a % order()] += mult; }

  /// Re-expressed in Z[ζ_L] for L a multiple of the current order.
  CycInt lifted(std::uint64_t L) const {
    require(L % order() == 0, "lift order must be a multiple");
    CycInt r(L);
    const std::uint64_t s = L / order();
    for (std::size_t a = 0; a < coeffs_.size(); ++a) r.coeffs_[a * s] = coeffs_[a];
    return r;
  }

  CycInt conj() const {
    CycInt r(order());
    const std::size_t M = coeffs_.size();
    for (std::size_t a = 0; a < M; ++a) r.coeffs_[(M - a) % M] = coeffs_[a];
    return r;
  }

  CycInt& operator+=(const CycInt& o) {
    same_order(o);
    for (std::size_t a = 0; a < coeffs_.size(); ++a) coeffs_[a] += o.coeffs_[a];
    return *this;
  }
  CycInt& operator-=(const CycInt& o) {
    same_order(o);
    for (std::size_t a = 0; a < coeffs_.size(); ++a) coeffs_[a] -= o.coeffs_[a];
    return *this;
  }
  CycInt& operator*=(std::int64_t s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  friend CycInt operator*(CycInt a, std::int64_t s) { return a *= s; }
  friend CycInt operator-(CycInt a) { return a *= -1; }

  friend CycInt operator*(const CycInt& a, const CycInt& b) {
    a.same_order(b);
    const std::size_t M = a.coeffs_.size();
    CycInt r(M);
    auto nb = b.support();
    for (std::size_t i = 0; i < M; ++i) {
      const std::int64_t x = a.coeffs_[i];
      if (!x) continue;
      for (std::size_t j : nb) {
        std::size_t k = i + j;
        if (k >= M) k -= M;
        r.coeffs_[k] += x * b.coeffs_[j];
      }
    }
    return r;
  }

  /// acc += x * conj(x), the exact |x|^2.
  static void add_abs_square(CycInt& acc, const CycInt& x) {
    acc.same_order(x);
    const std::size_t M = x.coeffs_.size();
    auto nz = x.support();
    for (std::size_t i : nz) {
      const std::int64_t xi = x.coeffs_[i];
      for (std::size_t j : nz) {
        std::size_t k = i >= j ? i - j : i + M - j;
        acc.coeffs_[k] += xi * x.coeffs_[j];
      }
    }
  }

  CycInt abs_square() const {
    CycInt acc(order());
    add_abs_square(acc, *this);
    return acc;
  }

  /// Canonical representative modulo Φ_M: coefficients of degree < φ(M).
  std::vector<BigInt> canonical() const {
    const auto& phi = cyclotomic_poly(order());
    std::vector<BigInt> r(coeffs_.begin(), coeffs_.end());
    const std::size_t dm = phi.size() - 1;
    for (std::size_t i = r.size(); i-- > dm;) {
      if (r[i] == 0) continue;
      BigInt c = r[i];
      for (std::size_t j = 0; j <= dm; ++j) r[i - dm + j] -= c * phi[j];
    }
    r.resize(dm);
    return r;
  }

  CycInt normalized() const {
    auto c = canonical();
    CycInt r(order());
    for (std::size_t i = 0; i < c.size(); ++i) {
      check_internal(c[i] >= std::numeric_limits<std::int64_t>::min() &&
                         c[i] <= std::numeric_limits<std::int64_t>::max(),
                     "cyclotomic coefficient overflow");
      r.coeffs_[i] = static_cast<std::int64_t>(c[i]);
    }
    return r;
  }

  /// The value as a rational integer, if it is one.
  std::optional<BigInt> as_integer() const {
    auto c = canonical();
    for (std::size_t i = 1; i < c.size(); ++i) {
      if (c[i] != 0) return std::nullopt;
    }
    return c.empty() ? BigInt(0) : c[0];
  }

  bool is_zero() const {
    for (auto& x : canonical()) {
      if (x != 0) return false;
    }
    return true;
  }

  friend bool operator==(const CycInt& a, const CycInt& b) {
    std::uint64_t L = lcm_u64(a.order(), b.order());
    return (a.lifted(L) - b.lifted(L)).is_zero();
  }

  std::complex<double> to_complex() const {
    std::complex<double> s = 0;
    const double M = static_cast<double>(order());
    for (std::size_t a = 0; a < coeffs_.size(); ++a) {
      if (!coeffs_[a]) continue;
      double ang = 2.0 * std::numbers::pi * static_cast<double>(a) / M;
      s += static_cast<double>(coeffs_[a]) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s;
  }

 private:
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> nz;
    for (std::size_t a = 0; a < coeffs_.size(); ++a) {
      if (coeffs_[a]) nz.push_back(a);
    }
    return nz;
  }
  void same_order(const CycInt& o) const {
    require(order() == o.order(), "cyclotomic orders differ");
  }

  std::vector<std::int64_t> coeffs_;
};

}  // namespace ffvar
