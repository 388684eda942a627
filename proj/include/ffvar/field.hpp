#pragma once

// Exact arithmetic in F_q, q = p^k.
//
// Elements are stored as a single integer code: the coordinates
// (c_0, ..., c_{k-1}) with respect to the power basis of the modulus are the
// base-p digits of the code, c_0 least significant. For prime fields the code
// is the residue itself.

#include <cmath>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ffvar/errors.hpp"
#include "ffvar/numeric.hpp"

namespace ffvar {

inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 31;
inline constexpr std::uint64_t kMaxTabulatedField = 1'000'000;

class FieldElem {
 public:
  constexpr FieldElem() = default;
  constexpr explicit FieldElem(std::uint32_t code) : code_(code) {}
  constexpr std::uint32_t code() const { return code_; }
  constexpr bool is_zero() const { return code_ == 0; }
  friend constexpr bool operator==(FieldElem, FieldElem) = default;
  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;

 private:
  std::uint32_t code_ = 0;
};

struct FieldSpec {
  std::uint64_t p = 0;
  int k = 0;
  /// Monic irreducible of degree k over F_p, constant term first; empty when k == 1.
  std::vector<std::uint32_t> modulus;
  std::uint64_t q = 0;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

  std::string tag() const { return std::to_string(p) + "^" + std::to_string(k); }
};

namespace detail {

// Dense polynomials over F_p, constant first, used before a Field exists.
using PrimePoly = std::vector<std::uint64_t>;

inline void trim(PrimePoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  // p is prime, a != 0
  std::uint64_t r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline PrimePoly mul_mod_p(const PrimePoly& a, const PrimePoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PrimePoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

inline PrimePoly rem_mod_p(PrimePoly a, const PrimePoly& m, std::uint64_t p) {
  trim(a);
  std::uint64_t lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    std::uint64_t c = a.back() * lead_inv % p;
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - c * m[i] % p) % p;
    }
    trim(a);
  }
  return a;
}

inline PrimePoly gcd_mod_p(PrimePoly a, PrimePoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = rem_mod_p(a, b, p);
    std::swap(a, b);
  }
  return a;
}

/// x^(p^e) mod m, computed by e successive p-th powerings.
inline PrimePoly frobenius_power_mod_p(const PrimePoly& m, std::uint64_t p, int e) {
  PrimePoly x{0, 1};
  x = rem_mod_p(x, m, p);
  for (int i = 0; i < e; ++i) {
    PrimePoly base = x, r{1};
    std::uint64_t n = p;
    while (n) {
      if (n & 1) r = rem_mod_p(mul_mod_p(r, base, p), m, p);
      base = rem_mod_p(mul_mod_p(base, base, p), m, p);
      n >>= 1;
    }
    x = r;
  }
  return x;
}

/// Rabin's irreducibility test for a monic polynomial over F_p.
inline bool is_irreducible_mod_p(const PrimePoly& m, std::uint64_t p) {
  int k = static_cast<int>(m.size()) - 1;
  if (k < 1) return false;
  if (k == 1) return true;
  PrimePoly x{0, 1};
  if (rem_mod_p(frobenius_power_mod_p(m, p, k), m, p) != rem_mod_p(x, m, p)) return false;
  for (auto [l, e] : factor_u64(static_cast<std::uint64_t>(k))) {
    (void)e;
    PrimePoly h = frobenius_power_mod_p(m, p, k / static_cast<int>(l));
    // h - x
    if (h.size() < 2) h.resize(2, 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    PrimePoly g = gcd_mod_p(m, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  /// Validates (p, k, modulus). With k > 1 and no modulus, picks the
  /// lexicographically least monic irreducible, comparing constant terms first.
  static FieldPtr make(std::uint64_t p, int k = 1,
                       std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
    require(k >= 1, "extension degree must be >= 1");
    require(is_prime_u64(p), "characteristic " + std::to_string(p) + " is not prime");
    auto q = pow_capped(p, static_cast<std::uint64_t>(k), kMaxFieldSize);
    if (!q) throw ValidationError("field size exceeds 2^31");
    FieldSpec spec;
    spec.p = p;
    spec.k = k;
    spec.q = *q;
    if (k > 1) {
      if (modulus) {
        const auto& m = *modulus;
        require(m.size() == static_cast<std::size_t>(k) + 1, "modulus must have degree k");
        require(m.back() == 1, "modulus must be monic");
        detail::PrimePoly mp;
        for (auto c : m) {
          require(c < p, "modulus coefficient out of range");
          mp.push_back(c);
        }
        require(detail::is_irreducible_mod_p(mp, p), "modulus is reducible over F_p");
        spec.modulus = m;
      } else {
        spec.modulus = least_irreducible(p, k);
      }
    } else {
      require(!modulus || modulus->empty() || modulus->size() == 2,
              "prime field takes no modulus of degree != 1");
    }
    return FieldPtr(new Field(std::move(spec)));
  }

  /// Field of order q (prime or prime power) with the default modulus.
  static FieldPtr of_order(std::uint64_t q) {
    auto pk = prime_power(q);
    if (!pk) throw ValidationError("q = " + std::to_string(q) + " is not a prime power");
    return make(pk->first, pk->second);
  }

  const FieldSpec& spec() const { return spec_; }
  std::uint64_t p() const { return spec_.p; }
  int k() const { return spec_.k; }
  std::uint64_t q() const { return spec_.q; }
  std::uint32_t q32() const { return static_cast<std::uint32_t>(spec_.q); }

  FieldElem zero() const { return FieldElem(0); }
  FieldElem one() const { return FieldElem(1); }
  FieldElem elem(std::uint64_t code) const {
    require(code < spec_.q, "field element code out of range");
    return FieldElem(static_cast<std::uint32_t>(code));
  }
  /// Image of an integer in the prime subfield.
  FieldElem from_int(std::int64_t v) const {
    auto p = static_cast<std::int64_t>(spec_.p);
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return FieldElem(static_cast<std::uint32_t>(r));
  }

  std::vector<std::uint32_t> coords(FieldElem x) const {
    std::vector<std::uint32_t> c(static_cast<std::size_t>(spec_.k));
    std::uint64_t v = x.code();
    for (auto& d : c) {
      d = static_cast<std::uint32_t>(v % spec_.p);
      v /= spec_.p;
    }
    return c;
  }
  FieldElem from_coords(const std::vector<std::uint32_t>& c) const {
    require(c.size() == static_cast<std::size_t>(spec_.k), "wrong coordinate count");
    std::uint64_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      require(c[i] < spec_.p, "coordinate out of range");
      v = v * spec_.p + c[i];
    }
    return FieldElem(static_cast<std::uint32_t>(v));
  }

  FieldElem add(FieldElem a, FieldElem b) const {
    if (spec_.k == 1) {
      std::uint64_t s = std::uint64_t{a.code()} + b.code();
      if (s >= spec_.p) s -= spec_.p;
      return FieldElem(static_cast<std::uint32_t>(s));
    }
    if (!add_table_.empty()) return FieldElem(add_table_[std::size_t{a.code()} * spec_.q + b.code()]);
    return FieldElem(digitwise(a.code(), b.code(), false));
  }
  FieldElem neg(FieldElem a) const {
    if (a.is_zero()) return a;
    if (spec_.k == 1) return FieldElem(static_cast<std::uint32_t>(spec_.p - a.code()));
    return FieldElem(digitwise(0, a.code(), true));
  }
  FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

  FieldElem mul(FieldElem a, FieldElem b) const {
    if (a.is_zero() || b.is_zero()) return zero();
    if (spec_.k == 1) {
      return FieldElem(static_cast<std::uint32_t>(std::uint64_t{a.code()} * b.code() % spec_.p));
    }
    if (!log_.empty()) return FieldElem(exp_[std::size_t{log_[a.code()]} + log_[b.code()]]);
    return mul_generic(a, b);
  }

  FieldElem pow(FieldElem a, std::uint64_t e) const {
    FieldElem r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  FieldElem inv(FieldElem a) const {
    require(!a.is_zero(), "inverse of zero");
    if (spec_.k == 1) return FieldElem(static_cast<std::uint32_t>(detail::inv_mod(a.code(), spec_.p)));
    if (!log_.empty()) {
      std::uint32_t l = log_[a.code()];
      return FieldElem(exp_[l == 0 ? 0 : (spec_.q - 1) - l]);
    }
    return pow(a, spec_.q - 2);
  }

  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

  /// Multiplicative order of a nonzero element.
  std::uint64_t order(FieldElem a) const {
    require(!a.is_zero(), "order of zero");
    std::uint64_t n = spec_.q - 1;
    for (auto [l, e] : factor_u64(spec_.q - 1)) {
      for (int i = 0; i < e; ++i) {
        if (pow(a, n / l) == one()) {
          n /= l;
        } else {
          break;
        }
      }
    }
    return n;
  }

  bool is_generator(FieldElem g) const { return !g.is_zero() && order(g) == spec_.q - 1; }

  /// Least-code generator of F_q^x.
  FieldElem generator() const { return generator_; }

  friend bool operator==(const Field& a, const Field& b) { return a.spec_ == b.spec_; }

 private:
  explicit Field(FieldSpec spec) : spec_(std::move(spec)) {
    if (spec_.k > 1 && spec_.q <= 1024) build_add_table();
    generator_ = find_generator();
    if (spec_.k > 1 && spec_.q <= kMaxTabulatedField) build_log_tables();
  }

  static std::vector<std::uint32_t> least_irreducible(std::uint64_t p, int k) {
    // Enumerate monic degree-k polynomials with c_0 the most significant digit.
    std::uint64_t count = pow_u64(p, static_cast<std::uint64_t>(k));
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      detail::PrimePoly m(static_cast<std::size_t>(k) + 1, 0);
      std::uint64_t v = idx;
      for (int i = k - 1; i >= 0; --i) {
        m[static_cast<std::size_t>(i)] = v % p;
        v /= p;
      }
      m[static_cast<std::size_t>(k)] = 1;
      if (m[0] == 0) continue;
      if (detail::is_irreducible_mod_p(m, p)) {
        return std::vector<std::uint32_t>(m.begin(), m.end());
      }
    }
    throw InternalError("no irreducible polynomial found");
  }

  std::uint32_t digitwise(std::uint32_t a, std::uint32_t b, bool negate_b) const {
    std::uint64_t p = spec_.p, r = 0, scale = 1;
    std::uint64_t x = a, y = b;
    for (int i = 0; i < spec_.k; ++i) {
      std::uint64_t da = x % p, db = y % p;
      x /= p;
      y /= p;
      if (negate_b) db = (p - db) % p;
      r += ((da + db) % p) * scale;
      scale *= p;
    }
    return static_cast<std::uint32_t>(r);
  }

  FieldElem mul_generic(FieldElem a, FieldElem b) const {
    detail::PrimePoly pa, pb, m(spec_.modulus.begin(), spec_.modulus.end());
    for (auto c : coords(a)) pa.push_back(c);
    for (auto c : coords(b)) pb.push_back(c);
    detail::trim(pa);
    detail::trim(pb);
    auto r = detail::rem_mod_p(detail::mul_mod_p(pa, pb, spec_.p), m, spec_.p);
    std::uint64_t v = 0;
    for (std::size_t i = r.size(); i-- > 0;) v = v * spec_.p + r[i];
    return FieldElem(static_cast<std::uint32_t>(v));
  }

  void build_add_table() {
    add_table_.resize(spec_.q * spec_.q);
    for (std::uint64_t a = 0; a < spec_.q; ++a) {
      for (std::uint64_t b = 0; b < spec_.q; ++b) {
        add_table_[a * spec_.q + b] =
            digitwise(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), false);
      }
    }
  }

  FieldElem find_generator() const {
    if (spec_.q == 2) return one();
    for (std::uint64_t c = 1; c < spec_.q; ++c) {
      FieldElem g(static_cast<std::uint32_t>(c));
      if (order(g) == spec_.q - 1) return g;
    }
    throw InternalError("no generator of F_q^x");
  }

  void build_log_tables() {
    std::uint64_t n = spec_.q - 1;
    exp_.resize(2 * n);
    log_.assign(spec_.q, 0);
    FieldElem x = one();
    for (std::uint64_t i = 0; i < n; ++i) {
      exp_[i] = x.code();
      log_[x.code()] = static_cast<std::uint32_t>(i);
      x = mul_generic(x, generator_);
    }
    for (std::uint64_t i = n; i < 2 * n; ++i) exp_[i] = exp_[i - n];
  }

  FieldSpec spec_;
  FieldElem generator_;
  std::vector<std::uint32_t> add_table_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

inline FieldPtr field_make(std::uint64_t p, int k = 1,
                           std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
  return Field::make(p, k, std::move(modulus));
}

inline FieldElem field_inv(const Field& F, FieldElem x) { return F.inv(x); }

/// Baby-step giant-step discrete logarithm: e in [0, q-1) with g^e = x.
inline std::uint64_t field_dlog(const Field& F, FieldElem g, FieldElem x) {
  require(!x.is_zero(), "discrete log of zero");
  require(F.is_generator(g), "base is not a generator of F_q^x");
  std::uint64_t n = F.q() - 1;
  auto m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  if (m == 0) m = 1;
  std::unordered_map<std::uint32_t, std::uint64_t> baby;
  baby.reserve(m * 2);
  FieldElem cur = F.one();
  for (std::uint64_t j = 0; j < m; ++j) {
    baby.emplace(cur.code(), j);
    cur = F.mul(cur, g);
  }
  FieldElem giant = F.inv(F.pow(g, m));
  FieldElem y = x;
  for (std::uint64_t i = 0; i <= m; ++i) {
    auto it = baby.find(y.code());
    if (it != baby.end()) return (i * m + it->second) % n;
    y = F.mul(y, giant);
  }
  throw InternalError("discrete log not found");
}

}  // namespace ffvar
