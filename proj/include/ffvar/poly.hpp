#pragma once

// Univariate polynomials over F_q: arithmetic, codes, and the text format.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ffvar/errors.hpp"
#include "ffvar/field.hpp"
#include "ffvar/numeric.hpp"

namespace ffvar {

class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr field) : field_(std::move(field)) {}
  Poly(FieldPtr field, std::vector<FieldElem> coeffs)
      : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    trim();
  }

  static Poly constant(FieldPtr F, FieldElem c) { return Poly(std::move(F), {c}); }
  static Poly one(FieldPtr F) { return constant(std::move(F), FieldElem(1)); }
  static Poly monomial(FieldPtr F, FieldElem c, int degree) {
    std::vector<FieldElem> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return Poly(std::move(F), std::move(v));
  }
  static Poly t(FieldPtr F) { return monomial(std::move(F), FieldElem(1), 1); }

  const FieldPtr& field() const { return field_; }
  const Field& F() const { return *field_; }
  const std::vector<FieldElem>& coeffs() const { return coeffs_; }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  FieldElem lead() const { return coeffs_.empty() ? FieldElem(0) : coeffs_.back(); }
  FieldElem coeff(int i) const {
    return (i < 0 || i > degree()) ? FieldElem(0) : coeffs_[static_cast<std::size_t>(i)];
  }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == FieldElem(1); }
  FieldElem at_zero() const { return coeff(0); }

  FieldElem eval(FieldElem x) const {
    FieldElem r(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) r = F().add(F().mul(r, x), coeffs_[i]);
    return r;
  }

  Poly scaled(FieldElem c) const {
    std::vector<FieldElem> v(coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = F().mul(coeffs_[i], c);
    return Poly(field_, std::move(v));
  }

  Poly monic() const {
    require(!is_zero(), "zero polynomial has no monic associate");
    return is_monic() ? *this : scaled(F().inv(lead()));
  }

  Poly shifted(int k) const {  // multiply by T^k
    if (is_zero()) return *this;
    std::vector<FieldElem> v(static_cast<std::size_t>(k), FieldElem(0));
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return Poly(field_, std::move(v));
  }

  Poly derivative() const {
    std::vector<FieldElem> v;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
      v.push_back(F().mul(coeffs_[i], F().from_int(static_cast<std::int64_t>(i % F().p()))));
    }
    return Poly(field_, std::move(v));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    a.check_same(b);
    const auto& F = a.F();
    std::vector<FieldElem> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = F.add(i < a.coeffs_.size() ? a.coeffs_[i] : FieldElem(0),
                   i < b.coeffs_.size() ? b.coeffs_[i] : FieldElem(0));
    }
    return Poly(a.field_, std::move(v));
  }
  friend Poly operator-(const Poly& a) {
    std::vector<FieldElem> v(a.coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.F().neg(a.coeffs_[i]);
    return Poly(a.field_, std::move(v));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_same(b);
    if (a.is_zero() || b.is_zero()) return Poly(a.field_);
    const auto& F = a.F();
    std::vector<FieldElem> v(a.coeffs_.size() + b.coeffs_.size() - 1, FieldElem(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        v[i + j] = F.add(v[i + j], F.mul(a.coeffs_[i], b.coeffs_[j]));
      }
    }
    return Poly(a.field_, std::move(v));
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.coeffs_ == b.coeffs_ && same_field(a, b);
  }

  /// Canonical order: degree first, then coefficient codes from the constant term up.
  friend bool canonical_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin(),
                                        b.coeffs_.end());
  }

  static bool same_field(const Poly& a, const Poly& b) {
    if (a.field_ == b.field_) return true;
    if (!a.field_ || !b.field_) return false;
    return *a.field_ == *b.field_;
  }

  void check_same(const Poly& o) const {
    require(same_field(*this, o), "polynomials over different fields");
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  FieldPtr field_;
  std::vector<FieldElem> coeffs_;
};

struct DivMod {
  Poly quotient;
  Poly remainder;
};

inline DivMod poly_divmod(const Poly& f, const Poly& g) {
  f.check_same(g);
  require(!g.is_zero(), "division by the zero polynomial");
  const auto& F = f.F();
  const int dg = g.degree();
  if (f.degree() < dg) return {Poly(f.field()), f};
  std::vector<FieldElem> r = f.coeffs();
  std::vector<FieldElem> qv(static_cast<std::size_t>(f.degree() - dg) + 1, FieldElem(0));
  FieldElem lead_inv = F.inv(g.lead());
  for (int i = f.degree(); i >= dg; --i) {
    FieldElem c = r[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    c = F.mul(c, lead_inv);
    qv[static_cast<std::size_t>(i - dg)] = c;
    for (int j = 0; j <= dg; ++j) {
      auto& slot = r[static_cast<std::size_t>(i - dg + j)];
      slot = F.sub(slot, F.mul(c, g.coeffs()[static_cast<std::size_t>(j)]));
    }
  }
  r.resize(static_cast<std::size_t>(dg));
  return {Poly(f.field(), std::move(qv)), Poly(f.field(), std::move(r))};
}

inline Poly operator%(const Poly& f, const Poly& g) { return poly_divmod(f, g).remainder; }
inline Poly operator/(const Poly& f, const Poly& g) { return poly_divmod(f, g).quotient; }

/// Monic gcd (zero when both inputs are zero).
inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

inline Poly mul_mod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

inline Poly pow_mod(Poly base, BigInt e, const Poly& m) {
  Poly r = Poly::one(base.field()) % m;
  base = base % m;
  while (e > 0) {
    if ((e & 1) != 0) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return r;
}

inline Poly pow_mod(Poly base, std::uint64_t e, const Poly& m) {
  Poly r = Poly::one(base.field()) % m;
  base = base % m;
  while (e) {
    if (e & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return r;
}

inline Poly poly_pow(const Poly& base, unsigned e) {
  Poly r = Poly::one(base.field());
  for (unsigned i = 0; i < e; ++i) r = r * base;
  return r;
}

/// ||f|| = q^deg f, and ||0|| = 0.
inline BigInt poly_norm(const Poly& f) {
  return f.is_zero() ? BigInt(0) : pow_big(f.F().q(), static_cast<std::uint64_t>(f.degree()));
}

// ---- integer codes -------------------------------------------------------

/// Base-q code of a polynomial of degree < m (coefficient i is digit i).
inline std::uint64_t residue_code(const Poly& f) {
  std::uint64_t v = 0;
  const std::uint64_t q = f.F().q();
  for (std::size_t i = f.coeffs().size(); i-- > 0;) v = v * q + f.coeffs()[i].code();
  return v;
}

inline Poly poly_from_code(const FieldPtr& F, std::uint64_t code) {
  std::vector<FieldElem> v;
  const std::uint64_t q = F->q();
  while (code) {
    v.emplace_back(static_cast<std::uint32_t>(code % q));
    code /= q;
  }
  return Poly(F, std::move(v));
}

/// The idx-th monic polynomial of degree n: idx is the base-q code of the lower n coefficients.
inline Poly monic_from_index(const FieldPtr& F, int n, std::uint64_t idx) {
  std::vector<FieldElem> v(static_cast<std::size_t>(n) + 1);
  const std::uint64_t q = F->q();
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] = FieldElem(static_cast<std::uint32_t>(idx % q));
    idx /= q;
  }
  v.back() = FieldElem(1);
  return Poly(F, std::move(v));
}

inline std::uint64_t monic_index(const Poly& f) {
  require(f.is_monic(), "monic_index needs a monic polynomial");
  std::uint64_t v = 0;
  const std::uint64_t q = f.F().q();
  for (int i = f.degree() - 1; i >= 0; --i) v = v * q + f.coeffs()[static_cast<std::size_t>(i)].code();
  return v;
}

// ---- text format ---------------------------------------------------------

/// "T^3+2*T+1" over prime fields; constant-first code vector "[c0,...]" otherwise.
inline std::string to_text(const Poly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  if (f.F().k() > 1) {
    os << '[';
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
      if (i) os << ',';
      os << f.coeffs()[i].code();
    }
    os << ']';
    return os.str();
  }
  bool first = true;
  for (int i = f.degree(); i >= 0; --i) {
    auto c = f.coeff(i).code();
    if (c == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << c;
    } else {
      if (c != 1) os << c << '*';
      os << 'T';
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

/// Constant-first vector of element codes.
inline std::string to_vector_text(const Poly& f) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i) os << ',';
    os << f.coeffs()[i].code();
  }
  os << ']';
  return os.str();
}

namespace detail {

inline std::int64_t parse_int(std::string_view s, std::size_t& pos) {
  std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  require(pos > start, "expected an integer in polynomial text");
  std::int64_t v = 0;
  for (std::size_t i = start; i < pos; ++i) {
    v = v * 10 + (s[i] - '0');
    require(v < (std::int64_t{1} << 40), "integer too large in polynomial text");
  }
  return v;
}

}  // namespace detail

/// Parses either the expression form ("T^3+2*T+1", integers reduced into the
/// prime subfield) or the constant-first vector form ("[1,2,0,1]", entries are
/// element codes).
inline Poly parse_poly(const FieldPtr& F, std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  require(!s.empty(), "empty polynomial text");
  if (s.front() == '[') {
    require(s.back() == ']', "unterminated coefficient vector");
    std::vector<FieldElem> v;
    std::size_t pos = 1;
    if (s.size() > 2) {
      while (true) {
        std::int64_t c = detail::parse_int(s, pos);
        require(static_cast<std::uint64_t>(c) < F->q(), "coefficient code out of range");
        v.emplace_back(static_cast<std::uint32_t>(c));
        if (s[pos] == ']') break;
        require(s[pos] == ',', "expected ',' in coefficient vector");
        ++pos;
      }
      require(pos == s.size() - 1, "trailing characters after coefficient vector");
    }
    return Poly(F, std::move(v));
  }
  std::vector<std::int64_t> acc;
  auto add_term = [&](int deg, std::int64_t c) {
    if (acc.size() <= static_cast<std::size_t>(deg)) acc.resize(static_cast<std::size_t>(deg) + 1, 0);
    auto p = static_cast<std::int64_t>(F->p());
    acc[static_cast<std::size_t>(deg)] = ((acc[static_cast<std::size_t>(deg)] + c) % p + p) % p;
  };
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::int64_t sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
    } else {
      require(pos == 0, "expected '+' or '-' between terms");
    }
    require(pos < s.size(), "dangling sign in polynomial text");
    std::int64_t coef = 1;
    bool have_coef = false;
    if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
      coef = detail::parse_int(s, pos);
      have_coef = true;
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    int deg = 0;
    if (pos < s.size() && (s[pos] == 'T' || s[pos] == 't' || s[pos] == 'x')) {
      ++pos;
      deg = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        deg = static_cast<int>(detail::parse_int(s, pos));
      }
    } else {
      require(have_coef, "malformed polynomial term");
    }
    require(pos == s.size() || s[pos] == '+' || s[pos] == '-', "unexpected character in polynomial text");
    add_term(deg, sign * coef);
  }
  std::vector<FieldElem> v;
  for (auto c : acc) v.push_back(F->from_int(c));
  return Poly(F, std::move(v));
}

}  // namespace ffvar
