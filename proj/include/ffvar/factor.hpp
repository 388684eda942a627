#pragma once

// Factorization in F_q[T] (squarefree, distinct-degree, equal-degree splitting),
// irreducibility, the von Mangoldt function, and irreducible counts.

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "ffvar/errors.hpp"
#include "ffvar/numeric.hpp"
#include "ffvar/poly.hpp"

namespace ffvar {

struct Factorization {
  FieldElem unit;
  std::vector<std::pair<Poly, int>> factors;  // monic irreducible, multiplicity

  Poly product(const FieldPtr& F) const {
    Poly r = Poly::constant(F, unit);
    for (const auto& [P, e] : factors) r = r * poly_pow(P, static_cast<unsigned>(e));
    return r;
  }
};

namespace detail {

inline Poly pth_root(const Poly& f) {
  const auto& F = f.F();
  const auto p = static_cast<int>(F.p());
  const std::uint64_t e = F.q() / F.p();  // a^(q/p) is the p-th root of a
  std::vector<FieldElem> v;
  for (int i = 0; i * p <= f.degree(); ++i) v.push_back(F.pow(f.coeff(i * p), e));
  return Poly(f.field(), std::move(v));
}

inline void squarefree_into(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
  if (f.degree() < 1) return;
  Poly g = f.derivative();
  if (g.is_zero()) {
    squarefree_into(pth_root(f), mult * static_cast<int>(f.F().p()), out);
    return;
  }
  Poly c = poly_gcd(f, g);
  Poly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    Poly y = poly_gcd(w, c);
    Poly fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.monic(), i * mult);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree_into(pth_root(c), mult * static_cast<int>(f.F().p()), out);
}

inline std::uint64_t digest(const Poly& f) {
  std::uint64_t h = splitmix64(f.F().q() * 1315423911ULL + static_cast<std::uint64_t>(f.degree()));
  for (auto c : f.coeffs()) h = splitmix64(h ^ c.code());
  return h;
}

/// Splits a squarefree monic f whose irreducible factors all have degree d.
inline std::vector<Poly> equal_degree_split(const Poly& f, int d) {
  if (f.degree() == d) return {f};
  const auto& F = f.F();
  const FieldPtr& Fp = f.field();
  const std::size_t want = static_cast<std::size_t>(f.degree() / d);
  std::mt19937_64 rng(digest(f));
  std::vector<Poly> parts{f};
  const bool odd = F.q() % 2 == 1;
  const BigInt half = (pow_big(F.q(), static_cast<std::uint64_t>(d)) - 1) / 2;
  while (parts.size() < want) {
    std::vector<FieldElem> rc(static_cast<std::size_t>(f.degree()));
    for (auto& c : rc) c = FieldElem(static_cast<std::uint32_t>(rng() % F.q()));
    Poly h(Fp, std::move(rc));
    if (h.degree() < 1) continue;
    Poly g(Fp);
    if (odd) {
      g = pow_mod(h, half, f) - Poly::one(Fp);
    } else {
      // absolute trace to F_2: h + h^2 + ... + h^(2^(k d - 1))
      Poly acc = h % f, term = h % f;
      for (int i = 1; i < F.k() * d; ++i) {
        term = mul_mod(term, term, f);
        acc = acc + term;
      }
      g = acc;
    }
    std::vector<Poly> next;
    for (auto& u : parts) {
      if (u.degree() == d) {
        next.push_back(u);
        continue;
      }
      Poly s = poly_gcd(g % u, u);
      if (s.degree() > 0 && s.degree() < u.degree()) {
        next.push_back(s);
        next.push_back(u / s);
      } else {
        next.push_back(u);
      }
    }
    parts = std::move(next);
  }
  return parts;
}

/// Distinct-degree factorization of a squarefree monic polynomial.
inline std::vector<std::pair<Poly, int>> distinct_degree(const Poly& f) {
  std::vector<std::pair<Poly, int>> out;
  const FieldPtr& F = f.field();
  Poly rest = f;
  Poly tpoly = Poly::t(F);
  Poly h = tpoly % rest;
  for (int i = 1; rest.degree() >= 2 * i; ++i) {
    h = pow_mod(h, F->q(), rest);
    Poly g = poly_gcd(rest, h - tpoly);
    if (g.degree() > 0) {
      out.emplace_back(g, i);
      rest = rest / g;
      h = h % rest;
    }
  }
  if (rest.degree() > 0) out.emplace_back(rest, rest.degree());
  return out;
}

}  // namespace detail

/// Canonical factorization: monic irreducible factors sorted by (degree, coefficients).
inline Factorization factorize(const Poly& f) {
  require(!f.is_zero(), "cannot factor the zero polynomial");
  Factorization out;
  out.unit = f.lead();
  Poly m = f.monic();
  std::vector<std::pair<Poly, int>> sqf;
  detail::squarefree_into(m, 1, sqf);
  for (const auto& [part, mult] : sqf) {
    for (const auto& [block, d] : detail::distinct_degree(part)) {
      for (auto& P : detail::equal_degree_split(block, d)) out.factors.emplace_back(P.monic(), mult);
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  // Merge equal primes coming from different squarefree layers.
  std::vector<std::pair<Poly, int>> merged;
  for (auto& fe : out.factors) {
    if (!merged.empty() && merged.back().first == fe.first) {
      merged.back().second += fe.second;
    } else {
      merged.push_back(std::move(fe));
    }
  }
  out.factors = std::move(merged);
  return out;
}

/// Rabin's test over F_q.
inline bool is_irreducible(const Poly& f) {
  const int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  Poly m = f.monic();
  const FieldPtr& F = m.field();
  Poly tpoly = Poly::t(F);
  std::vector<Poly> frob{tpoly % m};  // frob[i] = T^(q^i) mod m
  for (int i = 1; i <= n; ++i) frob.push_back(pow_mod(frob.back(), F->q(), m));
  if (frob[static_cast<std::size_t>(n)] != tpoly % m) return false;
  for (auto [l, e] : factor_u64(static_cast<std::uint64_t>(n))) {
    (void)e;
    Poly g = poly_gcd(m, frob[static_cast<std::size_t>(n / static_cast<int>(l))] - tpoly);
    if (g.degree() != 0) return false;
  }
  return true;
}

inline bool is_squarefree(const Poly& f) {
  require(!f.is_zero(), "squarefree test of zero");
  if (f.degree() < 1) return true;
  Poly d = f.derivative();
  if (d.is_zero()) return false;
  return poly_gcd(f, d).degree() == 0;
}

/// Λ(f) = deg P when f = c P^k, otherwise 0.
inline int von_mangoldt(const Poly& f) {
  require(!f.is_zero(), "von Mangoldt of the zero polynomial");
  if (f.degree() < 1) return 0;
  Poly m = f.monic();
  Poly d = m.derivative();
  if (!d.is_zero() && poly_gcd(m, d).degree() == 0) return is_irreducible(m) ? m.degree() : 0;
  auto fac = factorize(m);
  return fac.factors.size() == 1 ? fac.factors.front().first.degree() : 0;
}

/// Distinct monic prime divisors of f, canonical order.
inline std::vector<Poly> prime_divisors(const Poly& f) {
  std::vector<Poly> out;
  for (auto& [P, e] : factorize(f).factors) out.push_back(P);
  return out;
}

/// π_q(n) = (1/n) Σ_{d|n} μ(d) q^{n/d}.
inline BigInt count_irreducibles(std::uint64_t q, int n) {
  require(n >= 1, "degree must be >= 1");
  BigInt s = 0;
  for (auto d : divisors(static_cast<std::uint64_t>(n))) {
    int mu = mobius(d);
    if (mu != 0) s += mu * pow_big(q, static_cast<std::uint64_t>(n) / d);
  }
  return s / n;
}

inline BigInt count_irreducibles(const Field& F, int n) { return count_irreducibles(F.q(), n); }

}  // namespace ffvar
