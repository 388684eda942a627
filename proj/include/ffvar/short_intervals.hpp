#pragma once

// Prime counts in short intervals I(A;h) and their variance, by direct
// enumeration and by even characters modulo T^(n-h).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffvar/characters.hpp"
#include "ffvar/enumerate.hpp"
#include "ffvar/errors.hpp"
#include "ffvar/exec.hpp"
#include "ffvar/lfunction.hpp"
#include "ffvar/numeric.hpp"

namespace ffvar {

/// ν(A;h) = Σ Λ(f) over f ∈ I(A;h) with f(0) ≠ 0.
inline std::int64_t nu(const Poly& A, int h, std::uint64_t enum_cap = ExecConfig{}.enum_cap) {
  require(A.is_monic(), "interval center must be monic");
  const int n = A.degree();
  require(h >= 1 && h < n, "need 1 <= h < deg A");
  auto lam = lambda_table(A.field(), n, enum_cap);
  const std::uint64_t q = A.F().q();
  const std::uint64_t block = pow_u64(q, static_cast<std::uint64_t>(h) + 1);
  const std::uint64_t base = monic_index(A) / block * block;
  std::int64_t s = 0;
  for (std::uint64_t g = 0; g < block; ++g) {
    if (g % q == 0) continue;
    s += (*lam)[base + g];
  }
  return s;
}

/// Ψ̃(n;Q,A): Σ Λ(f) over all f of degree n (any leading coefficient) with f ≡ A mod Q.
inline std::int64_t psi_tilde(int n, const Poly& Q, const Poly& A, std::uint64_t enum_cap = ExecConfig{}.enum_cap) {
  require(n >= 1, "n must be >= 1");
  require(Q.degree() >= 1, "modulus must have degree >= 1");
  require(poly_gcd(A, Q).degree() == 0 && !A.is_zero(), "A must be coprime to Q");
  const FieldPtr& F = Q.field();
  const std::uint64_t total = checked_count(F->q(), n, enum_cap, "psi_tilde");
  ResidueRing R(Q, enum_cap);
  auto lam = lambda_table(F, n, enum_cap);
  std::vector<std::int64_t> hist(R.size(), 0);
  R.for_each_monic_residue(n, 0, total, [&](std::uint64_t idx, std::uint64_t code) { hist[code] += (*lam)[idx]; });
  // c f ≡ A  ⇔  f ≡ c^{-1} A
  std::int64_t s = 0;
  for (std::uint64_t c = 1; c < F->q(); ++c) {
    const FieldElem ci = F->inv(FieldElem(static_cast<std::uint32_t>(c)));
    s += hist[R.code_of(A.scaled(ci))];
  }
  return s;
}

struct MeanPair {
  Rational exact;
  Rational formula;
};

/// ν(T^{h+1}B; h) for every B ∈ M_{n-h-1}, indexed by B.
inline std::vector<std::int64_t> nu_values(const FieldPtr& F, int n, int h, std::uint64_t enum_cap) {
  require(h >= 1 && h < n, "need 1 <= h < n");
  auto lam = lambda_table(F, n, enum_cap);
  const std::uint64_t q = F->q();
  const std::uint64_t block = pow_u64(q, static_cast<std::uint64_t>(h) + 1);
  const std::uint64_t count = pow_u64(q, static_cast<std::uint64_t>(n - h - 1));
  std::vector<std::int64_t> out(count, 0);
  for (std::uint64_t b = 0; b < count; ++b) {
    std::int64_t s = 0;
    for (std::uint64_t g = 0; g < block; ++g) {
      if (g % q) s += (*lam)[b * block + g];
    }
    out[b] = s;
  }
  return out;
}

inline Rational si_mean_formula(std::uint64_t q, int n, int h) {
  return Rational(pow_big(q, static_cast<std::uint64_t>(h) + 1)) *
         (1 - Rational(1, pow_big(q, static_cast<std::uint64_t>(n))));
}

inline MeanPair si_mean(std::uint64_t q, int n, int h, std::uint64_t enum_cap = ExecConfig{}.enum_cap) {
  require(h >= 1 && h < n, "need 1 <= h < n");
  auto F = Field::of_order(q);
  checked_count(q, n, enum_cap, "short-interval mean");
  auto v = nu_values(F, n, h, enum_cap);
  BigInt s = 0;
  for (auto x : v) s += x;
  return {Rational(s, BigInt(v.size())), si_mean_formula(q, n, h)};
}

enum class Method { direct, characters, both };

inline Method parse_method(const std::string& s) {
  if (s == "direct") return Method::direct;
  if (s == "characters") return Method::characters;
  if (s == "both") return Method::both;
  throw ValidationError("method must be direct, characters or both");
}

struct ShortIntervalReport {
  std::uint64_t q = 0;
  int n = 0, h = 0;
  Rational mean_exact, mean_formula;
  std::optional<Rational> variance_exact;           // direct enumeration
  std::optional<Rational> variance_by_characters;   // even-character sum
  int prediction = 0;                               // n - h - 2
  double normalized_variance = 0;                   // Var / q^{h+1}
  double deviation = 0;                             // |normalized / prediction - 1|, or |normalized| when prediction = 0
  bool theorem_regime = false;                      // h < n - 3
  std::uint64_t even_characters = 0;
};

inline Rational si_variance_direct(const FieldPtr& F, int n, int h, std::uint64_t enum_cap) {
  auto v = nu_values(F, n, h, enum_cap);
  BigInt s = 0, s2 = 0;
  for (auto x : v) {
    s += x;
    s2 += BigInt(x) * x;
  }
  const BigInt N = v.size();
  // (1/N) Σ (ν - μ)² = (N Σν² − (Σν)²) / N²
  return Rational(N * s2 - s * s, N * N);
}

inline Rational si_variance_characters(const FieldPtr& F, int n, int h, const ExecConfig& cfg,
                                       std::uint64_t* count_out = nullptr) {
  Poly mod = Poly::monomial(F, F->one(), n - h);
  auto fam = characters(unit_group(mod, cfg));
  auto idx = fam->select(true, 1, false);
  if (count_out) *count_out = idx.size();
  auto hist = lambda_histogram(fam->group(), n, cfg);
  BigInt s = abs_square_sum(*fam, hist, idx, false, cfg.workers);
  return Rational(s, pow_big(F->q(), 2 * static_cast<std::uint64_t>(n - h - 1)));
}

inline ShortIntervalReport si_variance(std::uint64_t q, int n, int h, Method method, const ExecConfig& cfg = {}) {
  require(h >= 1 && h <= n - 2, "need 1 <= h <= n - 2");
  auto F = Field::of_order(q);
  checked_count(q, n, cfg.enum_cap, "short-interval variance");
  ShortIntervalReport r;
  r.q = q;
  r.n = n;
  r.h = h;
  auto m = si_mean(q, n, h, cfg.enum_cap);
  r.mean_exact = m.exact;
  r.mean_formula = m.formula;
  check_internal(r.mean_exact == r.mean_formula, "short-interval mean differs from its closed form");
  r.prediction = n - h - 2;
  r.theorem_regime = h < n - 3;
  if (method != Method::characters) r.variance_exact = si_variance_direct(F, n, h, cfg.enum_cap);
  if (method != Method::direct) r.variance_by_characters = si_variance_characters(F, n, h, cfg, &r.even_characters);
  const Rational& var = r.variance_exact ? *r.variance_exact : *r.variance_by_characters;
  r.normalized_variance = to_double(var / Rational(pow_big(q, static_cast<std::uint64_t>(h) + 1)));
  r.deviation = r.prediction > 0 ? std::abs(r.normalized_variance / r.prediction - 1.0) : std::abs(r.normalized_variance);
  return r;
}

struct SweepRow {
  std::uint64_t q = 0;
  std::optional<ShortIntervalReport> report;
  std::string note;
};

struct ShortIntervalSweep {
  int n = 0, h = 0;
  bool warning = false;  // h < n - 3 fails
  std::vector<SweepRow> rows;
};

inline ShortIntervalSweep si_sweep(int n, int h, const std::vector<std::uint64_t>& qs, Method method,
                                   const ExecConfig& cfg = {}) {
  ShortIntervalSweep sw;
  sw.n = n;
  sw.h = h;
  sw.warning = !(h < n - 3);
  for (auto q : qs) {
    SweepRow row;
    row.q = q;
    try {
      row.report = si_variance(q, n, h, method, cfg);
    } catch (const Error& e) {
      row.note = e.what();
    }
    sw.rows.push_back(std::move(row));
  }
  return sw;
}

}  // namespace ffvar
