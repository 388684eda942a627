#pragma once

// Prime counts in arithmetic progressions and the variance G(n;Q).

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
#include "ffvar/short_intervals.hpp"

namespace ffvar {

/// Residue-class histogram of Λ over M_n, indexed by residue code mod Q.
inline std::vector<std::int64_t> residue_lambda_histogram(const ResidueRing& R, int n, const ExecConfig& cfg) {
  const std::uint64_t total = checked_count(R.field()->q(), n, cfg.enum_cap, "progression enumeration");
  auto lam = lambda_table(R.field(), n, cfg.enum_cap);
  std::vector<std::int64_t> hist(R.size(), 0);
  R.for_each_monic_residue(n, 0, total, [&](std::uint64_t idx, std::uint64_t code) { hist[code] += (*lam)[idx]; });
  return hist;
}

/// Ψ(n;Q,A) = Σ Λ(N) over N ∈ M_n with N ≡ A mod Q.
inline std::int64_t psi_progression(int n, const Poly& Q, const Poly& A, const ExecConfig& cfg = {}) {
  require(n >= 1, "n must be >= 1");
  require(Q.degree() >= 1, "modulus must have degree >= 1");
  require(!A.is_zero() && poly_gcd(A, Q).degree() == 0, "A must be coprime to Q");
  const std::uint64_t total = checked_count(Q.F().q(), n, cfg.enum_cap, "psi_progression");
  ResidueRing R(Q, cfg.enum_cap);
  auto lam = lambda_table(Q.field(), n, cfg.enum_cap);
  const std::uint64_t target = R.code_of(A);
  std::int64_t s = 0;
  R.for_each_monic_residue(n, 0, total, [&](std::uint64_t idx, std::uint64_t code) {
    if (code == target) s += (*lam)[idx];
  });
  return s;
}

/// Σ deg P over primes P | Q with deg P | n: the prime powers of degree n lost to non-coprimality.
inline std::int64_t divisor_mass(const Poly& Q, int n) {
  std::int64_t s = 0;
  for (const auto& P : prime_divisors(Q)) {
    if (n % P.degree() == 0) s += P.degree();
  }
  return s;
}

struct ProgressionReport {
  std::uint64_t q = 0;
  int n = 0;
  Poly Q;
  std::uint64_t phi = 0;
  bool squarefree = false;
  std::optional<Rational> G_exact;
  std::optional<Rational> G_by_characters;
  std::optional<Rational> prediction_small_range;  // n q^n − q^{2n}/Φ(Q) when n < deg Q
  int prediction_rmt = 0;                          // min(n, deg Q − 1)
  double normalized_G = 0;
  double deviation_rmt = 0;
  std::optional<double> deviation_small_range;
  std::string note;
};

inline Rational g_direct(const Poly& Q, int n, const UnitGroup& G, const ExecConfig& cfg) {
  auto hist = residue_lambda_histogram(G.ring(), n, cfg);
  const Rational mean(pow_big(Q.F().q(), static_cast<std::uint64_t>(n)), BigInt(G.phi()));
  Rational s = 0;
  for (std::uint64_t u = 0; u < G.phi(); ++u) {
    Rational d = Rational(hist[G.code_of_index(u)]) - mean;
    s += d * d;
  }
  return s;
}

inline Rational g_characters(const Poly& Q, int n, const CharacterFamily& fam, const ExecConfig& cfg) {
  auto hist = lambda_histogram(fam.group(), n, cfg);
  BigInt sq = abs_square_sum(fam, hist, fam.select(true, -1, false), false, cfg.workers);
  const std::int64_t S = divisor_mass(Q, n);
  return Rational(sq + BigInt(S) * S, BigInt(fam.size()));
}

inline ProgressionReport g_variance(int n, const Poly& Qin, Method method, const ExecConfig& cfg = {}) {
  require(n >= 1, "n must be >= 1");
  require(!Qin.is_zero() && Qin.degree() >= 1, "modulus must have degree >= 1");
  const Poly Q = Qin.monic();
  const std::uint64_t q = Q.F().q();
  checked_count(q, n, cfg.enum_cap, "G(n;Q)");
  auto Gp = unit_group(Q, cfg);
  ProgressionReport r;
  r.q = q;
  r.n = n;
  r.Q = Q;
  r.phi = Gp->phi();
  r.squarefree = is_squarefree(Q);
  if (!r.squarefree) r.note = "outside theorem hypotheses: Q is not squarefree";
  if (method != Method::characters) r.G_exact = g_direct(Q, n, *Gp, cfg);
  if (method != Method::direct) {
    auto fam = characters(Gp);
    r.G_by_characters = g_characters(Q, n, *fam, cfg);
  }
  const BigInt qn = pow_big(q, static_cast<std::uint64_t>(n));
  if (n < Q.degree()) {
    r.prediction_small_range = Rational(n * qn) - Rational(qn * qn, BigInt(r.phi));
  }
  r.prediction_rmt = std::min(n, Q.degree() - 1);
  const Rational& G = r.G_exact ? *r.G_exact : *r.G_by_characters;
  r.normalized_G = to_double(G / Rational(qn));
  r.deviation_rmt = r.prediction_rmt > 0 ? std::abs(r.normalized_G / r.prediction_rmt - 1.0) : std::abs(r.normalized_G);
  if (r.prediction_small_range && *r.prediction_small_range != 0) {
    r.deviation_small_range = std::abs(to_double(G / *r.prediction_small_range) - 1.0);
  }
  return r;
}

struct SmallRangeCheck {
  std::uint64_t q = 0;
  int n = 0;
  Rational G;
  Rational main_term;        // n q^n − q^{2n}/Φ
  Rational residual;         // G − main_term
  BigInt lambda2_term;       // Σ_{d|n} d² π(d) − n q^n
  BigInt divisor_term;       // −Σ_{P|Q, deg P | n} (deg P)²
  Rational cross_term;       // 2 q^n S / Φ
  bool decomposition_exact = false;
  double bound = 0;          // C (n² q^{n/2} + (deg Q)²)
  double constant = 8;
  bool within_bound = false;
};

inline SmallRangeCheck g_small_range_check(int n, const Poly& Qin, double C = 8, const ExecConfig& cfg = {}) {
  require(!Qin.is_zero(), "modulus must be nonzero");
  const Poly Q = Qin.monic();
  require(n > 0 && n < Q.degree(), "small range needs 0 < n < deg Q");
  auto rep = g_variance(n, Q, Method::direct, cfg);
  const std::uint64_t q = rep.q;
  SmallRangeCheck c;
  c.q = q;
  c.n = n;
  c.constant = C;
  c.G = *rep.G_exact;
  c.main_term = *rep.prediction_small_range;
  c.residual = c.G - c.main_term;
  const BigInt qn = pow_big(q, static_cast<std::uint64_t>(n));
  BigInt l2 = 0;
  for (auto d : divisors(static_cast<std::uint64_t>(n))) {
    l2 += BigInt(d * d) * count_irreducibles(q, static_cast<int>(d));
  }
  c.lambda2_term = l2 - n * qn;
  BigInt dt = 0;
  for (const auto& P : prime_divisors(Q)) {
    if (n % P.degree() == 0) dt -= P.degree() * P.degree();
  }
  c.divisor_term = dt;
  c.cross_term = Rational(2 * qn * divisor_mass(Q, n), BigInt(rep.phi));
  c.decomposition_exact = Rational(c.lambda2_term) + Rational(c.divisor_term) + c.cross_term == c.residual;
  c.bound = C * (n * n * std::pow(static_cast<double>(q), n / 2.0) + Q.degree() * Q.degree());
  c.within_bound = std::abs(to_double(c.residual)) <= c.bound;
  return c;
}

/// Reads integer coefficients of a template over F_p and reduces them into F.
inline Poly instantiate_template(const FieldPtr& F, const std::string& text) {
  auto Fp = Field::make(F->p(), 1);
  Poly t = parse_poly(Fp, text);
  std::vector<FieldElem> c;
  for (auto x : t.coeffs()) c.push_back(F->from_int(static_cast<std::int64_t>(x.code())));
  return Poly(F, std::move(c));
}

struct ProgressionRow {
  std::uint64_t q = 0;
  std::optional<ProgressionReport> report;
  std::string note;
};

inline std::vector<ProgressionRow> g_sweep(int n, const std::string& Q_template, const std::vector<std::uint64_t>& qs,
                                           Method method, const ExecConfig& cfg = {}) {
  std::vector<ProgressionRow> rows;
  for (auto q : qs) {
    ProgressionRow row;
    row.q = q;
    try {
      auto F = Field::of_order(q);
      Poly Q = instantiate_template(F, Q_template);
      if (Q.degree() < 1) {
        row.note = "skipped: template degenerates to a constant over F_" + std::to_string(q);
      } else if (!is_squarefree(Q)) {
        row.note = "skipped: template is not squarefree over F_" + std::to_string(q);
      } else {
        row.report = g_variance(n, Q, method, cfg);
      }
    } catch (const Error& e) {
      row.note = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

struct TraceVsG {
  std::uint64_t q = 0;
  int n = 0;
  double normalized_G = 0;
  double trace_moment = 0;
  std::uint64_t family_size = 0;
  double discrepancy = 0;  // G/q^n − ⟨|tr Θ^n|²⟩ (1 + 1/q)
  double scaled_discrepancy = 0;  // |discrepancy| q / (deg Q)²
  double family_weight = 0;       // (# odd primitive) / Φ(Q)
  double weighted_discrepancy = 0;  // G/q^n − ⟨|tr Θ^n|²⟩ · family_weight
};

inline TraceVsG trace_moment_vs_g(int n, const Poly& Qin, const ExecConfig& cfg = {}) {
  const Poly Q = Qin.monic();
  auto fam = characters(unit_group(Q, cfg));
  TraceVsG t;
  t.q = Q.F().q();
  t.n = n;
  auto tm = trace_moment_family(*fam, n, 0, true, cfg);
  t.trace_moment = tm.value;
  t.family_size = tm.family_size;
  auto rep = g_variance(n, Q, Method::characters, cfg);
  t.normalized_G = rep.normalized_G;
  const double qd = static_cast<double>(t.q);
  t.discrepancy = t.normalized_G - t.trace_moment * (1.0 + 1.0 / qd);
  t.scaled_discrepancy = std::abs(t.discrepancy) * qd / (Q.degree() * Q.degree());
  t.family_weight = static_cast<double>(t.family_size) / static_cast<double>(fam->size());
  t.weighted_discrepancy = t.normalized_G - t.trace_moment * t.family_weight;
  return t;
}

}  // namespace ffvar
