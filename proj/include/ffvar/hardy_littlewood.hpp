#pragma once

// Twin prime-polynomial sums ψ₂(n;K), the singular series 𝔖(K), the J-sum
// by direct summation and by power-series coefficients of the Euler product,
// and the resulting heuristic for G(n;Q).

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "ffvar/characters.hpp"
#include "ffvar/enumerate.hpp"
#include "ffvar/errors.hpp"
#include "ffvar/exec.hpp"
#include "ffvar/factor.hpp"
#include "ffvar/numeric.hpp"
#include "ffvar/progressions.hpp"

namespace ffvar {

/// ψ₂(n;K) = Σ_{f ∈ M_n} Λ(f) Λ(f+K).
inline std::int64_t psi2(int n, const Poly& K, std::uint64_t enum_cap = ExecConfig{}.enum_cap) {
  require(!K.is_zero(), "K must be nonzero");
  require(n > K.degree(), "psi2 needs n > deg K");
  const FieldPtr& Fp = K.field();
  const Field& F = *Fp;
  const std::uint64_t q = F.q();
  const std::uint64_t total = checked_count(q, n, enum_cap, "psi2");
  auto lam = lambda_table(Fp, n, enum_cap);
  std::vector<std::uint32_t> kd(static_cast<std::size_t>(n), 0);
  for (int i = 0; i <= K.degree(); ++i) kd[static_cast<std::size_t>(i)] = K.coeff(i).code();
  std::int64_t s = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const int a = (*lam)[idx];
    if (!a) continue;
    std::uint64_t t = idx, j = 0, place = 1;
    for (int i = 0; i < n; ++i) {
      const auto digit = static_cast<std::uint32_t>(t % q);
      t /= q;
      j += F.add(FieldElem(digit), FieldElem(kd[static_cast<std::size_t>(i)])).code() * place;
      place *= q;
    }
    s += a * (*lam)[j];
  }
  return s;
}

/// ν_K(P) = #{A mod P : A(A+K) ≡ 0 mod P}.
inline int nu_K(const Poly& P, const Poly& K) {
  require(!K.is_zero(), "K must be nonzero");
  require(is_irreducible(P), "P must be irreducible");
  return (K % P).is_zero() ? 1 : 2;
}

struct SingularSeriesValue {
  double value = 0;
  double log_value = 0;
  int D = 0;
  double tail_bound = 0;      // bound on |log 𝔖 − log 𝔖_D|
  double value_tail_bound = 0; // value · (e^{tail_bound} − 1)
  bool vanishes = false;      // a degree-1 factor is exactly 0 (q = 2)
  std::vector<double> log_by_degree;  // index d − 1
};

/// Log of the generic local factor (1 − 1/(|P|−1)²) for P ∤ K; lost when |P| = 2.
inline double log_generic_factor(double norm) { return std::log1p(-1.0 / ((norm - 1.0) * (norm - 1.0))); }

/// Conservative tail of Σ_{deg P > D} |log factor|; derived for this implementation:
/// π(d) ≤ q^d/d, |log(1 − x)| ≤ 3/|P|² for |P| ≥ 3, and at most deg K/(D+1) primes of degree > D divide K,
/// each contributing ≤ 1/(|P| − 1).
inline double singular_series_tail(std::uint64_t q, int D, int deg_K) {
  const double qd = static_cast<double>(q);
  const double a = std::pow(qd, -(D + 1));
  const double generic = 3.0 * a / ((D + 1) * (1.0 - 1.0 / qd));
  const double divisors = (static_cast<double>(std::max(deg_K, 0)) / (D + 1)) / (std::pow(qd, D + 1) - 1.0);
  return generic + divisors;
}

inline SingularSeriesValue singular_series(const Poly& K, int D) {
  require(!K.is_zero(), "K must be nonzero");
  require(D >= 1, "truncation degree must be >= 1");
  const std::uint64_t q = K.F().q();
  std::vector<std::int64_t> dividing(static_cast<std::size_t>(D) + 1, 0);
  if (K.degree() >= 1) {
    for (const auto& P : prime_divisors(K)) {
      if (P.degree() <= D) ++dividing[static_cast<std::size_t>(P.degree())];
    }
  }
  SingularSeriesValue out;
  out.D = D;
  CompensatedSum total;
  for (int d = 1; d <= D; ++d) {
    const double norm = std::pow(static_cast<double>(q), d);
    const BigInt pi_d = count_irreducibles(q, d);
    const double generic_count = static_cast<double>(pi_d - dividing[static_cast<std::size_t>(d)]);
    CompensatedSum s;
    if (generic_count > 0) {
      if (norm == 2.0) {
        out.vanishes = true;
      } else {
        s.add(generic_count * log_generic_factor(norm));
      }
    }
    // P | K: (1 − 1/|P|)^{-1}
    s.add(static_cast<double>(dividing[static_cast<std::size_t>(d)]) * -std::log1p(-1.0 / norm));
    out.log_by_degree.push_back(s.value());
    total.add(s.value());
  }
  out.tail_bound = singular_series_tail(q, D, K.degree());
  if (out.vanishes) {
    out.log_value = -std::numeric_limits<double>::infinity();
    out.value = 0;
    out.value_tail_bound = 0;
  } else {
    out.log_value = total.value();
    out.value = std::exp(out.log_value);
    out.value_tail_bound = out.value * std::expm1(out.tail_bound);
  }
  return out;
}

/// α_D = Π_{deg P ≤ D} (1 − 1/(|P|−1)²)
inline double hl_alpha(std::uint64_t q, int D) {
  require(q > 2, "alpha vanishes for q = 2");
  CompensatedSum s;
  for (int d = 1; d <= D; ++d) {
    s.add(static_cast<double>(count_irreducibles(q, d)) * log_generic_factor(std::pow(static_cast<double>(q), d)));
  }
  return std::exp(s.value());
}

/// Σ over monic J of degree j of 𝔖_D(JQ).
inline double jsum_direct(const Poly& Q, int j, int D, std::uint64_t enum_cap = ExecConfig{}.enum_cap) {
  require(!Q.is_zero(), "Q must be nonzero");
  require(j >= 0, "j must be >= 0");
  const std::uint64_t count = checked_count(Q.F().q(), j, enum_cap, "J-sum");
  std::vector<double> terms(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    terms[i] = singular_series(monic_from_index(Q.field(), j, i) * Q, D).value;
  }
  return pairwise_sum(terms);
}

namespace detail {

using Series = std::vector<double>;  // coefficients of u^0..u^order

inline Series series_mul(const Series& a, const Series& b) {
  Series r(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t k = 0; i + k < a.size(); ++k) r[i + k] += a[i] * b[k];
  }
  return r;
}

inline Series series_pow(Series base, BigInt e) {
  Series r(base.size(), 0.0);
  r[0] = 1;
  while (e > 0) {
    if ((e & 1) != 0) r = series_mul(r, base);
    base = series_mul(base, base);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Coefficient of u^j in α_D Z(u) Z(u/q) Π_{P|Q, deg P ≤ D} r_P (1 + u^d/(|P|−2))^{-1}
/// Π_{d ≤ D} (1 + (2u^d − u^{2d})/(q^d (q^d − 2)))^{π(d)}, with r_P = (|P|−1)/(|P|−2).
inline double jsum_series(const Poly& Q, int j, int D) {
  require(!Q.is_zero(), "Q must be nonzero");
  require(j >= 0 && D >= 1, "need j >= 0 and D >= 1");
  const std::uint64_t q = Q.F().q();
  require(q != 2, "jsum_series is undefined for q = 2 (|P| - 2 = 0 for linear P)");
  const std::size_t L = static_cast<std::size_t>(j) + 1;
  const double qd = static_cast<double>(q);
  detail::Series F(L, 0.0);
  // Z(u) Z(u/q) = 1/((1 − qu)(1 − u)): coefficient (q^{k+1} − 1)/(q − 1)
  for (std::size_t k = 0; k < L; ++k) F[k] = (std::pow(qd, static_cast<double>(k) + 1) - 1.0) / (qd - 1.0);
  double prefactor = hl_alpha(q, D);
  if (Q.degree() >= 1) {
    for (const auto& P : prime_divisors(Q)) {
      const int d = P.degree();
      if (d > D) continue;
      const double norm = std::pow(qd, d);
      prefactor *= (norm - 1.0) / (norm - 2.0);
      detail::Series inv(L, 0.0);
      double term = 1;
      for (std::size_t k = 0; k < L; k += static_cast<std::size_t>(d)) {
        inv[k] = term;
        term *= -1.0 / (norm - 2.0);
      }
      F = detail::series_mul(F, inv);
    }
  }
  for (int d = 1; d <= D && static_cast<std::size_t>(d) < L; ++d) {
    const double norm = std::pow(qd, d);
    detail::Series local(L, 0.0);
    local[0] = 1;
    local[static_cast<std::size_t>(d)] += 2.0 / (norm * (norm - 2.0));
    if (static_cast<std::size_t>(2 * d) < L) local[static_cast<std::size_t>(2 * d)] -= 1.0 / (norm * (norm - 2.0));
    F = detail::series_mul(F, detail::series_pow(local, count_irreducibles(q, d)));
  }
  return prefactor * F[static_cast<std::size_t>(j)];
}

/// q^j |Q|/Φ(Q) − 1/(q − 1)
inline double hl_jsum_prediction(const Poly& Q, int j) {
  const std::uint64_t q = Q.F().q();
  const double ratio = to_double(Rational(poly_norm(Q.monic()), phi_of(Q.monic())));
  return std::pow(static_cast<double>(q), j) * ratio - 1.0 / (static_cast<double>(q) - 1.0);
}

struct HlGPrediction {
  std::uint64_t q = 0;
  int n = 0, D = 0;
  Rational G_exact;
  BigInt second_moment;          // Σ_A Ψ(n;Q,A)²
  BigInt lambda2_coprime;        // Σ_{f ∈ M_n, gcd(f,Q)=1} Λ(f)²
  std::optional<BigInt> psi2_total;  // Σ_{J≠0, deg J < n − deg Q} ψ₂(n;JQ)
  bool second_moment_identity = false;
  std::vector<double> jsums;     // j = 0 .. n − deg Q − 1, by the series route
  double hl_estimate = 0;        // G from the J-sums inserted into the expansion
  double hlav_estimate = 0;      // same with the asymptotic J-sum
  double final_form = 0;         // q^n (deg Q − |Q|/Φ(Q))
  double ratio_to_exact = 0;     // final_form / G_exact
  double norm_over_phi = 0;      // |Q|/Φ(Q)
};

inline HlGPrediction hl_g_prediction(int n, const Poly& Qin, int D, const ExecConfig& cfg = {}) {
  require(!Qin.is_zero(), "Q must be nonzero");
  const Poly Q = Qin.monic();
  const int dq = Q.degree();
  require(dq >= 1 && n > dq, "hl_g_prediction needs n > deg Q >= 1");
  const std::uint64_t q = Q.F().q();
  const double qd = static_cast<double>(q);
  HlGPrediction r;
  r.q = q;
  r.n = n;
  r.D = D;
  auto rep = g_variance(n, Q, Method::direct, cfg);
  r.G_exact = *rep.G_exact;
  const double phi = static_cast<double>(rep.phi);
  const BigInt qn = pow_big(q, static_cast<std::uint64_t>(n));

  auto G = unit_group(Q, cfg);
  auto hist = residue_lambda_histogram(G->ring(), n, cfg);
  for (std::uint64_t u = 0; u < G->phi(); ++u) {
    const std::int64_t v = hist[G->code_of_index(u)];
    r.second_moment += BigInt(v) * v;
  }
  auto lam = lambda_table(Q.field(), n, cfg.enum_cap);
  {
    const std::uint64_t total = lam->size();
    G->ring().for_each_monic_residue(n, 0, total, [&](std::uint64_t idx, std::uint64_t code) {
      const int l = (*lam)[idx];
      if (l && G->index_of_code(code) != UnitGroup::kNonUnit) r.lambda2_coprime += l * l;
    });
  }
  // exact pair-sum identity, when affordable
  const std::uint64_t jcount = pow_u64(q, static_cast<std::uint64_t>(n - dq));
  if (BigInt(jcount) * qn <= BigInt(cfg.enum_cap)) {
    BigInt s = 0;
    for (std::uint64_t c = 1; c < jcount; ++c) s += psi2(n, poly_from_code(Q.field(), c) * Q, cfg.enum_cap);
    r.psi2_total = s;
    r.second_moment_identity = r.second_moment == r.lambda2_coprime + s;
  }
  const std::int64_t S = divisor_mass(Q, n);
  const double first_moment = static_cast<double>(qn - S);
  const double qnd = static_cast<double>(qn);
  double jtotal = 0, hlav_total = 0;
  for (int j = 0; j < n - dq; ++j) {
    const double js = q == 2 ? jsum_direct(Q, j, D, cfg.enum_cap) : jsum_series(Q, j, D);
    r.jsums.push_back(js);
    jtotal += js;
    hlav_total += hl_jsum_prediction(Q, j);
  }
  const double base = static_cast<double>(r.lambda2_coprime) - 2.0 * qnd / phi * first_moment + qnd * qnd / phi;
  r.hl_estimate = base + (qd - 1.0) * qnd * jtotal;
  r.hlav_estimate = base + (qd - 1.0) * qnd * hlav_total;
  r.norm_over_phi = std::pow(qd, dq) / phi;
  r.final_form = qnd * (dq - r.norm_over_phi);
  r.ratio_to_exact = r.final_form / to_double(r.G_exact);
  return r;
}

}  // namespace ffvar
