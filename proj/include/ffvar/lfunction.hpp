#pragma once

// Dirichlet L-functions over F_q[T]: exact coefficients, the completed
// polynomial, inverse roots and eigenangles, and the prime sums Ψ(n,χ).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "ffvar/characters.hpp"
#include "ffvar/cycint.hpp"
#include "ffvar/enumerate.hpp"
#include "ffvar/errors.hpp"
#include "ffvar/exec.hpp"
#include "ffvar/numeric.hpp"

namespace ffvar {

struct LFunction {
  std::uint64_t character_index = 0;
  std::uint64_t order = 1;          // M
  bool even = false;
  bool primitive = false;
  std::vector<CycInt> coeffs;       // c_0 .. c_{deg Q - 1}
  std::vector<CycInt> completed;    // L* = L / (1 - u) when even, else L

  int degree_bound() const { return static_cast<int>(coeffs.size()) - 1; }
  /// N = deg Q - 1 - λ_χ
  int frobenius_size() const { return static_cast<int>(completed.size()) - 1; }
};

/// c_k = Σ_{f ∈ M_k} χ(f) for k = 0..deg Q; the last one must vanish.
inline LFunction l_coeffs(const Character& chi) {
  require(!chi.is_trivial(), "l_coeffs needs a nontrivial character");
  const UnitGroup& G = chi.group();
  const ResidueRing& R = G.ring();
  const int m = G.modulus().degree();
  const std::uint64_t M = chi.order();
  const auto table = chi.exponent_table();
  LFunction L;
  L.character_index = chi.index();
  L.order = M;
  L.even = chi.is_even();
  L.primitive = chi.is_primitive();
  std::vector<CycInt> c;
  for (int k = 0; k <= m; ++k) {
    CycInt ck(M);
    R.for_each_monic_residue(k, 0, pow_u64(G.field()->q(), static_cast<std::uint64_t>(k)),
                             [&](std::uint64_t, std::uint64_t code) {
                               const std::uint32_t u = G.index_of_code(code);
                               if (u != UnitGroup::kNonUnit) ck.add_root(table[u]);
                             });
    c.push_back(std::move(ck));
  }
  check_internal(c.back().is_zero(), "L-function coefficient at degree deg Q does not vanish");
  c.pop_back();
  check_internal(c.front() == CycInt::from_int(M, 1), "c_0 != 1");
  L.coeffs = c;
  if (L.even) {
    // synthetic division by (1 - u): L*_k = Σ_{i <= k} c_i
    CycInt total(M);
    for (const auto& x : c) total += x;
    check_internal(total.is_zero(), "even character without the trivial zero at u = 1");
    std::vector<CycInt> star;
    CycInt run(M);
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
      run += c[k];
      star.push_back(run.normalized());
    }
    L.completed = std::move(star);
  } else {
    L.completed = c;
  }
  return L;
}

/// Z(u) = 1/(1 - qu) and L(u, χ_0) = Z(u) Π_{P|Q} (1 - u^deg P).
class ZetaUnits {
 public:
  explicit ZetaUnits(std::uint64_t q) : q_(q) {}
  std::uint64_t q() const { return q_; }
  BigInt zeta_coeff(int n) const {
    require(n >= 0, "series index must be >= 0");
    return pow_big(q_, static_cast<std::uint64_t>(n));
  }
  /// coefficient of u^n in L(u, χ_0) for the modulus Q
  BigInt trivial_coeff(const Poly& Q, int n) const {
    require(n >= 0, "series index must be >= 0");
    std::vector<BigInt> prod{1};
    for (const auto& P : prime_divisors(Q)) {
      const std::size_t d = static_cast<std::size_t>(P.degree());
      std::vector<BigInt> next(prod.size() + d, 0);
      for (std::size_t i = 0; i < prod.size(); ++i) {
        next[i] += prod[i];
        next[i + d] -= prod[i];
      }
      prod = std::move(next);
    }
    BigInt s = 0;
    for (std::size_t i = 0; i < prod.size() && static_cast<int>(i) <= n; ++i) {
      s += prod[i] * zeta_coeff(n - static_cast<int>(i));
    }
    return s;
  }

 private:
  std::uint64_t q_;
};

inline ZetaUnits zeta_units(const Field& F) { return ZetaUnits(F.q()); }

/// Ψ(n,χ) by enumerating M_n and evaluating Λ(f) χ(f) for each f.
inline CycInt psi_direct(int n, const Character& chi, std::uint64_t enum_cap = ExecConfig{}.enum_cap) {
  require(n >= 1, "n must be >= 1");
  const UnitGroup& G = chi.group();
  const std::uint64_t total = checked_count(G.field()->q(), n, enum_cap, "psi_direct");
  auto lam = lambda_table(G.field(), n, enum_cap);
  CycInt acc(chi.order());
  G.ring().for_each_monic_residue(n, 0, total, [&](std::uint64_t idx, std::uint64_t code) {
    const int l = (*lam)[idx];
    if (!l) return;
    const std::uint32_t u = G.index_of_code(code);
    if (u != UnitGroup::kNonUnit) acc.add_root(chi.exponent_at(u), l);
  });
  return acc;
}

/// Power sums of the inverse roots from Newton's identities; Ψ(n,χ) = −p_n.
inline CycInt psi_newton(int n, const LFunction& L) {
  require(n >= 1, "n must be >= 1");
  const std::uint64_t M = L.order;
  auto c = [&](int i) { return i < static_cast<int>(L.coeffs.size()) ? L.coeffs[static_cast<std::size_t>(i)] : CycInt(M); };
  std::vector<CycInt> p(static_cast<std::size_t>(n) + 1, CycInt(M));
  for (int k = 1; k <= n; ++k) {
    CycInt s = c(k) * (-static_cast<std::int64_t>(k));
    for (int i = 1; i < k && i < static_cast<int>(L.coeffs.size()); ++i) s -= c(i) * p[static_cast<std::size_t>(k - i)];
    p[static_cast<std::size_t>(k)] = s.normalized();
  }
  return -p[static_cast<std::size_t>(n)];
}

inline CycInt psi_newton(int n, const Character& chi) { return psi_newton(n, l_coeffs(chi)); }

/// w[u] = Σ Λ(f) over f ∈ M_n with f mod Q the unit of index u.
inline std::vector<std::int64_t> lambda_histogram(const UnitGroup& G, int n, const ExecConfig& cfg = {}) {
  const std::uint64_t total = checked_count(G.field()->q(), n, cfg.enum_cap, "lambda histogram");
  auto lam = lambda_table(G.field(), n, cfg.enum_cap);
  const unsigned w = std::max(1u, cfg.workers);
  std::vector<std::vector<std::int64_t>> parts(w);
  parallel_for(w, w, [&](std::uint64_t lo_t, std::uint64_t hi_t) {
    for (std::uint64_t t = lo_t; t < hi_t; ++t) {
      auto& h = parts[t];
      h.assign(G.phi(), 0);
      G.ring().for_each_monic_residue(n, total * t / w, total * (t + 1) / w, [&](std::uint64_t idx, std::uint64_t code) {
        const int l = (*lam)[idx];
        if (!l) return;
        const std::uint32_t u = G.index_of_code(code);
        if (u != UnitGroup::kNonUnit) h[u] += l;
      });
    }
  });
  std::vector<std::int64_t> out(G.phi(), 0);
  for (const auto& h : parts) {
    for (std::size_t i = 0; i < h.size(); ++i) out[i] += h[i];
  }
  return out;
}

/// Ψ(n,χ) = Σ_u w[u] χ(u) for the requested characters.
inline std::vector<CycInt> psi_batch(const CharacterFamily& fam, const std::vector<std::int64_t>& hist,
                                     const std::vector<std::uint64_t>& indices, unsigned workers = 1) {
  std::vector<CycInt> out(indices.size(), CycInt(fam.group().exponent()));
  parallel_for(indices.size(), workers, [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      auto chi = fam.at(indices[i]);
      auto table = chi.exponent_table();
      CycInt acc(chi.order());
      for (std::size_t u = 0; u < hist.size(); ++u) {
        if (hist[u]) acc.add_root(table[u], hist[u]);
      }
      out[i] = std::move(acc);
    }
  });
  return out;
}

/// Exact Σ_χ |Ψ(n,χ) + shift_χ|² over the given characters; shift is λ_χ when
/// add_lambda is set. The sum is Galois-stable so it lands in Z.
inline BigInt abs_square_sum(const CharacterFamily& fam, const std::vector<std::int64_t>& hist,
                             const std::vector<std::uint64_t>& indices, bool add_lambda, unsigned workers = 1) {
  const std::uint64_t M = fam.group().exponent();
  std::int64_t mass = 0;
  for (auto h : hist) mass += h < 0 ? -h : h;
  const BigInt per_char = BigInt(mass + 1) * (mass + 1);
  const BigInt limit = BigInt(std::numeric_limits<std::int64_t>::max() / 2);
  if (per_char > limit) throw CapExceeded("character sum too large for 64-bit accumulation");
  const std::uint64_t flush_every = static_cast<std::uint64_t>(std::max<BigInt>(1, limit / per_char));

  workers = std::max(1u, workers);
  const std::uint64_t chunks = std::min<std::uint64_t>(std::max<std::uint64_t>(indices.size(), 1), workers);
  std::vector<std::vector<BigInt>> totals(chunks, std::vector<BigInt>(M, 0));
  parallel_for(chunks, workers, [&](std::uint64_t c_lo, std::uint64_t c_hi) {
    for (std::uint64_t c = c_lo; c < c_hi; ++c) {
      const std::uint64_t lo = indices.size() * c / chunks, hi = indices.size() * (c + 1) / chunks;
      CycInt acc(M);
      std::uint64_t pending = 0;
      auto flush = [&] {
        for (std::size_t a = 0; a < M; ++a) totals[c][a] += acc[a];
        acc = CycInt(M);
        pending = 0;
      };
      for (std::uint64_t i = lo; i < hi; ++i) {
        auto chi = fam.at(indices[i]);
        auto table = chi.exponent_table();
        CycInt psi(M);
        for (std::size_t u = 0; u < hist.size(); ++u) {
          if (hist[u]) psi.add_root(table[u], hist[u]);
        }
        if (add_lambda && chi.is_even()) psi.add_root(0, 1);
        CycInt::add_abs_square(acc, psi);
        if (++pending >= flush_every) flush();
      }
      flush();
    }
  });
  std::vector<BigInt> sum(M, 0);
  for (const auto& t : totals) {
    for (std::size_t a = 0; a < M; ++a) sum[a] += t[a];
  }
  // reduce modulo Φ_M
  const auto& phi = cyclotomic_poly(M);
  const std::size_t dm = phi.size() - 1;
  for (std::size_t i = sum.size(); i-- > dm;) {
    if (sum[i] == 0) continue;
    BigInt c = sum[i];
    for (std::size_t j = 0; j <= dm; ++j) sum[i - dm + j] -= c * phi[j];
  }
  for (std::size_t i = 1; i < dm; ++i) check_internal(sum[i] == 0, "character square sum is not rational");
  return sum[0];
}

// ---- roots --------------------------------------------------------------

struct AberthResult {
  std::vector<std::complex<double>> roots;
  int iterations = 0;
  bool converged = false;
};

/// Simultaneous Aberth iteration for the roots of Σ a_k x^k (a_back != 0).
inline AberthResult aberth(const std::vector<std::complex<double>>& a, double radius, double tol = 1e-12,
                           int max_iter = 200) {
  AberthResult res;
  const int N = static_cast<int>(a.size()) - 1;
  if (N <= 0) {
    res.converged = true;
    return res;
  }
  auto eval = [&](std::complex<double> z, std::complex<double>& dp) {
    std::complex<double> p = a[static_cast<std::size_t>(N)];
    dp = 0;
    for (int k = N - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + a[static_cast<std::size_t>(k)];
    }
    return p;
  };
  std::vector<std::complex<double>> z(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) {
    z[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * std::numbers::pi * k / N + 0.4);
  }
  for (int it = 1; it <= max_iter; ++it) {
    double worst = 0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      std::complex<double> dp;
      const std::complex<double> p = eval(z[k], dp);
      if (p == std::complex<double>{}) continue;
      const std::complex<double> ratio = p / dp;
      std::complex<double> s = 0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != k) s += 1.0 / (z[k] - z[j]);
      }
      const std::complex<double> step = ratio / (1.0 - ratio * s);
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(z[k])));
    }
    res.iterations = it;
    if (worst <= tol) {
      res.converged = true;
      break;
    }
  }
  res.roots = std::move(z);
  return res;
}

inline std::vector<std::complex<double>> to_complex(const std::vector<CycInt>& c) {
  std::vector<std::complex<double>> out;
  for (const auto& x : c) out.push_back(x.to_complex());
  return out;
}

/// Inverse roots of Σ c_k u^k = Π (1 − α_j u): the roots of Σ c_k x^{N−k}.
inline AberthResult inverse_roots_of(const std::vector<CycInt>& c, double radius) {
  auto a = to_complex(c);
  while (a.size() > 1 && std::abs(a.back()) < 1e-9) a.pop_back();
  std::reverse(a.begin(), a.end());
  return aberth(a, radius);
}

struct FrobeniusClass {
  int N = 0;
  std::vector<double> angles;  // sorted, in [0, 2π)
  double rh_residual = 0;
  int iterations = 0;
};

inline constexpr double kRhTolerance = 1e-8;

inline FrobeniusClass frobenius(const LFunction& L, std::uint64_t q) {
  require(L.primitive && L.character_index != 0, "frobenius needs a primitive nontrivial character");
  FrobeniusClass fc;
  fc.N = L.frobenius_size();
  const double sq = std::sqrt(static_cast<double>(q));
  auto res = inverse_roots_of(L.completed, sq);
  if (!res.converged) throw InternalError("Aberth iteration did not converge within 200 steps");
  check_internal(static_cast<int>(res.roots.size()) == fc.N, "completed L-function has the wrong degree");
  fc.iterations = res.iterations;
  for (auto& alpha : res.roots) {
    fc.rh_residual = std::max(fc.rh_residual, std::abs(std::abs(alpha) - sq));
    double th = std::arg(alpha);
    if (th < 0) th += 2.0 * std::numbers::pi;
    if (th >= 2.0 * std::numbers::pi) th = 0;
    fc.angles.push_back(th);
  }
  std::sort(fc.angles.begin(), fc.angles.end());
  if (fc.rh_residual > kRhTolerance) {
    throw InternalError("Riemann Hypothesis residual " + std::to_string(fc.rh_residual) + " exceeds tolerance");
  }
  return fc;
}

/// Root census of L(u,χ) for any nontrivial χ: each |α_j| is assigned to the nearer of {1, √q}.
struct RootCensus {
  std::vector<std::complex<double>> roots;
  int unit_roots = 0;
  int sqrt_q_roots = 0;
  double max_residual = 0;  // distance from the assigned modulus
  bool converged = false;
};

inline RootCensus classify_inverse_roots(const LFunction& L, std::uint64_t q) {
  RootCensus rc;
  const double sq = std::sqrt(static_cast<double>(q));
  auto res = inverse_roots_of(L.coeffs, sq);
  rc.converged = res.converged;
  rc.roots = res.roots;
  for (auto& a : res.roots) {
    const double r = std::abs(a);
    const double d1 = std::abs(r - 1.0), dq = std::abs(r - sq);
    if (d1 <= dq) {
      ++rc.unit_roots;
      rc.max_residual = std::max(rc.max_residual, d1);
    } else {
      ++rc.sqrt_q_roots;
      rc.max_residual = std::max(rc.max_residual, dq);
    }
  }
  return rc;
}

/// |Σ_j e^{i n θ_j}|²
inline double trace_power_abs2(const FrobeniusClass& fc, int n) {
  std::complex<double> s = 0;
  for (double th : fc.angles) s += std::polar(1.0, n * th);
  return std::norm(s);
}

struct TraceMoment {
  std::uint64_t family_size = 0;
  Rational exact;  // average of |Ψ + λ|² / q^n
  double value = 0;
};

/// ⟨|tr Θ_χ^n|²⟩ over a parity/primitivity family, via |Ψ(n,χ) + λ_χ|² / q^n.
inline TraceMoment trace_moment_family(const CharacterFamily& fam, int n, int parity, bool primitive_only,
                                       const ExecConfig& cfg = {}) {
  auto idx = fam.select(true, parity, primitive_only);
  require(!idx.empty(), "character family is empty");
  auto hist = lambda_histogram(fam.group(), n, cfg);
  BigInt s = abs_square_sum(fam, hist, idx, true, cfg.workers);
  TraceMoment tm;
  tm.family_size = idx.size();
  tm.exact = Rational(s, BigInt(idx.size()) * pow_big(fam.group().field()->q(), static_cast<std::uint64_t>(n)));
  tm.value = to_double(tm.exact);
  return tm;
}

}  // namespace ffvar
