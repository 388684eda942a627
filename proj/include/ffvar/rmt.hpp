#pragma once

// Haar unitary matrices and Monte Carlo trace moments ⟨|tr U^n|²⟩.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "ffvar/errors.hpp"
#include "ffvar/exec.hpp"
#include "ffvar/numeric.hpp"

namespace ffvar {

using CMatrix = Eigen::MatrixXcd;

/// Portable standard normals: Box–Muller on 53-bit uniforms from mt19937_64.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : rng_(seed) {}
  double uniform() { return static_cast<double>((rng_() >> 11) + 1) * 0x1.0p-53; }  // (0, 1]
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double t = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0;
  bool has_spare_ = false;
};

inline std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

inline double unitarity_residual(const CMatrix& U) {
  const auto n = U.rows();
  return (U.adjoint() * U - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

/// QR of a complex Ginibre matrix with the phases of diag(R) moved into Q.
inline CMatrix haar_sample(int N, NormalStream& rng) {
  require(N >= 1, "matrix size must be >= 1");
  for (int attempt = 0; attempt < 2; ++attempt) {
    CMatrix Z(N, N);
    for (int j = 0; j < N; ++j) {
      for (int i = 0; i < N; ++i) {
        const double re = rng.normal(), im = rng.normal();
        Z(i, j) = std::complex<double>(re, im) * std::sqrt(0.5);
      }
    }
    Eigen::HouseholderQR<CMatrix> qr(Z);
    CMatrix Qm = qr.householderQ();
    const CMatrix& R = qr.matrixQR();
    bool ok = true;
    for (int i = 0; i < N; ++i) {
      const double a = std::abs(R(i, i));
      if (!(a > 0)) {
        ok = false;
        break;
      }
      Qm.col(i) *= R(i, i) / a;
    }
    if (ok && unitarity_residual(Qm) < 1e-10) return Qm;
  }
  throw InternalError("Haar sampling failed twice");
}

inline CMatrix matrix_power(CMatrix U, int n) {
  CMatrix r = CMatrix::Identity(U.rows(), U.cols());
  while (n > 0) {
    if (n & 1) r = r * U;
    U = U * U;
    n >>= 1;
  }
  return r;
}

inline double trace_power_abs2(const CMatrix& U, int n) { return std::norm(matrix_power(U, n).trace()); }

struct UnitaryMoment {
  int N = 0, n = 0;
  std::uint64_t samples = 0, seed = 0;
  double estimate = 0, std_error = 0;
  int exact = 0;  // min(n, N)
};

inline UnitaryMoment trace_moment_mc(int N, int n, std::uint64_t samples, std::uint64_t seed, unsigned workers = 1) {
  require(N >= 1 && n >= 1, "N and n must be >= 1");
  require(samples >= 100, "need at least 100 samples");
  std::vector<double> vals(samples);
  parallel_for(samples, workers, [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      NormalStream rng(sample_seed(seed, i));
      vals[i] = trace_power_abs2(haar_sample(N, rng), n);
    }
  });
  UnitaryMoment m;
  m.N = N;
  m.n = n;
  m.samples = samples;
  m.seed = seed;
  m.exact = std::min(n, N);
  m.estimate = pairwise_sum(vals) / static_cast<double>(samples);
  std::vector<double> dev(samples);
  for (std::uint64_t i = 0; i < samples; ++i) dev[i] = (vals[i] - m.estimate) * (vals[i] - m.estimate);
  const double var = pairwise_sum(dev) / static_cast<double>(samples - 1);
  m.std_error = std::sqrt(var / static_cast<double>(samples));
  return m;
}

struct PuInvariance {
  int N = 0, n = 0;
  std::uint64_t trials = 0, failures = 0;
  double max_difference = 0;
  bool passed = false;
};

/// |tr (cU)^n|² = |tr U^n|² for random phases c.
inline PuInvariance pu_invariance_check(int N, int n, std::uint64_t samples, std::uint64_t seed, double tol = 1e-10) {
  require(N >= 1 && n >= 1, "N and n must be >= 1");
  PuInvariance r;
  r.N = N;
  r.n = n;
  r.trials = samples;
  for (std::uint64_t i = 0; i < samples; ++i) {
    NormalStream rng(sample_seed(seed, i));
    CMatrix U = haar_sample(N, rng);
    const std::complex<double> c = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    const double a = trace_power_abs2(U, n);
    const double b = trace_power_abs2(CMatrix(c * U), n);
    const double d = std::abs(a - b) / std::max(1.0, a);
    r.max_difference = std::max(r.max_difference, d);
    if (d > tol) ++r.failures;
  }
  r.passed = r.failures == 0;
  return r;
}

}  // namespace ffvar
