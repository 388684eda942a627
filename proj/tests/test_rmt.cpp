#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace ffvar;

TEST(Haar, UnitarityAtSizeEight) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    NormalStream rng(sample_seed(17, i));
    auto U = haar_sample(8, rng);
    ASSERT_LT(unitarity_residual(U), 1e-10) << i;
  }
}

TEST(Haar, SizeOneIsAUniformPhase) {
  const int bins = 8;
  std::vector<int> hist(bins, 0);
  const int samples = 8000;
  for (int i = 0; i < samples; ++i) {
    NormalStream rng(sample_seed(3, static_cast<std::uint64_t>(i)));
    auto U = haar_sample(1, rng);
    EXPECT_NEAR(std::abs(U(0, 0)), 1.0, 1e-12);
    double t = std::arg(U(0, 0));
    if (t < 0) t += 2 * std::numbers::pi;
    hist[std::min(bins - 1, static_cast<int>(t / (2 * std::numbers::pi) * bins))]++;
  }
  // chi-square with 7 degrees of freedom; 24.3 is the 0.001 tail
  double chi2 = 0;
  const double expect = static_cast<double>(samples) / bins;
  for (int h : hist) chi2 += (h - expect) * (h - expect) / expect;
  EXPECT_LT(chi2, 24.3);
}

TEST(Haar, FixedSeedGivesIdenticalBits) {
  NormalStream a(sample_seed(99, 5)), b(sample_seed(99, 5));
  auto U = haar_sample(5, a);
  auto V = haar_sample(5, b);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      EXPECT_EQ(U(i, j).real(), V(i, j).real());
      EXPECT_EQ(U(i, j).imag(), V(i, j).imag());
    }
  }
  NormalStream c(sample_seed(99, 6));
  EXPECT_NE(haar_sample(5, c)(0, 0), U(0, 0));
}

TEST(Haar, RejectsEmptySize) {
  NormalStream rng(1);
  EXPECT_THROW(haar_sample(0, rng), ValidationError);
}

TEST(Haar, EigenvaluesLieOnTheUnitCircle) {
  NormalStream rng(sample_seed(4, 0));
  auto U = haar_sample(6, rng);
  Eigen::ComplexEigenSolver<CMatrix> es(U);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(std::abs(es.eigenvalues()(i)), 1.0, 1e-10);
}

TEST(Haar, MatrixPowerMatchesRepeatedProduct) {
  NormalStream rng(sample_seed(8, 1));
  auto U = haar_sample(4, rng);
  CMatrix R = CMatrix::Identity(4, 4);
  for (int k = 1; k <= 7; ++k) {
    R = R * U;
    EXPECT_LT((matrix_power(U, k) - R).cwiseAbs().maxCoeff(), 1e-12);
  }
}

struct MomentCase {
  int N, n;
  std::uint64_t samples;
};

class TraceMoments : public ::testing::TestWithParam<MomentCase> {};

TEST_P(TraceMoments, WithinFourStandardErrors) {
  const auto c = GetParam();
  auto m = trace_moment_mc(c.N, c.n, c.samples, 2024, 2);
  EXPECT_EQ(m.exact, std::min(c.n, c.N));
  EXPECT_GE(m.estimate, 0.0);
  EXPECT_GT(m.std_error, 0.0);
  EXPECT_LE(std::abs(m.estimate - m.exact), 4 * m.std_error) << m.estimate << " ± " << m.std_error;
}

INSTANTIATE_TEST_SUITE_P(Cases, TraceMoments,
                         ::testing::Values(MomentCase{4, 2, 20000}, MomentCase{3, 7, 20000}, MomentCase{2, 1, 20000},
                                           MomentCase{5, 5, 10000}, MomentCase{6, 3, 10000}));

TEST(TraceMoments, SizeOneIsExactlyOne) {
  auto m = trace_moment_mc(1, 5, 500, 1);
  EXPECT_NEAR(m.estimate, 1.0, 1e-12);
  EXPECT_EQ(m.exact, 1);
}

TEST(TraceMoments, StandardErrorShrinksWithSamples) {
  auto a = trace_moment_mc(4, 2, 2000, 11);
  auto b = trace_moment_mc(4, 2, 32000, 11);
  const double ratio = a.std_error / b.std_error;
  EXPECT_GT(ratio, 4.0 * 0.8);
  EXPECT_LT(ratio, 4.0 * 1.25);
}

TEST(TraceMoments, IndependentOfWorkerCount) {
  auto one = trace_moment_mc(5, 3, 3000, 77, 1);
  auto four = trace_moment_mc(5, 3, 3000, 77, 4);
  EXPECT_EQ(one.estimate, four.estimate);
  EXPECT_EQ(one.std_error, four.std_error);
  EXPECT_EQ(trace_moment_mc(5, 3, 3000, 77, 3).estimate, one.estimate);
}

TEST(TraceMoments, Preconditions) {
  EXPECT_THROW(trace_moment_mc(0, 1, 100, 1), ValidationError);
  EXPECT_THROW(trace_moment_mc(2, 0, 100, 1), ValidationError);
  EXPECT_THROW(trace_moment_mc(2, 1, 99, 1), ValidationError);
}

TEST(PuInvariance, RandomPhases) {
  auto r = pu_invariance_check(5, 3, 2000, 13);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.failures, 0u);
  EXPECT_LT(r.max_difference, 1e-10);
  EXPECT_EQ(r.trials, 2000u);
}

TEST(PuInvariance, UnitPhaseIsExact) {
  NormalStream rng(sample_seed(2, 2));
  auto U = haar_sample(4, rng);
  EXPECT_EQ(trace_power_abs2(U, 3), trace_power_abs2(CMatrix(std::complex<double>(1, 0) * U), 3));
}

TEST(PuInvariance, ManySizes) {
  for (int N : {1, 2, 7}) {
    for (int n : {1, 4, 9}) EXPECT_TRUE(pu_invariance_check(N, n, 300, 5).passed) << N << " " << n;
  }
}
