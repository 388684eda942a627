#include <cmath>
#include <complex>
#include <numbers>

#include "support.hpp"

using namespace ffvar;
using namespace ffvar::testing;

namespace {

struct Case {
  std::uint64_t q;
  std::string Q;
};

std::string case_name(const ::testing::TestParamInfo<Case>& info) {
  std::string s = "q" + std::to_string(info.param.q) + "_";
  for (char c : info.param.Q) {
    if (c == '+') s += "p";
    else if (c == '-') s += "m";
    else if (std::isalnum(static_cast<unsigned char>(c))) s += c;
  }
  return s;
}

const std::vector<Case> kMatrix = {
    {3, "T^2"},     {3, "T^3"},       {3, "T^2+1"},     {3, "T^2-1"}, {3, "T^3-T+1"}, {3, "T^3-T"},
    {5, "T^2"},     {5, "T^3"},       {5, "T^2+2"},     {5, "T^2-1"}, {5, "T^3+T+1"}, {5, "T^3-T"},
};

// Σ_{f ∈ M_k} χ(f), evaluated through polynomial reduction one f at a time.
CycInt char_sum_oracle(const Character& chi, int k) {
  CycInt acc(chi.order());
  for (const auto& f : enumerate_monic(chi.group().field(), k)) acc += chi(f).to_cycint();
  return acc;
}

// Σ_{f ∈ M_n} Λ(f) χ(f) with Λ from trial division.
CycInt psi_oracle(const Character& chi, int n) {
  const auto& F = chi.group().field();
  auto lam = lambda_oracle(F, n);
  CycInt acc(chi.order());
  for (const auto& f : enumerate_monic(F, n)) {
    const int l = lam[monic_index(f)];
    if (!l) continue;
    CycInt v = chi(f).to_cycint();
    v *= l;
    acc += v;
  }
  return acc;
}

}  // namespace

TEST(LFunction, EvenCharacterModTSquaredOverF3) {
  auto F = Fq(3);
  auto fam = characters(P(F, "T^2"));
  bool found = false;
  for (auto i : fam->select(true, 1, false)) {
    auto chi = fam->at(i);
    const auto z = chi(P(F, "T+1")).to_complex();
    if (std::abs(z - std::polar(1.0, 2 * std::numbers::pi / 3)) > 1e-12) continue;
    found = true;
    auto L = l_coeffs(chi);
    ASSERT_EQ(L.coeffs.size(), 2u);
    EXPECT_EQ(L.coeffs[0], CycInt::from_int(L.order, 1));
    EXPECT_EQ(L.coeffs[1], CycInt::from_int(L.order, -1));
    ASSERT_EQ(L.completed.size(), 1u);
    EXPECT_EQ(L.completed[0], CycInt::from_int(L.order, 1));
    EXPECT_EQ(L.frobenius_size(), 0);
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(psi_newton(n, L), CycInt::from_int(L.order, -1)) << n;
    auto fc = frobenius(L, 3);
    EXPECT_EQ(fc.N, 0);
    EXPECT_TRUE(fc.angles.empty());
    EXPECT_EQ(trace_power_abs2(fc, 3), 0.0);
  }
  EXPECT_TRUE(found);
}

TEST(LFunction, DegreeZeroForLinearModulus) {
  auto F = Fq(5);
  auto fam = characters(P(F, "T"));
  for (auto i : fam->select(true, -1, false)) {
    auto L = l_coeffs(fam->at(i));
    ASSERT_EQ(L.coeffs.size(), 1u);
    EXPECT_EQ(L.coeffs[0], CycInt::from_int(L.order, 1));
    for (int n = 1; n <= 4; ++n) EXPECT_TRUE(psi_newton(n, L).is_zero());
  }
}

TEST(LFunction, TrivialCharacterRejected) {
  auto fam = characters(P(Fq(3), "T^2"));
  EXPECT_THROW(l_coeffs(fam->trivial()), ValidationError);
  EXPECT_THROW(psi_newton(2, fam->trivial()), ValidationError);
}

TEST(LFunction, PsiDirectExamples) {
  auto F = Fq(3);
  auto fam = characters(P(F, "T"));
  ASSERT_EQ(fam->size(), 2u);
  EXPECT_TRUE(psi_direct(2, fam->at(1)).is_zero());
  EXPECT_EQ(psi_direct(2, fam->trivial()).as_integer(), BigInt(8));
  for (std::uint64_t q : {3, 5, 7}) {
    auto famq = characters(P(Fq(q), "T"));
    auto t = famq->trivial();
    for (int n = 1; n <= 4; ++n) {
      EXPECT_EQ(psi_direct(n, t).as_integer(), pow_big(q, static_cast<std::uint64_t>(n)) - 1);
    }
  }
  // n = 1: plain character sum over monic linears
  auto fam2 = characters(P(Fq(5), "T^2+2"));
  for (std::uint64_t i = 0; i < fam2->size(); ++i) {
    EXPECT_EQ(psi_direct(1, fam2->at(i)), char_sum_oracle(fam2->at(i), 1));
  }
}

TEST(LFunction, PsiDirectCapEnforced) {
  auto fam = characters(P(Fq(5), "T^2"));
  EXPECT_THROW(psi_direct(6, fam->at(1), 1000), CapExceeded);
  EXPECT_THROW(psi_direct(0, fam->at(1)), ValidationError);
}

TEST(Zeta, Coefficients) {
  for (std::uint64_t q : {2, 3, 4, 5, 9}) {
    auto F = Fq(q);
    auto Z = zeta_units(*F);
    for (int n = 0; n <= 5; ++n) EXPECT_EQ(Z.zeta_coeff(n), pow_big(q, static_cast<std::uint64_t>(n)));
    EXPECT_EQ(Z.trivial_coeff(P(F, "T"), 0), 1);
    EXPECT_EQ(Z.trivial_coeff(P(F, "T"), 1), BigInt(q - 1));
  }
}

TEST(Zeta, TrivialCoefficientsCountCoprimeMonics) {
  for (auto [q, s] : std::vector<std::pair<std::uint64_t, std::string>>{{3, "T^2"}, {3, "T^3-T"}, {5, "T^2+2"}, {4, "T^2+T"}}) {
    auto F = Fq(q);
    Poly Q = P(F, s);
    auto Z = zeta_units(*F);
    for (int n = 0; n <= 5; ++n) {
      std::int64_t count = 0;
      for (const auto& f : enumerate_monic(F, n)) count += poly_gcd(f, Q).degree() == 0;
      EXPECT_EQ(Z.trivial_coeff(Q, n), count) << q << " " << s << " n=" << n;
    }
  }
}

TEST(Aberth, KnownRoots) {
  using C = std::complex<double>;
  const std::vector<C> roots{C(2, 0), C(0, 3), C(-1, -1), C(0.5, 0.25)};
  std::vector<C> a{C(1, 0)};
  for (auto r : roots) {
    std::vector<C> next(a.size() + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      next[i + 1] += a[i];
      next[i] -= r * a[i];
    }
    a = next;
  }
  auto res = aberth(a, 1.5);
  ASSERT_TRUE(res.converged);
  ASSERT_EQ(res.roots.size(), roots.size());
  for (auto r : roots) {
    double best = 1e9;
    for (auto z : res.roots) best = std::min(best, std::abs(z - r));
    EXPECT_LT(best, 1e-10);
  }
  EXPECT_TRUE(aberth({C(3, 0)}, 1).roots.empty());
}

class LFunctionMatrix : public ::testing::TestWithParam<Case> {};

TEST_P(LFunctionMatrix, CoefficientsMatchCharacterSums) {
  auto F = Fq(GetParam().q);
  Poly Q = P(F, GetParam().Q);
  auto fam = characters(Q);
  const int m = Q.degree();
  for (auto i : fam->select(true, -1, false)) {
    auto chi = fam->at(i);
    auto L = l_coeffs(chi);
    ASSERT_EQ(static_cast<int>(L.coeffs.size()), m);
    for (int k = 0; k < m; ++k) ASSERT_EQ(L.coeffs[static_cast<std::size_t>(k)], char_sum_oracle(chi, k)) << i << " " << k;
    EXPECT_TRUE(char_sum_oracle(chi, m).is_zero());
    EXPECT_TRUE(char_sum_oracle(chi, m + 1).is_zero());
    if (chi.is_even()) {
      CycInt s(L.order);
      for (const auto& c : L.coeffs) s += c;
      EXPECT_TRUE(s.is_zero()) << i;
      EXPECT_EQ(L.frobenius_size(), m - 2);
    } else {
      EXPECT_EQ(L.frobenius_size(), m - 1);
    }
  }
}

TEST_P(LFunctionMatrix, NewtonEqualsDirect) {
  auto F = Fq(GetParam().q);
  Poly Q = P(F, GetParam().Q);
  auto fam = characters(Q);
  for (auto i : fam->select(true, -1, false)) {
    auto chi = fam->at(i);
    auto L = l_coeffs(chi);
    for (int n = 1; n <= 6; ++n) {
      const auto d = psi_direct(n, chi);
      ASSERT_EQ(psi_newton(n, L).normalized().coeffs(), d.normalized().coeffs()) << "chi " << i << " n " << n;
    }
  }
}

TEST_P(LFunctionMatrix, RiemannHypothesisBound) {
  auto F = Fq(GetParam().q);
  Poly Q = P(F, GetParam().Q);
  auto fam = characters(Q);
  const double q = static_cast<double>(F->q());
  for (auto i : fam->select(true, -1, false)) {
    auto L = l_coeffs(fam->at(i));
    for (int n = 1; n <= 6; ++n) {
      const double v = std::abs(psi_newton(n, L).to_complex());
      EXPECT_LE(v, (Q.degree() - 1) * std::pow(q, n / 2.0) + 1e-9);
    }
  }
}

TEST_P(LFunctionMatrix, RootModuli) {
  auto F = Fq(GetParam().q);
  Poly Q = P(F, GetParam().Q);
  auto fam = characters(Q);
  for (auto i : fam->select(true, -1, false)) {
    auto L = l_coeffs(fam->at(i));
    auto rc = classify_inverse_roots(L, F->q());
    EXPECT_TRUE(rc.converged);
    int degree = 0;
    for (std::size_t k = 0; k < L.coeffs.size(); ++k) {
      if (!L.coeffs[k].is_zero()) degree = static_cast<int>(k);
    }
    EXPECT_EQ(rc.unit_roots + rc.sqrt_q_roots, degree);
    if (L.primitive) {
      EXPECT_EQ(degree, Q.degree() - 1);
    }
    EXPECT_LT(rc.max_residual, 1e-6);
    if (L.even) {
      EXPECT_GE(rc.unit_roots, 1);
    }
    if (L.primitive) {
      EXPECT_EQ(rc.sqrt_q_roots, L.frobenius_size());
      auto fc = frobenius(L, F->q());
      EXPECT_LE(fc.rh_residual, kRhTolerance);
      EXPECT_EQ(static_cast<int>(fc.angles.size()), fc.N);
      EXPECT_TRUE(std::is_sorted(fc.angles.begin(), fc.angles.end()));
      for (double t : fc.angles) {
        EXPECT_GE(t, 0.0);
        EXPECT_LT(t, 2 * std::numbers::pi);
      }
      for (int n = 1; n <= 6; ++n) {
        const double explicit_side =
            std::norm(psi_newton(n, L).to_complex() + static_cast<double>(fam->at(i).lambda())) /
            std::pow(static_cast<double>(F->q()), n);
        EXPECT_NEAR(trace_power_abs2(fc, n), explicit_side, 1e-8);
      }
    } else {
      EXPECT_THROW(frobenius(L, F->q()), ValidationError);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Moduli, LFunctionMatrix, ::testing::ValuesIn(kMatrix), case_name);

TEST(LFunction, PsiDirectAgainstTrialDivisionOracle) {
  for (auto [q, s] : std::vector<std::pair<std::uint64_t, std::string>>{{3, "T^3"}, {3, "T^2+1"}, {4, "T^2"}, {5, "T^2-1"}}) {
    auto fam = characters(P(Fq(q), s));
    for (std::uint64_t i = 0; i < fam->size(); ++i) {
      for (int n = 1; n <= 4; ++n) ASSERT_EQ(psi_direct(n, fam->at(i)), psi_oracle(fam->at(i), n)) << q << s << i << n;
    }
  }
}

TEST(LFunction, PrimitiveRiemannHypothesisModTCubedOverF5) {
  auto fam = characters(P(Fq(5), "T^3"));
  int checked = 0;
  for (auto i : fam->select(true, -1, true)) {
    auto fc = frobenius(l_coeffs(fam->at(i)), 5);
    EXPECT_LE(fc.rh_residual, 1e-8);
    ++checked;
  }
  EXPECT_GT(checked, 0);
}

TEST(LFunction, OddPrimitiveSquarefreeQuadraticHasOneAngle) {
  auto F = Fq(5);
  for (auto s : {"T^2-1", "T^2+T", "T^2+2"}) {
    auto fam = characters(P(F, s));
    for (auto i : fam->select(true, 0, true)) {
      auto fc = frobenius(l_coeffs(fam->at(i)), 5);
      EXPECT_EQ(fc.N, 1);
      EXPECT_EQ(fc.angles.size(), 1u);
    }
  }
}

TEST(TraceMoment, EvenPrimitiveModTSquaredIsZero) {
  auto fam = characters(P(Fq(3), "T^2"));
  auto tm = trace_moment_family(*fam, 3, 1, true);
  EXPECT_EQ(tm.exact, 0);
  EXPECT_GT(tm.family_size, 0u);
}

TEST(TraceMoment, OddPrimitiveN1AgainstBruteForce) {
  auto F = Fq(5);
  for (auto s : {"T^2-1", "T^2+2", "T^2+T+1"}) {
    auto fam = characters(P(F, s));
    Rational sum = 0;
    std::uint64_t count = 0;
    for (auto i : fam->select(true, 0, true)) {
      auto v = psi_oracle(fam->at(i), 1).abs_square().as_integer();
      ASSERT_TRUE(v.has_value());
      sum += Rational(*v, BigInt(5));
      ++count;
    }
    auto tm = trace_moment_family(*fam, 1, 0, true);
    EXPECT_EQ(tm.family_size, count);
    EXPECT_EQ(tm.exact, sum / Rational(BigInt(count)));
  }
}

TEST(TraceMoment, AgreesWithRootFinder) {
  auto F = Fq(5);
  auto fam = characters(P(F, "T^3-T"));
  for (int parity : {0, 1}) {
    for (int n = 1; n <= 4; ++n) {
      double s = 0;
      auto idx = fam->select(true, parity, true);
      for (auto i : idx) s += trace_power_abs2(frobenius(l_coeffs(fam->at(i)), 5), n);
      auto tm = trace_moment_family(*fam, n, parity, true);
      EXPECT_NEAR(tm.value, s / static_cast<double>(idx.size()), 1e-8);
    }
  }
}

TEST(TraceMoment, WorkersDoNotChangeResult) {
  auto fam = characters(P(Fq(7), "T^3+T+1"));
  ExecConfig one, four;
  four.workers = 4;
  EXPECT_EQ(trace_moment_family(*fam, 3, 0, true, one).exact, trace_moment_family(*fam, 3, 0, true, four).exact);
}

TEST(TraceMoment, EmptyFamilyRejected) {
  auto fam = characters(P(Fq(2), "T"));
  EXPECT_THROW(trace_moment_family(*fam, 2, 0, true), ValidationError);
  EXPECT_EQ(trace_moment_family(*characters(P(Fq(3), "T^2")), 2, 0, true).family_size, 2u);
}
