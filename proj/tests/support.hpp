#pragma once

#include <gtest/gtest.h>
#include <json.hpp>

#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ffvar/ffvar.hpp"

namespace ffvar::testing {

inline Poly P(const FieldPtr& F, const std::string& s) { return parse_poly(F, s); }

inline FieldPtr Fq(std::uint64_t q) { return Field::of_order(q); }

// Naive trial division by every monic polynomial of degree <= deg f / 2.
inline bool irreducible_by_trial_division(const Poly& f) {
  const int n = f.degree();
  if (n < 1) return false;
  for (int d = 1; d <= n / 2; ++d) {
    for (const auto& g : enumerate_monic(f.field(), d)) {
      if ((f % g).is_zero()) return false;
    }
  }
  return true;
}

// Λ over M_n built from trial-division irreducibles and explicit powers.
inline std::vector<int> lambda_oracle(const FieldPtr& F, int n) {
  std::vector<int> lam(pow_u64(F->q(), static_cast<std::uint64_t>(n)), 0);
  for (auto d : divisors(static_cast<std::uint64_t>(n))) {
    for (const auto& P : enumerate_monic(F, static_cast<int>(d))) {
      if (!irreducible_by_trial_division(P)) continue;
      lam[monic_index(poly_pow(P, static_cast<unsigned>(n / static_cast<int>(d))))] = static_cast<int>(d);
    }
  }
  return lam;
}

inline Poly random_poly(const FieldPtr& F, int deg, std::mt19937_64& rng, bool monic = false) {
  std::uniform_int_distribution<std::uint32_t> d(0, static_cast<std::uint32_t>(F->q() - 1));
  std::vector<FieldElem> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = FieldElem(d(rng));
  if (monic) c.back() = F->one();
  if (c.back().is_zero()) c.back() = F->one();
  return Poly(F, std::move(c));
}

#ifdef FFVAR_FIXTURE_DIR
inline nlohmann::json calibration() {
  std::ifstream in(std::string(FFVAR_FIXTURE_DIR) + "/calibration.json");
  return nlohmann::json::parse(in);
}
#endif

}  // namespace ffvar::testing
