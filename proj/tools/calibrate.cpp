// Regenerates tests/fixtures/calibration.json from brute-force runs.
// Each threshold is 1.25 times the observed oracle value, rounded up to two
// significant figures.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include "ffvar/harness/json_io.hpp"

using namespace ffvar;
using io::Json;

namespace {

constexpr double kMargin = 1.25;

double round_up_2sig(double x) {
  if (x <= 0) return 0;
  const double e = std::pow(10.0, std::floor(std::log10(x)) - 1);
  return std::ceil(x / e) * e;
}

Json short_interval_block() {
  Json rows = Json::array();
  double last = 0;
  for (std::uint64_t q : {5, 7, 11, 13, 17}) {
    auto r = si_variance(q, 5, 1, Method::direct);
    rows.push_back(Json{{"q", q}, {"normalized_variance", r.normalized_variance}, {"deviation", r.deviation}});
    last = r.deviation;
  }
  return Json{{"n", 5}, {"h", 1}, {"oracle", "direct"}, {"rows", rows}, {"threshold", round_up_2sig(kMargin * last)}};
}

Json progression_block() {
  Json rows = Json::array();
  double last = 0;
  for (std::uint64_t q : {5, 7, 11, 13}) {
    auto F = Field::of_order(q);
    auto r = g_variance(3, instantiate_template(F, "T^3+T+1"), Method::direct);
    rows.push_back(Json{{"q", q}, {"normalized_G", r.normalized_G}, {"deviation", r.deviation_rmt}});
    last = r.deviation_rmt;
  }
  return Json{{"n", 3}, {"Q", "T^3+T+1"}, {"oracle", "direct"}, {"rows", rows},
              {"threshold", round_up_2sig(kMargin * last)}};
}

Json psi2_block() {
  Json rows = Json::array();
  double worst = 0;
  for (std::uint64_t q : {3, 5, 7, 11, 13}) {
    auto F = Field::of_order(q);
    const auto v = psi2(3, Poly::one(F));
    const double qd = static_cast<double>(q);
    const double ratio = std::abs(static_cast<double>(v) - qd * qd * qd) / std::pow(qd, 2.5);
    rows.push_back(Json{{"q", q}, {"psi2", v}, {"ratio", ratio}});
    worst = std::max(worst, ratio);
  }
  return Json{{"n", 3}, {"K", "1"}, {"rows", rows}, {"C_n", round_up_2sig(kMargin * worst)}};
}

Json trace_block() {
  Json rows = Json::array();
  double worst = 0;
  for (int n : {2, 3}) {
    for (std::uint64_t q : {5, 7, 11, 13}) {
      auto F = Field::of_order(q);
      auto t = trace_moment_vs_g(n, instantiate_template(F, "T^3+T+1"));
      rows.push_back(Json{{"q", q}, {"n", n}, {"discrepancy", t.discrepancy}, {"scaled", t.scaled_discrepancy},
                          {"weighted_discrepancy", t.weighted_discrepancy}});
      worst = std::max(worst, t.scaled_discrepancy);
    }
  }
  return Json{{"Q", "T^3+T+1"}, {"rows", rows}, {"C", round_up_2sig(kMargin * worst)}};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : "tests/fixtures/calibration.json";
  Json j;
  j["margin"] = kMargin;
  j["short_intervals"] = short_interval_block();
  j["progressions"] = progression_block();
  j["psi2"] = psi2_block();
  j["trace_vs_g"] = trace_block();
  std::ofstream out(path);
  out << j.dump(2) << "\n";
  std::cout << j.dump(2) << "\n";
  return out ? 0 : 1;
}
