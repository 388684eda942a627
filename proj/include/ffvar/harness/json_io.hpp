#pragma once

// JSON forms of the library's values and reports. Keys keep insertion order
// so that identical inputs always serialize to identical bytes.

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "ffvar/characters.hpp"
#include "ffvar/cycint.hpp"
#include "ffvar/field.hpp"
#include "ffvar/hardy_littlewood.hpp"
#include "ffvar/lfunction.hpp"
#include "ffvar/poly.hpp"
#include "ffvar/progressions.hpp"
#include "ffvar/rmt.hpp"
#include "ffvar/short_intervals.hpp"

namespace ffvar::io {

using Json = nlohmann::ordered_json;

inline Json to_json(const BigInt& x) { return x.str(); }

inline Json to_json(const Rational& r) {
  Json j;
  j["num"] = numerator(r).str();
  j["den"] = denominator(r).str();
  j["float"] = to_double(r);
  return j;
}

inline Rational rational_from_json(const Json& j) {
  require(j.is_object() && j.contains("num") && j.contains("den"), "rational needs num and den");
  return Rational(BigInt(j.at("num").get<std::string>()), BigInt(j.at("den").get<std::string>()));
}

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? to_json(*v) : Json(nullptr);
}

inline Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

inline Json to_json(const Field& F) {
  Json j;
  j["p"] = F.p();
  j["k"] = F.k();
  j["q"] = F.q();
  j["modulus"] = F.spec().modulus;
  return j;
}

inline Json to_json(const Poly& f) {
  Json j;
  j["text"] = to_text(f);
  std::vector<std::uint32_t> c;
  for (auto x : f.coeffs()) c.push_back(x.code());
  j["coeffs"] = c;
  return j;
}

inline Json to_json(const CycInt& x) {
  Json j;
  j["order"] = x.order();
  j["coeffs"] = x.normalized().coeffs();
  auto v = x.as_integer();
  j["integer"] = v ? Json(v->str()) : Json(nullptr);
  const auto z = x.to_complex();
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

inline Json to_json(const CharCensus& c) {
  return Json{{"phi", c.phi},
              {"phi_even", c.phi_even},
              {"phi_prim", c.phi_prim},
              {"phi_prim_even", c.phi_prim_even},
              {"phi_prim_odd", c.phi_prim_odd}};
}

inline Json to_json(const CensusRecord& r) {
  return Json{{"counted", to_json(r.counted)}, {"formula", to_json(r.formula)}, {"agree", r.agree}};
}

inline Json to_json(const UnitGroup& G) {
  Json j;
  j["modulus"] = to_json(G.modulus());
  j["phi"] = G.phi();
  j["orders"] = G.orders();
  j["exponent"] = G.exponent();
  Json gens = Json::array();
  for (auto g : G.generators()) gens.push_back(to_text(poly_from_code(G.field(), g)));
  j["generators"] = gens;
  return j;
}

inline Json to_json(const LFunction& L) {
  Json j;
  j["character_index"] = L.character_index;
  j["order"] = L.order;
  j["even"] = L.even;
  j["primitive"] = L.primitive;
  Json c = Json::array(), d = Json::array();
  for (const auto& x : L.coeffs) c.push_back(to_json(x));
  for (const auto& x : L.completed) d.push_back(to_json(x));
  j["coeffs"] = c;
  j["completed"] = d;
  j["frobenius_size"] = L.frobenius_size();
  return j;
}

inline Json to_json(const FrobeniusClass& f) {
  return Json{{"N", f.N}, {"angles", f.angles}, {"rh_residual", f.rh_residual}, {"iterations", f.iterations}};
}

inline Json to_json(const RootCensus& r) {
  Json roots = Json::array();
  for (auto z : r.roots) roots.push_back(Json{z.real(), z.imag()});
  return Json{{"roots", roots},
              {"unit_roots", r.unit_roots},
              {"sqrt_q_roots", r.sqrt_q_roots},
              {"max_residual", r.max_residual},
              {"converged", r.converged}};
}

inline Json to_json(const TraceMoment& t) {
  return Json{{"family_size", t.family_size}, {"exact", to_json(t.exact)}, {"value", t.value}};
}

inline Json to_json(const ShortIntervalReport& r) {
  Json j;
  j["q"] = r.q;
  j["n"] = r.n;
  j["h"] = r.h;
  j["mean_exact"] = to_json(r.mean_exact);
  j["mean_formula"] = to_json(r.mean_formula);
  j["variance_exact"] = opt(r.variance_exact);
  j["variance_by_characters"] = opt(r.variance_by_characters);
  j["variances_agree"] = r.variance_exact && r.variance_by_characters
                             ? Json(*r.variance_exact == *r.variance_by_characters)
                             : Json(nullptr);
  j["prediction"] = r.prediction;
  j["normalized_variance"] = r.normalized_variance;
  j["deviation"] = r.deviation;
  j["theorem_regime"] = r.theorem_regime;
  j["even_characters"] = r.even_characters;
  return j;
}

inline Json to_json(const ProgressionReport& r) {
  Json j;
  j["q"] = r.q;
  j["n"] = r.n;
  j["Q"] = to_json(r.Q);
  j["phi"] = r.phi;
  j["squarefree"] = r.squarefree;
  j["G_exact"] = opt(r.G_exact);
  j["G_by_characters"] = opt(r.G_by_characters);
  j["G_agree"] = r.G_exact && r.G_by_characters ? Json(*r.G_exact == *r.G_by_characters) : Json(nullptr);
  j["prediction_small_range"] = opt(r.prediction_small_range);
  j["prediction_rmt"] = r.prediction_rmt;
  j["normalized_G"] = r.normalized_G;
  j["deviation_rmt"] = r.deviation_rmt;
  j["deviation_small_range"] = opt(r.deviation_small_range);
  j["note"] = r.note;
  return j;
}

inline Json to_json(const SmallRangeCheck& c) {
  Json j;
  j["q"] = c.q;
  j["n"] = c.n;
  j["G"] = to_json(c.G);
  j["main_term"] = to_json(c.main_term);
  j["residual"] = to_json(c.residual);
  j["lambda2_term"] = to_json(c.lambda2_term);
  j["divisor_term"] = to_json(c.divisor_term);
  j["cross_term"] = to_json(c.cross_term);
  j["decomposition_exact"] = c.decomposition_exact;
  j["bound"] = c.bound;
  j["constant"] = c.constant;
  j["within_bound"] = c.within_bound;
  return j;
}

inline Json to_json(const TraceVsG& t) {
  return Json{{"q", t.q},
              {"n", t.n},
              {"normalized_G", t.normalized_G},
              {"trace_moment", t.trace_moment},
              {"family_size", t.family_size},
              {"discrepancy", t.discrepancy},
              {"scaled_discrepancy", t.scaled_discrepancy},
              {"family_weight", t.family_weight},
              {"weighted_discrepancy", t.weighted_discrepancy}};
}

inline Json to_json(const UnitaryMoment& m) {
  return Json{{"N", m.N},
              {"n", m.n},
              {"samples", m.samples},
              {"seed", m.seed},
              {"estimate", m.estimate},
              {"std_error", m.std_error},
              {"exact", m.exact},
              {"z_score", m.std_error > 0 ? (m.estimate - m.exact) / m.std_error : 0.0}};
}

inline Json to_json(const PuInvariance& p) {
  return Json{{"N", p.N},
              {"n", p.n},
              {"trials", p.trials},
              {"failures", p.failures},
              {"max_difference", p.max_difference},
              {"passed", p.passed}};
}

inline Json to_json(const SingularSeriesValue& s) {
  return Json{{"value", s.value},
              {"log_value", s.log_value},
              {"D", s.D},
              {"tail_bound", s.tail_bound},
              {"value_tail_bound", s.value_tail_bound},
              {"vanishes", s.vanishes},
              {"log_by_degree", s.log_by_degree}};
}

inline Json to_json(const HlGPrediction& h) {
  Json j;
  j["q"] = h.q;
  j["n"] = h.n;
  j["D"] = h.D;
  j["G_exact"] = to_json(h.G_exact);
  j["second_moment"] = to_json(h.second_moment);
  j["lambda2_coprime"] = to_json(h.lambda2_coprime);
  j["psi2_total"] = opt(h.psi2_total);
  j["second_moment_identity"] = h.second_moment_identity;
  j["jsums"] = h.jsums;
  j["hl_estimate"] = h.hl_estimate;
  j["hlav_estimate"] = h.hlav_estimate;
  j["final_form"] = h.final_form;
  j["ratio_to_exact"] = h.ratio_to_exact;
  j["norm_over_phi"] = h.norm_over_phi;
  return j;
}

}  // namespace ffvar::io
