#pragma once

// One payload builder per subcommand. Each takes parsed options and an
// execution config and returns the JSON payload of the result envelope.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ffvar/characters.hpp"
#include "ffvar/enumerate.hpp"
#include "ffvar/factor.hpp"
#include "ffvar/hardy_littlewood.hpp"
#include "ffvar/harness/json_io.hpp"
#include "ffvar/lfunction.hpp"
#include "ffvar/progressions.hpp"
#include "ffvar/rmt.hpp"
#include "ffvar/short_intervals.hpp"

namespace ffvar::io {

struct Options {
  std::optional<std::uint64_t> q, p;
  std::optional<int> k;
  std::optional<std::string> modulus;  // field modulus over F_p
  std::optional<int> n, h, N, D, j;
  std::optional<std::string> Q, K, A;
  std::string method = "both";
  std::optional<std::uint64_t> samples, seed, index;
  std::optional<double> C;
  std::string parity = "odd";
  bool all_characters = false;  // family moment over imprimitive characters too
  bool pu = false;
  bool trace = false;  // var-ap: compare G with the odd primitive trace moment
  std::optional<std::string> spec;
  std::string action;  // cache action
};

inline FieldPtr make_field(const Options& o) {
  if (o.q) {
    auto F = Field::of_order(*o.q);
    require(!o.p || *o.p == F->p(), "--p disagrees with --q");
    require(!o.k || *o.k == F->k(), "--k disagrees with --q");
    if (!o.modulus) return F;
    Options t = o;
    t.q.reset();
    t.p = F->p();
    t.k = F->k();
    return make_field(t);
  }
  require(o.p.has_value(), "field needs --q or --p");
  const int k = o.k.value_or(1);
  if (!o.modulus) return Field::make(*o.p, k);
  Poly m = parse_poly(Field::make(*o.p, 1), *o.modulus);
  std::vector<std::uint32_t> c;
  for (auto x : m.coeffs()) c.push_back(x.code());
  return Field::make(*o.p, k, c);
}

template <class T>
const T& need(const std::optional<T>& v, const char* flag) {
  if (!v) throw ValidationError(std::string("missing required option ") + flag);
  return *v;
}

inline Poly need_poly(const FieldPtr& F, const std::optional<std::string>& text, const char* flag) {
  return parse_poly(F, need(text, flag));
}

inline int parse_parity(const std::string& s) {
  if (s == "odd") return 0;
  if (s == "even") return 1;
  if (s == "any") return -1;
  throw ValidationError("parity must be odd, even or any");
}

inline Json cmd_irr(const Options& o, const ExecConfig& cfg) {
  auto F = make_field(o);
  Json j;
  j["field"] = to_json(*F);
  if (o.Q) {
    Poly f = parse_poly(F, *o.Q);
    require(!f.is_zero(), "cannot factor the zero polynomial");
    auto fac = factorize(f);
    Json fs = Json::array();
    for (const auto& [P, e] : fac.factors) fs.push_back(Json{{"factor", to_json(P)}, {"multiplicity", e}});
    j["poly"] = to_json(f);
    j["unit"] = fac.unit.code();
    j["factors"] = fs;
    j["irreducible"] = is_irreducible(f);
    j["squarefree"] = is_squarefree(f);
    j["von_mangoldt"] = von_mangoldt(f);
    return j;
  }
  const int n = need(o.n, "--n");
  require(n >= 1, "n must be >= 1");
  j["n"] = n;
  j["count"] = to_json(count_irreducibles(*F, n));
  auto lam = lambda_table(F, n, cfg.enum_cap);
  std::uint64_t c = 0;
  for (std::uint64_t i = 0; i < lam->size(); ++i) c += (*lam)[i] == n;
  j["count_by_enumeration"] = c;
  j["agree"] = BigInt(c) == count_irreducibles(*F, n);
  return j;
}

inline Json cmd_lambda_sum(const Options& o, const ExecConfig& cfg) {
  auto F = make_field(o);
  const int n = need(o.n, "--n");
  require(n >= 1, "n must be >= 1");
  auto lam = lambda_table(F, n, cfg.enum_cap);
  BigInt s = 0;
  for (std::uint64_t i = 0; i < lam->size(); ++i) s += (*lam)[i];
  const BigInt qn = pow_big(F->q(), static_cast<std::uint64_t>(n));
  return Json{{"field", to_json(*F)}, {"n", n}, {"sum", to_json(s)}, {"q_to_n", to_json(qn)}, {"agree", s == qn}};
}

inline Json character_json(const Character& chi) {
  return Json{{"index", chi.index()},
              {"exponents", chi.exponents()},
              {"order", chi.order()},
              {"trivial", chi.is_trivial()},
              {"even", chi.is_even()},
              {"primitive", chi.is_primitive()}};
}

inline Json cmd_chars(const Options& o, const ExecConfig& cfg) {
  auto F = make_field(o);
  Poly Q = need_poly(F, o.Q, "--Q");
  auto fam = characters(unit_group(Q, cfg));
  Json j;
  j["field"] = to_json(*F);
  j["group"] = to_json(fam->group());
  j["census"] = to_json(char_census(*fam));
  if (o.index) j["character"] = character_json(fam->at(*o.index));
  return j;
}

inline Json cmd_lfun(const Options& o, const ExecConfig& cfg) {
  auto F = make_field(o);
  Poly Q = need_poly(F, o.Q, "--Q");
  auto fam = characters(unit_group(Q, cfg));
  Json j;
  j["field"] = to_json(*F);
  j["modulus"] = to_json(fam->group().modulus());
  if (!o.index) {
    const int n = need(o.n, "--n");
    const int parity = parse_parity(o.parity);
    auto tm = trace_moment_family(*fam, n, parity, !o.all_characters, cfg);
    j["n"] = n;
    j["parity"] = o.parity;
    j["primitive_only"] = !o.all_characters;
    j["trace_moment"] = to_json(tm);
    return j;
  }
  require(*o.index >= 1, "--index must name a nontrivial character");
  auto chi = fam->at(*o.index);
  auto L = l_coeffs(chi);
  j["character"] = character_json(chi);
  j["l_function"] = to_json(L);
  j["root_census"] = to_json(classify_inverse_roots(L, F->q()));
  j["frobenius"] = L.primitive ? to_json(frobenius(L, F->q())) : Json(nullptr);
  if (o.n) {
    auto direct = psi_direct(*o.n, chi, cfg.enum_cap);
    auto newton = psi_newton(*o.n, L);
    j["n"] = *o.n;
    j["psi_direct"] = to_json(direct);
    j["psi_newton"] = to_json(newton);
    j["psi_agree"] = (direct - newton).is_zero();
  }
  return j;
}

inline Json cmd_var_si(const Options& o, const ExecConfig& cfg) {
  auto r = si_variance(make_field(o)->q(), need(o.n, "--n"), need(o.h, "--h"), parse_method(o.method), cfg);
  return to_json(r);
}

inline Json cmd_var_ap(const Options& o, const ExecConfig& cfg) {
  auto F = make_field(o);
  Poly Q = need_poly(F, o.Q, "--Q");
  const int n = need(o.n, "--n");
  auto r = g_variance(n, Q, parse_method(o.method), cfg);
  Json j = to_json(r);
  if (n < r.Q.degree()) {
    j["small_range"] = to_json(g_small_range_check(n, Q, o.C.value_or(8.0), cfg));
  }
  if (o.trace) j["trace_vs_g"] = to_json(trace_moment_vs_g(n, Q, cfg));
  if (o.A) j["psi_progression"] = psi_progression(n, Q, parse_poly(F, *o.A), cfg);
  return j;
}

inline Json cmd_rmt(const Options& o, const ExecConfig& cfg) {
  const int N = need(o.N, "--N"), n = need(o.n, "--n");
  const std::uint64_t samples = o.samples.value_or(100000), seed = o.seed.value_or(0);
  Json j = to_json(trace_moment_mc(N, n, samples, seed, cfg.workers));
  if (o.pu) j["pu_invariance"] = to_json(pu_invariance_check(N, n, std::min<std::uint64_t>(samples, 1000), seed));
  return j;
}

inline Json cmd_hl_psi2(const Options& o, const ExecConfig& cfg) {
  auto F = make_field(o);
  Poly K = need_poly(F, o.K, "--K");
  const int n = need(o.n, "--n");
  return Json{{"field", to_json(*F)}, {"n", n}, {"K", to_json(K)}, {"psi2", psi2(n, K, cfg.enum_cap)}};
}

inline Json cmd_hl_sing(const Options& o, const ExecConfig&) {
  auto F = make_field(o);
  Poly K = need_poly(F, o.K, "--K");
  Json j = to_json(singular_series(K, o.D.value_or(6)));
  j["K"] = to_json(K);
  return j;
}

inline Json cmd_hl_jsum(const Options& o, const ExecConfig& cfg) {
  auto F = make_field(o);
  Poly Q = need_poly(F, o.Q, "--Q");
  const int jj = need(o.j, "--j"), D = o.D.value_or(6);
  Json j;
  j["q"] = F->q();
  j["Q"] = to_json(Q);
  j["j"] = jj;
  j["D"] = D;
  const double direct = jsum_direct(Q, jj, D, cfg.enum_cap);
  j["jsum_direct"] = direct;
  if (F->q() > 2) {
    const double series = jsum_series(Q, jj, D);
    j["jsum_series"] = series;
    j["relative_gap"] = std::abs(direct - series) / std::max(std::abs(series), 1e-300);
  } else {
    j["jsum_series"] = nullptr;
    j["relative_gap"] = nullptr;
  }
  const double pred = hl_jsum_prediction(Q, jj);
  j["prediction"] = pred;
  j["scaled_gap"] = (direct - pred) / std::pow(static_cast<double>(F->q()), jj);
  return j;
}

inline Json cmd_hl_g(const Options& o, const ExecConfig& cfg) {
  auto F = make_field(o);
  Poly Q = need_poly(F, o.Q, "--Q");
  Json j = to_json(hl_g_prediction(need(o.n, "--n"), Q, o.D.value_or(6), cfg));
  j["Q"] = to_json(Q.monic());
  return j;
}

}  // namespace ffvar::io
