#pragma once

// Command-line dispatch: parse arguments, run one subcommand, print a
// result envelope. Exit codes: 0 ok, 2 validation, 3 cap exceeded, 4 internal.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "ffvar/harness/cache.hpp"
#include "ffvar/harness/commands.hpp"
#include "ffvar/harness/csv.hpp"
#include "ffvar/harness/sweep.hpp"

namespace ffvar::io {

inline constexpr const char* kToolName = "ffvar";
inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr int kEnvelopeSchemaVersion = 1;

struct RunSettings {
  std::string format = "json";
  std::optional<std::string> cache_dir;
  bool no_cache = false;
  std::uint64_t enum_cap = ExecConfig{}.enum_cap;
  std::uint64_t phi_cap = ExecConfig{}.phi_cap;
  unsigned workers = 1;
};

inline Json config_echo(const std::string& command, const Options& o, const RunSettings& rs,
                        const std::optional<fs::path>& cache_dir) {
  Json c;
  auto put = [&](const char* key, const auto& v) {
    if (v) c[key] = *v;
  };
  put("q", o.q);
  put("p", o.p);
  put("k", o.k);
  put("modulus", o.modulus);
  put("n", o.n);
  put("h", o.h);
  put("Q", o.Q);
  put("A", o.A);
  put("K", o.K);
  put("N", o.N);
  put("D", o.D);
  put("j", o.j);
  put("samples", o.samples);
  put("seed", o.seed);
  put("index", o.index);
  put("C", o.C);
  put("spec", o.spec);
  if (command == "var-si" || command == "var-ap") c["method"] = o.method;
  if (command == "lfun") {
    c["parity"] = o.parity;
    c["all_characters"] = o.all_characters;
  }
  if (command == "rmt") c["pu"] = o.pu;
  if (command == "var-ap") c["trace"] = o.trace;
  if (command == "cache") c["action"] = o.action;
  c["format"] = rs.format;
  c["enum_cap"] = rs.enum_cap;
  c["phi_cap"] = rs.phi_cap;
  c["workers"] = rs.workers;
  c["cache_dir"] = cache_dir ? Json(cache_dir->string()) : Json(nullptr);
  return c;
}

inline Json make_envelope(const std::string& command, Json config, Json payload, double seconds) {
  Json e;
  e["tool"] = kToolName;
  e["tool_version"] = kToolVersion;
  e["schema_version"] = kEnvelopeSchemaVersion;
  e["command"] = command;
  e["config"] = std::move(config);
  e["payload"] = std::move(payload);
  e["timing"] = Json{{"wall_seconds", seconds}};
  return e;
}

namespace detail {

inline void add_field_options(CLI::App* sc, Options& o) {
  sc->add_option("--q", o.q, "field order (prime or prime power)");
  sc->add_option("--p", o.p, "field characteristic");
  sc->add_option("--k", o.k, "extension degree");
  sc->add_option("--modulus", o.modulus, "defining polynomial of F_q over F_p");
}

inline void add_run_options(CLI::App* sc, RunSettings& rs) {
  sc->add_option("--format", rs.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sc->add_option("--cache-dir", rs.cache_dir, "unit-group cache directory");
  sc->add_flag("--no-cache", rs.no_cache, "do not read or write the disk cache");
  sc->add_option("--enum-cap", rs.enum_cap, "largest enumeration allowed");
  sc->add_option("--phi-cap", rs.phi_cap, "largest unit group allowed");
  sc->add_option("--workers", rs.workers, "worker threads")->check(CLI::Range(1u, 256u));
}

}  // namespace detail

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics to `err`.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variance of primes in short intervals and progressions over F_q[T]", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options o;
  RunSettings rs;

  using Handler = std::function<Json(const Options&, const ExecConfig&)>;
  std::map<std::string, Handler> handlers;
  std::map<std::string, CLI::App*> subs;
  auto sub = [&](const std::string& name, const std::string& help, Handler h) {
    CLI::App* sc = app.add_subcommand(name, help);
    sc->set_help_flag("--help", "print this help");  // -h would collide with --h
    detail::add_run_options(sc, rs);
    handlers[name] = std::move(h);
    subs[name] = sc;
    return sc;
  };

  auto* irr = sub("irr", "count irreducibles of degree n, or factor --Q", cmd_irr);
  detail::add_field_options(irr, o);
  irr->add_option("--n", o.n);
  irr->add_option("--Q", o.Q, "polynomial to factor");

  auto* ls = sub("lambda-sum", "sum of the von Mangoldt function over monic degree n", cmd_lambda_sum);
  detail::add_field_options(ls, o);
  ls->add_option("--n", o.n);

  auto* ch = sub("chars", "unit group and character census modulo Q", cmd_chars);
  detail::add_field_options(ch, o);
  ch->add_option("--Q", o.Q);
  ch->add_option("--index", o.index, "describe one character");

  auto* lf = sub("lfun", "L-function of one character, or a family trace moment", cmd_lfun);
  detail::add_field_options(lf, o);
  lf->add_option("--Q", o.Q);
  lf->add_option("--index", o.index, "character index (mixed radix over the group orders)");
  lf->add_option("--n", o.n);
  lf->add_option("--parity", o.parity, "odd, even or any")->check(CLI::IsMember({"odd", "even", "any"}));
  lf->add_flag("--all-characters", o.all_characters, "include imprimitive characters in the family");

  auto* vs = sub("var-si", "variance of primes in short intervals", cmd_var_si);
  detail::add_field_options(vs, o);
  vs->add_option("--n", o.n);
  vs->add_option("--h", o.h);
  vs->add_option("--method", o.method)->check(CLI::IsMember({"direct", "characters", "both"}));

  auto* va = sub("var-ap", "variance G(n;Q) of primes in progressions", cmd_var_ap);
  detail::add_field_options(va, o);
  va->add_option("--n", o.n);
  va->add_option("--Q", o.Q);
  va->add_option("--A", o.A, "also count primes in the class of A");
  va->add_option("--C", o.C, "constant in the small-range error bound");
  va->add_flag("--trace", o.trace, "compare with the odd primitive trace moment");
  va->add_option("--method", o.method)->check(CLI::IsMember({"direct", "characters", "both"}));

  auto* rm = sub("rmt", "Monte Carlo trace moment over Haar unitaries", cmd_rmt);
  rm->add_option("--N", o.N);
  rm->add_option("--n", o.n);
  rm->add_option("--samples", o.samples);
  rm->add_option("--seed", o.seed);
  rm->add_flag("--pu", o.pu, "also run the phase-invariance check");

  auto* p2 = sub("hl-psi2", "twisted pair count psi_2(n;K)", cmd_hl_psi2);
  detail::add_field_options(p2, o);
  p2->add_option("--n", o.n);
  p2->add_option("--K", o.K);

  auto* sg = sub("hl-sing", "truncated singular series", cmd_hl_sing);
  detail::add_field_options(sg, o);
  sg->add_option("--K", o.K);
  sg->add_option("--D", o.D, "truncation degree");

  auto* js = sub("hl-jsum", "singular-series J-sum by two routes", cmd_hl_jsum);
  detail::add_field_options(js, o);
  js->add_option("--Q", o.Q);
  js->add_option("--j", o.j);
  js->add_option("--D", o.D, "truncation degree");

  auto* hg = sub("hl-g", "G(n;Q) predicted from the pair counts", cmd_hl_g);
  detail::add_field_options(hg, o);
  hg->add_option("--n", o.n);
  hg->add_option("--Q", o.Q);
  hg->add_option("--D", o.D, "truncation degree");

  auto* sw = sub("sweep", "run a sweep spec file", nullptr);
  sw->add_option("--spec", o.spec, "sweep spec (JSON)");

  auto* ca = sub("cache", "inspect or manage the unit-group cache", nullptr);
  ca->add_option("action", o.action, "stat, clear or verify")->required()->check(CLI::IsMember({"stat", "clear", "verify"}));

  if (!args.empty() && !args[0].empty() && args[0][0] != '-' && !subs.count(args[0])) {
    err << "error: unknown subcommand '" << args[0] << "'\n" << app.help();
    return 2;
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  std::string command;
  for (const auto& [name, sc] : subs) {
    if (sc->parsed()) command = name;
  }

  const auto t0 = std::chrono::steady_clock::now();
  std::optional<fs::path> cache_dir;
  if (!rs.no_cache || command == "cache") cache_dir = resolve_cache_dir(rs.cache_dir);
  ExecConfig cfg;
  cfg.enum_cap = rs.enum_cap;
  cfg.phi_cap = rs.phi_cap;
  cfg.workers = rs.workers;
  cfg.cache_dir = cache_dir;
  auto cache = std::make_shared<UnitGroupCache>(rs.no_cache ? std::nullopt : cache_dir, rs.phi_cap);
  cfg.unit_groups = cache->provider();

  try {
    Json payload;
    std::string csv_text;
    if (command == "cache") {
      if (o.action == "stat") payload = cache_stat(*cache_dir);
      if (o.action == "clear") payload = cache_clear(*cache_dir);
      if (o.action == "verify") payload = cache_verify(*cache_dir, rs.phi_cap);
    } else if (command == "sweep") {
      const std::string path = need(o.spec, "--spec");
      SweepSpec spec = load_sweep_spec(path);
      if (!rs.format.empty() && rs.format != "json") spec.format = rs.format;
      payload = run_sweep(spec, cfg);
      csv_text = sweep_csv(payload);
      if (spec.output) {
        std::ofstream f(*spec.output, std::ios::binary | std::ios::trunc);
        if (!f) throw ValidationError("cannot write sweep output " + *spec.output);
        f << (spec.format == "csv" ? csv_text : payload.dump(2) + "\n");
      }
      rs.format = spec.format;
    } else {
      payload = handlers.at(command)(o, cfg);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& e : cache->corrupt()) err << "warning: cache file " << e.file << ": " << e.problem << "\n";
    if (rs.format == "csv") {
      out << (command == "sweep" ? csv_text : to_csv({payload}));
    } else {
      Json env = make_envelope(command, config_echo(command, o, rs, cache_dir), std::move(payload), secs);
      env["cache"] = cache->stats();
      out << env.dump(2) << "\n";
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace ffvar::io
