#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ffvar/harness/cli.hpp"

using namespace ffvar;
using namespace ffvar::io;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
  Json json() const { return Json::parse(out); }
  Json payload() const { return json().at("payload"); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            ("ffvar_" + std::string(info->test_suite_name()) + "_" + info->name() + "_" + std::to_string(::getpid()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string str() const { return path_.string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name, std::ios::binary) << text;
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> with(std::vector<std::string> a, const std::vector<std::string>& extra) {
  a.insert(a.end(), extra.begin(), extra.end());
  return a;
}

}  // namespace

TEST(Cli, VarSiExample) {
  auto r = run({"var-si", "--q", "3", "--n", "4", "--h", "1", "--method", "both", "--no-cache"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto p = r.payload();
  EXPECT_EQ(p["mean_exact"]["num"], "80");
  EXPECT_EQ(p["mean_exact"]["den"], "9");
  EXPECT_EQ(p["variance_exact"], p["variance_by_characters"]);
  EXPECT_EQ(p["variances_agree"], true);
  EXPECT_EQ(p["prediction"], 1);
}

TEST(Cli, RmtExample) {
  auto r = run({"rmt", "--N", "4", "--n", "2", "--samples", "100000", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto p = r.payload();
  EXPECT_EQ(p["exact"], 2);
  EXPECT_LE(std::abs(p["estimate"].get<double>() - 2.0), 4 * p["std_error"].get<double>());
}

TEST(Cli, VarApExample) {
  auto r = run({"var-ap", "--q", "3", "--Q", "T^2", "--n", "1", "--no-cache"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto p = r.payload();
  EXPECT_EQ(p["G_exact"]["num"], "3");
  EXPECT_EQ(p["G_exact"]["den"], "2");
  EXPECT_EQ(p["G_agree"], true);
  EXPECT_EQ(p["small_range"]["residual"]["num"], "0");
}

TEST(Cli, EverySubcommandSucceeds) {
  TempDir d;
  const std::vector<std::string> cache{"--cache-dir", d.str()};
  const std::vector<std::vector<std::string>> cmds = {
      {"irr", "--q", "4", "--n", "3"},
      {"irr", "--p", "3", "--Q", "T^4+T^2+2"},
      {"irr", "--p", "3", "--k", "2", "--modulus", "T^2+1", "--n", "2"},
      {"lambda-sum", "--q", "9", "--n", "3"},
      {"chars", "--q", "5", "--Q", "T^3", "--index", "7"},
      {"lfun", "--q", "5", "--Q", "T^3", "--index", "3", "--n", "4"},
      {"lfun", "--q", "5", "--Q", "T^3+T+1", "--n", "2", "--parity", "even"},
      {"lfun", "--q", "3", "--Q", "T^3", "--n", "2", "--all-characters", "--parity", "any"},
      {"var-si", "--q", "3", "--n", "5", "--h", "2"},
      {"var-ap", "--q", "5", "--Q", "T^3+T+1", "--n", "2", "--trace", "--A", "T+1", "--C", "4"},
      {"rmt", "--N", "3", "--n", "2", "--samples", "500", "--pu"},
      {"hl-psi2", "--q", "3", "--n", "2", "--K", "1"},
      {"hl-sing", "--q", "5", "--K", "T", "--D", "4"},
      {"hl-jsum", "--q", "5", "--Q", "T", "--j", "2"},
      {"hl-jsum", "--q", "2", "--Q", "T", "--j", "1", "--D", "3"},
      {"hl-g", "--q", "5", "--Q", "T^2", "--n", "3", "--D", "4"},
      {"cache", "stat"},
  };
  for (const auto& c : cmds) {
    auto r = run(with(c, cache));
    ASSERT_EQ(r.code, 0) << c[0] << ": " << r.err;
    auto e = r.json();
    EXPECT_EQ(e["tool"], "ffvar");
    EXPECT_EQ(e["tool_version"], kToolVersion);
    EXPECT_EQ(e["schema_version"], 1);
    EXPECT_EQ(e["command"], c[0]);
    EXPECT_TRUE(e["config"].is_object());
    EXPECT_TRUE(e["timing"]["wall_seconds"].is_number());
    EXPECT_TRUE(e["cache"].is_object());
  }
}

TEST(Cli, PayloadContents) {
  auto irr = run({"irr", "--q", "4", "--n", "3", "--no-cache"}).payload();
  EXPECT_EQ(irr["count"], "20");
  EXPECT_EQ(irr["agree"], true);
  auto fac = run({"irr", "--q", "3", "--Q", "T^3-T", "--no-cache"}).payload();
  EXPECT_EQ(fac["factors"].size(), 3u);
  EXPECT_EQ(fac["squarefree"], true);
  auto ls = run({"lambda-sum", "--q", "9", "--n", "3", "--no-cache"}).payload();
  EXPECT_EQ(ls["sum"], "729");
  auto psi2 = run({"hl-psi2", "--q", "3", "--n", "2", "--K", "1", "--no-cache"}).payload();
  EXPECT_EQ(psi2["psi2"], 6);
  auto lf = run({"lfun", "--q", "5", "--Q", "T^3", "--index", "3", "--n", "4", "--no-cache"}).payload();
  EXPECT_EQ(lf["psi_agree"], true);
  auto js = run({"hl-jsum", "--q", "5", "--Q", "T", "--j", "1", "--no-cache"}).payload();
  EXPECT_LT(js["relative_gap"].get<double>(), 1e-6);
  EXPECT_NEAR(js["prediction"].get<double>(), 6.0, 1e-12);
  auto js2 = run({"hl-jsum", "--q", "2", "--Q", "T", "--j", "1", "--no-cache"}).payload();
  EXPECT_TRUE(js2["jsum_series"].is_null());
}

TEST(Cli, VectorPolynomialForm) {
  auto a = run({"chars", "--q", "3", "--Q", "T^2+2*T", "--no-cache"});
  auto b = run({"chars", "--q", "3", "--Q", "[0,2,1]", "--no-cache"});
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(a.payload().dump(), b.payload().dump());
}

TEST(Cli, ConfigEcho) {
  auto e = run({"var-si", "--q", "5", "--n", "4", "--h", "1", "--method", "direct", "--enum-cap", "5000", "--no-cache"})
               .json();
  EXPECT_EQ(e["config"]["q"], 5);
  EXPECT_EQ(e["config"]["n"], 4);
  EXPECT_EQ(e["config"]["h"], 1);
  EXPECT_EQ(e["config"]["method"], "direct");
  EXPECT_EQ(e["config"]["enum_cap"], 5000);
  EXPECT_TRUE(e["config"]["cache_dir"].is_null());
}

TEST(Cli, ExitCodes) {
  auto bad_field = run({"irr", "--q", "6", "--n", "2", "--no-cache"});
  EXPECT_EQ(bad_field.code, 2);
  EXPECT_NE(bad_field.err.find("error"), std::string::npos);
  EXPECT_EQ(run({"irr", "--q", "3", "--no-cache"}).code, 2);
  EXPECT_EQ(run({"var-si", "--q", "3", "--n", "4", "--h", "3", "--no-cache"}).code, 2);
  EXPECT_EQ(run({"var-si", "--q", "3", "--n", "four", "--h", "1"}).code, 2);
  EXPECT_EQ(run({"var-si", "--q", "3", "--n", "4", "--h", "1", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"hl-jsum", "--q", "5", "--Q", "T", "--j", "1", "--bogus"}).code, 2);
  EXPECT_EQ(run({"chars", "--q", "3", "--Q", "T^2+", "--no-cache"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  auto cap = run({"lambda-sum", "--q", "5", "--n", "6", "--enum-cap", "1000", "--no-cache"});
  EXPECT_EQ(cap.code, 3);
  EXPECT_EQ(run({"chars", "--q", "5", "--Q", "T^5", "--phi-cap", "100", "--no-cache"}).code, 3);
  EXPECT_EQ(InternalError("x").exit_code(), 4);
  EXPECT_EQ(CapExceeded("x").exit_code(), 3);
  EXPECT_EQ(ValidationError("x").exit_code(), 2);
}

TEST(Cli, UnknownSubcommand) {
  auto r = run({"frobnicate", "--q", "3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("unknown subcommand 'frobnicate'"), std::string::npos);
  EXPECT_NE(r.err.find("var-si"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, HelpAndVersion) {
  auto h = run({"var-si", "--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("--method"), std::string::npos);
  auto v = run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find(kToolVersion), std::string::npos);
}

TEST(Cli, CsvFormat) {
  auto r = run({"var-si", "--q", "3", "--n", "4", "--h", "1", "--format", "csv", "--no-cache"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
  ASSERT_FALSE(r.out.empty());
  EXPECT_EQ(r.out.back(), '\n');
  std::istringstream in(r.out);
  std::string header, row, extra;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_FALSE(std::getline(in, extra));
  EXPECT_NE(header.find("mean_exact.num"), std::string::npos);
  EXPECT_NE(header.find("normalized_variance"), std::string::npos);
  EXPECT_NE(row.find("80"), std::string::npos);
}

TEST(Csv, QuotingAndFlattening) {
  EXPECT_EQ(csv_quote("plain"), "plain");
  EXPECT_EQ(csv_quote("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_quote("say \"hi\""), "\"say \"\"hi\"\"\"");
  auto flat = flatten(Json{{"a", 1}, {"b", Json{{"c", "x"}}}, {"d", Json::array({1, 2})}, {"e", nullptr}});
  std::map<std::string, std::string> m(flat.begin(), flat.end());
  EXPECT_EQ(m["a"], "1");
  EXPECT_EQ(m["b.c"], "x");
  EXPECT_EQ(m["d"], "[1,2]");
  EXPECT_EQ(m["e"], "");
  auto text = to_csv({Json{{"x", 1}, {"y", 2}}, Json{{"y", 3}, {"z", 4}}}, {"y"});
  EXPECT_EQ(text, "y,x,z\n2,1,\n3,,4\n");
}

TEST(Sweep, VarSiTable) {
  TempDir d;
  auto spec = d.write("s.json", R"({"experiment":"var-si","params":{"n":5,"h":1},"q":[3,5,7]})");
  auto r = run({"sweep", "--spec", spec, "--cache-dir", d.str()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto p = r.payload();
  ASSERT_EQ(p["rows"].size(), 3u);
  for (const auto& row : p["rows"]) {
    EXPECT_EQ(row["status"], "ok");
    EXPECT_EQ(row["prediction"], 2);
  }
  EXPECT_TRUE(p["warning"].is_null());
  EXPECT_TRUE(p["summary"]["argmin_q"].is_number());
}

TEST(Sweep, EmptyList) {
  TempDir d;
  auto spec = d.write("s.json", R"({"experiment":"var-ap","params":{"n":3,"Q":"T^3+T+1"},"q":[]})");
  auto r = run({"sweep", "--spec", spec, "--no-cache"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.payload()["rows"].empty());
  EXPECT_TRUE(r.payload()["summary"]["argmin_q"].is_null());
}

TEST(Sweep, FailingRowsDoNotAbort) {
  TempDir d;
  auto spec = d.write("s.json", R"({"experiment":"var-si","params":{"n":4,"h":1},"q":[3,6,5]})");
  auto r = run({"sweep", "--spec", spec, "--no-cache"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = r.payload()["rows"];
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0]["status"], "ok");
  EXPECT_EQ(rows[1]["status"], "error");
  EXPECT_FALSE(rows[1]["note"].get<std::string>().empty());
  EXPECT_EQ(rows[2]["status"], "ok");
  EXPECT_TRUE(r.payload()["warning"].is_string());
}

TEST(Sweep, SkippedRowsAndJsum) {
  TempDir d;
  auto ap = d.write("a.json", R"({"experiment":"var-ap","params":{"n":1,"Q":"T^3+T+1"},"q":[5,31]})");
  auto rows = run({"sweep", "--spec", ap, "--no-cache"}).payload()["rows"];
  EXPECT_EQ(rows[0]["status"], "ok");
  EXPECT_EQ(rows[1]["status"], "skipped");
  auto js = d.write("j.json", R"({"experiment":"hl-jsum","params":{"Q":"T","j":1},"q":[2,5,7]})");
  auto jr = run({"sweep", "--spec", js, "--no-cache"}).payload()["rows"];
  ASSERT_EQ(jr.size(), 3u);
  EXPECT_TRUE(jr[0]["jsum_series"].is_null());
  EXPECT_TRUE(jr[1]["jsum_series"].is_number());
}

TEST(Sweep, OutputFileAndCsv) {
  TempDir d;
  const auto out = (d.path() / "table.csv").string();
  auto spec = d.write("s.json", R"({"experiment":"var-si","params":{"n":4,"h":1},"q":[3,5],"format":"csv","output":")" +
                                    out + R"("})");
  auto r = run({"sweep", "--spec", spec, "--no-cache"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string text = slurp(out);
  EXPECT_EQ(text, r.out);
  EXPECT_EQ(text.rfind("q,status,note", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
  auto spec2 = d.write("t.json", R"({"experiment":"var-si","params":{"n":4,"h":1},"q":[3]})");
  auto csv = run({"sweep", "--spec", spec2, "--format", "csv", "--no-cache"});
  EXPECT_EQ(csv.out.rfind("q,status,note", 0), 0u);
}

TEST(Sweep, BadSpecs) {
  TempDir d;
  EXPECT_EQ(run({"sweep", "--spec", (d.path() / "missing.json").string()}).code, 2);
  EXPECT_EQ(run({"sweep", "--spec", d.write("a.json", "{not json")}).code, 2);
  EXPECT_EQ(run({"sweep", "--spec", d.write("b.json", R"({"experiment":"var-xx","q":[3]})")}).code, 2);
  EXPECT_EQ(run({"sweep", "--spec", d.write("c.json", R"({"experiment":"var-si","params":{"n":4},"q":[3]})")}).code, 2);
  EXPECT_EQ(run({"sweep", "--spec", d.write("e.json", R"({"experiment":"var-si","params":{"n":4,"h":1}})")}).code, 2);
  EXPECT_EQ(run({"sweep"}).code, 2);
}

TEST(Cache, StatClearVerify) {
  TempDir d;
  const std::vector<std::string> cd{"--cache-dir", d.str()};
  auto first = run(with({"chars", "--q", "5", "--Q", "T^3+T+1"}, cd));
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_EQ(first.json()["cache"]["built"], 1);
  auto second = run(with({"chars", "--q", "5", "--Q", "T^3+T+1"}, cd));
  EXPECT_EQ(second.json()["cache"]["disk_hits"], 1);
  EXPECT_EQ(second.json()["cache"]["built"], 0);
  EXPECT_EQ(first.payload().dump(), second.payload().dump());
  run(with({"var-ap", "--q", "3", "--Q", "T^2", "--n", "2"}, cd));

  auto stat = run(with({"cache", "stat"}, cd)).payload();
  EXPECT_EQ(stat["entries"], 2);
  for (const auto& f : stat["files"]) EXPECT_EQ(f["readable"], true);
  auto verify = run(with({"cache", "verify"}, cd)).payload();
  EXPECT_EQ(verify["checked"], 2);
  EXPECT_EQ(verify["passed"], 2);
  EXPECT_EQ(verify["failed"], 0);
  auto c1 = run(with({"cache", "clear"}, cd));
  auto c2 = run(with({"cache", "clear"}, cd));
  EXPECT_EQ(c1.code, 0);
  EXPECT_EQ(c2.code, 0);
  EXPECT_EQ(c1.payload()["removed"], 2);
  EXPECT_EQ(c2.payload()["removed"], 0);
  EXPECT_EQ(run(with({"cache", "stat"}, cd)).payload()["entries"], 0);
  EXPECT_EQ(run(with({"cache", "purge"}, cd)).code, 2);
}

TEST(Cache, MemoryHitsWithinOneRun) {
  auto r = run({"var-ap", "--q", "5", "--Q", "T^2+2", "--n", "2", "--trace", "--no-cache"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["cache"]["built"], 1);
  EXPECT_GE(r.json()["cache"]["memory_hits"].get<int>(), 1);
  EXPECT_TRUE(r.json()["cache"]["directory"].is_null());
}

TEST(Cache, CorruptFileIsFlaggedAndRebuilt) {
  TempDir d;
  const std::vector<std::string> cd{"--cache-dir", d.str()};
  const std::vector<std::string> cmd{"lfun", "--q", "5", "--Q", "T^3", "--index", "3", "--n", "3"};
  auto clean = run(with(cmd, cd));
  ASSERT_EQ(clean.code, 0);
  auto files = cache_files(d.path());
  ASSERT_EQ(files.size(), 1u);
  const std::string good = slurp(files[0]);

  std::ofstream(files[0], std::ios::binary | std::ios::trunc) << "{\"schema_version\": 1, truncated";
  auto stat = run(with({"cache", "stat"}, cd)).payload();
  EXPECT_EQ(stat["files"][0]["readable"], false);
  auto verify = run(with({"cache", "verify"}, cd)).payload();
  EXPECT_EQ(verify["failed"], 1);

  auto again = run(with(cmd, cd));
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_NE(again.err.find("warning: cache file"), std::string::npos);
  EXPECT_EQ(again.json()["cache"]["corrupt"].size(), 1u);
  EXPECT_EQ(again.json()["cache"]["built"], 1);
  EXPECT_EQ(again.payload().dump(), clean.payload().dump());
  EXPECT_EQ(slurp(files[0]), good);
  EXPECT_EQ(run(with({"cache", "verify"}, cd)).payload()["passed"], 1);
}

TEST(Cache, TamperedTableIsRejected) {
  TempDir d;
  const std::vector<std::string> cd{"--cache-dir", d.str()};
  const std::vector<std::string> cmd{"chars", "--q", "3", "--Q", "T^3"};
  auto clean = run(with(cmd, cd));
  auto files = cache_files(d.path());
  ASSERT_EQ(files.size(), 1u);
  Json rec = Json::parse(slurp(files[0]));
  auto& dl = rec["dlog"];
  for (std::size_t i = 0; i + 1 < dl.size(); ++i) {
    if (dl[i].get<int>() >= 0 && dl[i + 1].get<int>() >= 0) {
      std::swap(dl[i], dl[i + 1]);
      break;
    }
  }
  std::ofstream(files[0], std::ios::binary | std::ios::trunc) << rec.dump();
  auto verify = run(with({"cache", "verify"}, cd)).payload();
  EXPECT_EQ(verify["failed"], 1);
  auto again = run(with(cmd, cd));
  ASSERT_EQ(again.code, 0);
  EXPECT_EQ(again.json()["cache"]["corrupt"].size(), 1u);
  EXPECT_EQ(again.payload().dump(), clean.payload().dump());
}

TEST(Cache, DirectoryResolution) {
  TempDir d;
  const auto env_dir = (d.path() / "from_env").string();
  ::setenv("FFVAR_CACHE_DIR", env_dir.c_str(), 1);
  EXPECT_EQ(resolve_cache_dir(std::nullopt), fs::path(env_dir));
  EXPECT_EQ(resolve_cache_dir(std::string("/x/y")), fs::path("/x/y"));
  auto r = run({"chars", "--q", "3", "--Q", "T^2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["config"]["cache_dir"], env_dir);
  EXPECT_EQ(cache_files(env_dir).size(), 1u);
  ::unsetenv("FFVAR_CACHE_DIR");
  EXPECT_EQ(resolve_cache_dir(std::nullopt), fs::path(".ffvar-cache"));
  auto none = run({"chars", "--q", "3", "--Q", "T^2", "--no-cache", "--cache-dir", (d.path() / "unused").string()});
  ASSERT_EQ(none.code, 0);
  EXPECT_FALSE(fs::exists(d.path() / "unused"));
}

TEST(Determinism, ExactCommandsAreByteIdentical) {
  TempDir d;
  const std::vector<std::vector<std::string>> cmds = {
      {"irr", "--q", "4", "--n", "4"},
      {"irr", "--q", "5", "--Q", "T^6+T+3"},
      {"lambda-sum", "--q", "7", "--n", "4"},
      {"chars", "--q", "5", "--Q", "T^3-T"},
      {"lfun", "--q", "5", "--Q", "T^3+T+1", "--index", "11", "--n", "5"},
      {"lfun", "--q", "7", "--Q", "T^3", "--n", "3"},
      {"var-si", "--q", "5", "--n", "5", "--h", "1"},
      {"var-ap", "--q", "7", "--Q", "T^3+T+1", "--n", "3", "--trace"},
      {"hl-psi2", "--q", "5", "--n", "3", "--K", "T+1"},
      {"hl-sing", "--q", "7", "--K", "T^2+1"},
      {"hl-jsum", "--q", "5", "--Q", "T", "--j", "3"},
      {"hl-g", "--q", "5", "--Q", "T^2", "--n", "3"},
      {"rmt", "--N", "4", "--n", "3", "--samples", "2000", "--seed", "42"},
  };
  for (const auto& c : cmds) {
    auto a = run(with(c, {"--no-cache"}));
    auto b = run(with(c, {"--no-cache"}));
    auto w = run(with(c, {"--workers", "4", "--cache-dir", d.str()}));
    ASSERT_EQ(a.code, 0) << c[0] << ": " << a.err;
    ASSERT_EQ(w.code, 0) << c[0] << ": " << w.err;
    const std::string pa = a.payload().dump(), pb = b.payload().dump(), pw = w.payload().dump();
    EXPECT_EQ(pa, pb) << c[0];
    EXPECT_EQ(pa, pw) << c[0];
  }
}

TEST(Envelope, RoundTripsThroughJson) {
  for (const auto& c : std::vector<std::vector<std::string>>{
           {"var-si", "--q", "3", "--n", "4", "--h", "1", "--no-cache"},
           {"var-ap", "--q", "3", "--Q", "T^2-1", "--n", "3", "--no-cache"},
           {"lfun", "--q", "3", "--Q", "T^3", "--index", "5", "--no-cache"}}) {
    auto r = run(c);
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(Json::parse(r.out).dump(2) + "\n", r.out);
  }
}

TEST(Envelope, RationalRoundTrip) {
  for (const auto& q : {Rational(80, 9), Rational(-3, 2), Rational(0), Rational(BigInt("123456789012345678901234567890"), 7)}) {
    EXPECT_EQ(rational_from_json(to_json(q)), q);
    EXPECT_EQ(rational_from_json(Json::parse(to_json(q).dump())), q);
  }
  EXPECT_THROW(rational_from_json(Json{{"num", "1"}}), ValidationError);
}
