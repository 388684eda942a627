#pragma once

// On-disk cache of unit-group tables, one JSON file per (field, Q).

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ffvar/characters.hpp"
#include "ffvar/harness/json_io.hpp"

namespace ffvar::io {

namespace fs = std::filesystem;

inline constexpr int kCacheSchemaVersion = 1;

/// flag > FFVAR_CACHE_DIR > ./.ffvar-cache
inline fs::path resolve_cache_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return fs::path(*flag);
  if (const char* env = std::getenv("FFVAR_CACHE_DIR"); env && *env) return fs::path(env);
  return fs::path(".ffvar-cache");
}

inline std::string cache_key(const Poly& Q) {
  const Field& F = Q.F();
  std::ostringstream os;
  os << "p" << F.p() << "k" << F.k();
  if (F.k() > 1) {
    os << "m";
    for (std::size_t i = 0; i < F.spec().modulus.size(); ++i) os << (i ? "-" : "") << F.spec().modulus[i];
  }
  os << "_Q";
  for (std::size_t i = 0; i < Q.coeffs().size(); ++i) os << (i ? "-" : "") << Q.coeffs()[i].code();
  return os.str();
}

inline fs::path cache_file(const fs::path& dir, const Poly& Q) { return dir / ("unitgroup_" + cache_key(Q) + ".json"); }

inline std::uint64_t table_digest(const UnitGroup& G) {
  std::uint64_t h = splitmix64(G.phi());
  for (auto d : G.orders()) h = splitmix64(h ^ d);
  for (auto g : G.generators()) h = splitmix64(h ^ g);
  for (auto v : G.dlog_table()) h = splitmix64(h ^ v);
  return h;
}

inline Json unit_group_record(const UnitGroup& G) {
  Json j;
  j["schema_version"] = kCacheSchemaVersion;
  j["kind"] = "unitgroup";
  j["field"] = to_json(*G.field());
  std::vector<std::uint32_t> m;
  for (auto c : G.modulus().coeffs()) m.push_back(c.code());
  j["modulus"] = m;
  j["phi"] = G.phi();
  j["orders"] = G.orders();
  j["generators"] = G.generators();
  Json dl = Json::array();
  for (auto v : G.dlog_table()) {
    if (v == UnitGroup::kNonUnit) {
      dl.push_back(-1);
    } else {
      dl.push_back(v);
    }
  }
  j["dlog"] = std::move(dl);
  j["digest"] = std::to_string(table_digest(G));
  return j;
}

/// Throws ValidationError on any mismatch or damage.
inline UnitGroupPtr unit_group_from_record(const Json& j, const Poly& Q, std::uint64_t phi_cap) {
  require(j.is_object(), "cache record is not an object");
  require(j.value("schema_version", 0) == kCacheSchemaVersion, "cache schema version mismatch");
  require(j.value("kind", std::string()) == "unitgroup", "cache record kind mismatch");
  const Json& f = j.at("field");
  require(f.at("p").get<std::uint64_t>() == Q.F().p() && f.at("k").get<int>() == Q.F().k() &&
              f.at("modulus").get<std::vector<std::uint32_t>>() == Q.F().spec().modulus,
          "cache record field mismatch");
  std::vector<std::uint32_t> m;
  for (auto c : Q.coeffs()) m.push_back(c.code());
  require(j.at("modulus").get<std::vector<std::uint32_t>>() == m, "cache record modulus mismatch");
  std::vector<std::uint32_t> dlog;
  dlog.reserve(j.at("dlog").size());
  for (const auto& v : j.at("dlog")) {
    const auto x = v.get<std::int64_t>();
    require(x >= -1 && x < static_cast<std::int64_t>(UnitGroup::kNonUnit), "dlog entry out of range");
    dlog.push_back(x < 0 ? UnitGroup::kNonUnit : static_cast<std::uint32_t>(x));
  }
  auto G = UnitGroup::from_parts(Q, j.at("generators").get<std::vector<std::uint64_t>>(),
                                 j.at("orders").get<std::vector<std::uint64_t>>(), std::move(dlog), phi_cap);
  require(G->phi() == j.at("phi").get<std::uint64_t>(), "cache record phi mismatch");
  require(std::to_string(table_digest(*G)) == j.at("digest").get<std::string>(), "cache record digest mismatch");
  return G;
}

inline Json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

inline void write_file_atomic(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()) % 1000000);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + tmp.string());
    out << text;
  }
  fs::rename(tmp, path);
}

struct CacheEvent {
  std::string file;
  std::string problem;
};

/// Memoizing provider backed by the cache directory. Damaged files are
/// recorded and rebuilt; they never reach the caller.
class UnitGroupCache {
 public:
  UnitGroupCache(std::optional<fs::path> dir, std::uint64_t phi_cap) : dir_(std::move(dir)), phi_cap_(phi_cap) {}

  UnitGroupPtr get(const Poly& Qin) {
    require(!Qin.is_zero(), "modulus Q must be nonzero");
    const Poly Q = Qin.monic();
    const std::string key = cache_key(Q);
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = memo_.find(key); it != memo_.end()) {
      ++memory_hits_;
      return it->second;
    }
    UnitGroupPtr G;
    if (dir_) G = load(Q);
    if (!G) {
      G = UnitGroup::build(Q, phi_cap_);
      ++built_;
      if (dir_) store(*G);
    }
    memo_.emplace(key, G);
    return G;
  }

  ExecConfig::UnitGroupProvider provider() {
    return [this](const Poly& Q) { return get(Q); };
  }

  Json stats() const {
    std::lock_guard<std::mutex> lock(mu_);
    Json bad = Json::array();
    for (const auto& e : corrupt_) bad.push_back(Json{{"file", e.file}, {"problem", e.problem}});
    return Json{{"directory", dir_ ? Json(dir_->string()) : Json(nullptr)},
                {"memory_hits", memory_hits_},
                {"disk_hits", disk_hits_},
                {"built", built_},
                {"corrupt", bad}};
  }

  const std::vector<CacheEvent>& corrupt() const { return corrupt_; }

 private:
  UnitGroupPtr load(const Poly& Q) {
    const fs::path path = cache_file(*dir_, Q);
    std::error_code ec;
    if (!fs::exists(path, ec)) return nullptr;
    try {
      auto G = unit_group_from_record(read_json_file(path), Q, phi_cap_);
      ++disk_hits_;
      return G;
    } catch (const CapExceeded&) {
      throw;
    } catch (const std::exception& e) {
      corrupt_.push_back({path.filename().string(), e.what()});
      return nullptr;
    }
  }

  void store(const UnitGroup& G) {
    try {
      write_file_atomic(cache_file(*dir_, G.modulus()), unit_group_record(G).dump());
    } catch (const std::exception& e) {
      corrupt_.push_back({cache_file(*dir_, G.modulus()).filename().string(), std::string("write failed: ") + e.what()});
    }
  }

  std::optional<fs::path> dir_;
  std::uint64_t phi_cap_;
  mutable std::mutex mu_;
  std::map<std::string, UnitGroupPtr> memo_;
  std::vector<CacheEvent> corrupt_;
  std::uint64_t memory_hits_ = 0, disk_hits_ = 0, built_ = 0;
};

inline std::vector<fs::path> cache_files(const fs::path& dir) {
  std::vector<fs::path> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (e.is_regular_file() && name.rfind("unitgroup_", 0) == 0 && e.path().extension() == ".json") {
      out.push_back(e.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Reconstructs Q from a record without trusting the table itself.
inline Poly modulus_from_record(const Json& j) {
  const Json& f = j.at("field");
  auto F = Field::make(f.at("p").get<std::uint64_t>(), f.at("k").get<int>(),
                       f.at("modulus").get<std::vector<std::uint32_t>>());
  std::vector<FieldElem> c;
  for (auto v : j.at("modulus").get<std::vector<std::uint32_t>>()) c.push_back(F->elem(v));
  return Poly(F, std::move(c));
}

inline Json cache_stat(const fs::path& dir) {
  Json files = Json::array();
  std::uintmax_t bytes = 0;
  for (const auto& p : cache_files(dir)) {
    Json e{{"file", p.filename().string()}, {"bytes", fs::file_size(p)}};
    bytes += fs::file_size(p);
    try {
      Json j = read_json_file(p);
      e["modulus"] = to_text(modulus_from_record(j));
      e["phi"] = j.at("phi");
      e["readable"] = true;
    } catch (const std::exception& ex) {
      e["readable"] = false;
      e["problem"] = ex.what();
    }
    files.push_back(std::move(e));
  }
  return Json{{"directory", dir.string()},
              {"exists", fs::is_directory(dir)},
              {"entries", files.size()},
              {"bytes", bytes},
              {"files", files}};
}

inline Json cache_clear(const fs::path& dir) {
  std::uint64_t removed = 0;
  for (const auto& p : cache_files(dir)) {
    std::error_code ec;
    if (fs::remove(p, ec)) ++removed;
  }
  return Json{{"directory", dir.string()}, {"removed", removed}};
}

/// Rebuilds every table from scratch and compares it bit-for-bit with the file.
inline Json cache_verify(const fs::path& dir, std::uint64_t phi_cap) {
  Json files = Json::array();
  std::uint64_t passed = 0, failed = 0;
  for (const auto& p : cache_files(dir)) {
    Json e{{"file", p.filename().string()}};
    try {
      Json j = read_json_file(p);
      const Poly Q = modulus_from_record(j);
      auto fresh = UnitGroup::build(Q, phi_cap);
      const bool same = unit_group_record(*fresh).dump() == j.dump();
      e["modulus"] = to_text(Q);
      e["match"] = same;
      if (!same) e["problem"] = "stored table differs from a fresh build";
    } catch (const std::exception& ex) {
      e["match"] = false;
      e["problem"] = ex.what();
    }
    (e["match"].get<bool>() ? passed : failed) += 1;
    files.push_back(std::move(e));
  }
  return Json{{"directory", dir.string()}, {"checked", passed + failed}, {"passed", passed}, {"failed", failed},
              {"files", files}};
}

}  // namespace ffvar::io
