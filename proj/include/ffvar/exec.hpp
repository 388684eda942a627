#pragma once

// Run limits and the deterministic worker pool shared by all experiment code.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ffvar/errors.hpp"
#include "ffvar/numeric.hpp"

namespace ffvar {

class Poly;
class UnitGroup;

struct ExecConfig {
  std::uint64_t enum_cap = 100'000'000;  // max polynomials in one enumeration
  std::uint64_t phi_cap = 1'000'000;     // max unit-group order
  unsigned workers = 1;
  std::optional<std::filesystem::path> cache_dir;  // unit-group tables; none = no disk cache
  // Optional source of unit groups (the harness installs a caching one).
  using UnitGroupProvider = std::function<std::shared_ptr<const UnitGroup>(const Poly&)>;
  UnitGroupProvider unit_groups;
};

inline std::uint64_t checked_count(std::uint64_t q, int n, std::uint64_t cap, const std::string& what) {
  auto c = pow_capped(q, static_cast<std::uint64_t>(n), cap);
  if (!c) {
    throw CapExceeded(what + ": " + std::to_string(q) + "^" + std::to_string(n) +
                      " exceeds cap " + std::to_string(cap));
  }
  return *c;
}

/// Splits [0, n) into contiguous chunks and runs fn(begin, end) on each.
/// Chunk boundaries depend only on n and the worker count; callers write
/// results by index so output never depends on scheduling.
template <class Fn>
void parallel_for(std::uint64_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < 2) {
    fn(std::uint64_t{0}, n);
    return;
  }
  std::uint64_t w = std::min<std::uint64_t>(workers, n);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(w);
  for (std::uint64_t t = 0; t < w; ++t) {
    std::uint64_t lo = n * t / w, hi = n * (t + 1) / w;
    pool.emplace_back([&, t, lo, hi] {
      try {
        fn(lo, hi);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace ffvar
