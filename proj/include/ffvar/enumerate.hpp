#pragma once

// Monic enumeration, the reversal involution f -> f*, short-interval
// membership, and sieved tables of irreducibles and of Λ over M_n.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

#include "ffvar/errors.hpp"
#include "ffvar/exec.hpp"
#include "ffvar/factor.hpp"
#include "ffvar/poly.hpp"

namespace ffvar {

/// The slice [lo, hi) of M_n in index order.
class MonicRange {
 public:
  class iterator {
   public:
    using value_type = Poly;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(const MonicRange* r, std::uint64_t i) : r_(r), i_(i) {}
    Poly operator*() const { return monic_from_index(r_->field_, r_->n_, i_); }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    iterator operator++(int) {
      auto t = *this;
      ++i_;
      return t;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.i_ == b.i_; }

   private:
    const MonicRange* r_ = nullptr;
    std::uint64_t i_ = 0;
  };

  MonicRange(FieldPtr F, int n, std::uint64_t lo, std::uint64_t hi)
      : field_(std::move(F)), n_(n), lo_(lo), hi_(hi) {}
  iterator begin() const { return {this, lo_}; }
  iterator end() const { return {this, hi_}; }
  std::uint64_t size() const { return hi_ - lo_; }

 private:
  FieldPtr field_;
  int n_;
  std::uint64_t lo_, hi_;
};

struct IndexRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

inline MonicRange enumerate_monic(const FieldPtr& F, int n, std::optional<IndexRange> range = std::nullopt,
                                  std::uint64_t cap = ExecConfig{}.enum_cap) {
  require(n >= 0, "degree must be >= 0");
  std::uint64_t total = checked_count(F->q(), n, cap, "monic enumeration");
  IndexRange r = range.value_or(IndexRange{0, total});
  require(r.lo <= r.hi && r.hi <= total, "index range outside [0, q^n)");
  return MonicRange(F, n, r.lo, r.hi);
}

/// f*(T) = T^deg f · f(1/T); 0* = 0.
inline Poly reverse_star(const Poly& f) {
  std::vector<FieldElem> v(f.coeffs().rbegin(), f.coeffs().rend());
  return Poly(f.field(), std::move(v));
}

/// I(A;h) = {A + g : deg g <= h}, in order of the code of g.
inline std::vector<Poly> interval_members(const Poly& A, int h) {
  require(h >= 0, "interval radius must be >= 0");
  require(h < A.degree(), "interval radius h must be < deg A");
  const std::uint64_t count = pow_u64(A.F().q(), static_cast<std::uint64_t>(h) + 1);
  std::vector<Poly> out;
  out.reserve(count);
  for (std::uint64_t c = 0; c < count; ++c) out.push_back(A + poly_from_code(A.field(), c));
  return out;
}

namespace detail {

// Monic product of two monic code-indexed polynomials (lower-coefficient digits).
inline std::uint64_t monic_product_index(const Field& F, const std::vector<std::uint32_t>& a,
                                         const std::vector<std::uint32_t>& b,
                                         std::vector<std::uint32_t>& scratch) {
  // a, b include the leading 1.
  const std::size_t n = a.size() + b.size() - 1;
  scratch.assign(n, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      scratch[i + j] = F.add(FieldElem(scratch[i + j]), F.mul(FieldElem(a[i]), FieldElem(b[j]))).code();
    }
  }
  std::uint64_t idx = 0;
  const std::uint64_t q = F.q();
  for (std::size_t i = n - 1; i-- > 0;) idx = idx * q + scratch[i];
  return idx;
}

inline void digits_of(std::uint64_t idx, int n, std::uint64_t q, std::vector<std::uint32_t>& out) {
  out.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(idx % q);
    idx /= q;
  }
  out.back() = 1;
}

}  // namespace detail

/// Irreducibility flags over M_d (by monic index), built by marking products.
class IrreducibleSieve {
 public:
  IrreducibleSieve(FieldPtr F, int max_degree, std::uint64_t cap = ExecConfig{}.enum_cap)
      : field_(std::move(F)) {
    require(max_degree >= 1, "sieve degree must be >= 1");
    checked_count(field_->q(), max_degree, cap, "irreducible sieve");
    flags_.resize(static_cast<std::size_t>(max_degree) + 1);
    lists_.resize(static_cast<std::size_t>(max_degree) + 1);
    for (int d = 1; d <= max_degree; ++d) build(d);
  }

  const std::vector<std::uint64_t>& irreducibles(int d) const { return lists_.at(static_cast<std::size_t>(d)); }
  bool is_irreducible_index(int d, std::uint64_t idx) const { return flags_.at(static_cast<std::size_t>(d))[idx]; }

 private:
  void build(int d) {
    const Field& F = *field_;
    const std::uint64_t q = F.q();
    const std::uint64_t total = pow_u64(q, static_cast<std::uint64_t>(d));
    std::vector<bool> flag(total, true);
    std::vector<std::uint32_t> pa, gb, scratch;
    for (int a = 1; 2 * a <= d; ++a) {
      const std::uint64_t rest = pow_u64(q, static_cast<std::uint64_t>(d - a));
      for (std::uint64_t P : lists_[static_cast<std::size_t>(a)]) {
        detail::digits_of(P, a, q, pa);
        for (std::uint64_t g = 0; g < rest; ++g) {
          detail::digits_of(g, d - a, q, gb);
          flag[detail::monic_product_index(F, pa, gb, scratch)] = false;
        }
      }
    }
    auto& list = lists_[static_cast<std::size_t>(d)];
    for (std::uint64_t i = 0; i < total; ++i) {
      if (flag[i]) list.push_back(i);
    }
    flags_[static_cast<std::size_t>(d)] = std::move(flag);
  }

  FieldPtr field_;
  std::vector<std::vector<bool>> flags_;
  std::vector<std::vector<std::uint64_t>> lists_;
};

/// Λ(f) for every f in M_n, indexed by monic index.
class LambdaTable {
 public:
  LambdaTable(FieldPtr F, int n, std::uint64_t cap = ExecConfig{}.enum_cap) : field_(std::move(F)), n_(n) {
    require(n >= 1, "degree must be >= 1");
    const std::uint64_t total = checked_count(field_->q(), n, cap, "von Mangoldt table");
    values_.assign(total, 0);
    IrreducibleSieve sieve(field_, n, cap);
    for (auto d : divisors(static_cast<std::uint64_t>(n))) {
      const int deg = static_cast<int>(d);
      const unsigned k = static_cast<unsigned>(n / deg);
      for (std::uint64_t P : sieve.irreducibles(deg)) {
        if (k == 1) {
          values_[P] = static_cast<std::uint8_t>(deg);
        } else {
          Poly pk = poly_pow(monic_from_index(field_, deg, P), k);
          values_[monic_index(pk)] = static_cast<std::uint8_t>(deg);
        }
      }
    }
  }

  int degree() const { return n_; }
  const FieldPtr& field() const { return field_; }
  std::uint64_t size() const { return values_.size(); }
  int operator[](std::uint64_t idx) const { return values_[idx]; }
  int at(const Poly& f) const { return values_[monic_index(f)]; }

 private:
  FieldPtr field_;
  int n_;
  std::vector<std::uint8_t> values_;
};

/// Process-wide memo of Λ tables keyed by (field, n).
inline std::shared_ptr<const LambdaTable> lambda_table(const FieldPtr& F, int n,
                                                       std::uint64_t cap = ExecConfig{}.enum_cap) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint64_t, int, std::vector<std::uint32_t>, int>,
                  std::shared_ptr<const LambdaTable>>
      memo;
  auto key = std::make_tuple(F->p(), F->k(), F->spec().modulus, n);
  {
    std::lock_guard lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  auto table = std::make_shared<const LambdaTable>(F, n, cap);
  std::lock_guard lock(mu);
  if (memo.size() > 16) memo.clear();
  return memo.emplace(key, table).first->second;
}

}  // namespace ffvar
