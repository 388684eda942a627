#pragma once

// The ring F_q[T]/Q with residues stored as base-q codes (digit i is the
// coefficient of T^i), plus fast residue streams over M_n.

#include <cstdint>
#include <vector>

#include "ffvar/errors.hpp"
#include "ffvar/exec.hpp"
#include "ffvar/poly.hpp"

namespace ffvar {

class ResidueRing {
 public:
  ResidueRing(const Poly& Q, std::uint64_t size_cap)
      : field_(Q.field()), modulus_(Q.is_zero() ? Q : Q.monic()), m_(Q.degree()) {
    require(m_ >= 1, "modulus must have degree >= 1");
    size_ = checked_count(field_->q(), m_, size_cap, "residue table");
    q_ = field_->q();
    for (int i = 0; i < m_; ++i) qmod_.push_back(modulus_.coeffs()[static_cast<std::size_t>(i)].code());
  }

  const FieldPtr& field() const { return field_; }
  const Poly& modulus() const { return modulus_; }
  int degree() const { return m_; }
  std::uint64_t size() const { return size_; }

  std::uint64_t code_of(const Poly& f) const {
    require(Poly::same_field(f, modulus_), "polynomial over a different field");
    return residue_code(f % modulus_);
  }
  Poly poly_of(std::uint64_t code) const { return poly_from_code(field_, code); }

  void digits(std::uint64_t code, std::vector<std::uint32_t>& out) const {
    out.resize(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      out[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(code % q_);
      code /= q_;
    }
  }
  std::uint64_t code(const std::vector<std::uint32_t>& d) const {
    std::uint64_t v = 0;
    for (std::size_t i = static_cast<std::size_t>(m_); i-- > 0;) v = v * q_ + d[i];
    return v;
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    thread_local std::vector<std::uint32_t> da, db, prod;
    digits(a, da);
    digits(b, db);
    const Field& F = *field_;
    const std::size_t m = static_cast<std::size_t>(m_);
    prod.assign(2 * m - 1, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (!da[i]) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (!db[j]) continue;
        prod[i + j] = F.add(FieldElem(prod[i + j]), F.mul(FieldElem(da[i]), FieldElem(db[j]))).code();
      }
    }
    for (std::size_t i = 2 * m - 1; i-- > m;) {
      const FieldElem c(prod[i]);
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) {
        prod[i - m + j] = F.sub(FieldElem(prod[i - m + j]), F.mul(c, FieldElem(qmod_[j]))).code();
      }
    }
    prod.resize(m);
    return code(prod);
  }

  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = m_ >= 1 ? 1 % size_ : 0;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// Calls fn(index, residue_code) for monic f of degree n with index in [lo, hi).
  template <class Fn>
  void for_each_monic_residue(int n, std::uint64_t lo, std::uint64_t hi, Fn&& fn) const {
    if (lo >= hi) return;
    const Field& F = *field_;
    const std::size_t m = static_cast<std::size_t>(m_);
    if (n < m_) {
      for (std::uint64_t idx = lo; idx < hi; ++idx) fn(idx, idx + pow_u64(q_, static_cast<std::uint64_t>(n)));
      return;
    }
    // basis[i] = digits of T^i mod Q for i <= n
    std::vector<std::vector<std::uint32_t>> basis(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) digits(code_of(Poly::monomial(field_, F.one(), i)), basis[static_cast<std::size_t>(i)]);
    // level i holds r(T^n) + sum_{j >= i} c_j r(T^j)
    std::vector<std::vector<std::uint32_t>> level(static_cast<std::size_t>(n) + 1,
                                                  std::vector<std::uint32_t>(m));
    std::vector<std::uint32_t> c(static_cast<std::size_t>(n));
    std::uint64_t t = lo;
    for (int i = 0; i < n; ++i) {
      c[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(t % q_);
      t /= q_;
    }
    level[static_cast<std::size_t>(n)] = basis[static_cast<std::size_t>(n)];
    auto rebuild = [&](int top) {
      for (int i = top; i >= 0; --i) {
        auto& dst = level[static_cast<std::size_t>(i)];
        const auto& src = level[static_cast<std::size_t>(i) + 1];
        const FieldElem ci(c[static_cast<std::size_t>(i)]);
        const auto& bi = basis[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < m; ++j) {
          dst[j] = ci.is_zero() ? src[j] : F.add(FieldElem(src[j]), F.mul(ci, FieldElem(bi[j]))).code();
        }
      }
    };
    rebuild(n - 1);
    for (std::uint64_t idx = lo;;) {
      fn(idx, code(level[0]));
      if (++idx >= hi) break;
      int i = 0;
      while (++c[static_cast<std::size_t>(i)] == q_) {
        c[static_cast<std::size_t>(i)] = 0;
        ++i;
      }
      rebuild(i);
    }
  }

 private:
  FieldPtr field_;
  Poly modulus_;
  int m_;
  std::uint64_t q_ = 0;
  std::uint64_t size_ = 0;
  std::vector<std::uint32_t> qmod_;
};

}  // namespace ffvar
