#pragma once

// The unit group (F_q[T]/Q)^x as a product of cyclic factors, and its
// Dirichlet characters with exact root-of-unity values.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "ffvar/cycint.hpp"
#include "ffvar/errors.hpp"
#include "ffvar/exec.hpp"
#include "ffvar/factor.hpp"
#include "ffvar/numeric.hpp"
#include "ffvar/poly.hpp"
#include "ffvar/residue.hpp"

namespace ffvar {

/// Φ(Q) = Π |P|^(e-1) (|P| - 1) over the factorization of Q.
inline BigInt phi_of(const Factorization& fac, std::uint64_t q) {
  BigInt r = 1;
  for (const auto& [P, e] : fac.factors) {
    BigInt norm = pow_big(q, static_cast<std::uint64_t>(P.degree()));
    BigInt pe = 1;
    for (int i = 1; i < e; ++i) pe *= norm;
    r *= pe * (norm - 1);
  }
  return r;
}

inline BigInt phi_of(const Poly& Q) { return phi_of(factorize(Q), Q.F().q()); }

namespace detail {

// Smith normal form of a small square integer matrix: returns diag entries
// and V, Vinv with U R V = diag for some unimodular U.
struct SmithResult {
  std::vector<BigInt> diag;
  std::vector<std::vector<BigInt>> V, Vinv;
};

inline SmithResult smith_normal_form(std::vector<std::vector<BigInt>> A) {
  const std::size_t s = A.size();
  std::vector<std::vector<BigInt>> V(s, std::vector<BigInt>(s, 0)), Vi = V;
  for (std::size_t i = 0; i < s; ++i) V[i][i] = Vi[i][i] = 1;

  auto swap_cols = [&](std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < s; ++r) {
      std::swap(A[r][a], A[r][b]);
      std::swap(V[r][a], V[r][b]);
    }
    std::swap(Vi[a], Vi[b]);
  };
  // col b += k * col a  (Vinv: row a -= k * row b)
  auto add_col = [&](std::size_t b, std::size_t a, const BigInt& k) {
    for (std::size_t r = 0; r < s; ++r) {
      A[r][b] += k * A[r][a];
      V[r][b] += k * V[r][a];
    }
    for (std::size_t c = 0; c < s; ++c) Vi[a][c] -= k * Vi[b][c];
  };
  auto add_row = [&](std::size_t b, std::size_t a, const BigInt& k) {
    for (std::size_t c = 0; c < s; ++c) A[b][c] += k * A[a][c];
  };
  auto floor_div = [](const BigInt& x, const BigInt& y) {
    BigInt qv = x / y;
    if ((x % y != 0) && ((x < 0) != (y < 0))) qv -= 1;
    return qv;
  };

  for (std::size_t t = 0; t < s; ++t) {
    for (;;) {
      // pivot: least nonzero |entry| in the trailing block
      std::size_t pr = s, pc = s;
      for (std::size_t r = t; r < s; ++r) {
        for (std::size_t c = t; c < s; ++c) {
          if (A[r][c] != 0 && (pr == s || abs(A[r][c]) < abs(A[pr][pc]))) {
            pr = r;
            pc = c;
          }
        }
      }
      if (pr == s) break;
      std::swap(A[t], A[pr]);
      if (pc != t) swap_cols(t, pc);
      bool clean = true;
      for (std::size_t r = t + 1; r < s; ++r) {
        if (A[r][t] != 0) {
          add_row(r, t, -floor_div(A[r][t], A[t][t]));
          if (A[r][t] != 0) clean = false;
        }
      }
      for (std::size_t c = t + 1; c < s; ++c) {
        if (A[t][c] != 0) {
          add_col(c, t, -floor_div(A[t][c], A[t][t]));
          if (A[t][c] != 0) clean = false;
        }
      }
      if (!clean) continue;
      std::size_t bad = s;
      for (std::size_t r = t + 1; r < s && bad == s; ++r) {
        for (std::size_t c = t + 1; c < s; ++c) {
          if (A[r][c] % A[t][t] != 0) {
            bad = r;
            break;
          }
        }
      }
      if (bad == s) break;
      add_row(t, bad, 1);
    }
    if (A[t][t] < 0) {
      for (std::size_t r = 0; r < s; ++r) {
        A[r][t] = -A[r][t];
        V[r][t] = -V[r][t];
      }
      for (std::size_t c = 0; c < s; ++c) Vi[t][c] = -Vi[t][c];
    }
  }
  SmithResult out;
  for (std::size_t t = 0; t < s; ++t) out.diag.push_back(A[t][t]);
  out.V = std::move(V);
  out.Vinv = std::move(Vi);
  return out;
}

inline std::uint64_t mod_nonneg(const BigInt& x, std::uint64_t m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

}  // namespace detail

class UnitGroup {
 public:
  static constexpr std::uint32_t kNonUnit = std::numeric_limits<std::uint32_t>::max();

  /// Generic decomposition: grow a subgroup one generator at a time, then
  /// diagonalize the relation matrix.
  static std::shared_ptr<const UnitGroup> build(const Poly& Q, std::uint64_t phi_cap = ExecConfig{}.phi_cap) {
    require(!Q.is_zero() && Q.degree() >= 1, "modulus Q must have degree >= 1");
    auto fac = factorize(Q);
    BigInt phi_big = phi_of(fac, Q.F().q());
    if (phi_big > phi_cap) {
      throw CapExceeded("unit group order " + phi_big.str() + " exceeds cap " + std::to_string(phi_cap));
    }
    std::shared_ptr<UnitGroup> G(new UnitGroup(Q, std::move(fac), phi_cap));
    G->phi_ = static_cast<std::uint64_t>(phi_big);
    G->decompose();
    G->finish();
    return G;
  }

  /// Rebuilds from stored parts (a cache entry); throws ValidationError when
  /// the parts are inconsistent.
  static std::shared_ptr<const UnitGroup> from_parts(const Poly& Q, std::vector<std::uint64_t> generators,
                                                     std::vector<std::uint64_t> orders,
                                                     std::vector<std::uint32_t> dlog,
                                                     std::uint64_t phi_cap = ExecConfig{}.phi_cap) {
    require(!Q.is_zero() && Q.degree() >= 1, "modulus Q must have degree >= 1");
    auto fac = factorize(Q);
    BigInt phi_big = phi_of(fac, Q.F().q());
    if (phi_big > phi_cap) throw CapExceeded("unit group order exceeds cap");
    std::shared_ptr<UnitGroup> G(new UnitGroup(Q, std::move(fac), phi_cap));
    G->phi_ = static_cast<std::uint64_t>(phi_big);
    require(generators.size() == orders.size(), "generator/order length mismatch");
    require(dlog.size() == G->ring_.size(), "dlog table has wrong length");
    std::uint64_t prod = 1;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      require(orders[i] >= 2 && generators[i] < G->ring_.size(), "bad stored generator");
      if (i > 0) require(orders[i - 1] % orders[i] == 0, "stored orders not a divisor chain");
      prod *= orders[i];
    }
    require(prod == G->phi_, "stored orders do not multiply to Phi(Q)");
    G->generators_ = std::move(generators);
    G->orders_ = std::move(orders);
    G->dlog_ = std::move(dlog);
    G->finish();
    return G;
  }

  const Poly& modulus() const { return ring_.modulus(); }
  const ResidueRing& ring() const { return ring_; }
  const FieldPtr& field() const { return ring_.field(); }
  const Factorization& factorization() const { return fac_; }
  std::uint64_t phi() const { return phi_; }
  std::size_t rank() const { return orders_.size(); }
  const std::vector<std::uint64_t>& orders() const { return orders_; }
  const std::vector<std::uint64_t>& generators() const { return generators_; }
  std::uint64_t exponent() const { return orders_.empty() ? 1 : orders_.front(); }
  const std::vector<std::uint32_t>& dlog_table() const { return dlog_; }

  /// Mixed-radix index Σ a_i stride_i of a unit residue code, or kNonUnit.
  std::uint32_t index_of_code(std::uint64_t code) const { return dlog_[code]; }
  std::uint32_t index_of(const Poly& f) const { return dlog_[ring_.code_of(f)]; }
  bool is_unit(const Poly& f) const { return index_of(f) != kNonUnit; }
  std::uint64_t code_of_index(std::uint64_t idx) const { return units_[idx]; }

  std::vector<std::uint64_t> coords(std::uint64_t idx) const {
    std::vector<std::uint64_t> a(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      a[i] = idx % orders_[i];
      idx /= orders_[i];
    }
    return a;
  }
  std::uint64_t index_from_coords(const std::vector<std::uint64_t>& a) const {
    std::uint64_t idx = 0;
    for (std::size_t i = orders_.size(); i-- > 0;) idx = idx * orders_[i] + a[i] % orders_[i];
    return idx;
  }
  std::uint64_t add_indices(std::uint64_t u, std::uint64_t v) const {
    std::uint64_t idx = 0, stride = 1;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      const std::uint64_t d = orders_[i];
      idx += ((u % d + v % d) % d) * stride;
      stride *= d;
      u /= d;
      v /= d;
    }
    return idx;
  }

 private:
  UnitGroup(const Poly& Q, Factorization fac, std::uint64_t phi_cap)
      : ring_(Q, std::max<std::uint64_t>(16 * phi_cap, 1024)), fac_(std::move(fac)) {}

  void decompose() {
    const std::uint64_t size = ring_.size();
    const Poly& Q = ring_.modulus();
    std::vector<std::uint32_t> hidx(size, kNonUnit);
    std::vector<std::uint64_t> helems{1 % size};
    hidx[1 % size] = 0;
    std::vector<std::uint64_t> xgens, xorders;
    std::vector<std::vector<std::uint64_t>> rel;  // rel[j] = coords of g_j^{e_j} in earlier gens
    std::uint64_t cand = 0;
    while (helems.size() < phi_) {
      for (;; ++cand) {
        check_internal(cand < size, "ran out of unit candidates");
        if (hidx[cand] != kNonUnit) continue;
        if (poly_gcd(ring_.poly_of(cand), Q).degree() == 0) break;
      }
      const std::uint64_t g = cand;
      std::uint64_t x = g, e = 1;
      while (hidx[x] == kNonUnit) {
        x = ring_.mul(x, g);
        ++e;
      }
      std::vector<std::uint64_t> w(xgens.size());
      std::uint64_t t = hidx[x];
      for (std::size_t i = 0; i < xgens.size(); ++i) {
        w[i] = t % xorders[i];
        t /= xorders[i];
      }
      const std::uint64_t old = helems.size();
      std::uint64_t ga = 1 % size;
      for (std::uint64_t a = 1; a < e; ++a) {
        ga = ring_.mul(ga, g);
        for (std::uint64_t i = 0; i < old; ++i) {
          std::uint64_t c = ring_.mul(ga, helems[i]);
          hidx[c] = static_cast<std::uint32_t>(i + a * old);
          helems.push_back(c);
        }
      }
      xgens.push_back(g);
      xorders.push_back(e);
      rel.push_back(std::move(w));
    }
    check_internal(helems.size() == phi_, "subgroup overshoot");

    const std::size_t s = xgens.size();
    std::vector<std::vector<BigInt>> R(s, std::vector<BigInt>(s, 0));
    for (std::size_t j = 0; j < s; ++j) {
      R[j][j] = static_cast<std::uint64_t>(xorders[j]);
      for (std::size_t i = 0; i < j; ++i) R[j][i] -= static_cast<std::uint64_t>(rel[j][i]);
    }
    auto snf = detail::smith_normal_form(std::move(R));

    // Keep nontrivial factors, largest first.
    std::vector<std::size_t> keep;
    for (std::size_t t = s; t-- > 0;) {
      check_internal(snf.diag[t] > 0, "singular relation matrix");
      if (snf.diag[t] > 1) keep.push_back(t);
    }
    orders_.clear();
    generators_.clear();
    for (auto t : keep) {
      orders_.push_back(static_cast<std::uint64_t>(snf.diag[t]));
      std::uint64_t y = 1 % size;
      for (std::size_t j = 0; j < s; ++j) {
        y = ring_.mul(y, ring_.pow(xgens[j], detail::mod_nonneg(snf.Vinv[t][j], phi_)));
      }
      generators_.push_back(y);
    }
    // Vt[j][c] = V[j][keep[c]] mod d_c
    std::vector<std::vector<std::uint64_t>> Vt(s, std::vector<std::uint64_t>(keep.size()));
    for (std::size_t j = 0; j < s; ++j) {
      for (std::size_t c = 0; c < keep.size(); ++c) Vt[j][c] = detail::mod_nonneg(snf.V[j][keep[c]], orders_[c]);
    }
    dlog_.assign(size, kNonUnit);
    std::vector<std::uint64_t> a(s);
    for (std::uint64_t h = 0; h < phi_; ++h) {
      std::uint64_t t = h;
      for (std::size_t j = 0; j < s; ++j) {
        a[j] = t % xorders[j];
        t /= xorders[j];
      }
      std::uint64_t idx = 0, stride = 1;
      for (std::size_t c = 0; c < keep.size(); ++c) {
        const std::uint64_t d = orders_[c];
        std::uint64_t b = 0;
        for (std::size_t j = 0; j < s; ++j) b = (b + (a[j] % d) * Vt[j][c]) % d;
        idx += b * stride;
        stride *= d;
      }
      dlog_[helems[h]] = static_cast<std::uint32_t>(idx);
    }
  }

  // Enumerates Π g_i^{a_i} in mixed-radix order and checks each lands on its own index.
  void finish() {
    const std::uint64_t size = ring_.size();
    units_.assign(phi_, 0);
    std::vector<bool> seen(phi_, false);
    const std::size_t r = orders_.size();
    std::vector<std::uint64_t> a(r, 0), partial(r + 1, 1 % size);
    for (std::uint64_t idx = 0; idx < phi_; ++idx) {
      const std::uint64_t c = partial[0];
      check_internal(dlog_[c] == idx, "dlog table inconsistent with generators");
      check_internal(!seen[idx], "unit enumerated twice");
      seen[idx] = true;
      units_[idx] = c;
      if (idx + 1 == phi_) break;
      std::size_t i = 0;
      while (++a[i] == orders_[i]) {
        a[i] = 0;
        ++i;
      }
      partial[i] = ring_.mul(partial[i], generators_[i]);
      for (std::size_t j = i; j-- > 0;) partial[j] = partial[i];
    }
    std::uint64_t units = 0;
    for (auto v : dlog_) units += v != kNonUnit;
    check_internal(units == phi_, "dlog table covers the wrong number of units");
  }

  ResidueRing ring_;
  Factorization fac_;
  std::uint64_t phi_ = 0;
  std::vector<std::uint64_t> orders_, generators_;
  std::vector<std::uint32_t> dlog_;
  std::vector<std::uint64_t> units_;
};

using UnitGroupPtr = std::shared_ptr<const UnitGroup>;

inline UnitGroupPtr unit_group(const Poly& Q, std::uint64_t phi_cap = ExecConfig{}.phi_cap) {
  return UnitGroup::build(Q, phi_cap);
}

inline UnitGroupPtr unit_group(const Poly& Q, const ExecConfig& cfg) {
  return cfg.unit_groups ? cfg.unit_groups(Q) : UnitGroup::build(Q, cfg.phi_cap);
}

/// exp(2πi exponent / M), or 0.
struct CharValue {
  bool zero = false;
  std::uint64_t exponent = 0;
  std::uint64_t order = 1;

  CharValue operator*(const CharValue& o) const {
    require(order == o.order, "character values of different orders");
    if (zero || o.zero) return {true, 0, order};
    return {false, (exponent + o.exponent) % order, order};
  }
  CharValue conj() const { return zero ? *this : CharValue{false, (order - exponent) % order, order}; }
  bool is_one() const { return !zero && exponent == 0; }
  CycInt to_cycint() const { return zero ? CycInt(order) : CycInt::root(order, exponent); }
  std::complex<double> to_complex() const { return zero ? std::complex<double>{} : to_cycint().to_complex(); }
  friend bool operator==(const CharValue&, const CharValue&) = default;
};

class CharacterFamily;

/// χ_e(Π g_i^{a_i}) = exp(2πi Σ e_i a_i / d_i).
class Character {
 public:
  Character(const CharacterFamily* fam, std::uint64_t index);

  std::uint64_t index() const { return index_; }
  const std::vector<std::uint64_t>& exponents() const { return e_; }
  const UnitGroup& group() const;
  std::uint64_t order() const;  // M, the group exponent
  bool is_trivial() const { return index_ == 0; }
  bool is_even() const;
  bool is_primitive() const;
  int lambda() const { return is_even() ? 1 : 0; }

  /// Value exponent at the unit with the given dlog index.
  std::uint64_t exponent_at(std::uint64_t unit_index) const {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < e_.size(); ++i) {
      v = (v + (e_[i] * (unit_index % d_[i])) % d_[i] * w_[i]) % M_;
      unit_index /= d_[i];
    }
    return v;
  }

  /// exponent_at for every unit index, in index order.
  std::vector<std::uint32_t> exponent_table() const {
    const std::uint64_t n = group().phi();
    std::vector<std::uint32_t> out(n);
    const std::size_t r = e_.size();
    std::vector<std::uint64_t> a(r, 0), step(r), partial(r + 1, 0);
    for (std::size_t i = 0; i < r; ++i) step[i] = (e_[i] * w_[i]) % M_;
    for (std::uint64_t idx = 0; idx < n; ++idx) {
      out[idx] = static_cast<std::uint32_t>(partial[0]);
      if (idx + 1 == n) break;
      std::size_t i = 0;
      while (++a[i] == d_[i]) {
        a[i] = 0;
        ++i;
      }
      partial[i] = (partial[i] + step[i]) % M_;
      for (std::size_t j = i; j-- > 0;) partial[j] = partial[i];
    }
    return out;
  }

  CharValue operator()(const Poly& f) const;

 private:
  const CharacterFamily* fam_;
  std::uint64_t index_;
  std::vector<std::uint64_t> e_, d_, w_;
  std::uint64_t M_ = 1;
};

/// The Φ(Q) characters mod Q; index 0 is χ_0, indices are mixed radix over the orders.
class CharacterFamily {
 public:
  explicit CharacterFamily(UnitGroupPtr G) : G_(std::move(G)) {
    const auto& d = G_->orders();
    const std::uint64_t M = G_->exponent();
    for (auto di : d) weights_.push_back(M / di);
    const Field& F = *G_->field();
    // scalar generator
    const std::uint64_t gamma_idx = G_->index_of(Poly::constant(G_->field(), F.generator()));
    gamma_coords_ = G_->coords(gamma_idx);
    for (const auto& [P, e] : G_->factorization().factors) kernel_gens_.push_back(kernel_generators(P));
    const std::uint64_t n = G_->phi();
    even_.resize(n);
    primitive_.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      auto ex = G_->coords(i);
      even_[i] = pairing(ex, gamma_coords_) == 0;
      bool prim = true;
      for (const auto& gens : kernel_gens_) {
        bool nontrivial = false;
        for (const auto& g : gens) {
          if (pairing(ex, g) != 0) {
            nontrivial = true;
            break;
          }
        }
        if (!nontrivial) {
          prim = false;
          break;
        }
      }
      primitive_[i] = prim;
    }
  }

  const UnitGroup& group() const { return *G_; }
  const UnitGroupPtr& group_ptr() const { return G_; }
  std::uint64_t size() const { return G_->phi(); }
  Character at(std::uint64_t i) const {
    require(i < size(), "character index out of range");
    return Character(this, i);
  }
  Character trivial() const { return at(0); }
  bool is_even(std::uint64_t i) const { return even_[i]; }
  bool is_primitive(std::uint64_t i) const { return primitive_[i]; }
  const std::vector<std::uint64_t>& weights() const { return weights_; }

  std::vector<std::uint64_t> select(bool nontrivial_only, int parity /* -1 any, 0 odd, 1 even */,
                                    bool primitive_only) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < size(); ++i) {
      if (nontrivial_only && i == 0) continue;
      if (parity >= 0 && static_cast<int>(even_[i]) != parity) continue;
      if (primitive_only && !primitive_[i]) continue;
      out.push_back(i);
    }
    return out;
  }

  /// Σ e_i a_i (M/d_i) mod M
  std::uint64_t pairing(const std::vector<std::uint64_t>& e, const std::vector<std::uint64_t>& a) const {
    const auto& d = G_->orders();
    const std::uint64_t M = G_->exponent();
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < d.size(); ++i) v = (v + (e[i] * a[i]) % d[i] * weights_[i]) % M;
    return v;
  }

 private:
  // A generating set (as coordinate vectors) of {F unit : F ≡ 1 mod Q/P}.
  std::vector<std::vector<std::uint64_t>> kernel_generators(const Poly& P) const {
    const Poly& Q = G_->modulus();
    const Poly Qp = Q / P;
    const FieldPtr& F = G_->field();
    const std::uint64_t count = pow_u64(F->q(), static_cast<std::uint64_t>(P.degree()));
    std::vector<bool> in_sub(G_->phi(), false);
    std::vector<std::uint64_t> members{0};
    in_sub[0] = true;
    std::vector<std::vector<std::uint64_t>> gens;
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly elem = Poly::one(F) + Qp * poly_from_code(F, c);
      const std::uint32_t idx = G_->index_of(elem);
      if (idx == UnitGroup::kNonUnit || in_sub[idx]) continue;
      gens.push_back(G_->coords(idx));
      // close the subgroup under the new generator
      std::vector<std::uint64_t> base = members;
      std::uint64_t power = idx;
      while (!in_sub[power]) {
        for (auto m : base) {
          std::uint64_t s = G_->add_indices(m, power);
          if (!in_sub[s]) {
            in_sub[s] = true;
            members.push_back(s);
          }
        }
        power = G_->add_indices(power, idx);
      }
    }
    return gens;
  }

  UnitGroupPtr G_;
  std::vector<std::uint64_t> weights_;
  std::vector<std::uint64_t> gamma_coords_;
  std::vector<std::vector<std::vector<std::uint64_t>>> kernel_gens_;
  std::vector<bool> even_, primitive_;
};

inline Character::Character(const CharacterFamily* fam, std::uint64_t index)
    : fam_(fam), index_(index), e_(fam->group().coords(index)), d_(fam->group().orders()), w_(fam->weights()),
      M_(fam->group().exponent()) {}

inline const UnitGroup& Character::group() const { return fam_->group(); }
inline std::uint64_t Character::order() const { return M_; }
inline bool Character::is_even() const { return fam_->is_even(index_); }
inline bool Character::is_primitive() const { return fam_->is_primitive(index_); }

inline CharValue Character::operator()(const Poly& f) const {
  if (f.is_zero()) return {true, 0, M_};
  const std::uint32_t idx = group().index_of(f);
  if (idx == UnitGroup::kNonUnit) return {true, 0, M_};
  return {false, exponent_at(idx), M_};
}

inline std::shared_ptr<const CharacterFamily> characters(UnitGroupPtr G) {
  return std::make_shared<const CharacterFamily>(std::move(G));
}

inline std::shared_ptr<const CharacterFamily> characters(const Poly& Q,
                                                         std::uint64_t phi_cap = ExecConfig{}.phi_cap) {
  return characters(unit_group(Q, phi_cap));
}

inline CharValue char_eval(const Character& chi, const Poly& f) { return chi(f); }

struct CharCensus {
  std::uint64_t phi = 0, phi_even = 0, phi_prim = 0, phi_prim_even = 0, phi_prim_odd = 0;
  friend bool operator==(const CharCensus&, const CharCensus&) = default;
};

struct CensusRecord {
  CharCensus counted;   // from the per-character flags
  CharCensus formula;   // from the Möbius/divisor formulas
  bool agree = false;
};

/// Φ_prim(Q) = Σ_{D|Q} μ(D) Φ(Q/D), and the same sum for even characters with
/// Φ^ev(1) = 1 and Φ^ev(Q') = Φ(Q')/(q−1) for deg Q' ≥ 1.
inline CharCensus census_by_formula(const Poly& Q) {
  auto fac = factorize(Q);
  const std::uint64_t q = Q.F().q();
  const std::size_t r = fac.factors.size();
  CharCensus c;
  c.phi = static_cast<std::uint64_t>(phi_of(fac, q));
  c.phi_even = c.phi / (q - 1);
  BigInt prim = 0, prim_ev = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
    Factorization sub = fac;
    int deg = Q.degree();
    int sign = 1;
    for (std::size_t i = 0; i < r; ++i) {
      if (mask >> i & 1) {
        sub.factors[i].second -= 1;
        deg -= sub.factors[i].first.degree();
        sign = -sign;
      }
    }
    std::erase_if(sub.factors, [](const auto& pe) { return pe.second == 0; });
    BigInt ph = phi_of(sub, q);
    BigInt ph_ev = deg == 0 ? BigInt(1) : ph / (q - 1);
    prim += sign * ph;
    prim_ev += sign * ph_ev;
  }
  c.phi_prim = static_cast<std::uint64_t>(prim);
  c.phi_prim_even = static_cast<std::uint64_t>(prim_ev);
  c.phi_prim_odd = c.phi_prim - c.phi_prim_even;
  return c;
}

inline CensusRecord char_census(const CharacterFamily& fam) {
  CensusRecord rec;
  auto& c = rec.counted;
  c.phi = fam.size();
  for (std::uint64_t i = 0; i < fam.size(); ++i) {
    c.phi_even += fam.is_even(i);
    c.phi_prim += fam.is_primitive(i);
    c.phi_prim_even += fam.is_primitive(i) && fam.is_even(i);
  }
  c.phi_prim_odd = c.phi_prim - c.phi_prim_even;
  rec.formula = census_by_formula(fam.group().modulus());
  rec.agree = rec.counted == rec.formula;
  return rec;
}

}  // namespace ffvar
