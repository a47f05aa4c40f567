#pragma once

// Ideals of Z[zeta_m] as full-rank integer lattices in canonical HNF, the
// finite quotient Z[zeta_m]/A with an index <-> residue bijection, and
// enumeration of the ideals between A and the whole ring.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cyclo/cyclotomic.hpp"
#include "cyclo/errors.hpp"
#include "cyclo/lattice.hpp"

namespace cyclo {

class IdealLattice {
 public:
  // Lattice spanned by {g * zeta^j : g in gens, 0 <= j < phi(m)}.
  static IdealLattice from_generators(const std::vector<CycInt>& gens) {
    if (gens.empty()) throw ZeroIdeal("no generators given");
    const ContextPtr& ctx = gens.front().context();
    std::vector<IntVector> cols;
    for (const auto& g : gens) {
      if (g.ctx().m() != ctx->m()) throw InvalidParameter("cyclotomic context mismatch");
      if (g.is_zero()) continue;
      for (std::size_t j = 0; j < ctx->dim(); ++j)
        cols.push_back((g * zeta_power(ctx, static_cast<long long>(j))).coeffs());
    }
    if (cols.empty()) throw ZeroIdeal("all generators are zero; the zero ideal is not allowed");
    return IdealLattice(ctx, hermite_normal_form(Matrix::from_columns(ctx->dim(), cols)));
  }

  // Lattice spanned by raw coefficient columns. Throws unless the lattice is
  // closed under multiplication by zeta (i.e. is an ideal).
  static IdealLattice from_lattice_columns(const ContextPtr& ctx, const std::vector<IntVector>& cols) {
    if (cols.empty()) throw ZeroIdeal("no lattice columns given");
    IdealLattice a(ctx, hermite_normal_form(Matrix::from_columns(ctx->dim(), cols)));
    const CycInt z = zeta_power(ctx, 1);
    for (std::size_t j = 0; j < ctx->dim(); ++j)
      if (!a.contains(z * CycInt(ctx, a.hnf_.column(j))))
        throw HypothesisViolation("lattice is not closed under multiplication by zeta");
    return a;
  }

  const ContextPtr& context() const { return ctx_; }
  const CyclotomicContext& ctx() const { return *ctx_; }
  const Matrix& hnf() const { return hnf_; }
  const Integer& norm() const { return norm_; }
  bool is_unit() const { return norm_ == 1; }

  std::vector<CycInt> basis() const {
    std::vector<CycInt> b;
    for (std::size_t j = 0; j < ctx_->dim(); ++j) b.emplace_back(ctx_, hnf_.column(j));
    return b;
  }

  // Canonical representative in the fundamental parallelepiped of the HNF:
  // coordinate i ends in [0, hnf(i,i)). Reduction runs from the last
  // coordinate upward since column i only touches coordinates 0..i.
  IntVector reduce_coeffs(IntVector x) const {
    for (std::size_t i = ctx_->dim(); i-- > 0;) {
      const Integer q = floor_div(x[i], hnf_(i, i));
      if (q == 0) continue;
      for (std::size_t r = 0; r <= i; ++r) x[r] -= q * hnf_(r, i);
    }
    return x;
  }

  CycInt reduce(const CycInt& x) const { return CycInt(ctx_, reduce_coeffs(x.coeffs())); }

  bool contains(const CycInt& x) const {
    if (x.ctx().m() != ctx_->m()) throw InvalidParameter("cyclotomic context mismatch");
    return contains_coeffs(x.coeffs());
  }

  bool contains_coeffs(IntVector x) const {
    for (std::size_t i = ctx_->dim(); i-- > 0;) {
      if (x[i] % hnf_(i, i) != 0) return false;
      const Integer q = x[i] / hnf_(i, i);
      if (q == 0) continue;
      for (std::size_t r = 0; r <= i; ++r) x[r] -= q * hnf_(r, i);
    }
    return true;
  }

  // A subset of B (as lattices).
  bool is_subset_of(const IdealLattice& b) const {
    for (std::size_t j = 0; j < ctx_->dim(); ++j)
      if (!b.contains_coeffs(hnf_.column(j))) return false;
    return true;
  }

  // HNF is canonical, so equality and ordering compare the matrices.
  std::string key() const { return std::to_string(ctx_->m()) + ':' + hnf_.key(); }
  bool operator==(const IdealLattice& o) const { return ctx_->m() == o.ctx_->m() && hnf_ == o.hnf_; }

 private:
  IdealLattice(ContextPtr ctx, Matrix hnf) : ctx_(std::move(ctx)), hnf_(std::move(hnf)) {
    norm_ = 1;
    for (std::size_t i = 0; i < ctx_->dim(); ++i) norm_ *= hnf_(i, i);
  }

  ContextPtr ctx_;
  Matrix hnf_;
  Integer norm_;
};

inline IdealLattice ideal_from_generators(const std::vector<CycInt>& gens) {
  return IdealLattice::from_generators(gens);
}

inline IdealLattice principal_ideal(const CycInt& alpha) { return IdealLattice::from_generators({alpha}); }

inline bool contains(const IdealLattice& a, const CycInt& x) { return a.contains(x); }

// alpha + A, identified by its index in [0, N(A)) together with the
// fundamental-domain representative.
struct Residue {
  std::int64_t index = 0;
  CycInt canonical_rep;
};

// Z[zeta_m]/A. The additive group is decomposed through the Smith form of
// the HNF basis: x -> (U x mod d_k) over the invariant factors d_k > 1, and
// residue indices are the mixed-radix encoding of those digits.
class QuotientRing {
 public:
  static constexpr std::int64_t kMaxOrder = std::int64_t{1} << 40;

  explicit QuotientRing(IdealLattice ideal) : ideal_(std::move(ideal)) {
    if (ideal_.is_unit()) throw UnitIdeal("quotient by the unit ideal has a single element");
    if (ideal_.norm() > kMaxOrder) throw ResourceLimit("N(A) = " + ideal_.norm().str() + " is too large");
    order_ = to_int64(ideal_.norm());
    const auto& ctx = ideal_.ctx();
    const std::size_t n = ctx.dim();
    SmithForm snf = smith_normal_form(ideal_.hnf());
    snf_diag_ = snf.diagonal;
    for (std::size_t k = 0; k < n; ++k) {
      if (snf.diagonal[k] == 1) continue;
      const std::int64_t d = to_int64(snf.diagonal[k]);
      moduli_.push_back(d);
      std::vector<std::int64_t> row(n);
      for (std::size_t j = 0; j < n; ++j) row[j] = to_int64(floor_mod(snf.left(k, j), Integer(d)));
      to_digits_.push_back(std::move(row));
      lift_.push_back(snf.left_inverse.column(k));
    }
    strides_.resize(moduli_.size());
    std::int64_t s = 1;
    for (std::size_t k = 0; k < moduli_.size(); ++k) {
      strides_[k] = s;
      s *= moduli_[k];
    }
  }

  const IdealLattice& ideal() const { return ideal_; }
  const ContextPtr& context() const { return ideal_.context(); }
  const CyclotomicContext& ctx() const { return ideal_.ctx(); }
  std::int64_t order() const { return order_; }

  // All phi(m) invariant factors (including ones); product = N(A).
  const IntVector& snf_diag() const { return snf_diag_; }
  // Invariant factors greater than one; these index the digit vectors.
  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }

  using Digits = std::vector<std::int64_t>;

  Digits digits(std::int64_t index) const {
    Digits t(moduli_.size());
    for (std::size_t k = 0; k < moduli_.size(); ++k) {
      t[k] = index % moduli_[k];
      index /= moduli_[k];
    }
    return t;
  }

  std::int64_t encode(const Digits& t) const {
    std::int64_t idx = 0;
    for (std::size_t k = 0; k < moduli_.size(); ++k) idx += floor_mod(t[k], moduli_[k]) * strides_[k];
    return idx;
  }

  // Fast path for small coefficient vectors.
  std::int64_t index_of(std::span<const std::int64_t> x) const {
    std::int64_t idx = 0;
    for (std::size_t k = 0; k < moduli_.size(); ++k) {
      const std::int64_t d = moduli_[k];
      __int128 acc = 0;
      for (std::size_t j = 0; j < x.size(); ++j) acc += static_cast<__int128>(to_digits_[k][j]) * x[j];
      auto t = static_cast<std::int64_t>(acc % d);
      if (t < 0) t += d;
      idx += t * strides_[k];
    }
    return idx;
  }

  std::int64_t index_of(const CycInt& x) const {
    std::int64_t idx = 0;
    for (std::size_t k = 0; k < moduli_.size(); ++k) {
      const Integer d = moduli_[k];
      Integer acc = 0;
      for (std::size_t j = 0; j < x.coeffs().size(); ++j) acc += to_digits_[k][j] * x[j];
      idx += to_int64(floor_mod(acc, d)) * strides_[k];
    }
    return idx;
  }

  CycInt canonical_rep(std::int64_t index) const {
    check_index(index);
    const Digits t = digits(index);
    IntVector x(ctx().dim());
    for (std::size_t k = 0; k < moduli_.size(); ++k)
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += lift_[k][j] * t[k];
    return CycInt(context(), ideal_.reduce_coeffs(std::move(x)));
  }

  Residue residue(std::int64_t index) const { return {index, canonical_rep(index)}; }
  Residue reduce(const CycInt& x) const { return residue(index_of(x)); }

  std::int64_t zero() const { return 0; }
  std::int64_t one() const { return index_of(CycInt::one(context())); }

  std::int64_t add(std::int64_t a, std::int64_t b) const {
    std::int64_t idx = 0;
    for (std::size_t k = 0; k < moduli_.size(); ++k) {
      const std::int64_t d = moduli_[k];
      std::int64_t s = a % d + b % d;
      if (s >= d) s -= d;
      idx += s * strides_[k];
      a /= d;
      b /= d;
    }
    return idx;
  }

  std::int64_t neg(std::int64_t a) const {
    std::int64_t idx = 0;
    for (std::size_t k = 0; k < moduli_.size(); ++k) {
      const std::int64_t d = moduli_[k];
      const std::int64_t t = a % d;
      idx += (t == 0 ? 0 : d - t) * strides_[k];
      a /= d;
    }
    return idx;
  }

  std::int64_t sub(std::int64_t a, std::int64_t b) const { return add(a, neg(b)); }

  // Lift to canonical representatives, multiply in the ring, reduce.
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return index_of(canonical_rep(a) * canonical_rep(b)); }

  // Multiplication by a fixed element as a Z-linear map on digit vectors.
  class Multiplier {
   public:
    std::int64_t operator()(std::int64_t index) const {
      const Digits t = ring_->digits(index);
      Digits out(t.size());
      for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] == 0) continue;
        for (std::size_t j = 0; j < t.size(); ++j)
          out[j] = static_cast<std::int64_t>((out[j] + static_cast<__int128>(t[k]) * images_[k][j]) % ring_->moduli_[j]);
      }
      return ring_->encode(out);
    }

   private:
    friend class QuotientRing;
    const QuotientRing* ring_ = nullptr;
    std::vector<Digits> images_;  // digits of c * (lift of unit digit k)
  };

  // The returned map refers to this ring and must not outlive it.
  Multiplier multiplier(const CycInt& c) const {
    Multiplier mult;
    mult.ring_ = this;
    for (std::size_t k = 0; k < moduli_.size(); ++k)
      mult.images_.push_back(digits(index_of(c * CycInt(context(), lift_[k]))));
    return mult;
  }

 private:
  void check_index(std::int64_t index) const {
    if (index < 0 || index >= order_) throw InvalidParameter("residue index out of range");
  }

  IdealLattice ideal_;
  std::int64_t order_ = 0;
  IntVector snf_diag_;
  std::vector<std::int64_t> moduli_;
  std::vector<std::int64_t> strides_;
  std::vector<std::vector<std::int64_t>> to_digits_;  // rows of U reduced mod d_k
  std::vector<IntVector> lift_;                       // columns of U^{-1}
};

inline QuotientRing quotient_ring(IdealLattice a) { return QuotientRing(std::move(a)); }

inline Residue reduce_mod(const QuotientRing& q, const CycInt& x) { return q.reduce(x); }

struct IntermediateIdealOptions {
  std::int64_t max_norm = 1'000'000;
  std::int64_t max_candidates = 1'000'000;
};

struct IntermediateIdeals {
  // Sorted by norm, then HNF key. Always contains A and the unit ideal.
  std::vector<IdealLattice> ideals;
  // Only D with D/A principal in the quotient are produced; for non-PID
  // rings the list may be incomplete.
  bool principal_quotients_only = true;
  std::int64_t candidates_tested = 0;
};

// Every D = A + (r) for r ranging over the residues, deduplicated by HNF.
inline IntermediateIdeals intermediate_ideals(const QuotientRing& q, const IntermediateIdealOptions& opts = {}) {
  if (q.order() > opts.max_norm || q.order() > opts.max_candidates)
    throw ResourceLimit("N(A) = " + std::to_string(q.order()) + " exceeds the intermediate-ideal bound");
  const auto& ctx = q.context();
  const std::size_t n = ctx->dim();
  std::vector<IntVector> base;
  for (std::size_t j = 0; j < n; ++j) base.push_back(q.ideal().hnf().column(j));
  std::vector<CycInt> zetas;
  for (std::size_t j = 0; j < n; ++j) zetas.push_back(zeta_power(ctx, static_cast<long long>(j)));

  std::map<std::string, IdealLattice> found;
  IntermediateIdeals out;
  for (std::int64_t r = 0; r < q.order(); ++r) {
    const CycInt rep = q.canonical_rep(r);
    std::vector<IntVector> cols = base;
    if (!rep.is_zero())
      for (const auto& z : zetas) cols.push_back((rep * z).coeffs());
    IdealLattice d = IdealLattice::from_lattice_columns(ctx, cols);
    ++out.candidates_tested;
    found.try_emplace(d.key(), std::move(d));
  }
  for (auto& [key, d] : found) out.ideals.push_back(std::move(d));
  std::stable_sort(out.ideals.begin(), out.ideals.end(),
                   [](const IdealLattice& a, const IdealLattice& b) { return a.norm() < b.norm(); });
  return out;
}

}  // namespace cyclo
