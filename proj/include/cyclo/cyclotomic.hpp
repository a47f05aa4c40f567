#pragma once

// Exact arithmetic in Z[zeta_m], stored in the power basis
// 1, zeta, ..., zeta^{phi(m)-1}.

#include <cstddef>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cyclo/errors.hpp"
#include "cyclo/lattice.hpp"

namespace cyclo {

namespace poly {

// Polynomials are ascending coefficient vectors with no trailing zeros
// (the zero polynomial is the empty vector).
inline void trim(IntVector& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline IntVector multiply(const IntVector& a, const IntVector& b) {
  if (a.empty() || b.empty()) return {};
  IntVector c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

// Exact division by a monic polynomial; throws if the remainder is nonzero.
inline IntVector divide_exact(IntVector num, const IntVector& monic) {
  if (monic.empty() || monic.back() != 1) throw InvalidParameter("divisor must be monic");
  trim(num);
  const std::size_t dd = monic.size() - 1;
  if (num.size() < monic.size()) {
    if (!num.empty()) throw InvalidParameter("polynomial division is not exact");
    return {};
  }
  IntVector q(num.size() - dd);
  for (std::size_t k = num.size(); k-- > dd;) {
    const Integer c = num[k];
    if (c == 0) continue;
    q[k - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[k - dd + j] -= c * monic[j];
  }
  trim(num);
  if (!num.empty()) throw InvalidParameter("polynomial division is not exact");
  trim(q);
  return q;
}

}  // namespace poly

inline int euler_phi(int m) {
  int result = m;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

// Phi_m as (x^m - 1) / prod_{d | m, d < m} Phi_d, all in exact integer arithmetic.
inline IntVector cyclotomic_polynomial(int m) {
  if (m < 1) throw InvalidParameter("cyclotomic polynomial index must be positive");
  IntVector p(static_cast<std::size_t>(m) + 1);
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) p = poly::divide_exact(p, cyclotomic_polynomial(d));
  return p;
}

class CyclotomicContext;
using ContextPtr = std::shared_ptr<const CyclotomicContext>;

// m, phi(m), Phi_m and the table expressing every zeta^i (0 <= i < m) in the
// power basis.
class CyclotomicContext {
 public:
  explicit CyclotomicContext(int m) : m_(m) {
    if (m < 2) throw InvalidParameter("m must be at least 2, got " + std::to_string(m));
    phi_ = euler_phi(m);
    cyclo_poly_ = cyclotomic_polynomial(m);
    const auto phi = static_cast<std::size_t>(phi_);
    table_.assign(static_cast<std::size_t>(m), IntVector(phi));
    table_[0][0] = 1;
    for (std::size_t i = 1; i < static_cast<std::size_t>(m); ++i) {
      // zeta * (sum c_j zeta^j) with zeta^phi = -sum Phi_j zeta^j.
      const IntVector& prev = table_[i - 1];
      IntVector& row = table_[i];
      const Integer top = prev[phi - 1];
      for (std::size_t j = phi - 1; j > 0; --j) row[j] = prev[j - 1];
      row[0] = 0;
      if (top != 0)
        for (std::size_t j = 0; j < phi; ++j) row[j] -= top * cyclo_poly_[j];
    }
  }

  int m() const { return m_; }
  int phi() const { return phi_; }
  std::size_t dim() const { return static_cast<std::size_t>(phi_); }

  // Monic, ascending, degree phi(m).
  const IntVector& cyclo_poly() const { return cyclo_poly_; }

  // Row i holds the power-basis coordinates of zeta^i, 0 <= i < m.
  const std::vector<IntVector>& reduction_table() const { return table_; }
  const IntVector& zeta_row(long long i) const {
    return table_[static_cast<std::size_t>(((i % m_) + m_) % m_)];
  }

 private:
  int m_;
  int phi_ = 0;
  IntVector cyclo_poly_;
  std::vector<IntVector> table_;
};

inline ContextPtr make_context(int m) { return std::make_shared<const CyclotomicContext>(m); }

// An element of Z[zeta_m] in the power basis.
class CycInt {
 public:
  explicit CycInt(ContextPtr ctx) : ctx_(std::move(ctx)), coeffs_(ctx_->dim()) {}

  // Shorter coefficient lists are zero-padded.
  CycInt(ContextPtr ctx, IntVector coeffs) : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() > ctx_->dim())
      throw InvalidParameter("too many coefficients for phi(m) = " + std::to_string(ctx_->phi()));
    coeffs_.resize(ctx_->dim());
  }

  CycInt(ContextPtr ctx, std::initializer_list<long long> coeffs)
      : CycInt(std::move(ctx), IntVector(coeffs.begin(), coeffs.end())) {}

  static CycInt one(ContextPtr ctx) { return CycInt(std::move(ctx), IntVector{1}); }

  // Reduces an arbitrary-degree polynomial in zeta.
  static CycInt from_polynomial(ContextPtr ctx, const IntVector& poly) {
    CycInt out(ctx);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      if (poly[k] == 0) continue;
      const IntVector& row = ctx->zeta_row(static_cast<long long>(k));
      for (std::size_t j = 0; j < ctx->dim(); ++j) out.coeffs_[j] += poly[k] * row[j];
    }
    return out;
  }

  const ContextPtr& context() const { return ctx_; }
  const CyclotomicContext& ctx() const { return *ctx_; }
  const IntVector& coeffs() const { return coeffs_; }
  const Integer& operator[](std::size_t i) const { return coeffs_[i]; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  bool operator==(const CycInt& o) const { return ctx_->m() == o.ctx_->m() && coeffs_ == o.coeffs_; }

  CycInt operator-() const {
    CycInt r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  CycInt& operator+=(const CycInt& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  CycInt& operator-=(const CycInt& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }

  friend CycInt operator*(const CycInt& a, const CycInt& b) {
    a.check_same(b);
    const auto& ctx = *a.ctx_;
    const std::size_t n = ctx.dim();
    CycInt out(a.ctx_);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b.coeffs_[j] == 0) continue;
        const Integer c = a.coeffs_[i] * b.coeffs_[j];
        if (i + j < n) {
          out.coeffs_[i + j] += c;
          continue;
        }
        const IntVector& row = ctx.zeta_row(static_cast<long long>(i + j));
        for (std::size_t k = 0; k < n; ++k)
          if (row[k] != 0) out.coeffs_[k] += c * row[k];
      }
    }
    return out;
  }
  CycInt& operator*=(const CycInt& o) { return *this = *this * o; }

  CycInt scaled(const Integer& k) const {
    CycInt r = *this;
    for (auto& c : r.coeffs_) c *= k;
    return r;
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (i) s += ',';
      s += coeffs_[i].str();
    }
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const CycInt& x) { return os << '(' << x.str() << ')'; }

 private:
  void check_same(const CycInt& o) const {
    if (ctx_->m() != o.ctx_->m()) throw InvalidParameter("cyclotomic context mismatch");
  }

  ContextPtr ctx_;
  IntVector coeffs_;
};

inline CycInt mul(const CycInt& x, const CycInt& y) { return x * y; }

inline CycInt zeta_power(const ContextPtr& ctx, long long i) { return CycInt(ctx, ctx->zeta_row(i)); }

// Column j is x * zeta^j in the power basis.
inline Matrix multiplication_matrix(const CycInt& x) {
  const auto& ctx = x.context();
  std::vector<IntVector> cols;
  cols.reserve(ctx->dim());
  for (std::size_t j = 0; j < ctx->dim(); ++j)
    cols.push_back((x * zeta_power(ctx, static_cast<long long>(j))).coeffs());
  return Matrix::from_columns(ctx->dim(), cols);
}

// |N_{Q(zeta_m)/Q}(x)| = |det(multiplication by x)|; zero iff x = 0.
inline Integer field_norm(const CycInt& x) { return abs_value(determinant(multiplication_matrix(x))); }

inline Integer manhattan_weight(const CycInt& x) {
  Integer w = 0;
  for (const auto& c : x.coeffs()) w += abs_value(c);
  return w;
}

// {+-zeta^i}, deduplicated, in order of first appearance (+zeta^0, -zeta^0, +zeta^1, ...).
inline std::vector<CycInt> torsion_units(const ContextPtr& ctx) {
  std::vector<CycInt> units;
  auto push = [&](CycInt u) {
    for (const auto& v : units)
      if (v == u) return;
    units.push_back(std::move(u));
  };
  for (int i = 0; i < ctx->m(); ++i) {
    push(zeta_power(ctx, i));
    push(-zeta_power(ctx, i));
  }
  return units;
}

// The full unit group is torsion only for m in {2, 3, 4, 6}.
inline bool unit_group_is_torsion(int m) { return m == 2 || m == 3 || m == 4 || m == 6; }

struct AssociateResult {
  bool associate = false;
  // Set when units of infinite order exist: a negative answer then only
  // rules out torsion associates.
  bool torsion_only = false;
  // u with y = u * x, when found.
  std::optional<CycInt> unit;

  explicit operator bool() const { return associate; }
};

inline AssociateResult is_associate(const CycInt& x, const CycInt& y) {
  AssociateResult r;
  r.torsion_only = !unit_group_is_torsion(x.ctx().m());
  for (auto& u : torsion_units(x.context()))
    if (u * x == y) {
      r.associate = true;
      r.unit = std::move(u);
      break;
    }
  return r;
}

// q with num = q * den, if it exists in Z[zeta_m]. Solved by Cramer's rule on
// the multiplication matrix of den with exact integer determinants.
inline std::optional<CycInt> exact_divide(const CycInt& num, const CycInt& den) {
  if (den.is_zero()) throw InvalidParameter("division by zero");
  if (num.ctx().m() != den.ctx().m()) throw InvalidParameter("cyclotomic context mismatch");
  const Matrix md = multiplication_matrix(den);
  const Integer det = determinant(md);
  const std::size_t n = md.rows();
  IntVector q(n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix mi = md;
    for (std::size_t r = 0; r < n; ++r) mi(r, i) = num[r];
    const Integer di = determinant(mi);
    if (di % det != 0) return std::nullopt;
    q[i] = di / det;
  }
  return CycInt(den.context(), std::move(q));
}

// Eisenstein-Jacobi coordinates for m = 3. With rho^2 - rho + 1 = 0 and
// zeta_3 = -rho, c + d*rho is the power-basis element (c, -d). The map is an
// involution on coefficient pairs.
namespace rho {

inline void require_m3(const CyclotomicContext& ctx) {
  if (ctx.m() != 3) throw InvalidParameter("rho coordinates are only defined for m = 3");
}

inline CycInt from_rho(const ContextPtr& ctx, const Integer& c, const Integer& d) {
  require_m3(*ctx);
  return CycInt(ctx, IntVector{c, -d});
}

inline std::pair<Integer, Integer> to_rho(const CycInt& x) {
  require_m3(x.ctx());
  return {x[0], -x[1]};
}

}  // namespace rho

}  // namespace cyclo
