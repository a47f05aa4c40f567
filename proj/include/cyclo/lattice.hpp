#pragma once

// Exact integer linear algebra: arbitrary-precision integers, a small dense
// matrix, fraction-free determinants, column Hermite normal form and Smith
// normal form with the left transform.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "cyclo/errors.hpp"

namespace cyclo {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

inline Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// Floor division for b != 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

// Representative of a mod b in [0, |b|).
inline Integer floor_mod(const Integer& a, const Integer& b) {
  Integer r = a % b;
  if (r < 0) r += abs_value(b);
  return r;
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  std::int64_t r = a % b;
  return r < 0 ? r + b : r;
}

inline bool fits_int64(const Integer& x) {
  return x >= std::numeric_limits<std::int64_t>::min() &&
         x <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(const Integer& x) {
  if (!fits_int64(x)) throw ResourceLimit("integer does not fit in 64 bits: " + x.str());
  return x.convert_to<std::int64_t>();
}

struct ExtendedGcd {
  Integer g, s, t;  // s*a + t*b = g >= 0
};

inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

// Row-major dense integer matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  // Builds a matrix whose columns are the given vectors (all of length rows).
  static Matrix from_columns(std::size_t rows, const std::vector<IntVector>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != rows) throw InvalidParameter("column length mismatch");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector column(std::size_t c) const {
    IntVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  IntVector operator*(const IntVector& x) const {
    IntVector y(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) y[r] += (*this)(r, c) * x[c];
    return y;
  }

  Matrix operator*(const Matrix& o) const {
    Matrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if ((*this)(i, k) == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += (*this)(i, k) * o(k, j);
      }
    return p;
  }

  bool operator==(const Matrix& o) const = default;

  void swap_columns(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  // Stable textual form, used as a dedup / ordering key.
  std::string key() const {
    std::string s;
    for (const auto& x : data_) {
      s += x.str();
      s += ',';
    }
    return s;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  IntVector data_;
};

// Fraction-free (Bareiss) determinant of a square matrix.
inline Integer determinant(Matrix a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw InvalidParameter("determinant of non-square matrix");
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : Integer(-a(n - 1, n - 1));
}

// Column-style Hermite normal form of the lattice spanned by the columns of
// `gens`: a square upper-triangular basis with positive diagonal and every
// entry right of the diagonal reduced into [0, diagonal). Throws if the
// columns do not span a full-rank lattice.
inline Matrix hermite_normal_form(Matrix gens) {
  const std::size_t n = gens.rows();
  std::size_t active = gens.cols();  // columns [0, active) still unplaced
  Matrix h(n, n);
  for (std::size_t row = n; row-- > 0;) {
    // Fold every active column's entry in `row` into a single pivot column.
    std::size_t pivot = active;
    for (std::size_t c = 0; c < active; ++c) {
      if (gens(row, c) == 0) continue;
      if (pivot == active) {
        pivot = c;
        continue;
      }
      const Integer x = gens(row, pivot);
      const Integer y = gens(row, c);
      auto [g, s, t] = extended_gcd(x, y);
      const Integer xg = x / g, yg = y / g;
      for (std::size_t r = 0; r <= row; ++r) {
        const Integer a = gens(r, pivot), b = gens(r, c);
        gens(r, pivot) = s * a + t * b;
        gens(r, c) = xg * b - yg * a;
      }
    }
    if (pivot == active) throw InvalidParameter("generators do not span a full-rank lattice");
    if (gens(row, pivot) < 0)
      for (std::size_t r = 0; r <= row; ++r) gens(r, pivot) = -gens(r, pivot);
    for (std::size_t r = 0; r <= row; ++r) h(r, row) = gens(r, pivot);
    gens.swap_columns(pivot, active - 1);
    --active;
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Integer q = floor_div(h(i, j), h(i, i));
      if (q == 0) continue;
      for (std::size_t r = 0; r <= i; ++r) h(r, j) -= q * h(r, i);
    }
  }
  return h;
}

struct SmithForm {
  IntVector diagonal;  // d_1 | d_2 | ... , all positive
  Matrix left;         // U with U * A * V = diag
  Matrix left_inverse; // U^{-1}
};

// Smith normal form of a nonsingular square matrix. Only the left transform
// is tracked: the lattice A*Z^n equals U^{-1} * diag * Z^n.
inline SmithForm smith_normal_form(Matrix a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw InvalidParameter("smith form of non-square matrix");
  Matrix u = Matrix::identity(n);
  Matrix uinv = Matrix::identity(n);

  // Row operations mirror onto U (same op) and U^{-1} (inverse op on columns).
  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t c = 0; c < n; ++c) {
      a(dst, c) += q * a(src, c);
      u(dst, c) += q * u(src, c);
    }
    for (std::size_t r = 0; r < n; ++r) uinv(r, src) -= q * uinv(r, dst);
  };
  auto row_swap = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    u.swap_rows(x, y);
    uinv.swap_columns(x, y);
  };
  auto row_negate = [&](std::size_t x) {
    for (std::size_t c = 0; c < n; ++c) {
      a(x, c) = -a(x, c);
      u(x, c) = -u(x, c);
    }
    for (std::size_t r = 0; r < n; ++r) uinv(r, x) = -uinv(r, x);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t r = 0; r < n; ++r) a(r, dst) += q * a(r, src);
  };

  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = n, pc = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a(i, j) != 0 && (pr == n || abs_value(a(i, j)) < abs_value(a(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr == n) throw InvalidParameter("smith form of singular matrix");
      row_swap(t, pr);
      a.swap_columns(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a(i, t) == 0) continue;
        row_add(i, t, -floor_div(a(i, t), a(t, t)));
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        col_add(j, t, -floor_div(a(t, j), a(t, t)));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: pull an offending row into the pivot row and retry.
      bool divides = true;
      for (std::size_t i = t + 1; i < n && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            row_add(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a(t, t) < 0) row_negate(t);
  }
  SmithForm out;
  out.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = a(i, i);
  out.left = std::move(u);
  out.left_inverse = std::move(uinv);
  return out;
}

}  // namespace cyclo
