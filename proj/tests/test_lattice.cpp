#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "cyclo/lattice.hpp"

using namespace cyclo;

namespace {

Integer laplace_det(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  Integer det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != c) minor(r - 1, kk++) = a(r, k);
    const Integer term = a(0, c) * laplace_det(minor);
    det += (c % 2 == 0) ? term : Integer(-term);
  }
  return det;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, int lo, int hi, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(lo, hi);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = d(rng);
  return m;
}

// Solves the upper-triangular system h * y = x over Z; true iff integral.
bool in_hnf_lattice(const Matrix& h, IntVector x) {
  for (std::size_t i = h.rows(); i-- > 0;) {
    if (x[i] % h(i, i) != 0) return false;
    const Integer q = x[i] / h(i, i);
    for (std::size_t r = 0; r <= i; ++r) x[r] -= q * h(r, i);
  }
  return true;
}

// gcd of all k x k minors, by brute force over row/column subsets.
Integer determinantal_divisor(const Matrix& a, std::size_t k) {
  const std::size_t n = a.rows();
  Integer g = 0;
  std::vector<std::size_t> rows(k), cols(k);
  std::function<void(std::size_t, std::size_t, std::vector<std::size_t>&, const std::function<void()>&)> choose =
      [&](std::size_t start, std::size_t depth, std::vector<std::size_t>& pick, const std::function<void()>& f) {
        if (depth == k) {
          f();
          return;
        }
        for (std::size_t i = start; i < n; ++i) {
          pick[depth] = i;
          choose(i + 1, depth + 1, pick, f);
        }
      };
  choose(0, 0, rows, [&] {
    choose(0, 0, cols, [&] {
      Matrix m(k, k);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) m(r, c) = a(rows[r], cols[c]);
      g = boost::multiprecision::gcd(g, abs_value(laplace_det(m)));
    });
  });
  return g;
}

}  // namespace

TEST(Lattice, FloorDivisionAndModulo) {
  EXPECT_EQ(floor_div(Integer(-7), Integer(2)), -4);
  EXPECT_EQ(floor_div(Integer(7), Integer(-2)), -4);
  EXPECT_EQ(floor_mod(Integer(-7), Integer(3)), 2);
  EXPECT_EQ(floor_mod(std::int64_t{-7}, std::int64_t{3}), 2);
  for (int a = -20; a <= 20; ++a)
    for (int b : {-5, -3, 1, 2, 7}) {
      const Integer q = floor_div(Integer(a), Integer(b));
      const Integer r = Integer(a) - q * b;
      EXPECT_TRUE(b > 0 ? (r >= 0 && r < b) : (r <= 0 && r > b)) << a << " " << b;
    }
}

TEST(Lattice, ExtendedGcdBezout) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> d(-500, 500);
  for (int k = 0; k < 200; ++k) {
    const Integer a = d(rng), b = d(rng);
    const auto [g, s, t] = extended_gcd(a, b);
    EXPECT_EQ(g, boost::multiprecision::gcd(abs_value(a), abs_value(b)));
    EXPECT_EQ(s * a + t * b, g);
  }
}

TEST(Lattice, ToInt64RejectsOverflow) {
  EXPECT_EQ(to_int64(Integer(-5)), -5);
  EXPECT_THROW(to_int64(Integer(1) << 70), ResourceLimit);
}

TEST(Lattice, BareissMatchesLaplace) {
  std::mt19937_64 rng(2);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int k = 0; k < 30; ++k) {
      const Matrix a = random_matrix(n, n, -6, 6, rng);
      EXPECT_EQ(determinant(a), laplace_det(a));
    }
  Matrix singular(2, 2);
  singular(0, 0) = 2;
  singular(0, 1) = 4;
  singular(1, 0) = 1;
  singular(1, 1) = 2;
  EXPECT_EQ(determinant(singular), 0);
}

TEST(Lattice, HermiteFormIsCanonicalAndSpansSameLattice) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 1; n <= 4; ++n)
    for (int k = 0; k < 40; ++k) {
      const Matrix gens = random_matrix(n, n + 2, -9, 9, rng);
      Matrix h;
      try {
        h = hermite_normal_form(gens);
      } catch (const InvalidParameter&) {
        continue;  // rank-deficient draw
      }
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_GT(h(i, i), 0);
        for (std::size_t r = i + 1; r < n; ++r) EXPECT_EQ(h(r, i), 0);
        for (std::size_t j = i + 1; j < n; ++j) {
          EXPECT_GE(h(i, j), 0);
          EXPECT_LT(h(i, j), h(i, i));
        }
      }
      for (std::size_t c = 0; c < gens.cols(); ++c) EXPECT_TRUE(in_hnf_lattice(h, gens.column(c)));
      // The HNF basis is the HNF of any basis of the same lattice.
      EXPECT_EQ(hermite_normal_form(h), h);
      Matrix shuffled = gens;
      shuffled.swap_columns(0, gens.cols() - 1);
      EXPECT_EQ(hermite_normal_form(shuffled), h);
    }
}

TEST(Lattice, HermiteFormRejectsDeficientRank) {
  Matrix g(2, 2);
  g(0, 0) = 1;
  g(1, 0) = 2;
  g(0, 1) = 2;
  g(1, 1) = 4;
  EXPECT_THROW(hermite_normal_form(g), InvalidParameter);
}

TEST(Lattice, SmithInvariantsMatchDeterminantalDivisors) {
  std::mt19937_64 rng(4);
  for (std::size_t n = 1; n <= 4; ++n)
    for (int k = 0; k < 25; ++k) {
      const Matrix a = random_matrix(n, n, -8, 8, rng);
      if (determinant(a) == 0) continue;
      const SmithForm s = smith_normal_form(a);
      EXPECT_EQ(s.left * s.left_inverse, Matrix::identity(n));
      Integer prefix = 1;
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_GT(s.diagonal[i], 0);
        if (i + 1 < n) {
          EXPECT_EQ(s.diagonal[i + 1] % s.diagonal[i], 0);
        }
        prefix *= s.diagonal[i];
        EXPECT_EQ(prefix, determinantal_divisor(a, i + 1));
      }
      // Rows of U*A are divisible by the matching invariant factor.
      const Matrix ua = s.left * a;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) EXPECT_EQ(ua(r, c) % s.diagonal[r], 0);
    }
}
