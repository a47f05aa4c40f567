#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cyclo/ideal.hpp"

using namespace cyclo;

namespace {

CycInt random_element(const ContextPtr& ctx, std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntVector v(ctx->dim());
  for (auto& x : v) x = d(rng);
  return CycInt(ctx, v);
}

// A handful of proper ideals of moderate norm, principal and two-generated.
std::vector<IdealLattice> sample_ideals(const ContextPtr& ctx, std::mt19937_64& rng, int count) {
  std::vector<IdealLattice> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<CycInt> gens{random_element(ctx, rng, 3)};
    if (rng() % 2) gens.push_back(CycInt(ctx, {static_cast<long long>(2 + rng() % 9)}));
    try {
      IdealLattice a = ideal_from_generators(gens);
      if (a.is_unit() || a.norm() > 3000) continue;
      out.push_back(std::move(a));
    } catch (const ZeroIdeal&) {
    }
  }
  return out;
}

}  // namespace

TEST(Ideal, PrincipalNormIsAbsoluteFieldNorm) {
  std::mt19937_64 rng(21);
  for (int m : {3, 4, 5, 7, 8, 12}) {
    const auto ctx = make_context(m);
    for (int k = 0; k < 25; ++k) {
      const CycInt a = random_element(ctx, rng, 3);
      if (a.is_zero()) continue;
      EXPECT_EQ(principal_ideal(a).norm(), abs_value(field_norm(a)));
    }
  }
}

TEST(Ideal, GeneratorsAndMultiplesAreContained) {
  std::mt19937_64 rng(22);
  for (int m : {3, 4, 5, 8}) {
    const auto ctx = make_context(m);
    for (const auto& a : sample_ideals(ctx, rng, 8)) {
      for (const auto& b : a.basis()) {
        EXPECT_TRUE(a.contains(b));
        for (int k = 0; k < 5; ++k) EXPECT_TRUE(a.contains(b * random_element(ctx, rng, 5)));
      }
      // N(A) * 1 lies in A.
      EXPECT_TRUE(a.contains(CycInt(ctx, {a.norm().convert_to<long long>()})));
    }
  }
}

TEST(Ideal, HnfIsGeneratorIndependent) {
  const auto ctx = make_context(4);
  // (2, 1+i) = (1+i) = (1-i) = (i - 1).
  const auto a = ideal_from_generators({CycInt(ctx, {2}), CycInt(ctx, {1, 1})});
  EXPECT_EQ(a, principal_ideal(CycInt(ctx, {1, 1})));
  EXPECT_EQ(a, principal_ideal(CycInt(ctx, {1, -1})));
  EXPECT_EQ(a.norm(), 2);
  // Associates generate the same ideal.
  const CycInt g(ctx, {7, 4});
  for (const auto& u : torsion_units(ctx)) EXPECT_EQ(principal_ideal(u * g), principal_ideal(g));
}

TEST(Ideal, ContainmentMatchesDivisibility) {
  const auto c3 = make_context(3);
  const auto big = principal_ideal(rho::from_rho(c3, 1, 9));
  EXPECT_TRUE(big.is_subset_of(principal_ideal(rho::from_rho(c3, 1, 2))));
  EXPECT_TRUE(big.is_subset_of(principal_ideal(rho::from_rho(c3, 3, 1))));
  EXPECT_FALSE(big.is_subset_of(principal_ideal(rho::from_rho(c3, 2, 1))));
}

TEST(Ideal, RejectsZeroAndNonIdealLattices) {
  const auto ctx = make_context(4);
  EXPECT_THROW(principal_ideal(CycInt(ctx)), ZeroIdeal);
  EXPECT_THROW(ideal_from_generators({}), ZeroIdeal);
  // 2Z + Zi is a lattice but not closed under multiplication by i.
  EXPECT_THROW(IdealLattice::from_lattice_columns(ctx, {IntVector{2, 0}, IntVector{0, 1}}), HypothesisViolation);
  EXPECT_THROW(quotient_ring(principal_ideal(CycInt::one(ctx))), UnitIdeal);
}

TEST(Quotient, ResidueIndexIsABijection) {
  std::mt19937_64 rng(23);
  for (int m : {3, 4, 5, 8}) {
    const auto ctx = make_context(m);
    for (const auto& a : sample_ideals(ctx, rng, 6)) {
      const QuotientRing q(a);
      EXPECT_EQ(q.order(), a.norm());
      std::set<std::string> reps;
      for (std::int64_t i = 0; i < q.order(); ++i) {
        const CycInt r = q.canonical_rep(i);
        EXPECT_EQ(q.index_of(r), i);
        EXPECT_EQ(a.reduce(r), r);
        reps.insert(r.str());
      }
      EXPECT_EQ(static_cast<std::int64_t>(reps.size()), q.order());
    }
  }
}

TEST(Quotient, SameIndexIffDifferenceInIdeal) {
  std::mt19937_64 rng(24);
  for (int m : {3, 4, 5, 8}) {
    const auto ctx = make_context(m);
    for (const auto& a : sample_ideals(ctx, rng, 6)) {
      const QuotientRing q(a);
      for (int k = 0; k < 60; ++k) {
        const CycInt x = random_element(ctx, rng, 20), y = random_element(ctx, rng, 20);
        EXPECT_EQ(q.index_of(x) == q.index_of(y), a.contains(x - y));
        EXPECT_TRUE(a.contains(x - q.reduce(x).canonical_rep));
        std::vector<std::int64_t> small;
        for (const auto& c : x.coeffs()) small.push_back(c.convert_to<std::int64_t>());
        EXPECT_EQ(q.index_of(std::span<const std::int64_t>(small)), q.index_of(x));
      }
    }
  }
}

TEST(Quotient, ArithmeticIsARingHomomorphism) {
  std::mt19937_64 rng(25);
  for (int m : {3, 4, 5, 8}) {
    const auto ctx = make_context(m);
    for (const auto& a : sample_ideals(ctx, rng, 5)) {
      const QuotientRing q(a);
      EXPECT_EQ(q.zero(), q.index_of(CycInt(ctx)));
      for (int k = 0; k < 40; ++k) {
        const CycInt x = random_element(ctx, rng, 9), y = random_element(ctx, rng, 9);
        const auto ix = q.index_of(x), iy = q.index_of(y);
        EXPECT_EQ(q.add(ix, iy), q.index_of(x + y));
        EXPECT_EQ(q.sub(ix, iy), q.index_of(x - y));
        EXPECT_EQ(q.neg(ix), q.index_of(-x));
        EXPECT_EQ(q.mul(ix, iy), q.index_of(x * y));
        EXPECT_EQ(q.multiplier(y)(ix), q.index_of(x * y));
        EXPECT_EQ(q.mul(ix, q.one()), ix);
      }
    }
  }
}

TEST(Quotient, AdditiveStructure) {
  const auto c4 = make_context(4);
  EXPECT_EQ(QuotientRing(principal_ideal(CycInt(c4, {3}))).moduli(), (std::vector<std::int64_t>{3, 3}));
  EXPECT_EQ(QuotientRing(principal_ideal(CycInt(c4, {2, 1}))).moduli(), (std::vector<std::int64_t>{5}));
  EXPECT_EQ(QuotientRing(principal_ideal(CycInt(c4, {2}))).moduli(), (std::vector<std::int64_t>{2, 2}));
  const auto c3 = make_context(3);
  const QuotientRing q(principal_ideal(rho::from_rho(c3, 1, 9)));
  EXPECT_EQ(q.moduli(), (std::vector<std::int64_t>{91}));
  EXPECT_EQ(q.rank(), 1u);
  EXPECT_THROW(q.canonical_rep(91), InvalidParameter);
}

TEST(Quotient, IntermediateIdealsOfTheExample) {
  const auto ctx = make_context(3);
  const QuotientRing q(principal_ideal(rho::from_rho(ctx, 1, 9)));
  const auto r = intermediate_ideals(q);
  ASSERT_EQ(r.ideals.size(), 4u);
  EXPECT_EQ(r.ideals[0].norm(), 1);
  EXPECT_EQ(r.ideals[1], principal_ideal(rho::from_rho(ctx, 1, 2)));
  EXPECT_EQ(r.ideals[2], principal_ideal(rho::from_rho(ctx, 3, 1)));
  EXPECT_EQ(r.ideals[3], q.ideal());
  EXPECT_EQ(r.candidates_tested, 91);
  EXPECT_THROW(intermediate_ideals(q, {.max_norm = 50, .max_candidates = 1000}), ResourceLimit);
}

TEST(Quotient, IntermediateIdealCountsMatchDivisorCounts) {
  const auto c4 = make_context(4);
  // (5) = (2+i)(2-i): 4 divisors. (2) = (1+i)^2: 3. (3) inert: 2. (15): 8. (4) = (1+i)^4: 5.
  const std::vector<std::pair<long long, std::size_t>> cases{{5, 4}, {2, 3}, {3, 2}, {15, 8}, {4, 5}, {25, 9}};
  for (const auto& [n, count] : cases) {
    const auto r = intermediate_ideals(QuotientRing(principal_ideal(CycInt(c4, {n}))));
    EXPECT_EQ(r.ideals.size(), count) << n;
    for (const auto& d : r.ideals) {
      EXPECT_TRUE(principal_ideal(CycInt(c4, {n})).is_subset_of(d));
      EXPECT_EQ(n * n % d.norm(), 0);
    }
  }
}
