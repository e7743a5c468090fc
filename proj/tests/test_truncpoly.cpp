#include <gtest/gtest.h>

#include "lambdalab/error.hpp"
#include "lambdalab/truncpoly.hpp"
#include "oracles.hpp"

using namespace lambdalab;

namespace {

RingShape uni(int r, int filt = 1) { return RingShape::univariate(r, filt); }

TruncPoly P(int r, std::initializer_list<long> c) { return TruncPoly::univariate(uni(r), c); }

oracle::Dense to_dense(const TruncPoly& f) { return f.dense(); }

TruncPoly from_dense(const RingShape& s, const oracle::Dense& d) { return TruncPoly::univariate(s, d); }

oracle::Dense random_dense(std::size_t n, long lo, long hi, bool zero_const) {
  oracle::Dense d(n);
  for (auto& c : d) c = oracle::uniform(lo, hi);
  if (zero_const) d[0] = 0;
  return d;
}

}  // namespace

TEST(TruncPolyAdd, AdditiveInverseIsZero) {
  EXPECT_TRUE((P(3, {0, 1}) + P(3, {0, -1})).is_zero());
}

TEST(TruncPolyAdd, CollectsLikeTerms) { EXPECT_EQ(P(3, {0, 1, 1}) + P(3, {0, 0, 1}), P(3, {0, 1, 2})); }

TEST(TruncPolyAdd, NoOverflowPast64Bits) {
  Integer big;
  mpz_ui_pow_ui(big.get_mpz_t(), 2, 64);
  TruncPoly f = TruncPoly::monomial(uni(3), {2}, big);
  EXPECT_EQ((f + f).coefficient(2), big * 2);
  EXPECT_EQ((f + f).coefficient(2).get_str(), "36893488147419103232");
}

TEST(TruncPolyAdd, ShapeMismatchThrows) { EXPECT_THROW(P(3, {0, 1}) + P(4, {0, 1}), ShapeMismatch); }

TEST(TruncPolyMul, TruncationKillsSquare) { EXPECT_TRUE((P(2, {0, 1}) * P(2, {0, 1})).is_zero()); }

TEST(TruncPolyMul, Binomial) { EXPECT_EQ(P(3, {1, 1}) * P(3, {1, 1}), P(3, {1, 2, 1})); }

TEST(TruncPolyMul, HandExpansion) { EXPECT_EQ(P(4, {0, 1, 1}) * P(4, {0, 1, 1}), P(4, {0, 0, 1, 2})); }

TEST(TruncPolyMul, ShapeMismatchThrows) { EXPECT_THROW(P(3, {1}) * P(5, {1}), ShapeMismatch); }

TEST(TruncPolyMul, MatchesDenseOracle) {
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = static_cast<std::size_t>(oracle::uniform(2, 9));
    auto a = random_dense(n, -50, 50, false), b = random_dense(n, -50, 50, false);
    EXPECT_EQ(to_dense(from_dense(uni(static_cast<int>(n)), a) * from_dense(uni(static_cast<int>(n)), b)),
              oracle::mul(a, b));
  }
}

TEST(TruncPolyMul, MultivariableTruncatesEachVariable) {
  RingShape s({Truncation::finite(2), Truncation::finite(3)});
  TruncPoly x = TruncPoly::variable(s, 0), y = TruncPoly::variable(s, 1);
  TruncPoly f = (x + y) * (x + y) * (x + y);
  // (x+y)^3 = 3 x y^2 once x^2 = 0 and y^3 = 0.
  EXPECT_EQ(f, TruncPoly::monomial(s, {1, 2}, 3));
}

TEST(TruncPolyCompose, IdentityOuter) {
  TruncPoly g = P(5, {0, 2, -1, 7, 3});
  EXPECT_EQ(compose(P(5, {0, 1}), g), g);
}

TEST(TruncPolyCompose, HandExpansion) { EXPECT_EQ(compose(P(4, {0, 2, 1}), P(4, {0, 0, 1})), P(4, {0, 0, 2})); }

TEST(TruncPolyCompose, QuadraticCoefficientFormula) {
  // (b x + c x^2) o (b' x + c' x^2) = b b' x + (b c' + c b'^2) x^2
  const long b = 6, c = -5, b2 = 9, c2 = 4;
  EXPECT_EQ(compose(P(3, {0, b, c}), P(3, {0, b2, c2})), P(3, {0, b * b2, b * c2 + c * b2 * b2}));
}

TEST(TruncPolyCompose, MatchesDenseOracle) {
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = static_cast<std::size_t>(oracle::uniform(2, 8));
    const RingShape s = uni(static_cast<int>(n));
    auto f = random_dense(n, -20, 20, false), g = random_dense(n, -20, 20, true);
    EXPECT_EQ(to_dense(compose(from_dense(s, f), from_dense(s, g))), oracle::compose(f, g));
  }
}

TEST(TruncPolyCompose, NonzeroConstantInnerThrows) {
  EXPECT_THROW(compose(P(3, {0, 1}), P(3, {1, 1})), NonzeroConstantTerm);
}

TEST(TruncPolyCompose, ArityMismatchThrows) {
  RingShape s2({Truncation::finite(3), Truncation::finite(3)});
  std::vector<TruncPoly> inner{P(3, {0, 1})};
  EXPECT_THROW(compose(TruncPoly::variable(s2, 0), inner), ArityMismatch);
}

TEST(TruncPolyCompose, MultivariableSubstitution) {
  RingShape s2({Truncation::finite(3), Truncation::finite(3)});
  TruncPoly x = TruncPoly::variable(s2, 0), y = TruncPoly::variable(s2, 1);
  // f(x, y) = x y, substituted with (x + y, y) gives x y + y^2.
  std::vector<TruncPoly> inner{x + y, y};
  EXPECT_EQ(compose(x * y, inner), x * y + y * y);
}

TEST(TruncPolyInverse, Identity) { EXPECT_EQ(comp_inverse(P(4, {0, 1})), P(4, {0, 1})); }

TEST(TruncPolyInverse, Negation) { EXPECT_EQ(comp_inverse(P(4, {0, -1})), P(4, {0, -1})); }

TEST(TruncPolyInverse, HandExpansion) {
  TruncPoly g = comp_inverse(P(4, {0, 1, 1}));
  EXPECT_EQ(g, P(4, {0, 1, -1, 2}));
  EXPECT_EQ(oracle::compose(P(4, {0, 1, 1}).dense(), g.dense()), P(4, {0, 1}).dense());
}

TEST(TruncPolyInverse, NonUnitThrows) { EXPECT_THROW(comp_inverse(P(4, {0, 2, 1})), NotAUnit); }

TEST(TruncPolyInverse, ConstantTermThrows) { EXPECT_THROW(comp_inverse(P(4, {1, 1})), NonzeroConstantTerm); }

TEST(TruncPolyReduce, FrobeniusAtTwo) { EXPECT_EQ(reduce_mod(P(3, {0, 2, 1}), 2), P(3, {0, 0, 1})); }

TEST(TruncPolyReduce, ChernAtThree) { EXPECT_EQ(reduce_mod(P(4, {0, 3, 3, 1}), 3), P(4, {0, 0, 0, 1})); }

TEST(TruncPolyReduce, VanishesModFive) { EXPECT_TRUE(reduce_mod(P(3, {0, 5, 10}), 5).is_zero()); }

TEST(TruncPolyReduce, NegativesLandInRange) { EXPECT_EQ(reduce_mod(P(3, {0, -1, -7}), 5), P(3, {0, 4, 3})); }

TEST(TruncPolyReduce, ModulusBelowTwoThrows) { EXPECT_THROW(reduce_mod(P(3, {0, 1}), 1), InvalidArgument); }

TEST(TruncPolyCoefficient, StoredAndMissing) {
  TruncPoly f = P(3, {0, 3, 5});
  EXPECT_EQ(f.coefficient(2), 5);
  EXPECT_EQ(f.coefficient(0), 0);
  EXPECT_THROW(f.coefficient(3), ExponentOutOfRange);
}

TEST(TruncPolyCoefficient, FiltrationValuation) {
  EXPECT_EQ(TruncPoly::monomial(uni(4, 2), {2}, 1).filtration_valuation(), 4);
  EXPECT_FALSE(TruncPoly(uni(4, 2)).filtration_valuation().has_value());
  EXPECT_EQ(P(5, {0, 0, 0, 7}).valuation(), 3);
}

TEST(RingShapeTest, RejectsSmallTruncation) {
  EXPECT_THROW(RingShape::univariate(1), InvalidShape);
  EXPECT_THROW(RingShape({}), InvalidShape);
  EXPECT_THROW(RingShape::univariate(3, 0), InvalidShape);
}

TEST(RingShapeTest, CappedVariableComputesBelowCap) {
  RingShape s({Truncation::finite(3), Truncation::capped(5)});
  EXPECT_TRUE(s.has_unbounded());
  TruncPoly y = TruncPoly::variable(s, 1);
  EXPECT_EQ(y.pow(4).coefficient({0, 4}), 1);
  EXPECT_TRUE(y.pow(5).is_zero());
}

TEST(TruncPolyConstruct, DropsOutOfRangeAndZero) {
  TruncPoly f(uni(3), {{{1}, 2}, {{2}, 0}, {{5}, 9}});
  EXPECT_EQ(f.terms().size(), 1u);
}

TEST(TruncPolyText, Format) { EXPECT_EQ(P(3, {1, 2, -3}).to_string(), "1 + 2*x^1 - 3*x^2"); }

// -- properties --------------------------------------------------------------

TEST(TruncPolyProperty, RingAxioms) {
  for (int t = 0; t < 200; ++t) {
    const int n = static_cast<int>(oracle::uniform(2, 7));
    const RingShape s = uni(n);
    auto a = from_dense(s, random_dense(static_cast<std::size_t>(n), -30, 30, false));
    auto b = from_dense(s, random_dense(static_cast<std::size_t>(n), -30, 30, false));
    auto c = from_dense(s, random_dense(static_cast<std::size_t>(n), -30, 30, false));
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(TruncPolyProperty, ComposeAssociativeAndInverse) {
  for (int t = 0; t < 300; ++t) {
    const int n = static_cast<int>(oracle::uniform(2, 8));
    const RingShape s = uni(n);
    auto f = from_dense(s, random_dense(static_cast<std::size_t>(n), -9, 9, true));
    auto g = from_dense(s, random_dense(static_cast<std::size_t>(n), -9, 9, true));
    auto h = from_dense(s, random_dense(static_cast<std::size_t>(n), -9, 9, true));
    EXPECT_EQ(compose(f, compose(g, h)), compose(compose(f, g), h));
    auto d = random_dense(static_cast<std::size_t>(n), -9, 9, true);
    d[1] = oracle::uniform(0, 1) ? 1 : -1;
    auto u = from_dense(s, d);
    auto x = TruncPoly::variable(s, 0);
    auto ui = comp_inverse(u);
    EXPECT_EQ(compose(u, ui), x);
    EXPECT_EQ(compose(ui, u), x);
  }
}
