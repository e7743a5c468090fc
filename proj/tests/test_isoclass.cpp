#include <gtest/gtest.h>

#include <numeric>

#include "lambdalab/adams.hpp"
#include "lambdalab/error.hpp"
#include "lambdalab/isoclass.hpp"
#include "lambdalab/primes.hpp"
#include "oracles.hpp"

using namespace lambdalab;

namespace {

RingShape uni(int r) { return RingShape::univariate(r); }

const std::vector<long>& P50() {
  static const std::vector<long> p = primes_upto(50);
  return p;
}

LinearSeq power_seq(unsigned r) { return linear_sequence(CoeffRule::parse("p^" + std::to_string(r)), P50()); }

AdamsFamily square_family(long k) {
  return AdamsFamily::from_rules(uni(3), P50(), {CoeffRule::parse("p^2"), CoeffRule(PrimePoly{0, 0, -k, 0, k}, 12)});
}

AdamsFamily quadratic_family(const std::map<long, long>& c) {
  CoeffSpec spec{0, {2}, std::nullopt, {}};
  std::vector<long> primes;
  for (const auto& [p, v] : c) {
    primes.push_back(p);
    spec.overrides[p] = v;
  }
  return AdamsFamily(uni(3), primes, {spec});
}

AdamsFamily quaternionic_family(int n, const std::vector<long>& primes) {
  std::map<long, std::vector<TruncPoly>> psi;
  for (long p : primes) psi[p] = {TruncPoly::univariate(uni(n), oracle::quaternionic(p, static_cast<std::size_t>(n)))};
  return AdamsFamily::from_polys(uni(n), psi);
}

std::vector<oracle::Dense> dense_ops(const AdamsFamily& f) {
  std::vector<oracle::Dense> out;
  for (long p : f.primes()) out.push_back(f.psi(p).dense());
  return out;
}

Automorphism random_sigma(int n, long range) {
  std::vector<Integer> a;
  for (int k = 2; k < n; ++k) a.emplace_back(oracle::uniform(-range, range));
  return Automorphism(uni(n), oracle::uniform(0, 1) ? 1 : -1, a);
}

long oracle_theta(long p, long v) {
  long t = 0;
  while (v % p == 0) {
    v /= p;
    ++t;
  }
  return t;
}

}  // namespace

TEST(Theta, MatchesDivisionLoop) {
  for (long p : {2L, 3L, 5L, 7L})
    for (long v = 1; v < 2000; v += 7) EXPECT_EQ(*theta(p, v), oracle_theta(p, v));
}

TEST(ConditionA, Examples) {
  EXPECT_TRUE(condition_A(power_seq(2)));
  EXPECT_TRUE(condition_A(power_seq(1)));
  LinearSeq b = power_seq(2);
  b[2] = 0;
  EXPECT_FALSE(condition_A(b));
  EXPECT_TRUE(condition_B_primes(power_seq(2)).empty());
  EXPECT_TRUE(condition_B_primes(power_seq(1)).empty());
}

TEST(CountN3, KnownValues) {
  EXPECT_EQ(count_n3(power_seq(1)), 1);
  EXPECT_EQ(count_n3(power_seq(2)), 3);
  EXPECT_EQ(count_n3(power_seq(4)), 60);
  EXPECT_EQ(class_gcd(power_seq(2)), 12);
  EXPECT_EQ(class_gcd(power_seq(4)), 240);
}

TEST(CountN3, GcdMatchesDirectComputation) {
  for (unsigned r : {1u, 2u, 4u, 6u}) {
    LinearSeq b = power_seq(r);
    Integer g = 0;
    for (const auto& [p, v] : b) g = gcd(g, Integer(v * (v - 1)));
    EXPECT_EQ(class_gcd(b), g);
  }
}

TEST(CountN3, RejectsConditionAFailure) {
  LinearSeq b = power_seq(2);
  b[2] = 0;
  EXPECT_THROW(count_n3(b), ConditionAViolated);
  EXPECT_THROW(enumerate_n3(b), ConditionAViolated);
}

TEST(NormalFormN2, RealizabilityByUniformPower) {
  EXPECT_TRUE(realizable_n2(power_seq(3)));
  EXPECT_EQ(uniform_power(power_seq(3)), 3);
  EXPECT_FALSE(realizable_n2(LinearSeq{{2, 2}, {3, 9}}));
  EXPECT_TRUE(realizable_n2(LinearSeq{{2, 4}, {3, 9}, {5, 25}}));
  auto f = AdamsFamily::from_rules(uni(2), P50(), {CoeffRule::parse("p^3")});
  EXPECT_EQ(normal_form_n2(f), power_seq(3));
}

TEST(NormalFormN3, SevenReducesToFive) {
  auto nf = normal_form_n3(square_family(7));
  ASSERT_TRUE(std::holds_alternative<ClassDataN3>(nf));
  EXPECT_EQ(std::get<ClassDataN3>(nf).k, 5);
  EXPECT_EQ(std::get<ClassDataN3>(normal_form_n3(square_family(1))).k, 1);
}

TEST(NormalFormN3, QuadraticSignFlip) {
  auto nf = normal_form_n3(quadratic_family({{2, -1}, {3, -3}, {5, 5}}));
  ASSERT_TRUE(std::holds_alternative<QuadraticClassN3>(nf));
  EXPECT_EQ(std::get<QuadraticClassN3>(nf).c, (std::map<long, Integer>{{2, 1}, {3, 3}, {5, -5}}));
}

TEST(NormalFormN3, IdempotentAndIsomorphicToInput) {
  for (long c2 = -40; c2 <= 40; c2 += 3) {
    if (c2 % 2 == 0) continue;
    auto f = square_family(c2);
    ASSERT_TRUE(validate(f).ok()) << c2;
    auto nf = normal_form_n3(f);
    auto rep = representative(nf);
    EXPECT_EQ(normal_form_n3(rep), nf);
    EXPECT_TRUE(iso_criterion_n3(f, rep));
    EXPECT_EQ(iso_search(f, rep).verdict, Verdict::Isomorphic);
  }
}

TEST(IsoCriterionN3, DistinctK) {
  EXPECT_FALSE(iso_criterion_n3(square_family(1), square_family(3)));
  EXPECT_TRUE(iso_criterion_n3(square_family(1), square_family(1 + 24)));
  EXPECT_TRUE(iso_criterion_n3(square_family(1), square_family(11)));
}

TEST(IsoCriterionN4, Case2Mod60) {
  for (long m : {-2L, 1L, 3L}) {
    auto a = case2_family({1, 0}, P50());
    auto b = case2_family({1, Integer(60 * m)}, P50());
    EXPECT_TRUE(iso_criterion_n4_case2(a, b));
    auto w = iso_witness_n4_case2(a, b);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(verify_isomorphism(a, b, *w));
  }
  EXPECT_FALSE(iso_criterion_n4_case2(case2_family({1, 0}, P50()), case2_family({1, 2}, P50())));
}

TEST(IsoCriterionN4, Case4Alpha) {
  const std::vector<long> primes{2, 3, 5, 7};
  std::map<long, long> c{{2, 1}, {3, 3}, {5, 5}, {7, -7}}, d{{2, 0}, {3, 1}, {5, 0}, {7, 14}};
  auto build = [&](long alpha) {
    CoeffSpec cs{0, {2}, std::nullopt, {}}, ds{0, {3}, std::nullopt, {}};
    for (long p : primes) {
      cs.overrides[p] = c[p];
      ds.overrides[p] = d[p] + 2 * c[p] * alpha;
    }
    return AdamsFamily(uni(4), primes, {cs, ds});
  };
  auto r = build(0), s = build(7);
  ASSERT_TRUE(validate(r).ok());
  ASSERT_TRUE(validate(s).ok());
  EXPECT_TRUE(iso_criterion_n4_case4(r, s));
  auto w = iso_witness_n4_case4(r, s);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(verify_isomorphism(r, s, *w));
  EXPECT_EQ(iso_solve(r, s).verdict, Verdict::Isomorphic);
}

TEST(IsoCriterion, WrongRegime) {
  EXPECT_THROW(iso_criterion_n3(case2_family({1, 0}, P50()), case2_family({1, 0}, P50())), WrongRegime);
  EXPECT_THROW(iso_criterion_n4_case2(square_family(1), square_family(1)), WrongRegime);
}

TEST(IsoSolve, IdentityOnEqualFamilies) {
  auto f = case2_family({5, 8}, P50());
  auto res = iso_solve(f, f);
  EXPECT_EQ(res.verdict, Verdict::Isomorphic);
  ASSERT_TRUE(res.sigma.has_value());
  EXPECT_EQ(*res.sigma, Automorphism::identity(uni(4)));
}

TEST(IsoSolve, Case2DistinctK) {
  auto res = iso_solve(case2_family({1, 0}, P50()), case2_family({5, 0}, P50()));
  EXPECT_EQ(res.verdict, Verdict::NotIsomorphic);
  EXPECT_FALSE(res.witnesses.empty());
  EXPECT_EQ(res.method, "criterion:n4-case2");
  auto raw = iso_search(case2_family({1, 0}, P50()), case2_family({5, 0}, P50()));
  EXPECT_EQ(raw.verdict, Verdict::NotIsomorphic);
}

TEST(IsoSolve, LinearFamiliesReachChern) {
  auto chern = chern_family(uni(4), P50());
  for (long c2 = -9; c2 <= 9; c2 += 2) {
    for (long d2 = -12; d2 <= 12; d2 += 2) {
      if ((d2 + c2 * c2 - 1) % 3 != 0) continue;
      CoeffSpec b{0, {1}, CoeffRule::parse("p"), {}};
      CoeffSpec c{0, {2}, CoeffRule(PrimePoly{0, -c2, c2}, 2), {}};
      // (1/6) p (p-1) ((p+1) d2 + c2^2 (p-2)) expanded in p.
      const long s = c2 * c2;
      CoeffSpec d{0, {3}, CoeffRule(PrimePoly{0, -d2 + 2 * s, -3 * s, d2 + s}, 6), {}};
      AdamsFamily f(uni(4), P50(), {b, c, d});
      ASSERT_TRUE(validate(f).ok()) << c2 << " " << d2;
      auto res = iso_solve(f, chern);
      ASSERT_EQ(res.verdict, Verdict::Isomorphic) << c2 << " " << d2;
      EXPECT_TRUE(verify_isomorphism(f, chern, *res.sigma));
      Automorphism formula = normalize_n4_case1(f);
      EXPECT_TRUE(verify_isomorphism(f, chern, formula));
      EXPECT_EQ(formula.u(), c2 % 3 == 0 ? -1 : 1);
    }
  }
}

TEST(IsoSolve, AgreesWithBruteForce) {
  // Conjugates of a few base families; brute force over a small box.
  for (int t = 0; t < 25; ++t) {
    const int n = t % 2 == 0 ? 3 : 4;
    const std::vector<long> primes{2, 3, 5, 7};
    AdamsFamily base = n == 3 ? AdamsFamily::from_rules(uni(3), primes, {CoeffRule::parse("p^2"),
                                                                           CoeffRule(PrimePoly{0, 0, -1, 0, 1}, 12)})
                              : case2_family({1, 0}, primes);
    AdamsFamily other = n == 3 ? AdamsFamily::from_rules(uni(3), primes, {CoeffRule::parse("p^2"),
                                                                            CoeffRule(PrimePoly{0, 0, -3, 0, 3}, 12)})
                               : case2_family({1, 2}, primes);
    auto r = conjugate(base, random_sigma(n, 2));
    auto s = conjugate(oracle::uniform(0, 1) ? base : other, random_sigma(n, 2));
    auto res = iso_solve(r, s);
    const bool brute = oracle::brute_iso(dense_ops(r), dense_ops(s), 6);
    if (brute) {
      EXPECT_EQ(res.verdict, Verdict::Isomorphic) << t;
    }
    if (res.verdict == Verdict::Isomorphic) {
      bool in_box = true;
      for (const auto& a : res.sigma->higher()) in_box = in_box && abs(a) <= 6;
      if (in_box) {
        EXPECT_TRUE(brute) << t;
      }
    } else {
      EXPECT_EQ(res.verdict, Verdict::NotIsomorphic);
      EXPECT_FALSE(brute);
    }
  }
}

TEST(IsoSolve, ShapeMismatch) {
  EXPECT_THROW(iso_solve(square_family(1), case2_family({1, 0}, P50())), ShapeMismatch);
}

TEST(EnumerateN3, Sizes) {
  auto two = enumerate_n3(power_seq(2));
  ASSERT_EQ(two.size(), 3u);
  EXPECT_EQ(two[0].k, 1);
  EXPECT_EQ(two[1].k, 3);
  EXPECT_EQ(two[2].k, 5);
  auto four = enumerate_n3(power_seq(4));
  ASSERT_EQ(four.size(), 60u);
  EXPECT_EQ(four.back().k, 119);
  EXPECT_EQ(enumerate_n3(power_seq(1)).size(), 1u);
  for (const auto& cls : two) EXPECT_TRUE(validate(representative(cls)).ok());
}

TEST(EnumerateN4, CaseTwoCoefficients) {
  auto all = enumerate_n4_case2();
  ASSERT_EQ(all.size(), 60u);
  auto f = case2_family({1, 0}, P50());
  EXPECT_EQ(f.coeff(3, 3), 1);
  EXPECT_EQ(f.coeff(5, 3), 35);
  for (const auto& cls : {ClassN4Case2{1, 4}, ClassN4Case2{5, 10}}) {
    auto g = case2_family(cls, P50());
    EXPECT_EQ(g.coeff(2, 3), cls.d2);
    EXPECT_EQ(g.coeff(3, 3), 12 * cls.d2 + cls.k * cls.k);
    EXPECT_EQ(g.coeff(5, 3), 260 * cls.d2 + 35 * cls.k * cls.k);
    EXPECT_TRUE(validate(g).ok());
  }
}

TEST(NormalizeN4, QuaternionicIsS10) {
  auto hp = quaternionic_family(4, P50());
  ASSERT_TRUE(validate(hp).ok());
  EXPECT_EQ(normalize_n4_case2(hp), (ClassN4Case2{1, 0}));
  auto cls = classify_n4(hp);
  EXPECT_EQ(cls.regime, N4Regime::Case2);
  auto v = realizable_filter_n4(cls);
  EXPECT_TRUE(v.passes);
  EXPECT_TRUE(v.known_realized);
}

TEST(NormalizeN4, ConjugatesReturnToClass) {
  for (int t = 0; t < 20; ++t) {
    ClassN4Case2 cls{oracle::uniform(0, 1) ? 1 : 5, Integer(2 * oracle::uniform(0, 29))};
    auto f = conjugate(case2_family(cls, P50()), random_sigma(4, 4));
    EXPECT_EQ(normalize_n4_case2(f), cls);
  }
}

TEST(ExtensionBound, Values) {
  auto prefix = [](const char* rule, int n) {
    return prefix_of(AdamsFamily::from_rules(uni(n - 1), P50(), {CoeffRule::parse(rule)}), n);
  };
  EXPECT_EQ(extension_bound(prefix("p", 4)), 6);
  EXPECT_EQ(extension_bound(prefix("p^2", 4)), 60);
  EXPECT_EQ(extension_bound(prefix("p^2", 3)), 12);
  EXPECT_LE(count_n3(power_seq(2)), 12);
  ExtensionPrefix zero{3, {{2, {Integer(0)}}}};
  EXPECT_THROW(extension_bound(zero), ZeroLinearCoefficient);
}

TEST(ExtensionBound, EnumeratedCountsRespectBound) {
  auto chern3 = chern_family(uni(3), primes_upto(13));
  auto ext = enumerate_extensions(chern3);
  EXPECT_EQ(ext.size(), 1u);
  for (const auto& e : ext) EXPECT_TRUE(validate(e).ok());

  auto base = AdamsFamily::from_rules(uni(2), primes_upto(13), {CoeffRule::parse("p^2")});
  auto sq = enumerate_extensions(base);
  EXPECT_EQ(sq.size(), 3u);
  EXPECT_LE(Integer(sq.size()), extension_bound(prefix_of(base, 3)));
}

TEST(Conjc, LowDegreesPassEverywhere) {
  for (int n : {3, 4, 5}) {
    auto r = quaternionic_family(n, P50());
    auto rt = quaternionic_family(n + 1, P50());
    for (int t = 0; t < 5; ++t) {
      auto sigma = random_sigma(n, 5);
      auto s = conjugate(r, sigma);
      auto rep = conjc_check(r, s, sigma, rt);
      EXPECT_TRUE(rep.ok()) << "n=" << n;
    }
  }
}

TEST(Conjc, SixProbeReportsParity) {
  auto r = quaternionic_family(6, P50());
  auto rt = quaternionic_family(7, P50());
  auto sigma = random_sigma(6, 3);
  auto rep = conjc_check(r, conjugate(r, sigma), sigma, rt);
  EXPECT_TRUE(rep.high_ok());
  EXPECT_TRUE(rep.x6_coeff_mod2.has_value());
  EXPECT_TRUE(rep.b3_parity.has_value());
}

TEST(Conjc, PrefixMismatch) {
  auto r = quaternionic_family(3, P50());
  auto sigma = Automorphism::identity(uni(3));
  EXPECT_THROW(conjc_check(r, r, sigma, chern_family(uni(4), P50())), PrefixMismatch);
}

TEST(Realizability, FilterN3) {
  ClassDataN3 hp2 = std::get<ClassDataN3>(normal_form_n3(square_family(1)));
  auto v = realizable_filter_n3(hp2);
  EXPECT_TRUE(v.passes);
  EXPECT_TRUE(v.known_realized);
  EXPECT_EQ(v.r, 2);

  LinearSeq cube = power_seq(3);
  ClassDataN3 bad{cube, class_gcd(cube), {}, 1};
  EXPECT_FALSE(realizable_filter_n3(bad).passes);
  EXPECT_FALSE(realizable_filter_n3(QuadraticClassN3{{{2, 1}}}).passes);
}

TEST(LinearInvariant, SeparatesExistenceFamilies) {
  RingShape s({Truncation::finite(3), Truncation::finite(4)});
  const auto primes = primes_upto(13);
  auto build = [&](long m0, long m1) {
    std::map<std::pair<long, int>, Integer> b;
    for (long p : primes)
      if (p >= 4) {
        b[{p, 0}] = m0 * p;
        b[{p, 1}] = m1 * p;
      }
    return construct_existence_family(s, b, primes);
  };
  auto f = build(2, 3), g = build(3, 2), h = build(2, 4);
  EXPECT_EQ(linear_invariant(f, 5), linear_invariant(g, 5));
  EXPECT_NE(linear_invariant(f, 5), linear_invariant(h, 5));
  EXPECT_EQ(linear_invariant(square_family(1), 3), std::vector<Integer>{9});
}
