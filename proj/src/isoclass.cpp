#include "lambdalab/isoclass.hpp"

#include <algorithm>
#include <functional>

#include "lambdalab/error.hpp"

namespace lambdalab {

namespace {

int univariate_bound(const AdamsFamily& f) {
  if (!f.shape().is_univariate() || f.shape().unbounded(0))
    throw ArityMismatch("expected a family on Z[x]/(x^n) with finite n");
  return f.shape().bound(0);
}

void require_bound(const AdamsFamily& f, int n, const char* what) {
  if (univariate_bound(f) != n) throw WrongRegime(std::string(what) + " needs Z[x]/(x^" + std::to_string(n) + ")");
}

bool has_prime(const AdamsFamily& f, long p) { return std::binary_search(f.primes().begin(), f.primes().end(), p); }

void require_same_ring(const AdamsFamily& r, const AdamsFamily& s) {
  if (!(r.shape() == s.shape())) throw ShapeMismatch("families live in different rings");
  if (r.primes() != s.primes()) throw PrimeOutOfSet("families have different active prime sets");
}

Integer ipow(long base, unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
  return r;
}

bool divides(const Integer& d, const Integer& n) { return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0; }

Integer mod_nonneg(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer odd_prime_product(const std::vector<long>& ps) {
  Integer r = 1;
  for (long p : ps) r *= p;
  return r;
}

bool all_linear_equal(const AdamsFamily& f, const std::function<Integer(long)>& b) {
  for (long p : f.primes())
    if (f.coeff(p, 1) != b(p)) return false;
  return true;
}

bool in_case2_regime(const AdamsFamily& f) {
  if (univariate_bound(f) != 4 || !has_prime(f, 2)) return false;
  if (!all_linear_equal(f, [](long p) { return ipow(p, 2); })) return false;
  const Integer k = f.coeff(2, 2);
  if (k != 1 && k != 5) return false;
  for (long p : f.primes()) {
    Integer p2 = ipow(p, 2);
    if (f.coeff(p, 2) != k * p2 * (p2 - 1) / 12) return false;
  }
  return true;
}

bool in_case4_regime(const AdamsFamily& f) {
  return univariate_bound(f) == 4 && all_linear_equal(f, [](long) { return Integer(0); });
}

}  // namespace

LinearSeq linear_sequence(const CoeffRule& rule, const std::vector<long>& primes) {
  LinearSeq b;
  for (long p : primes) b[p] = rule.eval(p);
  return b;
}

LinearSeq linear_coefficients(const AdamsFamily& family) {
  univariate_bound(family);
  LinearSeq b;
  for (long p : family.primes()) b[p] = family.coeff(p, 1);
  return b;
}

LinearSeq normal_form_n2(const AdamsFamily& family) { return linear_coefficients(family); }

std::optional<int> uniform_power(const LinearSeq& b) {
  if (b.empty()) return std::nullopt;
  const auto [p0, b0] = *b.begin();
  if (b0 < p0) return std::nullopt;
  auto r = theta(p0, b0);
  if (!r || *r < 1 || b0 != ipow(p0, static_cast<unsigned long>(*r))) return std::nullopt;
  for (const auto& [p, v] : b)
    if (v != ipow(p, static_cast<unsigned long>(*r))) return std::nullopt;
  return static_cast<int>(*r);
}

bool realizable_n2(const LinearSeq& b) { return uniform_power(b).has_value(); }

bool condition_A(const LinearSeq& b) {
  auto it = b.find(2);
  if (it == b.end() || it->second == 0) return false;
  const long t2 = *theta(2, it->second);
  const Integer pow2 = ipow(2, static_cast<unsigned long>(t2));
  for (const auto& [p, v] : b) {
    if (!divides(Integer(p), v)) return false;
    if (p != 2 && !divides(pow2, v * (v - 1))) return false;
  }
  return true;
}

std::vector<long> condition_B_primes(const LinearSeq& b) {
  std::vector<long> out;
  for (const auto& [p, bp] : b) {
    if (p == 2 || bp == 0) continue;
    std::optional<long> best;
    for (const auto& [q, bq] : b) {
      if (bq == 0) continue;
      auto t = theta(p, bq * (bq - 1));
      if (t && (!best || *t < *best)) best = t;
    }
    if (best && theta(p, bp) == best) out.push_back(p);
  }
  return out;
}

Integer class_gcd(const LinearSeq& b) {
  Integer g = 0;
  for (const auto& [p, v] : b) g = gcd(g, v * (v - 1));
  return g;
}

Integer count_n3(const LinearSeq& b) {
  if (!condition_A(b)) throw ConditionAViolated("b_2 != 0, p | b_p and the 2-adic bound are required");
  const Integer G = class_gcd(b);
  const Integer den = 4 * odd_prime_product(condition_B_primes(b));
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), G.get_mpz_t(), den.get_mpz_t());
  return q;
}

NormalFormN3 normal_form_n3(const AdamsFamily& family) {
  require_bound(family, 3, "normal_form_n3");
  if (!has_prime(family, 2)) throw WrongRegime("normal_form_n3 needs 2 in the prime set");
  const LinearSeq b = linear_coefficients(family);
  const Integer b2 = b.at(2);

  if (b2 == 0) {
    QuadraticClassN3 q;
    int sign = 0;
    for (long p : family.primes()) {
      Integer c = family.coeff(p, 2);
      if (sign == 0 && c != 0) sign = c > 0 ? 1 : -1;
      q.c[p] = c;
    }
    if (sign < 0)
      for (auto& [p, c] : q.c) c = -c;
    return q;
  }

  ClassDataN3 cls{b, class_gcd(b), condition_B_primes(b), 0};
  const Integer M = b2 * (b2 - 1);
  const Integer r = mod_nonneg(family.coeff(2, 2), M);
  const Integer cbar = 2 * r <= M ? r : M - r;
  const Integer num = cbar * cls.G;
  if (!divides(M, num)) throw InternalInconsistency("reduced c_2 is not a multiple of b_2(b_2-1)/G");
  cls.k = num / M;
  return cls;
}

AdamsFamily representative(const ClassDataN3& cls, int filtration, const std::optional<CoeffRule>& b_rule) {
  const RingShape shape = RingShape::univariate(3, filtration);
  std::vector<long> primes;
  for (const auto& [p, v] : cls.b) primes.push_back(p);

  if (b_rule) {
    // k (N^2 - N D) / (G D^2) for b = N / D.
    const PrimePoly& N = b_rule->numerator();
    const Integer& D = b_rule->denominator();
    PrimePoly num = prime_poly_add(prime_poly_mul(N, N), prime_poly_scale(N, -D));
    CoeffRule c(prime_poly_scale(num, cls.k), cls.G * D * D);
    return AdamsFamily::from_rules(shape, primes, {b_rule, c});
  }

  CoeffSpec lin{0, {1}, std::nullopt, {}};
  CoeffSpec quad{0, {2}, std::nullopt, {}};
  for (const auto& [p, v] : cls.b) {
    lin.overrides[p] = v;
    quad.overrides[p] = cls.k * v * (v - 1) / cls.G;
  }
  return AdamsFamily(shape, primes, {lin, quad});
}

AdamsFamily representative(const QuadraticClassN3& cls, int filtration) {
  std::vector<long> primes;
  CoeffSpec quad{0, {2}, std::nullopt, {}};
  for (const auto& [p, c] : cls.c) {
    primes.push_back(p);
    quad.overrides[p] = c;
  }
  return AdamsFamily(RingShape::univariate(3, filtration), primes, {quad});
}

AdamsFamily representative(const NormalFormN3& nf, int filtration) {
  return std::visit([filtration](const auto& c) { return representative(c, filtration); }, nf);
}

std::vector<ClassDataN3> enumerate_n3(const LinearSeq& b) {
  if (!condition_A(b)) throw ConditionAViolated("b_2 != 0, p | b_p and the 2-adic bound are required");
  const Integer G = class_gcd(b);
  const auto condB = condition_B_primes(b);
  const Integer P = odd_prime_product(condB);
  std::vector<ClassDataN3> out;
  for (Integer k = P; 2 * k <= G; k += 2 * P) out.push_back({b, G, condB, k});
  return out;
}

AdamsFamily case2_family(const ClassN4Case2& cls, std::vector<long> primes, int filtration) {
  const Integer k = cls.k;
  const Integer k2 = k * k;
  const Integer d = cls.d2;
  CoeffRule b = CoeffRule::parse("p^2");
  CoeffRule c(PrimePoly{0, 0, -k, 0, k}, 12);
  // 6 d_2 (p^6 - p^2) + k^2 (p^6 - 5 p^4 + 4 p^2), over 360.
  CoeffRule dd(PrimePoly{0, 0, -6 * d + 4 * k2, 0, -5 * k2, 0, 6 * d + k2}, 360);
  return AdamsFamily::from_rules(RingShape::univariate(4, filtration), std::move(primes), {b, c, dd});
}

std::vector<ClassN4Case2> enumerate_n4_case2() {
  std::vector<ClassN4Case2> out;
  for (int k : {1, 5})
    for (int d2 = 0; d2 < 60; d2 += 2) out.push_back({k, d2});
  return out;
}

Automorphism normalize_n4_case1(const AdamsFamily& family) {
  require_bound(family, 4, "normalize_n4_case1");
  if (!has_prime(family, 2) || !all_linear_equal(family, [](long p) { return Integer(p); }))
    throw WrongRegime("normalize_n4_case1 needs b_p = p with 2 active");
  const Integer c2 = family.coeff(2, 2);
  const Integer d2 = family.coeff(2, 3);
  const bool three = divides(Integer(3), c2);
  const long e = three ? 1 : -1;
  const Integer a2_num = c2 + e;
  const Integer a3_num = (c2 + e) * (c2 + 2 * e) + d2;
  if (!divides(Integer(2), a2_num) || !divides(Integer(6), a3_num))
    throw WrongRegime("c_2 odd, d_2 even and d_2 + c_2^2 = 1 mod 3 are required");
  const Automorphism sigma = three ? Automorphism(family.shape(), -1, {a2_num / 2, -(a3_num / 6)})
                                   : Automorphism(family.shape(), 1, {a2_num / 2, a3_num / 6});
  if (!verify_isomorphism(family, chern_family(family.shape(), family.primes()), sigma))
    throw InternalInconsistency("normalizing automorphism does not conjugate onto the Chern family");
  return sigma;
}

ClassN4Case2 normalize_n4_case2(const AdamsFamily& family) {
  require_bound(family, 4, "normalize_n4_case2");
  if (!has_prime(family, 2) || !all_linear_equal(family, [](long p) { return ipow(p, 2); }))
    throw WrongRegime("normalize_n4_case2 needs b_p = p^2 with 2 active");
  const AdamsFamily r3 = family.retruncate(3);
  const auto cls = std::get<ClassDataN3>(normal_form_n3(r3));
  const auto sigma3 = iso_witness_n3(r3, representative(cls, family.shape().filtration()));
  if (!sigma3) throw InternalInconsistency("no isomorphism onto the n = 3 normal form");
  if (cls.k != 1 && cls.k != 5) throw WrongRegime("the quadratic part does not extend to Z[x]/(x^4)");
  const AdamsFamily t = conjugate(family, sigma3->lift(4));
  return ClassN4Case2{static_cast<int>(cls.k.get_si()), mod_nonneg(t.coeff(2, 3), 60)};
}

ClassN4 classify_n4(const AdamsFamily& family) {
  require_bound(family, 4, "classify_n4");
  if (all_linear_equal(family, [](long p) { return Integer(p); })) return {N4Regime::Case1, std::nullopt};
  if (all_linear_equal(family, [](long p) { return ipow(p, 2); }))
    return {N4Regime::Case2, normalize_n4_case2(family)};
  if (in_case4_regime(family)) return {N4Regime::Case4, std::nullopt};
  return {N4Regime::General, std::nullopt};
}

std::optional<Automorphism> iso_witness_n3(const AdamsFamily& r, const AdamsFamily& s) {
  require_bound(r, 3, "iso_criterion_n3");
  require_bound(s, 3, "iso_criterion_n3");
  require_same_ring(r, s);
  if (!has_prime(r, 2)) throw WrongRegime("iso_criterion_n3 needs 2 in the prime set");
  for (long p : r.primes())
    if (r.coeff(p, 1) != s.coeff(p, 1)) return std::nullopt;

  const Integer b2 = r.coeff(2, 1);
  for (int u : {1, -1}) {
    if (b2 == 0) {
      bool ok = true;
      for (long p : r.primes()) ok = ok && r.coeff(p, 2) == u * s.coeff(p, 2);
      if (ok) return Automorphism(r.shape(), u);
      continue;
    }
    // c_2 - u c'_2 = a b_2 (b_2 - 1).
    const Integer M = b2 * (b2 - 1);
    const Integer diff = r.coeff(2, 2) - u * s.coeff(2, 2);
    if (divides(M, diff)) return Automorphism(r.shape(), u, {diff / M});
  }
  return std::nullopt;
}

bool iso_criterion_n3(const AdamsFamily& r, const AdamsFamily& s) { return iso_witness_n3(r, s).has_value(); }

std::optional<Automorphism> iso_witness_n4_case2(const AdamsFamily& r, const AdamsFamily& s) {
  require_same_ring(r, s);
  if (!in_case2_regime(r) || !in_case2_regime(s))
    throw WrongRegime("iso_criterion_n4_case2 needs b_p = p^2, c_p = k p^2(p^2-1)/12, k in {1, 5}");
  if (r.coeff(2, 2) != s.coeff(2, 2)) return std::nullopt;
  const Integer diff = r.coeff(2, 3) - s.coeff(2, 3);
  if (!divides(Integer(60), diff)) return std::nullopt;
  return Automorphism(r.shape(), 1, {0, diff / 60});
}

bool iso_criterion_n4_case2(const AdamsFamily& r, const AdamsFamily& s) {
  return iso_witness_n4_case2(r, s).has_value();
}

std::optional<Automorphism> iso_witness_n4_case4(const AdamsFamily& r, const AdamsFamily& s) {
  require_same_ring(r, s);
  if (!in_case4_regime(r) || !in_case4_regime(s)) throw WrongRegime("iso_criterion_n4_case4 needs b_p = 0");
  for (int u : {1, -1}) {
    bool ok = true;
    for (long p : r.primes()) ok = ok && r.coeff(p, 2) == u * s.coeff(p, 2);
    if (!ok) continue;
    // d'_p - d_p = 2 c_p alpha; alpha is read off the first prime with c_p != 0.
    std::optional<Integer> alpha;
    for (long p : r.primes()) {
      const Integer c = r.coeff(p, 2);
      const Integer diff = s.coeff(p, 3) - r.coeff(p, 3);
      if (c == 0) {
        ok = ok && diff == 0;
        continue;
      }
      if (!alpha) {
        if (!divides(2 * c, diff)) {
          ok = false;
          break;
        }
        alpha = diff / (2 * c);
      }
      ok = ok && diff == 2 * c * *alpha;
    }
    if (ok) return Automorphism(r.shape(), u, {alpha.value_or(0), 0});
  }
  return std::nullopt;
}

bool iso_criterion_n4_case4(const AdamsFamily& r, const AdamsFamily& s) {
  return iso_witness_n4_case4(r, s).has_value();
}

RealizabilityVerdict realizable_filter_n3(const NormalFormN3& cls) {
  RealizabilityVerdict v;
  const auto* data = std::get_if<ClassDataN3>(&cls);
  if (!data) {
    v.note = "b_p = 0 is not of the form p^r";
    return v;
  }
  v.r = uniform_power(data->b);
  if (!v.r || (*v.r != 1 && *v.r != 2 && *v.r != 4)) {
    v.note = "b_p = p^r with r in {1, 2, 4} is required";
    return v;
  }
  v.passes = true;
  if (*v.r == 1) {
    v.known_realized = data->k == 1;
    v.note = "CP^2";
  } else if (*v.r == 2) {
    v.known_realized = data->k == 1;
    v.note = v.known_realized ? "HP^2" : "b_p = p^2, not the quaternionic projective plane";
  } else {
    v.note = "OP^2 realizes one class with b_p = p^4; its k is not pinned down here";
  }
  return v;
}

RealizabilityVerdict realizable_filter_n4(const ClassN4& cls) {
  RealizabilityVerdict v;
  switch (cls.regime) {
    case N4Regime::Case1:
      v = {true, true, 1, "CP^3"};
      break;
    case N4Regime::Case2:
      v.passes = true;
      v.r = 2;
      v.known_realized = cls.case2 && cls.case2->k == 1 && cls.case2->d2 == 0;
      v.note = v.known_realized ? "HP^3" : "b_p = p^2, not the quaternionic projective space";
      break;
    default:
      v.note = "b_p = p^r with r in {1, 2} is required";
  }
  return v;
}

std::vector<Integer> linear_invariant(const AdamsFamily& family, long q) {
  const int m = family.shape().num_vars();
  std::vector<Integer> out;
  for (int j = 0; j < m; ++j) {
    Exponent e(static_cast<std::size_t>(m), 0);
    e[static_cast<std::size_t>(j)] = 1;
    out.push_back(family.psi(q, j).coefficient(e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lambdalab
