#include "lambdalab/adams.hpp"

#include <algorithm>
#include <set>

#include "lambdalab/error.hpp"
#include "lambdalab/primes.hpp"

namespace lambdalab {

namespace {

bool is_constant_monomial(const Exponent& e) {
  return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

Integer binomial(const Integer& n, unsigned long k) {
  Integer r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

// C(p, j) = p (p-1) ... (p-j+1) / j! as a rule in p.
CoeffRule binomial_rule(int j) {
  PrimePoly num{1};
  Integer fact = 1;
  for (int i = 0; i < j; ++i) {
    num = prime_poly_mul(num, PrimePoly{Integer(-i), 1});
    fact *= (i + 1);
  }
  return CoeffRule(num, fact);
}

Exponent unit_exponent(int num_vars, int var, int degree) {
  Exponent e(static_cast<std::size_t>(num_vars), 0);
  e[static_cast<std::size_t>(var)] = degree;
  return e;
}

}  // namespace

AdamsFamily::AdamsFamily(RingShape shape, std::vector<long> primes, std::vector<CoeffSpec> specs)
    : shape_(std::move(shape)), primes_(std::move(primes)), specs_(std::move(specs)) {
  std::sort(primes_.begin(), primes_.end());
  primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
  if (primes_.empty()) throw PrimeOutOfSet("a family needs at least one prime");
  for (long p : primes_)
    if (!is_prime(p)) throw PrimeOutOfSet(std::to_string(p) + " is not prime");

  const int m = shape_.num_vars();
  for (const auto& s : specs_) {
    if (s.var < 0 || s.var >= m) throw ExponentOutOfRange("spec for missing variable " + std::to_string(s.var));
    if (!shape_.contains(s.monomial)) throw ExponentOutOfRange("spec monomial outside the ring's truncation");
    for (const auto& [p, v] : s.overrides)
      if (!std::binary_search(primes_.begin(), primes_.end(), p))
        throw PrimeOutOfSet("override for prime " + std::to_string(p) + " outside the active set");
  }

  for (long p : primes_) {
    std::vector<TruncPoly::Terms> terms(static_cast<std::size_t>(m));
    for (const auto& s : specs_) {
      Integer v;
      if (auto it = s.overrides.find(p); it != s.overrides.end()) v = it->second;
      else if (s.rule) v = s.rule->eval(p);
      else continue;
      if (v == 0) continue;
      if (is_constant_monomial(s.monomial))
        throw NonzeroConstantTerm("psi^" + std::to_string(p) + "(x" + std::to_string(s.var + 1) + ")");
      terms[static_cast<std::size_t>(s.var)][s.monomial] += v;
    }
    std::vector<TruncPoly> polys;
    for (auto& t : terms) polys.emplace_back(shape_, std::move(t));
    table_.emplace(p, std::move(polys));
  }
}

AdamsFamily AdamsFamily::from_polys(const RingShape& shape, const std::map<long, std::vector<TruncPoly>>& psi) {
  std::vector<long> primes;
  std::map<std::pair<int, Exponent>, std::map<long, Integer>> values;
  for (const auto& [p, polys] : psi) {
    primes.push_back(p);
    if (static_cast<int>(polys.size()) != shape.num_vars())
      throw ArityMismatch("one polynomial per generator is required");
    for (int i = 0; i < shape.num_vars(); ++i) {
      const auto& f = polys[static_cast<std::size_t>(i)];
      if (!(f.shape() == shape)) throw ShapeMismatch("psi polynomial in a different ring");
      for (const auto& [e, c] : f.terms()) values[{i, e}][p] = c;
    }
  }
  std::vector<CoeffSpec> specs;
  for (auto& [key, ov] : values) specs.push_back(CoeffSpec{key.first, key.second, std::nullopt, std::move(ov)});
  return AdamsFamily(shape, std::move(primes), std::move(specs));
}

AdamsFamily AdamsFamily::from_rules(const RingShape& shape, std::vector<long> primes,
                                    const std::vector<std::optional<CoeffRule>>& rules_by_degree) {
  if (!shape.is_univariate()) throw ArityMismatch("from_rules builds univariate families");
  std::vector<CoeffSpec> specs;
  for (std::size_t d = 0; d < rules_by_degree.size(); ++d)
    if (rules_by_degree[d]) specs.push_back(CoeffSpec{0, Exponent{static_cast<int>(d + 1)}, rules_by_degree[d], {}});
  return AdamsFamily(shape, std::move(primes), std::move(specs));
}

const TruncPoly& AdamsFamily::psi(long p, int var) const { return psi_all(p).at(static_cast<std::size_t>(var)); }

const std::vector<TruncPoly>& AdamsFamily::psi_all(long p) const {
  auto it = table_.find(p);
  if (it == table_.end()) throw PrimeOutOfSet("prime " + std::to_string(p) + " is not in the active set");
  return it->second;
}

AdamsFamily AdamsFamily::retruncate(int r) const {
  RingShape target = shape_.with_truncation(r);
  std::vector<CoeffSpec> specs;
  for (const auto& s : specs_)
    if (target.contains(s.monomial)) specs.push_back(s);
  return AdamsFamily(target, primes_, std::move(specs));
}

const TruncPoly& eval_psi(const AdamsFamily& family, long p, int var) { return family.psi(p, var); }

TruncPoly apply_endomorphism(const std::vector<TruncPoly>& images, const TruncPoly& poly) {
  return compose(poly, std::span<const TruncPoly>(images));
}

std::optional<CommuteFailure> check_commute(const AdamsFamily& family, long p, long q) {
  const auto& psi_p = family.psi_all(p);
  const auto& psi_q = family.psi_all(q);
  if (p == q) return std::nullopt;
  for (int i = 0; i < family.shape().num_vars(); ++i) {
    TruncPoly pq = apply_endomorphism(psi_p, psi_q[static_cast<std::size_t>(i)]);
    TruncPoly qp = apply_endomorphism(psi_q, psi_p[static_cast<std::size_t>(i)]);
    TruncPoly diff = pq - qp;
    if (!diff.is_zero()) return CommuteFailure{p, q, i, diff.terms().begin()->first};
  }
  return std::nullopt;
}

std::optional<FrobeniusFailure> check_frobenius(const AdamsFamily& family, long p) {
  const auto& psi_p = family.psi_all(p);
  for (int i = 0; i < family.shape().num_vars(); ++i) {
    TruncPoly x = TruncPoly::variable(family.shape(), i);
    TruncPoly diff = reduce_mod(psi_p[static_cast<std::size_t>(i)] - x.pow(static_cast<unsigned long>(p)), p);
    if (!diff.is_zero()) return FrobeniusFailure{p, i, diff.terms().begin()->first};
  }
  return std::nullopt;
}

namespace {

bool closed_form_applies(const AdamsFamily& family) {
  const auto& s = family.shape();
  return s.is_univariate() && !s.unbounded(0) && (s.bound(0) == 3 || s.bound(0) == 4);
}

bool divisible(const Integer& a, long m) { return mpz_divisible_ui_p(a.get_mpz_t(), static_cast<unsigned long>(m)) != 0; }

}  // namespace

bool closed_form_frobenius(const AdamsFamily& family, long p) {
  if (!closed_form_applies(family)) throw InvalidArgument("closed forms cover Z[x]/(x^3) and Z[x]/(x^4) only");
  const Integer b = family.coeff(p, 1);
  const Integer c = family.coeff(p, 2);
  // b_p = 0 (mod p); c_2 odd, c_p = 0 (mod p) for p > 2.
  if (!divisible(b, p)) return false;
  if (p == 2 ? divisible(c, 2) : !divisible(c, p)) return false;
  if (family.shape().bound(0) == 4) {
    // d_p = 1 (mod 3) if p = 3, else 0 (mod p).
    const Integer d = family.coeff(p, 3);
    if (p == 3) {
      Integer r = d - 1;
      if (!divisible(r, 3)) return false;
    } else if (!divisible(d, p)) {
      return false;
    }
  }
  return true;
}

bool closed_form_commute(const AdamsFamily& family, long p, long q) {
  if (!closed_form_applies(family)) throw InvalidArgument("closed forms cover Z[x]/(x^3) and Z[x]/(x^4) only");
  const Integer bp = family.coeff(p, 1), bq = family.coeff(q, 1);
  const Integer cp = family.coeff(p, 2), cq = family.coeff(q, 2);
  // (b_q^2 - b_q) c_p = (b_p^2 - b_p) c_q
  if ((bq * bq - bq) * cp != (bp * bp - bp) * cq) return false;
  if (family.shape().bound(0) == 4) {
    const Integer dp = family.coeff(p, 3), dq = family.coeff(q, 3);
    // (b_q^3 - b_q) d_p = (b_p^3 - b_p) d_q + 2 c_p c_q (b_p - b_q)
    if ((bq * bq * bq - bq) * dp != (bp * bp * bp - bp) * dq + 2 * cp * cq * (bp - bq)) return false;
  }
  return true;
}

ValidationReport validate(const AdamsFamily& family) {
  ValidationReport report;
  report.primes = family.primes();
  const bool closed = closed_form_applies(family);
  report.closed_form_checked = closed;
  const auto& primes = family.primes();
  for (long p : primes) {
    auto f = check_frobenius(family, p);
    if (closed && closed_form_frobenius(family, p) != !f.has_value())
      throw InternalInconsistency("Frobenius verdicts disagree at p = " + std::to_string(p));
    if (f) report.frobenius_failures.push_back(*f);
  }
  for (std::size_t a = 0; a < primes.size(); ++a) {
    for (std::size_t b = a + 1; b < primes.size(); ++b) {
      auto f = check_commute(family, primes[a], primes[b]);
      if (closed && closed_form_commute(family, primes[a], primes[b]) != !f.has_value())
        throw InternalInconsistency("commutation verdicts disagree at (" + std::to_string(primes[a]) + ", " +
                                    std::to_string(primes[b]) + ")");
      if (f) report.commute_failures.push_back(*f);
    }
  }
  return report;
}

std::vector<TruncPoly> psi_composite(const AdamsFamily& family, long k) {
  if (k < 1) throw InvalidArgument("psi^k needs k >= 1");
  const RingShape& shape = family.shape();
  std::vector<TruncPoly> images;
  for (int i = 0; i < shape.num_vars(); ++i) images.push_back(TruncPoly::variable(shape, i));
  for (const auto& [p, mult] : factorize(k)) {
    if (!family.has_prime(p))
      throw UncoveredPrimeFactor("prime factor " + std::to_string(p) + " of " + std::to_string(k) +
                                 " is outside the active set");
    const auto& psi_p = family.psi_all(p);
    for (int r = 0; r < mult; ++r)
      for (auto& img : images) img = apply_endomorphism(psi_p, img);
  }
  return images;
}

AdamsFamily conjugate(const AdamsFamily& family, const Automorphism& sigma) {
  if (!family.shape().is_univariate()) throw ArityMismatch("conjugate needs a univariate family");
  if (!(sigma.shape() == family.shape())) throw ShapeMismatch("automorphism and family live in different rings");
  const TruncPoly s = sigma.as_poly();
  const TruncPoly s_inv = comp_inverse(s);
  std::map<long, std::vector<TruncPoly>> psi;
  for (long p : family.primes()) psi[p] = {compose(s_inv, compose(family.psi(p), s))};
  return AdamsFamily::from_polys(family.shape(), psi);
}

AdamsFamily construct_existence_family(const RingShape& shape, const std::map<std::pair<long, int>, Integer>& b,
                                       std::vector<long> primes) {
  const int m = shape.num_vars();
  int big_n = 0;
  for (int i = 0; i < m; ++i)
    if (!shape.unbounded(i)) big_n = std::max(big_n, shape.bound(i));
  if (big_n == 0) throw ConstraintViolation("at least one truncation must be finite");
  std::sort(primes.begin(), primes.end());

  auto needs_b = [&](long p, int i) { return p >= big_n && !shape.unbounded(i); };
  for (const auto& [key, v] : b) {
    const auto [p, i] = key;
    if (i < 0 || i >= m) throw ConstraintViolation("b given for missing variable " + std::to_string(i));
    if (!std::binary_search(primes.begin(), primes.end(), p))
      throw ConstraintViolation("b given for prime " + std::to_string(p) + " outside the active set");
    if (!needs_b(p, i))
      throw ConstraintViolation("b_{p,j} is only defined for p >= N and r_j finite; got p = " + std::to_string(p) +
                                ", j = " + std::to_string(i + 1));
    const std::string name = "b_{" + std::to_string(p) + "," + std::to_string(i + 1) + "} = " + v.get_str();
    if (!divisible(v, p)) throw ConstraintViolation(name + " violates b_{p,j} in pZ");
    if (v < shape.bound(i)) throw ConstraintViolation(name + " violates b_{p,j} >= r_j");
    if (v == p) throw ConstraintViolation(name + " violates b_{p,j} != p");
  }

  std::vector<CoeffSpec> specs;
  for (int i = 0; i < m; ++i) {
    for (int j = 1; j < shape.bound(i); ++j) {
      CoeffSpec s{i, unit_exponent(m, i, j), binomial_rule(j), {}};
      for (long p : primes) {
        if (!needs_b(p, i)) continue;
        auto it = b.find({p, i});
        if (it == b.end())
          throw ConstraintViolation("missing b_{" + std::to_string(p) + "," + std::to_string(i + 1) + "}");
        s.overrides[p] = binomial(it->second, static_cast<unsigned long>(j));
      }
      specs.push_back(std::move(s));
    }
  }
  return AdamsFamily(shape, std::move(primes), std::move(specs));
}

AdamsFamily chern_family(const RingShape& shape, std::vector<long> primes) {
  if (!shape.is_univariate()) throw ArityMismatch("chern_family builds univariate families");
  std::vector<std::optional<CoeffRule>> rules;
  for (int j = 1; j < shape.bound(0); ++j) rules.emplace_back(binomial_rule(j));
  return AdamsFamily::from_rules(shape, std::move(primes), rules);
}

}  // namespace lambdalab
