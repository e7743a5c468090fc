#include <algorithm>
#include <cstdlib>

#include "lambdalab/error.hpp"
#include "lambdalab/isoclass.hpp"

namespace lambdalab {

namespace {

int univariate_bound(const AdamsFamily& f) {
  if (!f.shape().is_univariate() || f.shape().unbounded(0))
    throw ArityMismatch("expected a family on Z[x]/(x^n) with finite n");
  return f.shape().bound(0);
}

void require_same_ring(const AdamsFamily& r, const AdamsFamily& s) {
  univariate_bound(r);
  if (!(r.shape() == s.shape())) throw ShapeMismatch("families live in different rings");
  if (r.primes() != s.primes()) throw PrimeOutOfSet("families have different active prime sets");
}

Integer ipow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

bool divides(const Integer& d, const Integer& n) { return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0; }

TruncPoly sigma_poly(const RingShape& shape, const std::vector<Integer>& coeffs) {
  return TruncPoly::univariate(shape, coeffs);
}

class Search {
 public:
  Search(const AdamsFamily& r, const AdamsFamily& s, int bound)
      : r_(r), s_(s), n_(r.shape().bound(0)), bound_(bound) {}

  // coeffs[j] is the x^j coefficient of sigma; degrees below k are fixed.
  bool solve(std::vector<Integer>& coeffs, int k, int u, bool branched) {
    if (k >= n_) return true;
    const TruncPoly sigma = sigma_poly(r_.shape(), coeffs);

    std::optional<Integer> forced;
    long forced_by = 0;
    for (long p : r_.primes()) {
      const Integer b = r_.coeff(p, 1);
      const Integer m = ipow(b, static_cast<unsigned long>(k)) - b;
      const Integer rhs = (compose(r_.psi(p), sigma) - compose(sigma, s_.psi(p))).coefficient(k);
      std::string fail;
      if (m == 0) {
        if (rhs != 0) fail = "0 * a_" + std::to_string(k) + " = " + rhs.get_str();
      } else if (!divides(m, rhs)) {
        fail = m.get_str() + " * a_" + std::to_string(k) + " = " + rhs.get_str() + " has no integer solution";
      } else if (forced && *forced != rhs / m) {
        fail = "a_" + std::to_string(k) + " = " + forced->get_str() + " from p = " + std::to_string(forced_by) +
               " but " + Integer(rhs / m).get_str() + " from p = " + std::to_string(p);
      } else if (!forced) {
        forced = rhs / m;
        forced_by = p;
      }
      if (!fail.empty()) {
        if (!branched) obstructions.push_back({k, p, u, fail});
        return false;
      }
    }

    if (forced) {
      coeffs[static_cast<std::size_t>(k)] = *forced;
      return solve(coeffs, k + 1, u, branched);
    }
    // Every multiplier vanishes: a_k does not enter degree k. At the top
    // degree it never enters at all.
    if (k == n_ - 1) {
      coeffs[static_cast<std::size_t>(k)] = 0;
      return true;
    }
    exhausted = true;
    for (int step = 0; step <= 2 * bound_; ++step) {
      const int a = (step % 2 == 0) ? -(step / 2) : (step + 1) / 2;
      coeffs[static_cast<std::size_t>(k)] = a;
      std::fill(coeffs.begin() + k + 1, coeffs.end(), Integer(0));
      if (solve(coeffs, k + 1, u, true)) return true;
    }
    coeffs[static_cast<std::size_t>(k)] = 0;
    return false;
  }

  std::vector<Obstruction> obstructions;
  bool exhausted = false;

 private:
  const AdamsFamily& r_;
  const AdamsFamily& s_;
  int n_;
  int bound_;
};

}  // namespace

bool verify_isomorphism(const AdamsFamily& r, const AdamsFamily& s, const Automorphism& sigma) {
  require_same_ring(r, s);
  if (!(sigma.shape() == r.shape())) throw ShapeMismatch("automorphism lives in a different ring");
  const TruncPoly sp = sigma.as_poly();
  for (long p : r.primes())
    if (!(compose(r.psi(p), sp) == compose(sp, s.psi(p)))) return false;
  return true;
}

IsoResult iso_search(const AdamsFamily& r, const AdamsFamily& s, int search_bound) {
  require_same_ring(r, s);
  if (search_bound < 0) throw InvalidArgument("search bound must be >= 0");
  IsoResult res;
  res.primes_checked = r.primes();
  res.search_bound = search_bound;
  res.method = "solver";

  for (long p : r.primes()) {
    if (r.coeff(p, 1) != s.coeff(p, 1)) {
      res.verdict = Verdict::NotIsomorphic;
      res.witnesses.push_back({1, p, 0, "b_p = " + r.coeff(p, 1).get_str() + " != " + s.coeff(p, 1).get_str()});
      return res;
    }
  }

  const int n = r.shape().bound(0);
  Search search(r, s, search_bound);
  for (int u : {1, -1}) {
    std::vector<Integer> coeffs(static_cast<std::size_t>(n), 0);
    if (n > 1) coeffs[1] = u;
    if (search.solve(coeffs, 2, u, false)) {
      Automorphism sigma = Automorphism::from_poly(sigma_poly(r.shape(), coeffs));
      if (!verify_isomorphism(r, s, sigma)) throw InternalInconsistency("solver produced a non-isomorphism");
      res.verdict = Verdict::Isomorphic;
      res.sigma = std::move(sigma);
      return res;
    }
  }
  res.verdict = search.exhausted ? Verdict::Unknown : Verdict::NotIsomorphic;
  res.witnesses = std::move(search.obstructions);
  return res;
}

IsoResult iso_solve(const AdamsFamily& r, const AdamsFamily& s, int search_bound) {
  require_same_ring(r, s);
  IsoResult raw = iso_search(r, s, search_bound);

  const int n = r.shape().bound(0);
  const bool has2 = std::binary_search(r.primes().begin(), r.primes().end(), 2L);
  std::optional<Automorphism> witness;
  std::string method;
  if (n == 3 && has2) {
    witness = iso_witness_n3(r, s);
    method = "criterion:n3";
  } else if (n == 4 && has2) {
    try {
      witness = iso_witness_n4_case2(r, s);
      method = "criterion:n4-case2";
    } catch (const WrongRegime&) {
      try {
        witness = iso_witness_n4_case4(r, s);
        method = "criterion:n4-case4";
      } catch (const WrongRegime&) {
      }
    }
  }
  if (method.empty()) return raw;

  const bool crit = witness.has_value();
  if ((raw.verdict == Verdict::Isomorphic && !crit) || (raw.verdict == Verdict::NotIsomorphic && crit))
    throw InternalInconsistency(method + " disagrees with the degree-by-degree solver");

  IsoResult res = raw;
  res.method = method;
  if (crit) {
    if (!verify_isomorphism(r, s, *witness))
      throw InternalInconsistency(method + " produced an automorphism that does not intertwine");
    res.verdict = Verdict::Isomorphic;
    if (!res.sigma) res.sigma = witness;
    res.witnesses.clear();
  } else {
    res.verdict = Verdict::NotIsomorphic;
    if (raw.verdict != Verdict::NotIsomorphic)
      res.witnesses = {{n - 1, 2, 0, "closed-form criterion fails at p = 2"}};
  }
  return res;
}

ExtensionPrefix prefix_of(const AdamsFamily& family, int n) {
  const int m = univariate_bound(family);
  if (n < 3) throw InvalidArgument("extensions start at n = 3");
  if (m < n - 1) throw InvalidArgument("family is too short for a prefix of length " + std::to_string(n - 2));
  ExtensionPrefix pre{n, {}};
  for (long p : family.primes())
    for (int j = 1; j <= n - 2; ++j) pre.a[p].push_back(family.coeff(p, j));
  return pre;
}

Integer extension_bound(const ExtensionPrefix& prefix) {
  if (prefix.n < 3) throw InvalidArgument("extensions start at n = 3");
  if (prefix.a.empty()) throw InvalidArgument("empty prefix");
  std::optional<Integer> best;
  for (const auto& [p, a] : prefix.a) {
    if (a.empty() || a[0] == 0) throw ZeroLinearCoefficient("a_{" + std::to_string(p) + ",1} = 0");
    Integer m = ipow(a[0], static_cast<unsigned long>(prefix.n - 1)) - a[0];
    m = abs(m);
    if (!best || m < *best) best = m;
  }
  return *best;
}

std::vector<AdamsFamily> enumerate_extensions(const AdamsFamily& base, int search_bound) {
  const int n = univariate_bound(base) + 1;
  const ExtensionPrefix pre = prefix_of(base, n);
  const Integer bound = extension_bound(pre);

  // The prime realizing the bound parametrizes the new top coefficient.
  long q = 0;
  for (const auto& [p, a] : pre.a)
    if (abs(ipow(a[0], static_cast<unsigned long>(n - 1)) - a[0]) == bound) {
      q = p;
      break;
    }
  const RingShape shape = base.shape().with_truncation(n);
  std::map<long, TruncPoly> lifted;
  for (long p : base.primes()) lifted.emplace(p, base.psi(p).retruncate(shape));
  const TruncPoly& g0 = lifted.at(q);
  const Integer bq = g0.coefficient(1);
  const Integer mq = ipow(bq, static_cast<unsigned long>(n - 1)) - bq;
  const TruncPoly top = TruncPoly::monomial(shape, {n - 1}, 1);

  std::vector<AdamsFamily> reps;
  for (Integer t = 0; t < bound; ++t) {
    std::map<long, std::vector<TruncPoly>> psi;
    bool integral = true;
    for (long p : base.primes()) {
      if (p == q) {
        psi[p] = {g0 + t * top};
        continue;
      }
      // [x^{n-1}] of psi^p psi^q - psi^q psi^p is affine in both top terms.
      const TruncPoly& f0 = lifted.at(p);
      const Integer bp = f0.coefficient(1);
      const Integer fg = (compose(f0, g0) - compose(g0, f0)).coefficient(n - 1);
      const Integer num = t * (ipow(bp, static_cast<unsigned long>(n - 1)) - bp) - fg;
      if (!divides(mq, num)) {
        integral = false;
        break;
      }
      psi[p] = {f0 + Integer(num / mq) * top};
    }
    if (!integral) continue;
    AdamsFamily cand = AdamsFamily::from_polys(shape, psi);
    if (!validate(cand).ok()) continue;
    bool fresh = true;
    for (const auto& rep : reps)
      if (iso_solve(cand, rep, search_bound).verdict == Verdict::Isomorphic) {
        fresh = false;
        break;
      }
    if (fresh) reps.push_back(std::move(cand));
  }
  return reps;
}

ConjcReport conjc_check(const AdamsFamily& r, const AdamsFamily& s, const Automorphism& sigma,
                        const AdamsFamily& r_tilde) {
  const int n = univariate_bound(r);
  if (univariate_bound(r_tilde) != n + 1) throw PrefixMismatch("R~ must live on Z[x]/(x^" + std::to_string(n + 1) + ")");
  if (r_tilde.primes() != r.primes()) throw PrefixMismatch("R~ and R have different prime sets");
  if (!r_tilde.retruncate(n).same_operations(r)) throw PrefixMismatch("R~ does not reduce to R");
  if (!verify_isomorphism(r, s, sigma)) throw InvalidArgument("sigma is not an isomorphism R -> S");

  const AdamsFamily s_tilde = conjugate(r_tilde, sigma.lift(n + 1));
  ConjcReport rep;
  rep.n = n;
  rep.primes = r.primes();
  for (long p : r.primes())
    if (check_frobenius(s_tilde, p)) (p >= n ? rep.high_failures : rep.low_failures).push_back(p);
  if (n == 6 && std::binary_search(r.primes().begin(), r.primes().end(), 2L)) {
    Integer c = s_tilde.coeff(2, 6);
    rep.x6_coeff_mod2 = mpz_odd_p(c.get_mpz_t()) ? 1 : 0;
    Integer b3 = sigma.coeff(3);
    rep.b3_parity = mpz_odd_p(b3.get_mpz_t()) ? 1 : 0;
  }
  return rep;
}

}  // namespace lambdalab
