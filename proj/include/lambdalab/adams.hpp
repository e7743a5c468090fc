#pragma once

/**
 * @file adams.hpp
 * @brief Prime-indexed Adams operation families on truncated rings.
 *
 * A family assigns to every prime p of a finite active prime set and every
 * generator x_i a polynomial psi^p(x_i) without constant term. Coefficients
 * come from per-monomial specs: a rule in p (integer polynomial over a
 * positive denominator) and/or explicit per-prime overrides, overrides
 * winning. All psi^p(x_i) are materialized at construction.
 *
 * Torsionfree lambda-ring structures correspond to families that pass
 * validate(): psi^p psi^q = psi^q psi^p on generators, and
 * psi^p(x_i) == x_i^p (mod p).
 */

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lambdalab/automorphism.hpp"
#include "lambdalab/coeff_rule.hpp"
#include "lambdalab/truncpoly.hpp"

namespace lambdalab {

struct CoeffSpec {
  int var = 0;
  Exponent monomial;
  std::optional<CoeffRule> rule;
  std::map<long, Integer> overrides;

  bool operator==(const CoeffSpec&) const = default;
};

class AdamsFamily {
 public:
  /// Throws PrimeOutOfSet (non-prime or override for a prime outside the
  /// set), NonIntegralRule, NonzeroConstantTerm, ExponentOutOfRange.
  AdamsFamily(RingShape shape, std::vector<long> primes, std::vector<CoeffSpec> specs);

  /// Explicit polynomials psi[p][i] = psi^p(x_i), stored as overrides.
  static AdamsFamily from_polys(const RingShape& shape, const std::map<long, std::vector<TruncPoly>>& psi);

  /// Univariate shorthand: one rule per degree 1, 2, ... (nullopt = 0).
  static AdamsFamily from_rules(const RingShape& shape, std::vector<long> primes,
                                const std::vector<std::optional<CoeffRule>>& rules_by_degree);

  const RingShape& shape() const { return shape_; }
  const std::vector<long>& primes() const { return primes_; }
  const std::vector<CoeffSpec>& specs() const { return specs_; }
  bool has_prime(long p) const { return table_.count(p) != 0; }

  /// psi^p(x_var). Throws PrimeOutOfSet.
  const TruncPoly& psi(long p, int var = 0) const;
  /// psi^p on all generators.
  const std::vector<TruncPoly>& psi_all(long p) const;
  /// Univariate shorthand: coefficient of x^degree in psi^p(x).
  Integer coeff(long p, int degree) const { return psi(p).coefficient(degree); }

  /// The same family with every polynomial truncated to Z[x]/(x^r).
  AdamsFamily retruncate(int r) const;

  /// Same polynomials for every prime and generator.
  bool same_operations(const AdamsFamily& o) const { return shape_ == o.shape_ && table_ == o.table_; }

 private:
  RingShape shape_;
  std::vector<long> primes_;
  std::vector<CoeffSpec> specs_;
  std::map<long, std::vector<TruncPoly>> table_;
};

const TruncPoly& eval_psi(const AdamsFamily& family, long p, int var = 0);

/// psi(poly) for the ring endomorphism with psi(x_i) = images[i].
TruncPoly apply_endomorphism(const std::vector<TruncPoly>& images, const TruncPoly& poly);

struct CommuteFailure {
  long p = 0;
  long q = 0;
  int var = 0;
  Exponent monomial;
};

struct FrobeniusFailure {
  long p = 0;
  int var = 0;
  Exponent monomial;
};

struct ValidationReport {
  std::vector<long> primes;
  std::vector<CommuteFailure> commute_failures;
  std::vector<FrobeniusFailure> frobenius_failures;
  /// Set when the univariate closed-form criteria were also evaluated.
  bool closed_form_checked = false;

  bool ok() const { return commute_failures.empty() && frobenius_failures.empty(); }
};

std::optional<CommuteFailure> check_commute(const AdamsFamily& family, long p, long q);
std::optional<FrobeniusFailure> check_frobenius(const AdamsFamily& family, long p);

/// Frobenius for every prime, commutation for every unordered pair. On
/// Z[x]/(x^3) and Z[x]/(x^4) the coefficient criteria are evaluated as
/// well, and any disagreement throws InternalInconsistency.
ValidationReport validate(const AdamsFamily& family);

/// Coefficient-level criteria on Z[x]/(x^3), Z[x]/(x^4): Frobenius for p,
/// and commutation for (p, q). Used by validate() as an independent route.
bool closed_form_frobenius(const AdamsFamily& family, long p);
bool closed_form_commute(const AdamsFamily& family, long p, long q);

/// psi^k on all generators through the prime factorization of k (psi^1 =
/// identity). Throws UncoveredPrimeFactor.
std::vector<TruncPoly> psi_composite(const AdamsFamily& family, long k);

/// sigma^{-1} o psi^p o sigma for every prime, as explicit overrides.
AdamsFamily conjugate(const AdamsFamily& family, const Automorphism& sigma);

/// psi^p(x_i) = (1+x_i)^{b_{p,i}} - 1 for p >= N and finite r_i, else
/// (1+x_i)^p - 1, where N is the largest finite truncation. `b` must give
/// every (p >= N, finite i) of the prime set; entries must lie in pZ, be
/// >= r_i, and differ from p. Throws ConstraintViolation.
AdamsFamily construct_existence_family(const RingShape& shape, const std::map<std::pair<long, int>, Integer>& b,
                                       std::vector<long> primes);

/// The Chern family psi^p(x) = (1+x)^p - 1.
AdamsFamily chern_family(const RingShape& shape, std::vector<long> primes);

}  // namespace lambdalab
