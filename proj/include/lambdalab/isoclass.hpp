#pragma once

/**
 * @file isoclass.hpp
 * @brief Isomorphism, normal forms and class counts of filtered lambda-ring
 * structures on Z[x]/(x^n), described through their Adams operations.
 *
 * Direction convention: an isomorphism sigma : R -> S satisfies
 *
 *     compose(psi_R^p, sigma) == compose(sigma, psi_S^p)   for every p,
 *
 * equivalently psi_S^p = sigma^{-1} o psi_R^p o sigma, so that
 * conjugate(R, sigma) is isomorphic to R through sigma.
 *
 * Every statement quantified over "all primes" is evaluated over the
 * family's active prime set.
 */

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lambdalab/adams.hpp"
#include "lambdalab/automorphism.hpp"
#include "lambdalab/primes.hpp"

namespace lambdalab {

/// Linear coefficients b_p over the active primes.
using LinearSeq = std::map<long, Integer>;

LinearSeq linear_sequence(const CoeffRule& rule, const std::vector<long>& primes);
LinearSeq linear_coefficients(const AdamsFamily& family);

// -- n = 2 -------------------------------------------------------------------

/// The sequence (b_p) of psi^p(x) = b_p x; a complete invariant on Z[x]/(x^2).
LinearSeq normal_form_n2(const AdamsFamily& family);
/// k >= 1 with b_p = p^k for every active p, if one exists.
std::optional<int> uniform_power(const LinearSeq& b);
bool realizable_n2(const LinearSeq& b);

// -- n = 3 -------------------------------------------------------------------

bool condition_A(const LinearSeq& b);
/// Odd p with b_p != 0 and theta_p(b_p) = min{theta_p(b_q(b_q-1)) : b_q != 0}.
std::vector<long> condition_B_primes(const LinearSeq& b);
/// G = gcd(b_p(b_p - 1)) over the active primes.
Integer class_gcd(const LinearSeq& b);
/// ceil(G / (4 p_1 ... p_n)). Throws ConditionAViolated.
Integer count_n3(const LinearSeq& b);

/// S((b_p), k): psi^p(x) = b_p x + k b_p (b_p - 1)/G x^2.
struct ClassDataN3 {
  LinearSeq b;
  Integer G;
  std::vector<long> condB_primes;
  Integer k;

  bool operator==(const ClassDataN3&) const = default;
};

/// S((c_p)): psi^p(x) = c_p x^2, sign normalized so that c_2 > 0.
struct QuadraticClassN3 {
  std::map<long, Integer> c;

  bool operator==(const QuadraticClassN3&) const = default;
};

using NormalFormN3 = std::variant<QuadraticClassN3, ClassDataN3>;

NormalFormN3 normal_form_n3(const AdamsFamily& family);

/// Canonical family of a class on Z[x]/(x^3). When `b_rule` is given the
/// coefficients are emitted as rules in p instead of per-prime overrides.
AdamsFamily representative(const ClassDataN3& cls, int filtration = 1,
                           const std::optional<CoeffRule>& b_rule = std::nullopt);
AdamsFamily representative(const QuadraticClassN3& cls, int filtration = 1);
AdamsFamily representative(const NormalFormN3& nf, int filtration = 1);

/// All k: odd, 1 <= k <= G/2, k = 0 mod p_1...p_n. Throws ConditionAViolated.
std::vector<ClassDataN3> enumerate_n3(const LinearSeq& b);

// -- n = 4 -------------------------------------------------------------------

/// S(k, d_2) with b_p = p^2, c_p = k p^2 (p^2 - 1)/12 and
/// d_p = p^2 (p^4 - 1) d_2/60 + k^2 p^2 (p^2 - 1)(p^2 - 4)/360.
struct ClassN4Case2 {
  int k = 1;
  Integer d2 = 0;

  bool operator==(const ClassN4Case2&) const = default;
};

AdamsFamily case2_family(const ClassN4Case2& cls, std::vector<long> primes, int filtration = 1);
/// The 60 classes: k in {1, 5}, d_2 in {0, 2, ..., 58}.
std::vector<ClassN4Case2> enumerate_n4_case2();

/// sigma : R -> Chern for a family with b_p = p, by the explicit formula in
/// c_2 and d_2; the result is verified by composition. Throws WrongRegime.
Automorphism normalize_n4_case1(const AdamsFamily& family);
/// Which S(k, d_2) a family with b_p = p^2 is isomorphic to. Throws WrongRegime.
ClassN4Case2 normalize_n4_case2(const AdamsFamily& family);

enum class N4Regime { Case1, Case2, Case4, General };

struct ClassN4 {
  N4Regime regime = N4Regime::General;
  std::optional<ClassN4Case2> case2;
};

ClassN4 classify_n4(const AdamsFamily& family);

// -- closed-form isomorphism criteria ----------------------------------------

/// On Z[x]/(x^3). Throws WrongRegime.
bool iso_criterion_n3(const AdamsFamily& r, const AdamsFamily& s);
/// Both families of the S(k, d_2) form with d_2 even: k = k' and d_2 = d_2' mod 60.
bool iso_criterion_n4_case2(const AdamsFamily& r, const AdamsFamily& s);
/// b_p = 0: c = u c' and d'_p = d_p + 2 c_p alpha for one integer alpha.
bool iso_criterion_n4_case4(const AdamsFamily& r, const AdamsFamily& s);

/// The isomorphism the criteria construct, when they hold.
std::optional<Automorphism> iso_witness_n3(const AdamsFamily& r, const AdamsFamily& s);
std::optional<Automorphism> iso_witness_n4_case2(const AdamsFamily& r, const AdamsFamily& s);
std::optional<Automorphism> iso_witness_n4_case4(const AdamsFamily& r, const AdamsFamily& s);

// -- solver ------------------------------------------------------------------

struct Obstruction {
  int degree = 0;
  long prime = 0;
  int u = 0;  // 0 when the obstruction holds for both signs
  std::string congruence;
};

enum class Verdict { Isomorphic, NotIsomorphic, Unknown };

struct IsoResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Automorphism> sigma;
  std::vector<Obstruction> witnesses;
  std::vector<long> primes_checked;
  int search_bound = 0;
  /// "criterion:n3", "criterion:n4-case2", "criterion:n4-case4" or "solver".
  std::string method;
};

inline constexpr int kDefaultSearchBound = 8;

/// compose(psi_R^p, sigma) == compose(sigma, psi_S^p) for every active p.
bool verify_isomorphism(const AdamsFamily& r, const AdamsFamily& s, const Automorphism& sigma);

/// Degree-by-degree solution of the commutation equations. Free parameters
/// are searched in [-search_bound, search_bound]; running out yields
/// Unknown, never NotIsomorphic.
IsoResult iso_search(const AdamsFamily& r, const AdamsFamily& s, int search_bound = kDefaultSearchBound);

/// iso_search, answered by the closed-form criteria where one applies and
/// cross-checked against them (disagreement throws InternalInconsistency).
IsoResult iso_solve(const AdamsFamily& r, const AdamsFamily& s, int search_bound = kDefaultSearchBound);

// -- extensions --------------------------------------------------------------

/// psi^p(x) = a_{p,1} x + ... + a_{p,n-2} x^{n-2} (mod x^{n-1}).
struct ExtensionPrefix {
  int n = 3;
  std::map<long, std::vector<Integer>> a;
};

/// Read the prefix of a family on Z[x]/(x^m), m >= n-1.
ExtensionPrefix prefix_of(const AdamsFamily& family, int n);

/// min |a_{p,1}^{n-1} - a_{p,1}|. Throws ZeroLinearCoefficient.
Integer extension_bound(const ExtensionPrefix& prefix);

/// Representatives of the isomorphism classes of valid families on
/// Z[x]/(x^n) extending `base` (a family on Z[x]/(x^{n-1}) with b_p != 0).
std::vector<AdamsFamily> enumerate_extensions(const AdamsFamily& base, int search_bound = kDefaultSearchBound);

// -- conjugated extensions ---------------------------------------------------

struct ConjcReport {
  int n = 0;
  std::vector<long> primes;
  /// Primes whose Frobenius congruence fails on the conjugated extension.
  std::vector<long> high_failures;  // p >= n
  std::vector<long> low_failures;   // p < n
  bool high_ok() const { return high_failures.empty(); }
  bool low_ok() const { return low_failures.empty(); }
  bool ok() const { return high_ok() && low_ok(); }
  /// n = 6 only: [x^6] psi^2 of the conjugated extension mod 2, and the
  /// parity of the x^3 coefficient of sigma.
  std::optional<int> x6_coeff_mod2;
  std::optional<int> b3_parity;
};

/// Conjugate R~ (on Z[x]/(x^{n+1}), reducing to R) by sigma : R -> S and
/// test the Frobenius congruence prime by prime. Throws PrefixMismatch, and
/// InvalidArgument when sigma is not an isomorphism R -> S.
ConjcReport conjc_check(const AdamsFamily& r, const AdamsFamily& s, const Automorphism& sigma,
                        const AdamsFamily& r_tilde);

// -- realizability -----------------------------------------------------------

struct RealizabilityVerdict {
  bool passes = false;
  bool known_realized = false;
  std::optional<int> r;  // b_p = p^r
  std::string note;
};

RealizabilityVerdict realizable_filter_n3(const NormalFormN3& cls);
RealizabilityVerdict realizable_filter_n4(const ClassN4& cls);

/// Multiset {b_{q,j}}: the coefficient of x_j in psi^q(x_j), sorted.
std::vector<Integer> linear_invariant(const AdamsFamily& family, long q);

}  // namespace lambdalab
