#pragma once

/**
 * @file truncpoly.hpp
 * @brief Exact arithmetic in Z[x_1,...,x_m]/(x_1^{r_1},...,x_m^{r_m}).
 *
 * Coefficients are GMP integers, storage is a sparse map from exponent
 * vectors to nonzero coefficients. Every exponent stored is strictly below
 * the truncation of its variable, so equality of two polynomials is plain
 * map equality.
 *
 * Composition convention, used everywhere in the library:
 *
 *     compose(f, {g_1, ..., g_m}) = f(g_1(x), ..., g_m(x))
 *
 * i.e. the outer polynomial is the first argument.
 */

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lambdalab {

using Integer = mpz_class;
using Exponent = std::vector<int>;

/// Truncation exponent of one variable. An unbounded variable (x^inf = 0)
/// is carried with an explicit working cap: arithmetic is exact for all
/// exponents below the cap.
struct Truncation {
  int bound = 2;
  bool unbounded = false;

  static Truncation finite(int r) { return {r, false}; }
  static Truncation capped(int cap) { return {cap, true}; }

  bool operator==(const Truncation&) const = default;
};

class RingShape {
 public:
  RingShape(std::vector<Truncation> truncations, int filtration = 1);

  /// Z[x]/(x^r) with |x| = filtration.
  static RingShape univariate(int r, int filtration = 1);

  int num_vars() const { return static_cast<int>(truncations_.size()); }
  const std::vector<Truncation>& truncations() const { return truncations_; }
  /// Exclusive exponent bound of variable i (r_i, or the cap).
  int bound(int i) const { return truncations_[static_cast<std::size_t>(i)].bound; }
  bool unbounded(int i) const { return truncations_[static_cast<std::size_t>(i)].unbounded; }
  int filtration() const { return filtration_; }

  bool is_univariate() const { return num_vars() == 1; }
  bool has_unbounded() const;
  bool contains(const Exponent& e) const;

  /// Same variables and filtration, truncation of a univariate ring replaced.
  RingShape with_truncation(int r) const;

  bool operator==(const RingShape&) const = default;

 private:
  std::vector<Truncation> truncations_;
  int filtration_;
};

class TruncPoly {
 public:
  using Terms = std::map<Exponent, Integer>;

  explicit TruncPoly(RingShape shape);
  /// Monomials at or above a truncation are zero in the quotient and are
  /// dropped; zero coefficients are dropped.
  TruncPoly(RingShape shape, Terms terms);

  static TruncPoly constant(const RingShape& shape, const Integer& c);
  static TruncPoly variable(const RingShape& shape, int var);
  static TruncPoly monomial(const RingShape& shape, Exponent e, const Integer& c);
  /// c[0] + c[1] x + c[2] x^2 + ... in a univariate shape.
  static TruncPoly univariate(const RingShape& shape, std::span<const Integer> coeffs);
  static TruncPoly univariate(const RingShape& shape, std::initializer_list<long> coeffs);

  const RingShape& shape() const { return shape_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Throws ExponentOutOfRange when e lies outside the shape.
  Integer coefficient(const Exponent& e) const;
  /// Univariate shorthand for coefficient({degree}).
  Integer coefficient(int degree) const;
  Integer constant_term() const;

  /// filtration * (least total degree of a nonzero monomial); nullopt is +inf.
  std::optional<long> filtration_valuation() const;
  /// Least total degree of a nonzero monomial; nullopt for zero.
  std::optional<int> valuation() const;
  /// Dense coefficient list c[0..r-1] of a univariate polynomial.
  std::vector<Integer> dense() const;

  /// Reinterpret in a shape with the same number of variables, dropping
  /// monomials outside it (reduction mod x^n, or lifting to a larger ring).
  TruncPoly retruncate(const RingShape& shape) const;

  TruncPoly operator-() const;
  TruncPoly& operator+=(const TruncPoly& g);
  TruncPoly& operator-=(const TruncPoly& g);
  TruncPoly& operator*=(const Integer& c);

  friend TruncPoly operator+(TruncPoly f, const TruncPoly& g) { return f += g; }
  friend TruncPoly operator-(TruncPoly f, const TruncPoly& g) { return f -= g; }
  friend TruncPoly operator*(const TruncPoly& f, const TruncPoly& g);
  friend TruncPoly operator*(TruncPoly f, const Integer& c) { return f *= c; }
  friend TruncPoly operator*(const Integer& c, TruncPoly f) { return f *= c; }

  TruncPoly pow(unsigned long n) const;

  bool operator==(const TruncPoly& o) const { return shape_ == o.shape_ && terms_ == o.terms_; }

  std::string to_string() const;

 private:
  void add_term(const Exponent& e, const Integer& c);
  void check_same_shape(const TruncPoly& g) const;

  RingShape shape_;
  Terms terms_;
};

TruncPoly add(const TruncPoly& f, const TruncPoly& g);
TruncPoly mul(const TruncPoly& f, const TruncPoly& g);

/// f(inner_1, ..., inner_m). Inner polynomials share one shape, which is the
/// shape of the result, and have zero constant term.
TruncPoly compose(const TruncPoly& outer, std::span<const TruncPoly> inner);
/// Univariate outer: outer(inner).
TruncPoly compose(const TruncPoly& outer, const TruncPoly& inner);

/// Compositional inverse of a univariate f = +-x + ...; compose(f, g) = x =
/// compose(g, f).
TruncPoly comp_inverse(const TruncPoly& f);

/// Every coefficient reduced into [0, m). The result is still a TruncPoly;
/// it is meant for congruence tests only.
TruncPoly reduce_mod(const TruncPoly& f, const Integer& m);

}  // namespace lambdalab
