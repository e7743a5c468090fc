#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lambdalab/truncpoly.hpp"

namespace lambdalab {

/// Integer polynomial in the prime p; coefficient i multiplies p^i.
using PrimePoly = std::vector<Integer>;

PrimePoly prime_poly_add(const PrimePoly& a, const PrimePoly& b);
PrimePoly prime_poly_mul(const PrimePoly& a, const PrimePoly& b);
PrimePoly prime_poly_scale(const PrimePoly& a, const Integer& c);
Integer prime_poly_eval(const PrimePoly& a, long p);

/// Parse an expression in p: integers, p, + - * ^ and parentheses; a number
/// directly followed by p or '(' multiplies ("2p", "3(p-1)").
PrimePoly parse_prime_poly(std::string_view text);

/// Canonical text: descending powers, e.g. "p^4 - p^2", "2*p + 1".
std::string format_prime_poly(const PrimePoly& a);

/// numerator(p) / denominator, required to be an integer at every prime
/// where it is evaluated.
class CoeffRule {
 public:
  CoeffRule(PrimePoly numerator, Integer denominator = 1);

  static CoeffRule parse(std::string_view numerator, const Integer& denominator = 1);
  static CoeffRule constant(const Integer& c) { return CoeffRule(PrimePoly{c}); }

  const PrimePoly& numerator() const { return numerator_; }
  const Integer& denominator() const { return denominator_; }

  bool integral_at(long p) const;
  /// Throws NonIntegralRule when the division leaves a remainder.
  Integer eval(long p) const;

  std::string numerator_string() const { return format_prime_poly(numerator_); }

  bool operator==(const CoeffRule&) const = default;

 private:
  PrimePoly numerator_;
  Integer denominator_;
};

}  // namespace lambdalab
