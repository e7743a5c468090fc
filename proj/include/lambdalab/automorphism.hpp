#pragma once

#include <vector>

#include "lambdalab/truncpoly.hpp"

namespace lambdalab {

/// Filtered ring automorphism of Z[x]/(x^n): sigma(x) = u x + a_2 x^2 + ...
/// + a_{n-1} x^{n-1} with u = +-1.
class Automorphism {
 public:
  /// `higher` holds a_2, a_3, ...; it is padded with zeros, and entries at
  /// or above the truncation are ignored.
  Automorphism(RingShape shape, int u, std::vector<Integer> higher = {});

  static Automorphism identity(const RingShape& shape) { return Automorphism(shape, 1); }
  /// Throws NotAUnit / NonzeroConstantTerm.
  static Automorphism from_poly(const TruncPoly& sigma);

  const RingShape& shape() const { return shape_; }
  int u() const { return u_; }
  /// a_2 .. a_{n-1}, always n-2 entries.
  const std::vector<Integer>& higher() const { return higher_; }
  Integer coeff(int degree) const;

  TruncPoly as_poly() const;
  Automorphism inverse() const;
  /// Same coefficients viewed in Z[x]/(x^r).
  Automorphism lift(int r) const;

  bool operator==(const Automorphism&) const = default;

 private:
  RingShape shape_;
  int u_;
  std::vector<Integer> higher_;
};

}  // namespace lambdalab
