#include "lambdalab/automorphism.hpp"

#include "lambdalab/error.hpp"

namespace lambdalab {

Automorphism::Automorphism(RingShape shape, int u, std::vector<Integer> higher)
    : shape_(std::move(shape)), u_(u), higher_(std::move(higher)) {
  if (!shape_.is_univariate()) throw ArityMismatch("automorphisms are defined on Z[x]/(x^n)");
  if (u_ != 1 && u_ != -1) throw NotAUnit("u must be +-1, got " + std::to_string(u_));
  higher_.resize(static_cast<std::size_t>(std::max(0, shape_.bound(0) - 2)));
}

Automorphism Automorphism::from_poly(const TruncPoly& sigma) {
  if (sigma.constant_term() != 0) throw NonzeroConstantTerm(sigma.to_string());
  const int n = sigma.shape().bound(0);
  Integer lin = sigma.coefficient(1);
  if (lin != 1 && lin != -1) throw NotAUnit("linear coefficient " + lin.get_str());
  std::vector<Integer> higher;
  for (int k = 2; k < n; ++k) higher.push_back(sigma.coefficient(k));
  return Automorphism(sigma.shape(), static_cast<int>(lin.get_si()), std::move(higher));
}

Integer Automorphism::coeff(int degree) const {
  if (degree == 1) return u_;
  if (degree < 2 || degree - 2 >= static_cast<int>(higher_.size())) return 0;
  return higher_[static_cast<std::size_t>(degree - 2)];
}

TruncPoly Automorphism::as_poly() const {
  std::vector<Integer> c(static_cast<std::size_t>(shape_.bound(0)));
  c[1] = u_;
  for (std::size_t i = 0; i < higher_.size(); ++i) c[i + 2] = higher_[i];
  return TruncPoly::univariate(shape_, c);
}

Automorphism Automorphism::inverse() const { return from_poly(comp_inverse(as_poly())); }

Automorphism Automorphism::lift(int r) const {
  return Automorphism(shape_.with_truncation(r), u_, higher_);
}

}  // namespace lambdalab
