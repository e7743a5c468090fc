#pragma once

// Symmetric functions and the universal lambda-ring polynomials.
//
// SymPoly is a plain multivariate integer polynomial over named variables.
// The universal polynomials are produced the slow, literal way: expand the
// defining product, then rewrite in elementary symmetric generators with
// Gauss's leading-monomial reduction (lex order on exponent vectors).

#include <map>
#include <span>
#include <string>
#include <vector>

#include "lambdalab/truncpoly.hpp"

namespace lambdalab {

class AdamsFamily;

class SymPoly {
 public:
  using Monomial = std::vector<int>;
  using Terms = std::map<Monomial, Integer>;

  explicit SymPoly(std::vector<std::string> vars);
  SymPoly(std::vector<std::string> vars, Terms terms);

  static SymPoly constant(std::vector<std::string> vars, const Integer& c);
  static SymPoly variable(std::vector<std::string> vars, int i);

  const std::vector<std::string>& vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  int num_vars() const { return static_cast<int>(vars_.size()); }
  bool is_zero() const { return terms_.empty(); }
  Integer coefficient(const Monomial& m) const;

  SymPoly operator-() const;
  SymPoly& operator+=(const SymPoly& g);
  SymPoly& operator-=(const SymPoly& g);
  friend SymPoly operator+(SymPoly f, const SymPoly& g) { return f += g; }
  friend SymPoly operator-(SymPoly f, const SymPoly& g) { return f -= g; }
  friend SymPoly operator*(const SymPoly& f, const SymPoly& g);
  friend SymPoly operator*(SymPoly f, const Integer& c);
  SymPoly pow(unsigned n) const;
  /// Multiply by the monomial x^m (coefficient 1).
  SymPoly shifted(const Monomial& m) const;

  bool operator==(const SymPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

  /// Invariance under every adjacent transposition of variables
  /// first .. first+count-1.
  bool is_symmetric_in(int first, int count) const;

  /// Substitute images[i] for variable i. All images share one variable list.
  SymPoly substitute(std::span<const SymPoly> images) const;

  Integer evaluate(std::span<const Integer> point) const;
  /// Evaluate inside a truncated ring (used for psi^k = Q_k(lambda^1..)).
  TruncPoly evaluate(std::span<const TruncPoly> point) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Integer& c);
  void check_same_vars(const SymPoly& g) const;

  std::vector<std::string> vars_;
  Terms terms_;
};

/// Variable names prefix1 .. prefixN.
std::vector<std::string> numbered_vars(const std::string& prefix, int n);

/// e_k(vars). Throws IndexOutOfRange unless 0 <= k <= |vars|.
SymPoly elementary_symmetric(const std::vector<std::string>& vars, int k);

/// Rewrite a symmetric polynomial in the elementary symmetric polynomials of
/// its variables. The result's variables are `generator_names` (one per
/// input variable; default e1..en). Throws NotSymmetric.
SymPoly to_elementary(const SymPoly& f, std::vector<std::string> generator_names = {});

/// Same, for f symmetric separately in consecutive blocks of variables.
/// `generator_names[b]` names the generators of block b.
SymPoly to_elementary_blocks(const SymPoly& f, const std::vector<int>& block_sizes,
                             const std::vector<std::vector<std::string>>& generator_names);

/// Inverse direction: substitute e_k(block vars) for every generator.
SymPoly expand_elementary(const SymPoly& g, const std::vector<int>& block_sizes,
                          const std::vector<std::vector<std::string>>& block_vars);

/// Limits on the universal polynomials that may be generated.
struct UniversalCap {
  int i = 4;
  int ij = 8;
};

/// Q_k(sigma1..sigmak): the k-th power sum in elementary symmetric terms.
SymPoly newton_Q(int k);

/// P_i(s1..si; sigma1..sigmai): coefficient of t^i in prod (1 + xi_m eta_n t).
SymPoly product_P(int i, const UniversalCap& cap = {});

/// P_{i,j}(s1..s_ij): coefficient of t^i in prod_{l1<..<lj} (1 + xi_l1..xi_lj t).
SymPoly composite_P(int i, int j, const UniversalCap& cap = {});

/// lambda^1(x), lambda^2(x), ... of one generator; lambdas[0] is lambda^1.
struct LambdaTable {
  RingShape ring;
  int var = 0;
  std::vector<TruncPoly> lambdas;
};

/// Solve the Newton formula for lambda^n(x_var), n = 1..upto. Every division
/// by n is checked; a remainder raises NonIntegralLambda.
LambdaTable lambda_from_adams(const AdamsFamily& family, int upto, int var = 0);

/// psi^k(x) = Q_k(lambda^1(x), ..., lambda^k(x)) for k = 1..upto.
std::vector<TruncPoly> adams_from_lambda(const LambdaTable& table, int upto);

}  // namespace lambdalab
