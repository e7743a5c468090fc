#include "lambdalab/truncpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "lambdalab/error.hpp"

namespace lambdalab {

RingShape::RingShape(std::vector<Truncation> truncations, int filtration)
    : truncations_(std::move(truncations)), filtration_(filtration) {
  if (truncations_.empty()) throw InvalidShape("a ring needs at least one variable");
  if (filtration_ <= 0) throw InvalidShape("filtration degree must be positive");
  for (const auto& t : truncations_) {
    if (!t.unbounded && t.bound < 2)
      throw InvalidShape("finite truncation exponents must be >= 2, got " + std::to_string(t.bound));
    if (t.unbounded && t.bound < 2)
      throw InvalidShape("working cap of an unbounded variable must be >= 2");
  }
}

RingShape RingShape::univariate(int r, int filtration) {
  return RingShape({Truncation::finite(r)}, filtration);
}

bool RingShape::has_unbounded() const {
  return std::any_of(truncations_.begin(), truncations_.end(), [](const Truncation& t) { return t.unbounded; });
}

bool RingShape::contains(const Exponent& e) const {
  if (e.size() != truncations_.size()) return false;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] < 0 || e[i] >= truncations_[i].bound) return false;
  return true;
}

RingShape RingShape::with_truncation(int r) const {
  if (!is_univariate()) throw InvalidShape("with_truncation needs a univariate ring");
  return RingShape({Truncation::finite(r)}, filtration_);
}

// ---------------------------------------------------------------------------

TruncPoly::TruncPoly(RingShape shape) : shape_(std::move(shape)) {}

TruncPoly::TruncPoly(RingShape shape, Terms terms) : shape_(std::move(shape)) {
  for (auto& [e, c] : terms) {
    if (e.size() != static_cast<std::size_t>(shape_.num_vars()))
      throw ExponentOutOfRange("exponent vector has wrong length");
    if (c != 0 && shape_.contains(e)) terms_.emplace(e, std::move(c));
  }
}

TruncPoly TruncPoly::constant(const RingShape& shape, const Integer& c) {
  return monomial(shape, Exponent(static_cast<std::size_t>(shape.num_vars()), 0), c);
}

TruncPoly TruncPoly::variable(const RingShape& shape, int var) {
  if (var < 0 || var >= shape.num_vars()) throw ExponentOutOfRange("no variable " + std::to_string(var));
  Exponent e(static_cast<std::size_t>(shape.num_vars()), 0);
  e[static_cast<std::size_t>(var)] = 1;
  return monomial(shape, std::move(e), 1);
}

TruncPoly TruncPoly::monomial(const RingShape& shape, Exponent e, const Integer& c) {
  Terms t;
  t.emplace(std::move(e), c);
  return TruncPoly(shape, std::move(t));
}

TruncPoly TruncPoly::univariate(const RingShape& shape, std::span<const Integer> coeffs) {
  if (!shape.is_univariate()) throw ArityMismatch("univariate() needs a one-variable ring");
  Terms t;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) t.emplace(Exponent{static_cast<int>(i)}, coeffs[i]);
  return TruncPoly(shape, std::move(t));
}

TruncPoly TruncPoly::univariate(const RingShape& shape, std::initializer_list<long> coeffs) {
  std::vector<Integer> c(coeffs.begin(), coeffs.end());
  return univariate(shape, c);
}

Integer TruncPoly::coefficient(const Exponent& e) const {
  if (!shape_.contains(e)) throw ExponentOutOfRange("exponent outside the ring's truncation");
  auto it = terms_.find(e);
  return it == terms_.end() ? Integer(0) : it->second;
}

Integer TruncPoly::coefficient(int degree) const {
  if (!shape_.is_univariate()) throw ArityMismatch("coefficient(int) needs a univariate ring");
  return coefficient(Exponent{degree});
}

Integer TruncPoly::constant_term() const {
  auto it = terms_.find(Exponent(static_cast<std::size_t>(shape_.num_vars()), 0));
  return it == terms_.end() ? Integer(0) : it->second;
}

std::optional<int> TruncPoly::valuation() const {
  std::optional<int> best;
  for (const auto& [e, c] : terms_) {
    int d = std::accumulate(e.begin(), e.end(), 0);
    if (!best || d < *best) best = d;
  }
  return best;
}

std::optional<long> TruncPoly::filtration_valuation() const {
  auto v = valuation();
  if (!v) return std::nullopt;
  return static_cast<long>(*v) * shape_.filtration();
}

std::vector<Integer> TruncPoly::dense() const {
  if (!shape_.is_univariate()) throw ArityMismatch("dense() needs a univariate ring");
  std::vector<Integer> out(static_cast<std::size_t>(shape_.bound(0)));
  for (const auto& [e, c] : terms_) out[static_cast<std::size_t>(e[0])] = c;
  return out;
}

TruncPoly TruncPoly::retruncate(const RingShape& shape) const {
  if (shape.num_vars() != shape_.num_vars()) throw ShapeMismatch("retruncate changes the number of variables");
  Terms t;
  for (const auto& [e, c] : terms_)
    if (shape.contains(e)) t.emplace(e, c);
  return TruncPoly(shape, std::move(t));
}

void TruncPoly::check_same_shape(const TruncPoly& g) const {
  if (!(shape_ == g.shape_)) throw ShapeMismatch("operands live in different rings");
}

void TruncPoly::add_term(const Exponent& e, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TruncPoly TruncPoly::operator-() const {
  TruncPoly r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

TruncPoly& TruncPoly::operator+=(const TruncPoly& g) {
  check_same_shape(g);
  for (const auto& [e, c] : g.terms_) add_term(e, c);
  return *this;
}

TruncPoly& TruncPoly::operator-=(const TruncPoly& g) {
  check_same_shape(g);
  for (const auto& [e, c] : g.terms_) add_term(e, -c);
  return *this;
}

TruncPoly& TruncPoly::operator*=(const Integer& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

namespace {

// Dense kernel for the univariate case, which dominates every workload.
std::vector<Integer> dense_mul(const std::vector<Integer>& a, const std::vector<Integer>& b, std::size_t n) {
  std::vector<Integer> out(n);
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) {
      if (b[j] == 0) continue;
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return out;
}

}  // namespace

TruncPoly operator*(const TruncPoly& f, const TruncPoly& g) {
  f.check_same_shape(g);
  if (f.is_zero() || g.is_zero()) return TruncPoly(f.shape_);
  if (f.shape_.is_univariate()) {
    auto n = static_cast<std::size_t>(f.shape_.bound(0));
    return TruncPoly::univariate(f.shape_, dense_mul(f.dense(), g.dense(), n));
  }
  TruncPoly r(f.shape_);
  const auto m = static_cast<std::size_t>(f.shape_.num_vars());
  Exponent e(m);
  for (const auto& [ea, ca] : f.terms_) {
    for (const auto& [eb, cb] : g.terms_) {
      bool inside = true;
      for (std::size_t i = 0; i < m; ++i) {
        e[i] = ea[i] + eb[i];
        if (e[i] >= f.shape_.bound(static_cast<int>(i))) {
          inside = false;
          break;
        }
      }
      if (inside) r.add_term(e, ca * cb);
    }
  }
  return r;
}

TruncPoly TruncPoly::pow(unsigned long n) const {
  TruncPoly result = constant(shape_, 1);
  TruncPoly base = *this;
  while (n > 0) {
    if (n & 1UL) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

std::string TruncPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Integer a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool is_const = std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
    if (is_const) {
      os << a.get_str();
      continue;
    }
    os << a.get_str();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*x";
      if (shape_.num_vars() > 1) os << (i + 1);
      os << "^" << e[i];
    }
  }
  return os.str();
}

TruncPoly add(const TruncPoly& f, const TruncPoly& g) { return f + g; }
TruncPoly mul(const TruncPoly& f, const TruncPoly& g) { return f * g; }

TruncPoly compose(const TruncPoly& outer, std::span<const TruncPoly> inner) {
  const int m = outer.shape().num_vars();
  if (static_cast<int>(inner.size()) != m)
    throw ArityMismatch("compose needs one inner polynomial per outer variable");
  const RingShape& target = inner.front().shape();
  for (const auto& g : inner) {
    if (!(g.shape() == target)) throw ShapeMismatch("inner polynomials must share one ring");
    if (g.constant_term() != 0) throw NonzeroConstantTerm("inner polynomial " + g.to_string());
  }

  if (m == 1) {
    // Horner.
    const auto& g = inner.front();
    auto c = outer.dense();
    TruncPoly r(target);
    for (std::size_t k = c.size(); k-- > 0;) {
      r = r * g;
      if (c[k] != 0) r += TruncPoly::constant(target, c[k]);
    }
    return r;
  }

  std::vector<int> max_exp(static_cast<std::size_t>(m), 0);
  for (const auto& [e, c] : outer.terms())
    for (std::size_t i = 0; i < e.size(); ++i) max_exp[i] = std::max(max_exp[i], e[i]);
  std::vector<std::vector<TruncPoly>> powers(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < powers.size(); ++i) {
    powers[i].push_back(TruncPoly::constant(target, 1));
    for (int k = 1; k <= max_exp[i]; ++k) powers[i].push_back(powers[i].back() * inner[i]);
  }
  TruncPoly r(target);
  for (const auto& [e, c] : outer.terms()) {
    TruncPoly t = TruncPoly::constant(target, c);
    for (std::size_t i = 0; i < e.size() && !t.is_zero(); ++i)
      if (e[i] > 0) t = t * powers[i][static_cast<std::size_t>(e[i])];
    r += t;
  }
  return r;
}

TruncPoly compose(const TruncPoly& outer, const TruncPoly& inner) {
  return compose(outer, std::span<const TruncPoly>(&inner, 1));
}

TruncPoly comp_inverse(const TruncPoly& f) {
  const RingShape& shape = f.shape();
  if (!shape.is_univariate()) throw ArityMismatch("comp_inverse needs a univariate ring");
  if (f.constant_term() != 0) throw NonzeroConstantTerm(f.to_string());
  const int n = shape.bound(0);
  const Integer u = n > 1 ? f.coefficient(1) : Integer(1);
  if (u != 1 && u != -1) throw NotAUnit("linear coefficient " + u.get_str() + " is not +-1");

  // g = u x, then fix degree k by subtracting u * [x^k] f(g).
  std::vector<Integer> g(static_cast<std::size_t>(n));
  if (n > 1) g[1] = u;
  for (int k = 2; k < n; ++k) {
    TruncPoly fg = compose(f, TruncPoly::univariate(shape, g));
    g[static_cast<std::size_t>(k)] -= u * fg.coefficient(k);
  }
  return TruncPoly::univariate(shape, g);
}

TruncPoly reduce_mod(const TruncPoly& f, const Integer& m) {
  if (m < 2) throw InvalidArgument("modulus must be >= 2");
  TruncPoly::Terms t;
  for (const auto& [e, c] : f.terms()) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (r != 0) t.emplace(e, r);
  }
  return TruncPoly(f.shape(), std::move(t));
}

}  // namespace lambdalab
