#include "lambdalab/symuniv.hpp"

#include <algorithm>
#include <sstream>

#include "lambdalab/adams.hpp"
#include "lambdalab/error.hpp"

namespace lambdalab {

SymPoly::SymPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

SymPoly::SymPoly(std::vector<std::string> vars, Terms terms) : vars_(std::move(vars)) {
  for (auto& [m, c] : terms) {
    if (m.size() != vars_.size()) throw IndexOutOfRange("monomial length does not match variables");
    if (c != 0) terms_.emplace(m, std::move(c));
  }
}

SymPoly SymPoly::constant(std::vector<std::string> vars, const Integer& c) {
  Monomial m(vars.size(), 0);
  Terms t;
  t.emplace(std::move(m), c);
  return SymPoly(std::move(vars), std::move(t));
}

SymPoly SymPoly::variable(std::vector<std::string> vars, int i) {
  if (i < 0 || i >= static_cast<int>(vars.size())) throw IndexOutOfRange("no variable " + std::to_string(i));
  Monomial m(vars.size(), 0);
  m[static_cast<std::size_t>(i)] = 1;
  Terms t;
  t.emplace(std::move(m), 1);
  return SymPoly(std::move(vars), std::move(t));
}

Integer SymPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

void SymPoly::add_term(const Monomial& m, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void SymPoly::check_same_vars(const SymPoly& g) const {
  if (vars_ != g.vars_) throw IndexOutOfRange("symmetric polynomials over different variables");
}

SymPoly SymPoly::operator-() const {
  SymPoly r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

SymPoly& SymPoly::operator+=(const SymPoly& g) {
  check_same_vars(g);
  for (const auto& [m, c] : g.terms_) add_term(m, c);
  return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& g) {
  check_same_vars(g);
  for (const auto& [m, c] : g.terms_) add_term(m, -c);
  return *this;
}

SymPoly operator*(const SymPoly& f, const SymPoly& g) {
  f.check_same_vars(g);
  SymPoly r(f.vars_);
  SymPoly::Monomial m(f.vars_.size());
  for (const auto& [ma, ca] : f.terms_) {
    for (const auto& [mb, cb] : g.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

SymPoly operator*(SymPoly f, const Integer& c) {
  if (c == 0) return SymPoly(f.vars_);
  for (auto& [m, v] : f.terms_) v *= c;
  return f;
}

SymPoly SymPoly::pow(unsigned n) const {
  SymPoly r = constant(vars_, 1);
  SymPoly b = *this;
  while (n > 0) {
    if (n & 1U) r = r * b;
    n >>= 1;
    if (n > 0) b = b * b;
  }
  return r;
}

SymPoly SymPoly::shifted(const Monomial& m) const {
  SymPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    Monomial s = e;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += m[i];
    r.terms_.emplace(std::move(s), c);
  }
  return r;
}

bool SymPoly::is_symmetric_in(int first, int count) const {
  for (int i = first; i + 1 < first + count; ++i) {
    Terms swapped;
    for (const auto& [m, c] : terms_) {
      Monomial s = m;
      std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i + 1)]);
      swapped.emplace(std::move(s), c);
    }
    if (swapped != terms_) return false;
  }
  return true;
}

SymPoly SymPoly::substitute(std::span<const SymPoly> images) const {
  if (images.size() != vars_.size()) throw IndexOutOfRange("substitute needs one image per variable");
  if (images.empty()) return *this;
  const auto& target = images.front().vars();
  SymPoly r(target);
  for (const auto& [m, c] : terms_) {
    SymPoly t = constant(target, c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) t = t * images[i].pow(static_cast<unsigned>(m[i]));
    r += t;
  }
  return r;
}

Integer SymPoly::evaluate(std::span<const Integer> point) const {
  if (point.size() != vars_.size()) throw IndexOutOfRange("evaluate needs one value per variable");
  Integer r = 0;
  for (const auto& [m, c] : terms_) {
    Integer t = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      Integer p;
      mpz_pow_ui(p.get_mpz_t(), point[i].get_mpz_t(), static_cast<unsigned long>(m[i]));
      t *= p;
    }
    r += t;
  }
  return r;
}

TruncPoly SymPoly::evaluate(std::span<const TruncPoly> point) const {
  if (point.size() != vars_.size() || point.empty())
    throw IndexOutOfRange("evaluate needs one value per variable");
  const RingShape& shape = point.front().shape();
  TruncPoly r(shape);
  for (const auto& [m, c] : terms_) {
    TruncPoly t = TruncPoly::constant(shape, c);
    for (std::size_t i = 0; i < m.size() && !t.is_zero(); ++i)
      if (m[i] > 0) t = t * point[i].pow(static_cast<unsigned long>(m[i]));
    r += t;
  }
  return r;
}

std::string SymPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest lex monomial first reads most naturally (s1^2*sigma2 before s2*sigma2).
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Integer a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool is_const = std::all_of(m.begin(), m.end(), [](int k) { return k == 0; });
    bool need_star = false;
    if (a != 1 || is_const) {
      os << a.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (need_star) os << "*";
      os << vars_[i];
      if (m[i] > 1) os << "^" << m[i];
      need_star = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

std::vector<std::string> numbered_vars(const std::string& prefix, int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back(prefix + std::to_string(i));
  return v;
}

namespace {

// e_k in variables first .. first+count-1 of a larger variable list.
SymPoly elementary_in_block(const std::vector<std::string>& vars, int first, int count, int k) {
  SymPoly r(vars);
  if (k < 0 || k > count) return r;
  // Walk all k-subsets of the block in lex order.
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  SymPoly::Terms t;
  while (true) {
    SymPoly::Monomial m(vars.size(), 0);
    for (int i : idx) m[static_cast<std::size_t>(first + i)] = 1;
    t.emplace(std::move(m), 1);
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == count - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < k; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
  }
  return SymPoly(vars, std::move(t));
}

}  // namespace

SymPoly elementary_symmetric(const std::vector<std::string>& vars, int k) {
  const int n = static_cast<int>(vars.size());
  if (k < 0 || k > n) throw IndexOutOfRange("e_" + std::to_string(k) + " of " + std::to_string(n) + " variables");
  return elementary_in_block(vars, 0, n, k);
}

SymPoly to_elementary_blocks(const SymPoly& f, const std::vector<int>& block_sizes,
                             const std::vector<std::vector<std::string>>& generator_names) {
  int total = 0;
  for (int s : block_sizes) total += s;
  if (total != f.num_vars()) throw IndexOutOfRange("block sizes do not cover the variables");
  if (generator_names.size() != block_sizes.size()) throw IndexOutOfRange("one name list per block");

  std::vector<std::string> gen_vars;
  std::vector<int> starts;
  for (std::size_t b = 0, start = 0; b < block_sizes.size(); ++b) {
    if (static_cast<int>(generator_names[b].size()) != block_sizes[b])
      throw IndexOutOfRange("one generator name per block variable");
    if (!f.is_symmetric_in(static_cast<int>(start), block_sizes[b]))
      throw NotSymmetric("block " + std::to_string(b) + " of " + f.to_string());
    gen_vars.insert(gen_vars.end(), generator_names[b].begin(), generator_names[b].end());
    starts.push_back(static_cast<int>(start));
    start += static_cast<std::size_t>(block_sizes[b]);
  }

  // e[b][k-1] = e_k of block b, as a polynomial in the original variables.
  std::vector<std::vector<SymPoly>> e(block_sizes.size());
  for (std::size_t b = 0; b < block_sizes.size(); ++b)
    for (int k = 1; k <= block_sizes[b]; ++k)
      e[b].push_back(elementary_in_block(f.vars(), starts[b], block_sizes[b], k));

  SymPoly rem = f;
  SymPoly::Terms out;
  while (!rem.is_zero()) {
    const auto& [lead, c] = *rem.terms().rbegin();
    SymPoly::Monomial gen(gen_vars.size(), 0);
    SymPoly product = SymPoly::constant(f.vars(), c);
    std::size_t g = 0;
    for (std::size_t b = 0; b < block_sizes.size(); ++b) {
      const int n = block_sizes[b];
      for (int k = 0; k < n; ++k, ++g) {
        int a = lead[static_cast<std::size_t>(starts[b] + k)];
        int next = k + 1 < n ? lead[static_cast<std::size_t>(starts[b] + k + 1)] : 0;
        if (a < next) throw NotSymmetric("leading monomial is not a partition");
        gen[g] = a - next;
        if (gen[g] > 0) product = product * e[b][static_cast<std::size_t>(k)].pow(static_cast<unsigned>(gen[g]));
      }
    }
    out.emplace(std::move(gen), c);
    rem -= product;
  }
  return SymPoly(std::move(gen_vars), std::move(out));
}

SymPoly to_elementary(const SymPoly& f, std::vector<std::string> generator_names) {
  if (generator_names.empty()) generator_names = numbered_vars("e", f.num_vars());
  return to_elementary_blocks(f, {f.num_vars()}, {generator_names});
}

SymPoly expand_elementary(const SymPoly& g, const std::vector<int>& block_sizes,
                          const std::vector<std::vector<std::string>>& block_vars) {
  std::vector<std::string> vars;
  for (const auto& bv : block_vars) vars.insert(vars.end(), bv.begin(), bv.end());
  std::vector<SymPoly> images;
  int start = 0;
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    for (int k = 1; k <= block_sizes[b]; ++k) images.push_back(elementary_in_block(vars, start, block_sizes[b], k));
    start += block_sizes[b];
  }
  return g.substitute(images);
}

SymPoly newton_Q(int k) {
  if (k < 1) throw IndexOutOfRange("Q_k needs k >= 1");
  auto xs = numbered_vars("x", k);
  SymPoly power_sum(xs);
  for (int i = 0; i < k; ++i) power_sum += SymPoly::variable(xs, i).pow(static_cast<unsigned>(k));
  return to_elementary(power_sum, numbered_vars("sigma", k));
}

namespace {

// Coefficient of t^i in prod over `factors` of (1 + m t), each m a monomial.
SymPoly truncated_product_coefficient(const std::vector<std::string>& vars,
                                      const std::vector<SymPoly::Monomial>& factors, int i) {
  std::vector<SymPoly> c(static_cast<std::size_t>(i + 1), SymPoly(vars));
  c[0] = SymPoly::constant(vars, 1);
  for (const auto& m : factors)
    for (int d = i; d >= 1; --d) c[static_cast<std::size_t>(d)] += c[static_cast<std::size_t>(d - 1)].shifted(m);
  return c[static_cast<std::size_t>(i)];
}

}  // namespace

SymPoly product_P(int i, const UniversalCap& cap) {
  if (i < 1) throw IndexOutOfRange("P_i needs i >= 1");
  if (i > cap.i) throw CapExceeded("P_" + std::to_string(i) + " exceeds cap i <= " + std::to_string(cap.i));
  auto xi = numbered_vars("xi", i);
  auto eta = numbered_vars("eta", i);
  std::vector<std::string> vars = xi;
  vars.insert(vars.end(), eta.begin(), eta.end());
  std::vector<SymPoly::Monomial> factors;
  for (int m = 0; m < i; ++m) {
    for (int n = 0; n < i; ++n) {
      SymPoly::Monomial mono(vars.size(), 0);
      mono[static_cast<std::size_t>(m)] = 1;
      mono[static_cast<std::size_t>(i + n)] = 1;
      factors.push_back(std::move(mono));
    }
  }
  SymPoly coeff = truncated_product_coefficient(vars, factors, i);
  return to_elementary_blocks(coeff, {i, i}, {numbered_vars("s", i), numbered_vars("sigma", i)});
}

SymPoly composite_P(int i, int j, const UniversalCap& cap) {
  if (i < 1 || j < 1) throw IndexOutOfRange("P_{i,j} needs i, j >= 1");
  if (i * j > cap.ij)
    throw CapExceeded("P_{" + std::to_string(i) + "," + std::to_string(j) + "} exceeds cap ij <= " +
                      std::to_string(cap.ij));
  const int n = i * j;
  auto xi = numbered_vars("xi", n);
  // One factor per j-subset of the n variables: the monomials of e_j.
  std::vector<SymPoly::Monomial> factors;
  const SymPoly ej = elementary_symmetric(xi, j);
  for (const auto& [m, c] : ej.terms()) factors.push_back(m);
  SymPoly coeff = truncated_product_coefficient(xi, factors, i);
  return to_elementary(coeff, numbered_vars("s", n));
}

// ---------------------------------------------------------------------------

LambdaTable lambda_from_adams(const AdamsFamily& family, int upto, int var) {
  if (upto < 1) throw IndexOutOfRange("lambda table needs upto >= 1");
  const RingShape& shape = family.shape();
  std::vector<TruncPoly> psi;  // psi[k-1] = psi^k(x_var)
  for (int k = 1; k <= upto; ++k) psi.push_back(psi_composite(family, k)[static_cast<std::size_t>(var)]);

  LambdaTable table{shape, var, {TruncPoly::variable(shape, var)}};
  for (int n = 2; n <= upto; ++n) {
    // sum_{j=0}^{n-1} (-1)^j lambda^j psi^{n-j}, lambda^0 = 1
    TruncPoly s = psi[static_cast<std::size_t>(n - 1)];
    for (int j = 1; j < n; ++j) {
      TruncPoly t = table.lambdas[static_cast<std::size_t>(j - 1)] * psi[static_cast<std::size_t>(n - j - 1)];
      if (j % 2 == 0) s += t;
      else s -= t;
    }
    TruncPoly::Terms out;
    for (const auto& [e, c] : s.terms()) {
      if (!mpz_divisible_ui_p(c.get_mpz_t(), static_cast<unsigned long>(n)))
        throw NonIntegralLambda("lambda^" + std::to_string(n) + ": coefficient " + c.get_str() +
                                " not divisible by " + std::to_string(n));
      Integer q = c / n;
      out.emplace(e, (n % 2 == 0) ? Integer(-q) : q);
    }
    table.lambdas.emplace_back(shape, std::move(out));
  }
  return table;
}

std::vector<TruncPoly> adams_from_lambda(const LambdaTable& table, int upto) {
  if (upto < 1) throw IndexOutOfRange("adams_from_lambda needs upto >= 1");
  if (static_cast<int>(table.lambdas.size()) < upto)
    throw TableTooShort("table has " + std::to_string(table.lambdas.size()) + " entries, need " + std::to_string(upto));
  std::vector<TruncPoly> out;
  for (int k = 1; k <= upto; ++k) {
    SymPoly q = newton_Q(k);
    out.push_back(q.evaluate(std::span<const TruncPoly>(table.lambdas.data(), static_cast<std::size_t>(k))));
  }
  return out;
}

}  // namespace lambdalab
