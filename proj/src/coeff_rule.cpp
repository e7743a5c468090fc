#include "lambdalab/coeff_rule.hpp"

#include <cctype>
#include <sstream>

#include "lambdalab/error.hpp"

namespace lambdalab {

namespace {

void trim(PrimePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  PrimePoly parse() {
    PrimePoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("in rule \"" + std::string(s_) + "\" at " + std::to_string(pos_) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool starts_primary() {
    skip();
    return pos_ < s_.size() && (s_[pos_] == 'p' || s_[pos_] == '(' || std::isdigit(static_cast<unsigned char>(s_[pos_])));
  }

  PrimePoly expr() {
    PrimePoly r = term();
    while (true) {
      if (eat('+')) r = prime_poly_add(r, term());
      else if (eat('-')) r = prime_poly_add(r, prime_poly_scale(term(), -1));
      else return r;
    }
  }

  PrimePoly term() {
    PrimePoly r = unary();
    while (true) {
      if (eat('*')) r = prime_poly_mul(r, unary());
      else if (starts_primary()) r = prime_poly_mul(r, power());
      else return r;
    }
  }

  PrimePoly unary() {
    if (eat('-')) return prime_poly_scale(unary(), -1);
    if (eat('+')) return unary();
    return power();
  }

  PrimePoly power() {
    PrimePoly base = primary();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a non-negative integer literal");
      unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
      PrimePoly r{1};
      for (unsigned long i = 0; i < e; ++i) r = prime_poly_mul(r, base);
      return r;
    }
    return base;
  }

  PrimePoly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == 'p') {
      ++pos_;
      return PrimePoly{0, 1};
    }
    if (c == '(') {
      ++pos_;
      PrimePoly r = expr();
      if (!eat(')')) fail("missing ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      PrimePoly r{Integer(std::string(s_.substr(start, pos_ - start)))};
      trim(r);
      return r;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

PrimePoly prime_poly_add(const PrimePoly& a, const PrimePoly& b) {
  PrimePoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

PrimePoly prime_poly_mul(const PrimePoly& a, const PrimePoly& b) {
  if (a.empty() || b.empty()) return {};
  PrimePoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

PrimePoly prime_poly_scale(const PrimePoly& a, const Integer& c) {
  PrimePoly r(a);
  for (auto& v : r) v *= c;
  trim(r);
  return r;
}

Integer prime_poly_eval(const PrimePoly& a, long p) {
  Integer r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = r * p + a[i];
  return r;
}

PrimePoly parse_prime_poly(std::string_view text) { return Parser(text).parse(); }

std::string format_prime_poly(const PrimePoly& a) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = a.size(); i-- > 0;) {
    const Integer& c = a[i];
    if (c == 0) continue;
    Integer m = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << m.get_str();
      continue;
    }
    if (m != 1) os << m.get_str() << "*";
    os << "p";
    if (i > 1) os << "^" << i;
  }
  return first ? "0" : os.str();
}

CoeffRule::CoeffRule(PrimePoly numerator, Integer denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
  trim(numerator_);
  if (denominator_ <= 0) throw NonIntegralRule("denominator must be positive");
}

CoeffRule CoeffRule::parse(std::string_view numerator, const Integer& denominator) {
  return CoeffRule(parse_prime_poly(numerator), denominator);
}

bool CoeffRule::integral_at(long p) const {
  Integer v = prime_poly_eval(numerator_, p);
  return mpz_divisible_p(v.get_mpz_t(), denominator_.get_mpz_t()) != 0;
}

Integer CoeffRule::eval(long p) const {
  Integer v = prime_poly_eval(numerator_, p);
  if (!mpz_divisible_p(v.get_mpz_t(), denominator_.get_mpz_t()))
    throw NonIntegralRule("(" + numerator_string() + ")/" + denominator_.get_str() + " at p = " + std::to_string(p));
  Integer q;
  mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), denominator_.get_mpz_t());
  return q;
}

}  // namespace lambdalab
