#pragma once

// Reference computations for the tests. Nothing here calls into the
// library's arithmetic: polynomials are dense coefficient vectors and all
// products are schoolbook loops.

#include <gmpxx.h>

#include <algorithm>
#include <random>
#include <vector>

namespace oracle {

using Z = mpz_class;
using Dense = std::vector<Z>;  // c[k] = coefficient of x^k, length n (mod x^n)

inline Dense mul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense r(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline Dense add(const Dense& a, const Dense& b) {
  Dense r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline Dense one(std::size_t n) {
  Dense r(n, 0);
  r[0] = 1;
  return r;
}

/// f(g) by summing f_k g^k with explicit powers.
inline Dense compose(const Dense& f, const Dense& g) {
  const std::size_t n = f.size();
  Dense r(n, 0), pw = one(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) r[i] += f[k] * pw[i];
    pw = mul(pw, g);
  }
  return r;
}

inline Z binom(long n, long k) {
  if (k < 0) return 0;
  Z num = 1, den = 1;
  for (long i = 0; i < k; ++i) {
    num *= (n - i);
    den *= (i + 1);
  }
  return num / den;
}

/// (1+x)^p - 1 mod x^n.
inline Dense chern(long p, std::size_t n) {
  Dense r(n, 0);
  for (std::size_t k = 1; k < n; ++k) r[k] = binom(p, static_cast<long>(k));
  return r;
}

/// V_p(y + 2) - 2 mod y^n, where V_0 = 2, V_1 = w, V_{m+1} = w V_m - V_{m-1}.
inline Dense quaternionic(long p, std::size_t n) {
  Dense w(n, 0), prev(n, 0);
  w[0] = 2;
  if (n > 1) w[1] = 1;
  prev[0] = 2;
  Dense cur = w;
  for (long m = 1; m < p; ++m) {
    Dense next = mul(w, cur);
    for (std::size_t i = 0; i < n; ++i) next[i] -= prev[i];
    prev = cur;
    cur = next;
  }
  cur[0] -= 2;
  return cur;
}

inline Z ipow(long b, unsigned e) {
  Z r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), e);
  return r;
}

/// Elementary symmetric values e_0..e_k of a list of integers.
inline std::vector<Z> elementary(const std::vector<Z>& xs, std::size_t k) {
  std::vector<Z> e(k + 1, 0);
  e[0] = 1;
  for (const auto& x : xs)
    for (std::size_t d = k; d >= 1; --d) e[d] += e[d - 1] * x;
  return e;
}

/// Power sum of integers.
inline Z power_sum(const std::vector<Z>& xs, unsigned k) {
  Z s = 0;
  for (const auto& x : xs) {
    Z t;
    mpz_pow_ui(t.get_mpz_t(), x.get_mpz_t(), k);
    s += t;
  }
  return s;
}

/// Products over all j-subsets of xs.
inline std::vector<Z> subset_products(const std::vector<Z>& xs, int j) {
  std::vector<Z> out;
  const int n = static_cast<int>(xs.size());
  std::vector<int> idx(static_cast<std::size_t>(j));
  for (int i = 0; i < j; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    Z p = 1;
    for (int i : idx) p *= xs[static_cast<std::size_t>(i)];
    out.push_back(p);
    int pos = j - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - j + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < j; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
  }
  return out;
}

/// Brute-force search for sigma = u x + a_2 x^2 + ... + a_{n-1} x^{n-1}
/// with psi_r(sigma) = sigma(psi_s) at every prime, coefficients in
/// [-range, range]. Families are given as dense psi^p(x) per prime.
inline bool brute_iso(const std::vector<Dense>& r, const std::vector<Dense>& s, int range) {
  const std::size_t n = r.front().size();
  const std::size_t free = n > 2 ? n - 2 : 0;
  std::vector<int> a(free, -range);
  for (int u : {1, -1}) {
    std::fill(a.begin(), a.end(), -range);
    while (true) {
      Dense sigma(n, 0);
      if (n > 1) sigma[1] = u;
      for (std::size_t i = 0; i < free; ++i) sigma[i + 2] = a[i];
      bool ok = true;
      for (std::size_t k = 0; k < r.size() && ok; ++k) ok = compose(r[k], sigma) == compose(sigma, s[k]);
      if (ok) return true;
      std::size_t pos = 0;
      while (pos < free && a[pos] == range) a[pos++] = -range;
      if (pos == free) break;
      ++a[pos];
    }
  }
  return false;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20241018);
  return g;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

}  // namespace oracle
