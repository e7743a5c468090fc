#include "lambdalab/primes.hpp"

#include "lambdalab/error.hpp"

namespace lambdalab {

std::vector<long> primes_upto(long n) {
  std::vector<long> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n + 1), false);
  for (long i = 2; i <= n; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (long j = i * i; j <= n; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<long, int>> factorize(long k) {
  if (k < 1) throw InvalidArgument("factorize needs k >= 1");
  std::vector<std::pair<long, int>> out;
  for (long d = 2; d * d <= k; ++d) {
    int m = 0;
    while (k % d == 0) {
      k /= d;
      ++m;
    }
    if (m > 0) out.emplace_back(d, m);
  }
  if (k > 1) out.emplace_back(k, 1);
  return out;
}

std::optional<long> theta(long p, const Integer& n) {
  if (n == 0) return std::nullopt;
  Integer m = abs(n);
  long v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
    m /= p;
    ++v;
  }
  return v;
}

}  // namespace lambdalab
