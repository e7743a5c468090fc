#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lambdalab/truncpoly.hpp"

namespace lambdalab {

/// All primes <= n, ascending.
std::vector<long> primes_upto(long n);

bool is_prime(long n);

/// Prime factorization of k >= 1 as (prime, multiplicity), ascending.
std::vector<std::pair<long, int>> factorize(long k);

/// p-adic valuation theta_p(n); nullopt stands for -inf (n = 0).
std::optional<long> theta(long p, const Integer& n);

/// Default active prime bound used across the library.
inline constexpr long kDefaultPrimeBound = 50;

}  // namespace lambdalab
