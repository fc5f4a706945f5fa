// primes.hpp -- exact factorization helpers for banal-prime sets.
#pragma once

#include "langparams/bigint.hpp"

#include <map>
#include <set>
#include <vector>

namespace langparams::exactalg {

bool is_prime(const Int& n);

// Full factorization of |n|; n must be nonzero. Intended range: |n| < ~2^128.
std::map<Int, int> factorize(const Int& n);

// Ascending set of prime divisors of |n|; throws ZeroInputError for n = 0.
std::set<Int> prime_divisors(const Int& n);

}  // namespace langparams::exactalg
