#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace nds {

using Rational = boost::rational<std::int64_t>;

/// Least nonnegative residue of x modulo m (m > 0).
constexpr std::int64_t mod(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m);

/// Inverse of a modulo m in [0, m); throws std::invalid_argument if
/// gcd(a, m) != 1. For m == 1 returns 0.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

/// Prime factorization by trial division, primes ascending.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

bool is_prime(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);

/// Totients of 0..n via a sieve (phi[0] = 0).
std::vector<std::int64_t> totient_table(std::int64_t n);

}  // namespace nds
