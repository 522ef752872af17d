#include "nds/arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "nds/error.hpp"

namespace nds {

std::string_view to_string(Violation v) {
  switch (v) {
    case Violation::parity:
      return "parity";
    case Violation::not_primitive:
      return "primitivity";
    case Violation::principal:
      return "nontriviality";
    case Violation::not_coprime:
      return "coprimality";
    case Violation::not_divisible:
      return "divisibility";
    case Violation::domain:
      return "domain";
  }
  return "unknown";
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
  if (m == 1) return 0;
  __int128 result = 1;
  __int128 b = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = result * b % m;
    b = b * b % m;
    exp >>= 1;
  }
  return static_cast<std::int64_t>(result);
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("inverse_mod: modulus must be positive");
  std::int64_t r0 = mod(a, m), r1 = m;
  std::int64_t s0 = 1, s1 = 0;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  if (r0 != 1) {
    if (m == 1) return 0;
    throw std::invalid_argument("inverse_mod: argument not invertible");
  }
  return mod(s0, m);
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (const auto& [p, e] : factorize(n)) result = result / p * (p - 1);
  return result;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    if (d * d != n) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::int64_t> totient_table(std::int64_t n) {
  std::vector<std::int64_t> phi(static_cast<std::size_t>(n + 1));
  std::iota(phi.begin(), phi.end(), 0);
  for (std::int64_t p = 2; p <= n; ++p) {
    if (phi[p] != p) continue;
    for (std::int64_t k = p; k <= n; k += p) phi[k] -= phi[k] / p;
  }
  return phi;
}

}  // namespace nds
