#include "nds/contfrac.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "nds/arith.hpp"
#include "nds/error.hpp"

namespace nds {

namespace {

void require_coprime(std::int64_t a, std::int64_t c) {
  if (c < 1) throw AdmissibilityError(Violation::domain, "denominator must be >= 1");
  if (std::gcd(a, c) != 1)
    throw AdmissibilityError(Violation::not_coprime, "gcd(" + std::to_string(a) + ", " +
                                                         std::to_string(c) + ") != 1");
}

// Largest partial quotient of a/c for 0 < a < c, straight from Euclid.
std::int64_t euclid_max_quotient(std::int64_t a, std::int64_t c) {
  std::int64_t best = 0;
  while (a != 0) {
    const std::int64_t q = c / a;
    best = std::max(best, q);
    std::tie(c, a) = std::make_pair(a, c - q * a);
  }
  return best;
}

}  // namespace

ContinuedFraction expand(std::int64_t a, std::int64_t c) {
  require_coprime(a, c);
  ContinuedFraction cf;
  cf.numerator = a;
  cf.denominator = c;
  // floor division for negative a
  cf.a0 = a / c - ((a % c != 0 && a < 0) ? 1 : 0);
  std::int64_t num = c;
  std::int64_t rem = a - cf.a0 * c;
  while (rem != 0) {
    const std::int64_t q = num / rem;
    cf.partials.push_back(q);
    std::tie(num, rem) = std::make_pair(rem, num - q * rem);
  }
  return cf;
}

Fraction evaluate(const ContinuedFraction& cf) {
  // Backward recurrence: value = a0 + 1/(a1 + 1/(...)).
  std::int64_t num = 1, den = 0;
  for (auto it = cf.partials.rbegin(); it != cf.partials.rend(); ++it) {
    std::tie(num, den) = std::make_pair(*it * num + den, num);
  }
  return {cf.a0 * num + den, num};
}

ContinuedFraction to_parity_form(const ContinuedFraction& cf, bool want_odd_n) {
  const bool is_odd = cf.partials.size() % 2 == 1;
  if (is_odd == want_odd_n) return cf;

  ContinuedFraction out = cf;
  if (out.partials.empty()) {
    // [a0] = [a0 - 1; 1]
    out.a0 -= 1;
    out.partials.push_back(1);
  } else if (out.partials.back() == 1) {
    out.partials.pop_back();
    if (out.partials.empty())
      out.a0 += 1;
    else
      out.partials.back() += 1;
  } else {
    out.partials.back() -= 1;
    out.partials.push_back(1);
  }
  return out;
}

std::int64_t max_partial_quotient(std::int64_t a, std::int64_t c) {
  require_coprime(a, c);
  if (c < 2) throw AdmissibilityError(Violation::domain, "max_partial_quotient needs c >= 2");
  return euclid_max_quotient(mod(a, c), c);
}

IntMatrix2 continuant_matrix(const ContinuedFraction& cf) {
  IntMatrix2 m{cf.a0, 1, 1, 0};
  for (const std::int64_t ai : cf.partials) m = m * IntMatrix2{ai, 1, 1, 0};
  return m;
}

IntMatrix2 matrix_factorization(const ContinuedFraction& cf) {
  if (cf.partials.size() % 2 == 0)
    throw AdmissibilityError(Violation::domain,
                             "matrix_factorization needs an odd number of partial quotients");
  return continuant_matrix(cf);
}

ContinuedFraction reverse_denominator_expansion(std::int64_t a, std::int64_t c) {
  require_coprime(a, c);
  if (a <= 0 || a >= c)
    throw AdmissibilityError(Violation::domain, "reverse_denominator_expansion needs 0 < a < c");

  const ContinuedFraction odd = to_parity_form(expand(a, c), true);
  ContinuedFraction rev;
  rev.a0 = 0;
  rev.partials.assign(odd.partials.rbegin(), odd.partials.rend());
  const Fraction value = evaluate(rev);
  rev.numerator = value.numerator;
  rev.denominator = value.denominator;

  const std::int64_t d = inverse_mod(a, c);
  const ContinuedFraction direct = expand(d, c);
  if (value != Fraction{d, c} ||
      to_parity_form(rev, direct.length() % 2 == 1).partials != direct.partials)
    throw std::logic_error("reversal identity failed for " + std::to_string(a) + "/" +
                           std::to_string(c));
  return rev;
}

int digit_symmetry_delta(std::int64_t a, std::int64_t c) {
  require_coprime(a, c);
  const std::int64_t d = inverse_mod(a, c);
  return static_cast<int>(max_partial_quotient(a, c) - max_partial_quotient(d, c));
}

HensleyCounts hensley_counts(double alpha, std::int64_t C, unsigned workers) {
  const double bound = alpha * std::log(static_cast<double>(C));
  workers = std::max(1u, workers);

  std::vector<HensleyCounts> partial(workers);
  auto run = [&](unsigned w) {
    HensleyCounts& out = partial[w];
    for (std::int64_t c = 3 + w; c <= C; c += workers) {
      for (std::int64_t a = 2; a < c; ++a) {
        if (std::gcd(a, c) != 1) continue;
        ++out.total;
        if (static_cast<double>(euclid_max_quotient(a, c)) <= bound)
          ++out.phi;
        else
          ++out.g;
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  HensleyCounts total;
  for (const auto& p : partial) {
    total.phi += p.phi;
    total.g += p.g;
    total.total += p.total;
  }
  return total;
}

std::int64_t phi_count(double alpha, std::int64_t C, unsigned workers) {
  return hensley_counts(alpha, C, workers).phi;
}

std::int64_t g_count(double alpha, std::int64_t C, unsigned workers) {
  return hensley_counts(alpha, C, workers).g;
}

std::int64_t coprime_pair_total(std::int64_t C) {
  if (C < 2) return 0;
  const auto phi = totient_table(C);
  std::int64_t total = 0;
  for (std::int64_t c = 2; c <= C; ++c) total += phi[c] - 1;
  return total;
}

double hensley_prediction(double alpha, std::int64_t C) {
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  const double cc = static_cast<double>(C);
  return 3.0 / pi2 * cc * cc * std::exp(-12.0 / (alpha * pi2));
}

}  // namespace nds
