#include "nds/dedekind.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "nds/contfrac.hpp"
#include "nds/error.hpp"

namespace nds {

namespace {

std::string pair_name(const DirichletCharacter& chi1, const DirichletCharacter& chi2) {
  return "(q1=" + std::to_string(chi1.modulus()) + " idx " + std::to_string(chi1.index()) +
         ", q2=" + std::to_string(chi2.modulus()) + " idx " + std::to_string(chi2.index()) + ")";
}

}  // namespace

double b1(double x) {
  const double frac = x - std::floor(x);
  if (frac < 1e-12 || frac > 1.0 - 1e-12) return 0.0;
  return frac - 0.5;
}

double b1(std::int64_t num, std::int64_t den) {
  const std::int64_t r = mod(num, den);
  if (r == 0) return 0.0;
  return static_cast<double>(r) / static_cast<double>(den) - 0.5;
}

void check_admissible(const DirichletCharacter& chi1, const DirichletCharacter& chi2) {
  for (const auto* chi : {&chi1, &chi2}) {
    if (chi->is_principal())
      throw AdmissibilityError(Violation::principal,
                               "character mod " + std::to_string(chi->modulus()) +
                                   " is principal; both characters must be nontrivial");
    if (!is_primitive(*chi))
      throw AdmissibilityError(Violation::not_primitive,
                               "character mod " + std::to_string(chi->modulus()) + " index " +
                                   std::to_string(chi->index()) + " is not primitive");
  }
  if (chi1.parity() * chi2.parity() != 1)
    throw AdmissibilityError(Violation::parity,
                             "pair " + pair_name(chi1, chi2) +
                                 " violates chi1*chi2(-1) = 1 (characters of opposite parity)");
}

void check_admissible(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                      std::int64_t a, std::int64_t c) {
  check_admissible(chi1, chi2);
  const std::int64_t level = chi1.modulus() * chi2.modulus();
  if (c < 1 || c % level != 0)
    throw AdmissibilityError(Violation::not_divisible, "q1*q2 = " + std::to_string(level) +
                                                           " does not divide c = " +
                                                           std::to_string(c));
  if (std::gcd(a, c) != 1)
    throw AdmissibilityError(Violation::not_coprime, "gcd(a, c) != 1 for a = " +
                                                         std::to_string(a) +
                                                         ", c = " + std::to_string(c));
}

GammaMatrix complete_matrix(std::int64_t a, std::int64_t c, std::int64_t q1, std::int64_t q2) {
  if (c < 1) throw AdmissibilityError(Violation::domain, "c must be >= 1");
  if (c % (q1 * q2) != 0)
    throw AdmissibilityError(Violation::not_divisible, "q1*q2 does not divide c");
  if (std::gcd(a, c) != 1)
    throw AdmissibilityError(Violation::not_coprime, "gcd(a, c) != 1");
  const std::int64_t d = c == 1 ? 1 : inverse_mod(a, c);
  const __int128 ad = static_cast<__int128>(a) * d;
  return {a, static_cast<std::int64_t>((ad - 1) / c), c, d};
}

DedekindSumResult s_double_sum(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                               std::int64_t a, std::int64_t c) {
  check_admissible(chi1, chi2, a, c);
  const std::int64_t q1 = chi1.modulus();
  const std::int64_t q2 = chi2.modulus();
  const std::int64_t ar = mod(a, c);
  const std::int64_t big = q1 * c;

  std::vector<Complex> chi1_bar(q1);
  for (std::int64_t n = 0; n < q1; ++n) chi1_bar[n] = std::conj(chi1(n));

  // B1(n/q1 + a j/c) = B1((n c + a j q1) / (q1 c)), reduced exactly.
  Complex total{0.0, 0.0};
  for (std::int64_t j = 1; j < c; ++j) {
    if (chi2.phase(j) < 0) continue;
    const std::int64_t shift = ar * j % c * q1;
    Complex inner{0.0, 0.0};
    for (std::int64_t n = 1; n < q1; ++n) {
      if (chi1.phase(n) < 0) continue;
      inner += chi1_bar[n] * b1(n * c + shift, big);
    }
    total += std::conj(chi2(j)) * b1(j, c) * inner;
  }

  DedekindSumResult result;
  result.value = total;
  result.method = Method::double_sum;
  result.d_used = complete_matrix(a, c, q1, q2).d;
  result.max_partial_quotient = max_partial_quotient(a, c / q2);
  return result;
}

Rational s_double_sum_exact(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                            std::int64_t a, std::int64_t c) {
  check_admissible(chi1, chi2, a, c);
  if (!chi1.is_real() || !chi2.is_real())
    throw AdmissibilityError(Violation::domain, "exact mode needs real-valued characters");
  const std::int64_t q1 = chi1.modulus();
  const std::int64_t ar = mod(a, c);
  const std::int64_t big = q1 * c;

  // B1(j/c) = (2j - c) / (2c) and B1(r/big) = (2r - big) / (2 big), so every
  // term is an integer over 4 c big.
  __int128 numerator = 0;
  for (std::int64_t j = 1; j < c; ++j) {
    const int s2 = chi2.real_value(j);
    if (s2 == 0) continue;
    const std::int64_t shift = ar * j % c * q1;
    __int128 inner = 0;
    for (std::int64_t n = 1; n < q1; ++n) {
      const int s1 = chi1.real_value(n);
      if (s1 == 0) continue;
      const std::int64_t r = mod(n * c + shift, big);
      if (r != 0) inner += s1 * (2 * static_cast<__int128>(r) - big);
    }
    numerator += s2 * (2 * static_cast<__int128>(j) - c) * inner;
  }
  __int128 denominator = static_cast<__int128>(4) * c * big;
  __int128 x = numerator < 0 ? -numerator : numerator, y = denominator;
  while (y != 0) {
    const __int128 t = x % y;
    x = y;
    y = t;
  }
  if (x != 0) {
    numerator /= x;
    denominator /= x;
  }
  constexpr auto lim = std::numeric_limits<std::int64_t>::max();
  if (numerator > lim || -numerator > lim || denominator > lim)
    throw std::overflow_error("s_double_sum_exact: result does not fit in 64 bits");
  return Rational(static_cast<std::int64_t>(numerator), static_cast<std::int64_t>(denominator));
}

Rational dw_exact(std::int64_t p, std::int64_t k, std::int64_t l) {
  if (k < 1) throw AdmissibilityError(Violation::domain, "dw_exact needs k >= 1");
  const DirichletCharacter chi = legendre_character(p);
  return Rational(chi.real_value(-l) * k * (p * p - 1), 12);
}

double korobov_sum_1(std::int64_t a, std::int64_t q) {
  if (q < 2 || a < 1 || a >= q || std::gcd(a, q) != 1)
    throw AdmissibilityError(Violation::not_coprime, "korobov sums need 1 <= a < q, gcd 1");
  double sum = 0.0;
  const double qq = static_cast<double>(q);
  for (std::int64_t l = 1; l < q; ++l) {
    const std::int64_t r = l * a % q;
    sum += qq / static_cast<double>(std::min(r, q - r));
  }
  return sum;
}

double korobov_sum_2(std::int64_t a, std::int64_t q) {
  if (q < 2 || a < 1 || a >= q || std::gcd(a, q) != 1)
    throw AdmissibilityError(Violation::not_coprime, "korobov sums need 1 <= a < q, gcd 1");
  double sum = 0.0;
  const double qq = static_cast<double>(q);
  for (std::int64_t l = 1; l < q; ++l) {
    const std::int64_t r = l * a % q;
    sum += qq / (static_cast<double>(l) * static_cast<double>(std::min(r, q - r)));
  }
  return sum;
}

double bound_ratio(double s_abs, std::int64_t a, std::int64_t c_prime) {
  if (c_prime < 2) throw AdmissibilityError(Violation::domain, "bound_ratio needs c' >= 2");
  const double lg = std::log(static_cast<double>(c_prime));
  return s_abs / (static_cast<double>(max_partial_quotient(a, c_prime)) * lg * lg);
}

double bound_ratio(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                   std::int64_t a, std::int64_t c) {
  const DedekindSumResult s = s_double_sum(chi1, chi2, a, c);
  return bound_ratio(std::abs(s.value), a, c / chi2.modulus());
}

Rational classical_dedekind_sum(std::int64_t h, std::int64_t k) {
  if (k < 1 || std::gcd(h, k) != 1)
    throw AdmissibilityError(Violation::not_coprime, "classical sum needs gcd(h, k) = 1");
  // Each term is (2n - k)(2 (hn mod k) - k) / (4 k^2) when neither argument is integral.
  std::int64_t numerator = 0;
  for (std::int64_t n = 1; n < k; ++n) {
    const std::int64_t r = mod(h * n, k);
    if (r == 0) continue;
    numerator += (2 * n - k) * (2 * r - k);
  }
  return Rational(numerator, 4 * k * k);
}

}  // namespace nds
