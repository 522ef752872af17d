#pragma once

#include <complex>
#include <cstdint>

#include "nds/arith.hpp"
#include "nds/characters.hpp"

namespace nds {

/// (a b; c d) with ad - bc = 1 and c >= 1. Membership in Gamma_0(q1 q2) is
/// checked where a character pair is available.
struct GammaMatrix {
  std::int64_t a, b, c, d;
  std::int64_t det() const { return a * d - b * c; }
  friend bool operator==(const GammaMatrix&, const GammaMatrix&) = default;
};

enum class Method { double_sum, analytic };

struct DedekindSumResult {
  Complex value;
  Method method = Method::double_sum;
  double truncation_bound = 0.0;  // zero for the finite sum
  std::int64_t d_used = 0;
  std::int64_t max_partial_quotient = 0;  // D(a, c') with c' = c / q2
};

/// First Bernoulli function: x - floor(x) - 1/2 off the integers, 0 on them.
/// Values within 1e-12 of an integer count as integers.
double b1(double x);

/// B1(num / den) evaluated without rounding the argument.
double b1(std::int64_t num, std::int64_t den);

/// Throws AdmissibilityError unless chi1, chi2 are primitive, nontrivial and
/// chi1 chi2 (-1) = 1.
void check_admissible(const DirichletCharacter& chi1, const DirichletCharacter& chi2);

/// Also checks gcd(a, c) = 1 and q1 q2 | c.
void check_admissible(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                      std::int64_t a, std::int64_t c);

/// Completes (a, c) to a matrix in Gamma_0(q1 q2) with 0 < d < c (d = 1 when c = 1).
GammaMatrix complete_matrix(std::int64_t a, std::int64_t c, std::int64_t q1, std::int64_t q2);

/// S_{chi1,chi2}(a, c) from the finite double sum over j mod c and n mod q1.
DedekindSumResult s_double_sum(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                               std::int64_t a, std::int64_t c);

/// The same sum in exact rational arithmetic; both characters must be real.
Rational s_double_sum_exact(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                            std::int64_t a, std::int64_t c);

/// chi(-l) k (p^2 - 1) / 12 with chi the Legendre symbol mod p: the exact
/// value of S_{chi,chi}(1 + l k p, k p^2).
Rational dw_exact(std::int64_t p, std::int64_t k, std::int64_t l);

/// sum_{1 <= l < q} 1 / ||l a / q||.
double korobov_sum_1(std::int64_t a, std::int64_t q);
/// sum_{1 <= l < q} 1 / (l ||l a / q||).
double korobov_sum_2(std::int64_t a, std::int64_t q);

/// |S| / (D(a, c') log^2 c') with c' = c / q2.
double bound_ratio(double s_abs, std::int64_t a, std::int64_t c_prime);
double bound_ratio(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                   std::int64_t a, std::int64_t c);

/// Classical s(h, k) = sum_{n mod k} B1(n/k) B1(hn/k), exact.
Rational classical_dedekind_sum(std::int64_t h, std::int64_t k);

}  // namespace nds
