#pragma once

#include <cstdint>
#include <vector>

#include "nds/characters.hpp"
#include "nds/dedekind.hpp"

namespace nds {

/// A truncated series value together with a certified bound on the tail.
struct SeriesValue {
  Complex value;
  double truncation_bound = 0.0;
  std::int64_t terms = 0;
};

/// Upper bound on the l > cutoff tail of the geometric-series form of f at
/// height 1/c: 2 q2 (c / (2 pi L)) exp(-2 pi L / c).
double series_tail_bound(std::int64_t q2, std::int64_t c, std::int64_t cutoff);

/// Smallest L >= c / q2 whose tail bound is at most target_error.
std::int64_t series_cutoff(std::int64_t q2, std::int64_t c, double target_error);

/// Evaluates the Eichler integral
///
///   f(z) = sum_{l >= 1} sum_{k >= 1} chi1(l) conj(chi2)(k) / l * e(k l z)
///
/// at points z = (x + i)/c for a fixed c with q2 | c. The k-sum is folded
/// into a geometric series in theta = e(l (x + i) / c'), c' = c / q2, leaving
///
///   f = sum_l chi1(l) / (l (1 - theta)) sum_{k0 = 1}^{q2} conj(chi2)(k0) e(k0 l (x + i) / c),
///
/// which is summed up to series_cutoff(). Root-of-unity and decay tables for
/// c are built once, so one evaluator serves every numerator x mod c.
class EichlerEvaluator {
 public:
  EichlerEvaluator(DirichletCharacter chi1, DirichletCharacter chi2, std::int64_t c,
                   double target_error);

  std::int64_t c() const { return c_; }
  std::int64_t c_prime() const { return c_prime_; }
  std::int64_t cutoff() const { return cutoff_; }
  double tail_bound() const { return tail_bound_; }

  /// f at (numerator + i) / c; numerator must be coprime to c.
  SeriesValue f(std::int64_t numerator) const;

  /// phi(gamma) = f(gamma z) - psi(gamma) f(z) at z = (-d + i)/c, where
  /// gamma z = (a + i)/c and psi(gamma) = chi1(d) conj(chi2)(d).
  SeriesValue phi(const GammaMatrix& gamma) const;

  /// S(a, c) = tau(conj chi1) / (pi i) * phi(gamma).
  DedekindSumResult dedekind_sum(std::int64_t a) const;

 private:
  DirichletCharacter chi1_;
  DirichletCharacter chi2_;
  std::int64_t c_;
  std::int64_t c_prime_;
  std::int64_t cutoff_;
  double tail_bound_;
  Complex tau_conj_chi1_;
  std::vector<Complex> roots_;         // e(j / c)
  std::vector<double> half_sine_sq_;   // sin^2(pi j / c)
  std::vector<double> theta_expm1_;    // expm1(-2 pi l / c'), index l
  std::vector<double> decay_;          // exp(-2 pi l / c), index l
  std::vector<Complex> chi2_bar_;      // conj(chi2)(k0), k0 = 0..q2
};

/// f at (numerator + i)/c with the tail held below target_error.
SeriesValue f_eval(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                   std::int64_t numerator, std::int64_t c, double target_error);

/// phi(gamma); gamma must have determinant 1 and q1 q2 | c.
SeriesValue phi_eval(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                     const GammaMatrix& gamma, double target_error);

/// S(a, c) through phi and the Gauss sum. truncation_bound certifies
/// |value - S| up to floating-point rounding.
DedekindSumResult s_analytic(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                             std::int64_t a, std::int64_t c, double target_error);

/// L(2, chi1 chi2), using the Euler product when the product is principal.
Complex l2_of_product(const DirichletCharacter& chi1, const DirichletCharacter& chi2);

/// beta(chi1, chi2, m, n) = tau(conj chi1) tau(conj chi2) / (4 pi^2 i) L(2, chi1 chi2)
///                          * ((1 + i) chi2(n) - (1 - i) chi2(m) conj(chi2)(d)),
/// with conj(chi2)(d) taken at d = d_mod_q2.
Complex beta_constant(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                      std::int64_t m, std::int64_t n, std::int64_t d_mod_q2);

/// Predicted main term c' (1 + delta i) / (4 pi) tau(conj chi2) L(2, chi1 chi2) chi2(n)
/// of f((delta + n c' + i)/c), delta = +-1.
Complex f_main_term(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                    std::int64_t c_prime, std::int64_t n, int delta);

}  // namespace nds
