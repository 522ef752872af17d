#include "nds/eichler.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "nds/contfrac.hpp"
#include "nds/error.hpp"

namespace nds {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr Complex i_unit{0.0, 1.0};

}  // namespace

double series_tail_bound(std::int64_t q2, std::int64_t c, std::int64_t cutoff) {
  const double cc = static_cast<double>(c);
  const double ll = static_cast<double>(cutoff);
  return 2.0 * static_cast<double>(q2) * (cc / (two_pi * ll)) * std::exp(-two_pi * ll / cc);
}

std::int64_t series_cutoff(std::int64_t q2, std::int64_t c, double target_error) {
  if (!(target_error > 0.0))
    throw AdmissibilityError(Violation::domain, "target error must be positive");
  std::int64_t lo = std::max<std::int64_t>(1, c / q2);
  if (series_tail_bound(q2, c, lo) <= target_error) return lo;
  std::int64_t hi = lo;
  while (series_tail_bound(q2, c, hi) > target_error) {
    lo = hi;
    hi *= 2;
  }
  // bound(lo) > target >= bound(hi)
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (series_tail_bound(q2, c, mid) <= target_error)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

EichlerEvaluator::EichlerEvaluator(DirichletCharacter chi1, DirichletCharacter chi2,
                                   std::int64_t c, double target_error)
    : chi1_(std::move(chi1)), chi2_(std::move(chi2)), c_(c) {
  const std::int64_t q2 = chi2_.modulus();
  if (c < 1 || c % q2 != 0)
    throw AdmissibilityError(Violation::not_divisible,
                             "q2 = " + std::to_string(q2) + " does not divide c = " +
                                 std::to_string(c));
  c_prime_ = c / q2;
  cutoff_ = series_cutoff(q2, c, target_error);
  tail_bound_ = series_tail_bound(q2, c, cutoff_);
  tau_conj_chi1_ = gauss_sum(chi1_.conj());

  const double cc = static_cast<double>(c_);
  roots_.resize(c_);
  half_sine_sq_.resize(c_);
  for (std::int64_t j = 0; j < c_; ++j) {
    const double x = static_cast<double>(j) / cc;
    roots_[j] = std::polar(1.0, two_pi * x);
    const double s = std::sin(std::numbers::pi * x);
    half_sine_sq_[j] = s * s;
  }
  theta_expm1_.resize(cutoff_ + 1);
  decay_.resize(cutoff_ + 1);
  const double cp = static_cast<double>(c_prime_);
  for (std::int64_t l = 1; l <= cutoff_; ++l) {
    theta_expm1_[l] = std::expm1(-two_pi * static_cast<double>(l) / cp);
    decay_[l] = std::exp(-two_pi * static_cast<double>(l) / cc);
  }
  chi2_bar_.resize(q2 + 1);
  for (std::int64_t k = 0; k <= q2; ++k) chi2_bar_[k] = std::conj(chi2_(k));
}

SeriesValue EichlerEvaluator::f(std::int64_t numerator) const {
  if (std::gcd(numerator, c_) != 1)
    throw AdmissibilityError(Violation::not_coprime, "f: numerator must be coprime to c");
  const std::int64_t q2 = chi2_.modulus();
  const std::int64_t x = mod(numerator, c_);

  Complex total{0.0, 0.0};
  for (std::int64_t l = 1; l <= cutoff_; ++l) {
    if (chi1_.phase(l) < 0) continue;

    // 1 - theta with theta = exp(u) e(v / 2 pi), u = -2 pi l / c', v = 2 pi (l x mod c') / c'.
    // Written as 2 sin^2(v/2) - expm1(u) cos v - i exp(u) sin v to avoid
    // cancellation when theta is close to 1.
    const std::int64_t j = (l % c_prime_) * (x % c_prime_) % c_prime_ * q2;
    const double em1 = theta_expm1_[l];
    const Complex root = roots_[j];
    const Complex one_minus_theta{2.0 * half_sine_sq_[j] - em1 * root.real(),
                                  -(1.0 + em1) * root.imag()};
    if (l >= c_prime_ && std::norm(one_minus_theta) < 0.25)
      throw std::logic_error("f: |1 - theta|^-1 exceeded 2 beyond l = c'");

    Complex inner{0.0, 0.0};
    const std::int64_t lm = l % c_;
    double weight = 1.0;
    for (std::int64_t k0 = 1; k0 <= q2; ++k0) {
      weight *= decay_[l];
      if (chi2_bar_[k0] == Complex{0.0, 0.0}) continue;
      inner += chi2_bar_[k0] * roots_[k0 * lm % c_ * x % c_] * weight;
    }
    total += chi1_(l) * inner / (static_cast<double>(l) * one_minus_theta);
  }
  return {total, tail_bound_, cutoff_};
}

SeriesValue EichlerEvaluator::phi(const GammaMatrix& gamma) const {
  if (gamma.det() != 1)
    throw AdmissibilityError(Violation::domain, "phi: matrix determinant is not 1");
  if (gamma.c != c_)
    throw AdmissibilityError(Violation::domain, "phi: matrix c does not match evaluator");
  if (gamma.c % (chi1_.modulus() * chi2_.modulus()) != 0)
    throw AdmissibilityError(Violation::not_divisible, "phi: q1*q2 does not divide c");

  const SeriesValue at_gz = f(gamma.a);
  const SeriesValue at_z = f(-gamma.d);
  const Complex psi = chi1_(gamma.d) * std::conj(chi2_(gamma.d));
  return {at_gz.value - psi * at_z.value, at_gz.truncation_bound + at_z.truncation_bound,
          at_gz.terms + at_z.terms};
}

DedekindSumResult EichlerEvaluator::dedekind_sum(std::int64_t a) const {
  check_admissible(chi1_, chi2_, a, c_);
  const GammaMatrix gamma = complete_matrix(a, c_, chi1_.modulus(), chi2_.modulus());
  const SeriesValue p = phi(gamma);

  DedekindSumResult result;
  result.value = tau_conj_chi1_ / (std::numbers::pi * i_unit) * p.value;
  result.method = Method::analytic;
  result.truncation_bound =
      std::sqrt(static_cast<double>(chi1_.modulus())) / std::numbers::pi * p.truncation_bound;
  result.d_used = gamma.d;
  result.max_partial_quotient = max_partial_quotient(a, c_prime_);
  return result;
}

SeriesValue f_eval(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                   std::int64_t numerator, std::int64_t c, double target_error) {
  return EichlerEvaluator(chi1, chi2, c, target_error).f(numerator);
}

SeriesValue phi_eval(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                     const GammaMatrix& gamma, double target_error) {
  if (gamma.c < 1) throw AdmissibilityError(Violation::domain, "phi: c must be >= 1");
  // Each f evaluation gets half the budget.
  return EichlerEvaluator(chi1, chi2, gamma.c, target_error / 2.0).phi(gamma);
}

DedekindSumResult s_analytic(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                             std::int64_t a, std::int64_t c, double target_error) {
  check_admissible(chi1, chi2, a, c);
  return EichlerEvaluator(chi1, chi2, c, target_error).dedekind_sum(a);
}

Complex l2_of_product(const DirichletCharacter& chi1, const DirichletCharacter& chi2) {
  const DirichletCharacter product = character_product(chi1, chi2);
  if (product.is_principal()) return l2_principal(product.modulus());
  return l2_value(product);
}

Complex beta_constant(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                      std::int64_t m, std::int64_t n, std::int64_t d_mod_q2) {
  check_admissible(chi1, chi2);
  const Complex tau1 = gauss_sum(chi1.conj());
  const Complex tau2 = gauss_sum(chi2.conj());
  const Complex factor =
      (1.0 + i_unit) * chi2(n) - (1.0 - i_unit) * chi2(m) * std::conj(chi2(d_mod_q2));
  const double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
  return tau1 * tau2 / (four_pi_sq * i_unit) * l2_of_product(chi1, chi2) * factor;
}

Complex f_main_term(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                    std::int64_t c_prime, std::int64_t n, int delta) {
  if (delta != 1 && delta != -1)
    throw AdmissibilityError(Violation::domain, "f_main_term: delta must be +1 or -1");
  const Complex tau2 = gauss_sum(chi2.conj());
  return static_cast<double>(c_prime) * (1.0 + static_cast<double>(delta) * i_unit) /
         (4.0 * std::numbers::pi) * tau2 * l2_of_product(chi1, chi2) * chi2(n);
}

}  // namespace nds
