#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "nds/arith.hpp"
#include "nds/characters.hpp"
#include "nds/contfrac.hpp"
#include "nds/dedekind.hpp"
#include "nds/eichler.hpp"
#include "nds/error.hpp"

using namespace nds;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

DirichletCharacter L(std::int64_t p) { return legendre_character(p); }
DirichletCharacter X(std::int64_t q, std::int64_t idx) { return DirichletCharacter::from_index(q, idx); }

double naive_b1(double x) {
  const double frac = x - std::floor(x);
  if (frac < 1e-9 || frac > 1.0 - 1e-9) return 0.0;
  return frac - 0.5;
}

// Direct transcription of the defining double sum.
Complex naive_sum(const DirichletCharacter& chi1, const DirichletCharacter& chi2, std::int64_t a,
                  std::int64_t c) {
  const std::int64_t q1 = chi1.modulus();
  Complex total{0.0, 0.0};
  for (std::int64_t j = 0; j < c; ++j) {
    for (std::int64_t n = 0; n < q1; ++n) {
      const double x = static_cast<double>(n) / q1 + static_cast<double>(a * j % c) / c;
      total += std::conj(chi2(j)) * std::conj(chi1(n)) * naive_b1(static_cast<double>(j) / c) *
               naive_b1(x);
    }
  }
  return total;
}

// f(z) = sum_{k l <= limit} chi1(l) conj(chi2)(k) / l e(k l z).
Complex naive_f(const DirichletCharacter& chi1, const DirichletCharacter& chi2, Complex z,
                std::int64_t limit) {
  Complex total{0.0, 0.0};
  for (std::int64_t l = 1; l <= limit; ++l) {
    const Complex c1 = chi1(l);
    if (c1 == Complex{0.0, 0.0}) continue;
    for (std::int64_t k = 1; k * l <= limit; ++k) {
      const Complex arg = Complex{0.0, two_pi} * static_cast<double>(k * l) * z;
      total += c1 * std::conj(chi2(k)) / static_cast<double>(l) * std::exp(arg);
    }
  }
  return total;
}

struct Pair {
  DirichletCharacter chi1, chi2;
};

std::vector<Pair> pairs() {
  return {{L(3), L(3)},       {X(4, 1), L(3)},       {L(3), X(4, 1)},
          {L(5), L(5)},       {X(5, 1), X(5, 1)},    {X(5, 3), X(5, 1)},
          {X(4, 1), X(5, 1)}, {L(3), L(7)}};
}

}  // namespace

TEST(B1, Values) {
  EXPECT_EQ(b1(0.0), 0.0);
  EXPECT_EQ(b1(3.0), 0.0);
  EXPECT_DOUBLE_EQ(b1(0.25), -0.25);
  EXPECT_DOUBLE_EQ(b1(-0.25), 0.25);
  EXPECT_EQ(b1(7, 7), 0.0);
  EXPECT_DOUBLE_EQ(b1(-1, 4), 0.25);
  EXPECT_DOUBLE_EQ(b1(9, 4), -0.25);
}

TEST(CompleteMatrix, Examples) {
  EXPECT_EQ(complete_matrix(6, 25, 5, 5), (GammaMatrix{6, 5, 25, 21}));
  EXPECT_EQ(complete_matrix(1, 25, 5, 5), (GammaMatrix{1, 0, 25, 1}));
  EXPECT_EQ(complete_matrix(4, 9, 3, 3), (GammaMatrix{4, 3, 9, 7}));
  EXPECT_THROW(complete_matrix(5, 25, 5, 5), AdmissibilityError);
  EXPECT_THROW(complete_matrix(2, 15, 5, 5), AdmissibilityError);
}

TEST(Admissibility, DistinctViolations) {
  auto violation = [](auto&& fn) {
    try {
      fn();
    } catch (const AdmissibilityError& e) {
      return e.violation();
    }
    ADD_FAILURE() << "no error";
    return Violation::domain;
  };
  EXPECT_EQ(violation([] { check_admissible(L(5), L(3)); }), Violation::parity);
  EXPECT_EQ(violation([] { check_admissible(X(5, 0), L(5)); }), Violation::principal);
  // Induced from the character mod 3.
  EXPECT_EQ(violation([] { check_admissible(X(6, 1), L(3)); }), Violation::not_primitive);
  EXPECT_EQ(violation([] { check_admissible(L(5), L(5), 5, 25); }), Violation::not_coprime);
  EXPECT_EQ(violation([] { check_admissible(L(5), L(5), 1, 20); }), Violation::not_divisible);
  EXPECT_EQ(violation([] { s_double_sum(L(5), L(3), 1, 15); }), Violation::parity);
  EXPECT_EQ(to_string(Violation::parity), "parity");
}

TEST(DoubleSum, TheoremValues) {
  EXPECT_NEAR(std::abs(s_double_sum(L(5), L(5), 6, 25).value - 2.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s_double_sum(L(5), L(5), 11, 50).value - 4.0), 0.0, 1e-12);
  EXPECT_EQ(s_double_sum(L(5), L(5), 6, 25).d_used, 21);
  EXPECT_EQ(s_double_sum(L(5), L(5), 6, 25).max_partial_quotient, 5);
}

TEST(DoubleSum, FrozenValues) {
  EXPECT_NEAR(std::abs(s_double_sum(L(3), L(3), 2, 9).value - 2.0 / 3.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s_double_sum(X(4, 1), L(3), 5, 12).value + 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s_double_sum(L(3), X(4, 1), 5, 24).value - 4.0 / 3.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s_double_sum(X(5, 1), X(5, 1), 3, 25).value - Complex(0.4, -0.8)), 0.0,
              1e-12);
}

TEST(DoubleSum, MatchesNaiveSum) {
  std::mt19937_64 rng(11);
  for (const auto& [chi1, chi2] : pairs()) {
    const std::int64_t level = chi1.modulus() * chi2.modulus();
    for (int trial = 0; trial < 20; ++trial) {
      const std::int64_t c = level * std::uniform_int_distribution<std::int64_t>(1, 8)(rng);
      std::int64_t a = std::uniform_int_distribution<std::int64_t>(1, c)(rng);
      while (std::gcd(a, c) != 1) ++a;
      EXPECT_LT(std::abs(s_double_sum(chi1, chi2, a, c).value - naive_sum(chi1, chi2, a, c)), 1e-9)
          << a << "/" << c;
    }
  }
}

TEST(DoubleSum, VanishesAtOne) {
  for (const auto& [chi1, chi2] : pairs()) {
    const std::int64_t level = chi1.modulus() * chi2.modulus();
    for (std::int64_t c = level; c <= 300; c += level)
      EXPECT_LT(std::abs(s_double_sum(chi1, chi2, 1, c).value), 1e-10) << c;
  }
}

TEST(DoubleSum, PeriodicAndTriviallyBounded) {
  for (const auto& [chi1, chi2] : pairs()) {
    const std::int64_t c = 2 * chi1.modulus() * chi2.modulus();
    for (std::int64_t a = 1; a < c; ++a) {
      if (std::gcd(a, c) != 1) continue;
      const Complex s = s_double_sum(chi1, chi2, a, c).value;
      EXPECT_LT(std::abs(s - s_double_sum(chi1, chi2, a + 3 * c, c).value), 1e-10);
      EXPECT_LT(std::abs(s - s_double_sum(chi1, chi2, a - c, c).value), 1e-10);
      EXPECT_LE(std::abs(s), static_cast<double>(chi1.modulus() * c));
    }
  }
}

TEST(ExactSum, AgreesWithFloatingPoint) {
  for (const auto& [chi1, chi2] : pairs()) {
    if (!chi1.is_real() || !chi2.is_real()) continue;
    const std::int64_t c = 3 * chi1.modulus() * chi2.modulus();
    for (std::int64_t a = 1; a < c; ++a) {
      if (std::gcd(a, c) != 1) continue;
      const Rational exact = s_double_sum_exact(chi1, chi2, a, c);
      EXPECT_NEAR(boost::rational_cast<double>(exact), s_double_sum(chi1, chi2, a, c).value.real(),
                  1e-9);
    }
  }
  EXPECT_EQ(s_double_sum_exact(L(5), L(5), 6, 25), Rational(2));
  EXPECT_EQ(s_double_sum_exact(L(3), L(3), 2, 9), Rational(2, 3));
  EXPECT_THROW(s_double_sum_exact(X(5, 1), X(5, 1), 3, 25), AdmissibilityError);
}

TEST(ExactIdentity, Values) {
  EXPECT_EQ(dw_exact(5, 1, 1), Rational(2));
  EXPECT_EQ(dw_exact(5, 1, 5), Rational(0));
  EXPECT_EQ(dw_exact(7, 3, 2), Rational(-12));
}

TEST(ExactIdentity, BothMethods) {
  for (const std::int64_t p : {5, 7, 13}) {
    const DirichletCharacter chi = L(p);
    for (std::int64_t k = 1; k <= 3; ++k) {
      for (std::int64_t l = 1; l <= p; ++l) {
        const std::int64_t a = 1 + l * k * p, c = k * p * p;
        const Rational want = dw_exact(p, k, l);
        EXPECT_EQ(s_double_sum_exact(chi, chi, a, c), want);
        EXPECT_LT(std::abs(s_analytic(chi, chi, a, c, 1e-10).value -
                           boost::rational_cast<double>(want)),
                  1e-6);
      }
    }
  }
}

TEST(Classical, KnownValues) {
  EXPECT_EQ(classical_dedekind_sum(1, 3), Rational(1, 18));
  EXPECT_EQ(classical_dedekind_sum(1, 5), Rational(1, 5));
  EXPECT_EQ(classical_dedekind_sum(2, 5), Rational(0));
  // Reciprocity: s(h,k) + s(k,h) = (h/k + k/h + 1/(hk)) / 12 - 1/4.
  for (std::int64_t h = 1; h <= 30; ++h) {
    for (std::int64_t k = 1; k <= 30; ++k) {
      if (std::gcd(h, k) != 1) continue;
      const Rational rhs =
          (Rational(h, k) + Rational(k, h) + Rational(1, h * k)) / Rational(12) - Rational(1, 4);
      EXPECT_EQ(classical_dedekind_sum(h, k) + classical_dedekind_sum(k, h), rhs) << h << " " << k;
    }
  }
}

TEST(Korobov, SmallValuesAndBounds) {
  EXPECT_DOUBLE_EQ(korobov_sum_1(1, 2), 2.0);
  EXPECT_DOUBLE_EQ(korobov_sum_1(1, 3), 6.0);
  EXPECT_DOUBLE_EQ(korobov_sum_2(1, 3), 4.5);
  for (std::int64_t q = 2; q <= 200; ++q) {
    const double lg = std::log(static_cast<double>(q));
    for (std::int64_t a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      EXPECT_LE(korobov_sum_1(a, q), 2.0 * q * lg);
      EXPECT_LE(korobov_sum_2(a, q), 18.0 * max_partial_quotient(a, q) * lg * lg);
    }
  }
}

TEST(BoundRatio, Examples) {
  EXPECT_NEAR(bound_ratio(2.0, 6, 5), 2.0 / (5.0 * std::pow(std::log(5.0), 2)), 1e-12);
  EXPECT_NEAR(bound_ratio(L(5), L(5), 6, 25), 0.154, 1e-3);
  EXPECT_NEAR(bound_ratio(L(5), L(5), 1, 50), 0.0, 1e-10);
}

TEST(Series, CutoffAndBound) {
  const std::int64_t cutoff = series_cutoff(5, 250, 1e-8);
  EXPECT_GE(cutoff, 50);
  EXPECT_LE(series_tail_bound(5, 250, cutoff), 1e-8);
  EXPECT_GT(series_tail_bound(5, 250, cutoff - 1), 1e-8);
  EXPECT_EQ(series_cutoff(5, 25, 10.0), 5);
}

TEST(FEval, MatchesDoubleSeries) {
  const std::int64_t c = 45;
  const std::vector<Pair> cases = {{L(3), L(3)}, {X(5, 1), L(3)}, {L(3), L(5)}, {X(4, 1), X(5, 1)}};
  for (const auto& [chi1, chi2] : cases) {
    for (const std::int64_t x : {1, 2, 7, 22, 44, -13}) {
      if (std::gcd(x, c) != 1) continue;
      const SeriesValue f = f_eval(chi1, chi2, x, c, 1e-10);
      const Complex direct = naive_f(chi1, chi2, Complex(x, 1.0) / static_cast<double>(c), 10000);
      EXPECT_LT(std::abs(f.value - direct), 1e-5) << chi1.modulus() << " " << chi2.modulus() << " " << x;
      EXPECT_LE(f.truncation_bound, 1e-10);
    }
  }
}

TEST(FEval, DependsOnNumeratorModC) {
  const double eps = 1e-9;
  for (const std::int64_t x : {1, 3, 11, 29}) {
    const SeriesValue f1 = f_eval(L(5), L(5), x, 50, eps);
    const SeriesValue f2 = f_eval(L(5), L(5), x + 50, 50, eps);
    EXPECT_LE(std::abs(f1.value - f2.value), 2 * eps);
  }
  EXPECT_THROW(f_eval(L(5), L(5), 5, 50, 1e-9), AdmissibilityError);
  EXPECT_THROW(f_eval(L(5), L(5), 1, 52, 1e-9), AdmissibilityError);
}

TEST(PhiEval, IndependentOfRepresentative) {
  const double eps = 1e-10;
  const GammaMatrix g = complete_matrix(7, 75, 5, 5);
  const GammaMatrix shifted{g.a, g.a + g.b, g.c, g.c + g.d};
  ASSERT_EQ(shifted.det(), 1);
  EXPECT_LE(std::abs(phi_eval(L(5), L(5), g, eps).value - phi_eval(L(5), L(5), shifted, eps).value),
            2 * eps);
  const GammaMatrix identity_like = complete_matrix(1, 25, 5, 5);
  EXPECT_LT(std::abs(phi_eval(L(5), L(5), identity_like, eps).value), 1e-8);
  EXPECT_THROW(phi_eval(L(5), L(5), GammaMatrix{1, 1, 25, 1}, eps), AdmissibilityError);
}

TEST(PhiEval, IndependentOfZ) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<Pair> cases = {{L(3), L(3)}, {X(4, 1), L(3)}};
  for (const auto& [chi1, chi2] : cases) {
    const std::int64_t c = chi1.modulus() * chi2.modulus();
    for (std::int64_t a = 2; a < c; ++a) {
      if (std::gcd(a, c) != 1) continue;
      const GammaMatrix g = complete_matrix(a, c, chi1.modulus(), chi2.modulus());
      const Complex psi = chi1(g.d) * std::conj(chi2(g.d));
      const Complex phi = phi_eval(chi1, chi2, g, 1e-10).value;
      for (int trial = 0; trial < 2; ++trial) {
        const Complex z{unit(rng) - 0.5, 0.5 + 0.5 * unit(rng)};
        const Complex gz = (static_cast<double>(g.a) * z + static_cast<double>(g.b)) /
                           (static_cast<double>(g.c) * z + static_cast<double>(g.d));
        const Complex direct =
            naive_f(chi1, chi2, gz, 20000) - psi * naive_f(chi1, chi2, z, 20000);
        EXPECT_LT(std::abs(direct - phi), 1e-4) << a << "/" << c << " z=" << z;
      }
    }
  }
}

TEST(Analytic, AgreesWithDoubleSum) {
  EXPECT_LT(std::abs(s_analytic(L(5), L(5), 6, 25, 1e-10).value - 2.0), 1e-6);
  std::mt19937_64 rng(3);
  const auto ps = pairs();
  for (int trial = 0; trial < 60; ++trial) {
    const auto& [chi1, chi2] = ps[trial % ps.size()];
    const std::int64_t level = chi1.modulus() * chi2.modulus();
    const std::int64_t c =
        level * std::uniform_int_distribution<std::int64_t>(1, 600 / level)(rng);
    std::int64_t a = std::uniform_int_distribution<std::int64_t>(1, c - 1)(rng);
    while (std::gcd(a, c) != 1) a = a % (c - 1) + 1;
    const DedekindSumResult an = s_analytic(chi1, chi2, a, c, 1e-10);
    const DedekindSumResult ds = s_double_sum(chi1, chi2, a, c);
    EXPECT_LE(std::abs(an.value - ds.value), 1e-6 + an.truncation_bound) << a << "/" << c;
    EXPECT_EQ(an.d_used, ds.d_used);
    EXPECT_EQ(an.max_partial_quotient, ds.max_partial_quotient);
  }
}

TEST(Analytic, ConjugationSymmetry) {
  // Conjugating both characters conjugates the sum.
  for (std::int64_t a = 1; a < 50; ++a) {
    if (std::gcd(a, std::int64_t{50}) != 1) continue;
    const Complex s = s_analytic(X(5, 1), X(5, 1), a, 50, 1e-10).value;
    const Complex t = s_analytic(X(5, 3), X(5, 3), a, 50, 1e-10).value;
    EXPECT_LT(std::abs(s - std::conj(t)), 1e-8) << a;
  }
}

TEST(Analytic, VanishesAtOne) {
  for (const auto& [chi1, chi2] : pairs()) {
    const std::int64_t level = chi1.modulus() * chi2.modulus();
    for (std::int64_t c = level; c <= 600; c += level)
      EXPECT_LT(std::abs(s_analytic(chi1, chi2, 1, c, 1e-10).value), 1e-8) << c;
  }
}

TEST(Beta, Examples) {
  EXPECT_LT(std::abs(beta_constant(L(5), L(5), 0, 0, 1)), 1e-15);
  EXPECT_LT(std::abs(beta_constant(L(5), L(5), 1, 1, 1) - 0.4), 1e-9);
  // conj(chi2), chi2 with m = n: chi2(-n) (q / 12) prod (1 - p^-2).
  for (const auto& chi2 : {X(5, 1), L(5)}) {
    for (std::int64_t n = 1; n < 5; ++n) {
      const Complex want = chi2(-n) * (5.0 / 12.0) * (24.0 / 25.0);
      EXPECT_LT(std::abs(beta_constant(chi2.conj(), chi2, n, n, 1) - want), 1e-9)
          << chi2.index() << " " << n;
    }
  }
}

TEST(Beta, MainTermMatchesExactIdentity) {
  // c = 25k, a = 1 + 5k: beta c' = 2k.
  for (std::int64_t k = 1; k <= 10; ++k) {
    const Complex main = beta_constant(L(5), L(5), 1, 1, 1) * static_cast<double>(5 * k);
    EXPECT_LT(std::abs(main - boost::rational_cast<double>(dw_exact(5, k, 1))), 1e-9);
  }
}

TEST(Beta, MainTermBranchesAreConjugateFactors) {
  for (const auto& [chi1, chi2] : pairs()) {
    const Complex plus = f_main_term(chi1, chi2, 10, 1, 1);
    const Complex minus = f_main_term(chi1, chi2, 10, 1, -1);
    const Complex base = f_main_term(chi1, chi2, 10, 1, 1) / Complex(1.0, 1.0);
    EXPECT_LT(std::abs(plus - base * Complex(1.0, 1.0)), 1e-12);
    EXPECT_LT(std::abs(minus - base * Complex(1.0, -1.0)), 1e-12);
  }
  EXPECT_THROW(f_main_term(L(5), L(5), 10, 1, 0), AdmissibilityError);
}
