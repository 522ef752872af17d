#include "nds/verify.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "nds/contfrac.hpp"
#include "nds/dedekind.hpp"
#include "nds/eichler.hpp"

namespace nds::verify {

namespace {

class Tally {
 public:
  explicit Tally(std::string name) { report_.name = std::move(name); }

  // The message is only formatted for the first failure.
  template <typename... Args>
  void check(bool ok, fmt::format_string<Args...> what, Args&&... args) {
    ++report_.checks;
    if (ok) return;
    if (report_.failures == 0) report_.detail = fmt::format(what, std::forward<Args>(args)...);
    ++report_.failures;
  }

  SuiteReport finish(const std::string& summary) {
    if (report_.failures == 0) report_.detail = summary;
    return report_;
  }

 private:
  SuiteReport report_;
};

SuiteReport characters_suite() {
  Tally t("characters");
  std::mt19937_64 rng(1);
  for (std::int64_t q = 1; q <= 50; ++q) {
    const auto chars = enumerate_characters(q);
    t.check(static_cast<std::int64_t>(chars.size()) == euler_phi(q),
            "q={}: wrong character count", q);
    for (const auto& chi : chars) {
      if (!chi.is_principal()) {
        Complex sum{0.0, 0.0};
        for (std::int64_t n = 0; n < q; ++n) sum += chi(n);
        t.check(std::abs(sum) < 1e-10, "q={} idx={}: nonzero sum", q, chi.index());
      }
      if (is_primitive(chi))
        t.check(std::abs(std::abs(gauss_sum(chi)) - std::sqrt(static_cast<double>(q))) < 1e-9,
                "q={} idx={}: |tau| != sqrt q", q, chi.index());
      std::uniform_int_distribution<std::int64_t> pick(0, 10 * q);
      for (int i = 0; i < 1000; ++i) {
        const std::int64_t m = pick(rng), n = pick(rng);
        t.check(std::abs(chi(m * n) - chi(m) * chi(n)) < 1e-12,
                "q={} idx={}: not multiplicative at ({}, {})", q, chi.index(), m, n);
      }
    }
  }
  return t.finish("unit group sizes, orthogonality, |tau| = sqrt q, multiplicativity");
}

SuiteReport contfrac_suite() {
  Tally t("contfrac");
  for (std::int64_t c = 2; c <= 500; ++c) {
    for (std::int64_t a = 1; a < c; ++a) {
      if (std::gcd(a, c) != 1) continue;
      const ContinuedFraction rev = reverse_denominator_expansion(a, c);
      const std::int64_t d = inverse_mod(a, c);
      t.check(rev.numerator == d && rev.denominator == c,
              "reversal of {}/{} gave {}/{}", a, c, rev.numerator, rev.denominator);
      const int delta = digit_symmetry_delta(a, c);
      t.check(delta >= -1 && delta <= 1, "|delta| > 1 at {}/{}", a, c);
      if (c <= 300) {
        const IntMatrix2 m = matrix_factorization(to_parity_form(expand(a, c), true));
        t.check(m.det() == 1 && m.a == a && m.c == c && m.d == d && m.b == (a * d - 1) / c,
                "matrix factorization of {}/{}", a, c);
      }
    }
  }
  return t.finish("reversal and |delta| <= 1 for c <= 500, factorization for c <= 300");
}

SuiteReport dw_suite(double eps) {
  Tally t("dw");
  for (const std::int64_t p : {5, 7, 13}) {
    const DirichletCharacter chi = legendre_character(p);
    for (std::int64_t k = 1; k <= 8; ++k) {
      for (std::int64_t l = 1; l <= p; ++l) {
        const std::int64_t a = 1 + l * k * p, c = k * p * p;
        const Rational expected = dw_exact(p, k, l);
        const double want = boost::rational_cast<double>(expected);
        const Complex s1 = s_double_sum(chi, chi, a, c).value;
        const DedekindSumResult s2 = s_analytic(chi, chi, a, c, eps);
        t.check(s_double_sum_exact(chi, chi, a, c) == expected,
                "exact sum at p={} k={} l={}", p, k, l);
        t.check(std::abs(s1 - want) <= 1e-6, "double sum at p={} k={} l={}", p, k, l);
        t.check(std::abs(s2.value - want) <= 1e-6,
                "analytic at p={} k={} l={}", p, k, l);
      }
    }
  }
  return t.finish("S(1 + lkp, kp^2) = chi(-l) k (p^2 - 1) / 12 for p in {5, 7, 13}, k <= 8");
}

SuiteReport vanish_suite(double eps) {
  Tally t("vanish");
  const std::vector<std::pair<DirichletCharacter, DirichletCharacter>> pairs = {
      {legendre_character(3), legendre_character(3)},
      {DirichletCharacter::from_index(4, 1), legendre_character(3)},
      {legendre_character(5), legendre_character(5)}};
  for (const auto& [chi1, chi2] : pairs) {
    const std::int64_t level = chi1.modulus() * chi2.modulus();
    for (std::int64_t c = level; c <= 600; c += level) {
      const double s1 = std::abs(s_double_sum(chi1, chi2, 1, c).value);
      const double s2 = std::abs(s_analytic(chi1, chi2, 1, c, eps).value);
      t.check(s1 <= 1e-8 && s2 <= 1e-8,
              "|S(1, {})| = {:.3g} / {:.3g} for q1={}, q2={}", c, s1, s2,
                          chi1.modulus(), chi2.modulus());
    }
  }
  return t.finish("S(1, c) = 0 for c <= 600 and pairs (3,3), (4,3), (5,5)");
}

SuiteReport agreement_suite(const Options& o) {
  Tally t("agreement");
  const auto pairs = sample_pairs();
  std::mt19937_64 rng(o.seed);
  double worst = 0.0;
  for (std::int64_t trial = 0; trial < o.trials; ++trial) {
    const auto& [chi1, chi2] = pairs[std::uniform_int_distribution<std::size_t>(0, pairs.size() - 1)(rng)];
    const std::int64_t level = chi1.modulus() * chi2.modulus();
    const std::int64_t kmax = std::max<std::int64_t>(1, o.cmax / level);
    const std::int64_t c = level * std::uniform_int_distribution<std::int64_t>(1, kmax)(rng);
    std::uniform_int_distribution<std::int64_t> pick(1, c - 1);
    std::int64_t a = pick(rng);
    while (std::gcd(a, c) != 1) a = pick(rng);
    const Complex s1 = s_double_sum(chi1, chi2, a, c).value;
    const DedekindSumResult s2 = s_analytic(chi1, chi2, a, c, o.target_error);
    const double diff = std::abs(s1 - s2.value);
    worst = std::max(worst, diff);
    t.check(diff <= 1e-6 + s2.truncation_bound,
            "methods differ by {:.3g} at a={}, c={}", diff, a, c);
  }
  return t.finish(fmt::format("{} trials, max |double - analytic| = {:.3g}", o.trials, worst));
}

SuiteReport korobov_suite(std::int64_t qmax) {
  Tally t("korobov");
  for (std::int64_t q = 2; q <= qmax; ++q) {
    const double lg = std::log(static_cast<double>(q));
    for (std::int64_t a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      t.check(korobov_sum_1(a, q) <= 2.0 * q * lg, "first bound at a={}, q={}", a, q);
      t.check(korobov_sum_2(a, q) <= 18.0 * static_cast<double>(max_partial_quotient(a, q)) * lg * lg,
              "second bound at a={}, q={}", a, q);
    }
  }
  return t.finish(fmt::format("both bounds for all coprime (a, q), q <= {}", qmax));
}

SuiteReport inequalities_suite(std::uint64_t seed) {
  Tally t("inequalities");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Complex one{1.0, 0.0};
  for (int i = 0; i < 100000; ++i) {
    const double r = unit(rng);
    const double angle = 2.0 * std::numbers::pi * (unit(rng) - 0.5) * 4.0;
    const double lhs = std::abs(one - std::polar(1.0, angle));
    const double rhs = 2.0 * std::abs(one - std::polar(r, angle));
    t.check(lhs <= rhs * (1.0 + 1e-12) + 1e-300, "|1 - e^(i phi)| bound at r={}", r);

    const double x = (unit(rng) - 0.5) * 10.0;
    const double dist = std::abs(x - std::round(x));
    if (dist == 0.0) continue;
    const double inv = 1.0 / std::abs(one - std::polar(1.0, 2.0 * std::numbers::pi * x));
    t.check(inv <= 0.25 / dist * (1.0 + 1e-9), "|1 - e(x)|^-1 bound at x={}", x);
  }
  return t.finish("pointwise inequalities on 100000 random samples");
}

SuiteReport hensley_suite() {
  Tally t("hensley");
  constexpr std::int64_t C = 3000;
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  std::string summary;
  for (const double alpha : {1.0, 2.0}) {
    const HensleyCounts counts = hensley_counts(alpha, C);
    const double density = static_cast<double>(counts.phi) / (3.0 / pi2 * C * C);
    const double expected = std::exp(-12.0 / (alpha * pi2));
    t.check(std::abs(density - expected) <= 0.10,
            "alpha={}: density {:.4f} vs {:.4f}", alpha, density, expected);
    t.check(counts.phi + counts.g == coprime_pair_total(C), "Phi + G != total");
    summary += fmt::format("alpha={}: {:.4f} vs {:.4f}; ", alpha, density, expected);
  }
  return t.finish(summary);
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"characters", "contfrac", "dw", "vanish", "agreement", "korobov", "inequalities", "hensley"};
}

std::vector<std::pair<DirichletCharacter, DirichletCharacter>> sample_pairs() {
  const DirichletCharacter chi4 = DirichletCharacter::from_index(4, 1);
  const DirichletCharacter chi5 = DirichletCharacter::from_index(5, 1);  // order 4, odd
  return {
      {legendre_character(3), legendre_character(3)},
      {chi4, legendre_character(3)},
      {legendre_character(3), chi4},
      {legendre_character(5), legendre_character(5)},
      {chi5, chi5},
      {chi5.conj(), chi5},
      {chi4, chi5},
      {legendre_character(3), legendre_character(7)},
  };
}

SuiteReport run_suite(std::string_view name, const Options& options) {
  if (name == "characters") return characters_suite();
  if (name == "contfrac") return contfrac_suite();
  if (name == "dw") return dw_suite(options.target_error);
  if (name == "vanish") return vanish_suite(options.target_error);
  if (name == "agreement") return agreement_suite(options);
  if (name == "korobov") return korobov_suite(options.qmax);
  if (name == "inequalities") return inequalities_suite(options.seed);
  if (name == "hensley") return hensley_suite();
  throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

}  // namespace nds::verify
