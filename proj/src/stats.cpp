#include "nds/stats.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <optional>
#include <random>
#include <thread>

#include "nds/contfrac.hpp"
#include "nds/eichler.hpp"
#include "nds/error.hpp"

namespace nds {

void ScanConfig::validate() const {
  if (!(alpha > 0.0)) throw AdmissibilityError(Violation::domain, "alpha must be positive");
  if (!(target_error > 0.0 && target_error <= 1e-3))
    throw AdmissibilityError(Violation::domain, "target error must lie in (0, 1e-3]");
  if (c_max < 1) throw AdmissibilityError(Violation::domain, "C must be >= 1");
  if (workers == 0) throw AdmissibilityError(Violation::domain, "workers must be >= 1");
  if (!(oracle_fraction >= 0.0 && oracle_fraction <= 1.0))
    throw AdmissibilityError(Violation::domain, "oracle fraction must lie in [0, 1]");
}

double exceedance_threshold(double alpha, std::int64_t c_max) {
  const double lg = std::log(static_cast<double>(c_max));
  return alpha * lg * lg * lg;
}

namespace {

struct Batch {
  std::vector<ScanRecord> records;
  std::int64_t count = 0;
  std::int64_t pairs = 0;
  double max_bound_ratio = 0.0;
  double max_truncation_bound = 0.0;
  std::int64_t oracle_checks = 0;
  double max_oracle_discrepancy = 0.0;
};

Batch scan_one_c(const ScanConfig& cfg, const DirichletCharacter& chi1,
                 const DirichletCharacter& chi2, std::int64_t c, double threshold) {
  Batch out;
  std::optional<EichlerEvaluator> evaluator;
  if (cfg.method != ScanMethod::double_sum) evaluator.emplace(chi1, chi2, c, cfg.target_error);

  // Seeded per c so the subsample is the same however c values are assigned to workers.
  std::mt19937_64 rng(cfg.seed ^ (static_cast<std::uint64_t>(c) * 0x9E3779B97F4A7C15ULL));
  std::bernoulli_distribution sample(cfg.oracle_fraction);
  const std::int64_t c_prime = c / chi2.modulus();
  const double log_cp = std::log(static_cast<double>(c_prime));

  for (std::int64_t a = 1; a < c; ++a) {
    if (std::gcd(a, c) != 1) continue;
    ++out.pairs;

    DedekindSumResult s;
    if (cfg.method == ScanMethod::double_sum) {
      s = s_double_sum(chi1, chi2, a, c);
    } else {
      s = evaluator->dedekind_sum(a);
      const bool check = cfg.method == ScanMethod::both || sample(rng);
      if (check) {
        const DedekindSumResult exact = s_double_sum(chi1, chi2, a, c);
        ++out.oracle_checks;
        out.max_oracle_discrepancy =
            std::max(out.max_oracle_discrepancy, std::abs(exact.value - s.value));
      }
    }

    ScanRecord r;
    r.c = c;
    r.a = a;
    r.d = s.d_used;
    r.s_re = s.value.real();
    r.s_im = s.value.imag();
    r.s_abs = std::hypot(r.s_re, r.s_im);
    const ContinuedFraction cf = expand(mod(a, c_prime), c_prime);
    r.max_partial_quotient = *std::max_element(cf.partials.begin(), cf.partials.end());
    r.cf_len = static_cast<std::int64_t>(cf.length());
    r.bound_ratio = r.s_abs / (static_cast<double>(r.max_partial_quotient) * log_cp * log_cp);
    r.exceeds_threshold = r.s_abs > threshold;

    if (r.exceeds_threshold) ++out.count;
    out.max_bound_ratio = std::max(out.max_bound_ratio, r.bound_ratio);
    out.max_truncation_bound = std::max(out.max_truncation_bound, s.truncation_bound);
    if (cfg.record_all_pairs || r.exceeds_threshold) out.records.push_back(r);
  }
  return out;
}

}  // namespace

ScanResult scan_F(const ScanConfig& config) {
  config.validate();
  const DirichletCharacter chi1 = DirichletCharacter::from_index(config.chi1.q, config.chi1.index);
  const DirichletCharacter chi2 = DirichletCharacter::from_index(config.chi2.q, config.chi2.index);
  check_admissible(chi1, chi2);

  ScanResult result;
  result.threshold = exceedance_threshold(config.alpha, config.c_max);

  const std::int64_t level = chi1.modulus() * chi2.modulus();
  std::vector<std::int64_t> cs;
  for (std::int64_t c = level; c <= config.c_max; c += level) cs.push_back(c);
  if (cs.empty()) return result;

  std::vector<Batch> batches(cs.size());
  const unsigned workers = std::min<unsigned>(config.workers, static_cast<unsigned>(cs.size()));
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](unsigned w) {
    try {
      // Interleaved assignment balances the O(c) cost per slot.
      for (std::size_t i = w; i < cs.size(); i += workers)
        batches[i] = scan_one_c(config, chi1, chi2, cs[i], result.threshold);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (auto& b : batches) {
    result.count += b.count;
    result.pairs += b.pairs;
    result.max_bound_ratio = std::max(result.max_bound_ratio, b.max_bound_ratio);
    result.max_truncation_bound = std::max(result.max_truncation_bound, b.max_truncation_bound);
    result.oracle_checks += b.oracle_checks;
    result.max_oracle_discrepancy = std::max(result.max_oracle_discrepancy, b.max_oracle_discrepancy);
    result.records.insert(result.records.end(), b.records.begin(), b.records.end());
  }
  return result;
}

double second_moment(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                     std::int64_t c, Method method, double target_error) {
  check_admissible(chi1, chi2, 1, c);
  std::optional<EichlerEvaluator> evaluator;
  if (method == Method::analytic) evaluator.emplace(chi1, chi2, c, target_error);
  double total = 0.0;
  for (std::int64_t a = 1; a < c; ++a) {
    if (std::gcd(a, c) != 1) continue;
    const Complex s = method == Method::analytic ? evaluator->dedekind_sum(a).value
                                                 : s_double_sum(chi1, chi2, a, c).value;
    total += std::norm(s);
  }
  return total;
}

std::vector<MomentRow> moment_table(const DirichletCharacter& chi1,
                                    const DirichletCharacter& chi2,
                                    std::span<const std::int64_t> cs) {
  std::vector<MomentRow> rows;
  for (const std::int64_t c : cs) {
    MomentRow row;
    row.c = c;
    row.units = euler_phi(c);
    row.moment = second_moment(chi1, chi2, c);
    row.exponent = std::log(row.moment) / std::log(static_cast<double>(c));
    rows.push_back(row);
  }
  return rows;
}

std::vector<LargeValueRecord> largeval_sweep(const DirichletCharacter& chi1,
                                             const DirichletCharacter& chi2, std::int64_t n,
                                             std::int64_t k_min, std::int64_t k_max,
                                             Method method, double target_error) {
  check_admissible(chi1, chi2);
  if (k_min < 1 || k_max < k_min)
    throw AdmissibilityError(Violation::domain, "largeval needs 1 <= k_min <= k_max");
  const std::int64_t q1 = chi1.modulus();
  const std::int64_t q2 = chi2.modulus();

  std::vector<LargeValueRecord> out;
  for (std::int64_t k = k_min; k <= k_max; ++k) {
    LargeValueRecord r;
    r.k = k;
    r.c = k * q1 * q2;
    r.c_prime = r.c / q2;
    r.a = 1 + n * r.c_prime;
    if (std::gcd(r.a, r.c) != 1) {
      r.skipped = true;
      out.push_back(r);
      continue;
    }
    r.d = complete_matrix(r.a, r.c, q1, q2).d;
    // a = 1 mod c' forces d = 1 mod c'.
    r.m = (1 - r.d) / r.c_prime;
    r.s = method == Method::analytic ? s_analytic(chi1, chi2, r.a, r.c, target_error).value
                                     : s_double_sum(chi1, chi2, r.a, r.c).value;
    r.beta = beta_constant(chi1, chi2, r.m, n, mod(r.d, q2));
    r.main_term = r.beta * static_cast<double>(r.c_prime);
    r.residual = std::abs(r.s - r.main_term);
    r.normalized_residual = r.residual / (1.0 + std::log(static_cast<double>(r.c_prime)));
    out.push_back(r);
  }
  return out;
}

}  // namespace nds
