#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nds/characters.hpp"
#include "nds/dedekind.hpp"

namespace nds {

enum class ScanMethod { analytic, double_sum, both };

struct ScanConfig {
  CharacterLabel chi1{1, 0};
  CharacterLabel chi2{1, 0};
  std::int64_t c_max = 0;
  double alpha = 1.0;
  ScanMethod method = ScanMethod::analytic;
  double target_error = 1e-8;
  unsigned workers = 1;
  std::string output_path;
  bool record_all_pairs = true;  // false: only pairs exceeding the threshold
  // Share of analytic evaluations re-checked against the finite sum.
  double oracle_fraction = 0.01;
  std::uint64_t seed = 0;

  /// Throws AdmissibilityError on alpha <= 0, target_error outside (0, 1e-3],
  /// c_max < 1 or workers == 0.
  void validate() const;
};

struct ScanRecord {
  std::int64_t c = 0;
  std::int64_t a = 0;
  std::int64_t d = 0;
  double s_re = 0.0;
  double s_im = 0.0;
  double s_abs = 0.0;
  std::int64_t max_partial_quotient = 0;  // D(a, c')
  std::int64_t cf_len = 0;                // partial quotients of (a mod c') / c'
  double bound_ratio = 0.0;
  bool exceeds_threshold = false;
};

struct ScanResult {
  std::int64_t count = 0;  // F(alpha, C)
  std::int64_t pairs = 0;  // admissible (a, c) visited
  double threshold = 0.0;  // alpha log^3 C
  double max_bound_ratio = 0.0;
  double max_truncation_bound = 0.0;
  std::int64_t oracle_checks = 0;
  double max_oracle_discrepancy = 0.0;
  std::vector<ScanRecord> records;  // sorted by (c, a)
};

/// Counts F(alpha, C) = #{(a, c): 1 <= a < c <= C, gcd(a, c) = 1, q1 q2 | c,
/// |S(a, c)| > alpha log^3 C}. Work is split by c; the result does not depend
/// on the worker count.
ScanResult scan_F(const ScanConfig& config);

/// The exceedance threshold alpha log^3 C.
double exceedance_threshold(double alpha, std::int64_t c_max);

/// sum over a mod c, gcd(a, c) = 1, of |S(a, c)|^2.
double second_moment(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                     std::int64_t c, Method method = Method::double_sum,
                     double target_error = 1e-10);

struct MomentRow {
  std::int64_t c = 0;
  std::int64_t units = 0;  // phi(c)
  double moment = 0.0;
  double exponent = 0.0;  // log M(c) / log c
};

std::vector<MomentRow> moment_table(const DirichletCharacter& chi1,
                                    const DirichletCharacter& chi2,
                                    std::span<const std::int64_t> cs);

struct LargeValueRecord {
  std::int64_t k = 0;
  std::int64_t c = 0;
  std::int64_t c_prime = 0;
  std::int64_t a = 0;
  std::int64_t d = 0;
  std::int64_t m = 0;
  Complex s;
  Complex beta;
  Complex main_term;
  double residual = 0.0;             // |S - beta c'|
  double normalized_residual = 0.0;  // residual / (1 + log c')
  bool skipped = false;              // gcd(a, c) != 1
};

/// For each k in [k_min, k_max]: c = k q1 q2, c' = c / q2, a = 1 + n c',
/// and the comparison of S(a, c) with its predicted main term beta c'.
std::vector<LargeValueRecord> largeval_sweep(const DirichletCharacter& chi1,
                                             const DirichletCharacter& chi2, std::int64_t n,
                                             std::int64_t k_min, std::int64_t k_max,
                                             Method method = Method::analytic,
                                             double target_error = 1e-10);

}  // namespace nds
