// Command-line front end: compute, cf, hensley, scan, moment, largeval, verify.
//
// Exit codes: 0 success, 1 verification failure, 2 validation error, 3 I/O error.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "nds/characters.hpp"
#include "nds/contfrac.hpp"
#include "nds/dedekind.hpp"
#include "nds/eichler.hpp"
#include "nds/error.hpp"
#include "nds/records.hpp"
#include "nds/serialization.hpp"
#include "nds/stats.hpp"
#include "nds/verify.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct PairFlags {
  std::int64_t q1 = 0;
  std::string chi1 = "legendre";
  std::int64_t q2 = 0;
  std::string chi2 = "legendre";

  void add_to(CLI::App* sub) {
    sub->add_option("--q1", q1, "modulus of chi1")->required();
    sub->add_option("--chi1", chi1, "chi1 handle: legendre | idx:<k>")->capture_default_str();
    sub->add_option("--q2", q2, "modulus of chi2")->required();
    sub->add_option("--chi2", chi2, "chi2 handle: legendre | idx:<k>")->capture_default_str();
  }

  std::pair<nds::DirichletCharacter, nds::DirichletCharacter> resolve() const {
    return {nds::parse_character(q1, chi1), nds::parse_character(q2, chi2)};
  }
};

std::string describe(const nds::DirichletCharacter& chi) {
  return fmt::format("{{q={}, index={}, parity={:+d}}}", chi.modulus(), chi.index(), chi.parity());
}

std::string format_complex(nds::Complex z) {
  if (std::abs(z.imag()) <= 1e-9 * std::max(1.0, std::abs(z.real())))
    return fmt::format("{:.6f}", z.real());
  return fmt::format("{:.6f} {} {:.6f}i", z.real(), z.imag() < 0 ? '-' : '+', std::abs(z.imag()));
}

std::string format_cf(const nds::ContinuedFraction& cf) {
  std::string out = fmt::format("[{}", cf.a0);
  for (std::size_t i = 0; i < cf.partials.size(); ++i)
    out += fmt::format("{}{}", i == 0 ? ";" : ",", cf.partials[i]);
  return out + "]";
}

void log_config(const std::string& line) { std::cerr << "# " << line << '\n'; }

// Expands "--config file.json" (a flat JSON object of flag values) into
// explicit flags placed after the subcommand, skipping flags already given.
// Character objects {"q": .., "index": ..} under chi1/chi2 set the modulus and
// an idx:<k> handle.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end()) return args;
  if (it + 1 == args.end()) throw CLI::ArgumentMismatch("--config needs a file path");
  const std::string path = *(it + 1);
  args.erase(it, it + 2);

  std::ifstream in(path);
  if (!in) throw nds::IoError("cannot read config file '" + path + "'");
  nlohmann::json flags;
  try {
    flags = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw CLI::ConversionError(std::string("config file: ") + e.what());
  }
  if (!flags.is_object()) throw CLI::ConversionError("config file must hold a JSON object");

  std::set<std::string> given;
  for (const auto& a : args)
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos
                                                           ? std::string::npos
                                                           : a.find('=') - 2));
  std::vector<std::string> extra;
  auto add = [&](const std::string& key, const std::string& value) {
    if (given.count(key)) return;
    extra.push_back("--" + key);
    extra.push_back(value);
  };
  for (const auto& [key, value] : flags.items()) {
    if ((key == "chi1" || key == "chi2") && value.is_object()) {
      const nds::CharacterLabel label = value.get<nds::CharacterLabel>();
      add(key == "chi1" ? "q1" : "q2", std::to_string(label.q));
      add(key, "idx:" + std::to_string(label.index));
    } else if (value.is_array()) {
      if (given.count(key)) continue;
      extra.push_back("--" + key);
      for (const auto& v : value) extra.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    } else if (value.is_boolean()) {
      if (value.get<bool>() && !given.count(key)) extra.push_back("--" + key);
    } else {
      add(key, value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  // args[0] is the program name, args[1] the subcommand.
  const auto pos = args.size() >= 2 ? args.begin() + 2 : args.end();
  args.insert(pos, extra.begin(), extra.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newform Dedekind sums: evaluation, continued fractions and value statistics"};
  app.require_subcommand(1);
  std::function<int()> action;

  // compute
  PairFlags compute_pair;
  std::int64_t compute_a = 0, compute_c = 0;
  std::string compute_method = "double";
  double compute_eps = 1e-8;
  bool compute_exact = false;
  auto* compute = app.add_subcommand("compute", "evaluate S_{chi1,chi2}(a, c)");
  compute_pair.add_to(compute);
  compute->add_option("--a", compute_a)->required();
  compute->add_option("--c", compute_c)->required();
  compute->add_option("--method", compute_method)
      ->check(CLI::IsMember({"double", "analytic", "both"}))
      ->capture_default_str();
  compute->add_option("--eps", compute_eps, "target truncation error of each series")
      ->capture_default_str();
  compute->add_flag("--exact", compute_exact, "also print the exact rational (real characters)");
  compute->callback([&] {
    action = [&]() -> int {
      const auto [chi1, chi2] = compute_pair.resolve();
      log_config(fmt::format("compute chi1={} chi2={} a={} c={} method={} eps={}", describe(chi1),
                             describe(chi2), compute_a, compute_c, compute_method, compute_eps));
      nds::DedekindSumResult primary;
      if (compute_method == "analytic") {
        primary = nds::s_analytic(chi1, chi2, compute_a, compute_c, compute_eps);
      } else {
        primary = nds::s_double_sum(chi1, chi2, compute_a, compute_c);
      }
      std::cout << "S = " << format_complex(primary.value) << '\n';
      if (compute_method == "both") {
        const auto analytic = nds::s_analytic(chi1, chi2, compute_a, compute_c, compute_eps);
        std::cout << "S_analytic = " << format_complex(analytic.value) << '\n';
        std::cout << fmt::format("truncation_bound = {:.3g}\n", analytic.truncation_bound);
        std::cout << fmt::format("difference = {:.3g}\n", std::abs(analytic.value - primary.value));
      } else if (compute_method == "analytic") {
        std::cout << fmt::format("truncation_bound = {:.3g}\n", primary.truncation_bound);
      }
      if (compute_exact)
        std::cout << "S_exact = " << nds::s_double_sum_exact(chi1, chi2, compute_a, compute_c)
                  << '\n';
      const std::int64_t c_prime = compute_c / chi2.modulus();
      std::cout << fmt::format("d = {}\n", primary.d_used);
      std::cout << fmt::format("D(a,c') = {} (c' = {})\n", primary.max_partial_quotient, c_prime);
      std::cout << fmt::format("trivial_bound = {}\n", chi1.modulus() * compute_c);
      std::cout << fmt::format("bound_ratio = {:.6f}\n",
                               nds::bound_ratio(std::abs(primary.value), compute_a, c_prime));
      return 0;
    };
  });

  // cf
  std::int64_t cf_a = 0, cf_c = 0;
  auto* cf = app.add_subcommand("cf", "continued fraction of a/c, D(a, c) and the reversal check");
  cf->add_option("--a", cf_a)->required();
  cf->add_option("--c", cf_c)->required();
  cf->callback([&] {
    action = [&]() -> int {
      log_config(fmt::format("cf a={} c={}", cf_a, cf_c));
      const nds::ContinuedFraction expansion = nds::expand(cf_a, cf_c);
      std::string line = format_cf(expansion);
      if (cf_c >= 2) {
        line += fmt::format(" D={}", nds::max_partial_quotient(cf_a, cf_c));
        const nds::ContinuedFraction rev =
            nds::reverse_denominator_expansion(nds::mod(cf_a, cf_c), cf_c);
        line += fmt::format(" reversed→{}/{} ok", rev.numerator, rev.denominator);
      }
      std::cout << line << '\n';
      return 0;
    };
  });

  // hensley
  std::int64_t hensley_c = 3000;
  double hensley_alpha = 2.0;
  unsigned hensley_workers = 1;
  auto* hensley = app.add_subcommand("hensley", "count Phi(alpha, C) and G(alpha, C)");
  hensley->add_option("--C", hensley_c)->capture_default_str()->check(CLI::PositiveNumber);
  hensley->add_option("--alpha", hensley_alpha)->capture_default_str()->check(CLI::PositiveNumber);
  hensley->add_option("--workers", hensley_workers)->capture_default_str()->check(CLI::PositiveNumber);
  hensley->callback([&] {
    action = [&]() -> int {
      log_config(fmt::format("hensley C={} alpha={} workers={}", hensley_c, hensley_alpha,
                             hensley_workers));
      const nds::HensleyCounts counts =
          nds::hensley_counts(hensley_alpha, hensley_c, hensley_workers);
      const double prediction = nds::hensley_prediction(hensley_alpha, hensley_c);
      constexpr double pi2 = std::numbers::pi * std::numbers::pi;
      const double cc = static_cast<double>(hensley_c);
      std::cout << fmt::format("Phi = {}\nG = {}\ntotal = {}\n", counts.phi, counts.g, counts.total);
      std::cout << fmt::format("prediction = {:.6g}\nratio = {:.6f}\n", prediction,
                               static_cast<double>(counts.phi) / prediction);
      std::cout << fmt::format("density = {:.6f}\nexpected_density = {:.6f}\n",
                               static_cast<double>(counts.phi) / (3.0 / pi2 * cc * cc),
                               std::exp(-12.0 / (hensley_alpha * pi2)));
      return 0;
    };
  });

  // scan
  PairFlags scan_pair;
  nds::ScanConfig scan_cfg;
  std::string scan_method = "analytic", scan_format = "csv", scan_summary;
  bool scan_exceed_only = false;
  std::vector<std::int64_t> scan_moment_cs;
  auto* scan = app.add_subcommand("scan", "sweep all admissible (a, c), c <= C, and count F(alpha, C)");
  scan_pair.add_to(scan);
  scan->add_option("--C", scan_cfg.c_max)->required();
  scan->add_option("--alpha", scan_cfg.alpha)->capture_default_str();
  scan->add_option("--method", scan_method)
      ->check(CLI::IsMember({"analytic", "double", "both"}))
      ->capture_default_str();
  scan->add_option("--eps", scan_cfg.target_error)->capture_default_str();
  scan->add_option("--workers", scan_cfg.workers)->capture_default_str();
  scan->add_option("--oracle-fraction", scan_cfg.oracle_fraction)->capture_default_str();
  scan->add_option("--seed", scan_cfg.seed)->capture_default_str();
  scan->add_option("--out", scan_cfg.output_path, "record file (default: stdout)");
  scan->add_option("--format", scan_format)->check(CLI::IsMember({"csv", "jsonl"}))->capture_default_str();
  scan->add_option("--summary", scan_summary, "write the summary JSON here");
  scan->add_option("--moment-c", scan_moment_cs, "c values for the second-moment table");
  scan->add_flag("--exceed-only", scan_exceed_only, "emit only records above the threshold");
  scan->callback([&] {
    action = [&]() -> int {
      const auto [chi1, chi2] = scan_pair.resolve();
      scan_cfg.chi1 = chi1.label();
      scan_cfg.chi2 = chi2.label();
      scan_cfg.method = scan_method == "analytic" ? nds::ScanMethod::analytic
                        : scan_method == "double" ? nds::ScanMethod::double_sum
                                                  : nds::ScanMethod::both;
      scan_cfg.record_all_pairs = !scan_exceed_only;
      log_config(fmt::format(
          "scan chi1={} chi2={} C={} alpha={} method={} eps={} workers={} oracle_fraction={} "
          "seed={} format={} out={}",
          describe(chi1), describe(chi2), scan_cfg.c_max, scan_cfg.alpha, scan_method,
          scan_cfg.target_error, scan_cfg.workers, scan_cfg.oracle_fraction, scan_cfg.seed,
          scan_format, scan_cfg.output_path.empty() ? "-" : scan_cfg.output_path));
      const nds::RecordFormat format = nds::parse_format(scan_format);
      const nds::ScanResult result = nds::scan_F(scan_cfg);
      const auto moments = nds::moment_table(chi1, chi2, scan_moment_cs);
      const std::string summary = nds::summary_json(scan_cfg, result, moments);

      if (scan_cfg.output_path.empty()) {
        nds::emit(result.records, format, std::cout);
      } else {
        nds::emit_file(result.records, format, scan_cfg.output_path);
      }
      if (!scan_summary.empty()) {
        std::ofstream out(scan_summary);
        if (!out) throw nds::IoError("cannot open '" + scan_summary + "' for writing");
        out << summary << '\n';
      } else if (!scan_cfg.output_path.empty()) {
        std::cout << summary << '\n';
      } else {
        std::cerr << summary << '\n';
      }
      return 0;
    };
  });

  // moment
  PairFlags moment_pair;
  std::vector<std::int64_t> moment_cs{225, 450, 900};
  auto* moment = app.add_subcommand("moment", "second moment sum_a |S(a, c)|^2");
  moment_pair.add_to(moment);
  moment->add_option("--c", moment_cs, "moduli c (q1 q2 | c)")->capture_default_str();
  moment->callback([&] {
    action = [&]() -> int {
      const auto [chi1, chi2] = moment_pair.resolve();
      log_config(fmt::format("moment chi1={} chi2={} c={}", describe(chi1), describe(chi2),
                             fmt::join(moment_cs, ",")));
      std::cout << "c,units,moment,exponent\n";
      for (const auto& row : nds::moment_table(chi1, chi2, moment_cs))
        std::cout << fmt::format("{},{},{:.12g},{:.6f}\n", row.c, row.units, row.moment, row.exponent);
      return 0;
    };
  });

  // largeval
  PairFlags lv_pair;
  std::int64_t lv_n = 1, lv_kmin = 1, lv_kmax = 40;
  std::string lv_method = "analytic";
  double lv_eps = 1e-10;
  auto* largeval = app.add_subcommand("largeval", "S(1 + n c', c) against beta c' for c = k q1 q2");
  lv_pair.add_to(largeval);
  largeval->add_option("--n", lv_n)->capture_default_str();
  largeval->add_option("--kmin", lv_kmin)->capture_default_str();
  largeval->add_option("--kmax", lv_kmax)->capture_default_str();
  largeval->add_option("--method", lv_method)->check(CLI::IsMember({"analytic", "double"}))->capture_default_str();
  largeval->add_option("--eps", lv_eps)->capture_default_str();
  largeval->callback([&] {
    action = [&]() -> int {
      const auto [chi1, chi2] = lv_pair.resolve();
      log_config(fmt::format("largeval chi1={} chi2={} n={} k={}..{} method={} eps={}",
                             describe(chi1), describe(chi2), lv_n, lv_kmin, lv_kmax, lv_method,
                             lv_eps));
      const auto rows = nds::largeval_sweep(
          chi1, chi2, lv_n, lv_kmin, lv_kmax,
          lv_method == "analytic" ? nds::Method::analytic : nds::Method::double_sum, lv_eps);
      std::cout << "k,c,c_prime,a,d,m,S_re,S_im,beta_re,beta_im,main_re,main_im,residual,"
                   "normalized_residual,skipped\n";
      for (const auto& r : rows)
        std::cout << fmt::format("{},{},{},{},{},{},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},"
                                 "{:.12g},{:.12g},{}\n",
                                 r.k, r.c, r.c_prime, r.a, r.d, r.m, r.s.real(), r.s.imag(),
                                 r.beta.real(), r.beta.imag(), r.main_term.real(),
                                 r.main_term.imag(), r.residual, r.normalized_residual,
                                 r.skipped ? 1 : 0);
      return 0;
    };
  });

  // verify
  std::vector<std::string> verify_suites{"all"};
  nds::verify::Options verify_opts;
  auto* verify = app.add_subcommand("verify", "run the invariant suites; exit 1 on any failure");
  std::vector<std::string> suite_choices = nds::verify::suite_names();
  suite_choices.push_back("all");
  verify->add_option("--suite", verify_suites)->check(CLI::IsMember(suite_choices))->capture_default_str();
  verify->add_option("--qmax", verify_opts.qmax)->capture_default_str();
  verify->add_option("--trials", verify_opts.trials)->capture_default_str();
  verify->add_option("--cmax", verify_opts.cmax)->capture_default_str();
  verify->add_option("--seed", verify_opts.seed)->capture_default_str();
  verify->add_option("--eps", verify_opts.target_error)->capture_default_str();
  verify->callback([&] {
    action = [&]() -> int {
      log_config(fmt::format("verify suite={} qmax={} trials={} cmax={} seed={} eps={}",
                             fmt::join(verify_suites, ","), verify_opts.qmax, verify_opts.trials,
                             verify_opts.cmax, verify_opts.seed, verify_opts.target_error));
      std::vector<std::string> names;
      for (const auto& s : verify_suites) {
        if (s == "all") {
          const auto all = nds::verify::suite_names();
          names.insert(names.end(), all.begin(), all.end());
        } else {
          names.push_back(s);
        }
      }
      bool ok = true;
      for (const auto& name : names) {
        const auto report = nds::verify::run_suite(name, verify_opts);
        ok = ok && report.passed();
        std::cout << fmt::format("[{}] {}: {} checks, {} failures; {}\n",
                                 report.passed() ? "PASS" : "FAIL", report.name, report.checks,
                                 report.failures, report.detail);
      }
      return ok ? 0 : kExitVerifyFailed;
    };
  });

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = expand_config(std::move(args));
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  } catch (const nds::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }

  try {
    return action ? action() : 0;
  } catch (const nds::AdmissibilityError& e) {
    std::cerr << "validation error (" << nds::to_string(e.violation()) << "): " << e.what() << '\n';
    return kExitValidation;
  } catch (const nds::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  }
}
