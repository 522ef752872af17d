#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct RunResult {
  int code;
  std::string out;
};

// Runs the CLI with stderr discarded unless merge_stderr is set.
RunResult run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(NDS_CLI_PATH) + " " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string value_of(const std::string& out, const std::string& key) {
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(key + " = ", 0) == 0) return line.substr(key.size() + 3);
  return "";
}

const std::string kLegendre5 = "--q1 5 --chi1 legendre --q2 5 --chi2 legendre";

}  // namespace

TEST(Cli, ComputeTheoremValue) {
  const RunResult r = run("compute " + kLegendre5 + " --a 6 --c 25");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("S = 2.000000\n"), std::string::npos) << r.out;
}

TEST(Cli, ComputeVanishing) {
  const RunResult r = run("compute " + kLegendre5 + " --a 1 --c 25 --method both");
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(value_of(r.out, "S")), 0.0, 1e-9);
  EXPECT_NEAR(std::stod(value_of(r.out, "S_analytic")), 0.0, 1e-8);
}

TEST(Cli, ComputeExact) {
  const RunResult r = run("compute --q1 3 --q2 3 --a 2 --c 9 --exact");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(value_of(r.out, "S_exact"), "2/3");
}

TEST(Cli, PrintsResolvedConfig) {
  const RunResult r = run("compute " + kLegendre5 + " --a 6 --c 25", true);
  EXPECT_EQ(r.out.rfind("# compute", 0), 0u) << r.out;
}

TEST(Cli, ParityViolation) {
  const RunResult r = run("compute --q1 5 --q2 3 --a 1 --c 15", true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("parity"), std::string::npos) << r.out;
}

TEST(Cli, CoprimalityAndDivisibility) {
  EXPECT_EQ(run("compute " + kLegendre5 + " --a 5 --c 25").code, 2);
  const RunResult r = run("compute " + kLegendre5 + " --a 1 --c 20", true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("divisibility"), std::string::npos) << r.out;
}

TEST(Cli, UnknownFlagRejected) {
  EXPECT_EQ(run("compute " + kLegendre5 + " --a 6 --c 25 --bogus 1").code, 2);
  EXPECT_EQ(run("nosuchcommand").code, 2);
}

TEST(Cli, ContinuedFraction) {
  const RunResult r = run("cf --a 3 --c 7");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "[0;2,3] D=3 reversed→5/7 ok\n");
  EXPECT_EQ(run("cf --a 4 --c 6").code, 2);
}

TEST(Cli, HensleySmallCase) {
  const RunResult r = run("hensley --C 10 --alpha 1");
  EXPECT_EQ(r.code, 0);
  // Pairs 1 < a < c <= 10 whose largest partial quotient is at most log 10.
  EXPECT_EQ(value_of(r.out, "total"), "22");
  EXPECT_EQ(value_of(r.out, "Phi"), "6");
  EXPECT_EQ(value_of(r.out, "G"), "16");
}

TEST(Cli, HensleyRatioAtAlphaTwo) {
  const RunResult r = run("hensley --C 3000 --alpha 2");
  EXPECT_EQ(r.code, 0);
  const double ratio = std::stod(value_of(r.out, "ratio"));
  EXPECT_GE(ratio, 0.9);
  EXPECT_LE(ratio, 1.1);
}

TEST(Cli, ScanWritesFileAndSummary) {
  const auto dir = std::filesystem::temp_directory_path() / "nds_cli_test";
  std::filesystem::create_directories(dir);
  const auto csv = dir / "scan.csv";
  const RunResult r = run("scan " + kLegendre5 + " --C 100 --alpha 0.05 --out " + csv.string() +
                          " --moment-c 225");
  ASSERT_EQ(r.code, 0);
  const auto summary = nlohmann::json::parse(r.out);
  EXPECT_EQ(summary["count"], 16);
  EXPECT_EQ(summary["pairs"], 120);
  EXPECT_EQ(summary["second_moment_table"][0]["moment"].get<double>(), 4592.0);

  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "c,a,d,D,cf_len,S_re,S_im,S_abs,bound_ratio,exceeds");
  std::int64_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 120);
}

TEST(Cli, ScanJsonlExceedOnly) {
  const RunResult r = run("scan " + kLegendre5 + " --C 100 --alpha 0.05 --format jsonl --exceed-only");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::int64_t rows = 0;
  for (std::string line; std::getline(in, line);) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j["exceeds"].get<bool>());
    ++rows;
  }
  EXPECT_EQ(rows, 16);
}

TEST(Cli, ScanBelowLevel) {
  const RunResult r = run("scan " + kLegendre5 + " --C 20 --format jsonl");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "");
}

TEST(Cli, ScanIoError) {
  EXPECT_EQ(run("scan " + kLegendre5 + " --C 50 --out /nonexistent-dir/x.csv").code, 3);
}

TEST(Cli, ScanWorkersDeterministic) {
  const std::string base = "scan " + kLegendre5 + " --C 300 --alpha 0.1 --oracle-fraction 0.3";
  EXPECT_EQ(run(base + " --workers 1").out, run(base + " --workers 3").out);
}

TEST(Cli, ConfigFile) {
  const auto path = std::filesystem::temp_directory_path() / "nds_cli_config.json";
  {
    std::ofstream out(path);
    out << R"({"chi1": {"q": 5, "index": 2}, "chi2": {"q": 5, "index": 2}, "a": 11, "c": 50})";
  }
  const RunResult r = run("compute --config " + path.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(value_of(r.out, "S"), "4.000000");
  // Explicit flags win over the file.
  EXPECT_EQ(value_of(run("compute --config " + path.string() + " --a 6 --c 25").out, "S"),
            "2.000000");
  EXPECT_EQ(run("compute --config /nonexistent.json").code, 3);
}

TEST(Cli, Moment) {
  const RunResult r = run("moment " + kLegendre5 + " --c 225 450");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("225,120,4592,"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("450,120,12016,"), std::string::npos) << r.out;
}

TEST(Cli, LargeVal) {
  const RunResult r = run("largeval " + kLegendre5 + " --n 1 --kmin 1 --kmax 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\n1,25,5,6,"), std::string::npos) << r.out;
}

TEST(Cli, VerifySuites) {
  EXPECT_EQ(run("verify --suite dw").code, 0);
  EXPECT_EQ(run("verify --suite korobov --qmax 200").code, 0);
  const RunResult r = run("verify --suite agreement --trials 50 --cmax 500");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("[PASS] agreement", 0), 0u) << r.out;
  EXPECT_EQ(run("verify --suite nope").code, 2);
}
