#include "nds/records.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "nds/serialization.hpp"

namespace nds {

void to_json(nlohmann::json& j, const CharacterLabel& label) {
  j = nlohmann::json{{"q", label.q}, {"index", label.index}};
}

void from_json(const nlohmann::json& j, CharacterLabel& label) {
  j.at("q").get_to(label.q);
  j.at("index").get_to(label.index);
}

void to_json(nlohmann::json& j, const DirichletCharacter& chi) { to_json(j, chi.label()); }

void to_json(nlohmann::json& j, const ScanRecord& r) {
  j = nlohmann::json{{"c", r.c},
                     {"a", r.a},
                     {"d", r.d},
                     {"D", r.max_partial_quotient},
                     {"cf_len", r.cf_len},
                     {"S_re", r.s_re},
                     {"S_im", r.s_im},
                     {"S_abs", r.s_abs},
                     {"bound_ratio", r.bound_ratio},
                     {"exceeds", r.exceeds_threshold}};
}

void from_json(const nlohmann::json& j, ScanRecord& r) {
  j.at("c").get_to(r.c);
  j.at("a").get_to(r.a);
  j.at("d").get_to(r.d);
  j.at("D").get_to(r.max_partial_quotient);
  j.at("cf_len").get_to(r.cf_len);
  j.at("S_re").get_to(r.s_re);
  j.at("S_im").get_to(r.s_im);
  j.at("S_abs").get_to(r.s_abs);
  j.at("bound_ratio").get_to(r.bound_ratio);
  j.at("exceeds").get_to(r.exceeds_threshold);
}

RecordFormat parse_format(const std::string& name) {
  if (name == "csv") return RecordFormat::csv;
  if (name == "jsonl") return RecordFormat::jsonl;
  throw std::invalid_argument("unknown record format '" + name + "'");
}

namespace {

std::vector<ScanRecord> sorted(std::span<const ScanRecord> records) {
  std::vector<ScanRecord> out(records.begin(), records.end());
  std::stable_sort(out.begin(), out.end(), [](const ScanRecord& x, const ScanRecord& y) {
    return x.c != y.c ? x.c < y.c : x.a < y.a;
  });
  return out;
}

}  // namespace

void emit(std::span<const ScanRecord> records, RecordFormat format, std::ostream& out) {
  if (format == RecordFormat::csv) out << kCsvHeader << '\n';
  for (const ScanRecord& r : sorted(records)) {
    if (format == RecordFormat::csv) {
      out << fmt::format("{},{},{},{},{},{:.12g},{:.12g},{:.12g},{:.12g},{}\n", r.c, r.a, r.d,
                         r.max_partial_quotient, r.cf_len, r.s_re, r.s_im, r.s_abs,
                         r.bound_ratio, r.exceeds_threshold ? 1 : 0);
    } else {
      out << fmt::format(
          "{{\"c\":{},\"a\":{},\"d\":{},\"D\":{},\"cf_len\":{},\"S_re\":{:.12g},"
          "\"S_im\":{:.12g},\"S_abs\":{:.12g},\"bound_ratio\":{:.12g},\"exceeds\":{}}}\n",
          r.c, r.a, r.d, r.max_partial_quotient, r.cf_len, r.s_re, r.s_im, r.s_abs,
          r.bound_ratio, r.exceeds_threshold ? "true" : "false");
    }
  }
}

void emit_file(std::span<const ScanRecord> records, RecordFormat format,
               const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  emit(records, format, out);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::vector<ScanRecord> parse_records(std::istream& in, RecordFormat format) {
  std::vector<ScanRecord> out;
  std::string line;
  if (format == RecordFormat::csv) {
    if (!std::getline(in, line) || line != kCsvHeader)
      throw IoError("CSV header mismatch");
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<std::string> fields;
      std::stringstream ss(line);
      std::string field;
      while (std::getline(ss, field, ',')) fields.push_back(field);
      if (fields.size() != 10) throw IoError("CSV row has " + std::to_string(fields.size()) +
                                             " fields: " + line);
      try {
        ScanRecord r;
        r.c = std::stoll(fields[0]);
        r.a = std::stoll(fields[1]);
        r.d = std::stoll(fields[2]);
        r.max_partial_quotient = std::stoll(fields[3]);
        r.cf_len = std::stoll(fields[4]);
        r.s_re = std::stod(fields[5]);
        r.s_im = std::stod(fields[6]);
        r.s_abs = std::stod(fields[7]);
        r.bound_ratio = std::stod(fields[8]);
        r.exceeds_threshold = fields[9] == "1";
        out.push_back(r);
      } catch (const std::logic_error&) {
        throw IoError("malformed CSV row: " + line);
      }
    }
  } else {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        out.push_back(nlohmann::json::parse(line).get<ScanRecord>());
      } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed JSON line: ") + e.what());
      }
    }
  }
  return out;
}

std::string summary_json(const ScanConfig& config, const ScanResult& result,
                         std::span<const MomentRow> moments) {
  nlohmann::json table = nlohmann::json::array();
  for (const MomentRow& row : moments)
    table.push_back({{"c", row.c}, {"units", row.units}, {"moment", row.moment},
                     {"exponent", row.exponent}});
  nlohmann::json j = {
      {"count", result.count},
      {"C", config.c_max},
      {"alpha", config.alpha},
      {"pair", {{"chi1", config.chi1}, {"chi2", config.chi2}}},
      {"threshold", result.threshold},
      {"pairs", result.pairs},
      {"max_bound_ratio", result.max_bound_ratio},
      {"max_truncation_bound", result.max_truncation_bound},
      {"oracle_checks", result.oracle_checks},
      {"max_oracle_discrepancy", result.max_oracle_discrepancy},
      {"second_moment_table", table},
  };
  return j.dump(2);
}

}  // namespace nds
