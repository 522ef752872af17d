#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nds/stats.hpp"

namespace nds {

enum class RecordFormat { csv, jsonl };

/// Raised on unreadable or unwritable record files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kCsvHeader =
    "c,a,d,D,cf_len,S_re,S_im,S_abs,bound_ratio,exceeds";

RecordFormat parse_format(const std::string& name);

/// Writes records sorted by (c, a); floats carry 12 significant digits.
/// An empty CSV still gets its header line.
void emit(std::span<const ScanRecord> records, RecordFormat format, std::ostream& out);
void emit_file(std::span<const ScanRecord> records, RecordFormat format,
               const std::string& path);

std::vector<ScanRecord> parse_records(std::istream& in, RecordFormat format);

/// {count, C, alpha, pair, max_bound_ratio, second_moment_table, ...} as one JSON document.
std::string summary_json(const ScanConfig& config, const ScanResult& result,
                         std::span<const MomentRow> moments);

}  // namespace nds
