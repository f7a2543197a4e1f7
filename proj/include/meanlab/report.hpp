#pragma once

// Machine-readable verification reports (JSON, CSV, text).

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace meanlab::report {

inline constexpr const char* kToolName = "meanlab";
inline constexpr const char* kToolVersion = "1.0.0";

struct CheckRecord {
  std::string check;
  std::string name;
  std::optional<double> x;
  std::optional<double> y;
  std::optional<double> z;
  /// The asserted relation, e.g. "|M*J - 1| <= 1e-09".
  std::string relation;
  /// Signed slack of the relation; negative means violated.
  std::optional<double> margin;
  /// Evaluated quantity for value-only records (eval, seiffert, ...).
  std::optional<double> value;
  bool pass = true;
  std::string detail;
};

struct Summary {
  std::size_t total = 0;
  std::size_t pass = 0;
  std::size_t fail = 0;
};

struct ReportDocument {
  std::string tool = kToolName;
  std::string version = kToolVersion;
  std::string timestamp;
  std::vector<CheckRecord> records;

  Summary summary() const;
  bool all_pass() const { return summary().fail == 0; }
};

enum class Format { json, csv, text };

/// Throws std::invalid_argument for anything but json, csv, text.
Format parse_format(const std::string& s);

/// Current UTC time, ISO 8601 with second resolution.
std::string utc_timestamp();

/// Stable sort by check name; records of one check keep their point order.
void order_records(ReportDocument& doc);

/// "%.15g"
std::string format_number(double v);

std::string to_json(const ReportDocument& doc);
std::string to_csv(const ReportDocument& doc);
std::string to_text(const ReportDocument& doc);

/// Writes to `out` or, when path is non-empty, to that file. Throws
/// std::runtime_error on I/O failure.
void emit_report(const ReportDocument& doc, Format format, std::ostream& out,
                 const std::string& path = {});

}  // namespace meanlab::report
