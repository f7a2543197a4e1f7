#include "meanlab/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace meanlab::report {

namespace {

// Numbers go through "%.15g" before reaching the JSON writer, so the JSON
// output never carries more than 15 significant digits.
nlohmann::json number(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return std::strtod(format_number(*v).c_str(), nullptr);
}

std::string csv_field(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Summary ReportDocument::summary() const {
  Summary s;
  s.total = records.size();
  s.pass = static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(),
                    [](const CheckRecord& r) { return r.pass; }));
  s.fail = s.total - s.pass;
  return s;
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "text") return Format::text;
  throw std::invalid_argument("unknown output format: " + s);
}

std::string utc_timestamp() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void order_records(ReportDocument& doc) {
  std::stable_sort(doc.records.begin(), doc.records.end(),
                   [](const CheckRecord& a, const CheckRecord& b) {
                     return a.check < b.check;
                   });
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string to_json(const ReportDocument& doc) {
  nlohmann::ordered_json j;
  j["tool"] = doc.tool;
  j["version"] = doc.version;
  j["timestamp"] = doc.timestamp;
  auto records = nlohmann::ordered_json::array();
  for (const auto& r : doc.records) {
    nlohmann::ordered_json rec;
    rec["check"] = r.check;
    rec["name"] = r.name;
    rec["inputs"] = {{"x", number(r.x)}, {"y", number(r.y)}, {"z", number(r.z)}};
    rec["relation"] = r.relation;
    rec["margin"] = number(r.margin);
    if (r.value) rec["value"] = number(r.value);
    rec["pass"] = r.pass;
    if (!r.detail.empty()) rec["detail"] = r.detail;
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);
  auto s = doc.summary();
  j["summary"] = {{"total", s.total}, {"pass", s.pass}, {"fail", s.fail}};
  return j.dump(2) + "\n";
}

std::string to_csv(const ReportDocument& doc) {
  std::ostringstream os;
  os << "check,name,x,y,z,margin,pass\n";
  for (const auto& r : doc.records) {
    os << csv_escape(r.check) << ',' << csv_escape(r.name) << ','
       << csv_field(r.x) << ',' << csv_field(r.y) << ',' << csv_field(r.z)
       << ',' << csv_field(r.margin) << ',' << (r.pass ? "true" : "false")
       << '\n';
  }
  return os.str();
}

std::string to_text(const ReportDocument& doc) {
  std::ostringstream os;
  bool values_only = !doc.records.empty() &&
                     std::all_of(doc.records.begin(), doc.records.end(),
                                 [](const CheckRecord& r) {
                                   return r.value && !r.margin;
                                 });
  if (values_only) {
    for (const auto& r : doc.records) os << format_number(*r.value) << '\n';
    return os.str();
  }
  for (const auto& r : doc.records) {
    os << (r.pass ? "PASS " : "FAIL ") << r.check << " " << r.name;
    if (r.x) os << " x=" << format_number(*r.x);
    if (r.y) os << " y=" << format_number(*r.y);
    if (r.z) os << " z=" << format_number(*r.z);
    if (r.value) os << " value=" << format_number(*r.value);
    if (r.margin) os << " margin=" << format_number(*r.margin);
    if (!r.relation.empty()) os << " [" << r.relation << "]";
    if (!r.detail.empty()) os << " " << r.detail;
    os << '\n';
  }
  auto s = doc.summary();
  os << "summary: " << s.pass << " passed, " << s.fail << " failed, "
     << s.total << " total\n";
  return os.str();
}

void emit_report(const ReportDocument& doc, Format format, std::ostream& out,
                 const std::string& path) {
  std::string body;
  switch (format) {
    case Format::json:
      body = to_json(doc);
      break;
    case Format::csv:
      body = to_csv(doc);
      break;
    case Format::text:
      body = to_text(doc);
      break;
  }
  if (path.empty()) {
    out << body;
    out.flush();
    if (!out) throw std::runtime_error("failed to write report");
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output path: " + path);
  file << body;
  file.close();
  if (!file) throw std::runtime_error("failed to write report to " + path);
}

}  // namespace meanlab::report
