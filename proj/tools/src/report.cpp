#include "sumprodlab/report.hpp"

#include <sstream>

namespace sumprodlab {

namespace {

std::string escape_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_row(std::ostringstream& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << escape_csv(row[i]);
  }
  out << '\n';
}

}  // namespace

std::string render(const Report& report, Format format, bool timings) {
  if (report.raw) return *report.raw;
  if (format == Format::kCsv) {
    std::ostringstream out;
    write_row(out, report.table.columns);
    for (const auto& row : report.table.rows) write_row(out, row);
    return out.str();
  }
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = report.command;
  j["inputs"] = report.inputs;
  j["result"] = report.result;
  if (timings && report.elapsed_ms) j["timings"] = {{"elapsed_ms", *report.elapsed_ms}};
  return j.dump(2) + "\n";
}

Json rational_json(const sumprod::Rational& r) { return r.to_string(); }

Json integer_json(const sumprod::Integer& n) {
  if (sgn(n) >= 0 && n.fits_ulong_p()) return static_cast<std::uint64_t>(n.get_ui());
  return n.get_str();
}

std::string cell(const sumprod::Rational& r) { return r.to_string(); }

std::string cell(double x) { return Json(x).dump(); }

std::string cell(std::uint64_t x) { return std::to_string(x); }

std::string cell(bool b) { return b ? "true" : "false"; }

}  // namespace sumprodlab
