#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sumprod/rational.hpp"

namespace sumprodlab {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Flat rows for the CSV rendering.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string command;
  Json inputs = Json::object();
  Json result = Json::object();
  Table table;
  std::optional<double> elapsed_ms;
  int exit_code = 0;
  std::optional<std::string> raw;  // emitted verbatim instead of JSON/CSV (data files)
};

enum class Format { kJson, kCsv };

/// JSON: schema, command, inputs, result and (unless suppressed) timings.
/// CSV: header plus rows; timings never appear in CSV.
/// A report carrying `raw` text renders as that text.
std::string render(const Report& report, Format format, bool timings);

Json rational_json(const sumprod::Rational& r);
/// A number when it fits in 64 bits, else its decimal string.
Json integer_json(const sumprod::Integer& n);
std::string cell(const sumprod::Rational& r);
std::string cell(double x);
std::string cell(std::uint64_t x);
std::string cell(bool b);

}  // namespace sumprodlab
