#pragma once

// CSV helpers. Positive quantities that may sit far below the double range
// (cell measures and edges at x ~ e^{-10^6}) are carried as logarithms and
// printed in scientific notation with an unbounded decimal exponent.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vexp/errors.hpp"
#include "vexp/numeric.hpp"

namespace vexp::csv {

/// Shortest round-trip decimal form of a finite double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

/// Formats e^{log_value}. Values inside the normal double range print as
/// ordinary decimals; smaller ones as "m.mmmmmmmmmmmmmmmme-NNNNNN".
inline std::string format_log_scalar(double log_value) {
  if (log_value == kNegInf) return "0";
  if (std::isnan(log_value) || log_value == kInf) throw InvalidArgument("format_log_scalar: non-finite log");
  if (log_value > -700.0) return format_double(std::exp(log_value));
  const double log10_value = log_value / std::numbers::ln10;
  auto exponent = static_cast<std::int64_t>(std::floor(log10_value));
  double mantissa = std::pow(10.0, log10_value - static_cast<double>(exponent));
  if (mantissa >= 10.0) {
    mantissa /= 10.0;
    ++exponent;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.16fe%lld", mantissa, static_cast<long long>(exponent));
  return buf;
}

/// Inverse of format_log_scalar: returns ln of the (positive or zero) value.
inline double parse_log_scalar(std::string_view text) {
  std::string s(text);
  const auto epos = s.find_first_of("eE");
  if (epos == std::string::npos) {
    const double v = std::stod(s);
    if (v < 0.0 || !std::isfinite(v)) throw InvalidArgument("expected a nonnegative finite value: " + s);
    return v == 0.0 ? kNegInf : std::log(v);
  }
  const double mantissa = std::stod(s.substr(0, epos));
  const long long exponent = std::stoll(s.substr(epos + 1));
  if (mantissa < 0.0 || !std::isfinite(mantissa)) throw InvalidArgument("expected a nonnegative value: " + s);
  if (mantissa == 0.0) return kNegInf;
  return std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln10;
}

inline std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string{} : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

/// A parsed CSV table: header plus data rows. Lines starting with '#' and
/// blank lines are skipped.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  [[nodiscard]] std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw InvalidArgument("CSV: missing column '" + std::string(name) + "'");
  }
};

inline Table read_table(std::istream& in) {
  Table t;
  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
        static_cast<unsigned char>(line[1]) == 0xBB && static_cast<unsigned char>(line[2]) == 0xBF) {
      line.erase(0, 3);
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_row(line);
    if (!have_header) {
      t.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw InvalidArgument("CSV: line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                            " fields, header has " + std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(fields));
  }
  if (!have_header) throw InvalidArgument("CSV: header row required");
  return t;
}

}  // namespace vexp::csv
