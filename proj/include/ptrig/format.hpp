#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ptrig {

inline constexpr int kDefaultPrecision = 15;
inline constexpr int kMinPrecision = 6;
inline constexpr int kMaxPrecision = 17;

/// Locale-independent %g-style rendering with `precision` significant digits.
/// Zero prints as "0" regardless of sign; non-finite values print as
/// "nan", "inf" and "-inf".
std::string format_number(double value, int precision = kDefaultPrecision);

/// Minimal CSV emitter: comma separated, '\n' terminated, no quoting (all
/// fields written by this project are numbers or bare identifiers).
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, int precision) : out_(out), precision_(precision) {}

  void header(std::span<const std::string_view> names);
  void row(std::span<const double> values);
  void raw_row(std::span<const std::string> fields);

 private:
  std::ostream& out_;
  int precision_;
};

/// Splits one CSV line on commas (no quoting).
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace ptrig
