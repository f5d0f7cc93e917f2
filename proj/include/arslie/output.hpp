#pragma once

#include <string>
#include <utility>
#include <vector>

namespace arslie {

/// Shortest round-trip-safe form used in every CSV cell ("%.17g").
std::string format_number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  /// Throws InvariantViolation when the row width does not match the header.
  void add_row(const std::vector<double>& row);
  std::size_t rows() const { return rows_.size(); }
  /// Comma-separated, '\n' line endings, header first.
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

using Polyline = std::vector<std::pair<double, double>>;

/// Minimal plot: axes box with extreme tick labels and one polyline per entry.
std::string render_svg(const std::vector<Polyline>& lines, const std::string& x_label, const std::string& y_label,
                       const std::string& title);

/// Creates parent directories as needed; throws IoError on failure.
void write_file(const std::string& path, const std::string& contents);

}  // namespace arslie
