#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "siegel/coeffs.hpp"
#include "siegel/harness.hpp"
#include "siegel/lfun.hpp"

namespace siegel {

enum class Format { csv, json };

// 17 significant digits, '.' separator, independent of the global locale.
std::string format_double(double value);

// A flat table rendered as RFC-4180 CSV (LF endings) or a JSON array of objects.
class Table {
 public:
  using Cell = std::variant<std::int64_t, double, std::string, bool>;

  explicit Table(std::vector<std::string> columns);

  void add_row(std::vector<Cell> row);
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;
  void write(std::ostream& out, Format format) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string csv_escape(const std::string& field);

// JSON output uses one top-level object per report with the struct's field names.
void write_report(std::ostream& out, Format format, const CoefficientTable& table);
void write_report(std::ostream& out, Format format, const SandwichReport& report);
void write_report(std::ostream& out, Format format, const ResidueDecayReport& report);
void write_report(std::ostream& out, Format format, const ScanReport& report);
void write_report(std::ostream& out, Format format, const ZeroScanResult& report);
void write_report(std::ostream& out, Format format, const LemmaSummary& summary);

}  // namespace siegel
