#include "siegel/report.hpp"

#include <charconv>
#include <ostream>

#include "json.hpp"
#include "siegel/error.hpp"

namespace siegel {

namespace {

using ojson = nlohmann::ordered_json;

std::string csv_cell(const Table::Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<V, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<V, bool>) {
          return v ? "true" : "false";
        } else {
          return csv_escape(v);
        }
      },
      cell);
}

ojson json_cell(const Table::Cell& cell) {
  return std::visit([](const auto& v) { return ojson(v); }, cell);
}

void write_csv_line(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << fields[i];
  }
  out << '\n';
}

void dump(std::ostream& out, const ojson& j) { out << j.dump(2) << '\n'; }

ojson residue_row_json(const ResidueRow& r) {
  ojson j;
  j["x"] = r.x;
  j["R"] = r.R;
  j["R_scaled"] = r.R_scaled;
  j["R_err"] = r.R_err;
  return j;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw DomainError("Table::add_row: row width does not match header");
  rows_.push_back(std::move(row));
}

void Table::write_csv(std::ostream& out) const {
  std::vector<std::string> header;
  for (const auto& c : columns_) header.push_back(csv_escape(c));
  write_csv_line(out, header);
  for (const auto& row : rows_) {
    std::vector<std::string> fields;
    for (const auto& cell : row) fields.push_back(csv_cell(cell));
    write_csv_line(out, fields);
  }
}

void Table::write_json(std::ostream& out) const {
  ojson arr = ojson::array();
  for (const auto& row : rows_) {
    ojson obj;
    for (std::size_t i = 0; i < columns_.size(); ++i) obj[columns_[i]] = json_cell(row[i]);
    arr.push_back(std::move(obj));
  }
  ojson j;
  j["rows"] = std::move(arr);
  dump(out, j);
}

void Table::write(std::ostream& out, Format format) const {
  if (format == Format::csv) {
    write_csv(out);
  } else {
    write_json(out);
  }
}

void write_report(std::ostream& out, Format format, const CoefficientTable& table) {
  if (format == Format::csv) {
    out << "n,a_n\n";
    for (std::int64_t n = 1; n <= table.length(); ++n) out << n << ',' << table[n] << '\n';
    return;
  }
  ojson j;
  j["length"] = table.length();
  j["d1"] = table.d1();
  j["d2"] = table.d2();
  j["values"] = std::vector<std::int64_t>(table.values().begin(), table.values().end());
  dump(out, j);
}

void write_report(std::ostream& out, Format format, const SandwichReport& r) {
  if (format == Format::csv) {
    Table t({"d1", "d2", "x", "beta", "A", "S", "passed"});
    t.add_row({r.d1, r.d2, r.x, r.beta, r.A, r.S, r.passed});
    t.write_csv(out);
    return;
  }
  ojson j;
  j["d1"] = r.d1;
  j["d2"] = r.d2;
  j["x"] = r.x;
  j["beta"] = r.beta;
  j["A"] = r.A;
  j["S"] = r.S;
  j["passed"] = r.passed;
  dump(out, j);
}

void write_report(std::ostream& out, Format format, const ResidueDecayReport& r) {
  if (format == Format::csv) {
    Table t({"x", "R", "R_scaled", "R_err"});
    for (const auto& row : r.rows) t.add_row({row.x, row.R, row.R_scaled, row.R_err});
    t.write_csv(out);
    return;
  }
  ojson j;
  j["d1"] = r.d1;
  j["d2"] = r.d2;
  j["beta"] = r.beta;
  j["threshold"] = r.threshold;
  j["lambda"] = r.lambda;
  j["f_beta"] = r.f_beta;
  j["rows"] = ojson::array();
  for (const auto& row : r.rows) j["rows"].push_back(residue_row_json(row));
  j["passed"] = r.passed;
  j["failure"] = r.failure;
  dump(out, j);
}

void write_report(std::ostream& out, Format format, const ScanReport& r) {
  if (format == Format::csv) {
    Table t({"d", "q", "L1", "weighted"});
    for (const auto& row : r.rows) t.add_row({row.d, row.q, row.L1, row.weighted});
    t.write_csv(out);
    return;
  }
  ojson j;
  j["epsilon"] = r.epsilon;
  j["limit"] = r.limit;
  j["rows"] = ojson::array();
  for (const auto& row : r.rows) {
    ojson o;
    o["d"] = row.d;
    o["q"] = row.q;
    o["L1"] = row.L1;
    o["weighted"] = row.weighted;
    j["rows"].push_back(std::move(o));
  }
  j["min_weighted"] = r.min_weighted;
  j["argmin_d"] = r.argmin_d;
  dump(out, j);
}

void write_report(std::ostream& out, Format format, const ZeroScanResult& r) {
  if (format == Format::csv) {
    Table t({"discriminant", "lo", "hi", "grid_step", "refined_tol", "zero"});
    for (double z : r.zeros) t.add_row({r.discriminant, r.lo, r.hi, r.grid_step, r.refined_tol, z});
    t.write_csv(out);
    return;
  }
  ojson j;
  j["discriminant"] = r.discriminant;
  j["lo"] = r.lo;
  j["hi"] = r.hi;
  j["zeros"] = r.zeros;
  j["grid_step"] = r.grid_step;
  j["refined_tol"] = r.refined_tol;
  dump(out, j);
}

void write_report(std::ostream& out, Format format, const LemmaSummary& s) {
  if (format == Format::csv) {
    Table t({"check", "passed", "detail"});
    for (const auto& c : s.checks) t.add_row({c.name, c.passed, c.detail});
    t.write_csv(out);
    return;
  }
  ojson j;
  j["status"] = s.status == SuiteStatus::passed ? "passed" : s.status == SuiteStatus::failed ? "failed" : "empty";
  j["checks"] = ojson::array();
  for (const auto& c : s.checks) {
    ojson o;
    o["name"] = c.name;
    o["passed"] = c.passed;
    o["detail"] = c.detail;
    j["checks"].push_back(std::move(o));
  }
  dump(out, j);
}

}  // namespace siegel
