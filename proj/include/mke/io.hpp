#pragma once

// Tabular serialization of study results: CSV with `#`-prefixed metadata
// lines, and JSON with a `meta` object plus a `rows` array. All floating
// point is written with 17 significant digits so files round-trip exactly;
// non-finite values become "nan"/"inf" in CSV and null in JSON.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "mke/errors.hpp"
#include "mke/experiments.hpp"

namespace mke {

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON numeric literal; non-finite values have no JSON spelling and become null.
inline std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  return format_double(v);
}

inline std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
  return out;
}

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += '"';
  return out;
}

// One metadata entry; `numeric` controls JSON rendering (bare vs quoted).
struct MetaEntry {
  std::string key;
  std::string value;
  bool numeric = false;
};

namespace detail {

struct Cell {
  bool is_text = false;
  double num = 0.0;
  std::string text;
};

inline Cell sweep_cell(const SweepRow& r, const std::string& col) {
  if (col == "theta") return {false, r.theta, {}};
  if (col == "s") return {false, r.s, {}};
  if (col == "mu") return {false, r.mu, {}};
  if (col == "fidelity") return {false, r.fidelity, {}};
  if (col == "purity_exact" || col == "mu_exact") return {false, r.purity_exact, {}};
  if (col == "purity_approx" || col == "mu_approx") return {false, r.purity_approx, {}};
  if (col == "K_exact") return {false, r.k_exact, {}};
  if (col == "K_approx") return {false, r.k_approx, {}};
  if (col == "fid_exact_to_prior") return {false, r.fid_exact_to_prior, {}};
  if (col == "fid_approx_to_prior") return {false, r.fid_approx_to_prior, {}};
  if (col == "D_hamiltonian") return {false, r.d_hamiltonian, {}};
  if (col == "ratio_Z") return {false, r.ratio_z, {}};
  if (col == "R_mu") return {false, r.r_mu, {}};
  if (col == "probe") return {true, 0.0, r.probe};
  if (col == "error") return {true, 0.0, r.error};
  fail(ErrorKind::internal, "sweep_cell: unknown column " + col);
}

inline Cell oracle_cell(const OracleCheckRow& r, const std::string& col) {
  if (col == "index") return {false, static_cast<double>(r.index), {}};
  if (col == "t1") return {false, r.tau.x, {}};
  if (col == "t2") return {false, r.tau.y, {}};
  if (col == "t3") return {false, r.tau.z, {}};
  if (col == "s") return {false, r.s, {}};
  if (col == "K_exact") return {false, r.k_exact, {}};
  if (col == "K_approx") return {false, r.k_approx, {}};
  if (col == "K_oracle") return {false, r.k_oracle, {}};
  if (col == "margin") return {false, r.margin, {}};
  if (col == "error") return {true, 0.0, r.error};
  fail(ErrorKind::internal, "oracle_cell: unknown column " + col);
}

template <class Row, class CellFn>
void write_csv_table(std::ostream& os, const std::vector<MetaEntry>& meta,
                     const std::vector<std::string>& columns, const std::vector<Row>& rows,
                     CellFn&& cell_of) {
  for (const MetaEntry& m : meta) os << "# " << m.key << ": " << m.value << "\n";
  for (std::size_t c = 0; c < columns.size(); ++c)
    os << (c ? "," : "") << csv_cell(columns[c]);
  os << "\n";
  for (const Row& r : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const Cell cell = cell_of(r, columns[c]);
      os << (c ? "," : "") << (cell.is_text ? csv_cell(cell.text) : format_double(cell.num));
    }
    os << "\n";
  }
}

template <class Row, class CellFn>
void write_json_table(std::ostream& os, const std::vector<MetaEntry>& meta,
                      const std::vector<std::string>& columns, const std::vector<Row>& rows,
                      CellFn&& cell_of) {
  os << "{\n  \"meta\": {";
  for (std::size_t i = 0; i < meta.size(); ++i) {
    os << (i ? ",\n    " : "\n    ") << json_string(meta[i].key) << ": "
       << (meta[i].numeric ? meta[i].value : json_string(meta[i].value));
  }
  os << "\n  },\n  \"rows\": [";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    os << (r ? ",\n    {" : "\n    {");
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const Cell cell = cell_of(rows[r], columns[c]);
      os << (c ? ", " : "") << json_string(columns[c]) << ": "
         << (cell.is_text ? json_string(cell.text) : json_number(cell.num));
    }
    os << "}";
  }
  os << "\n  ]\n}\n";
}

}  // namespace detail

// Fixed per-command column schemas (order is part of the file contract).
inline std::vector<std::string> surface_columns() {
  return {"theta", "s", "mu", "fidelity", "purity_exact", "purity_approx", "K_exact", "K_approx",
          "fid_exact_to_prior", "fid_approx_to_prior", "D_hamiltonian", "error"};
}

inline std::vector<std::string> ratio_columns() {
  auto cols = surface_columns();
  cols.insert(cols.end() - 1, "ratio_Z");
  return cols;
}

inline std::vector<std::string> curve_columns() {
  auto cols = surface_columns();
  cols.insert(cols.end() - 1, "probe");
  return cols;
}

inline std::vector<std::string> scatter_columns() {
  return {"theta", "s", "mu", "mu_exact", "mu_approx", "R_mu", "error"};
}

inline std::vector<std::string> oracle_columns() {
  return {"index", "t1", "t2", "t3", "s", "K_exact", "K_approx", "K_oracle", "margin", "error"};
}

inline void write_sweep_csv(std::ostream& os, const std::vector<MetaEntry>& meta,
                            const std::vector<std::string>& columns,
                            const std::vector<SweepRow>& rows) {
  detail::write_csv_table(os, meta, columns, rows, detail::sweep_cell);
}

inline void write_sweep_json(std::ostream& os, const std::vector<MetaEntry>& meta,
                             const std::vector<std::string>& columns,
                             const std::vector<SweepRow>& rows) {
  detail::write_json_table(os, meta, columns, rows, detail::sweep_cell);
}

inline void write_oracle_csv(std::ostream& os, const std::vector<MetaEntry>& meta,
                             const std::vector<OracleCheckRow>& rows) {
  detail::write_csv_table(os, meta, oracle_columns(), rows, detail::oracle_cell);
}

inline void write_oracle_json(std::ostream& os, const std::vector<MetaEntry>& meta,
                              const std::vector<OracleCheckRow>& rows) {
  detail::write_json_table(os, meta, oracle_columns(), rows, detail::oracle_cell);
}

}  // namespace mke
