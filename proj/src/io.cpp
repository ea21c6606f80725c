#include "qetsim/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qetsim/version.hpp"

namespace qetsim {

const char* output_format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::GnuplotMatrix: return "gnuplot";
  }
  return "?";
}

std::vector<OutputFormat> output_formats_from_list(const std::string& list) {
  std::vector<OutputFormat> formats;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    // trim
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);
    if (item == "csv") {
      formats.push_back(OutputFormat::Csv);
    } else if (item == "json") {
      formats.push_back(OutputFormat::Json);
    } else if (item == "gnuplot") {
      formats.push_back(OutputFormat::GnuplotMatrix);
    } else {
      throw validation_error("unknown output format '" + item +
                             "' (expected csv, json or gnuplot)");
    }
  }
  if (formats.empty()) throw validation_error("output format list is empty");
  return formats;
}

std::string output_formats_to_list(const std::vector<OutputFormat>& formats) {
  std::string out;
  for (const auto f : formats) {
    if (!out.empty()) out += ',';
    out += output_format_name(f);
  }
  return out;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void DataTable::add_column(std::string name, std::vector<double> values) {
  if (!columns.empty() && values.size() != columns.front().size()) {
    throw validation_error("column '" + name + "' has " + std::to_string(values.size()) +
                           " rows, table has " + std::to_string(columns.front().size()));
  }
  names.push_back(std::move(name));
  columns.push_back(std::move(values));
}

namespace {

bool wants(const EmitRequest& req, OutputFormat f) {
  for (const auto x : req.formats) {
    if (x == f) return true;
  }
  return false;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw io_error("failed writing '" + path.string() + "'");
}

std::filesystem::path write_sidecar(const EmitRequest& req) {
  const auto path = req.dir / (req.basename + ".meta");
  auto out = open_out(path);
  out << req.sidecar;
  finish(out, path);
  return path;
}

nlohmann::json json_header() {
  return {{"generator", "qetsim"}, {"version", kVersion}};
}

std::filesystem::path write_table_csv(const DataTable& table, const EmitRequest& req) {
  const auto path = req.dir / (req.basename + ".csv");
  auto out = open_out(path);
  for (std::size_t c = 0; c < table.names.size(); ++c) {
    if (c) out << ',';
    out << table.names[c];
  }
  out << '\n';
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) out << ',';
      out << format_double(table.columns[c][r]);
    }
    out << '\n';
  }
  finish(out, path);
  return path;
}

std::filesystem::path write_table_json(const DataTable& table, const EmitRequest& req) {
  const auto path = req.dir / (req.basename + ".json");
  nlohmann::json doc = json_header();
  doc["columns"] = table.names;
  nlohmann::json values = nlohmann::json::object();
  for (std::size_t c = 0; c < table.names.size(); ++c) {
    values[table.names[c]] = table.columns[c];
  }
  doc["values"] = values;
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
  finish(out, path);
  return path;
}

// gnuplot "nonuniform matrix": top-left cell is the column count, first row
// holds column coordinates, first column holds row coordinates.
std::filesystem::path write_matrix_gnuplot(const MatrixData& m, const EmitRequest& req) {
  const auto path = req.dir / (req.basename + ".matrix.dat");
  auto out = open_out(path);
  out << m.col_coords.size();
  for (const double c : m.col_coords) out << ' ' << format_double(c);
  out << '\n';
  for (std::size_t r = 0; r < m.row_coords.size(); ++r) {
    out << format_double(m.row_coords[r]);
    for (std::size_t c = 0; c < m.col_coords.size(); ++c) {
      out << ' ' << format_double(m.values[r * m.col_coords.size() + c]);
    }
    out << '\n';
  }
  finish(out, path);
  return path;
}

std::filesystem::path write_matrix_json(const MatrixData& m, const EmitRequest& req) {
  const auto path = req.dir / (req.basename + ".json");
  nlohmann::json doc = json_header();
  doc["row_label"] = m.row_label;
  doc["col_label"] = m.col_label;
  doc["row_coords"] = m.row_coords;
  doc["col_coords"] = m.col_coords;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.row_coords.size(); ++r) {
    rows.push_back(std::vector<double>(m.values.begin() + static_cast<std::ptrdiff_t>(r * m.col_coords.size()),
                                       m.values.begin() + static_cast<std::ptrdiff_t>((r + 1) * m.col_coords.size())));
  }
  doc["values"] = rows;
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
  finish(out, path);
  return path;
}

DataTable matrix_long_form(const MatrixData& m) {
  DataTable table;
  std::vector<double> rows, cols, vals;
  rows.reserve(m.values.size());
  cols.reserve(m.values.size());
  for (std::size_t r = 0; r < m.row_coords.size(); ++r) {
    for (std::size_t c = 0; c < m.col_coords.size(); ++c) {
      rows.push_back(m.row_coords[r]);
      cols.push_back(m.col_coords[c]);
      vals.push_back(m.values[r * m.col_coords.size() + c]);
    }
  }
  table.add_column(m.row_label, std::move(rows));
  table.add_column(m.col_label, std::move(cols));
  table.add_column("value", std::move(vals));
  return table;
}

}  // namespace

std::vector<std::filesystem::path> emit_table(const DataTable& table, const EmitRequest& req) {
  std::vector<std::filesystem::path> files;
  if (wants(req, OutputFormat::Csv)) files.push_back(write_table_csv(table, req));
  if (wants(req, OutputFormat::Json)) files.push_back(write_table_json(table, req));
  if (!req.sidecar.empty()) files.push_back(write_sidecar(req));
  return files;
}

std::vector<std::filesystem::path> emit_matrix(const MatrixData& m, const EmitRequest& req) {
  if (m.values.size() != m.row_coords.size() * m.col_coords.size()) {
    throw validation_error("matrix value count does not match coordinate counts");
  }
  std::vector<std::filesystem::path> files;
  if (wants(req, OutputFormat::GnuplotMatrix)) files.push_back(write_matrix_gnuplot(m, req));
  if (wants(req, OutputFormat::Csv)) {
    files.push_back(write_table_csv(matrix_long_form(m), req));
  }
  if (wants(req, OutputFormat::Json)) files.push_back(write_matrix_json(m, req));
  if (!req.sidecar.empty()) files.push_back(write_sidecar(req));
  return files;
}

namespace {

DataTable contour_table(const SweepResult& result) {
  DataTable table;
  std::vector<double> levels, ids, a0, a1;
  for (const auto& set : result.contours) {
    double poly_id = 0;
    for (const auto& line : set.polylines) {
      for (const auto& pt : line) {
        levels.push_back(set.level);
        ids.push_back(poly_id);
        a0.push_back(pt[0]);
        a1.push_back(pt[1]);
      }
      poly_id += 1.0;
    }
  }
  table.add_column("level", std::move(levels));
  table.add_column("polyline", std::move(ids));
  table.add_column(result.axes[0].param, std::move(a0));
  table.add_column(result.axes[1].param, std::move(a1));
  return table;
}

}  // namespace

std::vector<std::filesystem::path> emit_sweep(const SweepResult& result, const EmitRequest& req) {
  std::vector<std::filesystem::path> files;
  if (result.axes.size() == 1) {
    DataTable table;
    table.add_column(result.axes[0].param, result.axes[0].coords());
    table.add_column(result.model_id, result.values);
    EmitRequest inner = req;
    files = emit_table(table, inner);
  } else {
    MatrixData m;
    m.row_label = result.axes[0].param;
    m.col_label = result.axes[1].param;
    m.row_coords = result.axes[0].coords();
    m.col_coords = result.axes[1].coords();
    m.values = result.values;
    files = emit_matrix(m, req);
    if (!result.contours.empty()) {
      EmitRequest creq = req;
      creq.basename = req.basename + "_contours";
      creq.sidecar.clear();
      auto extra = emit_table(contour_table(result), creq);
      files.insert(files.end(), extra.begin(), extra.end());
    }
  }
  return files;
}

DataTable table_from_field(const ScalarField& field, const std::string& value_name) {
  DataTable table;
  table.add_column("x_m", field.grid.coords());
  table.add_column(value_name, field.values);
  return table;
}

MatrixData matrix_from_field(const SpaceTimeField& field) {
  MatrixData m;
  m.row_label = "t";
  m.col_label = "x";
  m.row_coords = field.grid.times();
  m.col_coords = field.grid.space.coords();
  m.values = field.values;
  return m;
}

}  // namespace qetsim
