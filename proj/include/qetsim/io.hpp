#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qetsim/core.hpp"
#include "qetsim/sweep.hpp"

namespace qetsim {

enum class OutputFormat { Csv, Json, GnuplotMatrix };

const char* output_format_name(OutputFormat f);
// Parses a comma-separated list like "csv,json,gnuplot".
std::vector<OutputFormat> output_formats_from_list(const std::string& list);
std::string output_formats_to_list(const std::vector<OutputFormat>& formats);

// Shortest decimal representation that round-trips a double exactly.
// Locale-independent.
std::string format_double(double v);

// Column-oriented numeric table; column names carry units (e.g. "x_m").
struct DataTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  void add_column(std::string name, std::vector<double> values);
  std::size_t n_rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

// Dense 2D block with row/column coordinates, for matrix-style emission.
struct MatrixData {
  std::string row_label;
  std::string col_label;
  std::vector<double> row_coords;
  std::vector<double> col_coords;
  std::vector<double> values;  // row-major, rows x cols
};

struct EmitRequest {
  std::filesystem::path dir;
  std::string basename;
  std::vector<OutputFormat> formats;
  // Sidecar body: the exact re-runnable configuration text. Written to
  // <basename>.meta whenever non-empty.
  std::string sidecar;
};

// Writers return the paths they created. I/O failures surface as io_error
// with the offending path.
std::vector<std::filesystem::path> emit_table(const DataTable& table, const EmitRequest& req);
std::vector<std::filesystem::path> emit_matrix(const MatrixData& matrix, const EmitRequest& req);
// Sweep emission: 1D sweeps become tables; 2D sweeps become matrices plus a
// long-format table. Contours stored on the result are written as
// <basename>_contours.* with columns level, polyline, axis coordinates.
std::vector<std::filesystem::path> emit_sweep(const SweepResult& result, const EmitRequest& req);

DataTable table_from_field(const ScalarField& field, const std::string& value_name);
MatrixData matrix_from_field(const SpaceTimeField& field);

}  // namespace qetsim
