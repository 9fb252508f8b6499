#include "ultraslow/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ultraslow::io {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : n_cols_(columns.size()) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) buf_ += ',';
    buf_ += columns[i];
  }
  buf_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != n_cols_) throw std::invalid_argument("csv: column count mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) buf_ += ',';
    buf_ += cells[i];
  }
  buf_ += '\n';
}

void CsvWriter::row_values(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_value(v));
  row(cells);
}

void CsvWriter::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  if (!out) throw std::runtime_error("csv: cannot write " + path);
  out << buf_;
}

std::string relaxation_csv(const relax::RelaxationSolution& sol) {
  CsvWriter w({"t", "v", "method", "lambda", "v0"});
  const char* name = sol.method == relax::Method::Series
                         ? "series"
                         : (sol.method == relax::Method::Integral ? "integral" : "l1");
  for (Eigen::Index i = 0; i < sol.t.size(); ++i) {
    w.row({format_value(sol.t[i]), format_value(sol.v[i]), name, format_value(sol.lambda),
           format_value(sol.v0)});
  }
  return w.str();
}

void write_relaxation_csv(const std::string& path, const relax::RelaxationSolution& sol) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("csv: cannot write " + path);
  out << relaxation_csv(sol);
}

}  // namespace ultraslow::io
