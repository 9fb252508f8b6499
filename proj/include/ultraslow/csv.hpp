#pragma once

// CSV emission: '.' decimal separator, LF line endings, 17 significant
// digits.  Plus the run-manifest JSON helpers.

#include <Eigen/Core>
#include <string>
#include <vector>

#include "ultraslow/relaxation.hpp"

namespace ultraslow::io {

std::string format_value(double v);  // %.17g

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);
  void row(const std::vector<std::string>& cells);
  void row_values(const std::vector<double>& values);
  const std::string& str() const { return buf_; }
  void write(const std::string& path) const;

 private:
  std::size_t n_cols_;
  std::string buf_;
};

// header: t,v,method,lambda,v0
std::string relaxation_csv(const relax::RelaxationSolution& sol);
void write_relaxation_csv(const std::string& path, const relax::RelaxationSolution& sol);

}  // namespace ultraslow::io
