#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vecpart/io_util.hpp"

namespace vecpart {

// Dense row-major matrix of doubles. Rows are vertices everywhere in this
// library (feature rows, embedding rows, centroid rows).
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

  std::span<double> row(std::size_t i) { return {values.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * cols, cols}; }

  double& operator()(std::size_t i, std::size_t j) { return values[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }

  bool all_finite() const {
    for (double v : values) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }
};

using FeatureMatrix = Matrix;
using EmbeddingMatrix = Matrix;

// TSV, one row per line, values separated by single tabs. `expected_rows`
// must match exactly; every value must be finite.
inline Matrix load_matrix_tsv(const std::string& path, std::size_t expected_rows) {
  const std::string content = detail::read_file(path);
  Matrix m;
  std::vector<double> row_buf;
  detail::for_each_line(content, [&](std::string_view line, std::size_t line_no) {
    if (detail::is_blank(line)) return;
    row_buf.clear();
    std::size_t pos = 0;
    while (true) {
      std::size_t tab = line.find('\t', pos);
      std::string_view tok = line.substr(pos, tab == std::string_view::npos ? line.size() - pos : tab - pos);
      double value = 0.0;
      if (!detail::parse_double(tok, value)) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": non-numeric value '" +
                                 std::string(tok) + "'");
      }
      if (!std::isfinite(value)) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": non-finite value");
      }
      row_buf.push_back(value);
      if (tab == std::string_view::npos) break;
      pos = tab + 1;
    }
    if (m.rows == 0) {
      m.cols = row_buf.size();
    } else if (row_buf.size() != m.cols) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(m.cols) + " values, got " + std::to_string(row_buf.size()));
    }
    m.values.insert(m.values.end(), row_buf.begin(), row_buf.end());
    ++m.rows;
  });
  if (m.rows != expected_rows) {
    throw std::runtime_error(path + ": row count mismatch (expected " + std::to_string(expected_rows) +
                             ", got " + std::to_string(m.rows) + ")");
  }
  return m;
}

// %.17g round-trips doubles exactly, so a reload reproduces the matrix bit
// for bit.
inline void save_matrix_tsv(const Matrix& m, const std::string& path) {
  std::string out;
  out.reserve(m.values.size() * 12);
  char buf[40];
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      const int len = std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
      if (j > 0) out.push_back('\t');
      out.append(buf, static_cast<std::size_t>(len));
    }
    out.push_back('\n');
  }
  detail::write_file(path, out);
}

}  // namespace vecpart
