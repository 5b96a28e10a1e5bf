// Compressed-row sparse matrices with triplet assembly, products, restriction
// to free dofs, and Matrix Market export.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace hallmhd {

struct Triplet {
  std::int64_t row, col;
  double value;
};

class SparseMatrix {
 public:
  std::int64_t rows = 0, cols = 0;
  std::vector<std::int64_t> row_ptr;  // size rows+1
  std::vector<std::int64_t> col_idx;  // sorted, unique per row
  std::vector<double> values;

  SparseMatrix() = default;
  SparseMatrix(std::int64_t r, std::int64_t c) : rows(r), cols(c), row_ptr(r + 1, 0) {}

  std::int64_t nnz() const { return static_cast<std::int64_t>(values.size()); }

  static SparseMatrix from_triplets(std::int64_t rows, std::int64_t cols,
                                    std::vector<Triplet> trip) {
    for (const auto& t : trip)
      if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
        throw std::out_of_range("from_triplets: index out of range");
    std::sort(trip.begin(), trip.end(), [](const Triplet& a, const Triplet& b) {
      return a.row < b.row || (a.row == b.row && a.col < b.col);
    });
    SparseMatrix A(rows, cols);
    A.col_idx.reserve(trip.size());
    A.values.reserve(trip.size());
    std::size_t i = 0;
    for (std::int64_t r = 0; r < rows; ++r) {
      while (i < trip.size() && trip[i].row == r) {
        std::int64_t c = trip[i].col;
        double v = 0.0;
        while (i < trip.size() && trip[i].row == r && trip[i].col == c) v += trip[i++].value;
        A.col_idx.push_back(c);
        A.values.push_back(v);
      }
      A.row_ptr[r + 1] = static_cast<std::int64_t>(A.col_idx.size());
    }
    return A;
  }

  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const {
    if (x.size() != cols) throw std::invalid_argument("multiply: size mismatch");
    Eigen::VectorXd y = Eigen::VectorXd::Zero(rows);
    for (std::int64_t r = 0; r < rows; ++r) {
      double acc = 0.0;
      for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
        acc += values[k] * x[col_idx[k]];
      y[r] = acc;
    }
    return y;
  }

  SparseMatrix transposed() const {
    std::vector<Triplet> trip;
    trip.reserve(values.size());
    for (std::int64_t r = 0; r < rows; ++r)
      for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
        trip.push_back({col_idx[k], r, values[k]});
    return from_triplets(cols, rows, std::move(trip));
  }

  SparseMatrix multiply(const SparseMatrix& B) const {
    if (cols != B.rows) throw std::invalid_argument("multiply: dimension mismatch");
    std::vector<Triplet> trip;
    for (std::int64_t r = 0; r < rows; ++r) {
      for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
        std::int64_t m = col_idx[k];
        double v = values[k];
        for (std::int64_t j = B.row_ptr[m]; j < B.row_ptr[m + 1]; ++j)
          trip.push_back({r, B.col_idx[j], v * B.values[j]});
      }
    }
    return from_triplets(rows, B.cols, std::move(trip));
  }

  SparseMatrix scaled(double s) const {
    SparseMatrix A = *this;
    for (double& v : A.values) v *= s;
    return A;
  }

  // Keeps rows/cols with nonnegative new index; maps carry new index or -1.
  SparseMatrix restricted(const std::vector<std::int64_t>& row_map, std::int64_t new_rows,
                          const std::vector<std::int64_t>& col_map,
                          std::int64_t new_cols) const {
    std::vector<Triplet> trip;
    for (std::int64_t r = 0; r < rows; ++r) {
      std::int64_t rn = row_map[r];
      if (rn < 0) continue;
      for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
        std::int64_t cn = col_map[col_idx[k]];
        if (cn >= 0) trip.push_back({rn, cn, values[k]});
      }
    }
    return from_triplets(new_rows, new_cols, std::move(trip));
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }

  double inf_norm() const {
    double m = 0.0;
    for (std::int64_t r = 0; r < rows; ++r) {
      double acc = 0.0;
      for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) acc += std::abs(values[k]);
      m = std::max(m, acc);
    }
    return m;
  }

  Eigen::MatrixXd to_dense() const {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(rows, cols);
    for (std::int64_t r = 0; r < rows; ++r)
      for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) D(r, col_idx[k]) = values[k];
    return D;
  }

  void append_triplets(std::vector<Triplet>& out, std::int64_t row_offset,
                       std::int64_t col_offset, double scale = 1.0) const {
    for (std::int64_t r = 0; r < rows; ++r)
      for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
        out.push_back({r + row_offset, col_idx[k] + col_offset, scale * values[k]});
  }
};

// Coordinate-format Matrix Market text file, 1-based indices.
inline void write_matrix_market(const SparseMatrix& A, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_matrix_market: cannot open " + path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << A.rows << " " << A.cols << " " << A.nnz() << "\n";
  char buf[64];
  for (std::int64_t r = 0; r < A.rows; ++r) {
    for (std::int64_t k = A.row_ptr[r]; k < A.row_ptr[r + 1]; ++k) {
      std::snprintf(buf, sizeof(buf), "%lld %lld %.17g\n",
                    static_cast<long long>(r + 1), static_cast<long long>(A.col_idx[k] + 1),
                    A.values[k]);
      out << buf;
    }
  }
}

}  // namespace hallmhd
