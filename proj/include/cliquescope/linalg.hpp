#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cliquescope/graph.hpp"

namespace cliquescope {

// Row-major rows x cols matrix.
class RowMatrix {
 public:
  RowMatrix() = default;
  RowMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static RowMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  RowMatrix transpose() const;
  friend RowMatrix operator*(const RowMatrix& a, const RowMatrix& b);
  friend bool operator==(const RowMatrix&, const RowMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct EigenDecomposition {
  // Ascending.
  std::vector<double> values;
  // Column j is the unit eigenvector for values[j].
  RowMatrix vectors;
  std::size_t sweeps = 0;
};

struct JacobiOptions {
  // Stop once the off-diagonal Frobenius norm falls below
  // threshold * max(1, ||A||_F).
  double threshold = 1e-10;
  std::size_t max_sweeps = 100;
};

// Cyclic Jacobi for a symmetric matrix. Throws ConvergenceError past the
// sweep cap. Each eigenvector is signed so its first nonzero entry is
// positive.
EigenDecomposition symmetric_eigen(const DenseMatrix& a, const JacobiOptions& options = {});

struct SvdResult {
  RowMatrix u;
  std::vector<double> singular_values;
  RowMatrix v;
};

// One-sided Jacobi SVD of a square matrix, a = u * diag(s) * v^T. Columns of
// u belonging to zero singular values are completed to an orthonormal basis.
SvdResult square_svd(const RowMatrix& a);

}  // namespace cliquescope
