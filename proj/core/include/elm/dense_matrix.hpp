#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace elm {

using Index = std::int64_t;

// Row-major dense matrix of doubles. The single value carrier for inputs X,
// projections D, activations A, weights W_in/W_out, labels Y and Gram
// matrices. Immutable by convention once an operation returns it; ops that
// mutate take it by non-const reference explicitly.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(Index rows, Index cols);

  // Row-wise literal, for tests and small fixtures:
  //   DenseMatrix m{{1.0, 2.0}, {3.0, 4.0}};
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index size() const { return rows_ * cols_; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  double& operator()(Index r, Index c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  double operator()(Index r, Index c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }

  double* row(Index r) { return data() + r * cols_; }
  const double* row(Index r) const { return data() + r * cols_; }

  bool all_finite() const;

  // Columns [begin, end) copied into a fresh rows() x (end-begin) matrix.
  DenseMatrix slice_cols(Index begin, Index end) const;

  bool operator==(const DenseMatrix& other) const = default;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<double> data_;
};

// Standard product a(m x k) * b(k x n). Fixed per-element reduction order;
// repeated calls on the same inputs are bit-identical.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

// a(m x k) * b(n x k)^T, without materializing the transpose.
DenseMatrix matmul_bt(const DenseMatrix& a, const DenseMatrix& b);

// G + c*I. G must be square.
DenseMatrix add_scaled_identity(const DenseMatrix& g, double c);

double frobenius_norm(const DenseMatrix& m);

}  // namespace elm
