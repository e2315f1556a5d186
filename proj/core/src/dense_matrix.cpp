#include "elm/dense_matrix.hpp"

#include <cblas.h>

#include <cmath>
#include <cstring>
#include <string>

#include "elm/errors.hpp"

namespace elm {

namespace {

std::string shape_str(const DenseMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

DenseMatrix::DenseMatrix(Index rows, Index cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), 0.0) {
  if (rows < 0 || cols < 0) throw ShapeError("negative matrix dimension");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = static_cast<Index>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  data_.reserve(static_cast<std::size_t>(rows_ * cols_));
  for (const auto& r : rows) {
    if (static_cast<Index>(r.size()) != cols_)
      throw ShapeError("ragged initializer for DenseMatrix");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

bool DenseMatrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

DenseMatrix DenseMatrix::slice_cols(Index begin, Index end) const {
  if (begin < 0 || end < begin || end > cols_)
    throw ShapeError("column slice [" + std::to_string(begin) + ", " +
                     std::to_string(end) + ") out of range for " + shape_str(*this));
  DenseMatrix out(rows_, end - begin);
  for (Index r = 0; r < rows_; ++r)
    std::memcpy(out.row(r), row(r) + begin,
                static_cast<std::size_t>(end - begin) * sizeof(double));
  return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows())
    throw ShapeError("matmul shape mismatch: " + shape_str(a) + " * " + shape_str(b));
  DenseMatrix out(a.rows(), b.cols());
  if (out.size() == 0 || a.cols() == 0) return out;
  cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans,
              static_cast<int>(a.rows()), static_cast<int>(b.cols()),
              static_cast<int>(a.cols()), 1.0, a.data(), static_cast<int>(a.cols()),
              b.data(), static_cast<int>(b.cols()), 0.0, out.data(),
              static_cast<int>(out.cols()));
  return out;
}

DenseMatrix matmul_bt(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.cols())
    throw ShapeError("matmul_bt shape mismatch: " + shape_str(a) + " * " +
                     shape_str(b) + "^T");
  DenseMatrix out(a.rows(), b.rows());
  if (out.size() == 0 || a.cols() == 0) return out;
  cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasTrans, static_cast<int>(a.rows()),
              static_cast<int>(b.rows()), static_cast<int>(a.cols()), 1.0, a.data(),
              static_cast<int>(a.cols()), b.data(), static_cast<int>(b.cols()), 0.0,
              out.data(), static_cast<int>(out.cols()));
  return out;
}

DenseMatrix add_scaled_identity(const DenseMatrix& g, double c) {
  if (g.rows() != g.cols())
    throw ShapeError("add_scaled_identity needs a square matrix, got " + shape_str(g));
  DenseMatrix out = g;
  for (Index i = 0; i < out.rows(); ++i) out(i, i) += c;
  return out;
}

double frobenius_norm(const DenseMatrix& m) {
  double acc = 0.0;
  for (Index i = 0; i < m.size(); ++i) acc += m.data()[i] * m.data()[i];
  return std::sqrt(acc);
}

}  // namespace elm
