#include "elm/gram.hpp"

#include <cblas.h>

#include <string>
#include <utility>

#include "elm/errors.hpp"

namespace elm {

GramAccumulator::GramAccumulator(Index m, Index n)
    : g_(m, m), c_(n, m), samples_seen_(0) {
  if (m <= 0 || n <= 0) throw ShapeError("GramAccumulator dimensions must be positive");
}

void GramAccumulator::fold(const DenseMatrix& a_batch, const DenseMatrix& y_batch) {
  const Index m = g_.rows();
  const Index n = c_.rows();
  if (a_batch.rows() != m)
    throw ShapeError("activation batch has " + std::to_string(a_batch.rows()) +
                     " rows, accumulator expects " + std::to_string(m));
  if (y_batch.rows() != n)
    throw ShapeError("target batch has " + std::to_string(y_batch.rows()) +
                     " rows, accumulator expects " + std::to_string(n));
  if (a_batch.cols() != y_batch.cols())
    throw ShapeError("batch column counts differ: " + std::to_string(a_batch.cols()) +
                     " vs " + std::to_string(y_batch.cols()));
  if (!a_batch.all_finite() || !y_batch.all_finite())
    throw DataError("non-finite value in accumulation batch");

  const Index b = a_batch.cols();
  if (b == 0) return;

  // Rank-b update of the upper triangle, then mirror so the stored matrix is
  // exactly symmetric rather than symmetric up to rounding.
  cblas_dsyrk(CblasRowMajor, CblasUpper, CblasNoTrans, static_cast<int>(m),
              static_cast<int>(b), 1.0, a_batch.data(), static_cast<int>(b), 1.0,
              g_.data(), static_cast<int>(m));
  for (Index r = 1; r < m; ++r)
    for (Index c = 0; c < r; ++c) g_(r, c) = g_(c, r);

  cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasTrans, static_cast<int>(n),
              static_cast<int>(m), static_cast<int>(b), 1.0, y_batch.data(),
              static_cast<int>(b), a_batch.data(), static_cast<int>(b), 1.0,
              c_.data(), static_cast<int>(m));

  samples_seen_ += b;
}

void GramAccumulator::merge(const GramAccumulator& other) {
  if (other.g_.rows() != g_.rows() || other.c_.rows() != c_.rows())
    throw ShapeError("cannot merge accumulators of different dimensions");
  for (Index i = 0; i < g_.size(); ++i) g_.data()[i] += other.g_.data()[i];
  for (Index i = 0; i < c_.size(); ++i) c_.data()[i] += other.c_.data()[i];
  samples_seen_ += other.samples_seen_;
}

DenseMatrix GramAccumulator::take_gram() && { return std::move(g_); }

}  // namespace elm
