#pragma once

#include <cstdint>

#include "elm/dense_matrix.hpp"

namespace elm {

// Streaming accumulator for the two products that output-weight training
// needs: G = sum_j d_j d_j^T (M x M) and C = sum_j y_j d_j^T (N x M), folded
// batch by batch so the full M x K activation matrix never has to exist.
// Folding K columns in any batch partition gives the same G and C (up to
// roundoff well below 1e-10 relative), and two accumulators built from
// disjoint column sets merge by addition.
class GramAccumulator {
 public:
  GramAccumulator(Index m, Index n);

  // acc.G += a_batch * a_batch^T; acc.C += y_batch * a_batch^T.
  // a_batch is M x B, y_batch is N x B. Rejects non-finite inputs.
  void fold(const DenseMatrix& a_batch, const DenseMatrix& y_batch);

  void merge(const GramAccumulator& other);

  const DenseMatrix& gram() const { return g_; }
  const DenseMatrix& cross() const { return c_; }
  std::int64_t samples_seen() const { return samples_seen_; }

  // Hands the Gram buffer to a destructive solve; the accumulator is empty
  // afterwards.
  DenseMatrix take_gram() &&;

 private:
  DenseMatrix g_;
  DenseMatrix c_;
  std::int64_t samples_seen_ = 0;
};

}  // namespace elm
