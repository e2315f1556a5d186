#pragma once

#include <cstdint>

#include "elm/dataset.hpp"
#include "elm/model.hpp"
#include "elm/shapers.hpp"

namespace elm {

struct TrainOptions {
  Activation activation = Activation::Logistic;
  ShapeConfig shaping;
  // Columns folded per Gram batch; 0 sizes batches from the memory budget.
  Index batch_columns = 0;
  // Working-set ceiling; 0 means the built-in default. When two copies of
  // the Gram matrix do not fit, the solve runs in place and skips the
  // residual check.
  std::int64_t memory_budget_mb = 0;
};

struct TrainResult {
  ElmModel model;
  // Wall clock from shaper start to the output-weight solve returning;
  // excludes data loading and evaluation.
  double train_seconds = 0.0;
  std::int64_t samples_seen = 0;
};

// Shapes input weights on `data`, streams the same data through the Gram
// accumulator, and solves for the output weights.
TrainResult train(const LabeledDataset& data, Method method, Index m, double c,
                  std::uint64_t seed, const TrainOptions& opts = {});

// Same, but the Gram pass consumes `stream` (e.g. a translation-augmented
// view) while the shaper still sees `shaping_data`.
TrainResult train(const LabeledDataset& shaping_data, const ColumnSource& stream,
                  Method method, Index m, double c, std::uint64_t seed,
                  const TrainOptions& opts = {});

// Standard ELM on an already-built feature matrix (the combiner's top stage).
ElmModel train_features(const DenseMatrix& x, const std::vector<int>& labels,
                        int n_classes, Index m, double c, std::uint64_t seed,
                        Activation activation = Activation::Logistic,
                        double alpha = 2.0);

// Raw left/right outputs stacked into a 2N-high feature matrix.
DenseMatrix stacked_features(const ElmModel& left, const ElmModel& right,
                             const DenseMatrix& x);

struct CombinerOptions {
  Index m_top = 500;
  double c_top = 1e-6;
  TrainOptions base;
};

struct CombinerResult {
  CombinedModel model;
  double train_seconds = 0.0;
};

// RF-CIW and RF-C parts trained to completion, then a small standard ELM
// trained on their stacked raw training outputs.
CombinerResult train_combiner(const LabeledDataset& data, Index m_each, double c,
                              std::uint64_t seed, const CombinerOptions& opts = {});

}  // namespace elm
