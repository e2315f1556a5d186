#pragma once

#include <vector>

#include "elm/dataset.hpp"
#include "elm/dense_matrix.hpp"
#include "elm/model.hpp"

namespace elm {

struct BpConfig {
  double learning_rate = 0.001;
  int iterations = 10;
  // Zero the input-weight update outside the mask support so receptive
  // fields stay sparse. Off by default: the update rule is dense.
  bool mask_updates = false;
};

struct BpStep {
  ElmModel model;
  DenseMatrix a;  // hidden activations after the step
};

// One full-batch update: E = Y - W_out A, dW = xi [(W_out^T E) o (A - A o A)] X^T,
// W_in <- W_in + dW (the step that reduces ||E||^2; dW is -xi/2 times its
// gradient), bias treated as a weight against a constant-1 input, then A and
// W_out recomputed. Logistic activation only.
BpStep bp_step(ElmModel model, const DenseMatrix& x, const DenseMatrix& y_label,
               DenseMatrix a, double xi, double ridge_c, bool mask_updates = false);

struct FinetuneResult {
  ElmModel model;
  // Training error (percent) after each iteration.
  std::vector<double> train_error_trace;
};

FinetuneResult finetune(ElmModel model, const LabeledDataset& data, double ridge_c,
                        const BpConfig& cfg);

}  // namespace elm
