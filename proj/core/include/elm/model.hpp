#pragma once

#include <vector>

#include "elm/activation.hpp"
#include "elm/dense_matrix.hpp"
#include "elm/input_weights.hpp"

namespace elm {

struct ElmModel {
  InputWeights input;
  Activation activation = Activation::Logistic;
  DenseMatrix w_out;  // N x M
  int n_classes = 0;
};

// A = f(W_in x + bias 1^T), M x P.
DenseMatrix hidden(const InputWeights& input, Activation activation,
                   const DenseMatrix& x);

// W_out A without the argmax, N x P.
DenseMatrix raw_output(const ElmModel& model, const DenseMatrix& x);

// Argmax per column; ties go to the lowest class index. Wide inputs are
// processed in column batches so the hidden matrix stays small.
std::vector<int> predict(const ElmModel& model, const DenseMatrix& x);

// 100 * mismatches / length.
double error_rate(const std::vector<int>& predicted, const std::vector<int>& truth);

// Two shaped networks whose raw outputs feed a small third network.
struct CombinedModel {
  ElmModel left;
  ElmModel right;
  ElmModel top;  // input dimension 2N
};

std::vector<int> predict_combined(const CombinedModel& model, const DenseMatrix& x);

}  // namespace elm
