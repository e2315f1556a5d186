#include "elm/model.hpp"

#include <cmath>
#include <string>

#include "elm/errors.hpp"

namespace elm {

Activation activation_from_string(std::string_view name) {
  if (name == "logistic") return Activation::Logistic;
  if (name == "relu") return Activation::Relu;
  if (name == "abs") return Activation::Abs;
  if (name == "quadratic") return Activation::Quadratic;
  throw ConfigError("unknown activation '" + std::string(name) +
                    "' (expected logistic, relu, abs or quadratic)");
}

std::string to_string(Activation kind) {
  switch (kind) {
    case Activation::Logistic: return "logistic";
    case Activation::Relu: return "relu";
    case Activation::Abs: return "abs";
    case Activation::Quadratic: return "quadratic";
  }
  throw ConfigError("invalid activation value");
}

DenseMatrix activate(const DenseMatrix& d, Activation kind) {
  DenseMatrix out = d;
  double* p = out.data();
  const Index n = out.size();
  switch (kind) {
    case Activation::Logistic:
      for (Index i = 0; i < n; ++i) p[i] = 1.0 / (1.0 + std::exp(-p[i]));
      break;
    case Activation::Relu:
      for (Index i = 0; i < n; ++i) p[i] = p[i] > 0.0 ? p[i] : 0.0;
      break;
    case Activation::Abs:
      for (Index i = 0; i < n; ++i) p[i] = std::fabs(p[i]);
      break;
    case Activation::Quadratic:
      for (Index i = 0; i < n; ++i) p[i] = p[i] * p[i];
      break;
  }
  return out;
}

DenseMatrix hidden(const InputWeights& input, Activation activation,
                   const DenseMatrix& x) {
  if (input.w.cols() != x.rows())
    throw ShapeError("input weights expect dimension " +
                     std::to_string(input.w.cols()) + ", samples have " +
                     std::to_string(x.rows()));
  DenseMatrix pre = matmul(input.w, x);
  if (input.has_bias()) {
    if (static_cast<Index>(input.bias.size()) != pre.rows())
      throw ShapeError("bias length does not match hidden unit count");
    for (Index i = 0; i < pre.rows(); ++i) {
      const double b = input.bias[static_cast<std::size_t>(i)];
      double* row = pre.row(i);
      for (Index j = 0; j < pre.cols(); ++j) row[j] += b;
    }
  }
  return activate(pre, activation);
}

DenseMatrix raw_output(const ElmModel& model, const DenseMatrix& x) {
  return matmul(model.w_out, hidden(model.input, model.activation, x));
}

std::vector<int> predict(const ElmModel& model, const DenseMatrix& x) {
  constexpr Index kBatch = 2048;
  std::vector<int> labels(static_cast<std::size_t>(x.cols()));
  for (Index begin = 0; begin < x.cols(); begin += kBatch) {
    const Index end = std::min(x.cols(), begin + kBatch);
    DenseMatrix out = raw_output(model, x.slice_cols(begin, end));
    for (Index j = 0; j < out.cols(); ++j) {
      Index best = 0;
      for (Index i = 1; i < out.rows(); ++i)
        if (out(i, j) > out(best, j)) best = i;
      labels[static_cast<std::size_t>(begin + j)] = static_cast<int>(best);
    }
  }
  return labels;
}

double error_rate(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.size() != truth.size())
    throw ShapeError("prediction and truth lengths differ: " +
                     std::to_string(predicted.size()) + " vs " +
                     std::to_string(truth.size()));
  if (predicted.empty()) return 0.0;
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i)
    if (predicted[i] != truth[i]) ++wrong;
  return 100.0 * static_cast<double>(wrong) / static_cast<double>(predicted.size());
}

}  // namespace elm
