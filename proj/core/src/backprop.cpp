#include "elm/backprop.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "elm/errors.hpp"
#include "elm/gram.hpp"
#include "elm/ridge.hpp"

namespace elm {

namespace {

constexpr Index kFoldBatch = 2048;
constexpr std::int64_t kDefaultBudgetMb = 4300;

DenseMatrix transposed(const DenseMatrix& m) {
  DenseMatrix out(m.cols(), m.rows());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

// Same fold width and solve policy as train(), so a zero-rate step reproduces
// the trained W_out bit for bit.
DenseMatrix resolve_w_out(const DenseMatrix& a, const DenseMatrix& y, double c) {
  const Index m = a.rows();
  GramAccumulator acc(m, y.rows());
  for (Index begin = 0; begin < a.cols(); begin += kFoldBatch) {
    const Index end = std::min(a.cols(), begin + kFoldBatch);
    acc.fold(a.slice_cols(begin, end), y.slice_cols(begin, end));
  }
  const std::int64_t gram_bytes = static_cast<std::int64_t>(m) * m * 8;
  if (2 * gram_bytes + gram_bytes / 4 <= kDefaultBudgetMb * 1000000)
    return ridge_solve(acc.gram(), acc.cross(), c);
  return ridge_solve_destructive(std::move(acc).take_gram(), acc.cross(), c);
}

}  // namespace

BpStep bp_step(ElmModel model, const DenseMatrix& x, const DenseMatrix& y_label,
               DenseMatrix a, double xi, double ridge_c, bool mask_updates) {
  if (model.activation != Activation::Logistic)
    throw ConfigError("the update rule needs the logistic activation, model uses " +
                      to_string(model.activation));
  if (xi < 0.0) throw ConfigError("learning rate must be non-negative");
  if (a.rows() != model.input.w.rows() || a.cols() != x.cols())
    throw ShapeError("activations are " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + ", expected " +
                     std::to_string(model.input.w.rows()) + "x" +
                     std::to_string(x.cols()));
  if (y_label.rows() != model.w_out.rows() || y_label.cols() != x.cols())
    throw ShapeError("targets are " + std::to_string(y_label.rows()) + "x" +
                     std::to_string(y_label.cols()) + ", expected " +
                     std::to_string(model.w_out.rows()) + "x" +
                     std::to_string(x.cols()));

  // E = Y - W_out A
  DenseMatrix e = matmul(model.w_out, a);
  for (Index i = 0; i < e.size(); ++i)
    e.data()[i] = y_label.data()[i] - e.data()[i];

  // S = (W_out^T E) o A o (1 - A), the logistic derivative in terms of A
  DenseMatrix s = matmul(transposed(model.w_out), e);
  e = DenseMatrix();
  for (Index i = 0; i < s.size(); ++i) {
    const double ai = a.data()[i];
    s.data()[i] *= ai - ai * ai;
  }
  a = DenseMatrix();  // recomputed after the update; drop the buffer early

  std::vector<double> dbias;
  if (model.input.has_bias()) {
    dbias.resize(static_cast<std::size_t>(s.rows()));
    for (Index i = 0; i < s.rows(); ++i) {
      double sum = 0.0;
      const double* row = s.row(i);
      for (Index j = 0; j < s.cols(); ++j) sum += row[j];
      dbias[static_cast<std::size_t>(i)] = xi * sum;
    }
  }

  DenseMatrix dw = matmul_bt(s, x);
  s = DenseMatrix();
  for (Index i = 0; i < dw.size(); ++i) dw.data()[i] *= xi;
  if (mask_updates && model.input.has_mask())
    for (Index i = 0; i < dw.size(); ++i)
      if (model.input.mask.data()[i] == 0.0) dw.data()[i] = 0.0;

  for (Index i = 0; i < dw.size(); ++i)
    model.input.w.data()[i] += dw.data()[i];
  bool finite = model.input.w.all_finite();
  for (std::size_t i = 0; i < dbias.size(); ++i) {
    model.input.bias[i] += dbias[i];
    finite = finite && std::isfinite(model.input.bias[i]);
  }
  if (!finite)
    throw SolverError("input weights are not finite after the update; reduce "
                      "the learning rate");

  BpStep out;
  out.a = hidden(model.input, model.activation, x);
  out.model = std::move(model);
  out.model.w_out = resolve_w_out(out.a, y_label, ridge_c);
  return out;
}

FinetuneResult finetune(ElmModel model, const LabeledDataset& data, double ridge_c,
                        const BpConfig& cfg) {
  if (!(cfg.learning_rate > 0.0))
    throw ConfigError("learning rate must be positive");
  if (cfg.iterations < 1) throw ConfigError("iterations must be at least 1");
  data.validate();
  if (model.n_classes != data.n_classes)
    throw ConfigError("model has " + std::to_string(model.n_classes) +
                      " classes, data has " + std::to_string(data.n_classes));

  const DenseMatrix y = one_hot(data.labels, data.n_classes).y;
  DenseMatrix a = hidden(model.input, model.activation, data.x);

  FinetuneResult out;
  out.train_error_trace.reserve(static_cast<std::size_t>(cfg.iterations));
  for (int it = 0; it < cfg.iterations; ++it) {
    BpStep step = bp_step(std::move(model), data.x, y, std::move(a),
                          cfg.learning_rate, ridge_c, cfg.mask_updates);
    model = std::move(step.model);
    a = std::move(step.a);

    DenseMatrix scores = matmul(model.w_out, a);
    std::vector<int> pred(static_cast<std::size_t>(scores.cols()));
    for (Index j = 0; j < scores.cols(); ++j) {
      Index best = 0;
      for (Index i = 1; i < scores.rows(); ++i)
        if (scores(i, j) > scores(best, j)) best = i;
      pred[static_cast<std::size_t>(j)] = static_cast<int>(best);
    }
    out.train_error_trace.push_back(error_rate(pred, data.labels));
  }
  out.model = std::move(model);
  return out;
}

}  // namespace elm
