#include "elm/train.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "elm/errors.hpp"
#include "elm/gram.hpp"
#include "elm/ridge.hpp"
#include "elm/rng.hpp"

namespace elm {

namespace {

constexpr Index kFoldBatch = 2048;
constexpr std::int64_t kDefaultBudgetMb = 4300;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

using FillFn = std::function<void(Index begin, Index n, DenseMatrix& block,
                                  std::vector<int>& labels)>;

// Folds `count` streamed columns into G and C, then solves. Falls back to the
// in-place solve (no residual check) when two Gram-sized buffers exceed the
// memory budget.
DenseMatrix solve_streamed(const InputWeights& iw, Activation activation,
                           const FillFn& fill, Index count, int n_classes, double c,
                           const TrainOptions& opts, std::int64_t* samples_seen) {
  const Index m = iw.w.rows();
  const Index batch = opts.batch_columns > 0 ? opts.batch_columns : kFoldBatch;

  GramAccumulator acc(m, n_classes);
  DenseMatrix block;
  std::vector<int> labels;
  for (Index begin = 0; begin < count; begin += batch) {
    const Index n = std::min(batch, count - begin);
    fill(begin, n, block, labels);
    DenseMatrix a = hidden(iw, activation, block);
    acc.fold(a, one_hot(labels, n_classes).y);
  }
  if (samples_seen) *samples_seen = acc.samples_seen();

  const std::int64_t budget_mb =
      opts.memory_budget_mb > 0 ? opts.memory_budget_mb : kDefaultBudgetMb;
  const std::int64_t gram_bytes = static_cast<std::int64_t>(m) * m * 8;
  if (2 * gram_bytes + gram_bytes / 4 <= budget_mb * 1000000)
    return ridge_solve(acc.gram(), acc.cross(), c);
  return ridge_solve_destructive(std::move(acc).take_gram(), acc.cross(), c);
}

}  // namespace

TrainResult train(const LabeledDataset& shaping_data, const ColumnSource& stream,
                  Method method, Index m, double c, std::uint64_t seed,
                  const TrainOptions& opts) {
  shaping_data.validate();
  const int n = stream.n_classes();
  if (m < n)
    throw ConfigError("M=" + std::to_string(m) + " is below the class count " +
                      std::to_string(n));
  if (stream.dim() != shaping_data.dim())
    throw ShapeError("stream dimension " + std::to_string(stream.dim()) +
                     " does not match shaping data dimension " +
                     std::to_string(shaping_data.dim()));

  const auto t0 = Clock::now();
  TrainResult result;
  result.model.input = shape(method, shaping_data, m, opts.shaping, seed);
  result.model.activation = opts.activation;
  result.model.n_classes = n;
  result.model.w_out = solve_streamed(
      result.model.input, opts.activation,
      [&stream](Index begin, Index count, DenseMatrix& block,
                std::vector<int>& labels) { stream.fill(begin, count, block, labels); },
      stream.count(), n, c, opts, &result.samples_seen);
  result.train_seconds = seconds_since(t0);
  return result;
}

TrainResult train(const LabeledDataset& data, Method method, Index m, double c,
                  std::uint64_t seed, const TrainOptions& opts) {
  DatasetSource source(data);
  return train(data, source, method, m, c, seed, opts);
}

ElmModel train_features(const DenseMatrix& x, const std::vector<int>& labels,
                        int n_classes, Index m, double c, std::uint64_t seed,
                        Activation activation, double alpha) {
  if (static_cast<Index>(labels.size()) != x.cols())
    throw ShapeError("have " + std::to_string(labels.size()) + " labels for " +
                     std::to_string(x.cols()) + " feature columns");
  ElmModel model;
  model.input = random_bipolar(m, x.rows(), seed, alpha);
  model.activation = activation;
  model.n_classes = n_classes;
  TrainOptions opts;
  model.w_out = solve_streamed(
      model.input, activation,
      [&x, &labels](Index begin, Index count, DenseMatrix& block,
                    std::vector<int>& out_labels) {
        block = x.slice_cols(begin, begin + count);
        out_labels.assign(labels.begin() + begin, labels.begin() + begin + count);
      },
      x.cols(), n_classes, c, opts, nullptr);
  return model;
}

DenseMatrix stacked_features(const ElmModel& left, const ElmModel& right,
                             const DenseMatrix& x) {
  const Index n_left = left.w_out.rows();
  const Index n_right = right.w_out.rows();
  DenseMatrix out(n_left + n_right, x.cols());
  for (Index begin = 0; begin < x.cols(); begin += kFoldBatch) {
    const Index end = std::min(x.cols(), begin + kFoldBatch);
    DenseMatrix slice = x.slice_cols(begin, end);
    DenseMatrix a = raw_output(left, slice);
    DenseMatrix b = raw_output(right, slice);
    for (Index i = 0; i < n_left; ++i)
      for (Index j = 0; j < a.cols(); ++j) out(i, begin + j) = a(i, j);
    for (Index i = 0; i < n_right; ++i)
      for (Index j = 0; j < b.cols(); ++j) out(n_left + i, begin + j) = b(i, j);
  }
  return out;
}

std::vector<int> predict_combined(const CombinedModel& model, const DenseMatrix& x) {
  return predict(model.top, stacked_features(model.left, model.right, x));
}

CombinerResult train_combiner(const LabeledDataset& data, Index m_each, double c,
                              std::uint64_t seed, const CombinerOptions& opts) {
  const auto t0 = Clock::now();
  std::uint64_t t = seed;
  const std::uint64_t seed_left = splitmix64(t);
  const std::uint64_t seed_right = splitmix64(t);
  const std::uint64_t seed_top = splitmix64(t);

  CombinerResult result;
  result.model.left = train(data, Method::RfCiw, m_each, c, seed_left, opts.base).model;
  result.model.right = train(data, Method::RfC, m_each, c, seed_right, opts.base).model;

  DenseMatrix feats = stacked_features(result.model.left, result.model.right, data.x);
  result.model.top =
      train_features(feats, data.labels, data.n_classes, opts.m_top, opts.c_top,
                      seed_top, opts.base.activation, opts.base.shaping.alpha);
  result.train_seconds = seconds_since(t0);
  return result;
}

}  // namespace elm
