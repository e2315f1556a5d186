#include "elm/dataset.hpp"

#include <cmath>
#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include "elm/errors.hpp"

namespace elm {

namespace {

// Shift offsets in column order: identity first, then (dy, dx) pairs in
// lexicographic order. augment_translate and TranslateSource share this
// table so their column orders agree by construction.
std::vector<std::pair<int, int>> translate_offsets(int max_shift) {
  std::vector<std::pair<int, int>> offsets{{0, 0}};
  for (int dy = -max_shift; dy <= max_shift; ++dy)
    for (int dx = -max_shift; dx <= max_shift; ++dx)
      if (dy != 0 || dx != 0) offsets.emplace_back(dy, dx);
  return offsets;
}

// out(r, c) = in(r - dy, c - dx), zero outside the frame.
void shift_column(const double* in, double* out, int side, int dy, int dx) {
  for (int r = 0; r < side; ++r) {
    const int sr = r - dy;
    for (int c = 0; c < side; ++c) {
      const int sc = c - dx;
      out[r * side + c] = (sr >= 0 && sr < side && sc >= 0 && sc < side)
                              ? in[sr * side + sc]
                              : 0.0;
    }
  }
}

void check_translatable(const LabeledDataset& ds, int max_shift) {
  if (max_shift != 1 && max_shift != 2)
    throw ConfigError("max_shift must be 1 or 2, got " + std::to_string(max_shift));
  if (ds.geometry.channels != 1 || ds.geometry.height != ds.geometry.width)
    throw DataError("translation augmentation needs single-channel square images");
  ds.validate();
}

}  // namespace

void LabeledDataset::validate() const {
  if (x.cols() < 1) throw DataError("dataset has no samples");
  if (static_cast<Index>(labels.size()) != x.cols())
    throw DataError("have " + std::to_string(labels.size()) + " labels for " +
                    std::to_string(x.cols()) + " samples");
  if (geometry.input_dim() != x.rows())
    throw DataError("geometry " + std::to_string(geometry.height) + "x" +
                    std::to_string(geometry.width) + "x" +
                    std::to_string(geometry.channels) + " does not match " +
                    std::to_string(x.rows()) + " rows");
  if (n_classes < 1) throw DataError("n_classes must be at least 1");
  for (std::size_t j = 0; j < labels.size(); ++j)
    if (labels[j] < 0 || labels[j] >= n_classes)
      throw DataError("label " + std::to_string(labels[j]) + " at index " +
                      std::to_string(j) + " outside [0, " +
                      std::to_string(n_classes) + ")");
}

OneHotLabels one_hot(const std::vector<int>& labels, int n_classes) {
  DenseMatrix y(n_classes, static_cast<Index>(labels.size()));
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] < 0 || labels[j] >= n_classes)
      throw DataError("label " + std::to_string(labels[j]) + " at index " +
                      std::to_string(j) + " outside [0, " +
                      std::to_string(n_classes) + ")");
    y(labels[j], static_cast<Index>(j)) = 1.0;
  }
  return OneHotLabels{std::move(y)};
}

StandardizeResult standardize(const LabeledDataset& ds) {
  if (ds.x.size() < 2) throw DataError("standardize needs at least 2 values");
  const Index n = ds.x.size();
  double mean = 0.0;
  for (Index i = 0; i < n; ++i) mean += ds.x.data()[i];
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double d = ds.x.data()[i] - mean;
    var += d * d;
  }
  var /= static_cast<double>(n);
  const double stddev = std::sqrt(var);
  if (stddev == 0.0) throw DataError("cannot standardize constant data");

  StandardizeResult r;
  r.mean = mean;
  r.stddev = stddev;
  r.data.labels = ds.labels;
  r.data.geometry = ds.geometry;
  r.data.n_classes = ds.n_classes;
  r.data.x = DenseMatrix(ds.x.rows(), ds.x.cols());
  for (Index i = 0; i < n; ++i)
    r.data.x.data()[i] = (ds.x.data()[i] - mean) / stddev;
  return r;
}

LabeledDataset augment_translate(const LabeledDataset& ds, int max_shift) {
  check_translatable(ds, max_shift);
  const auto offsets = translate_offsets(max_shift);
  const Index variants = static_cast<Index>(offsets.size());
  const int side = ds.geometry.height;
  const Index l = ds.dim();

  LabeledDataset out;
  out.geometry = ds.geometry;
  out.n_classes = ds.n_classes;
  out.x = DenseMatrix(l, ds.count() * variants);
  out.labels.resize(static_cast<std::size_t>(ds.count() * variants));

  std::vector<double> in(static_cast<std::size_t>(l));
  std::vector<double> shifted(static_cast<std::size_t>(l));
  for (Index j = 0; j < ds.count(); ++j) {
    for (Index i = 0; i < l; ++i) in[static_cast<std::size_t>(i)] = ds.x(i, j);
    for (Index v = 0; v < variants; ++v) {
      shift_column(in.data(), shifted.data(), side, offsets[v].first,
                   offsets[v].second);
      const Index col = j * variants + v;
      for (Index i = 0; i < l; ++i) out.x(i, col) = shifted[static_cast<std::size_t>(i)];
      out.labels[static_cast<std::size_t>(col)] = ds.labels[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

void DatasetSource::fill(Index begin, Index n, DenseMatrix& out,
                         std::vector<int>& labels_out) const {
  if (begin < 0 || n < 0 || begin + n > count())
    throw ShapeError("column range [" + std::to_string(begin) + ", " +
                     std::to_string(begin + n) + ") outside 0.." +
                     std::to_string(count()));
  out = DenseMatrix(dim(), n);
  for (Index i = 0; i < dim(); ++i)
    std::memcpy(out.row(i), ds_->x.row(i) + begin,
                static_cast<std::size_t>(n) * sizeof(double));
  labels_out.assign(ds_->labels.begin() + begin, ds_->labels.begin() + begin + n);
}

TranslateSource::TranslateSource(const LabeledDataset& ds, int max_shift)
    : ds_(&ds), max_shift_(max_shift) {
  check_translatable(ds, max_shift);
  variants_ = static_cast<Index>(translate_offsets(max_shift).size());
}

Index TranslateSource::count() const { return ds_->count() * variants_; }

void TranslateSource::fill(Index begin, Index n, DenseMatrix& out,
                           std::vector<int>& labels_out) const {
  if (begin < 0 || n < 0 || begin + n > count())
    throw ShapeError("column range [" + std::to_string(begin) + ", " +
                     std::to_string(begin + n) + ") outside 0.." +
                     std::to_string(count()));
  const auto offsets = translate_offsets(max_shift_);
  const int side = ds_->geometry.height;
  const Index l = dim();
  out = DenseMatrix(l, n);
  labels_out.resize(static_cast<std::size_t>(n));

  std::vector<double> in(static_cast<std::size_t>(l));
  std::vector<double> shifted(static_cast<std::size_t>(l));
  Index cached_sample = -1;
  for (Index t = 0; t < n; ++t) {
    const Index q = begin + t;
    const Index j = q / variants_;
    const Index v = q % variants_;
    if (j != cached_sample) {
      for (Index i = 0; i < l; ++i) in[static_cast<std::size_t>(i)] = ds_->x(i, j);
      cached_sample = j;
    }
    shift_column(in.data(), shifted.data(), side, offsets[static_cast<std::size_t>(v)].first,
                 offsets[static_cast<std::size_t>(v)].second);
    for (Index i = 0; i < l; ++i) out(i, t) = shifted[static_cast<std::size_t>(i)];
    labels_out[static_cast<std::size_t>(t)] = ds_->labels[static_cast<std::size_t>(j)];
  }
}

}  // namespace elm
