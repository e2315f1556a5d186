#pragma once

#include <vector>

#include "elm/dense_matrix.hpp"

namespace elm {

struct Geometry {
  int height = 0;
  int width = 0;
  int channels = 1;

  Index pixels_per_channel() const { return static_cast<Index>(height) * width; }
  Index input_dim() const { return pixels_per_channel() * channels; }
  bool operator==(const Geometry&) const = default;
};

// One sample per column of x (L x K); labels[j] belongs to column j.
struct LabeledDataset {
  DenseMatrix x;
  std::vector<int> labels;
  Geometry geometry;
  int n_classes = 0;

  Index dim() const { return x.rows(); }
  Index count() const { return x.cols(); }

  // Enforces the type invariants; throws DataError on violation.
  void validate() const;
};

struct OneHotLabels {
  DenseMatrix y;  // N x K, exactly one 1 per column
};

OneHotLabels one_hot(const std::vector<int>& labels, int n_classes);

struct StandardizeResult {
  LabeledDataset data;
  double mean = 0.0;
  double stddev = 0.0;
};

// Scalar mean/stddev over every entry of x (population stddev); the returned
// dataset holds (x - mean) / stddev.
StandardizeResult standardize(const LabeledDataset& ds);

// Original samples plus every integer translation within Chebyshev distance
// max_shift (1 -> 8 shifts, 2 -> 24), zero-filling vacated pixels. Each
// original column is immediately followed by its shifted variants. Only
// single-channel square images are supported.
LabeledDataset augment_translate(const LabeledDataset& ds, int max_shift);

// Streams columns of a dataset (or a virtual expansion of one) in blocks,
// so training never needs the expanded matrix in memory.
class ColumnSource {
 public:
  virtual ~ColumnSource() = default;
  virtual Index dim() const = 0;
  virtual Index count() const = 0;
  virtual int n_classes() const = 0;
  // Copies columns [begin, begin+n) into out (dim() x n) and their labels.
  virtual void fill(Index begin, Index n, DenseMatrix& out,
                    std::vector<int>& labels_out) const = 0;
};

// Zero-copy view of a LabeledDataset.
class DatasetSource final : public ColumnSource {
 public:
  explicit DatasetSource(const LabeledDataset& ds) : ds_(&ds) {}
  Index dim() const override { return ds_->dim(); }
  Index count() const override { return ds_->count(); }
  int n_classes() const override { return ds_->n_classes; }
  void fill(Index begin, Index n, DenseMatrix& out,
            std::vector<int>& labels_out) const override;

 private:
  const LabeledDataset* ds_;
};

// Lazy equivalent of augment_translate: produces the same columns in the
// same order without materializing the expanded matrix.
class TranslateSource final : public ColumnSource {
 public:
  TranslateSource(const LabeledDataset& ds, int max_shift);
  Index dim() const override { return ds_->dim(); }
  Index count() const override;
  int n_classes() const override { return ds_->n_classes; }
  void fill(Index begin, Index n, DenseMatrix& out,
            std::vector<int>& labels_out) const override;

 private:
  const LabeledDataset* ds_;
  int max_shift_;
  Index variants_;  // shifts per sample, identity included
};

}  // namespace elm
