#pragma once

#include <optional>
#include <vector>

#include "elm/dense_matrix.hpp"

namespace elm {

// Finalized input weights: every row of w has Euclidean norm alpha (within
// 1e-10), and wherever a mask is present, w is exactly zero outside its
// support. bias is empty for methods that do not produce one.
struct InputWeights {
  DenseMatrix w;             // M x L
  std::vector<double> bias;  // length M or empty
  DenseMatrix mask;          // M x L binary, or 0x0 when absent
  double scale = 2.0;

  bool has_bias() const { return !bias.empty(); }
  bool has_mask() const { return mask.size() > 0; }
};

// Rectangular receptive-field masks on a side x side pixel grid. Rectangles
// avoid a `border`-wide margin and are redrawn until their area reaches q.
// For multi-channel images one rectangle is drawn per hidden unit and applied
// at the same position in every channel.
struct RfMaskConfig {
  int side = 0;  // 0 = take from the training geometry
  Index q = 10;
  int border = 3;
  int channels = 1;
};

struct CelmConfig {
  // Reject sample pairs whose difference vector is at least this long.
  std::optional<double> epsilon;
};

}  // namespace elm
