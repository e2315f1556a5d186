#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "elm/dataset.hpp"
#include "elm/dense_matrix.hpp"
#include "elm/input_weights.hpp"

namespace elm {

enum class Method { Random, Ciw, C, Rf, RfCiw, RfC };

// CLI/report names: random, ciw, c, rf, rf-ciw, rf-c.
Method method_from_string(std::string_view name);
std::string to_string(Method method);
bool method_uses_mask(Method method);

// Shaping output before row normalization. pair_sum carries x_a + x_b for
// difference rows so a later mask composition can recompute biases.
struct RawShape {
  DenseMatrix w;             // M x L, unnormalized rows
  std::vector<double> bias;  // raw biases or empty
  DenseMatrix pair_sum;      // M x L or 0x0
};

struct ShapeConfig {
  double alpha = 2.0;
  RfMaskConfig rf;
  CelmConfig celm;
};

InputWeights random_bipolar(Index m, Index l, std::uint64_t seed, double alpha = 2.0);

// Hidden units split into per-class blocks sized proportionally to class
// counts; block rows are random +-1 combinations of that class's
// standardized training samples.
InputWeights ciw_weights(const LabeledDataset& train, Index m, std::uint64_t seed,
                         double alpha = 2.0);

// Rows are differences of random sample pairs from distinct classes; biases
// come from the paired sums. pairs_out, when given, receives the sample
// indices behind each row.
InputWeights celm_weights_biases(const LabeledDataset& train, Index m,
                                 const CelmConfig& cfg, std::uint64_t seed,
                                 double alpha = 2.0,
                                 std::vector<std::pair<Index, Index>>* pairs_out = nullptr);

DenseMatrix rf_masks(Index m, const RfMaskConfig& cfg, std::uint64_t seed);

// w = mask o base.w row by row; a row whose product vanishes gets a fresh
// mask row from `redraw` (up to 100 tries). Difference rows (pair_sum
// present) get their bias recomputed from the masked difference.
InputWeights compose_shaped_weights(const RawShape& base, DenseMatrix mask,
                                    double alpha,
                                    const std::function<std::vector<double>()>& redraw);

InputWeights shape(Method method, const LabeledDataset& train, Index m,
                   const ShapeConfig& cfg, std::uint64_t seed);

}  // namespace elm
