#pragma once

#include <string>
#include <string_view>

#include "elm/dense_matrix.hpp"

namespace elm {

// Logistic is the default everywhere; the fine-tuning step depends on its
// derivative identity and refuses the others.
enum class Activation { Logistic, Relu, Abs, Quadratic };

Activation activation_from_string(std::string_view name);
std::string to_string(Activation kind);

// Elementwise nonlinearity.
DenseMatrix activate(const DenseMatrix& d, Activation kind);

}  // namespace elm
