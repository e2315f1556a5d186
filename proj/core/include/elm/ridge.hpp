#pragma once

#include "elm/dense_matrix.hpp"

namespace elm {

// Solves W * (G + c*I) = C for W (N x M) by Cholesky factorization of the
// symmetric positive-definite system; no explicit inverse is formed. The
// result is checked against the residual contract
//   ||W*(G+cI) - C||_F <= 1e-8 * ||C||_F
// and a SolverError (suggesting a larger c) is thrown when the factorization
// fails or the residual is out of contract.
DenseMatrix ridge_solve(const DenseMatrix& gram, const DenseMatrix& cross, double c);

// In-place variant for Gram matrices too large to duplicate: `gram` is
// consumed (overwritten by its factor). Skips the residual recomputation;
// factorization failure and non-finite output still raise SolverError.
DenseMatrix ridge_solve_destructive(DenseMatrix&& gram, const DenseMatrix& cross, double c);

}  // namespace elm
