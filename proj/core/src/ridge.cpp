#include "elm/ridge.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "elm/errors.hpp"

namespace elm {

namespace {

// Solves W (G + cI) = C in place: `reg` holds G + cI on entry and is destroyed,
// `rhs` holds C on entry and W on exit. dposv factors the SPD system; the
// transpose dance is free because G + cI is symmetric.
void solve_inplace(DenseMatrix& reg, DenseMatrix& rhs, double c) {
  const Index m = reg.rows();
  const Index n = rhs.rows();

  // dposv solves A X = B with X, B column-layout m x n. Our rhs is row-major
  // n x m, which is exactly that layout already.
  const lapack_int info = LAPACKE_dposv(
      LAPACK_COL_MAJOR, 'U', static_cast<lapack_int>(m), static_cast<lapack_int>(n),
      reg.data(), static_cast<lapack_int>(m), rhs.data(), static_cast<lapack_int>(m));
  if (info > 0)
    throw SolverError("regularised Gram matrix is not positive definite at pivot " +
                      std::to_string(info) + "; increase the ridge parameter c (got c=" +
                      std::to_string(c) + ")");
  if (info < 0)
    throw SolverError("invalid argument " + std::to_string(-info) + " to dposv");
}

double residual_norm(const DenseMatrix& w, const DenseMatrix& gram,
                     const DenseMatrix& cross, double c) {
  // || W (G + cI) - C ||_F computed without forming G + cI.
  DenseMatrix r = matmul(w, gram);
  double acc = 0.0;
  for (Index i = 0; i < r.rows(); ++i)
    for (Index j = 0; j < r.cols(); ++j) {
      double v = r(i, j) + c * w(i, j) - cross(i, j);
      acc += v * v;
    }
  return std::sqrt(acc);
}

}  // namespace

DenseMatrix ridge_solve(const DenseMatrix& gram, const DenseMatrix& cross, double c) {
  if (gram.rows() != gram.cols())
    throw ShapeError("gram matrix must be square");
  if (cross.cols() != gram.rows())
    throw ShapeError("cross matrix has " + std::to_string(cross.cols()) +
                     " columns, gram is " + std::to_string(gram.rows()) + "x" +
                     std::to_string(gram.rows()));
  if (c < 0.0) throw ConfigError("ridge parameter c must be non-negative");

  DenseMatrix reg = add_scaled_identity(gram, c);
  DenseMatrix w = cross;
  solve_inplace(reg, w, c);

  const double tol = 1e-8 * frobenius_norm(cross);
  const double res = residual_norm(w, gram, cross, c);
  if (!(res <= tol) && frobenius_norm(cross) > 0.0)
    throw SolverError("ridge solve residual " + std::to_string(res) +
                      " exceeds tolerance; the system is too ill-conditioned, "
                      "increase the ridge parameter c");
  return w;
}

DenseMatrix ridge_solve_destructive(DenseMatrix&& gram, const DenseMatrix& cross,
                                    double c) {
  if (gram.rows() != gram.cols())
    throw ShapeError("gram matrix must be square");
  if (cross.cols() != gram.rows())
    throw ShapeError("cross matrix has " + std::to_string(cross.cols()) +
                     " columns, gram is " + std::to_string(gram.rows()) + "x" +
                     std::to_string(gram.rows()));
  if (c < 0.0) throw ConfigError("ridge parameter c must be non-negative");

  DenseMatrix reg = std::move(gram);
  for (Index i = 0; i < reg.rows(); ++i) reg(i, i) += c;
  DenseMatrix w = cross;
  solve_inplace(reg, w, c);
  // No residual check here: the Gram matrix is gone. Callers trade the check
  // for not holding two m x m buffers at once.
  return w;
}

}  // namespace elm
