#pragma once

#include "omasid/types.hpp"

#include <functional>

namespace omasid {

using DerivativeFn = std::function<Vector(const Vector&, double)>;

/// One classical fourth-order Runge-Kutta step from t to t + h.
/// Throws NumericError if the step produces non-finite values.
Vector rk4_step(const Vector& state, double t, double h, const DerivativeFn& derivative);

/// Minimum eigenvalue of the symmetrized matrix (Y + Y^T) / 2.
double min_eigenvalue_sym(const Matrix& Y);

/// True iff the symmetrized Y satisfies Y > gamma * I in the Loewner order.
bool is_pd_above(const Matrix& Y, double gamma);

/// Default relative singular-value cutoff for rank decisions.
double default_rank_tol(Eigen::Index rows, Eigen::Index cols);

/// Moore-Penrose pseudoinverse via SVD. Singular values at or below
/// rank_tol * sigma_max are treated as zero; rank_tol < 0 selects
/// default_rank_tol(rows, cols).
Matrix pinv(const Matrix& A, double rank_tol = -1.0);

/// Numerical rank under the same cutoff convention as pinv.
Eigen::Index numerical_rank(const Matrix& A, double rank_tol = -1.0);

/// Solve L * Y = Z for L without forming Y^{-1}.
Matrix solve_right(const Matrix& Z, const Matrix& Y);

/// Frobenius norm.
double frobenius(const Matrix& A);

} // namespace omasid
