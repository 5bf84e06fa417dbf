#include "omasid/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>
#include <limits>

namespace omasid {

Vector rk4_step(const Vector& state, double t, double h, const DerivativeFn& derivative) {
    if (!(h > 0.0)) {
        throw ConfigError("rk4_step: step size must be positive");
    }
    const Vector k1 = derivative(state, t);
    const Vector k2 = derivative(state + (0.5 * h) * k1, t + 0.5 * h);
    const Vector k3 = derivative(state + (0.5 * h) * k2, t + 0.5 * h);
    const Vector k4 = derivative(state + h * k3, t + h);
    Vector next = state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!next.allFinite()) {
        throw NumericError("rk4_step: non-finite derivative output at t = " + std::to_string(t));
    }
    return next;
}

double min_eigenvalue_sym(const Matrix& Y) {
    if (Y.rows() != Y.cols()) {
        throw DimensionError("min_eigenvalue_sym: matrix must be square");
    }
    if (Y.rows() == 0) {
        throw DimensionError("min_eigenvalue_sym: matrix must be non-empty");
    }
    const Matrix sym = 0.5 * (Y + Y.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool is_pd_above(const Matrix& Y, double gamma) {
    // Cheap reject: the minimum eigenvalue never exceeds the mean diagonal.
    if (Y.rows() == Y.cols() && Y.rows() > 0 &&
        Y.trace() <= gamma * static_cast<double>(Y.rows())) {
        return false;
    }
    return min_eigenvalue_sym(Y) > gamma;
}

double default_rank_tol(Eigen::Index rows, Eigen::Index cols) {
    return std::numeric_limits<double>::epsilon() * static_cast<double>(std::max(rows, cols));
}

namespace {

Eigen::JacobiSVD<Matrix> thin_svd(const Matrix& A) {
    return Eigen::JacobiSVD<Matrix>(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
}

double sv_cutoff(const Eigen::JacobiSVD<Matrix>& svd, const Matrix& A, double rank_tol) {
    if (rank_tol < 0.0) {
        rank_tol = default_rank_tol(A.rows(), A.cols());
    }
    const double sigma_max = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
    return rank_tol * sigma_max;
}

} // namespace

Matrix pinv(const Matrix& A, double rank_tol) {
    if (A.size() == 0) {
        return Matrix::Zero(A.cols(), A.rows());
    }
    const auto svd = thin_svd(A);
    const double cutoff = sv_cutoff(svd, A, rank_tol);
    Vector inv_sigma = svd.singularValues();
    for (Eigen::Index i = 0; i < inv_sigma.size(); ++i) {
        inv_sigma(i) = inv_sigma(i) > cutoff ? 1.0 / inv_sigma(i) : 0.0;
    }
    return svd.matrixV() * inv_sigma.asDiagonal() * svd.matrixU().transpose();
}

Eigen::Index numerical_rank(const Matrix& A, double rank_tol) {
    if (A.size() == 0) {
        return 0;
    }
    const auto svd = thin_svd(A);
    const double cutoff = sv_cutoff(svd, A, rank_tol);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()(i) > cutoff) {
            ++rank;
        }
    }
    return rank;
}

Matrix solve_right(const Matrix& Z, const Matrix& Y) {
    if (Y.rows() != Y.cols()) {
        throw DimensionError("solve_right: Y must be square");
    }
    if (Z.cols() != Y.rows()) {
        throw DimensionError("solve_right: Z columns must match Y dimension");
    }
    // L Y = Z  <=>  Y^T L^T = Z^T
    Eigen::FullPivLU<Matrix> lu(Y.transpose());
    if (!lu.isInvertible()) {
        throw SingularMatrixError("solve_right: Y is singular");
    }
    return lu.solve(Z.transpose()).transpose();
}

double frobenius(const Matrix& A) {
    return A.norm();
}

} // namespace omasid
