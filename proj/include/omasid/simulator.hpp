#pragma once

#include "omasid/model.hpp"
#include "omasid/types.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace omasid {

/// Auxiliary observer, filter and Gramian state integrated alongside the
/// plant on one interval. Everything is reset at each switching instant.
struct AugmentedState {
    Vector x_hat;
    Vector w;
    Matrix Y;
    Matrix Z;
    Vector x_tilde_k; ///< x(t^k) - x_hat(t^k), frozen at interval start
    Matrix L_m;       ///< reference connectivity of the auxiliary system

    static AugmentedState zero(Eigen::Index n, Matrix L_m, Vector x_at_start);
};

/// Terminal Gramians and bookkeeping for one switching interval.
struct SegmentRecord {
    int interval_index = 0;
    std::vector<int> node_ids;
    double t_start = 0.0;
    double t_end = 0.0;
    Matrix Y_s;
    Matrix Z_s;
    std::optional<Matrix> interval_estimate;
    std::optional<int> true_mode;
    std::optional<double> crossing_time; ///< first time Y > gamma I, if any
};

/// u = û - f(x), componentwise.
Vector control_input(const Vector& u_hat, const Vector& f_of_x);

/// zeta(t) = e^{-tau (t - t_k)} x_tilde_k. Throws std::out_of_range if t < t_k.
Vector zeta(double t, double t_k, double filter_gain, const Vector& x_tilde_k);

struct AugmentedDerivative {
    Vector x_hat_dot;
    Vector w_dot;
    Matrix Y_dot;
    Matrix Z_dot;
};

/// Right-hand side of the observer/filter/Gramian dynamics:
///   x_hat' = f(x) + L_m x + u + tau (x - x_hat)
///   w'     = x - tau w
///   Y'     = w w^T
///   Z'     = (L_m w + x - x_hat - zeta) w^T
AugmentedDerivative augmented_derivative(const Vector& x_hat, const Vector& w, const Matrix& L_m,
                                         const Vector& x, const Vector& u, const Vector& f_of_x,
                                         const Vector& zeta_t, double filter_gain);

AugmentedDerivative augmented_derivative(const AugmentedState& aug, const Vector& x,
                                         const Vector& u, const Vector& f_of_x,
                                         const Vector& zeta_t, double filter_gain);

/// L_hat = Z Y^{-1} when Y > gamma I; absent otherwise.
std::optional<Matrix> interval_estimate(const Matrix& Y, const Matrix& Z, double gamma);

struct TrajectorySample {
    double t;
    int node_id;
    double x;
    double x_hat;
    double w;
};

/// Grid-point view handed to the observer callback; references are only
/// valid during the call.
struct StepView {
    int interval_index;
    int mode_id;
    double t;
    double t_k;
    const std::vector<int>& node_ids;
    const Vector& x;
    const Vector& x_hat;
    const Vector& w;
    const Matrix& Y;
    const Matrix& Z;
    const Matrix& L_m;
    const Vector& x_tilde_k;
};

struct SimulateOptions {
    bool log_trajectory = false;
    std::function<void(const StepView&)> observer; ///< called at every grid point
};

struct SimulationResult {
    std::vector<TrajectorySample> trajectory; ///< empty unless log_trajectory
    std::vector<SegmentRecord> segments;
};

/// Runs the full switching scenario: per interval, resets the augmented
/// state, integrates plant and augmented dynamics jointly with RK4 on the
/// grid t^k + l h, records the first gamma-crossing estimate, and emits the
/// terminal Gramians. Node states are handed across switches (retained
/// agents keep state, joiners are seeded, leavers are dropped).
SimulationResult simulate_scenario(const Scenario& scenario, const SimulateOptions& options = {});

} // namespace omasid
