#include "omasid/simulator.hpp"

#include "omasid/hashing.hpp"
#include "omasid/numerics.hpp"

#include <cmath>
#include <set>
#include <string>
#include <utility>

namespace omasid {

AugmentedState AugmentedState::zero(Eigen::Index n, Matrix L_m, Vector x_at_start) {
    AugmentedState aug;
    aug.x_hat = Vector::Zero(n);
    aug.w = Vector::Zero(n);
    aug.Y = Matrix::Zero(n, n);
    aug.Z = Matrix::Zero(n, n);
    aug.x_tilde_k = std::move(x_at_start); // x_hat(t^k) = 0
    aug.L_m = std::move(L_m);
    return aug;
}

Vector control_input(const Vector& u_hat, const Vector& f_of_x) {
    if (u_hat.size() != f_of_x.size()) {
        throw DimensionError("control_input: u_hat and f(x) sizes differ");
    }
    return u_hat - f_of_x;
}

Vector zeta(double t, double t_k, double filter_gain, const Vector& x_tilde_k) {
    if (t < t_k) {
        throw std::out_of_range("zeta: t precedes the interval start");
    }
    return std::exp(-filter_gain * (t - t_k)) * x_tilde_k;
}

AugmentedDerivative augmented_derivative(const Vector& x_hat, const Vector& w, const Matrix& L_m,
                                         const Vector& x, const Vector& u, const Vector& f_of_x,
                                         const Vector& zeta_t, double filter_gain) {
    const Eigen::Index n = x.size();
    if (x_hat.size() != n || w.size() != n || u.size() != n || f_of_x.size() != n ||
        zeta_t.size() != n || L_m.rows() != n || L_m.cols() != n) {
        throw DimensionError("augmented_derivative: dimension mismatch");
    }
    AugmentedDerivative d;
    d.x_hat_dot = f_of_x + L_m * x + u + filter_gain * (x - x_hat);
    d.w_dot = x - filter_gain * w;
    d.Y_dot = w * w.transpose();
    d.Z_dot = (L_m * w + x - x_hat - zeta_t) * w.transpose();
    return d;
}

AugmentedDerivative augmented_derivative(const AugmentedState& aug, const Vector& x,
                                         const Vector& u, const Vector& f_of_x,
                                         const Vector& zeta_t, double filter_gain) {
    return augmented_derivative(aug.x_hat, aug.w, aug.L_m, x, u, f_of_x, zeta_t, filter_gain);
}

std::optional<Matrix> interval_estimate(const Matrix& Y, const Matrix& Z, double gamma) {
    if (Y.rows() != Y.cols() || Z.rows() != Z.cols() || Y.rows() != Z.rows()) {
        throw DimensionError("interval_estimate: Y and Z must be square and equally sized");
    }
    if (!is_pd_above(Y, gamma)) {
        return std::nullopt;
    }
    return solve_right(Z, Y);
}

namespace {

// Joint state layout: [x | x_hat | w | vec(Y) | vec(Z)], column-major vecs.
struct Layout {
    Eigen::Index n;

    [[nodiscard]] Eigen::Index size() const { return 3 * n + 2 * n * n; }
    [[nodiscard]] Eigen::Index x() const { return 0; }
    [[nodiscard]] Eigen::Index x_hat() const { return n; }
    [[nodiscard]] Eigen::Index w() const { return 2 * n; }
    [[nodiscard]] Eigen::Index Y() const { return 3 * n; }
    [[nodiscard]] Eigen::Index Z() const { return 3 * n + n * n; }
};

double initial_state_for(const Scenario& scenario, int node_id, int interval_index,
                         bool first_appearance) {
    if (first_appearance) {
        const auto it = scenario.initial_states.find(node_id);
        if (it != scenario.initial_states.end()) {
            return it->second;
        }
    }
    return uniform_from_hash(scenario.seed, static_cast<std::uint64_t>(node_id),
                             static_cast<std::uint64_t>(interval_index), -1.0, 1.0);
}

} // namespace

SimulationResult simulate_scenario(const Scenario& scenario, const SimulateOptions& options) {
    const ValidationReport report = validate_scenario(scenario);
    if (report.is_fatal) {
        throw ValidationError("simulate_scenario: " + report.fatal_errors.front());
    }

    const double h = scenario.step;
    const double tau = scenario.filter_gain;
    const ExcitationSignal u_hat = build_excitation(scenario.max_node_count(), scenario.excitation);

    SimulationResult result;
    result.segments.reserve(scenario.schedule.mode_sequence.size());

    std::map<int, double> state_by_id; // currently active agents only
    std::set<int> ever_appeared;

    const int intervals = scenario.schedule.interval_count();
    for (int k = 0; k < intervals; ++k) {
        const ModeSpec& mode = *scenario.find_mode(scenario.schedule.mode_sequence[k]);
        const std::vector<int>& ids = mode.node_ids;
        const auto n = static_cast<Eigen::Index>(ids.size());
        const double t_k = scenario.schedule.interval_start(k);
        const double t_next = scenario.schedule.interval_end(k);

        // Node-state handoff: retained agents keep their state, joiners are
        // seeded (or take a declared initial state on first appearance).
        Vector x0(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const int id = ids[static_cast<std::size_t>(i)];
            const auto it = state_by_id.find(id);
            if (it != state_by_id.end()) {
                x0(i) = it->second;
            } else {
                x0(i) = initial_state_for(scenario, id, k, ever_appeared.count(id) == 0);
            }
            ever_appeared.insert(id);
        }

        const Matrix L_m = scenario.reference.resolve(ids);
        const Vector x_tilde_k = x0; // x_hat resets to zero
        const Layout lay{n};

        Vector s = Vector::Zero(lay.size());
        s.segment(lay.x(), n) = x0;

        const DerivativeFn derivative = [&](const Vector& state, double t) -> Vector {
            const Vector x = state.segment(lay.x(), n);
            const Vector x_hat = state.segment(lay.x_hat(), n);
            const Vector w = state.segment(lay.w(), n);

            const Vector u_hat_t = u_hat.sample(ids, t);
            const Vector f_x = scenario.dynamics_f.eval(ids, x);
            const Vector u = control_input(u_hat_t, f_x);
            const Vector zeta_t = zeta(t, t_k, tau, x_tilde_k);

            const AugmentedDerivative aug =
                augmented_derivative(x_hat, w, L_m, x, u, f_x, zeta_t, tau);

            Vector ds(lay.size());
            ds.segment(lay.x(), n) = f_x + mode.L * x + u;
            ds.segment(lay.x_hat(), n) = aug.x_hat_dot;
            ds.segment(lay.w(), n) = aug.w_dot;
            ds.segment(lay.Y(), n * n) = Eigen::Map<const Vector>(aug.Y_dot.data(), n * n);
            ds.segment(lay.Z(), n * n) = Eigen::Map<const Vector>(aug.Z_dot.data(), n * n);
            return ds;
        };

        const auto emit_grid_point = [&](double t) {
            if (options.observer) {
                const Vector x = s.segment(lay.x(), n);
                const Vector x_hat = s.segment(lay.x_hat(), n);
                const Vector w = s.segment(lay.w(), n);
                const Matrix Y = Eigen::Map<const Matrix>(s.data() + lay.Y(), n, n);
                const Matrix Z = Eigen::Map<const Matrix>(s.data() + lay.Z(), n, n);
                options.observer(
                    StepView{k, mode.mode_id, t, t_k, ids, x, x_hat, w, Y, Z, L_m, x_tilde_k});
            }
            if (options.log_trajectory) {
                for (Eigen::Index i = 0; i < n; ++i) {
                    result.trajectory.push_back({t, ids[static_cast<std::size_t>(i)],
                                                 s(lay.x() + i), s(lay.x_hat() + i),
                                                 s(lay.w() + i)});
                }
            }
        };

        SegmentRecord record;
        record.interval_index = k;
        record.node_ids = ids;
        record.t_start = t_k;
        record.t_end = t_next;
        record.true_mode = mode.mode_id;

        const int grid_steps = static_cast<int>(std::floor((t_next - t_k) / h + 1e-9));
        bool crossed = false;

        emit_grid_point(t_k);
        for (int l = 0; l < grid_steps; ++l) {
            const double t_l = t_k + static_cast<double>(l) * h;
            try {
                s = rk4_step(s, t_l, h, derivative);
            } catch (const NumericError&) {
                throw DivergenceError(k, "state diverged in interval " + std::to_string(k) +
                                             " near t = " + std::to_string(t_l));
            }
            if (!s.allFinite()) {
                throw DivergenceError(k, "state diverged in interval " + std::to_string(k) +
                                             " near t = " + std::to_string(t_l));
            }
            const double t_next_grid = t_k + static_cast<double>(l + 1) * h;
            emit_grid_point(t_next_grid);

            if (!crossed) {
                const Matrix Y = Eigen::Map<const Matrix>(s.data() + lay.Y(), n, n);
                if (is_pd_above(Y, scenario.gamma)) {
                    const Matrix Z = Eigen::Map<const Matrix>(s.data() + lay.Z(), n, n);
                    record.interval_estimate = solve_right(Z, Y);
                    record.crossing_time = t_next_grid;
                    crossed = true;
                }
            }
        }

        // Terminal Gramians live at the last grid point t_s.
        record.Y_s = Eigen::Map<const Matrix>(s.data() + lay.Y(), n, n);
        record.Z_s = Eigen::Map<const Matrix>(s.data() + lay.Z(), n, n);

        // Advance the plant over the sub-step remainder so the handoff state
        // is taken at the switching instant itself.
        const double t_s = t_k + static_cast<double>(grid_steps) * h;
        const double remainder = t_next - t_s;
        if (remainder > 1e-12) {
            try {
                s = rk4_step(s, t_s, remainder, derivative);
            } catch (const NumericError&) {
                throw DivergenceError(k, "state diverged in interval " + std::to_string(k) +
                                             " near t = " + std::to_string(t_s));
            }
        }

        state_by_id.clear();
        for (Eigen::Index i = 0; i < n; ++i) {
            state_by_id[ids[static_cast<std::size_t>(i)]] = s(lay.x() + i);
        }
        result.segments.push_back(std::move(record));
    }
    return result;
}

} // namespace omasid
