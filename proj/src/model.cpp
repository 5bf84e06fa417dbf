#include "omasid/model.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace omasid {

ModeSpec normalize_mode(ModeSpec mode) {
    const auto n = static_cast<Eigen::Index>(mode.node_ids.size());
    if (mode.L.rows() != n || mode.L.cols() != n) {
        throw DimensionError("mode " + std::to_string(mode.mode_id) +
                             ": L dimension does not match node count");
    }
    if (std::adjacent_find(mode.node_ids.begin(), mode.node_ids.end(),
                           std::greater_equal<int>()) == mode.node_ids.end()) {
        return mode; // already strictly ascending
    }
    std::vector<int> order(mode.node_ids.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return mode.node_ids[a] < mode.node_ids[b]; });

    ModeSpec out;
    out.mode_id = mode.mode_id;
    out.node_ids.resize(mode.node_ids.size());
    out.L.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.node_ids[i] = mode.node_ids[order[i]];
        for (Eigen::Index j = 0; j < n; ++j) {
            out.L(i, j) = mode.L(order[i], order[j]);
        }
    }
    return out;
}

IntervalMode mode_at(const SwitchingSchedule& schedule, double t) {
    if (schedule.switch_times.empty()) {
        throw std::out_of_range("mode_at: empty schedule");
    }
    if (t < schedule.switch_times.front() || t >= schedule.horizon) {
        throw std::out_of_range("mode_at: t = " + std::to_string(t) +
                                " outside [0, horizon)");
    }
    const auto it =
        std::upper_bound(schedule.switch_times.begin(), schedule.switch_times.end(), t);
    const int k = static_cast<int>(std::distance(schedule.switch_times.begin(), it)) - 1;
    return {k, schedule.mode_sequence.at(k)};
}

double InternalDynamics::coefficient(int node_id) const {
    const auto it = coefficients.find(node_id);
    return it == coefficients.end() ? 0.0 : it->second;
}

Vector InternalDynamics::eval(const std::vector<int>& node_ids, const Vector& x) const {
    if (static_cast<std::size_t>(x.size()) != node_ids.size()) {
        throw DimensionError("internal dynamics: state size does not match node count");
    }
    if (kind == DynamicsKind::Zero) {
        return Vector::Zero(x.size());
    }
    Vector f(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        f(i) = coefficient(node_ids[static_cast<std::size_t>(i)]) * x(i);
    }
    return f;
}

Matrix ReferenceMatrices::resolve(const std::vector<int>& node_ids) const {
    const auto n = static_cast<Eigen::Index>(node_ids.size());
    switch (policy) {
    case LmPolicy::Zero:
        return Matrix::Zero(n, n);
    case LmPolicy::Identity:
        return Matrix::Identity(n, n);
    case LmPolicy::Custom:
        for (const auto& [ids, matrix] : matrices) {
            if (ids == node_ids) {
                return matrix;
            }
        }
        throw ValidationError("no reference matrix configured for vertex set " +
                              vertex_set_key(node_ids));
    }
    throw ValidationError("unknown reference-matrix policy");
}

const ModeSpec* Scenario::find_mode(int mode_id) const {
    for (const auto& mode : modes) {
        if (mode.mode_id == mode_id) {
            return &mode;
        }
    }
    return nullptr;
}

int Scenario::max_node_count() const {
    int n = 0;
    for (const auto& mode : modes) {
        n = std::max(n, mode.size());
    }
    return n;
}

bool is_hurwitz(const Matrix& L) {
    if (L.rows() != L.cols() || L.rows() == 0) {
        throw DimensionError("is_hurwitz: matrix must be square and non-empty");
    }
    Eigen::EigenSolver<Matrix> solver(L, /*computeEigenvectors=*/false);
    return (solver.eigenvalues().real().array() < 0.0).all();
}

namespace {

void check_modes(const Scenario& scenario, ValidationReport& report) {
    std::set<int> seen_ids;
    for (const auto& mode : scenario.modes) {
        const std::string tag = "mode " + std::to_string(mode.mode_id);
        if (!seen_ids.insert(mode.mode_id).second) {
            report.fatal_errors.push_back(tag + ": duplicate mode id");
        }
        if (mode.node_ids.empty()) {
            report.fatal_errors.push_back(tag + ": empty node set");
            continue;
        }
        std::set<int> distinct(mode.node_ids.begin(), mode.node_ids.end());
        if (distinct.size() != mode.node_ids.size()) {
            report.fatal_errors.push_back(tag + ": node ids are not distinct");
        }
        if (!std::is_sorted(mode.node_ids.begin(), mode.node_ids.end())) {
            report.fatal_errors.push_back(tag +
                                          ": node ids must be ascending (see normalize_mode)");
        }
        const auto n = static_cast<Eigen::Index>(mode.node_ids.size());
        if (mode.L.rows() != n || mode.L.cols() != n) {
            report.fatal_errors.push_back(tag + ": L is " + std::to_string(mode.L.rows()) + "x" +
                                          std::to_string(mode.L.cols()) + " but the mode has " +
                                          std::to_string(n) + " nodes");
            continue;
        }
        if (!mode.L.allFinite()) {
            report.fatal_errors.push_back(tag + ": L has non-finite entries");
            continue;
        }
        const bool hurwitz = is_hurwitz(mode.L);
        report.hurwitz_per_mode[mode.mode_id] = hurwitz;
        if (!hurwitz) {
            report.warnings.push_back(tag +
                                      ": L is not Hurwitz; state boundedness is not guaranteed");
        }
    }
}

void check_schedule(const Scenario& scenario, ValidationReport& report) {
    const auto& sched = scenario.schedule;
    if (sched.switch_times.empty()) {
        report.fatal_errors.emplace_back("schedule: no switching times");
        return;
    }
    if (sched.switch_times.front() != 0.0) {
        report.fatal_errors.emplace_back("schedule: first switching time must be 0");
    }
    for (std::size_t k = 1; k < sched.switch_times.size(); ++k) {
        if (!(sched.switch_times[k] > sched.switch_times[k - 1])) {
            report.fatal_errors.push_back("schedule: switching times not strictly increasing at index " +
                                          std::to_string(k));
        }
    }
    if (!(sched.horizon > sched.switch_times.back())) {
        report.fatal_errors.emplace_back("schedule: horizon must exceed the last switching time");
    }
    if (sched.mode_sequence.size() != sched.switch_times.size()) {
        report.fatal_errors.push_back("schedule: " + std::to_string(sched.switch_times.size()) +
                                      " intervals but " + std::to_string(sched.mode_sequence.size()) +
                                      " mode entries");
    }
    for (std::size_t k = 0; k < sched.mode_sequence.size(); ++k) {
        if (scenario.find_mode(sched.mode_sequence[k]) == nullptr) {
            report.fatal_errors.push_back("schedule: interval " + std::to_string(k) +
                                          " references unknown mode " +
                                          std::to_string(sched.mode_sequence[k]));
        }
    }
}

void check_parameters(const Scenario& scenario, ValidationReport& report) {
    if (!(scenario.filter_gain > 0.0)) {
        report.fatal_errors.emplace_back("filter_gain must be strictly positive");
    }
    if (!(scenario.gamma > 0.0)) {
        report.fatal_errors.emplace_back("gamma must be strictly positive");
    }
    if (!(scenario.step > 0.0)) {
        report.fatal_errors.emplace_back("step must be strictly positive");
    }
}

void check_excitation(const Scenario& scenario, ValidationReport& report) {
    if (scenario.modes.empty()) {
        return;
    }
    try {
        build_excitation(scenario.max_node_count(), scenario.excitation);
    } catch (const ConfigError& e) {
        report.fatal_errors.emplace_back(e.what());
    }
}

void check_vertex_sets(const Scenario& scenario, ValidationReport& report) {
    std::set<std::vector<int>> seen;
    for (int mode_id : scenario.schedule.mode_sequence) {
        const ModeSpec* mode = scenario.find_mode(mode_id);
        if (mode == nullptr || !seen.insert(mode->node_ids).second) {
            continue;
        }
        if (scenario.reference.policy == LmPolicy::Custom) {
            try {
                (void)scenario.reference.resolve(mode->node_ids);
            } catch (const ValidationError& e) {
                report.fatal_errors.emplace_back(e.what());
            }
        }
        if (!scenario.mode_counts.empty() && scenario.mode_counts.count(mode->node_ids) == 0) {
            report.warnings.push_back("mode_counts has no entry for vertex set " +
                                      vertex_set_key(mode->node_ids) +
                                      "; clustering will reject this scenario");
        }
    }
}

} // namespace

ValidationReport validate_scenario(const Scenario& scenario) {
    ValidationReport report;
    if (scenario.modes.empty()) {
        report.fatal_errors.emplace_back("scenario has no modes");
    }
    check_modes(scenario, report);
    check_schedule(scenario, report);
    check_parameters(scenario, report);
    check_excitation(scenario, report);
    check_vertex_sets(scenario, report);
    report.is_fatal = !report.fatal_errors.empty();
    return report;
}

std::vector<GraphEdge> graph_from_matrix(const Matrix& L, double tol) {
    if (L.rows() != L.cols()) {
        throw DimensionError("graph_from_matrix: matrix must be square");
    }
    if (tol < 0.0) {
        throw ConfigError("graph_from_matrix: tolerance must be non-negative");
    }
    std::vector<GraphEdge> edges;
    for (Eigen::Index i = 0; i < L.rows(); ++i) {
        for (Eigen::Index l = 0; l < L.cols(); ++l) {
            if (std::abs(L(i, l)) > tol) {
                edges.push_back({static_cast<int>(l), static_cast<int>(i), L(i, l)});
            }
        }
    }
    return edges;
}

std::string vertex_set_key(std::vector<int> node_ids) {
    std::sort(node_ids.begin(), node_ids.end());
    std::ostringstream out;
    for (std::size_t i = 0; i < node_ids.size(); ++i) {
        if (i > 0) {
            out << ',';
        }
        out << node_ids[i];
    }
    return out.str();
}

} // namespace omasid
