#pragma once

#include "omasid/excitation.hpp"
#include "omasid/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace omasid {

/// One interaction topology: entry L(i, l) is the weight of edge l -> i
/// over the ordered node list. Node ids are kept strictly ascending so
/// that segments over the same vertex set share a basis.
struct ModeSpec {
    int mode_id = 0;
    std::vector<int> node_ids;
    Matrix L;

    [[nodiscard]] int size() const { return static_cast<int>(node_ids.size()); }
};

/// Reorders node_ids ascending and conjugates L by the same permutation.
ModeSpec normalize_mode(ModeSpec mode);

/// Switching instants t^0 = 0 < t^1 < ... < t^kappa and the mode active on
/// each interval [t^k, t^{k+1}); the last interval ends at horizon.
struct SwitchingSchedule {
    std::vector<double> switch_times;
    std::vector<int> mode_sequence;
    double horizon = 0.0;

    [[nodiscard]] int interval_count() const { return static_cast<int>(switch_times.size()); }
    [[nodiscard]] double interval_start(int k) const { return switch_times.at(k); }
    [[nodiscard]] double interval_end(int k) const {
        return k + 1 < interval_count() ? switch_times[k + 1] : horizon;
    }
};

struct IntervalMode {
    int interval_index;
    int mode_id;
};

/// Interval index and mode for a time in [0, horizon); intervals are
/// left-closed, right-open. Throws std::out_of_range outside the horizon.
IntervalMode mode_at(const SwitchingSchedule& schedule, double t);

enum class DynamicsKind { Zero, LinearDiagonal };

/// Known internal dynamics f, applied componentwise per node.
struct InternalDynamics {
    DynamicsKind kind = DynamicsKind::Zero;
    std::map<int, double> coefficients; // node_id -> a_i, LinearDiagonal only

    [[nodiscard]] double coefficient(int node_id) const;
    [[nodiscard]] Vector eval(const std::vector<int>& node_ids, const Vector& x) const;
};

enum class LmPolicy { Zero, Identity, Custom };

/// Reference connectivity L_m for the auxiliary system, resolved by vertex
/// set at each interval start.
struct ReferenceMatrices {
    LmPolicy policy = LmPolicy::Zero;
    std::vector<std::pair<std::vector<int>, Matrix>> matrices; // Custom only

    [[nodiscard]] Matrix resolve(const std::vector<int>& node_ids) const;
};

struct Scenario {
    std::vector<ModeSpec> modes;
    SwitchingSchedule schedule;
    ExcitationConfig excitation;
    InternalDynamics dynamics_f;
    std::map<int, double> initial_states;
    double filter_gain = 0.05; // tau in the filter/observer dynamics
    double gamma = 0.1;
    double step = 1e-3;
    std::map<std::vector<int>, int> mode_counts; // vertex set -> M^i
    std::uint64_t seed = 0;
    ReferenceMatrices reference;

    [[nodiscard]] const ModeSpec* find_mode(int mode_id) const;
    [[nodiscard]] int max_node_count() const;
};

struct ValidationReport {
    std::map<int, bool> hurwitz_per_mode;
    std::vector<std::string> warnings;
    std::vector<std::string> fatal_errors;
    bool is_fatal = false;
};

/// Structural checks are fatal; assumption checks (Hurwitz modes) only warn.
ValidationReport validate_scenario(const Scenario& scenario);

/// True iff all eigenvalues of L have strictly negative real part.
bool is_hurwitz(const Matrix& L);

struct GraphEdge {
    int from; // zero-based column index (source node position)
    int to;   // zero-based row index (target node position)
    double weight;
};

/// Weighted directed edges of a connectivity matrix: off-diagonal entries
/// with |L(i,l)| > tol become edges l -> i, diagonal entries self-loops.
std::vector<GraphEdge> graph_from_matrix(const Matrix& L, double tol = 1e-9);

/// Canonical "id,id,..." key for a vertex set (ids sorted ascending).
std::string vertex_set_key(std::vector<int> node_ids);

} // namespace omasid
