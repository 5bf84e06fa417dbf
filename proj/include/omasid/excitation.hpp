#pragma once

#include "omasid/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace omasid {

/// Multisine excitation parameters. With empty frequencies the signal is
/// auto-generated from the richness order; the seed fixes the per-node
/// phase offsets that decorrelate the components.
struct ExcitationConfig {
    std::vector<double> amplitudes;  ///< per frequency; empty = all 1.0
    std::vector<double> frequencies; ///< rad/s, pairwise distinct; empty = auto
    std::vector<double> phases;      ///< per-frequency base phase; empty = all 0
    std::uint64_t seed = 0;
    std::optional<int> min_order;    ///< overrides the required richness order
};

struct SinusoidTerm {
    double amplitude;
    double omega;
    double phase;
};

/// û(t): each component is a sum of sinusoids over a shared frequency set,
/// with deterministic per-node phase offsets. A signal with F distinct
/// frequencies is sufficiently rich of order 2F.
class ExcitationSignal {
  public:
    ExcitationSignal(int order, ExcitationConfig config);

    /// Value of node_id's component at time t.
    [[nodiscard]] double component(int node_id, double t) const;

    /// Stacked values for an ordered node list.
    [[nodiscard]] Vector sample(const std::vector<int>& node_ids, double t) const;

    [[nodiscard]] const std::vector<double>& frequencies() const { return frequencies_; }
    [[nodiscard]] const std::vector<double>& amplitudes() const { return amplitudes_; }
    [[nodiscard]] int richness_order() const { return 2 * static_cast<int>(frequencies_.size()); }

    /// Exact sinusoid decomposition of one component, for analysis.
    [[nodiscard]] std::vector<SinusoidTerm> terms(int node_id) const;

    /// Upper bound on |component|: the sum of amplitudes.
    [[nodiscard]] double amplitude_bound() const;

  private:
    [[nodiscard]] double node_phase(int node_id, std::size_t freq_index) const;

    std::vector<double> amplitudes_;
    std::vector<double> frequencies_;
    std::vector<double> base_phases_;
    std::uint64_t seed_;
};

/// Builds an excitation signal sufficiently rich of order n (at least
/// ceil(n/2) distinct frequencies). Throws ConfigError when an explicit
/// frequency list is too short or malformed.
ExcitationSignal build_excitation(int n, const ExcitationConfig& config);

} // namespace omasid
