#include "omasid/excitation.hpp"

#include "omasid/hashing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace omasid {

namespace {

int required_frequency_count(int order) {
    return (order + 1) / 2; // ceil(order / 2)
}

} // namespace

ExcitationSignal::ExcitationSignal(int order, ExcitationConfig config)
    : seed_(config.seed) {
    if (order < 1) {
        throw ConfigError("excitation: richness order must be >= 1");
    }
    const int required = required_frequency_count(config.min_order.value_or(order));

    if (config.frequencies.empty()) {
        // Default grid 0.3 + 0.45 j rad/s; any distinct positive values work.
        for (int j = 0; j < required; ++j) {
            frequencies_.push_back(0.3 + 0.45 * j);
        }
    } else {
        frequencies_ = config.frequencies;
        std::set<double> distinct(frequencies_.begin(), frequencies_.end());
        if (distinct.size() != frequencies_.size()) {
            throw ConfigError("excitation: frequencies must be pairwise distinct");
        }
        if (static_cast<int>(distinct.size()) < required) {
            throw ConfigError("excitation: " + std::to_string(required) +
                              " distinct frequencies required for richness order " +
                              std::to_string(config.min_order.value_or(order)) + ", got " +
                              std::to_string(distinct.size()));
        }
        for (double f : frequencies_) {
            if (!(f > 0.0)) {
                throw ConfigError("excitation: frequencies must be positive");
            }
        }
    }

    if (config.amplitudes.empty()) {
        amplitudes_.assign(frequencies_.size(), 1.0);
    } else if (config.amplitudes.size() == frequencies_.size()) {
        amplitudes_ = config.amplitudes;
        for (double a : amplitudes_) {
            if (!(a > 0.0)) {
                throw ConfigError("excitation: amplitudes must be positive");
            }
        }
    } else {
        throw ConfigError("excitation: amplitude count must match frequency count");
    }

    if (config.phases.empty()) {
        base_phases_.assign(frequencies_.size(), 0.0);
    } else if (config.phases.size() == frequencies_.size()) {
        base_phases_ = config.phases;
    } else {
        throw ConfigError("excitation: phase count must match frequency count");
    }
}

double ExcitationSignal::node_phase(int node_id, std::size_t freq_index) const {
    return uniform_from_hash(seed_, static_cast<std::uint64_t>(node_id),
                             static_cast<std::uint64_t>(freq_index), 0.0,
                             2.0 * std::numbers::pi);
}

double ExcitationSignal::component(int node_id, double t) const {
    double value = 0.0;
    for (std::size_t j = 0; j < frequencies_.size(); ++j) {
        value += amplitudes_[j] *
                 std::sin(frequencies_[j] * t + base_phases_[j] + node_phase(node_id, j));
    }
    return value;
}

Vector ExcitationSignal::sample(const std::vector<int>& node_ids, double t) const {
    Vector u(static_cast<Eigen::Index>(node_ids.size()));
    for (std::size_t i = 0; i < node_ids.size(); ++i) {
        u(static_cast<Eigen::Index>(i)) = component(node_ids[i], t);
    }
    return u;
}

std::vector<SinusoidTerm> ExcitationSignal::terms(int node_id) const {
    std::vector<SinusoidTerm> out;
    out.reserve(frequencies_.size());
    for (std::size_t j = 0; j < frequencies_.size(); ++j) {
        out.push_back({amplitudes_[j], frequencies_[j], base_phases_[j] + node_phase(node_id, j)});
    }
    return out;
}

double ExcitationSignal::amplitude_bound() const {
    double sum = 0.0;
    for (double a : amplitudes_) {
        sum += a;
    }
    return sum;
}

ExcitationSignal build_excitation(int n, const ExcitationConfig& config) {
    return ExcitationSignal(n, config);
}

} // namespace omasid
