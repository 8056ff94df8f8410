#pragma once

#include "bellnet/linalg.hpp"
#include "bellnet/measurements.hpp"

#include <cstddef>
#include <vector>

namespace bellnet {

/// N parties, m settings per party, r outcomes per setting.
struct Scenario {
    int parties = 1;
    int settings = 1;
    int outcomes = 1;

    bool operator==(const Scenario&) const = default;

    std::size_t context_count() const;  // m^N
    std::size_t outcome_count() const;  // r^N
    std::size_t table_size() const;     // m^N * r^N
};

/// Joint conditional probability table P(a|x). The flat layout is x-major
/// then a, both multi-indices lexicographic with party 0 most significant.
/// This layout is shared bit-exactly by the JSON format.
struct Behavior {
    Scenario scenario;
    std::vector<double> table;

    double& at(std::size_t x_flat, std::size_t a_flat);
    double at(std::size_t x_flat, std::size_t a_flat) const;
};

std::size_t pack_index(int base, int count, const std::vector<int>& digits);
std::vector<int> unpack_index(int base, int count, std::size_t flat);

Behavior make_behavior(Scenario scenario, std::vector<double> table);
Behavior uniform_behavior(const Scenario& scenario);

/// P(a|x) = tr(rho * tensor_i M^{x_i}_{a_i}). The state's subsystems must be
/// party-contiguous; assignment party order follows label order of first
/// appearance in the state.
Behavior behavior_from_quantum(const DensityState& state, const MeasurementAssignment& ma);

/// Largest change of any party-removed marginal when one party switches its
/// setting. Zero for no-signalling behaviors.
double no_signalling_residual(const Behavior& b);

/// Expectation of the product of +-1 outcomes (a -> (-1)^a), r = 2 only.
double correlator(const Behavior& b, const std::vector<int>& settings);

Behavior mix(const std::vector<Behavior>& behaviors, const std::vector<double>& weights);

/// Reduced behavior over a party subset; the other parties keep the fixed
/// settings and their outcomes are summed out.
Behavior marginal(const Behavior& b, const std::vector<int>& parties,
                  const std::vector<int>& fixed_settings);

}  // namespace bellnet
