#pragma once

#include "bellnet/linalg.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bellnet {

/// Positive operators on one party's subsystems, summing to the identity.
struct Povm {
    std::vector<Operator> effects;
};

/// One list of settings per party; uniform setting and outcome counts.
struct MeasurementAssignment {
    std::vector<std::vector<Povm>> per_party;  // [party][setting]

    int parties() const { return static_cast<int>(per_party.size()); }
    int settings() const { return per_party.empty() ? 0 : static_cast<int>(per_party[0].size()); }
    int outcomes() const {
        return settings() == 0 ? 0 : static_cast<int>(per_party[0][0].effects.size());
    }
};

/// Projective simulation of a dichotomic POVM element: measure in `basis`,
/// then output 0 with probability response[i] for basis outcome i.
struct DichotomicSimulation {
    Mat basis;         // orthonormal columns
    RealVec response;  // lambda_i in [0, 1]
};

Povm make_povm(std::vector<Operator> effects);
MeasurementAssignment make_assignment(std::vector<std::vector<Povm>> per_party);

/// Rank-one POVM from a complete orthonormal basis (columns).
Povm projective(const std::vector<int>& dims, const Mat& basis);

/// Spectral reduction of a dichotomic POVM element with 0 <= m0 <= 1.
DichotomicSimulation dichotomic_to_projective(const Operator& m0);

/// P(outcome 0) of the simulation protocol on a state.
double simulate_prob0(const DichotomicSimulation& sim, const Operator& rho);

struct MeasureResult {
    double probability = 0.0;
    std::optional<DensityState> conditional;  // measured subsystems traced out
};

/// Apply an effect on the subsystems owned by the given parties; return the
/// outcome probability and the Lueders conditional state on the rest.
/// Probabilities below 1e-12 yield no conditional state.
MeasureResult measure_and_condition(const DensityState& state, const Operator& effect,
                                    const std::vector<std::string>& on);

/// Same, with explicit subsystem positions (ascending).
MeasureResult measure_and_condition_subsystems(const DensityState& state,
                                               const Operator& effect,
                                               const std::vector<int>& positions);

/// Dichotomic projective pair (I +- O)/2 for a +-1 observable O.
Povm observable_povm(const Operator& observable);

}  // namespace bellnet
