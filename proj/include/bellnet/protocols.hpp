#pragma once

#include "bellnet/behavior.hpp"
#include "bellnet/states.hpp"

#include <utility>

namespace bellnet {

struct StarResult {
    double p = 0.0;
    int leaves = 0;
    double success_prob = 0.0;
    DensityState conditional;  // on the N leaf qubits
};

struct FlagProtocolParams {
    int copies = 1;
    double p_eq = 1.0;  // exactly 2^(1-L)
};

FlagProtocolParams make_flag_params(int copies);

/// Star of N isotropic links; the center projects its N qubits onto GHZ_N.
StarResult star_conditional(double p, int leaves);

/// Entanglement swap: project the first subsystem of each input state onto
/// the maximally entangled state, return the conditional outer state.
std::pair<double, DensityState> lambda_swap(const DensityState& rho_ab,
                                            const DensityState& rho_ac);

/// p_N = (2/pi) 2^(1/N), the star activation threshold.
double star_threshold(int leaves);

/// The flags-equal mixture: p_eq/2 on each junk branch, 1 - p_eq on p_psi.
Behavior flag_distribution(const FlagProtocolParams& params, const Behavior& p_psi,
                           const Behavior& junk_b, const Behavior& junk_c);

/// Probability that L uniform draws from {1..N} hit every value.
double coverage_probability(int copies, int leaves);

}  // namespace bellnet
