#pragma once

#include "bellnet/linalg.hpp"

#include <utility>
#include <vector>

namespace bellnet {

struct HashingResult {
    double value = 0.0;  // bits
    double entropy_b = 0.0;
    double entropy_ab = 0.0;
};

/// Hashing lower bound S(B) - S(AB) on one-way distillable entanglement for
/// a bipartition of the state's subsystems.
HashingResult hashing_bound(const DensityState& state, const std::vector<int>& side_a,
                            const std::vector<int>& side_b);

/// Closed form for isotropic states; valid for dimensions far beyond what can
/// be materialized.
double isotropic_hashing(double p, long d);

/// Unique root of isotropic_hashing(., d) in (0, 1), by bisection.
double hashing_threshold(long d);

}  // namespace bellnet
