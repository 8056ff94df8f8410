#pragma once

#include "bellnet/linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace bellnet {

struct IsotropicParams {
    double p = 1.0;  // weight of the maximally entangled component, in [0, 1]
    int d = 2;       // local dimension, >= 2
};

/// Which state each network link carries and which party gets each subsystem.
struct NetworkLink {
    int state_index = 0;
    std::vector<std::string> assign;  // one party label per subsystem
};

struct NetworkLayout {
    std::vector<std::string> parties;
    std::vector<NetworkLink> links;
};

/// Symbolic description of the flagged (N+1)-party activation state. The
/// dense operator is never materialized.
struct TauDescriptor {
    int leaves = 1;   // N
    double noise = 1.0;  // isotropic p of the embedded link
    int copies = 1;   // L
    std::string filler = "maximally mixed qubit";  // gamma
};

struct ComposedNetwork {
    DensityState state;
    std::map<std::string, std::vector<int>> ownership;  // party -> subsystem positions
};

// Total dimension allowed for dense network states.
inline constexpr int kComposeDimGuard = 1 << 12;

Vec max_entangled_ket(int d);
Vec ghz_ket(int n);

/// (1/sqrt(d)) sum_i |ii>, as a density operator on parties A, B.
DensityState max_entangled(int d);

/// n-qubit GHZ state; ghz(2) coincides with max_entangled(2).
DensityState ghz(int n);

/// p |Phi><Phi| + (1-p) I/d^2.
DensityState isotropic(const IsotropicParams& params);

/// The six-qubit flagged activation state on A,B,C,Af,Bf,Cf with |phi> = |0>.
DensityState sigma_state();

TauDescriptor tau_descriptor(int leaves, double noise, int copies);

/// Tensor the linked states and reorder subsystems so each party's holdings
/// are contiguous, parties in layout order.
ComposedNetwork compose_network(const NetworkLayout& layout,
                                const std::vector<DensityState>& states);

}  // namespace bellnet
