#include "bellnet/states.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace bellnet {

Vec max_entangled_ket(int d) {
    if (d < 2) throw std::invalid_argument("max_entangled: d must be at least 2");
    Vec ket = Vec::Zero(d * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) ket[i * d + i] = amp;
    return ket;
}

Vec ghz_ket(int n) {
    if (n < 1) throw std::invalid_argument("ghz: n must be at least 1");
    const int d = 1 << n;
    Vec ket = Vec::Zero(d);
    ket[0] = ket[d - 1] = 1.0 / std::sqrt(2.0);
    return ket;
}

DensityState max_entangled(int d) {
    Vec ket = max_entangled_ket(d);
    return DensityState{projector({d, d}, ket), default_party_labels(2)};
}

DensityState ghz(int n) {
    Vec ket = ghz_ket(n);
    return DensityState{projector(std::vector<int>(n, 2), ket), default_party_labels(n)};
}

DensityState isotropic(const IsotropicParams& params) {
    if (params.p < 0.0 || params.p > 1.0)
        throw std::invalid_argument("isotropic: p must lie in [0, 1]");
    const int d = params.d;
    if (d < 2) throw std::invalid_argument("isotropic: d must be at least 2");
    Operator phi = projector({d, d}, max_entangled_ket(d));
    Mat m = params.p * phi.entries +
            ((1.0 - params.p) / (d * d)) * Mat::Identity(d * d, d * d);
    return DensityState{Operator({d, d}, std::move(m)), default_party_labels(2)};
}

DensityState sigma_state() {
    const std::vector<int> dims(6, 2);
    // psi1 = |Phi>_AB |0>_C, psi2 = |Phi>_AC |0>_B, flags 000 / 111 appended
    Vec k1 = Vec::Zero(1 << 6), k2 = Vec::Zero(1 << 6);
    const double amp = 1.0 / std::sqrt(2.0);
    auto at = [&](int a, int b, int c, int f) { return (((((a << 1) | b) << 1) | c) << 3) | f; };
    k1[at(0, 0, 0, 0)] = amp;
    k1[at(1, 1, 0, 0)] = amp;
    k2[at(0, 0, 0, 7)] = amp;
    k2[at(1, 0, 1, 7)] = amp;
    Mat m = 0.5 * (k1 * k1.adjoint() + k2 * k2.adjoint());
    return DensityState{Operator(dims, std::move(m)),
                        {"A", "B", "C", "Af", "Bf", "Cf"}};
}

TauDescriptor tau_descriptor(int leaves, double noise, int copies) {
    if (leaves < 1) throw std::invalid_argument("tau_descriptor: N must be at least 1");
    if (copies < 1) throw std::invalid_argument("tau_descriptor: L must be at least 1");
    if (noise < 0.0 || noise > 1.0)
        throw std::invalid_argument("tau_descriptor: p must lie in [0, 1]");
    return TauDescriptor{leaves, noise, copies, "maximally mixed qubit"};
}

ComposedNetwork compose_network(const NetworkLayout& layout,
                                const std::vector<DensityState>& states) {
    const std::set<std::string> party_set(layout.parties.begin(), layout.parties.end());
    if (party_set.size() != layout.parties.size())
        throw std::invalid_argument("compose_network: duplicate party label");
    if (layout.links.empty())
        throw std::invalid_argument("compose_network: no links");

    // tensor all linked states in link order
    Operator big;
    std::vector<std::string> owner;  // per subsystem, pre-permutation
    bool first = true;
    long total_dim = 1;
    for (const NetworkLink& link : layout.links) {
        if (link.state_index < 0 || link.state_index >= static_cast<int>(states.size()))
            throw std::out_of_range("compose_network: link references a missing state");
        const DensityState& s = states[link.state_index];
        if (link.assign.size() != s.op.dims.size())
            throw std::invalid_argument(
                "compose_network: link assignment does not cover every subsystem");
        for (const std::string& p : link.assign)
            if (!party_set.count(p))
                throw std::invalid_argument("compose_network: subsystem assigned to unknown party '" + p + "'");
        total_dim *= s.op.dim();
        if (total_dim > kComposeDimGuard)
            throw std::invalid_argument("compose_network: total dimension exceeds the dense guard");
        big = first ? s.op : kron(big, s.op);
        first = false;
        owner.insert(owner.end(), link.assign.begin(), link.assign.end());
    }

    // party-contiguous ordering, parties in layout order
    std::vector<int> perm;
    for (const std::string& p : layout.parties)
        for (std::size_t k = 0; k < owner.size(); ++k)
            if (owner[k] == p) perm.push_back(static_cast<int>(k));
    if (perm.size() != owner.size())
        throw std::logic_error("compose_network: ownership bookkeeping failed");

    Operator arranged = permute_subsystems(big, perm);
    std::vector<std::string> labels(perm.size());
    ComposedNetwork out;
    for (std::size_t k = 0; k < perm.size(); ++k) {
        labels[k] = owner[perm[k]];
        out.ownership[labels[k]].push_back(static_cast<int>(k));
    }
    out.state = DensityState{std::move(arranged), std::move(labels)};
    return out;
}

}  // namespace bellnet
