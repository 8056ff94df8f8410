#include "bellnet/distill.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellnet {

HashingResult hashing_bound(const DensityState& state, const std::vector<int>& side_a,
                            const std::vector<int>& side_b) {
    const int n = state.op.num_subsystems();
    std::vector<bool> seen(n, false);
    for (int k : side_a) {
        if (k < 0 || k >= n || seen[k]) throw std::invalid_argument("hashing_bound: invalid cut");
        seen[k] = true;
    }
    for (int k : side_b) {
        if (k < 0 || k >= n || seen[k]) throw std::invalid_argument("hashing_bound: invalid cut");
        seen[k] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end() || side_a.empty() ||
        side_b.empty())
        throw std::invalid_argument("hashing_bound: cut must bipartition the subsystems");

    std::vector<std::string> labels_b;
    for (int k : side_b) labels_b.push_back(state.parties[k]);
    DensityState rho_b{partial_trace(state.op, side_b), std::move(labels_b)};
    HashingResult out;
    out.entropy_b = entropy(rho_b);
    out.entropy_ab = entropy(state);
    out.value = out.entropy_b - out.entropy_ab;
    return out;
}

double isotropic_hashing(double p, long d) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("isotropic_hashing: p must be in [0, 1]");
    if (d < 2) throw std::invalid_argument("isotropic_hashing: d must be at least 2");
    const double dd = static_cast<double>(d) * static_cast<double>(d);
    const double q0 = p + (1.0 - p) / dd;
    const double rest = (1.0 - p) * (1.0 - 1.0 / dd);  // (d^2 - 1) eigenvalues of (1-p)/d^2
    const double log2d = std::log2(static_cast<double>(d));
    double h = 0.0;
    if (q0 > 0.0) h -= q0 * std::log2(q0);
    if (rest > 0.0) h -= rest * (std::log2(1.0 - p) - 2.0 * log2d);
    return log2d - h;
}

double hashing_threshold(long d) {
    if (d < 2) throw std::invalid_argument("hashing_threshold: d must be at least 2");
    double lo = 1e-6, hi = 1.0 - 1e-6;
    double flo = isotropic_hashing(lo, d);
    double fhi = isotropic_hashing(hi, d);
    if (flo >= 0.0 || fhi <= 0.0)
        throw std::runtime_error("hashing_threshold: no sign change in the bracket");
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (isotropic_hashing(mid, d) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace bellnet
