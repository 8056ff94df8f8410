#include "bellnet/protocols.hpp"

#include "bellnet/measurements.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bellnet {

FlagProtocolParams make_flag_params(int copies) {
    if (copies < 1) throw std::invalid_argument("flag params: L must be at least 1");
    return FlagProtocolParams{copies, std::ldexp(1.0, 1 - copies)};
}

StarResult star_conditional(double p, int leaves) {
    if (leaves < 1 || leaves > 5)
        throw std::invalid_argument("star_conditional: N must be between 1 and 5");
    NetworkLayout layout;
    layout.parties.push_back("A");
    std::vector<DensityState> states;
    for (int i = 0; i < leaves; ++i) {
        const std::string leaf = "B" + std::to_string(i + 1);
        layout.parties.push_back(leaf);
        layout.links.push_back(NetworkLink{i, {"A", leaf}});
        states.push_back(isotropic({p, 2}));
    }
    ComposedNetwork net = compose_network(layout, states);
    const Operator effect = projector(std::vector<int>(leaves, 2), ghz_ket(leaves));
    MeasureResult mr = measure_and_condition(net.state, effect, {"A"});
    if (!mr.conditional)
        throw std::runtime_error("star_conditional: projection probability vanished");
    return StarResult{p, leaves, mr.probability, std::move(*mr.conditional)};
}

std::pair<double, DensityState> lambda_swap(const DensityState& rho_ab,
                                            const DensityState& rho_ac) {
    if (rho_ab.op.dims.size() != 2 || rho_ac.op.dims.size() != 2)
        throw std::invalid_argument("lambda_swap: inputs must be bipartite");
    const int d = rho_ab.op.dims[0];
    if (rho_ab.op.dims != std::vector<int>{d, d} || rho_ac.op.dims != std::vector<int>{d, d})
        throw std::invalid_argument("lambda_swap: local dimensions must match");
    if (d > 4) throw std::invalid_argument("lambda_swap: local dimension capped at 4");

    DensityState joint{kron(rho_ab.op, rho_ac.op), {"A", "B", "A", "C"}};
    const Operator effect = projector({d, d}, max_entangled_ket(d));
    MeasureResult mr = measure_and_condition_subsystems(joint, effect, {0, 2});
    if (!mr.conditional)
        throw std::runtime_error("lambda_swap: projection probability vanished");
    return {mr.probability, std::move(*mr.conditional)};
}

double star_threshold(int leaves) {
    if (leaves < 1) throw std::invalid_argument("star_threshold: N must be at least 1");
    return (2.0 / std::numbers::pi) * std::pow(2.0, 1.0 / leaves);
}

Behavior flag_distribution(const FlagProtocolParams& params, const Behavior& p_psi,
                           const Behavior& junk_b, const Behavior& junk_c) {
    const double peq = params.p_eq;
    return mix({junk_b, junk_c, p_psi}, {0.5 * peq, 0.5 * peq, 1.0 - peq});
}

double coverage_probability(int copies, int leaves) {
    if (copies < 1 || leaves < 1)
        throw std::invalid_argument("coverage_probability: L and N must be at least 1");
    double total = 0.0;
    double binom = 1.0;  // C(N, k)
    for (int k = 0; k <= leaves; ++k) {
        const double frac = static_cast<double>(leaves - k) / leaves;
        total += (k % 2 ? -1.0 : 1.0) * binom * std::pow(frac, copies);
        binom = binom * (leaves - k) / (k + 1);
    }
    return total;
}

}  // namespace bellnet
