#include "bellnet/behavior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellnet {

namespace {

constexpr double kEntryTol = 1e-12;
constexpr double kNormTol = 1e-10;

std::size_t ipow(int base, int exp) {
    std::size_t v = 1;
    for (int k = 0; k < exp; ++k) v *= static_cast<std::size_t>(base);
    return v;
}

}  // namespace

std::size_t Scenario::context_count() const { return ipow(settings, parties); }
std::size_t Scenario::outcome_count() const { return ipow(outcomes, parties); }
std::size_t Scenario::table_size() const { return context_count() * outcome_count(); }

double& Behavior::at(std::size_t x_flat, std::size_t a_flat) {
    return table[x_flat * scenario.outcome_count() + a_flat];
}

double Behavior::at(std::size_t x_flat, std::size_t a_flat) const {
    return table[x_flat * scenario.outcome_count() + a_flat];
}

std::size_t pack_index(int base, int count, const std::vector<int>& digits) {
    if (static_cast<int>(digits.size()) != count)
        throw std::invalid_argument("pack_index: wrong digit count");
    std::size_t flat = 0;
    for (int k = 0; k < count; ++k) {
        if (digits[k] < 0 || digits[k] >= base)
            throw std::out_of_range("pack_index: digit out of range");
        flat = flat * base + digits[k];
    }
    return flat;
}

std::vector<int> unpack_index(int base, int count, std::size_t flat) {
    std::vector<int> digits(count);
    for (int k = count; k-- > 0;) {
        digits[k] = static_cast<int>(flat % base);
        flat /= base;
    }
    return digits;
}

Behavior make_behavior(Scenario scenario, std::vector<double> table) {
    if (scenario.parties < 1 || scenario.settings < 1 || scenario.outcomes < 1)
        throw std::invalid_argument("make_behavior: scenario counts must be positive");
    if (table.size() != scenario.table_size())
        throw std::invalid_argument("make_behavior: table size does not match the scenario");
    const std::size_t na = scenario.outcome_count();
    for (std::size_t x = 0; x < scenario.context_count(); ++x) {
        double sum = 0.0;
        for (std::size_t a = 0; a < na; ++a) {
            const double v = table[x * na + a];
            if (v < -kEntryTol)
                throw std::invalid_argument("make_behavior: negative probability entry");
            sum += v;
        }
        if (std::abs(sum - 1.0) > kNormTol)
            throw std::invalid_argument("make_behavior: context is not normalized");
    }
    return Behavior{scenario, std::move(table)};
}

Behavior uniform_behavior(const Scenario& scenario) {
    Behavior b{scenario, std::vector<double>(scenario.table_size(),
                                             1.0 / static_cast<double>(scenario.outcome_count()))};
    return b;
}

Behavior behavior_from_quantum(const DensityState& state, const MeasurementAssignment& ma) {
    // party blocks, in order of first appearance; blocks must be contiguous
    std::vector<std::string> order;
    std::vector<std::vector<int>> blocks;
    for (int k = 0; k < state.op.num_subsystems(); ++k) {
        const std::string& label = state.parties[k];
        auto it = std::find(order.begin(), order.end(), label);
        if (it == order.end()) {
            order.push_back(label);
            blocks.push_back({k});
        } else {
            std::vector<int>& blk = blocks[it - order.begin()];
            if (blk.back() != k - 1)
                throw std::invalid_argument(
                    "behavior_from_quantum: party subsystems must be contiguous");
            blk.push_back(k);
        }
    }
    const int n = static_cast<int>(order.size());
    if (ma.parties() != n)
        throw std::invalid_argument("behavior_from_quantum: assignment party count mismatch");
    const int m = ma.settings();
    const int r = ma.outcomes();
    for (int i = 0; i < n; ++i) {
        int block_dim = 1;
        for (int k : blocks[i]) block_dim *= state.op.dims[k];
        for (const Povm& povm : ma.per_party[i])
            for (const Operator& e : povm.effects)
                if (e.dim() != block_dim)
                    throw std::invalid_argument(
                        "behavior_from_quantum: effect does not match the party's subsystems");
    }

    const Scenario scenario{n, m, r};
    std::vector<double> table(scenario.table_size());
    const std::size_t nx = scenario.context_count();
    const std::size_t na = scenario.outcome_count();
    for (std::size_t xf = 0; xf < nx; ++xf) {
        const std::vector<int> xs = unpack_index(m, n, xf);
        for (std::size_t af = 0; af < na; ++af) {
            const std::vector<int> as = unpack_index(r, n, af);
            Operator joint = ma.per_party[0][xs[0]].effects[as[0]];
            for (int i = 1; i < n; ++i)
                joint = kron(joint, ma.per_party[i][xs[i]].effects[as[i]]);
            table[xf * na + af] =
                trace_product(state.op.entries, joint.entries).real();
        }
    }
    return make_behavior(scenario, std::move(table));
}

double no_signalling_residual(const Behavior& b) {
    const int n = b.scenario.parties;
    const int m = b.scenario.settings;
    const int r = b.scenario.outcomes;
    const std::size_t na = b.scenario.outcome_count();
    double residual = 0.0;
    std::vector<int> xs(n), as(n);
    for (int i = 0; i < n; ++i) {
        const std::size_t n_other_x = b.scenario.context_count() / m;
        const std::size_t n_other_a = na / r;
        for (std::size_t xo = 0; xo < n_other_x; ++xo) {
            const std::vector<int> xs_other = unpack_index(m, n - 1, xo);
            for (std::size_t ao = 0; ao < n_other_a; ++ao) {
                const std::vector<int> as_other = unpack_index(r, n - 1, ao);
                for (int k = 0, t = 0; k < n; ++k)
                    if (k != i) {
                        xs[k] = xs_other[t];
                        as[k] = as_other[t];
                        ++t;
                    }
                double lo = 2.0, hi = -2.0;  // range of the marginal over x_i
                for (int xi = 0; xi < m; ++xi) {
                    xs[i] = xi;
                    double marg = 0.0;
                    for (int ai = 0; ai < r; ++ai) {
                        as[i] = ai;
                        marg += b.at(pack_index(m, n, xs), pack_index(r, n, as));
                    }
                    lo = std::min(lo, marg);
                    hi = std::max(hi, marg);
                }
                residual = std::max(residual, hi - lo);
            }
        }
    }
    return residual;
}

double correlator(const Behavior& b, const std::vector<int>& settings) {
    if (b.scenario.outcomes != 2)
        throw std::invalid_argument("correlator: defined only for two outcomes");
    const int n = b.scenario.parties;
    const std::size_t xf = pack_index(b.scenario.settings, n, settings);
    const std::size_t na = b.scenario.outcome_count();
    double value = 0.0;
    for (std::size_t af = 0; af < na; ++af) {
        const int parity = __builtin_popcountll(af) & 1;
        value += (parity ? -1.0 : 1.0) * b.at(xf, af);
    }
    return value;
}

Behavior mix(const std::vector<Behavior>& behaviors, const std::vector<double>& weights) {
    if (behaviors.empty() || behaviors.size() != weights.size())
        throw std::invalid_argument("mix: behaviors and weights must match and be nonempty");
    double total = 0.0;
    for (double w : weights) {
        if (w < -kEntryTol) throw std::invalid_argument("mix: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > kNormTol)
        throw std::invalid_argument("mix: weights must sum to one");
    const Scenario scenario = behaviors[0].scenario;
    std::vector<double> table(scenario.table_size(), 0.0);
    for (std::size_t k = 0; k < behaviors.size(); ++k) {
        if (!(behaviors[k].scenario == scenario))
            throw std::invalid_argument("mix: scenario mismatch");
        for (std::size_t t = 0; t < table.size(); ++t)
            table[t] += weights[k] * behaviors[k].table[t];
    }
    return make_behavior(scenario, std::move(table));
}

Behavior marginal(const Behavior& b, const std::vector<int>& parties,
                  const std::vector<int>& fixed_settings) {
    const int n = b.scenario.parties;
    if (parties.empty()) throw std::invalid_argument("marginal: empty party subset");
    std::vector<int> subset = parties;
    std::sort(subset.begin(), subset.end());
    if (std::unique(subset.begin(), subset.end()) != subset.end() || subset.front() < 0 ||
        subset.back() >= n)
        throw std::invalid_argument("marginal: invalid party subset");
    std::vector<int> rest;
    for (int k = 0; k < n; ++k)
        if (!std::binary_search(subset.begin(), subset.end(), k)) rest.push_back(k);
    if (fixed_settings.size() != rest.size())
        throw std::invalid_argument("marginal: need one fixed setting per removed party");

    const int m = b.scenario.settings;
    const int r = b.scenario.outcomes;
    const int ns = static_cast<int>(subset.size());
    const Scenario out_scenario{ns, m, r};
    std::vector<double> table(out_scenario.table_size(), 0.0);
    std::vector<int> xs(n), as(n);
    for (std::size_t k = 0; k < rest.size(); ++k) {
        if (fixed_settings[k] < 0 || fixed_settings[k] >= m)
            throw std::out_of_range("marginal: fixed setting out of range");
        xs[rest[k]] = fixed_settings[k];
    }
    const std::size_t nxs = out_scenario.context_count();
    const std::size_t nas = out_scenario.outcome_count();
    const std::size_t n_rest_a = ipow(r, static_cast<int>(rest.size()));
    for (std::size_t xf = 0; xf < nxs; ++xf) {
        const std::vector<int> xsub = unpack_index(m, ns, xf);
        for (int k = 0; k < ns; ++k) xs[subset[k]] = xsub[k];
        for (std::size_t af = 0; af < nas; ++af) {
            const std::vector<int> asub = unpack_index(r, ns, af);
            for (int k = 0; k < ns; ++k) as[subset[k]] = asub[k];
            double sum = 0.0;
            for (std::size_t ar = 0; ar < n_rest_a; ++ar) {
                const std::vector<int> arest = unpack_index(r, static_cast<int>(rest.size()), ar);
                for (std::size_t k = 0; k < rest.size(); ++k) as[rest[k]] = arest[k];
                sum += b.at(pack_index(m, n, xs), pack_index(r, n, as));
            }
            table[xf * nas + af] = sum;
        }
    }
    return make_behavior(out_scenario, std::move(table));
}

}  // namespace bellnet
