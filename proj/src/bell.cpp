#include "bellnet/bell.hpp"

#include "bellnet/states.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

namespace bellnet {

namespace {

constexpr double kMonotoneSlack = 1e-9;

std::size_t ipow(int base, int exp) {
    std::size_t v = 1;
    for (int k = 0; k < exp; ++k) v *= static_cast<std::size_t>(base);
    return v;
}

}  // namespace

double evaluate(const BellFunctional& f, const Behavior& b) {
    if (!(f.scenario == b.scenario))
        throw std::invalid_argument("evaluate: scenario mismatch");
    double value = 0.0;
    for (std::size_t t = 0; t < f.coeffs.size(); ++t) value += f.coeffs[t] * b.table[t];
    return value;
}

double bound_over(const BellFunctional& f, const VertexSet& v) {
    if (!(f.scenario == v.scenario))
        throw std::invalid_argument("bound_over: scenario mismatch");
    double best = -1e300;
    for (const Behavior& vert : v.vertices) best = std::max(best, evaluate(f, vert));
    return best;
}

BellFunctional functional_from_correlators(const Scenario& scenario,
                                           const std::vector<double>& context_weights,
                                           double bound, BoundKind kind) {
    if (scenario.outcomes != 2)
        throw std::invalid_argument("functional_from_correlators: needs two outcomes");
    if (context_weights.size() != scenario.context_count())
        throw std::invalid_argument("functional_from_correlators: weight count mismatch");
    BellFunctional f;
    f.scenario = scenario;
    f.bound = bound;
    f.bound_kind = kind;
    f.coeffs.assign(scenario.table_size(), 0.0);
    const std::size_t na = scenario.outcome_count();
    for (std::size_t x = 0; x < context_weights.size(); ++x) {
        if (context_weights[x] == 0.0) continue;
        for (std::size_t a = 0; a < na; ++a) {
            const int parity = __builtin_popcountll(a) & 1;
            f.coeffs[x * na + a] = context_weights[x] * (parity ? -1.0 : 1.0);
        }
    }
    return f;
}

BellFunctional lift(const BellFunctional& f, const PostSelection& ps, int full_parties,
                    const std::vector<int>& ref_settings) {
    const int k = static_cast<int>(ps.parties.size());
    const int tested = full_parties - k;
    if (k == 0 || tested < 1) throw std::invalid_argument("lift: bad party split");
    if (ps.settings.size() != ps.parties.size() || ps.outcomes.size() != ps.parties.size())
        throw std::invalid_argument("lift: post-selection fields must align");
    if (f.scenario.parties != tested)
        throw std::invalid_argument("lift: functional party count does not match the split");
    std::vector<bool> is_ps(full_parties, false);
    for (int p : ps.parties) {
        if (p < 0 || p >= full_parties || is_ps[p])
            throw std::invalid_argument("lift: post-selecting parties overlap or out of range");
        is_ps[p] = true;
    }
    std::vector<int> tested_parties;
    for (int p = 0; p < full_parties; ++p)
        if (!is_ps[p]) tested_parties.push_back(p);
    if (static_cast<int>(ref_settings.size()) != tested)
        throw std::invalid_argument("lift: need one reference setting per tested party");

    const int m = f.scenario.settings;
    const int r = f.scenario.outcomes;
    const Scenario full{full_parties, m, r};
    BellFunctional out;
    out.scenario = full;
    out.bound = 0.0;
    out.bound_kind = BoundKind::Declared;
    out.coeffs.assign(full.table_size(), 0.0);

    std::vector<int> xs(full_parties), as(full_parties);
    for (int i = 0; i < k; ++i) {
        xs[ps.parties[i]] = ps.settings[i];
        as[ps.parties[i]] = ps.outcomes[i];
    }
    const std::size_t ntx = ipow(m, tested);
    const std::size_t nta = ipow(r, tested);
    const std::size_t na_full = full.outcome_count();
    for (std::size_t xf = 0; xf < ntx; ++xf) {
        const std::vector<int> xt = unpack_index(m, tested, xf);
        for (int i = 0; i < tested; ++i) xs[tested_parties[i]] = xt[i];
        const std::size_t x_full = pack_index(m, full_parties, xs);
        for (std::size_t af = 0; af < nta; ++af) {
            const std::vector<int> at = unpack_index(r, tested, af);
            for (int i = 0; i < tested; ++i) as[tested_parties[i]] = at[i];
            out.coeffs[x_full * na_full + pack_index(r, full_parties, as)] +=
                f.coeffs[xf * nta + af];
        }
    }
    // subtract K * P(b'|y'), written with the reference settings
    for (int i = 0; i < tested; ++i) {
        if (ref_settings[i] < 0 || ref_settings[i] >= m)
            throw std::out_of_range("lift: reference setting out of range");
        xs[tested_parties[i]] = ref_settings[i];
    }
    const std::size_t x_ref = pack_index(m, full_parties, xs);
    for (std::size_t af = 0; af < nta; ++af) {
        const std::vector<int> at = unpack_index(r, tested, af);
        for (int i = 0; i < tested; ++i) as[tested_parties[i]] = at[i];
        out.coeffs[x_ref * na_full + pack_index(r, full_parties, as)] -= f.bound;
    }
    return out;
}

namespace {

// Mermin-Klyshko correlator weights, normalized so K_n has local bound 1.
std::vector<double> mk_weights(int n) {
    std::vector<double> w = {1.0, 0.0};  // K_1 = first setting
    for (int stage = 2; stage <= n; ++stage) {
        const std::size_t prev = w.size();
        std::vector<double> next(prev * 2, 0.0);
        for (std::size_t x = 0; x < prev; ++x) {
            next[x * 2 + 0] += 0.5 * w[x];
            next[x * 2 + 1] += 0.5 * w[x];
            const std::size_t x_swapped = prev - 1 - x;  // all settings flipped
            next[x_swapped * 2 + 0] += 0.5 * w[x];
            next[x_swapped * 2 + 1] -= 0.5 * w[x];
        }
        w = std::move(next);
    }
    return w;
}

}  // namespace

BellFunctional mermin(int n) {
    if (n < 2 || n > 4) throw std::invalid_argument("mermin: supported for 2 <= n <= 4");
    std::vector<double> w = mk_weights(n);
    for (double& v : w) v *= 2.0;
    const Scenario s{n, 2, 2};
    BellFunctional f = functional_from_correlators(s, w, 0.0, BoundKind::Local);
    f.bound = bound_over(f, deterministic_vertices(s));
    return f;
}

BellFunctional chsh() { return mermin(2); }

BellFunctional svetlichny() {
    BellFunctional m3 = mermin(3);
    const Scenario s = m3.scenario;
    const std::size_t nx = s.context_count();
    const std::size_t na = s.outcome_count();
    BellFunctional f = m3;
    for (std::size_t x = 0; x < nx; ++x) {
        const std::size_t x_swapped = nx - 1 - x;
        for (std::size_t a = 0; a < na; ++a)
            f.coeffs[x * na + a] += m3.coeffs[x_swapped * na + a];
    }
    f.bound_kind = BoundKind::HybridNs;
    f.bound = bound_over(f, hybrid_vertices_3party());
    return f;
}

namespace {

void add_match_terms(BellFunctional& f, bool a_equals_b_plus, int x, int y, int shift,
                     double weight) {
    const int d = f.scenario.outcomes;
    const std::size_t na = f.scenario.outcome_count();
    const std::size_t xf = pack_index(2, 2, {x, y});
    for (int j = 0; j < d; ++j) {
        const int other = ((j + shift) % d + d) % d;
        const int a = a_equals_b_plus ? other : j;
        const int b = a_equals_b_plus ? j : other;
        f.coeffs[xf * na + pack_index(d, 2, {a, b})] += weight;
    }
}

}  // namespace

BellFunctional cglmp(int d) {
    if (d < 2) throw std::invalid_argument("cglmp: d must be at least 2");
    const Scenario s{2, 2, d};
    BellFunctional f;
    f.scenario = s;
    f.coeffs.assign(s.table_size(), 0.0);
    for (int k = 0; k <= d / 2 - 1; ++k) {
        const double w = 1.0 - 2.0 * k / (d - 1.0);
        add_match_terms(f, true, 0, 0, k, w);        // P(A1 = B1 + k)
        add_match_terms(f, false, 1, 0, k + 1, w);   // P(B1 = A2 + k + 1)
        add_match_terms(f, true, 1, 1, k, w);        // P(A2 = B2 + k)
        add_match_terms(f, false, 0, 1, k, w);       // P(B2 = A1 + k)
        add_match_terms(f, true, 0, 0, -k - 1, -w);  // P(A1 = B1 - k - 1)
        add_match_terms(f, false, 1, 0, -k, -w);     // P(B1 = A2 - k)
        add_match_terms(f, true, 1, 1, -k - 1, -w);  // P(A2 = B2 - k - 1)
        add_match_terms(f, false, 0, 1, -k - 1, -w); // P(B2 = A1 - k - 1)
    }
    f.bound_kind = BoundKind::Local;
    if (std::pow(std::pow(d, 2.0), 2.0) <= 1e5) {
        f.bound = bound_over(f, deterministic_vertices(s));
    } else {
        f.bound = 2.0;
    }
    return f;
}

BellFunctional plane_functional(int n, int K) {
    if (n < 2 || n > 3 || K < 2 || K > 8)
        throw std::invalid_argument("plane: supported for n in {2,3}, K in [2,8]");
    const Scenario s{n, K, 2};
    std::vector<double> w(s.context_count());
    const double norm = 1.0 / std::pow(static_cast<double>(K), n);
    for (std::size_t xf = 0; xf < w.size(); ++xf) {
        const std::vector<int> xs = unpack_index(K, n, xf);
        double angle = 0.0;
        for (int x : xs) angle += std::numbers::pi * x / K;
        w[xf] = std::cos(angle) * norm;
    }
    BellFunctional f = functional_from_correlators(s, w, 0.0, BoundKind::Local);

    // local bound: the functional is Re( prod_i z_i ) / K^n over per-party
    // sign patterns, z = sum_x s(x) exp(i theta_x)
    std::vector<std::complex<double>> zs;
    zs.reserve(ipow(2, K));
    for (std::size_t mask = 0; mask < ipow(2, K); ++mask) {
        std::complex<double> z = 0.0;
        for (int x = 0; x < K; ++x) {
            const double theta = std::numbers::pi * x / K;
            const double sgn = (mask >> x) & 1 ? -1.0 : 1.0;
            z += sgn * std::complex<double>(std::cos(theta), std::sin(theta));
        }
        zs.push_back(z);
    }
    double best = -1e300;
    if (n == 2) {
        for (const auto& z1 : zs)
            for (const auto& z2 : zs) best = std::max(best, (z1 * z2).real());
    } else {
        for (const auto& z1 : zs)
            for (const auto& z2 : zs) {
                const std::complex<double> z12 = z1 * z2;
                for (const auto& z3 : zs) best = std::max(best, (z12 * z3).real());
            }
    }
    f.bound = best * norm;
    return f;
}

BellFunctional catalog(const std::string& name, const CatalogParams& params) {
    if (name == "chsh") return chsh();
    if (name == "mermin") return mermin(params.n ? params.n : 3);
    if (name == "svetlichny") return svetlichny();
    if (name == "cglmp") return cglmp(params.d ? params.d : 3);
    if (name == "plane")
        return plane_functional(params.n ? params.n : 2, params.settings ? params.settings : 4);
    throw std::invalid_argument("catalog: unknown functional '" + name + "'");
}

namespace {

Operator equatorial_observable(double theta) {
    Mat m(2, 2);
    m << 0.0, std::complex<double>(std::cos(theta), -std::sin(theta)),
        std::complex<double>(std::cos(theta), std::sin(theta)), 0.0;
    return Operator({2}, std::move(m));
}

}  // namespace

MeasurementAssignment plane_assignment(int n, int K) {
    std::vector<std::vector<Povm>> per_party(n);
    for (int i = 0; i < n; ++i)
        for (int x = 0; x < K; ++x)
            per_party[i].push_back(observable_povm(equatorial_observable(std::numbers::pi * x / K)));
    return make_assignment(std::move(per_party));
}

MeasurementAssignment cglmp_fourier_assignment(int d, const std::array<double, 4>& phases) {
    const std::complex<double> tau(0.0, 2.0 * std::numbers::pi / d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    auto basis = [&](double offset, double sign) {
        Mat b(d, d);
        for (int k = 0; k < d; ++k)
            for (int j = 0; j < d; ++j)
                b(j, k) = norm * std::exp(tau * (sign * j * (k + offset)));
        return b;
    };
    std::vector<std::vector<Povm>> per_party(2);
    per_party[0].push_back(projective({d}, basis(phases[0], 1.0)));
    per_party[0].push_back(projective({d}, basis(phases[1], 1.0)));
    per_party[1].push_back(projective({d}, basis(phases[2], -1.0)));
    per_party[1].push_back(projective({d}, basis(phases[3], -1.0)));
    return make_assignment(std::move(per_party));
}

CglmpSearchResult cglmp_optimize_phases(int d, int rounds) {
    const BellFunctional f = cglmp(d);
    const DensityState phi = max_entangled(d);
    auto value_of = [&](const std::array<double, 4>& ph) {
        return evaluate(f, behavior_from_quantum(phi, cglmp_fourier_assignment(d, ph)));
    };
    CglmpSearchResult best{kCglmpCanonicalPhases, value_of(kCglmpCanonicalPhases)};
    for (int round = 0; round < rounds; ++round) {
        const double span = 0.2 / (round + 1);
        for (int coord = 0; coord < 4; ++coord) {
            for (int step = -4; step <= 4; ++step) {
                std::array<double, 4> trial = best.phases;
                trial[coord] += span * step / 4.0;
                const double v = value_of(trial);
                if (v > best.value) best = {trial, v};
            }
        }
    }
    return best;
}

namespace {

struct PartyBlocks {
    std::vector<std::string> order;
    std::vector<std::vector<int>> positions;
    std::vector<std::vector<int>> dims;
};

PartyBlocks party_blocks(const DensityState& state) {
    PartyBlocks pb;
    for (int k = 0; k < state.op.num_subsystems(); ++k) {
        const std::string& label = state.parties[k];
        auto it = std::find(pb.order.begin(), pb.order.end(), label);
        if (it == pb.order.end()) {
            pb.order.push_back(label);
            pb.positions.push_back({k});
            pb.dims.push_back({state.op.dims[k]});
        } else {
            const auto idx = it - pb.order.begin();
            if (pb.positions[idx].back() != k - 1)
                throw std::invalid_argument("seesaw: party subsystems must be contiguous");
            pb.positions[idx].push_back(k);
            pb.dims[idx].push_back(state.op.dims[k]);
        }
    }
    return pb;
}

Operator random_observable(const std::vector<int>& dims, std::mt19937_64& rng) {
    const int d = product_dim(dims);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat h(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) h(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    h = (h + Mat(h.adjoint())).eval();
    Spectrum spec = hermitian_eig(Operator(dims, std::move(h)));
    Mat sign = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k)
        sign += (spec.eigenvalues[k] >= 0.0 ? 1.0 : -1.0) * spec.eigenvectors.col(k) *
                spec.eigenvectors.col(k).adjoint();
    return Operator(dims, std::move(sign));
}

Povm positive_part_update(const Operator& diff) {
    Spectrum spec = hermitian_eig(diff);
    const int d = diff.dim();
    Mat m0 = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k)
        if (spec.eigenvalues[k] > 0.0)
            m0 += spec.eigenvectors.col(k) * spec.eigenvectors.col(k).adjoint();
    Operator e0(diff.dims, m0);
    Operator e1(diff.dims, Mat(Mat::Identity(d, d) - m0));
    return Povm{{std::move(e0), std::move(e1)}};
}

}  // namespace

SeesawResult seesaw(const DensityState& state, const Scenario& scenario,
                    const BellFunctional& f, const SeesawOptions& opts) {
    if (scenario.outcomes != 2)
        throw std::invalid_argument("seesaw: implemented for dichotomic scenarios");
    if (!(f.scenario == scenario)) throw std::invalid_argument("seesaw: scenario mismatch");
    const PartyBlocks pb = party_blocks(state);
    const int n = static_cast<int>(pb.order.size());
    if (n != scenario.parties)
        throw std::invalid_argument("seesaw: state parties do not match the scenario");
    const int m = scenario.settings;
    const std::size_t na = scenario.outcome_count();

    std::mt19937_64 rng(opts.seed);
    SeesawResult best;
    best.value = -1e300;

    const int total_starts = opts.restarts + (opts.warm_start ? 1 : 0);
    if (total_starts < 1) throw std::invalid_argument("seesaw: needs at least one start");
    for (int start = 0; start < total_starts; ++start) {
        MeasurementAssignment ma;
        if (opts.warm_start && start == 0) {
            ma = *opts.warm_start;
        } else {
            std::vector<std::vector<Povm>> per_party(n);
            for (int i = 0; i < n; ++i)
                for (int x = 0; x < m; ++x)
                    per_party[i].push_back(observable_povm(random_observable(pb.dims[i], rng)));
            ma = make_assignment(std::move(per_party));
        }

        double current = -1e300;
        for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
            double sweep_value = current;
            for (int party = 0; party < n; ++party) {
                // contract the state with every other-party effect combination
                const std::size_t nox = ipow(m, n - 1);
                const std::size_t noa = ipow(2, n - 1);
                std::vector<Operator> contracted(nox * noa);
                std::vector<int> other_positions;
                for (int i = 0; i < n; ++i)
                    if (i != party)
                        other_positions.insert(other_positions.end(), pb.positions[i].begin(),
                                               pb.positions[i].end());
                for (std::size_t xo = 0; xo < nox; ++xo) {
                    const std::vector<int> xs_other = unpack_index(m, n - 1, xo);
                    for (std::size_t ao = 0; ao < noa; ++ao) {
                        const std::vector<int> as_other = unpack_index(2, n - 1, ao);
                        Operator joint;
                        bool first = true;
                        for (int i = 0, t = 0; i < n; ++i) {
                            if (i == party) continue;
                            const Operator& e = ma.per_party[i][xs_other[t]].effects[as_other[t]];
                            joint = first ? e : kron(joint, e);
                            first = false;
                            ++t;
                        }
                        const Operator e_full = embed(joint, other_positions, state.op.dims);
                        Operator weighted(state.op.dims, Mat(state.op.entries * e_full.entries));
                        contracted[xo * noa + ao] = partial_trace(weighted, pb.positions[party]);
                    }
                }
                // effective operators per own setting and outcome
                const int dp = product_dim(pb.dims[party]);
                std::vector<Mat> reff(static_cast<std::size_t>(m) * 2, Mat::Zero(dp, dp));
                std::vector<int> xs(n), as(n);
                for (std::size_t xo = 0; xo < nox; ++xo) {
                    const std::vector<int> xs_other = unpack_index(m, n - 1, xo);
                    for (std::size_t ao = 0; ao < noa; ++ao) {
                        const std::vector<int> as_other = unpack_index(2, n - 1, ao);
                        for (int i = 0, t = 0; i < n; ++i)
                            if (i != party) {
                                xs[i] = xs_other[t];
                                as[i] = as_other[t];
                                ++t;
                            }
                        const Mat& op = contracted[xo * noa + ao].entries;
                        for (int x = 0; x < m; ++x) {
                            xs[party] = x;
                            const std::size_t xf = pack_index(m, n, xs);
                            for (int a = 0; a < 2; ++a) {
                                as[party] = a;
                                const double c =
                                    f.coeffs[xf * na + pack_index(2, n, as)];
                                if (c != 0.0) reff[x * 2 + a] += c * op;
                            }
                        }
                    }
                }
                double party_value = 0.0;
                for (int x = 0; x < m; ++x) {
                    Mat diff = reff[x * 2] - reff[x * 2 + 1];
                    diff = 0.5 * (diff + Mat(diff.adjoint()));
                    ma.per_party[party][x] = positive_part_update(Operator(pb.dims[party], diff));
                    party_value +=
                        trace_product(ma.per_party[party][x].effects[0].entries, reff[x * 2])
                            .real() +
                        trace_product(ma.per_party[party][x].effects[1].entries, reff[x * 2 + 1])
                            .real();
                }
                if (current > -1e299 && party_value < current - kMonotoneSlack)
                    throw std::logic_error("seesaw: objective decreased");
                current = party_value;
            }
            if (sweep > 0 && current - sweep_value < opts.plateau_tol) break;
        }
        if (current > best.value) {
            best.value = current;
            best.assignment = ma;
        }
    }
    best.value = evaluate(f, behavior_from_quantum(state, best.assignment));
    return best;
}

SearchResult nonlocality_search(const DensityState& state, const Scenario& scenario,
                                const VertexSet& vertices, const BellFunctional& start,
                                const SearchOptions& opts) {
    BellFunctional f = start;
    SearchResult best;
    double best_v = 1e300;
    std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
    const MeasurementAssignment* warm = nullptr;
    MeasurementAssignment last;
    int stale = 0;
    for (int iter = 0; iter < opts.outer_iterations; ++iter) {
        SeesawOptions so;
        so.restarts = opts.seesaw_restarts;
        so.seed = opts.seed + 1000003UL * static_cast<unsigned long>(iter);
        so.warm_start = warm;
        const SeesawResult sr = seesaw(state, scenario, f, so);
        last = sr.assignment;
        warm = &last;
        Behavior b = behavior_from_quantum(state, sr.assignment);
        MembershipAnalysis analysis = membership_with_facet(b, vertices);
        if (analysis.verdict.v_star < best_v) {
            best_v = analysis.verdict.v_star;
            best.assignment = sr.assignment;
            best.behavior = std::move(b);
            best.verdict = analysis.verdict;
            stale = 0;
        } else {
            ++stale;
        }
        best.iterations = iter + 1;
        if (best_v < opts.target_v_star) break;
        f = analysis.exit_facet;
        if (stale >= 6) {  // kick the search with a fresh correlator direction
            std::normal_distribution<double> gauss(0.0, 1.0);
            std::vector<double> w(scenario.context_count());
            for (double& v : w) v = gauss(rng);
            f = functional_from_correlators(scenario, w, 0.0, BoundKind::Declared);
            warm = nullptr;
            stale = 0;
        }
    }
    return best;
}

}  // namespace bellnet
