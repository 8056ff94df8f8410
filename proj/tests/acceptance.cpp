// Acceptance suite: one checker per criterion, each printing a PASS/FAIL
// line with the measured numbers. The process exit code is the number of
// failed criteria.

#include "bellnet/bell.hpp"
#include "bellnet/distill.hpp"
#include "bellnet/json_io.hpp"
#include "bellnet/polytope.hpp"
#include "bellnet/protocols.hpp"
#include "bellnet/states.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace bellnet;

namespace {

const double kRoot2 = std::sqrt(2.0);

struct Outcome {
    bool pass = true;
    std::string detail;
};

Mat observable_matrix(double theta) {
    Mat m(2, 2);
    m << 0.0, std::complex<double>(std::cos(theta), -std::sin(theta)),
        std::complex<double>(std::cos(theta), std::sin(theta)), 0.0;
    return m;
}

Operator pauli_z_op() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return Operator({2}, m);
}

Operator pauli_x_op() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return Operator({2}, m);
}

MeasurementAssignment chsh_optimal_settings() {
    const double s = 1.0 / kRoot2;
    Operator bp({2}, Mat(s * (pauli_z_op().entries + pauli_x_op().entries)));
    Operator bm({2}, Mat(s * (pauli_z_op().entries - pauli_x_op().entries)));
    return make_assignment({{observable_povm(pauli_z_op()), observable_povm(pauli_x_op())},
                            {observable_povm(bp), observable_povm(bm)}});
}

ComposedNetwork lambda_network(double p) {
    NetworkLayout layout;
    layout.parties = {"A", "B", "C"};
    layout.links = {{0, {"A", "B"}}, {1, {"A", "C"}}};
    std::vector<DensityState> states = {isotropic({p, 2}), isotropic({p, 2})};
    return compose_network(layout, states);
}

MeasurementAssignment lambda_assignment() {
    Operator phi_proj = projector({2, 2}, max_entangled_ket(2));
    Operator phi_obs({2, 2}, Mat(2.0 * phi_proj.entries - Mat::Identity(4, 4)));
    Operator zz = kron(pauli_z_op(), pauli_z_op());
    MeasurementAssignment bc = chsh_optimal_settings();
    return make_assignment({{observable_povm(phi_obs), observable_povm(zz)},
                            bc.per_party[0],
                            bc.per_party[1]});
}

// --- criterion 1 -----------------------------------------------------------

Outcome criterion1() {
    const VertexSet dets = deterministic_vertices({2, 2, 2});
    const MeasurementAssignment ma = chsh_optimal_settings();
    double flip_p = -1.0, vstar_at_1 = 0.0;
    for (int k = 0; k <= 100; ++k) {
        const double p = k / 100.0;
        const Behavior b = behavior_from_quantum(isotropic({p, 2}), ma);
        const MembershipVerdict v = membership(b, dets);
        if (flip_p < 0 && !v.member) flip_p = p;
        if (k == 100) vstar_at_1 = v.v_star;
    }
    const double target = 1.0 / kRoot2;
    Outcome out;
    out.pass = flip_p > 0 && std::abs(flip_p - target) <= 0.01 + 1e-12 &&
               std::abs(vstar_at_1 - target) <= 1e-4;
    std::ostringstream ss;
    ss << "membership flips at p=" << flip_p << " (1/sqrt2=" << target << ", one grid step), "
       << "v*(p=1)=" << vstar_at_1;
    out.detail = ss.str();
    return out;
}

// --- criterion 2 -----------------------------------------------------------

Outcome criterion2() {
    const double p2 = hashing_threshold(2);
    bool decreasing = true;
    double prev = 1.0;
    for (int k = 1; k <= 16; ++k) {
        const double p = hashing_threshold(1L << k);
        if (p >= prev) decreasing = false;
        prev = p;
    }
    const double p16 = prev;
    const bool p2_ok = std::abs(p2 - 0.7476) <= 1e-3;
    const bool p16_ok = p16 < 0.52;
    Outcome out;
    out.pass = p2_ok && decreasing && p16_ok;
    std::ostringstream ss;
    ss << "p*(2)=" << p2 << (p2_ok ? " ok" : " BAD") << "; strictly decreasing="
       << (decreasing ? "yes" : "NO") << "; p*(2^16)=" << p16 << " (< 0.52 "
       << (p16_ok ? "ok" : "FAILS; the closed form converges like 1/2 + h(p)/(2 log2 d), so "
                           "p*(2^16) ~ 0.531") << ")";
    out.detail = ss.str();
    return out;
}

// --- criterion 3 -----------------------------------------------------------

Outcome criterion3() {
    const double p7 = star_threshold(7);
    const double p21 = star_threshold(21);
    Outcome out;
    out.pass = p7 < 0.705 && p21 < 0.66;
    std::ostringstream ss;
    ss << "p_7=" << p7 << " < 0.705, p_21=" << p21 << " < 0.66";
    out.detail = ss.str();
    return out;
}

// --- criterion 4 -----------------------------------------------------------

double star_crossing_seesaw(int leaves, const BellFunctional& f, unsigned long seed) {
    // bisect the p at which the seesaw value crosses the local bound
    double lo = 0.6, hi = 1.0;
    SeesawOptions opts;
    opts.restarts = 10;
    auto violated = [&](double p) {
        opts.seed = seed;
        const StarResult star = star_conditional(p, leaves);
        return seesaw(star.conditional, f.scenario, f, opts).value > f.bound + 1e-9;
    };
    if (!violated(hi)) return 2.0;  // no crossing below p = 1
    for (int it = 0; it < 18; ++it) {
        const double mid = 0.5 * (lo + hi);
        (violated(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double star_crossing_plane(int K) {
    const BellFunctional f = plane_functional(2, K);
    const MeasurementAssignment ma = plane_assignment(2, K);
    auto violated = [&](double p) {
        const StarResult star = star_conditional(p, 2);
        return evaluate(f, behavior_from_quantum(star.conditional, ma)) > f.bound + 1e-12;
    };
    double lo = 0.6, hi = 1.0;
    if (!violated(hi)) return 2.0;
    for (int it = 0; it < 30; ++it) {
        const double mid = 0.5 * (lo + hi);
        (violated(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

Outcome criterion4() {
    const double p_hat_2 = star_crossing_seesaw(2, chsh(), 401);
    const double p_hat_3 = star_crossing_seesaw(3, mermin(3), 402);
    const bool window2 = p_hat_2 >= star_threshold(2) - 0.01 && p_hat_2 <= 0.95;
    const bool window3 = p_hat_3 >= star_threshold(3) - 0.01 && p_hat_3 <= 0.95;

    const double t4 = star_crossing_plane(4);
    const double t8 = star_crossing_plane(8);
    const bool plane_ok = t8 < t4 && std::abs(t8 - star_threshold(2)) / star_threshold(2) <= 0.05;

    Outcome out;
    out.pass = window2 && window3 && plane_ok;
    std::ostringstream ss;
    ss << "p_hat_2=" << p_hat_2 << " vs window [" << star_threshold(2) - 0.01 << ", 0.95] "
       << (window2 ? "ok"
                   : "FAILS; optimal CHSH on the swapped isotropic state crosses at 2^(-1/4) "
                     "~ 0.8409, below the paper-formula window")
       << "; p_hat_3=" << p_hat_3 << " vs [" << star_threshold(3) - 0.01 << ", 0.95] "
       << (window3 ? "ok" : "FAILS") << "; plane thresholds K=4: " << t4 << ", K=8: " << t8
       << " (decreasing, K=8 within 5% of " << star_threshold(2) << ": "
       << (plane_ok ? "ok" : "FAILS") << ")";
    out.detail = ss.str();
    return out;
}

// --- criterion 5 -----------------------------------------------------------

Outcome criterion5() {
    const VertexSet hybrid = hybrid_vertices_3party();
    ComposedNetwork net = lambda_network(1.0);
    SearchOptions opts;
    opts.outer_iterations = 40;
    opts.seesaw_restarts = 10;
    opts.seed = 505;
    const SearchResult res = nonlocality_search(net.state, {3, 2, 2}, hybrid, svetlichny(), opts);

    bool lambda_ok = !res.verdict.member && res.verdict.v_star < 1.0 - 1e-3;
    bool certificate_ok = false;
    if (res.verdict.certificate) {
        const BellFunctional& g = *res.verdict.certificate;
        certificate_ok = evaluate(g, res.behavior) > g.bound + 1e-9;
        for (const Behavior& v : hybrid.vertices)
            certificate_ok = certificate_ok && evaluate(g, v) <= g.bound + 1e-9;
    }

    SeesawOptions so;
    so.restarts = 24;
    so.seed = 506;
    const double svet_ghz = seesaw(ghz(3), {3, 2, 2}, svetlichny(), so).value;
    const double hybrid_bound = bound_over(svetlichny(), hybrid);
    const bool ghz_ok =
        std::abs(svet_ghz - 4 * kRoot2) <= 1e-3 && std::abs(hybrid_bound - 4.0) <= 1e-9;

    Outcome out;
    out.pass = lambda_ok && certificate_ok && ghz_ok;
    std::ostringstream ss;
    ss << "lambda search v*=" << res.verdict.v_star << " after " << res.iterations
       << " iterations "
       << (lambda_ok ? "(non-member ok)"
                     : "(FAILS: every (3,2,2) dichotomic behavior of the two-singlet state stays "
                       "inside the 288-vertex hybrid hull; Svetlichny caps at 4 by a trace-norm "
                       "identity and the quantum set only touches the boundary)")
       << "; GHZ svetlichny seesaw=" << svet_ghz << " (4sqrt2 +- 1e-3), hybrid bound="
       << hybrid_bound << (ghz_ok ? " ok" : " BAD");
    out.detail = ss.str();
    return out;
}

// --- criterion 6 -----------------------------------------------------------

Outcome criterion6() {
    const BellFunctional lifted = lift(chsh(), PostSelection{{0}, {0}, {0}}, 3, {0, 0});
    const VertexSet dets = deterministic_vertices({3, 2, 2});
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = -1e300;
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> w(dets.vertices.size());
        double total = 0.0;
        for (double& x : w) total += (x = u(rng));
        for (double& x : w) x /= total;
        worst = std::max(worst, evaluate(lifted, mix(dets.vertices, w)));
    }

    ComposedNetwork net = lambda_network(1.0);
    const Behavior b = behavior_from_quantum(net.state, lambda_assignment());
    const double value = evaluate(lifted, b);
    const double expected = (2 * kRoot2 - 2) / 4;

    double x0_spread = 0.0;
    for (int r0 = 0; r0 < 2; ++r0)
        for (int r1 = 0; r1 < 2; ++r1) {
            const BellFunctional other = lift(chsh(), PostSelection{{0}, {0}, {0}}, 3, {r0, r1});
            x0_spread = std::max(x0_spread, std::abs(evaluate(other, b) - value));
        }

    Outcome out;
    out.pass = worst <= 1e-9 && std::abs(value - expected) <= 1e-9 && x0_spread <= 1e-10;
    std::ostringstream ss;
    ss << "max over 200 local mixtures=" << worst << " (<= 1e-9), lifted CHSH on lambda="
       << value << " vs (2sqrt2-2)/4=" << expected << ", x0 spread=" << x0_spread;
    out.detail = ss.str();
    return out;
}

// --- criterion 7 -----------------------------------------------------------

Outcome criterion7() {
    std::mt19937_64 rng(707);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (const int d : {2, 3}) {
        for (int i = 0; i < 100; ++i) {
            Mat h(d, d);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) h(r, c) = std::complex<double>(g(rng), g(rng));
            h = (h + Mat(h.adjoint())).eval();
            const Spectrum basis = hermitian_eig(Operator({d}, h));
            Mat m0 = Mat::Zero(d, d);
            for (int k = 0; k < d; ++k)
                m0 += u(rng) * basis.eigenvectors.col(k) * basis.eigenvectors.col(k).adjoint();
            const Operator element({d}, m0);
            const DichotomicSimulation sim = dichotomic_to_projective(element);
            for (int j = 0; j < 100; ++j) {
                Mat w(d, d);
                for (int r = 0; r < d; ++r)
                    for (int c = 0; c < d; ++c) w(r, c) = std::complex<double>(g(rng), g(rng));
                Mat rho = w * w.adjoint();
                rho /= rho.trace().real();
                const Operator state({d}, rho);
                const double direct = trace_product(rho, m0).real();
                worst = std::max(worst, std::abs(simulate_prob0(sim, state) - direct));
            }
        }
    }
    Outcome out;
    out.pass = worst < 1e-10;
    std::ostringstream ss;
    ss << "max |simulated - direct| over 2x100x100 cases = " << worst << " (< 1e-10)";
    out.detail = ss.str();
    return out;
}

// --- criterion 8 -----------------------------------------------------------

Outcome criterion8() {
    const VertexSet hybrid = hybrid_vertices_3party();
    ComposedNetwork net = lambda_network(1.0);
    SearchOptions opts;
    opts.outer_iterations = 40;
    opts.seesaw_restarts = 10;
    opts.seed = 505;
    const SearchResult res = nonlocality_search(net.state, {3, 2, 2}, hybrid, svetlichny(), opts);
    const Behavior p_psi = res.behavior;
    const Behavior junk = uniform_behavior({3, 2, 2});

    int minimal_l = -1;
    double prev_margin = -1e300;
    bool margins_monotone = true;
    for (int copies = 1; copies <= 12; ++copies) {
        const Behavior mixed = flag_distribution(make_flag_params(copies), p_psi, junk, junk);
        const MembershipVerdict v = membership(mixed, hybrid);
        const double margin = 1.0 - v.v_star;
        if (copies > 1 && margin < prev_margin - 1e-9) margins_monotone = false;
        prev_margin = margin;
        if (minimal_l < 0 && !v.member) minimal_l = copies;
    }
    const bool activation_ok = minimal_l > 0 && minimal_l <= 12 && margins_monotone;

    std::mt19937_64 rng(808);
    std::uniform_int_distribution<int> die(0, 2);
    bool coverage_ok = true;
    std::ostringstream cov;
    for (const int copies : {3, 5, 10}) {
        const int samples = 1000000;
        int hit = 0;
        for (int rep = 0; rep < samples; ++rep) {
            int mask = 0;
            for (int k = 0; k < copies; ++k) mask |= 1 << die(rng);
            if (mask == 7) ++hit;
        }
        const double estimate = static_cast<double>(hit) / samples;
        const double exact = coverage_probability(copies, 3);
        const double sigma = std::sqrt(std::max(exact * (1 - exact) / samples, 1e-18));
        if (std::abs(estimate - exact) >= 3 * sigma + 1e-12) coverage_ok = false;
        cov << " L=" << copies << ": |" << estimate << "-" << exact << "|<3sigma;";
    }

    Outcome out;
    out.pass = activation_ok && coverage_ok;
    std::ostringstream ss;
    ss << "minimal hybrid-non-member L="
       << (minimal_l > 0 ? std::to_string(minimal_l) : std::string("none up to 12"))
       << (activation_ok ? " ok"
                         : " FAILS: P_Psi itself is hybrid-member (v*=1, see criterion 5), so "
                           "no flag mixture can leave the hull")
       << "; coverage MC vs formula:" << cov.str() << (coverage_ok ? " ok" : " BAD");
    out.detail = ss.str();
    return out;
}

// --- criterion 9 -----------------------------------------------------------

Outcome criterion9() {
    const CglmpSearchResult r2 = cglmp_optimize_phases(2);
    const CglmpSearchResult r3 = cglmp_optimize_phases(3);
    const double p2 = cglmp(2).bound / r2.value;
    const double p3 = cglmp(3).bound / r3.value;
    Outcome out;
    out.pass = std::abs(p2 - 0.7071) <= 0.005 && p3 < p2;
    std::ostringstream ss;
    ss << "cglmp visibility thresholds: p*(2)=" << p2 << " (0.7071 +- 0.005), p*(3)=" << p3
       << " (< p*(2); the large-d literature value is ~0.67)";
    out.detail = ss.str();
    return out;
}

// --- criterion 10 ----------------------------------------------------------

Outcome criterion10() {
    double worst = 0.0;
    for (int k = 0; k <= 100; ++k) {
        const double p = k / 100.0;
        auto [prob, out_state] = lambda_swap(isotropic({p, 2}), isotropic({p, 2}));
        const double swapped = fidelity_pure(out_state, max_entangled_ket(2));
        const double law = fidelity_pure(isotropic({p * p, 2}), max_entangled_ket(2));
        worst = std::max(worst, std::abs(swapped - law));
    }
    Outcome out;
    out.pass = worst < 1e-10;
    std::ostringstream ss;
    ss << "max |F(swap(iso(p))) - F(iso(p^2))| over the p-grid = " << worst << " (< 1e-10)";
    out.detail = ss.str();
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Outcome()>> criteria = {
        criterion1, criterion2, criterion3, criterion4, criterion5,
        criterion6, criterion7, criterion8, criterion9, criterion10};

    int first = 1, last = static_cast<int>(criteria.size());
    if (argc > 1) {
        first = last = std::atoi(argv[1]);
        if (first < 1 || first > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "usage: %s [1..%zu]\n", argv[0], criteria.size());
            return 2;
        }
    }

    int failures = 0;
    for (int k = first; k <= last; ++k) {
        const auto start = std::chrono::steady_clock::now();
        const Outcome result = criteria[k - 1]();
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!result.pass) ++failures;
        std::printf("[%s] criterion %d (%.1fs): %s\n", result.pass ? "PASS" : "FAIL", k, seconds,
                    result.detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
