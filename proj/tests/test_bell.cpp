#include "bellnet/bell.hpp"

#include "bellnet/states.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace bellnet;
using namespace bellnet::testing;

TEST_SUITE_BEGIN("bell");

namespace {

const double kRoot2 = std::sqrt(2.0);

ComposedNetwork lambda_network(double p) {
    NetworkLayout layout;
    layout.parties = {"A", "B", "C"};
    layout.links = {{0, {"A", "B"}}, {1, {"A", "C"}}};
    std::vector<DensityState> states = {isotropic({p, 2}), isotropic({p, 2})};
    return compose_network(layout, states);
}

// Alice: {project on Phi+, complement} and ZZ; Bob, Charlie: CHSH-optimal
MeasurementAssignment lambda_assignment() {
    Operator phi_proj = projector({2, 2}, max_entangled_ket(2));
    Operator phi_obs({2, 2}, Mat(2.0 * phi_proj.entries - Mat::Identity(4, 4)));
    Operator zz = kron(pauli_z(), pauli_z());
    MeasurementAssignment bc = chsh_optimal_settings();
    return make_assignment({{observable_povm(phi_obs), observable_povm(zz)},
                            bc.per_party[0],
                            bc.per_party[1]});
}

}  // namespace

TEST_CASE("evaluate chsh on PR box, vertices and the singlet") {
    const BellFunctional f = chsh();
    VertexSet ns = ns_vertices_222();
    CHECK(evaluate(f, ns.vertices[16]) == doctest::Approx(4.0));  // canonical PR box

    VertexSet dets = deterministic_vertices({2, 2, 2});
    double best = -1e300;
    for (const Behavior& v : dets.vertices) {
        CHECK(evaluate(f, v) <= 2.0 + 1e-12);
        best = std::max(best, evaluate(f, v));
    }
    CHECK(best == doctest::Approx(2.0));

    Behavior tsirelson = behavior_from_quantum(max_entangled(2), chsh_optimal_settings());
    CHECK(evaluate(f, tsirelson) == doctest::Approx(2 * kRoot2).epsilon(1e-12));
}

TEST_CASE("catalog bounds are vertex maxima") {
    CHECK(chsh().bound == doctest::Approx(2.0));
    CHECK(mermin(3).bound == doctest::Approx(2.0));
    CHECK(svetlichny().bound == doctest::Approx(4.0));
    CHECK(bound_over(svetlichny(), hybrid_vertices_3party()) == doctest::Approx(4.0));
    CHECK(bound_over(mermin(3), deterministic_vertices({3, 2, 2})) == doctest::Approx(2.0));

    CHECK_THROWS_AS(catalog("nope", {}), std::invalid_argument);
    CHECK_THROWS_AS(mermin(9), std::invalid_argument);
}

TEST_CASE("plane functional bound matches the vertex maximum") {
    for (int K : {2, 3, 4}) {
        BellFunctional f = plane_functional(2, K);
        const double vertex_bound = bound_over(f, deterministic_vertices({2, K, 2}));
        CHECK(f.bound == doctest::Approx(vertex_bound).epsilon(1e-9));
    }
}

TEST_CASE("lift of chsh over the lambda network") {
    const BellFunctional f = chsh();
    PostSelection ps{{0}, {0}, {0}};
    BellFunctional lifted = lift(f, ps, 3, {0, 0});

    ComposedNetwork net = lambda_network(1.0);
    Behavior b = behavior_from_quantum(net.state, lambda_assignment());
    CHECK(evaluate(lifted, b) == doctest::Approx((2 * kRoot2 - 2) / 4).epsilon(1e-9));

    // reference-setting invariance on the no-signalling quantum behavior
    for (int r0 = 0; r0 < 2; ++r0)
        for (int r1 = 0; r1 < 2; ++r1) {
            BellFunctional other = lift(f, ps, 3, {r0, r1});
            CHECK(std::abs(evaluate(other, b) - evaluate(lifted, b)) < 1e-10);
        }

    CHECK_THROWS_AS(lift(f, PostSelection{{0}, {0}, {0}}, 2, {0}), std::invalid_argument);
}

TEST_CASE("lifted functionals vanish on local mixtures") {
    const BellFunctional lifted = lift(chsh(), PostSelection{{0}, {0}, {0}}, 3, {0, 0});
    VertexSet dets = deterministic_vertices({3, 2, 2});
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> w(dets.vertices.size());
        double total = 0.0;
        for (double& x : w) total += (x = u(rng));
        for (double& x : w) x /= total;
        CHECK(evaluate(lifted, mix(dets.vertices, w)) <= 1e-9);
    }
}

TEST_CASE("lifting tightness: post-selection probability times the margin") {
    ComposedNetwork net = lambda_network(0.9);
    MeasurementAssignment ma = lambda_assignment();
    Behavior b = behavior_from_quantum(net.state, ma);

    MeasureResult mr =
        measure_and_condition(net.state, projector({2, 2}, max_entangled_ket(2)), {"A"});
    Behavior cond = behavior_from_quantum(*mr.conditional, chsh_optimal_settings());
    const double delta = evaluate(chsh(), cond) - 2.0;

    BellFunctional lifted = lift(chsh(), PostSelection{{0}, {0}, {0}}, 3, {0, 0});
    CHECK(evaluate(lifted, b) == doctest::Approx(mr.probability * delta).epsilon(1e-9));
}

TEST_CASE("seesaw reaches the known optima") {
    SeesawOptions opts;
    opts.restarts = 12;
    opts.seed = 5;
    SeesawResult r = seesaw(max_entangled(2), {2, 2, 2}, chsh(), opts);
    CHECK(r.value == doctest::Approx(2 * kRoot2).epsilon(1e-6));

    SeesawResult rm = seesaw(ghz(3), {3, 2, 2}, mermin(3), opts);
    CHECK(rm.value == doctest::Approx(4.0).epsilon(1e-6));

    opts.restarts = 24;
    SeesawResult rs = seesaw(ghz(3), {3, 2, 2}, svetlichny(), opts);
    CHECK(rs.value == doctest::Approx(4 * kRoot2).epsilon(1e-3));
}

TEST_CASE("seesaw accepts a warm start and never regresses") {
    SeesawOptions cold;
    cold.restarts = 2;
    cold.seed = 17;
    SeesawResult first = seesaw(max_entangled(2), {2, 2, 2}, chsh(), cold);
    SeesawOptions warm;
    warm.restarts = 0;
    warm.warm_start = &first.assignment;
    SeesawResult second = seesaw(max_entangled(2), {2, 2, 2}, chsh(), warm);
    CHECK(second.value >= first.value - 1e-9);
}

TEST_CASE("lambda state svetlichny saturates but never beats the hybrid bound") {
    // the two-singlet state cannot exceed 4; the fallback is the membership LP
    ComposedNetwork net = lambda_network(1.0);
    SeesawOptions opts;
    opts.restarts = 16;
    opts.seed = 7;
    SeesawResult r = seesaw(net.state, {3, 2, 2}, svetlichny(), opts);
    CHECK(r.value <= 4.0 + 1e-9);
    CHECK(r.value >= 4.0 - 1e-3);
    Behavior b = behavior_from_quantum(net.state, r.assignment);
    MembershipVerdict v = membership(b, hybrid_vertices_3party());
    CHECK(v.v_star >= 1.0 - 1e-9);
}

TEST_CASE("cglmp(2) detects isotropic nonlocality at the chsh visibility") {
    const BellFunctional f2 = cglmp(2);
    CHECK(f2.bound == doctest::Approx(2.0));
    CglmpSearchResult best2 = cglmp_optimize_phases(2);
    CHECK(best2.value == doctest::Approx(2 * kRoot2).epsilon(1e-6));
    const double p_star_2 = f2.bound / best2.value;
    CHECK(p_star_2 == doctest::Approx(1.0 / kRoot2).epsilon(1e-6));
}

TEST_CASE("cglmp(3) beats the qubit visibility") {
    const BellFunctional f3 = cglmp(3);
    CHECK(f3.bound == doctest::Approx(2.0));
    CglmpSearchResult best3 = cglmp_optimize_phases(3);
    CHECK(best3.value > 2.85);
    const double p_star_3 = f3.bound / best3.value;
    CHECK(p_star_3 < 1.0 / kRoot2 - 0.005);
}

TEST_SUITE_END();
