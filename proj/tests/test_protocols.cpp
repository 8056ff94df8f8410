#include "bellnet/protocols.hpp"

#include "bellnet/bell.hpp"
#include "bellnet/states.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace bellnet;
using namespace bellnet::testing;

TEST_SUITE_BEGIN("protocols");

TEST_CASE("star conditional endpoints") {
    StarResult perfect = star_conditional(1.0, 2);
    CHECK(perfect.success_prob == doctest::Approx(0.25));
    CHECK(fidelity_pure(perfect.conditional, max_entangled_ket(2)) == doctest::Approx(1.0));

    StarResult noise = star_conditional(0.0, 2);
    CHECK((noise.conditional.op.entries - Mat(0.25 * Mat::Identity(4, 4))).cwiseAbs().maxCoeff() <
          1e-12);

    StarResult g = star_conditional(1.0, 3);
    CHECK(fidelity_pure(g.conditional, ghz_ket(3)) == doctest::Approx(1.0));

    CHECK_THROWS_AS(star_conditional(0.5, 6), std::invalid_argument);
}

TEST_CASE("star at two leaves reproduces the swap") {
    for (const double p : {0.2, 0.5, 0.8}) {
        StarResult star = star_conditional(p, 2);
        auto [prob, swapped] = lambda_swap(isotropic({p, 2}), isotropic({p, 2}));
        CHECK(star.success_prob == doctest::Approx(prob).epsilon(1e-12));
        CHECK((star.conditional.op.entries - swapped.op.entries).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("star conditional ghz fidelity rises with p") {
    double prev = 0.0;
    for (int k = 1; k <= 10; ++k) {
        const double f =
            fidelity_pure(star_conditional(k / 10.0, 3).conditional, ghz_ket(3));
        CHECK(f > prev);
        prev = f;
    }
    CHECK(prev == doctest::Approx(1.0));
}

TEST_CASE("lambda swap identities") {
    auto [prob, out] = lambda_swap(max_entangled(2), max_entangled(2));
    CHECK(prob == doctest::Approx(0.25));
    CHECK(fidelity_pure(out, max_entangled_ket(2)) == doctest::Approx(1.0));

    DensityState noise{Operator({2, 2}, Mat(0.25 * Mat::Identity(4, 4))),
                       default_party_labels(2)};
    auto [prob2, out2] = lambda_swap(max_entangled(2), noise);
    CHECK(prob2 == doctest::Approx(0.25));
    CHECK((out2.op.entries - noise.op.entries).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(lambda_swap(max_entangled(2), max_entangled(3)), std::invalid_argument);
}

TEST_CASE("swap of isotropic states obeys the quadratic visibility law") {
    for (int k = 0; k <= 10; ++k) {
        const double p = k / 10.0;
        auto [prob, out] = lambda_swap(isotropic({p, 2}), isotropic({p, 2}));
        const double expected = fidelity_pure(isotropic({p * p, 2}), max_entangled_ket(2));
        CHECK(std::abs(fidelity_pure(out, max_entangled_ket(2)) - expected) < 1e-10);
    }
}

TEST_CASE("star threshold formula") {
    CHECK(star_threshold(7) == doctest::Approx((2 / std::numbers::pi) * std::pow(2.0, 1.0 / 7)));
    CHECK(star_threshold(7) < 0.705);
    CHECK(star_threshold(21) < 0.66);
    double prev = star_threshold(1);
    for (int n = 2; n <= 30; ++n) {
        CHECK(star_threshold(n) < prev);
        prev = star_threshold(n);
    }
    CHECK(prev > 2 / std::numbers::pi);
}

TEST_CASE("flag distribution arithmetic") {
    CHECK(make_flag_params(1).p_eq == doctest::Approx(1.0));
    CHECK(make_flag_params(10).p_eq == doctest::Approx(1.0 / 512));
    CHECK_THROWS_AS(make_flag_params(0), std::invalid_argument);

    const Scenario s{3, 2, 2};
    Behavior u = uniform_behavior(s);
    Behavior psi = behavior_from_quantum(
        ghz(3), make_assignment({{observable_povm(pauli_z()), observable_povm(pauli_x())},
                                 {observable_povm(pauli_z()), observable_povm(pauli_x())},
                                 {observable_povm(pauli_z()), observable_povm(pauli_x())}}));

    Behavior l1 = flag_distribution(make_flag_params(1), psi, u, u);
    for (std::size_t t = 0; t < l1.table.size(); ++t)
        CHECK(l1.table[t] == doctest::Approx(u.table[t]).epsilon(1e-12));

    Behavior l11 = flag_distribution(make_flag_params(11), psi, u, u);
    CHECK(no_signalling_residual(l11) < 1e-10);
    const double peq = make_flag_params(11).p_eq;
    for (std::size_t t = 0; t < l11.table.size(); ++t)
        CHECK(l11.table[t] ==
              doctest::Approx(peq * u.table[t] + (1 - peq) * psi.table[t]).epsilon(1e-12));
}

TEST_CASE("coverage probability formula against enumeration and Monte Carlo") {
    CHECK(coverage_probability(5, 1) == doctest::Approx(1.0));
    CHECK(coverage_probability(2, 2) == doctest::Approx(0.5));  // {12, 21} out of 4

    // enumeration for N=3, L=4: 3^4 = 81 draws
    int covered = 0;
    for (int w = 0; w < 81; ++w) {
        int digits = w, mask = 0;
        for (int k = 0; k < 4; ++k) {
            mask |= 1 << (digits % 3);
            digits /= 3;
        }
        if (mask == 7) ++covered;
    }
    CHECK(coverage_probability(4, 3) == doctest::Approx(covered / 81.0).epsilon(1e-12));

    std::mt19937_64 rng(71);
    std::uniform_int_distribution<int> die(0, 2);
    const int samples = 1000000;
    int hit = 0;
    for (int rep = 0; rep < samples; ++rep) {
        int mask = 0;
        for (int k = 0; k < 20; ++k) mask |= 1 << die(rng);
        if (mask == 7) ++hit;
    }
    const double estimate = static_cast<double>(hit) / samples;
    const double exact = coverage_probability(20, 3);
    const double sigma = std::sqrt(exact * (1 - exact) / samples);
    CHECK(std::abs(estimate - exact) < 3 * sigma + 1e-12);
}

TEST_CASE("coverage probability is nondecreasing in L and tends to one") {
    double prev = 0.0;
    for (int copies = 3; copies <= 60; copies += 3) {
        const double c = coverage_probability(copies, 3);
        CHECK(c >= prev - 1e-12);
        prev = c;
    }
    CHECK(prev > 0.999999);
}

TEST_SUITE_END();
