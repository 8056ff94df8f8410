#include "bellnet/json_io.hpp"
#include "bellnet/sweep.hpp"

#include "bellnet/bell.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace bellnet;
using namespace bellnet::testing;

TEST_SUITE_BEGIN("jsonio");

TEST_CASE("behavior json round trip is exact") {
    Behavior b = behavior_from_quantum(max_entangled(2), chsh_optimal_settings());
    Behavior back = behavior_from_json(behavior_to_json(b));
    CHECK(back.scenario == b.scenario);
    for (std::size_t t = 0; t < b.table.size(); ++t) CHECK(back.table[t] == b.table[t]);
}

TEST_CASE("functional json round trip") {
    BellFunctional f = svetlichny();
    BellFunctional back = functional_from_json(functional_to_json(f));
    CHECK(back.bound == f.bound);
    CHECK(back.bound_kind == f.bound_kind);
    for (std::size_t t = 0; t < f.coeffs.size(); ++t) CHECK(back.coeffs[t] == f.coeffs[t]);
}

TEST_CASE("assignment json round trip preserves statistics") {
    MeasurementAssignment ma = chsh_optimal_settings();
    MeasurementAssignment back = assignment_from_json(assignment_to_json(ma));
    Behavior b1 = behavior_from_quantum(max_entangled(2), ma);
    Behavior b2 = behavior_from_quantum(max_entangled(2), back);
    for (std::size_t t = 0; t < b1.table.size(); ++t)
        CHECK(b1.table[t] == doctest::Approx(b2.table[t]).epsilon(1e-15));
}

TEST_CASE("verdict json carries the certificate") {
    Behavior tsirelson = behavior_from_quantum(max_entangled(2), chsh_optimal_settings());
    MembershipVerdict v = membership(tsirelson, deterministic_vertices({2, 2, 2}));
    Json j = verdict_to_json(v);
    CHECK(j.at("member").get<bool>() == false);
    CHECK(!j.at("certificate").is_null());
    CHECK(j.at("certificate").at("coeffs").size() == tsirelson.table.size());
}

TEST_CASE("network json composes the lambda state") {
    const char* text = R"({
      "parties": ["A", "B", "C"],
      "links": [
        {"state": "phi", "d": 2, "assign": ["A", "B"]},
        {"state": "iso", "p": 0.8, "d": 2, "assign": ["A", "C"]}
      ]})";
    ComposedNetwork net = compose_network_json(Json::parse(text));
    CHECK(net.state.op.dims == std::vector<int>{2, 2, 2, 2});
    CHECK(net.ownership.at("A").size() == 2);
    Operator link = partial_trace(net.state.op, {1, 3});
    CHECK((link.entries - isotropic({0.8, 2}).op.entries).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(compose_network_json(Json::parse(R"({"parties":["A"],"links":[
        {"state":"weird","assign":["A"]}]})")),
                    std::invalid_argument);
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("sweep");

TEST_CASE("grid generation is inclusive and validated") {
    SweepSpec spec{"p", 0.0, 1.0, 0.01};
    CHECK(spec.grid().size() == 101);
    CHECK(spec.grid().back() == doctest::Approx(1.0));
    CHECK_THROWS_AS((SweepSpec{"p", 0.0, 1.0, 0.0}).grid(), std::invalid_argument);
    CHECK_THROWS_AS((SweepSpec{"p", 1.0, 0.0, 0.1}).grid(), std::invalid_argument);
}

TEST_CASE("rows keep grid order and errors become a column") {
    SweepSpec spec{"x", 0.0, 4.0, 1.0};
    SweepTable table = run_sweep(spec, {"double"}, [](double x) {
        if (x == 3.0) throw std::runtime_error("boom");
        return std::vector<double>{2 * x};
    });
    CHECK(table.rows.size() == 5);
    CHECK(table.rows[2][1] == doctest::Approx(4.0));
    CHECK(table.errors[3] == "boom");
    CHECK(table.has_errors());
    const std::string csv = table.to_csv();
    CHECK(csv.find("x,double,error") == 0);
    CHECK(csv.find("boom") != std::string::npos);
}

TEST_CASE("csv uses twelve significant digits and no error column when clean") {
    SweepSpec spec{"x", 0.25, 0.25, 1.0};
    SweepTable table =
        run_sweep(spec, {"v"}, [](double) { return std::vector<double>{1.0 / 3.0}; });
    CHECK(table.to_csv() == "x,v\n0.25,0.333333333333\n");
}

TEST_CASE("thread cap honors the environment variable") {
    setenv("BELLNET_THREADS", "3", 1);
    CHECK(sweep_thread_cap() == 3);
    unsetenv("BELLNET_THREADS");
    CHECK(sweep_thread_cap() >= 1);
}

TEST_SUITE_END();
