#include "bellnet/bell.hpp"
#include "bellnet/behavior.hpp"
#include "bellnet/distill.hpp"
#include "bellnet/json_io.hpp"
#include "bellnet/linalg.hpp"
#include "bellnet/measurements.hpp"
#include "bellnet/polytope.hpp"
#include "bellnet/protocols.hpp"
#include "bellnet/states.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

namespace py = pybind11;
using namespace bellnet;

namespace {

VertexSet vertices_for(const std::string& model, const Scenario& s) {
    if (model == "local") return deterministic_vertices(s);
    if (model == "ns") {
        if (!(s == Scenario{2, 2, 2}))
            throw std::invalid_argument("ns vertices are available for the (2,2,2) scenario");
        return ns_vertices_222();
    }
    if (model == "hybrid") {
        if (!(s == Scenario{3, 2, 2}))
            throw std::invalid_argument("hybrid vertices are available for the (3,2,2) scenario");
        return hybrid_vertices_3party();
    }
    throw std::invalid_argument("unknown model '" + model + "'; use local, hybrid or ns");
}

}  // namespace

PYBIND11_MODULE(bellnet, m) {
    m.doc() = "Network nonlocality toolkit: states, behaviors, Bell functionals, "
              "polytope membership and activation protocols";

    py::class_<Operator>(m, "Operator")
        .def(py::init<std::vector<int>, Mat>(), py::arg("dims"), py::arg("matrix"))
        .def_readonly("dims", &Operator::dims)
        .def_property_readonly("matrix", [](const Operator& o) { return o.entries; })
        .def("__repr__", [](const Operator& o) {
            return "<Operator dim=" + std::to_string(o.dim()) + ">";
        });

    py::class_<DensityState>(m, "DensityState")
        .def_property_readonly("matrix", [](const DensityState& s) { return s.op.entries; })
        .def_property_readonly("dims", [](const DensityState& s) { return s.op.dims; })
        .def_readonly("parties", &DensityState::parties)
        .def("entropy", &entropy)
        .def("fidelity_pure", &fidelity_pure, py::arg("ket"));

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<int, int, int>(), py::arg("parties"), py::arg("settings"),
             py::arg("outcomes"))
        .def_readwrite("parties", &Scenario::parties)
        .def_readwrite("settings", &Scenario::settings)
        .def_readwrite("outcomes", &Scenario::outcomes)
        .def("table_size", &Scenario::table_size);

    py::class_<Behavior>(m, "Behavior")
        .def_readonly("scenario", &Behavior::scenario)
        .def_readonly("table", &Behavior::table)
        .def("correlator", &correlator, py::arg("settings"))
        .def("no_signalling_residual", &no_signalling_residual)
        .def("to_json", [](const Behavior& b) { return behavior_to_json(b).dump(); });

    py::class_<BellFunctional>(m, "BellFunctional")
        .def_readonly("scenario", &BellFunctional::scenario)
        .def_readonly("coeffs", &BellFunctional::coeffs)
        .def_readonly("bound", &BellFunctional::bound)
        .def("evaluate", &evaluate, py::arg("behavior"))
        .def("to_json", [](const BellFunctional& f) { return functional_to_json(f).dump(); });

    py::class_<MembershipVerdict>(m, "MembershipVerdict")
        .def_readonly("v_star", &MembershipVerdict::v_star)
        .def_readonly("member", &MembershipVerdict::member)
        .def_readonly("certificate", &MembershipVerdict::certificate)
        .def("__repr__", [](const MembershipVerdict& v) {
            return "<MembershipVerdict v_star=" + std::to_string(v.v_star) +
                   (v.member ? " member>" : " non-member>");
        });

    py::class_<MeasurementAssignment>(m, "MeasurementAssignment")
        .def_property_readonly("parties", &MeasurementAssignment::parties)
        .def_property_readonly("settings", &MeasurementAssignment::settings)
        .def_property_readonly("outcomes", &MeasurementAssignment::outcomes)
        .def("to_json",
             [](const MeasurementAssignment& ma) { return assignment_to_json(ma).dump(); });

    py::class_<StarResult>(m, "StarResult")
        .def_readonly("p", &StarResult::p)
        .def_readonly("leaves", &StarResult::leaves)
        .def_readonly("success_prob", &StarResult::success_prob)
        .def_readonly("conditional", &StarResult::conditional);

    m.def("max_entangled", &max_entangled, py::arg("d"));
    m.def("ghz", &ghz, py::arg("n"));
    m.def(
        "isotropic", [](double p, int d) { return isotropic({p, d}); }, py::arg("p"),
        py::arg("d") = 2);
    m.def("sigma_state", &sigma_state);

    m.def(
        "behavior_from_quantum",
        [](const DensityState& state, const std::string& json) {
            return behavior_from_quantum(state, assignment_from_json(Json::parse(json)));
        },
        py::arg("state"), py::arg("assignment_json"));
    m.def("uniform_behavior", &uniform_behavior, py::arg("scenario"));
    m.def("mix", &mix, py::arg("behaviors"), py::arg("weights"));

    m.def(
        "catalog",
        [](const std::string& name, int n, int d, int settings) {
            return catalog(name, CatalogParams{n, d, settings});
        },
        py::arg("name"), py::arg("n") = 0, py::arg("d") = 0, py::arg("settings") = 0);

    m.def(
        "membership",
        [](const Behavior& b, const std::string& model) {
            return membership(b, vertices_for(model, b.scenario));
        },
        py::arg("behavior"), py::arg("model") = "local");

    m.def(
        "seesaw",
        [](const DensityState& state, const BellFunctional& f, int restarts,
           unsigned long seed) {
            SeesawOptions opts;
            opts.restarts = restarts;
            opts.seed = seed;
            const SeesawResult r = seesaw(state, f.scenario, f, opts);
            return py::make_tuple(r.value, r.assignment);
        },
        py::arg("state"), py::arg("functional"), py::arg("restarts") = 20, py::arg("seed") = 0);

    m.def("isotropic_hashing", &isotropic_hashing, py::arg("p"), py::arg("d"));
    m.def("hashing_threshold", &hashing_threshold, py::arg("d"));
    m.def(
        "hashing_bound",
        [](const DensityState& s, const std::vector<int>& side_a, const std::vector<int>& side_b) {
            const HashingResult r = hashing_bound(s, side_a, side_b);
            return py::make_tuple(r.value, r.entropy_b, r.entropy_ab);
        },
        py::arg("state"), py::arg("side_a"), py::arg("side_b"));

    m.def("star_conditional", &star_conditional, py::arg("p"), py::arg("leaves"));
    m.def("star_threshold", &star_threshold, py::arg("leaves"));
    m.def(
        "lambda_swap",
        [](const DensityState& a, const DensityState& b) {
            auto [prob, state] = lambda_swap(a, b);
            return py::make_tuple(prob, state);
        },
        py::arg("rho_ab"), py::arg("rho_ac"));
    m.def("coverage_probability", &coverage_probability, py::arg("copies"), py::arg("leaves"));
    m.def(
        "flag_distribution",
        [](int copies, const Behavior& p_psi, const Behavior& junk_b, const Behavior& junk_c) {
            return flag_distribution(make_flag_params(copies), p_psi, junk_b, junk_c);
        },
        py::arg("copies"), py::arg("p_psi"), py::arg("junk_b"), py::arg("junk_c"));

    m.def(
        "lift",
        [](const BellFunctional& f, const std::vector<int>& parties,
           const std::vector<int>& settings, const std::vector<int>& outcomes, int full_parties,
           const std::vector<int>& ref_settings) {
            return lift(f, PostSelection{parties, settings, outcomes}, full_parties,
                        ref_settings);
        },
        py::arg("functional"), py::arg("ps_parties"), py::arg("ps_settings"),
        py::arg("ps_outcomes"), py::arg("full_parties"), py::arg("ref_settings"));

    m.attr("__version__") = "0.1.0";
}
