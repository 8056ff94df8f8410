#include "bellnet/json_io.hpp"

#include <stdexcept>

namespace bellnet {

Json scenario_to_json(const Scenario& s) {
    return Json{{"parties", s.parties}, {"settings", s.settings}, {"outcomes", s.outcomes}};
}

Scenario scenario_from_json(const Json& j) {
    return Scenario{j.at("parties").get<int>(), j.at("settings").get<int>(),
                    j.at("outcomes").get<int>()};
}

Json behavior_to_json(const Behavior& b) {
    return Json{{"scenario", scenario_to_json(b.scenario)}, {"table", b.table}};
}

Behavior behavior_from_json(const Json& j) {
    return make_behavior(scenario_from_json(j.at("scenario")),
                         j.at("table").get<std::vector<double>>());
}

namespace {

std::string bound_kind_name(BoundKind kind) {
    switch (kind) {
        case BoundKind::Local: return "local";
        case BoundKind::HybridNs: return "hybrid-ns";
        default: return "declared";
    }
}

BoundKind bound_kind_from_name(const std::string& name) {
    if (name == "local") return BoundKind::Local;
    if (name == "hybrid-ns") return BoundKind::HybridNs;
    if (name == "declared") return BoundKind::Declared;
    throw std::invalid_argument("unknown bound kind '" + name + "'");
}

}  // namespace

Json functional_to_json(const BellFunctional& f) {
    return Json{{"scenario", scenario_to_json(f.scenario)},
                {"coeffs", f.coeffs},
                {"bound", f.bound},
                {"bound_kind", bound_kind_name(f.bound_kind)}};
}

BellFunctional functional_from_json(const Json& j) {
    BellFunctional f;
    f.scenario = scenario_from_json(j.at("scenario"));
    f.coeffs = j.at("coeffs").get<std::vector<double>>();
    if (f.coeffs.size() != f.scenario.table_size())
        throw std::invalid_argument("functional JSON: coefficient count mismatch");
    f.bound = j.at("bound").get<double>();
    f.bound_kind = bound_kind_from_name(j.at("bound_kind").get<std::string>());
    return f;
}

Json verdict_to_json(const MembershipVerdict& v) {
    Json j{{"v_star", v.v_star}, {"member", v.member}, {"certificate", nullptr}};
    if (v.certificate)
        j["certificate"] = Json{{"coeffs", v.certificate->coeffs},
                                {"bound", v.certificate->bound},
                                {"scenario", scenario_to_json(v.certificate->scenario)},
                                {"bound_kind", bound_kind_name(v.certificate->bound_kind)}};
    return j;
}

Json operator_to_json(const Operator& op) {
    std::vector<std::array<double, 2>> data;
    data.reserve(static_cast<std::size_t>(op.dim()) * op.dim());
    for (int i = 0; i < op.dim(); ++i)
        for (int j = 0; j < op.dim(); ++j)
            data.push_back({op.entries(i, j).real(), op.entries(i, j).imag()});
    return Json{{"dims", op.dims}, {"data", data}};
}

Operator operator_from_json(const Json& j) {
    const std::vector<int> dims = j.at("dims").get<std::vector<int>>();
    const auto data = j.at("data").get<std::vector<std::array<double, 2>>>();
    const int d = product_dim(dims);
    if (static_cast<int>(data.size()) != d * d)
        throw std::invalid_argument("operator JSON: wrong entry count");
    Mat m(d, d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
            m(i, k) = std::complex<double>(data[i * d + k][0], data[i * d + k][1]);
    return Operator(dims, std::move(m));
}

Json assignment_to_json(const MeasurementAssignment& ma) {
    Json parties = Json::array();
    for (const auto& settings : ma.per_party) {
        Json per_setting = Json::array();
        for (const Povm& povm : settings) {
            Json effects = Json::array();
            for (const Operator& e : povm.effects) effects.push_back(operator_to_json(e));
            per_setting.push_back(std::move(effects));
        }
        parties.push_back(std::move(per_setting));
    }
    return Json{{"parties", parties}};
}

MeasurementAssignment assignment_from_json(const Json& j) {
    std::vector<std::vector<Povm>> per_party;
    for (const Json& settings : j.at("parties")) {
        std::vector<Povm> povms;
        for (const Json& effects : settings) {
            std::vector<Operator> ops;
            for (const Json& e : effects) ops.push_back(operator_from_json(e));
            povms.push_back(make_povm(std::move(ops)));
        }
        per_party.push_back(std::move(povms));
    }
    return make_assignment(std::move(per_party));
}

std::pair<NetworkLayout, std::vector<DensityState>> network_from_json(const Json& j) {
    NetworkLayout layout;
    layout.parties = j.at("parties").get<std::vector<std::string>>();
    std::vector<DensityState> states;
    for (const Json& link : j.at("links")) {
        const std::string kind = link.at("state").get<std::string>();
        DensityState s;
        if (kind == "iso") {
            s = isotropic({link.at("p").get<double>(), link.value("d", 2)});
        } else if (kind == "phi") {
            s = max_entangled(link.value("d", 2));
        } else if (kind == "ghz") {
            s = ghz(link.at("n").get<int>());
        } else {
            throw std::invalid_argument("network JSON: unknown state kind '" + kind + "'");
        }
        NetworkLink nl;
        nl.state_index = static_cast<int>(states.size());
        nl.assign = link.at("assign").get<std::vector<std::string>>();
        states.push_back(std::move(s));
        layout.links.push_back(std::move(nl));
    }
    return {std::move(layout), std::move(states)};
}

ComposedNetwork compose_network_json(const Json& j) {
    auto [layout, states] = network_from_json(j);
    return compose_network(layout, states);
}

}  // namespace bellnet
