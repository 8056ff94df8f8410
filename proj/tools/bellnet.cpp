// bellnet: sweep drivers, membership queries and protocol runners with
// CSV/JSON output, one subcommand per reproduction recipe.

#include "bellnet/bell.hpp"
#include "bellnet/distill.hpp"
#include "bellnet/json_io.hpp"
#include "bellnet/polytope.hpp"
#include "bellnet/protocols.hpp"
#include "bellnet/states.hpp"
#include "bellnet/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace bellnet;

namespace {

const double kRoot2 = std::sqrt(2.0);

Operator pauli(char which) {
    Mat m(2, 2);
    switch (which) {
        case 'x': m << 0, 1, 1, 0; break;
        case 'z': m << 1, 0, 0, -1; break;
        default: throw std::logic_error("unknown pauli");
    }
    return Operator({2}, m);
}

MeasurementAssignment chsh_optimal_settings() {
    Operator z = pauli('z'), x = pauli('x');
    Operator bp({2}, Mat((z.entries + x.entries) / kRoot2));
    Operator bm({2}, Mat((z.entries - x.entries) / kRoot2));
    return make_assignment(
        {{observable_povm(z), observable_povm(x)}, {observable_povm(bp), observable_povm(bm)}});
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out_path);
    if (!file) throw std::runtime_error("cannot open output file '" + out_path + "'");
    file << text;
}

std::vector<long> parse_list(const std::string& csv) {
    std::vector<long> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(std::stol(item));
    if (values.empty()) throw CLI::ValidationError("empty list");
    return values;
}

VertexSet vertices_for_model(const std::string& model, const Scenario& s) {
    if (model == "local") return deterministic_vertices(s);
    if (model == "ns") {
        if (!(s == Scenario{2, 2, 2}))
            throw std::runtime_error("ns vertices are defined for the (2,2,2) scenario");
        return ns_vertices_222();
    }
    if (model == "hybrid") {
        if (!(s == Scenario{3, 2, 2}))
            throw std::runtime_error("hybrid vertices are defined for the (3,2,2) scenario");
        return hybrid_vertices_3party();
    }
    throw std::runtime_error("unknown model '" + model + "'");
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
    Operator zz = kron(pauli('z'), pauli('z'));
    MeasurementAssignment bc = chsh_optimal_settings();
    return make_assignment(
        {{observable_povm(phi_obs), observable_povm(zz)}, bc.per_party[0], bc.per_party[1]});
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlocality of quantum states distributed in networks: sweeps, "
                 "polytope membership and activation protocols"};
    app.require_subcommand(1);

    std::string out_path;
    app.add_option("--out", out_path, "Write output to a file instead of stdout")
        ->capture_default_str();
    unsigned long seed = 0;
    app.add_option("--seed", seed, "Seed for all randomized routines")->capture_default_str();

    // sweep-chsh
    auto* sweep_chsh = app.add_subcommand(
        "sweep-chsh", "CHSH value and local-polytope visibility of isotropic(p, 2) over a p grid");
    double sc_start = 0.0, sc_stop = 1.0, sc_step = 0.01;
    sweep_chsh->add_option("--p-start", sc_start)->capture_default_str();
    sweep_chsh->add_option("--p-stop", sc_stop)->capture_default_str();
    sweep_chsh->add_option("--p-step", sc_step)->capture_default_str();

    // hashing-threshold
    auto* hashing = app.add_subcommand("hashing-threshold",
                                       "Hashing-positive noise threshold p*(d) of isotropic states");
    std::string d_list = "2,4,8,16,32,64,128,256,512,1024";
    hashing->add_option("--d-list", d_list, "Comma separated local dimensions")
        ->capture_default_str();

    // star
    auto* star = app.add_subcommand(
        "star", "Project the center of an isotropic star onto GHZ and test the leaves");
    int star_n = 3;
    double star_p = 0.9;
    std::string star_ineq = "mermin";
    int star_k = 4;
    int star_restarts = 20;
    star->add_option("--n", star_n, "Leaf count (<= 5)")->capture_default_str();
    star->add_option("--p", star_p, "Isotropic noise weight of every link")->capture_default_str();
    star->add_option("--ineq", star_ineq, "chsh, mermin or plane")->capture_default_str();
    star->add_option("--k", star_k, "Settings per party for plane")->capture_default_str();
    star->add_option("--restarts", star_restarts, "Seesaw restarts")->capture_default_str();

    // lambda-swap
    auto* swap = app.add_subcommand("lambda-swap",
                                    "Entanglement swap of two isotropic links at the center");
    double swap_p = -1.0, swap_start = 0.0, swap_stop = 1.0, swap_step = 0.1;
    swap->add_option("--p", swap_p, "Single noise value (JSON output)");
    swap->add_option("--p-start", swap_start)->capture_default_str();
    swap->add_option("--p-stop", swap_stop)->capture_default_str();
    swap->add_option("--p-step", swap_step)->capture_default_str();

    // membership
    auto* member = app.add_subcommand("membership",
                                      "Critical visibility of a behavior against a vertex model");
    std::string behavior_path, model = "local";
    member->add_option("--behavior", behavior_path, "Behavior JSON file")->required();
    member->add_option("--model", model, "local, hybrid or ns")->capture_default_str();

    // lift
    auto* lift_cmd = app.add_subcommand(
        "lift", "Lifted CHSH on the two-singlet lambda network with center post-selection");
    double lift_p = 1.0;
    int lift_x0 = 0, lift_x1 = 0;
    lift_cmd->add_option("--p", lift_p, "Isotropic noise of both links")->capture_default_str();
    lift_cmd->add_option("--x0", lift_x0, "Reference setting of the first tested party")
        ->capture_default_str();
    lift_cmd->add_option("--x1", lift_x1, "Reference setting of the second tested party")
        ->capture_default_str();

    // activate-sigma
    auto* sigma = app.add_subcommand(
        "activate-sigma",
        "Flag-protocol mixture against the hybrid polytope for L = 1..l-max");
    int sigma_lmax = 12;
    sigma->add_option("--l-max", sigma_lmax)->capture_default_str();

    // activate-tau
    auto* tau = app.add_subcommand(
        "activate-tau", "Coverage probability and star margin certifying the tau reduction");
    int tau_n = 3;
    double tau_p = 0.9;
    std::string tau_l_list = "3,5,10";
    int tau_restarts = 20;
    tau->add_option("--n", tau_n, "Leaf count")->capture_default_str();
    tau->add_option("--p", tau_p, "Isotropic noise of the embedded star")->capture_default_str();
    tau->add_option("--l-list", tau_l_list, "Comma separated copy counts")->capture_default_str();
    tau->add_option("--restarts", tau_restarts)->capture_default_str();

    // catalog
    auto* cat = app.add_subcommand("catalog", "Emit a named Bell functional as JSON");
    std::string cat_name = "chsh";
    int cat_n = 0, cat_d = 0, cat_k = 0;
    cat->add_option("--name", cat_name, "chsh, mermin, svetlichny, cglmp or plane")
        ->capture_default_str();
    cat->add_option("--n", cat_n, "Party count for mermin/plane");
    cat->add_option("--d", cat_d, "Outcome count for cglmp");
    cat->add_option("--k", cat_k, "Settings per party for plane");

    // povm-reduce
    auto* reduce = app.add_subcommand(
        "povm-reduce", "Projective reduction of a dichotomic POVM element, with a Born-rule check");
    std::string reduce_file;
    int reduce_dim = 2;
    reduce->add_option("--file", reduce_file, "Operator JSON for the element (else random)");
    reduce->add_option("--dim", reduce_dim, "Dimension of the random element")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage error
    }

    try {
        if (sweep_chsh->parsed()) {
            const MeasurementAssignment ma = chsh_optimal_settings();
            const VertexSet dets = deterministic_vertices({2, 2, 2});
            const BellFunctional f = chsh();
            SweepTable table = run_sweep(
                SweepSpec{"p", sc_start, sc_stop, sc_step}, {"chsh", "v_star", "member"},
                [&](double p) {
                    const Behavior b = behavior_from_quantum(isotropic({p, 2}), ma);
                    const MembershipVerdict v = membership(b, dets);
                    return std::vector<double>{evaluate(f, b), v.v_star,
                                               v.member ? 1.0 : 0.0};
                });
            write_output(table.to_csv(), out_path);
            return table.has_errors() ? 1 : 0;
        }

        if (hashing->parsed()) {
            std::ostringstream csv;
            csv << "d,p_star\n";
            char buf[40];
            for (long d : parse_list(d_list)) {
                std::snprintf(buf, sizeof buf, "%ld,%.12g\n", d, hashing_threshold(d));
                csv << buf;
            }
            write_output(csv.str(), out_path);
            return 0;
        }

        if (star->parsed()) {
            const StarResult result = star_conditional(star_p, star_n);
            double value = 0.0, bound = 0.0;
            if (star_ineq == "plane") {
                const BellFunctional f = plane_functional(star_n, star_k);
                value = evaluate(f, behavior_from_quantum(result.conditional,
                                                          plane_assignment(star_n, star_k)));
                bound = f.bound;
            } else {
                const BellFunctional f = star_ineq == "chsh" ? chsh() : mermin(star_n);
                SeesawOptions opts;
                opts.restarts = star_restarts;
                opts.seed = seed;
                value = seesaw(result.conditional, f.scenario, f, opts).value;
                bound = f.bound;
            }
            Json j{{"n", star_n},
                   {"p", star_p},
                   {"inequality", star_ineq},
                   {"success_prob", result.success_prob},
                   {"value", value},
                   {"bound", bound},
                   {"violated", value > bound + 1e-9}};
            write_output(json_text(j), out_path);
            return 0;
        }

        if (swap->parsed()) {
            auto row = [&](double p) {
                auto [prob, state] = lambda_swap(isotropic({p, 2}), isotropic({p, 2}));
                const double fidelity = fidelity_pure(state, max_entangled_ket(2));
                const double law = fidelity_pure(isotropic({p * p, 2}), max_entangled_ket(2));
                return std::vector<double>{prob, fidelity, law};
            };
            if (swap_p >= 0.0) {
                const std::vector<double> r = row(swap_p);
                Json j{{"p", swap_p},
                       {"probability", r[0]},
                       {"fidelity", r[1]},
                       {"isotropic_p2_fidelity", r[2]}};
                write_output(json_text(j), out_path);
                return 0;
            }
            SweepTable table =
                run_sweep(SweepSpec{"p", swap_start, swap_stop, swap_step},
                          {"probability", "fidelity", "isotropic_p2_fidelity"}, row);
            write_output(table.to_csv(), out_path);
            return table.has_errors() ? 1 : 0;
        }

        if (member->parsed()) {
            std::ifstream in(behavior_path);
            if (!in) throw std::runtime_error("cannot read '" + behavior_path + "'");
            const Behavior b = behavior_from_json(Json::parse(in));
            const MembershipVerdict v = membership(b, vertices_for_model(model, b.scenario));
            write_output(json_text(verdict_to_json(v)), out_path);
            return 0;
        }

        if (lift_cmd->parsed()) {
            const BellFunctional lifted =
                lift(chsh(), PostSelection{{0}, {0}, {0}}, 3, {lift_x0, lift_x1});
            ComposedNetwork net = lambda_network(lift_p);
            const Behavior b = behavior_from_quantum(net.state, lambda_assignment());
            const double value = evaluate(lifted, b);
            Json j{{"p", lift_p},
                   {"reference_settings", {lift_x0, lift_x1}},
                   {"lifted_value", value},
                   {"bound", 0.0},
                   {"violated", value > 1e-9}};
            write_output(json_text(j), out_path);
            return 0;
        }

        if (sigma->parsed()) {
            const VertexSet hybrid = hybrid_vertices_3party();
            ComposedNetwork net = lambda_network(1.0);
            SearchOptions opts;
            opts.seed = seed;
            const SearchResult res =
                nonlocality_search(net.state, {3, 2, 2}, hybrid, svetlichny(), opts);
            const Behavior junk = uniform_behavior({3, 2, 2});
            std::ostringstream csv;
            csv << "L,p_eq,v_star,member\n";
            char buf[80];
            for (int copies = 1; copies <= sigma_lmax; ++copies) {
                const FlagProtocolParams params = make_flag_params(copies);
                const Behavior mixed = flag_distribution(params, res.behavior, junk, junk);
                const MembershipVerdict v = membership(mixed, hybrid);
                std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%d\n", copies, params.p_eq,
                              v.v_star, v.member ? 1 : 0);
                csv << buf;
            }
            write_output(csv.str(), out_path);
            return 0;
        }

        if (tau->parsed()) {
            const TauDescriptor desc = tau_descriptor(tau_n, tau_p, 1);
            double value = 0.0, bound = 0.0;
            if (tau_n <= 5) {
                const StarResult star_res = star_conditional(tau_p, tau_n);
                const BellFunctional f = tau_n == 2 ? chsh() : mermin(std::min(tau_n, 4));
                SeesawOptions opts;
                opts.restarts = tau_restarts;
                opts.seed = seed;
                value = seesaw(star_res.conditional, f.scenario, f, opts).value;
                bound = f.bound;
            }
            const double margin = value - bound;
            std::ostringstream csv;
            csv << "L,coverage,p_eq,star_margin,activated\n";
            char buf[120];
            for (long copies : parse_list(tau_l_list)) {
                const double cover = coverage_probability(static_cast<int>(copies), desc.leaves);
                const double peq = make_flag_params(static_cast<int>(copies)).p_eq;
                std::snprintf(buf, sizeof buf, "%ld,%.12g,%.12g,%.12g,%d\n", copies, cover, peq,
                              margin, margin > 0 ? 1 : 0);
                csv << buf;
            }
            write_output(csv.str(), out_path);
            return 0;
        }

        if (cat->parsed()) {
            const BellFunctional f = catalog(cat_name, CatalogParams{cat_n, cat_d, cat_k});
            write_output(json_text(functional_to_json(f)), out_path);
            return 0;
        }

        if (reduce->parsed()) {
            Operator element({2}, Mat::Zero(2, 2));
            if (!reduce_file.empty()) {
                std::ifstream in(reduce_file);
                if (!in) throw std::runtime_error("cannot read '" + reduce_file + "'");
                element = operator_from_json(Json::parse(in));
            } else {
                std::mt19937_64 rng(seed);
                std::normal_distribution<double> g(0.0, 1.0);
                std::uniform_real_distribution<double> u(0.0, 1.0);
                Mat h(reduce_dim, reduce_dim);
                for (int r = 0; r < reduce_dim; ++r)
                    for (int c = 0; c < reduce_dim; ++c)
                        h(r, c) = std::complex<double>(g(rng), g(rng));
                h = (h + Mat(h.adjoint())).eval();
                const Spectrum spec = hermitian_eig(Operator({reduce_dim}, h));
                Mat m0 = Mat::Zero(reduce_dim, reduce_dim);
                for (int k = 0; k < reduce_dim; ++k)
                    m0 += u(rng) * spec.eigenvectors.col(k) * spec.eigenvectors.col(k).adjoint();
                element = Operator({reduce_dim}, m0);
            }
            const DichotomicSimulation sim = dichotomic_to_projective(element);
            std::mt19937_64 rng(seed + 1);
            std::normal_distribution<double> g(0.0, 1.0);
            double worst = 0.0;
            const int d = element.dim();
            for (int rep = 0; rep < 100; ++rep) {
                Mat w(d, d);
                for (int r = 0; r < d; ++r)
                    for (int c = 0; c < d; ++c) w(r, c) = std::complex<double>(g(rng), g(rng));
                Mat rho = w * w.adjoint();
                rho /= rho.trace().real();
                const double direct = trace_product(rho, element.entries).real();
                worst = std::max(worst,
                                 std::abs(simulate_prob0(sim, Operator(element.dims, rho)) - direct));
            }
            Json j{{"dims", element.dims},
                   {"response", std::vector<double>(sim.response.data(),
                                                    sim.response.data() + sim.response.size())},
                   {"basis", operator_to_json(Operator(element.dims, sim.basis))},
                   {"max_simulation_error", worst}};
            write_output(json_text(j), out_path);
            return 0;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 2;
}
