#include "bellnet/polytope.hpp"

#include "bellnet/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellnet {

namespace {

double ipow_d(int base, int exp) {
    double v = 1.0;
    for (int k = 0; k < exp; ++k) v *= base;
    return v;
}

// response function table: per party, setting -> outcome
Behavior deterministic_behavior(const Scenario& s, const std::vector<std::vector<int>>& response) {
    std::vector<double> table(s.table_size(), 0.0);
    const std::size_t nx = s.context_count();
    const int n = s.parties;
    std::vector<int> as(n);
    for (std::size_t xf = 0; xf < nx; ++xf) {
        const std::vector<int> xs = unpack_index(s.settings, n, xf);
        for (int i = 0; i < n; ++i) as[i] = response[i][xs[i]];
        table[xf * s.outcome_count() + pack_index(s.outcomes, n, as)] = 1.0;
    }
    return Behavior{s, std::move(table)};
}

}  // namespace

VertexSet deterministic_vertices(const Scenario& s) {
    const double per_party = ipow_d(s.outcomes, s.settings);
    if (std::pow(per_party, s.parties) > 1e5)
        throw std::invalid_argument("deterministic_vertices: vertex count guard exceeded");
    const int strategies = static_cast<int>(per_party);
    const int n = s.parties;

    std::vector<std::vector<int>> single(strategies, std::vector<int>(s.settings));
    for (int k = 0; k < strategies; ++k)
        single[k] = unpack_index(s.outcomes, s.settings, static_cast<std::size_t>(k));

    VertexSet out{s, {}, VertexKind::Local};
    const std::size_t total = static_cast<std::size_t>(std::pow(per_party, n));
    std::vector<std::vector<int>> response(n);
    for (std::size_t v = 0; v < total; ++v) {
        const std::vector<int> choice = unpack_index(strategies, n, v);
        for (int i = 0; i < n; ++i) response[i] = single[choice[i]];
        out.vertices.push_back(deterministic_behavior(s, response));
    }
    return out;
}

VertexSet ns_vertices_222() {
    const Scenario s{2, 2, 2};
    VertexSet out = deterministic_vertices(s);
    out.kind = VertexKind::Ns;
    // PR-box family: P(ab|xy) = 1/2 iff a xor b = xy xor ax xor by xor g
    for (int variant = 0; variant < 8; ++variant) {
        const int alpha = (variant >> 2) & 1, beta = (variant >> 1) & 1, gamma = variant & 1;
        std::vector<double> table(s.table_size(), 0.0);
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        if ((a ^ b) == ((x & y) ^ (alpha & x) ^ (beta & y) ^ gamma))
                            table[pack_index(2, 2, {x, y}) * 4 + pack_index(2, 2, {a, b})] = 0.5;
        out.vertices.push_back(Behavior{s, std::move(table)});
    }
    return out;
}

VertexSet hybrid_vertices_3party() {
    const Scenario s{3, 2, 2};
    const VertexSet ns = ns_vertices_222();
    VertexSet out{s, {}, VertexKind::HybridNs};
    for (int lone = 0; lone < 3; ++lone) {
        int pair0 = (lone == 0) ? 1 : 0;
        int pair1 = (lone == 2) ? 1 : 2;
        for (int f = 0; f < 4; ++f) {  // deterministic response of the lone party
            const std::vector<int> resp = unpack_index(2, 2, static_cast<std::size_t>(f));
            for (const Behavior& w : ns.vertices) {
                std::vector<double> table(s.table_size(), 0.0);
                for (std::size_t xf = 0; xf < s.context_count(); ++xf) {
                    const std::vector<int> xs = unpack_index(2, 3, xf);
                    for (std::size_t af = 0; af < s.outcome_count(); ++af) {
                        const std::vector<int> as = unpack_index(2, 3, af);
                        if (as[lone] != resp[xs[lone]]) continue;
                        table[xf * s.outcome_count() + af] =
                            w.at(pack_index(2, 2, {xs[pair0], xs[pair1]}),
                                 pack_index(2, 2, {as[pair0], as[pair1]}));
                    }
                }
                out.vertices.push_back(Behavior{s, std::move(table)});
            }
        }
    }
    return out;
}

MembershipAnalysis membership_with_facet(const Behavior& b, const VertexSet& v) {
    if (!(b.scenario == v.scenario))
        throw std::invalid_argument("membership: scenario mismatch");
    if (v.vertices.empty()) throw std::invalid_argument("membership: empty vertex set");
    const std::size_t T = b.scenario.table_size();
    const std::size_t nv = v.vertices.size();
    if (static_cast<double>(T) * static_cast<double>(nv) > 1e8)
        throw std::invalid_argument("membership: LP coefficient guard exceeded");

    // variables: w_0..w_{nv-1}, v, cap slack
    // rows:      sum_i w_i V_i[t] + v(u-b)[t] = u[t] for every t,
    //            sum_i w_i = 1,  v + slack = cap
    const Behavior u = uniform_behavior(b.scenario);
    const int rows = static_cast<int>(T) + 2;
    const int cols = static_cast<int>(nv) + 2;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
    for (std::size_t i = 0; i < nv; ++i) {
        if (!(v.vertices[i].scenario == b.scenario))
            throw std::invalid_argument("membership: vertex scenario mismatch");
        for (std::size_t t = 0; t < T; ++t) A(t, i) = v.vertices[i].table[t];
        A(T, i) = 1.0;
    }
    const int vcol = static_cast<int>(nv);
    for (std::size_t t = 0; t < T; ++t) {
        A(t, vcol) = u.table[t] - b.table[t];
        rhs(t) = u.table[t];
    }
    rhs(T) = 1.0;
    A(T + 1, vcol) = 1.0;
    A(T + 1, vcol + 1) = 1.0;
    rhs(T + 1) = kVisibilityCap;

    // the table rows are heavily dependent (normalization and no-signalling
    // identities); keep only an independent subset, duals of dropped rows are 0
    std::vector<int> kept;
    {
        Eigen::MatrixXd basis(0, cols);
        for (int i = 0; i < rows; ++i) {
            Eigen::VectorXd r = A.row(i).transpose();
            const double scale = std::max(1.0, r.norm());
            for (int k = 0; k < basis.rows(); ++k) r -= basis.row(k).dot(r) * basis.row(k).transpose();
            if (r.norm() > 1e-9 * scale) {
                basis.conservativeResize(basis.rows() + 1, Eigen::NoChange);
                basis.row(basis.rows() - 1) = r.transpose() / r.norm();
                kept.push_back(i);
            }
        }
    }
    LinearProgram lp;
    lp.A = Eigen::MatrixXd::Zero(static_cast<int>(kept.size()), cols);
    lp.b = Eigen::VectorXd::Zero(static_cast<int>(kept.size()));
    for (std::size_t k = 0; k < kept.size(); ++k) {
        lp.A.row(k) = A.row(kept[k]);
        lp.b(k) = rhs(kept[k]);
    }
    lp.c = Eigen::VectorXd::Zero(cols);
    lp.c(vcol) = 1.0;

    LpSolution sol = solve_lp(lp);
    if (sol.status == LpStatus::Infeasible)
        throw std::runtime_error(
            "membership: LP infeasible at v = 0; the queried behavior is malformed");
    if (sol.status != LpStatus::Optimal) {
        // retry once with a tiny deterministic right-hand-side perturbation;
        // it moves v* by O(1e-10), far below the membership tolerance
        LinearProgram nudged = lp;
        for (int k = 0; k < nudged.b.size(); ++k)
            nudged.b(k) += 3e-9 * std::sin(1.0 + 3.7 * k);
        sol = solve_lp(nudged);
        if (sol.status != LpStatus::Optimal)
            throw std::runtime_error("membership: simplex did not converge");
    }

    MembershipAnalysis out;
    out.verdict.v_star = sol.objective;
    out.verdict.member = sol.objective >= 1.0 - kMembershipTol;

    Eigen::VectorXd y_full = Eigen::VectorXd::Zero(rows);
    for (std::size_t k = 0; k < kept.size(); ++k) y_full(kept[k]) = sol.y[k];

    BellFunctional facet;
    facet.scenario = b.scenario;
    facet.coeffs.resize(T);
    double scale = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        facet.coeffs[t] = -y_full[t];
        scale = std::max(scale, std::abs(facet.coeffs[t]));
    }
    if (scale > 0.0)
        for (double& c : facet.coeffs) c /= scale;
    double bound = -1e300;
    for (const Behavior& vert : v.vertices) {
        double val = 0.0;
        for (std::size_t t = 0; t < T; ++t) val += facet.coeffs[t] * vert.table[t];
        bound = std::max(bound, val);
    }
    facet.bound = bound;
    facet.bound_kind = v.kind == VertexKind::Local     ? BoundKind::Local
                       : v.kind == VertexKind::HybridNs ? BoundKind::HybridNs
                                                        : BoundKind::Declared;
    out.exit_facet = facet;
    if (!out.verdict.member) out.verdict.certificate = std::move(facet);
    return out;
}

MembershipVerdict membership(const Behavior& b, const VertexSet& v) {
    return membership_with_facet(b, v).verdict;
}

}  // namespace bellnet
