#include "bellnet/simplex.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace bellnet {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kSafePivot = 1e-7;  // preferred magnitude for degenerate pivots
constexpr double kCostTol = 1e-9;
constexpr double kPhase1Tol = 1e-7;
constexpr int kRefactorEvery = 20;

enum class PhaseOutcome { Optimal, Unbounded, IterationLimit };

struct Tableau {
    Eigen::MatrixXd ext;     // [A | I], rows already sign-flipped
    Eigen::VectorXd rhs0;    // sign-flipped b
    Eigen::MatrixXd T;       // current B^{-1} [A | I]
    Eigen::VectorXd rhs;     // current B^{-1} b
    std::vector<int> basis;  // basic variable per row
    int m = 0;
    int n = 0;               // original variable count
    int since_refactor = 0;

    void pivot(int row, int col) {
        const double piv = T(row, col);
        T.row(row) /= piv;
        rhs(row) /= piv;
        const double r = rhs(row);
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            const double f = T(i, col);
            if (f != 0.0) {
                T.row(i) -= f * T.row(row);
                rhs(i) -= f * r;
            }
        }
        basis[row] = col;
        ++since_refactor;
    }

    // rebuild T and rhs from the recorded basis, wiping accumulated drift
    void refactorize() {
        Eigen::MatrixXd B(m, m);
        for (int i = 0; i < m; ++i) B.col(i) = ext.col(basis[i]);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
        T = lu.solve(ext);
        rhs = lu.solve(rhs0);
        since_refactor = 0;
    }

    Eigen::VectorXd reduced_costs(const Eigen::VectorXd& cost) const {
        Eigen::VectorXd cb(m);
        for (int i = 0; i < m; ++i)
            cb[i] = basis[i] < static_cast<int>(cost.size()) ? cost[basis[i]] : 0.0;
        Eigen::VectorXd cbar = -(cb.transpose() * T).transpose();
        for (int j = 0; j < static_cast<int>(cost.size()); ++j) cbar[j] += cost[j];
        return cbar;
    }

    bool artificial_basic(int row) const { return basis[row] >= n; }
};

// Dantzig pricing with a permanent switch to Bland's rule once the objective
// stalls; artificials never re-enter. Basic artificials stuck at zero leave
// through degenerate pivots whenever the entering column touches their row.
// The tableau is rebuilt from the basis at regular intervals and before
// optimality is accepted.
PhaseOutcome simplex_phase(Tableau& tab, const Eigen::VectorXd& cost, long max_iters) {
    std::vector<char> is_basic(tab.n + tab.m, 0);
    double last_objective = -1e300;
    int stalled = 0;
    bool bland = false;
    for (long iter = 0; iter < max_iters; ++iter) {
        if (tab.since_refactor >= kRefactorEvery) tab.refactorize();
        double objective = 0.0;
        for (int i = 0; i < tab.m; ++i)
            if (tab.basis[i] < static_cast<int>(cost.size()))
                objective += cost[tab.basis[i]] * tab.rhs(i);
        if (objective > last_objective + 1e-12) {
            last_objective = objective;
            stalled = 0;
        } else if (++stalled > 50) {
            bland = true;
        }

        const Eigen::VectorXd cbar = tab.reduced_costs(cost);
        std::fill(is_basic.begin(), is_basic.end(), 0);
        for (int i = 0; i < tab.m; ++i) is_basic[tab.basis[i]] = 1;
        int enter = -1;
        double best_cost = kCostTol;
        for (int j = 0; j < tab.n; ++j) {
            if (is_basic[j] || cbar[j] <= best_cost) continue;
            enter = j;
            if (bland) break;
            best_cost = cbar[j];
        }
        if (enter < 0) {
            // terminal verdicts are only ever issued on a clean tableau
            if (tab.since_refactor == 0) return PhaseOutcome::Optimal;
            tab.refactorize();
            continue;
        }

        // a zero-valued basic artificial hit by this column leaves first
        int leave = -1;
        double leave_mag = kSafePivot;
        for (int i = 0; i < tab.m; ++i)
            if (tab.artificial_basic(i) && std::abs(tab.rhs(i)) <= kPivotTol &&
                std::abs(tab.T(i, enter)) > leave_mag) {
                leave = i;
                leave_mag = std::abs(tab.T(i, enter));
            }
        if (leave < 0) {
            double best = 0.0;
            for (int i = 0; i < tab.m; ++i) {
                if (tab.T(i, enter) <= kPivotTol) continue;
                const double ratio = tab.rhs(i) / tab.T(i, enter);
                if (leave < 0 || ratio < best - 1e-12 ||
                    (ratio <= best + 1e-12 && tab.basis[i] < tab.basis[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
        }
        if (leave < 0) {
            if (tab.since_refactor == 0) return PhaseOutcome::Unbounded;
            tab.refactorize();
            continue;
        }
        tab.pivot(leave, enter);
    }
    return PhaseOutcome::IterationLimit;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    const int m = static_cast<int>(lp.A.rows());
    const int n = static_cast<int>(lp.A.cols());
    if (lp.b.size() != m || lp.c.size() != n)
        throw std::invalid_argument("solve_lp: inconsistent problem sizes");

    Tableau tab;
    tab.m = m;
    tab.n = n;
    tab.basis.resize(m);
    tab.ext.resize(m, n + m);
    tab.ext.leftCols(n) = lp.A;
    tab.ext.middleCols(n, m) = Eigen::MatrixXd::Identity(m, m);
    tab.rhs0 = lp.b;
    std::vector<double> row_sign(m, 1.0);
    for (int i = 0; i < m; ++i) {
        if (tab.rhs0(i) < 0.0) {
            tab.ext.row(i) *= -1.0;
            tab.ext(i, n + i) = 1.0;  // keep the artificial at +e_i
            tab.rhs0(i) = -tab.rhs0(i);
            row_sign[i] = -1.0;
        }
        tab.basis[i] = n + i;
    }
    tab.T = tab.ext;
    tab.rhs = tab.rhs0;

    const long max_iters = 5000 + 200L * (m + n);
    LpSolution sol;

    // phase 1: minimize the artificial total
    Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(n + m);
    phase1_cost.tail(m).setConstant(-1.0);
    if (simplex_phase(tab, phase1_cost, max_iters) != PhaseOutcome::Optimal) return sol;
    double artificial_total = 0.0;
    for (int i = 0; i < m; ++i)
        if (tab.artificial_basic(i)) artificial_total += std::abs(tab.rhs(i));
    if (artificial_total > kPhase1Tol) {
        sol.status = LpStatus::Infeasible;
        return sol;
    }
    for (int i = 0; i < m; ++i) {  // pivot leftover artificials out where possible
        if (!tab.artificial_basic(i)) continue;
        int best_col = -1;
        double best_mag = kSafePivot;
        for (int j = 0; j < n; ++j)
            if (std::abs(tab.T(i, j)) > best_mag) {
                best_mag = std::abs(tab.T(i, j));
                best_col = j;
            }
        if (best_col >= 0) tab.pivot(i, best_col);
    }
    tab.refactorize();

    Eigen::VectorXd phase2_cost = Eigen::VectorXd::Zero(n + m);
    phase2_cost.head(n) = lp.c;
    if (simplex_phase(tab, phase2_cost, max_iters) != PhaseOutcome::Optimal) return sol;

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i)
        if (tab.basis[i] < n) x[tab.basis[i]] = tab.rhs(i);
    // duals from the artificial columns: cbar_{art i} = -y_i (in flipped-row units)
    const Eigen::VectorXd cbar = tab.reduced_costs(phase2_cost);
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) y[i] = -cbar[n + i] * row_sign[i];

    // reject numerically corrupted bases instead of returning garbage
    const double primal_residual = (lp.A * x - lp.b).cwiseAbs().maxCoeff();
    const double dual_residual = (lp.c - lp.A.transpose() * y).maxCoeff();
    const double gap = std::abs(lp.c.dot(x) - y.dot(lp.b));
    if (primal_residual > 1e-6 || x.minCoeff() < -1e-6 || dual_residual > 1e-6 || gap > 1e-6)
        return sol;

    sol.status = LpStatus::Optimal;
    sol.x = std::move(x);
    sol.objective = lp.c.dot(sol.x);
    sol.y = std::move(y);
    return sol;
}

}  // namespace bellnet
