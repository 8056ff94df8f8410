#pragma once

#include <Eigen/Dense>

namespace bellnet {

/// maximize c.x subject to A x = b, x >= 0
struct LinearProgram {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
};

enum class LpStatus { Optimal, Infeasible, IterationLimit };

struct LpSolution {
    LpStatus status = LpStatus::IterationLimit;
    double objective = 0.0;
    Eigen::VectorXd x;  // primal values
    Eigen::VectorXd y;  // one dual multiplier per row
};

/// Dense two-phase primal simplex with Bland's rule. Problems here are small
/// (hundreds of columns); equality systems may contain redundant rows.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace bellnet
