#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

namespace gmt {

///
/// minimize c^T x subject to A x = b, x >= 0, with a known feasible basis.
///
/// Dense-tableau primal simplex with Bland's rule, so the pivot sequence and
/// the returned vertex are deterministic.
///
struct LinearProgram
{
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    /// One column index per row; the columns must form a feasible basis.
    std::vector<int> basis;
};

struct LpResult
{
    Eigen::VectorXd x;
    double objective = 0.0;
    int iterations = 0;
};

/// Pivot tolerance of the tableau.
inline constexpr double kLpPivotTol = 1e-11;

/// Throws "LP stalled" when the iteration cap is exceeded.
LpResult solve_lp(const LinearProgram& lp, int max_iterations = -1);

} // namespace gmt
