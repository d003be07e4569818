#include <gmt/error.hpp>
#include <gmt/lp.hpp>

#include <cmath>
#include <sstream>

namespace gmt {

LpResult solve_lp(const LinearProgram& lp, int max_iterations)
{
    const int m = static_cast<int>(lp.A.rows());
    const int n = static_cast<int>(lp.A.cols());
    require(lp.b.size() == m && lp.c.size() == n && static_cast<int>(lp.basis.size()) == m, "LP: inconsistent sizes");
    if (max_iterations < 0) max_iterations = 50 * (m + n) + 100;

    // tableau rows 0..m-1 are constraints, column n is the right-hand side
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> t(m, n + 1);
    t.leftCols(n) = lp.A;
    t.col(n) = lp.b;
    std::vector<int> basis = lp.basis;

    // bring the basis to identity form
    for (int i = 0; i < m; ++i) {
        int j = basis[i];
        double piv = t(i, j);
        require(std::abs(piv) > kLpPivotTol, "LP: initial basis is singular");
        t.row(i) /= piv;
        for (int r = 0; r < m; ++r) {
            if (r != i && t(r, j) != 0.0) t.row(r) -= t(r, j) * t.row(i);
        }
    }
    for (int i = 0; i < m; ++i) require(t(i, n) >= -1e-9, "LP: initial basis is infeasible");

    Eigen::VectorXd reduced(n + 1);
    reduced.head(n) = lp.c;
    reduced(n) = 0.0;
    for (int i = 0; i < m; ++i) reduced -= lp.c(basis[i]) * t.row(i).transpose();

    const double cost_scale = std::max(1.0, lp.c.cwiseAbs().maxCoeff());
    int it = 0;
    for (;; ++it) {
        int enter = -1;
        for (int j = 0; j < n; ++j) {
            if (reduced(j) < -1e-12 * cost_scale) {
                enter = j;
                break;
            }
        }
        if (enter < 0) break;
        if (it >= max_iterations) {
            std::ostringstream os;
            os << "LP stalled after " << it << " iterations (" << m << " rows, " << n << " columns, objective "
               << -reduced(n) << ")";
            fail(os.str());
        }
        int leave = -1;
        double best = 0.0;
        for (int i = 0; i < m; ++i) {
            double a = t(i, enter);
            if (a <= kLpPivotTol) continue;
            double ratio = std::max(t(i, n), 0.0) / a;
            if (leave < 0 || ratio < best - 1e-14 || (std::abs(ratio - best) <= 1e-14 && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        require(leave >= 0, "LP: objective unbounded below");
        t.row(leave) /= t(leave, enter);
        for (int r = 0; r < m; ++r) {
            if (r != leave && t(r, enter) != 0.0) t.row(r) -= t(r, enter) * t.row(leave);
        }
        reduced -= reduced(enter) * t.row(leave).transpose();
        basis[leave] = enter;
    }

    LpResult res;
    res.x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i) res.x(basis[i]) = std::max(t(i, n), 0.0);
    res.objective = lp.c.dot(res.x);
    res.iterations = it;
    return res;
}

} // namespace gmt
