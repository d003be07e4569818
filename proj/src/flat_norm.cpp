#include <gmt/error.hpp>
#include <gmt/flat_norm.hpp>
#include <gmt/lp.hpp>

#include <cmath>
#include <limits>

namespace gmt {

namespace {

struct Incidence
{
    int rows = 0;
    int cols = 0;
    // per column: (row, sign) for the faces of the (m+1)-simplex
    std::vector<std::vector<std::pair<int, int>>> columns;
    std::vector<double> row_cost;
    std::vector<double> col_cost;
    std::vector<double> a;
};

Incidence build_incidence(const Chain& a)
{
    require(a.is_simplicial(), "flat norm LP needs constant densities");
    const auto& k = *a.complex();
    const int m = a.dim();
    Incidence inc;
    inc.rows = k.num_simplices(m);
    inc.cols = m + 1 <= kMaxSimplexDim ? k.num_simplices(m + 1) : 0;
    inc.row_cost.resize(inc.rows);
    inc.a.assign(inc.rows, 0.0);
    for (int i = 0; i < inc.rows; ++i) inc.row_cost[i] = k.volume(m, i);
    for (const auto& [id, p] : a.cells()) inc.a[id] = p.constant_term();
    inc.columns.resize(inc.cols);
    inc.col_cost.resize(inc.cols);
    for (int j = 0; j < inc.cols; ++j) {
        inc.col_cost[j] = k.volume(m + 1, j);
        for (const auto& f : k.faces(m + 1, j)) inc.columns[j].push_back({f.id, f.sign});
    }
    return inc;
}

double cost_of(const Incidence& inc, const std::vector<double>& r, const std::vector<double>& s)
{
    double v = 0.0;
    for (int i = 0; i < inc.rows; ++i) v += inc.row_cost[i] * std::abs(r[i]);
    for (int j = 0; j < inc.cols; ++j) v += inc.col_cost[j] * std::abs(s[j]);
    return v;
}

} // namespace

FlatDecomposition flat_norm(const Chain& a)
{
    const Incidence inc = build_incidence(a);
    const int m = a.dim();
    FlatDecomposition out;
    out.R = Chain(a.complex(), m);
    out.S = m + 1 <= a.ambient() ? Chain(a.complex(), m + 1) : Chain();
    if (a.is_zero()) return out;

    // only rows touched by A or by some (m+1)-simplex matter; others stay r = 0
    std::vector<int> row_index(inc.rows, -1);
    std::vector<int> rows;
    auto use_row = [&](int i) {
        if (row_index[i] < 0) {
            row_index[i] = static_cast<int>(rows.size());
            rows.push_back(i);
        }
    };
    for (int i = 0; i < inc.rows; ++i) {
        if (inc.a[i] != 0.0) use_row(i);
    }
    for (int j = 0; j < inc.cols; ++j) {
        for (auto [i, s] : inc.columns[j]) use_row(i);
    }
    const int nr = static_cast<int>(rows.size());
    const int nc = inc.cols;
    // columns: r+ (nr), r- (nr), s+ (nc), s- (nc)
    LinearProgram lp;
    lp.A = Eigen::MatrixXd::Zero(nr, 2 * nr + 2 * nc);
    lp.b = Eigen::VectorXd::Zero(nr);
    lp.c = Eigen::VectorXd::Zero(2 * nr + 2 * nc);
    lp.basis.resize(nr);
    for (int r = 0; r < nr; ++r) {
        const int i = rows[r];
        lp.A(r, r) = 1.0;
        lp.A(r, nr + r) = -1.0;
        lp.c(r) = lp.c(nr + r) = inc.row_cost[i];
        double ai = inc.a[i];
        lp.b(r) = std::abs(ai);
        lp.basis[r] = ai >= 0 ? r : nr + r;
    }
    for (int j = 0; j < nc; ++j) {
        for (auto [i, s] : inc.columns[j]) {
            int r = row_index[i];
            lp.A(r, 2 * nr + j) = s;
            lp.A(r, 2 * nr + nc + j) = -s;
        }
        lp.c(2 * nr + j) = lp.c(2 * nr + nc + j) = inc.col_cost[j];
    }
    // rows with negative a are written as -(...) = |a| so the start basis is feasible
    for (int r = 0; r < nr; ++r) {
        if (inc.a[rows[r]] < 0) lp.A.row(r) *= -1.0;
    }
    LpResult res = solve_lp(lp);
    out.iterations = res.iterations;

    std::vector<double> rv(inc.rows, 0.0), sv(nc, 0.0);
    for (int r = 0; r < nr; ++r) rv[rows[r]] = res.x(r) - res.x(nr + r);
    for (int j = 0; j < nc; ++j) sv[j] = res.x(2 * nr + j) - res.x(2 * nr + nc + j);
    for (int i = 0; i < inc.rows; ++i) {
        if (rv[i] != 0.0) out.R.add_cell(i, rv[i]);
    }
    for (int j = 0; j < nc; ++j) {
        if (sv[j] != 0.0) out.S.add_cell(j, sv[j]);
    }
    std::vector<double> check(inc.a);
    for (int i = 0; i < inc.rows; ++i) check[i] -= rv[i];
    for (int j = 0; j < nc; ++j) {
        for (auto [i, s] : inc.columns[j]) check[i] -= s * sv[j];
    }
    for (double c : check) out.feasibility_residual = std::max(out.feasibility_residual, std::abs(c));
    require(out.feasibility_residual <= kLpFeasibilityTol * std::max(1.0, mass(a)), "flat norm LP lost feasibility");
    out.value = cost_of(inc, rv, sv);
    return out;
}

double flat_norm_oracle(const Chain& a)
{
    const Incidence inc = build_incidence(a);
    const int nc = inc.cols;
    require(nc <= kOracleMaxSimplices, "flat_norm_oracle: more than 12 top simplices");
    double amax = 0.0;
    for (double x : inc.a) amax = std::max(amax, std::abs(x));
    if (amax == 0.0) return 0.0;

    std::vector<double> s(nc, -2.0 * amax);
    std::vector<double> r(inc.a);
    for (int j = 0; j < nc; ++j) {
        for (auto [i, sg] : inc.columns[j]) r[i] -= sg * s[j];
    }
    double cost = cost_of(inc, r, s);
    double best = cost;
    std::vector<double> best_s = s;

    // reflected Gray code over 5^nc grid points: one coordinate moves by one step each time
    const std::vector<double> grid{-2.0 * amax, -amax, 0.0, amax, 2.0 * amax};
    std::vector<int> digit(nc, 0), dir(nc, 1);
    auto move = [&](int j, int to) {
        double delta = grid[to] - s[j];
        cost -= inc.col_cost[j] * std::abs(s[j]);
        for (auto [i, sg] : inc.columns[j]) {
            cost -= inc.row_cost[i] * std::abs(r[i]);
            r[i] -= sg * delta;
            cost += inc.row_cost[i] * std::abs(r[i]);
        }
        s[j] = grid[to];
        cost += inc.col_cost[j] * std::abs(s[j]);
    };
    for (;;) {
        int j = 0;
        while (j < nc && (digit[j] + dir[j] < 0 || digit[j] + dir[j] > 4)) {
            dir[j] = -dir[j];
            ++j;
        }
        if (j == nc) break;
        digit[j] += dir[j];
        move(j, digit[j]);
        if (cost < best) {
            best = cost;
            best_s = s;
        }
    }

    // coordinate line searches from the best grid point; the cost is convex
    // piecewise linear in each coordinate, so its minimum sits at a breakpoint
    s = best_s;
    r = inc.a;
    for (int j = 0; j < nc; ++j) {
        for (auto [i, sg] : inc.columns[j]) r[i] -= sg * s[j];
    }
    best = cost_of(inc, r, s);
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool improved = false;
        for (int j = 0; j < nc; ++j) {
            // r_i without column j
            std::vector<std::pair<int, double>> base;
            for (auto [i, sg] : inc.columns[j]) base.push_back({i, r[i] + sg * s[j]});
            auto local = [&](double t) {
                double v = inc.col_cost[j] * std::abs(t);
                for (std::size_t q = 0; q < base.size(); ++q) {
                    int sg = inc.columns[j][q].second;
                    v += inc.row_cost[base[q].first] * std::abs(base[q].second - sg * t);
                }
                return v;
            };
            double current = local(s[j]);
            double best_t = s[j], best_v = current;
            std::vector<double> candidates{0.0};
            for (std::size_t q = 0; q < base.size(); ++q) candidates.push_back(base[q].second * inc.columns[j][q].second);
            for (double t : candidates) {
                double v = local(t);
                if (v < best_v - 1e-15 * std::max(1.0, current)) {
                    best_v = v;
                    best_t = t;
                }
            }
            if (best_t != s[j]) {
                for (auto [i, sg] : inc.columns[j]) r[i] -= sg * (best_t - s[j]);
                s[j] = best_t;
                improved = true;
            }
        }
        if (!improved) break;
    }
    return std::min(best, cost_of(inc, r, s));
}

double flat_distance(const Chain& a, const Chain& b)
{
    return flat_norm(a - b).value;
}

double flat_norm_bound(const Chain& a)
{
    if (a.is_simplicial()) return flat_norm(a).value;
    return mass(a);
}

} // namespace gmt
