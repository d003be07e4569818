#include <gmt/error.hpp>
#include <gmt/geometry.hpp>
#include <gmt/quadrature.hpp>

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>

namespace gmt {

namespace {

// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre(int q, std::vector<double>& x, std::vector<double>& w)
{
    x.resize(q);
    w.resize(q);
    for (int i = 0; i < q; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 1; j <= q; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
            }
            dp = q * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[i] = 0.5 * (1.0 - z);
        w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
    }
}

SimplexRule make_rule(int m, int q)
{
    std::vector<double> x, w;
    gauss_legendre(q, x, w);
    SimplexRule r;
    if (m == 1) {
        for (int i = 0; i < q; ++i) {
            r.points.push_back(Vec3(x[i], 0, 0));
            r.weights.push_back(w[i]);
        }
    } else if (m == 2) {
        for (int i = 0; i < q; ++i) {
            for (int j = 0; j < q; ++j) {
                double u = x[i], v = x[j];
                r.points.push_back(Vec3(u, v * (1 - u), 0));
                r.weights.push_back(w[i] * w[j] * (1 - u));
            }
        }
    } else if (m == 3) {
        for (int i = 0; i < q; ++i) {
            for (int j = 0; j < q; ++j) {
                for (int k = 0; k < q; ++k) {
                    double u = x[i], v = x[j], t = x[k];
                    r.points.push_back(Vec3(u, v * (1 - u), t * (1 - u) * (1 - v)));
                    r.weights.push_back(w[i] * w[j] * w[k] * (1 - u) * (1 - u) * (1 - v));
                }
            }
        }
    } else {
        fail("collapsed_gauss_rule: dimension must be 1, 2 or 3");
    }
    return r;
}

using Integrand = std::function<double(const double* lambda)>;

struct Piece
{
    std::array<Vec3, 4> v;
    int depth;
};

double piece_volume(const Piece& s, int m)
{
    Eigen::Matrix3d e = Eigen::Matrix3d::Identity();
    for (int j = 0; j < m; ++j) e.col(j).head(m) = (s.v[j + 1] - s.v[0]).head(m);
    return std::abs(e.topLeftCorner(m, m).determinant()) / factorial(m);
}

double apply_rule(const Piece& s, int m, const SimplexRule& rule, const Integrand& f)
{
    double vol = piece_volume(s, m) * factorial(m);
    double sum = 0.0;
    std::array<double, 4> lambda{};
    for (std::size_t k = 0; k < rule.points.size(); ++k) {
        const Vec3& r = rule.points[k];
        Vec3 mu = s.v[0];
        for (int j = 0; j < m; ++j) mu += r(j) * (s.v[j + 1] - s.v[0]);
        double rest = 1.0;
        for (int j = 0; j < m; ++j) {
            lambda[j + 1] = mu(j);
            rest -= mu(j);
        }
        lambda[0] = rest;
        sum += rule.weights[k] * f(lambda.data());
    }
    return sum * vol;
}

// Adaptive integration of f over the standard simplex by longest-edge bisection.
double adaptive(int m, const Integrand& f)
{
    const SimplexRule& low = collapsed_gauss_rule(m, 5);
    const SimplexRule& high = collapsed_gauss_rule(m, 8);
    Piece root;
    for (int j = 0; j <= m; ++j) root.v[j] = j == 0 ? Vec3(Vec3::Zero()) : Vec3(Vec3::Unit(j - 1));
    root.depth = 0;
    double estimate = std::abs(apply_rule(root, m, high, f));
    const double root_vol = 1.0 / factorial(m);
    const double tol = kMassRelTol * 0.1 * std::max(estimate, 1e-300);
    constexpr int kMaxPieces = 200000;
    constexpr int kMaxDepth = 48;

    double total = 0.0;
    std::vector<Piece> stack{root};
    int processed = 0;
    while (!stack.empty()) {
        Piece s = stack.back();
        stack.pop_back();
        ++processed;
        double a = apply_rule(s, m, low, f);
        double b = apply_rule(s, m, high, f);
        double local_tol = tol * piece_volume(s, m) / root_vol;
        if (std::abs(a - b) <= local_tol || s.depth >= kMaxDepth || processed + static_cast<int>(stack.size()) > kMaxPieces) {
            total += b;
            continue;
        }
        int bi = 0, bj = 1;
        double longest = -1.0;
        for (int i = 0; i <= m; ++i) {
            for (int j = i + 1; j <= m; ++j) {
                double len = (s.v[i] - s.v[j]).squaredNorm();
                if (len > longest) {
                    longest = len;
                    bi = i;
                    bj = j;
                }
            }
        }
        Vec3 mid = 0.5 * (s.v[bi] + s.v[bj]);
        Piece c1 = s, c2 = s;
        c1.v[bj] = mid;
        c2.v[bi] = mid;
        c1.depth = c2.depth = s.depth + 1;
        stack.push_back(c2);
        stack.push_back(c1);
    }
    return total;
}

double integrate_abs_affine(const Polynomial& p)
{
    const int m = p.num_vars() - 1;
    Polynomial h = p.homogenized(1);
    std::vector<double> values(m + 1);
    std::vector<Vec3> pts(m + 1, Vec3::Zero());
    for (int i = 0; i <= m; ++i) {
        Exponent e{};
        e[i] = 1;
        values[i] = h.coefficient(e);
        if (i > 0) pts[i](i - 1) = 1.0;
    }
    double total = 0.0;
    for (int sign : {1, -1}) {
        std::vector<double> v(values);
        for (auto& x : v) x *= sign;
        for (const auto& piece : clip_simplex(pts, v, m)) {
            // value at a piece vertex mu: c_0 (1 - sum mu) + sum c_j mu_j
            double mean = 0.0;
            for (const auto& q : piece) {
                double rest = 1.0, val = 0.0;
                for (int j = 1; j <= m; ++j) {
                    val += v[j] * q(j - 1);
                    rest -= q(j - 1);
                }
                mean += val + v[0] * rest;
            }
            mean /= (m + 1);
            Piece s;
            for (int j = 0; j <= m; ++j) s.v[j] = piece[j];
            total += piece_volume(s, m) * mean;
        }
    }
    return total;
}

} // namespace

const SimplexRule& collapsed_gauss_rule(int m, int q)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, SimplexRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({m, q});
    if (it == cache.end()) it = cache.emplace(std::make_pair(m, q), make_rule(m, q)).first;
    return it->second;
}

bool bernstein_sign_definite(const Polynomial& p)
{
    if (p.is_zero()) return true;
    const int d = p.degree();
    Polynomial h = p.homogenized(d);
    // monomial and Bernstein coefficients of a homogeneous form differ by positive factors
    bool pos = false, neg = false;
    for (const auto& [e, c] : h.terms()) (c > 0 ? pos : neg) = true;
    return !(pos && neg);
}

double integrate_abs(const Polynomial& p)
{
    const int m = p.num_vars() - 1;
    require(m >= 0, "integrate_abs: need barycentric variables");
    if (p.is_zero()) return 0.0;
    if (p.is_constant()) return std::abs(p.constant_term()) / factorial(m);
    if (m == 0) return std::abs(integrate_standard_simplex(p));
    if (bernstein_sign_definite(p)) return std::abs(integrate_standard_simplex(p));
    if (p.degree() == 1) return integrate_abs_affine(p);
    return adaptive(m, [&p](const double* l) { return std::abs(p(std::span<const double>(l, p.num_vars()))); });
}

double integrate_norm(const GradedPolynomial& eta)
{
    const int m = eta.num_vars() - 1;
    require(m >= 0, "integrate_norm: need barycentric variables");
    // scalar multiple of a constant multivector: |K| int |q|
    const Polynomial* base = nullptr;
    for (BasisMask mask : eta.masks()) {
        if (!eta[mask].is_zero()) {
            base = &eta[mask];
            break;
        }
    }
    if (!base) return 0.0;
    bool proportional = true;
    double norm2 = 0.0;
    for (BasisMask mask : eta.masks()) {
        const Polynomial& c = eta[mask];
        if (c.is_zero()) continue;
        const auto& [e0, c0] = *base->terms().begin();
        double ratio = c.coefficient(e0) / c0;
        if (ratio == 0.0 || !approx_equal(c, *base * ratio, 1e-14 * c.max_abs_coefficient())) {
            proportional = false;
            break;
        }
        norm2 += ratio * ratio;
    }
    if (proportional) return std::sqrt(norm2) * integrate_abs(*base);
    if (m == 0) return eta.at(std::span<const double>(std::array<double, 1>{1.0})).norm();
    std::vector<const Polynomial*> comps;
    for (BasisMask mask : eta.masks()) {
        if (!eta[mask].is_zero()) comps.push_back(&eta[mask]);
    }
    const int nv = eta.num_vars();
    return adaptive(m, [&comps, nv](const double* l) {
        double s = 0.0;
        for (const Polynomial* c : comps) {
            double x = (*c)(std::span<const double>(l, nv));
            s += x * x;
        }
        return std::sqrt(s);
    });
}

} // namespace gmt
