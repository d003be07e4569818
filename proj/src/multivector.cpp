#include <gmt/error.hpp>
#include <gmt/multivector.hpp>

#include <bit>
#include <cmath>

namespace gmt {

int mask_grade(BasisMask m)
{
    return std::popcount(m);
}

const std::vector<BasisMask>& basis_masks(int n, int grade)
{
    static const auto table = [] {
        std::array<std::array<std::vector<BasisMask>, kMaxAmbient + 1>, kMaxAmbient + 1> t;
        for (int dim = 0; dim <= kMaxAmbient; ++dim) {
            for (BasisMask m = 0; m < (1u << dim); ++m) t[dim][mask_grade(m)].push_back(m);
        }
        return t;
    }();
    require(n >= 0 && n <= kMaxAmbient && grade >= 0 && grade <= n, "basis_masks: invalid grade");
    return table[n][grade];
}

int wedge_sign(BasisMask a, BasisMask b)
{
    if (a & b) return 0;
    int swaps = 0;
    for (int i = 0; i < kMaxAmbient; ++i) {
        if (!(a & (1u << i))) continue;
        // count elements of b below i: each must pass over a's element i
        swaps += std::popcount(b & ((1u << i) - 1));
    }
    return (swaps % 2) ? -1 : 1;
}

int contraction_sign(int i, BasisMask j)
{
    if (!(j & (1u << i))) return 0;
    return (std::popcount(j & ((1u << i) - 1)) % 2) ? -1 : 1;
}

MultiVector::MultiVector(int ambient, int grade)
    : m_ambient(ambient)
    , m_grade(grade)
{
    require(ambient >= 0 && ambient <= kMaxAmbient && grade >= 0 && grade <= ambient,
            "multivector: invalid grade");
}

MultiVector MultiVector::wedge(std::span<const Vec3> vectors, int ambient)
{
    const int k = static_cast<int>(vectors.size());
    MultiVector r(ambient, k);
    for (BasisMask m : basis_masks(ambient, k)) {
        // component = det of the rows of [v_1 .. v_k] selected by m
        Eigen::MatrixXd sub(k, k);
        int row = 0;
        for (int i = 0; i < ambient; ++i) {
            if (!(m & (1u << i))) continue;
            for (int j = 0; j < k; ++j) sub(row, j) = vectors[j](i);
            ++row;
        }
        r.m_c[m] = k == 0 ? 1.0 : sub.determinant();
    }
    return r;
}

MultiVector MultiVector::unit_top(int ambient)
{
    MultiVector r(ambient, ambient);
    r.m_c[(1u << ambient) - 1] = 1.0;
    return r;
}

double MultiVector::norm() const
{
    return std::sqrt(dot(*this));
}

double MultiVector::dot(const MultiVector& other) const
{
    double s = 0.0;
    for (int m = 0; m < kMaxMasks; ++m) s += m_c[m] * other.m_c[m];
    return s;
}

MultiVector MultiVector::contract(const Vec3& covector) const
{
    require(m_grade >= 1, "multivector: contraction of a 0-vector");
    MultiVector r(m_ambient, m_grade - 1);
    for (BasisMask m : basis_masks(m_ambient, m_grade)) {
        if (m_c[m] == 0.0) continue;
        for (int i = 0; i < m_ambient; ++i) {
            int s = contraction_sign(i, m);
            if (s != 0) r.m_c[m & ~(1u << i)] += s * covector(i) * m_c[m];
        }
    }
    return r;
}

MultiVector MultiVector::wedge_left(const Vec3& u) const
{
    require(m_grade < m_ambient, "multivector: wedge exceeds ambient dimension");
    MultiVector r(m_ambient, m_grade + 1);
    for (BasisMask m : basis_masks(m_ambient, m_grade)) {
        if (m_c[m] == 0.0) continue;
        for (int i = 0; i < m_ambient; ++i) {
            int s = wedge_sign(1u << i, m);
            if (s != 0) r.m_c[m | (1u << i)] += s * u(i) * m_c[m];
        }
    }
    return r;
}

MultiVector MultiVector::push(const Mat3& linear, int target_ambient) const
{
    MultiVector r(target_ambient, m_grade);
    for (BasisMask m : basis_masks(m_ambient, m_grade)) {
        if (m_c[m] == 0.0) continue;
        std::vector<Vec3> cols;
        for (int i = 0; i < m_ambient; ++i) {
            if (m & (1u << i)) cols.push_back(linear.col(i));
        }
        r += MultiVector::wedge(cols, target_ambient) * m_c[m];
    }
    return r;
}

MultiVector& MultiVector::operator+=(const MultiVector& o)
{
    require(m_ambient == o.m_ambient && m_grade == o.m_grade, "multivector: grade mismatch");
    for (int m = 0; m < kMaxMasks; ++m) m_c[m] += o.m_c[m];
    return *this;
}

MultiVector& MultiVector::operator*=(double s)
{
    for (auto& c : m_c) c *= s;
    return *this;
}

PolyVector constant_poly_vector(int num_vars, const Vec3& v)
{
    PolyVector r;
    for (int i = 0; i < kMaxAmbient; ++i) r[i] = Polynomial::constant(num_vars, v(i));
    return r;
}

GradedPolynomial::GradedPolynomial(int ambient, int grade, int num_vars)
    : m_ambient(ambient)
    , m_grade(grade)
    , m_num_vars(num_vars)
{
    require(ambient >= 1 && ambient <= kMaxAmbient && grade >= 0 && grade <= ambient,
            "graded polynomial: invalid grade");
    for (auto& c : m_c) c = Polynomial(num_vars);
}

bool GradedPolynomial::is_zero() const
{
    for (const auto& c : m_c) {
        if (!c.is_zero()) return false;
    }
    return true;
}

int GradedPolynomial::degree() const
{
    int d = 0;
    for (const auto& c : m_c) d = std::max(d, c.degree());
    return d;
}

double GradedPolynomial::max_abs_coefficient() const
{
    double m = 0.0;
    for (const auto& c : m_c) m = std::max(m, c.max_abs_coefficient());
    return m;
}

GradedPolynomial& GradedPolynomial::operator+=(const GradedPolynomial& o)
{
    require(m_ambient == o.m_ambient && m_grade == o.m_grade, "graded polynomial: grade mismatch");
    for (int m = 0; m < kMaxMasks; ++m) m_c[m] += o.m_c[m];
    return *this;
}

GradedPolynomial& GradedPolynomial::operator-=(const GradedPolynomial& o)
{
    require(m_ambient == o.m_ambient && m_grade == o.m_grade, "graded polynomial: grade mismatch");
    for (int m = 0; m < kMaxMasks; ++m) m_c[m] -= o.m_c[m];
    return *this;
}

GradedPolynomial& GradedPolynomial::operator*=(double s)
{
    for (auto& c : m_c) c *= s;
    return *this;
}

GradedPolynomial GradedPolynomial::scaled(const Polynomial& p) const
{
    GradedPolynomial r(m_ambient, m_grade, m_num_vars);
    for (BasisMask m : masks()) {
        if (!m_c[m].is_zero()) r.m_c[m] = m_c[m] * p;
    }
    return r;
}

Polynomial GradedPolynomial::pair(const GradedPolynomial& other) const
{
    require(m_grade == other.m_grade && m_ambient == other.m_ambient, "pairing: grade mismatch");
    Polynomial r(m_num_vars);
    for (BasisMask m : masks()) {
        if (m_c[m].is_zero() || other.m_c[m].is_zero()) continue;
        r += m_c[m] * other.m_c[m];
    }
    return r;
}

Polynomial GradedPolynomial::pair(const MultiVector& constant) const
{
    require(m_grade == constant.grade(), "pairing: grade mismatch");
    Polynomial r(m_num_vars);
    for (BasisMask m : masks()) {
        if (constant[m] != 0.0 && !m_c[m].is_zero()) r += m_c[m] * constant[m];
    }
    return r;
}

GradedPolynomial GradedPolynomial::contract(const PolyVector& covector) const
{
    require(m_grade >= 1, "graded polynomial: contraction of grade 0");
    GradedPolynomial r(m_ambient, m_grade - 1, m_num_vars);
    for (BasisMask m : masks()) {
        if (m_c[m].is_zero()) continue;
        for (int i = 0; i < m_ambient; ++i) {
            int s = contraction_sign(i, m);
            if (s == 0 || covector[i].is_zero()) continue;
            r.m_c[m & ~(1u << i)] += (covector[i] * m_c[m]) * double(s);
        }
    }
    return r;
}

GradedPolynomial GradedPolynomial::wedge_left(const PolyVector& u) const
{
    require(m_grade < m_ambient, "graded polynomial: wedge exceeds ambient dimension");
    GradedPolynomial r(m_ambient, m_grade + 1, m_num_vars);
    for (BasisMask m : masks()) {
        if (m_c[m].is_zero()) continue;
        for (int i = 0; i < m_ambient; ++i) {
            int s = wedge_sign(1u << i, m);
            if (s == 0 || u[i].is_zero()) continue;
            r.m_c[m | (1u << i)] += (u[i] * m_c[m]) * double(s);
        }
    }
    return r;
}

GradedPolynomial GradedPolynomial::wedge(const GradedPolynomial& other) const
{
    require(m_ambient == other.m_ambient && m_grade + other.m_grade <= m_ambient,
            "graded polynomial: wedge exceeds ambient dimension");
    GradedPolynomial r(m_ambient, m_grade + other.m_grade, m_num_vars);
    for (BasisMask a : masks()) {
        if (m_c[a].is_zero()) continue;
        for (BasisMask b : other.masks()) {
            int s = wedge_sign(a, b);
            if (s == 0 || other.m_c[b].is_zero()) continue;
            r.m_c[a | b] += (m_c[a] * other.m_c[b]) * double(s);
        }
    }
    return r;
}

GradedPolynomial GradedPolynomial::push(const Mat3& linear, int target_ambient) const
{
    GradedPolynomial r(target_ambient, m_grade, m_num_vars);
    for (BasisMask m : masks()) {
        if (m_c[m].is_zero()) continue;
        MultiVector unit(m_ambient, m_grade);
        unit[m] = 1.0;
        MultiVector image = unit.push(linear, target_ambient);
        for (BasisMask t : r.masks()) {
            if (image[t] != 0.0) r.m_c[t] += m_c[m] * image[t];
        }
    }
    return r;
}

GradedPolynomial GradedPolynomial::substitute(const Eigen::MatrixXd& linear,
                                              const Eigen::VectorXd& offset) const
{
    GradedPolynomial r(m_ambient, m_grade, static_cast<int>(linear.cols()));
    for (BasisMask m : masks()) {
        if (!m_c[m].is_zero()) r.m_c[m] = m_c[m].substitute(linear, offset);
    }
    return r;
}

MultiVector GradedPolynomial::at(std::span<const double> x) const
{
    MultiVector r(m_ambient, m_grade);
    for (BasisMask m : masks()) r[m] = m_c[m](x);
    return r;
}

} // namespace gmt
