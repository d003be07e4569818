#include <gmt/error.hpp>
#include <gmt/form.hpp>

#include <cmath>

namespace gmt {

PolynomialForm::PolynomialForm(int ambient, int grade)
    : m_c(ambient, grade, ambient)
{}

PolynomialForm PolynomialForm::basis(int ambient, std::initializer_list<int> indices,
                                     const Polynomial& coefficient)
{
    BasisMask mask = 0;
    int last = -1;
    for (int i : indices) {
        require(i > last && i < ambient, "form basis indices must increase and lie below ambient");
        mask |= 1u << i;
        last = i;
    }
    PolynomialForm f(ambient, static_cast<int>(indices.size()));
    if (!coefficient.is_zero()) {
        require(coefficient.num_vars() == ambient, "form coefficient must use ambient variables");
        f.m_c[mask] = coefficient;
    }
    return f;
}

PolynomialForm PolynomialForm::basis(int ambient, std::initializer_list<int> indices, double coefficient)
{
    return basis(ambient, indices, Polynomial::constant(ambient, coefficient));
}

PolynomialForm PolynomialForm::scalar(int ambient, const Polynomial& f)
{
    return basis(ambient, {}, f);
}

PolynomialForm PolynomialForm::from_components(GradedPolynomial components)
{
    require(components.num_vars() == components.ambient(), "form components must use ambient variables");
    PolynomialForm f;
    f.m_c = std::move(components);
    return f;
}

PolynomialForm PolynomialForm::d() const
{
    const int n = ambient();
    require(grade() < n, "exterior derivative of a top-degree form has no target");
    PolynomialForm r(n, grade() + 1);
    for (BasisMask m : m_c.masks()) {
        if (m_c[m].is_zero()) continue;
        for (int i = 0; i < n; ++i) {
            int s = wedge_sign(1u << i, m);
            if (s == 0) continue;
            r.m_c[m | (1u << i)] += m_c[m].derivative(i) * double(s);
        }
    }
    return r;
}

PolynomialForm PolynomialForm::wedge(const PolynomialForm& other) const
{
    return from_components(m_c.wedge(other.m_c));
}

PolynomialForm PolynomialForm::interior(const PolyVector& u) const
{
    // u ⌟ dx_J uses the same sign rule as covector contraction into e_J
    return from_components(m_c.contract(u));
}

PolynomialForm& PolynomialForm::operator+=(const PolynomialForm& o)
{
    m_c += o.m_c;
    return *this;
}

PolynomialForm& PolynomialForm::operator-=(const PolynomialForm& o)
{
    m_c -= o.m_c;
    return *this;
}

PolynomialForm& PolynomialForm::operator*=(double s)
{
    m_c *= s;
    return *this;
}

PolynomialForm PolynomialForm::times(const Polynomial& f) const
{
    return from_components(m_c.scaled(f));
}

double PolynomialForm::operator()(const Vec3& x, const MultiVector& v) const
{
    require(v.grade() == grade(), "form evaluated on a multivector of different grade");
    double s = 0.0;
    for (BasisMask m : m_c.masks()) {
        if (v[m] != 0.0) s += m_c[m](std::span<const double>(x.data(), 3)) * v[m];
    }
    return s;
}

double PolynomialForm::comass_at(const Vec3& x) const
{
    return m_c.at(std::span<const double>(x.data(), 3)).norm();
}

PolynomialForm PolynomialForm::pullback_affine(const Mat3& linear, const Vec3& offset, int domain_ambient) const
{
    const int n = ambient();
    Eigen::MatrixXd lin = linear.topLeftCorner(n, domain_ambient);
    Eigen::VectorXd off = offset.head(n);
    GradedPolynomial composed = m_c.substitute(lin, off);
    // pulled-back covectors dF_j = sum_k A_jk dx_k are the columns of A^T
    Mat3 transpose = Mat3::Zero();
    transpose.topLeftCorner(domain_ambient, n) = linear.topLeftCorner(n, domain_ambient).transpose();
    return from_components(composed.push(transpose, domain_ambient));
}

GradedPolynomial PolynomialForm::on_simplex(std::span<const Vec3> vertices) const
{
    const int n = ambient();
    const int k = static_cast<int>(vertices.size());
    Eigen::MatrixXd lin(n, k);
    for (int j = 0; j < k; ++j) lin.col(j) = vertices[j].head(n);
    return m_c.substitute(lin, Eigen::VectorXd::Zero(n));
}

Polynomial coordinate(int ambient, int i)
{
    return Polynomial::variable(ambient, i);
}

} // namespace gmt
