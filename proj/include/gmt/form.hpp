#pragma once

#include <gmt/multivector.hpp>

#include <initializer_list>
#include <span>

namespace gmt {

///
/// Differential form on R^n (n <= 3) whose coefficients are polynomials in
/// the Cartesian coordinates.
///
class PolynomialForm
{
public:
    PolynomialForm() = default;
    PolynomialForm(int ambient, int grade);

    /// coefficient * dx_{i1} ^ ... ^ dx_{ik} with increasing indices.
    static PolynomialForm basis(int ambient, std::initializer_list<int> indices, const Polynomial& coefficient);
    static PolynomialForm basis(int ambient, std::initializer_list<int> indices, double coefficient);
    static PolynomialForm scalar(int ambient, const Polynomial& f);
    static PolynomialForm from_components(GradedPolynomial components);

    int ambient() const { return m_c.ambient(); }
    int grade() const { return m_c.grade(); }
    int degree() const { return m_c.degree(); }
    bool is_zero() const { return m_c.is_zero(); }

    const Polynomial& operator[](BasisMask m) const { return m_c[m]; }
    Polynomial& operator[](BasisMask m) { return m_c[m]; }
    const GradedPolynomial& components() const { return m_c; }

    /// Exterior derivative.
    PolynomialForm d() const;
    PolynomialForm wedge(const PolynomialForm& other) const;
    /// u ⌟ this.
    PolynomialForm interior(const PolyVector& u) const;

    PolynomialForm& operator+=(const PolynomialForm& o);
    PolynomialForm& operator-=(const PolynomialForm& o);
    PolynomialForm& operator*=(double s);
    friend PolynomialForm operator+(PolynomialForm a, const PolynomialForm& b) { return a += b; }
    friend PolynomialForm operator-(PolynomialForm a, const PolynomialForm& b) { return a -= b; }
    friend PolynomialForm operator*(PolynomialForm a, double s) { return a *= s; }
    friend PolynomialForm operator*(double s, PolynomialForm a) { return a *= s; }
    PolynomialForm times(const Polynomial& f) const;

    double operator()(const Vec3& x, const MultiVector& v) const;
    /// Euclidean norm of the coefficient vector at x (equals the comass for
    /// n <= 3, where every form is simple).
    double comass_at(const Vec3& x) const;

    /// Pullback by x -> linear * x + offset from R^domain_ambient.
    PolynomialForm pullback_affine(const Mat3& linear, const Vec3& offset, int domain_ambient) const;

    /// Coefficients expressed in barycentric coordinates of the simplex with
    /// the given vertices (components stay in the ambient basis).
    GradedPolynomial on_simplex(std::span<const Vec3> vertices) const;

private:
    GradedPolynomial m_c;
};

/// Polynomial in ambient coordinates equal to x_i.
Polynomial coordinate(int ambient, int i);

} // namespace gmt
