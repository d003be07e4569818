#pragma once

#include <gmt/polynomial.hpp>

#include <Eigen/Core>
#include <Eigen/LU>

#include <array>
#include <span>
#include <vector>

namespace gmt {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// A basis m-vector e_I (or m-covector dx_I) of R^n is a bitmask of the
/// increasing index set I. Ambient dimension is at most 3, so masks < 8.
using BasisMask = unsigned;

inline constexpr int kMaxAmbient = 3;
inline constexpr int kMaxMasks = 1 << kMaxAmbient;

int mask_grade(BasisMask m);
/// All masks of the given grade in R^n, increasing.
const std::vector<BasisMask>& basis_masks(int n, int grade);
/// Sign of e_A ^ e_B relative to e_{A|B}; zero when A and B overlap.
int wedge_sign(BasisMask a, BasisMask b);
/// Sign of e_i contracted into e_J (left contraction); zero when i is not in J.
int contraction_sign(int i, BasisMask j);

///
/// Constant multivector of R^n with n <= 3. The same storage is used for
/// covectors; pairing is the Euclidean one on the standard basis.
///
class MultiVector
{
public:
    MultiVector() = default;
    MultiVector(int ambient, int grade);

    /// v_1 ^ ... ^ v_k. An empty list gives the unit 0-vector.
    static MultiVector wedge(std::span<const Vec3> vectors, int ambient);
    static MultiVector unit_top(int ambient);

    int ambient() const { return m_ambient; }
    int grade() const { return m_grade; }
    double operator[](BasisMask m) const { return m_c[m]; }
    double& operator[](BasisMask m) { return m_c[m]; }

    double norm() const;
    double dot(const MultiVector& other) const;

    /// alpha ⌟ this, for a covector alpha.
    MultiVector contract(const Vec3& covector) const;
    /// u ^ this, for a vector u.
    MultiVector wedge_left(const Vec3& u) const;
    /// (^_k A) this, for a linear map A : R^ambient -> R^target.
    MultiVector push(const Mat3& linear, int target_ambient) const;

    MultiVector& operator+=(const MultiVector& o);
    MultiVector& operator*=(double s);
    friend MultiVector operator*(MultiVector a, double s) { return a *= s; }

private:
    int m_ambient = 0;
    int m_grade = 0;
    std::array<double, kMaxMasks> m_c{};
};

/// Vector field with polynomial components (used both in ambient and in
/// barycentric variables).
using PolyVector = std::array<Polynomial, kMaxAmbient>;

PolyVector constant_poly_vector(int num_vars, const Vec3& v);

///
/// Graded field with one polynomial per basis mask. This is the common
/// storage for polynomial forms (ambient variables) and multivector
/// densities on simplices (barycentric variables).
///
class GradedPolynomial
{
public:
    GradedPolynomial() = default;
    GradedPolynomial(int ambient, int grade, int num_vars);

    int ambient() const { return m_ambient; }
    int grade() const { return m_grade; }
    int num_vars() const { return m_num_vars; }

    const Polynomial& operator[](BasisMask m) const { return m_c[m]; }
    Polynomial& operator[](BasisMask m) { return m_c[m]; }
    const std::vector<BasisMask>& masks() const { return basis_masks(m_ambient, m_grade); }

    bool is_zero() const;
    int degree() const;
    double max_abs_coefficient() const;

    GradedPolynomial& operator+=(const GradedPolynomial& o);
    GradedPolynomial& operator-=(const GradedPolynomial& o);
    GradedPolynomial& operator*=(double s);
    GradedPolynomial scaled(const Polynomial& p) const;

    /// Pointwise pairing sum_I this_I * other_I (grades must match).
    Polynomial pair(const GradedPolynomial& other) const;
    Polynomial pair(const MultiVector& constant) const;

    /// alpha ⌟ this for a polynomial covector field alpha.
    GradedPolynomial contract(const PolyVector& covector) const;
    /// u ^ this for a polynomial vector field u.
    GradedPolynomial wedge_left(const PolyVector& u) const;
    /// this ^ other.
    GradedPolynomial wedge(const GradedPolynomial& other) const;
    /// (^_k A) this.
    GradedPolynomial push(const Mat3& linear, int target_ambient) const;

    GradedPolynomial substitute(const Eigen::MatrixXd& linear, const Eigen::VectorXd& offset) const;
    MultiVector at(std::span<const double> x) const;

private:
    int m_ambient = 0;
    int m_grade = 0;
    int m_num_vars = 0;
    std::array<Polynomial, kMaxMasks> m_c{};
};

} // namespace gmt
