#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>

namespace gmt {

/// Maximum number of polynomial variables. Barycentric coordinates on a
/// tetrahedron need four; ambient coordinates need at most three.
inline constexpr int kMaxVars = 4;

using Exponent = std::array<std::uint8_t, kMaxVars>;

int total_degree(const Exponent& e);

///
/// Sparse multivariate polynomial with real coefficients.
///
/// The same type is used for ambient polynomials (variables are Cartesian
/// coordinates) and for densities on simplices (variables are barycentric
/// coordinates). Exact zero coefficients are never stored.
///
class Polynomial
{
public:
    Polynomial() = default;
    explicit Polynomial(int num_vars);

    static Polynomial constant(int num_vars, double c);
    static Polynomial variable(int num_vars, int var);
    static Polynomial monomial(int num_vars, const Exponent& e, double c);

    int num_vars() const { return m_num_vars; }
    int degree() const;
    bool is_zero() const { return m_terms.empty(); }
    bool is_constant() const;
    /// Value of the constant term.
    double constant_term() const;

    const std::map<Exponent, double>& terms() const { return m_terms; }
    double coefficient(const Exponent& e) const;
    void add_term(const Exponent& e, double c);

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(double s);
    Polynomial operator-() const;

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
    friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    Polynomial derivative(int var) const;
    double operator()(std::span<const double> x) const;
    double max_abs_coefficient() const;

    ///
    /// Substitute every variable by an affine expression of new variables:
    /// x_i = sum_j linear(i, j) * y_j + offset(i). The result has
    /// linear.cols() variables.
    ///
    Polynomial substitute(const Eigen::MatrixXd& linear, const Eigen::VectorXd& offset) const;

    /// Multiply lower-degree terms by (y_0 + ... + y_{k-1})^j so that every
    /// term has total degree `deg`. Only meaningful for barycentric variables.
    Polynomial homogenized(int deg) const;

    /// Remove coefficients with |c| <= tol.
    Polynomial pruned(double tol) const;

    std::string to_string() const;

private:
    int m_num_vars = 0;
    std::map<Exponent, double> m_terms;
};

bool approx_equal(const Polynomial& a, const Polynomial& b, double tol);

double factorial(int k);

///
/// Exact integral of a barycentric polynomial over the standard m-simplex
/// {lambda >= 0, sum lambda = 1} measured in m of its coordinates, i.e.
/// int lambda^a = a! / (|a| + m)!. The polynomial has m + 1 variables.
///
double integrate_standard_simplex(const Polynomial& p);

} // namespace gmt
