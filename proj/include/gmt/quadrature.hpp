#pragma once

#include <gmt/multivector.hpp>

#include <vector>

namespace gmt {

/// Quadrature rule on the standard m-simplex in the coordinates
/// (lambda_1, ..., lambda_m); weights sum to 1/m!.
struct SimplexRule
{
    std::vector<Vec3> points;
    std::vector<double> weights;
};

/// Collapsed Gauss-Legendre rule with q points per direction; exact for
/// polynomials of degree 2q - 1.
const SimplexRule& collapsed_gauss_rule(int m, int q);

/// Relative tolerance of the adaptive absolute-value integrals.
inline constexpr double kMassRelTol = 1e-9;

///
/// int |p| over the standard simplex for a barycentric polynomial p with
/// m + 1 variables. Constant, sign-definite (Bernstein certificate) and affine
/// integrands are integrated exactly; other integrands use adaptive bisection.
///
double integrate_abs(const Polynomial& p);

/// int |eta| over the standard simplex for a multivector-valued barycentric
/// polynomial (Euclidean norm of the components).
double integrate_norm(const GradedPolynomial& eta);

/// True when the Bernstein coefficients of p (degree-homogenized) share one
/// sign, which certifies that p does not change sign on the simplex.
bool bernstein_sign_definite(const Polynomial& p);

} // namespace gmt
