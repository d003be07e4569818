#pragma once

#include <gmt/chain.hpp>
#include <gmt/lipschitz_maps.hpp>
#include <gmt/sharp_fields.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace gmt {

/// sup of |D| and |dD| over the cells of a flat form.
struct FormNorm
{
    double form = 0.0;
    double derivative = 0.0;
    double value = 0.0;
    /// Exact when all coefficients are affine (the sup sits at a vertex);
    /// otherwise a lattice sample, i.e. a lower bound.
    bool exact = true;
};

///
/// Flat m-form on the top cells of an n-dimensional complex: one polynomial
/// form D per n-simplex plus the absolutely continuous part dD of its weak
/// derivative. Cells without a piece carry the zero form.
///
class FlatForm
{
public:
    FlatForm() = default;
    /// dD is derived cellwise.
    FlatForm(ComplexPtr complex, int grade, const std::map<int, PolynomialForm>& pieces);
    /// dD supplied (it is trusted, not compared with the cellwise derivative).
    FlatForm(ComplexPtr complex, int grade, const std::map<int, PolynomialForm>& pieces,
             const std::map<int, PolynomialForm>& derivative);
    /// The same smooth form on every top cell.
    static FlatForm global(ComplexPtr complex, const PolynomialForm& d);
    static FlatForm zero(ComplexPtr complex, int grade);

    const ComplexPtr& complex() const { return m_complex; }
    int ambient() const { return m_complex->ambient_dim(); }
    int grade() const { return m_grade; }
    const PolynomialForm& piece(int top_id) const { return m_pieces[top_id]; }
    const PolynomialForm& derivative(int top_id) const { return m_derivative[top_id]; }
    int num_pieces() const { return static_cast<int>(m_pieces.size()); }

    /// Tangential traces agree across every interior (n-1)-face.
    bool jump_free() const { return m_jump_free; }
    /// dD equals the cellwise derivative of D.
    bool derived() const { return m_derived; }

    FormNorm norm() const;

private:
    void init(ComplexPtr complex, int grade, const std::map<int, PolynomialForm>& pieces);

    ComplexPtr m_complex;
    int m_grade = 0;
    std::vector<PolynomialForm> m_pieces;
    std::vector<PolynomialForm> m_derivative;
    bool m_jump_free = true;
    bool m_derived = true;
};

/// Cellwise D_a ^ D_b with d(a ^ b) = da ^ b + (-1)^m a ^ db.
FlatForm wedge(const FlatForm& a, const FlatForm& b);

/// Flat cochain given by its representing form.
struct Cochain
{
    FlatForm form;
    std::string label;

    int grade() const { return form.grade(); }
    double flat_norm() const { return form.norm().value; }
};

/// A = L^n ^ eta + boundary(L^n ^ xi), both parts carried by top cells.
struct WolfeInput
{
    Chain eta;
    Chain xi;
};

///
/// X(A) by direct integration of D over the carriers of A. Lower-dimensional
/// carriers must not see a jump of D between the top cells around them.
///
double wolfe_evaluate(const Cochain& x, const Chain& a);
/// int D(eta) + dD(xi).
double wolfe_evaluate(const Cochain& x, const WolfeInput& a);

/// dX, represented by dD with zero derivative.
Cochain coboundary(const Cochain& x);

///
/// Flux at a configuration: n cochains of grade n - 1 on the image complex
/// of kappa, acting by Phi(kappa#S, v) = sum_i Psi_i(v_i kappa#S).
///
class CauchyFlux
{
public:
    CauchyFlux(std::vector<Cochain> components, PiecewiseAffineMap kappa);

    const std::vector<Cochain>& components() const { return m_components; }
    const PiecewiseAffineMap& kappa() const { return m_kappa; }
    int ambient() const { return m_kappa.target_ambient(); }
    /// max_i F(Psi_i).
    double flat_norm() const;

private:
    std::vector<Cochain> m_components;
    PiecewiseAffineMap m_kappa;
};

/// Psi_i(v_i kappa#S) for each i.
std::vector<double> flux_components(const CauchyFlux& phi, const Chain& s, const std::vector<SharpField>& v);
double flux_eval(const CauchyFlux& phi, const Chain& s, const std::vector<SharpField>& v);

/// A material chain on the reference complex with a velocity on the image.
struct FluxProbe
{
    Chain chain;
    std::vector<SharpField> v;
};

struct BalanceReport
{
    double s_hat = 0.0;
    double b_hat = 0.0;
    double flat_norm = 0.0;
    double s_bound = 0.0;
    double b_bound = 0.0;
    int evaluated = 0;
    int skipped = 0;
    std::vector<std::string> warnings;
    bool pass = false;
};

inline constexpr double kBalanceTol = 1e-9;

///
/// Battery maxima of |Psi_i(v_i kappa#S)| / (|v_i|_L M(kappa#S)) over surfaces
/// and |Psi_i(v_i kappa#boundary P)| / (|v_i|_L M(kappa#P)) over bodies,
/// compared with F(Psi) and (n + 1) F(Psi).
///
BalanceReport balance_report(const CauchyFlux& phi, const std::vector<FluxProbe>& surfaces,
                             const std::vector<FluxProbe>& bodies);

/// Values on the (n-1)-simplices of a complex (stored orientation) with the
/// producer's bounds |alpha(sigma)| <= s vol(sigma), |alpha(boundary tau)| <= b vol(tau).
struct SimplicialFluxTable
{
    ComplexPtr complex;
    std::map<int, double> values;
    double s = 0.0;
    double b = 0.0;
};

/// alpha(sigma) = int_sigma D, with s and b the sups of |D| and |dD|.
SimplicialFluxTable induced_table(const Cochain& x);

struct TableBounds
{
    double s_observed = 0.0;
    double b_observed = 0.0;
    /// max(s_observed, b_observed): F(alpha) restricted to the simplices of
    /// the complex, a lower bound of the flat norm.
    double flat_lower = 0.0;
    bool ok = false;
};

TableBounds table_bounds(const SimplicialFluxTable& t);

/// alpha on a polyhedral chain of the table's complex, by linearity.
double table_evaluate(const SimplicialFluxTable& t, const Chain& a);

struct FluxExtension
{
    double value = 0.0;
    /// max(s, b) F(A_last - target).
    double gap = 0.0;
    std::vector<double> values;
    std::vector<double> distances;
    /// |alpha(A_j) - alpha(A_{j+1})| and max(s, b) F(A_j - A_{j+1}).
    std::vector<double> step_differences;
    std::vector<double> step_bounds;
    bool steps_ok = true;
};

/// Extension of the table to `target` through a caller-supplied polyhedral
/// refinement whose flat distances to the target must decrease.
FluxExtension extend_flux(const SimplicialFluxTable& t, const Chain& target, const std::vector<Chain>& refinement);

/// Flux of the table on a set of simplices against a Lipschitz velocity,
/// sum alpha(sigma) * mean of u over the vertices of sigma.
double table_flux(const SimplicialFluxTable& t, const std::vector<int>& simplices,
                  const std::function<double(const Vec3&)>& u);

struct WellDefinedReport
{
    double max_residual = 0.0;
    int trials = 0;
};

inline constexpr double kWellDefinedTol = 1e-9;

/// Random pairwise disjoint simplex sets with random constant velocities;
/// two different Lipschitz extensions are compared through table_flux.
WellDefinedReport well_defined_check(const SimplicialFluxTable& t, int trials = 10, std::uint64_t seed = 1);

/// eps_i = v_i boundary(kappa#T) - boundary(v_i kappa#T), against d v_i ⌟ kappa#T.
struct KinematicInterpolation
{
    Chain image;
    std::vector<Chain> components;
    std::vector<Chain> contractions;
    double residual = 0.0;
    /// F(eps_i) (mass, an upper bound) against (n + 2) |v_i|_L F(kappa#T).
    std::vector<double> flat_lhs;
    std::vector<double> flat_rhs;
    bool bound_ok = false;
};

KinematicInterpolation kinematic_interpolation(const PiecewiseAffineMap& kappa, const Chain& body,
                                               const std::vector<SharpField>& v);

inline constexpr double kVirtualWorkTol = 1e-9;

/// Surface power Psi(v kappa#boundary T), body force power -dPsi(v kappa#T)
/// and internal power Psi(eps), with surface + body_force = internal.
struct VirtualWork
{
    double surface = 0.0;
    double body_force = 0.0;
    double internal = 0.0;
    double residual = 0.0;
    double scale = 1.0;
    bool ok = false;
};

VirtualWork virtual_work(const CauchyFlux& phi, const Chain& body, const std::vector<SharpField>& v);
double virtual_work_residual(const CauchyFlux& phi, const Chain& body, const std::vector<SharpField>& v);

/// The same three terms integrated over the reference body with the Jacobian
/// of kappa. Requires an injective configuration.
VirtualWork virtual_power_terms(const CauchyFlux& phi, const Chain& body, const std::vector<SharpField>& v);

/// kappa^# D Psi_i on the reference complex. Requires kappa injective with
/// positive Jacobian on every top simplex.
std::vector<FlatForm> piola_kirchhoff(const CauchyFlux& phi);

} // namespace gmt
