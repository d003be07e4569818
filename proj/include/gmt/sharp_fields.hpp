#pragma once

#include <gmt/chain.hpp>
#include <gmt/lipschitz_maps.hpp>

#include <functional>
#include <vector>

namespace gmt {

///
/// Piecewise-linear scalar field on a complex, given by its vertex values.
/// Its weak differential is constant on every simplex.
///
class SharpField
{
public:
    SharpField() = default;
    SharpField(ComplexPtr complex, std::vector<double> values);
    static SharpField sample(ComplexPtr complex, const std::function<double(const Vec3&)>& f);
    static SharpField constant(ComplexPtr complex, double c);

    const ComplexPtr& complex() const { return m_complex; }
    const std::vector<double>& values() const { return m_values; }

    /// Tangential gradient on a simplex (zero on vertices and degenerate simplices).
    Vec3 gradient(SimplexKey s) const;
    /// Barycentric affine restriction in the stored vertex order of s.
    Polynomial restriction(SimplexKey s) const;
    /// Affine polynomial in ambient coordinates that equals phi on s.
    Polynomial ambient_restriction(SimplexKey s) const;

    /// max |phi| over the vertices of the given simplices (all vertices when empty).
    double sup_abs(const std::vector<SimplexKey>& region = {}) const;
    /// max |d phi| over the given simplices (maximal simplices when empty).
    double lipschitz(const std::vector<SimplexKey>& region = {}) const;

private:
    ComplexPtr m_complex;
    std::vector<double> m_values;
};

struct SharpNorm
{
    double sup = 0.0;
    double lip = 0.0;
    /// max(sup, lip) over the region.
    double norm = 0.0;
    /// Flat norm of the induced 0-cochain: max(sup, lip) over the whole complex.
    double cochain_flat_norm = 0.0;
};

SharpNorm sharp_norm(const SharpField& phi, const std::vector<SimplexKey>& region = {});

/// phi A, exact: densities are multiplied by the affine restriction of phi.
Chain multiply(const SharpField& phi, const Chain& a);

/// d phi ⌟ A with the tangential differential of phi on each carrier.
Chain differential_contraction(const SharpField& phi, const Chain& a);

struct LeibnizCheck
{
    Chain lhs;
    Chain rhs;
    double residual = 0.0;
};

inline constexpr double kLeibnizTol = 1e-9;

/// boundary(phi A) against phi boundary(A) - d phi ⌟ A on a battery of test forms.
LeibnizCheck leibniz_boundary(const SharpField& phi, const Chain& a, int battery_size = 10);

/// Both sides of the mass, normal and flat multiplication bounds.
struct MultiplicationBounds
{
    int dim = 0;
    double sup = 0.0;
    double lip = 0.0;
    double sharp = 0.0;
    double mass_lhs = 0.0, mass_rhs = 0.0;
    double normal_lhs = 0.0, normal_rhs = 0.0;
    double normal_corollary_rhs = 0.0;
    /// Flat side: lhs is M(phi R) + M(phi S) + M(d phi ⌟ S) for the optimal
    /// decomposition A = R + boundary S, an upper bound of F(phi A).
    bool flat_checked = false;
    double flat_lhs = 0.0, flat_rhs = 0.0;
    double flat_corollary_rhs = 0.0;
    bool ok = false;

    double mass_ratio() const { return mass_rhs > 0 ? mass_lhs / mass_rhs : 0.0; }
    double normal_ratio() const { return normal_rhs > 0 ? normal_lhs / normal_rhs : 0.0; }
    double flat_ratio() const { return flat_rhs > 0 ? flat_lhs / flat_rhs : 0.0; }
};

inline constexpr double kBoundTol = 1e-9;

MultiplicationBounds multiplication_bounds(const SharpField& phi, const Chain& a);

/// Components v_i kappa#(T) with their mass and normal estimates.
struct VelocityRestriction
{
    struct Component
    {
        Chain chain;
        double sup = 0.0;
        double lip = 0.0;
        double mass = 0.0;
        double mass_image_bound = 0.0;
        double mass_bound = 0.0;
        double normal = 0.0;
        double normal_image_bound = 0.0;
        double normal_bound = 0.0;
    };
    Chain image;
    double map_lip = 0.0;
    std::vector<Component> components;
    bool ok = false;
};

VelocityRestriction velocity_restriction(const std::vector<SharpField>& v, const Chain& body,
                                         const PiecewiseAffineMap& kappa);

} // namespace gmt
