#pragma once

#include <gmt/complex.hpp>
#include <gmt/form.hpp>

#include <map>

namespace gmt {

///
/// Current on a simplicial complex, stored in two parts.
///
/// Cells: m-simplices carrying a scalar barycentric density p relative to the
/// edge wedge E of the stored (increasing) vertex order. The action on an
/// m-form is int_Delta p(l) w(x(l))(E) dl, i.e. int_sigma p w(orientation).
///
/// Integration terms: simplices of any dimension carrying an m-vector valued
/// barycentric density eta, measured per unit of the standard simplex. The
/// action is int_Delta <w(x(l)), eta(l)> dl.
///
/// Both parts are kept canonical: exact zeros and cells on degenerate
/// simplices are dropped.
///
class Chain
{
public:
    Chain() = default;
    Chain(ComplexPtr complex, int dim);

    int dim() const { return m_dim; }
    const ComplexPtr& complex() const { return m_complex; }
    int ambient() const { return m_complex->ambient_dim(); }

    /// Adds density * [simplex id] (stored orientation).
    void add_cell(int id, const Polynomial& density);
    void add_cell(int id, double coefficient);
    /// Adds coefficient * [v0, ..., vm] for vertices given in any order.
    void add_oriented(std::span<const int> vertices, double coefficient);
    void add_oriented(std::initializer_list<int> vertices, double coefficient)
    {
        add_oriented(std::span<const int>(vertices.begin(), vertices.size()), coefficient);
    }
    void add_integration(SimplexKey carrier, const GradedPolynomial& density);

    const std::map<int, Polynomial>& cells() const { return m_cells; }
    const std::map<SimplexKey, GradedPolynomial>& integration_terms() const { return m_terms; }

    bool is_zero() const { return m_cells.empty() && m_terms.empty(); }
    /// No integration terms.
    bool is_cellular() const { return m_terms.empty(); }
    /// Cellular with constant densities only.
    bool is_simplicial() const;
    int max_density_degree() const;

    Chain& operator+=(const Chain& o);
    Chain& operator-=(const Chain& o);
    Chain& operator*=(double s);
    friend Chain operator+(Chain a, const Chain& b) { return a += b; }
    friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
    friend Chain operator*(Chain a, double s) { return a *= s; }
    friend Chain operator*(double s, Chain a) { return a *= s; }
    Chain operator-() const { return *this * -1.0; }

    /// The same coefficients on a complex with identical combinatorics.
    Chain rebound(ComplexPtr complex) const;

    /// Cell densities as m-vector densities (p E) on the cells' simplices.
    GradedPolynomial cell_density(int id) const;

private:
    void require_compatible(const Chain& o) const;

    ComplexPtr m_complex;
    int m_dim = 0;
    std::map<int, Polynomial> m_cells;
    std::map<SimplexKey, GradedPolynomial> m_terms;
};

/// Boundary; integration terms have no boundary representation.
Chain boundary(const Chain& c);

/// Mass: sum of int |density| over all terms. Exact on a complex (terms have
/// disjoint relative interiors); an upper bound when images overlap.
double mass(const Chain& c);

/// N(c) = M(c) + M(boundary c).
double normal_norm(const Chain& c);

/// Exact value of the current on a polynomial form.
double evaluate(const Chain& c, const PolynomialForm& w);

/// u ^ c, with (u ^ c)(w) = c(u ⌟ w). Raises the dimension by one.
Chain interior_product_vector(const PolyVector& u, const Chain& c);

/// alpha ⌟ c, with (alpha ⌟ c)(w) = c(alpha ^ w). Lowers the dimension by one.
Chain interior_product_covector(const PolyVector& alpha, const Chain& c);

/// Per-simplex support (simplices with a nonzero term, by carrier).
std::vector<SimplexKey> support(const Chain& c);

/// Largest coefficient difference between two chains on the same complex.
double coefficient_distance(const Chain& a, const Chain& b);

/// Restriction of an ambient polynomial to a simplex in barycentric variables.
Polynomial restrict_to_simplex(const Polynomial& f, std::span<const Vec3> points);
PolyVector restrict_to_simplex(const PolyVector& f, int ambient, std::span<const Vec3> points);

/// sum_i values[i] * lambda_i.
Polynomial barycentric_affine(std::span<const double> values);

/// Barycentric polynomial of a density with lambda_i set to zero (face i).
Polynomial restrict_to_face(const Polynomial& p, int omitted);

} // namespace gmt
