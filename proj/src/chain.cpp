#include <gmt/chain.hpp>
#include <gmt/error.hpp>
#include <gmt/quadrature.hpp>

#include <cmath>

namespace gmt {

Chain::Chain(ComplexPtr complex, int dim)
    : m_complex(std::move(complex))
    , m_dim(dim)
{
    require(m_complex != nullptr, "chain needs a complex");
    require(dim >= 0 && dim <= m_complex->ambient_dim(), "chain dimension out of range");
}

void Chain::add_cell(int id, const Polynomial& density)
{
    if (density.is_zero()) return;
    require(id >= 0 && id < m_complex->num_simplices(m_dim), "chain references a missing simplex");
    require(density.num_vars() == m_dim + 1, "cell density must use the simplex's barycentric variables");
    if (m_complex->degenerate(m_dim, id)) return;
    auto [it, inserted] = m_cells.try_emplace(id, density);
    if (!inserted) {
        it->second += density;
        if (it->second.is_zero()) m_cells.erase(it);
    }
}

void Chain::add_cell(int id, double coefficient)
{
    add_cell(id, Polynomial::constant(m_dim + 1, coefficient));
}

void Chain::add_oriented(std::span<const int> vertices, double coefficient)
{
    require(static_cast<int>(vertices.size()) == m_dim + 1, "oriented simplex has the wrong dimension");
    auto [id, sign] = m_complex->find_oriented(vertices);
    add_cell(id, coefficient * sign);
}

void Chain::add_integration(SimplexKey carrier, const GradedPolynomial& density)
{
    if (density.is_zero()) return;
    require(carrier.id >= 0 && carrier.id < m_complex->num_simplices(carrier.dim), "chain references a missing simplex");
    require(density.grade() == m_dim && density.ambient() == ambient() && density.num_vars() == carrier.dim + 1,
            "integration density has the wrong shape");
    auto [it, inserted] = m_terms.try_emplace(carrier, density);
    if (!inserted) {
        it->second += density;
        if (it->second.is_zero()) m_terms.erase(it);
    }
}

bool Chain::is_simplicial() const
{
    if (!m_terms.empty()) return false;
    for (const auto& [id, p] : m_cells) {
        if (!p.is_constant()) return false;
    }
    return true;
}

int Chain::max_density_degree() const
{
    int d = 0;
    for (const auto& [id, p] : m_cells) d = std::max(d, p.degree());
    for (const auto& [key, eta] : m_terms) d = std::max(d, eta.degree());
    return d;
}

void Chain::require_compatible(const Chain& o) const
{
    require(m_complex == o.m_complex, "chains live on different complexes");
    require(m_dim == o.m_dim, "chains have different dimensions");
}

Chain& Chain::operator+=(const Chain& o)
{
    if (!m_complex) return *this = o;
    require_compatible(o);
    for (const auto& [id, p] : o.m_cells) add_cell(id, p);
    for (const auto& [key, eta] : o.m_terms) add_integration(key, eta);
    return *this;
}

Chain& Chain::operator-=(const Chain& o)
{
    if (!m_complex) return *this = o * -1.0;
    require_compatible(o);
    for (const auto& [id, p] : o.m_cells) add_cell(id, p * -1.0);
    for (const auto& [key, eta] : o.m_terms) {
        GradedPolynomial neg = eta;
        neg *= -1.0;
        add_integration(key, neg);
    }
    return *this;
}

Chain& Chain::operator*=(double s)
{
    if (s == 0.0) {
        m_cells.clear();
        m_terms.clear();
        return *this;
    }
    for (auto& [id, p] : m_cells) p *= s;
    for (auto& [key, eta] : m_terms) eta *= s;
    return *this;
}

Chain Chain::rebound(ComplexPtr complex) const
{
    for (int k = 0; k <= kMaxSimplexDim; ++k) {
        require(complex->num_simplices(k) == m_complex->num_simplices(k), "rebinding needs identical combinatorics");
    }
    Chain r(std::move(complex), m_dim);
    for (const auto& [id, p] : m_cells) r.add_cell(id, p);
    for (const auto& [key, eta] : m_terms) {
        GradedPolynomial moved = eta;
        if (eta.ambient() != r.ambient()) {
            moved = GradedPolynomial(r.ambient(), eta.grade(), eta.num_vars());
            for (BasisMask m : eta.masks()) moved[m] = eta[m];
        }
        r.add_integration(key, moved);
    }
    return r;
}

GradedPolynomial Chain::cell_density(int id) const
{
    GradedPolynomial g(ambient(), m_dim, m_dim + 1);
    auto it = m_cells.find(id);
    if (it == m_cells.end()) return g;
    const MultiVector& e = m_complex->edge_wedge(m_dim, id);
    for (BasisMask m : g.masks()) {
        if (e[m] != 0.0) g[m] = it->second * e[m];
    }
    return g;
}

Polynomial restrict_to_simplex(const Polynomial& f, std::span<const Vec3> points)
{
    const int n = f.num_vars();
    const int k = static_cast<int>(points.size());
    Eigen::MatrixXd lin(n, k);
    for (int j = 0; j < k; ++j) lin.col(j) = points[j].head(n);
    return f.substitute(lin, Eigen::VectorXd::Zero(n));
}

PolyVector restrict_to_simplex(const PolyVector& f, int ambient, std::span<const Vec3> points)
{
    PolyVector r;
    const int k = static_cast<int>(points.size());
    for (int i = 0; i < kMaxAmbient; ++i) {
        r[i] = (i < ambient && !f[i].is_zero()) ? restrict_to_simplex(f[i], points) : Polynomial(k);
    }
    return r;
}

Polynomial barycentric_affine(std::span<const double> values)
{
    const int k = static_cast<int>(values.size());
    Polynomial p(k);
    for (int i = 0; i < k; ++i) {
        Exponent e{};
        e[i] = 1;
        p.add_term(e, values[i]);
    }
    return p;
}

Polynomial restrict_to_face(const Polynomial& p, int omitted)
{
    const int k = p.num_vars();
    Eigen::MatrixXd lin = Eigen::MatrixXd::Zero(k, k - 1);
    for (int j = 0, w = 0; j < k; ++j) {
        if (j != omitted) lin(j, w++) = 1.0;
    }
    return p.substitute(lin, Eigen::VectorXd::Zero(k));
}

Chain boundary(const Chain& c)
{
    const int m = c.dim();
    require(m >= 1, "no boundary of 0-chain");
    require(c.is_cellular(), "boundary of an integration current is not represented");
    const auto& complex = *c.complex();
    Chain r(c.complex(), m - 1);
    for (const auto& [id, p] : c.cells()) {
        auto faces = complex.faces(m, id);
        for (int i = 0; i <= m; ++i) r.add_cell(faces[i].id, restrict_to_face(p, i) * double(faces[i].sign));
        if (p.is_constant()) continue;
        // interior term -(dp ⌟ E): dp(e_j) = dp/dl_j - dp/dl_0
        auto pts = complex.points(m, id);
        std::vector<Vec3> edges;
        for (int j = 1; j <= m; ++j) edges.push_back(pts[j] - pts[0]);
        GradedPolynomial eta(c.ambient(), m - 1, m + 1);
        Polynomial d0 = p.derivative(0);
        for (int j = 1; j <= m; ++j) {
            Polynomial g = p.derivative(j) - d0;
            if (g.is_zero()) continue;
            std::vector<Vec3> rest;
            for (int k = 1; k <= m; ++k) {
                if (k != j) rest.push_back(edges[k - 1]);
            }
            MultiVector w = MultiVector::wedge(rest, c.ambient());
            double sign = (j % 2) ? -1.0 : 1.0;
            for (BasisMask mask : eta.masks()) {
                if (w[mask] != 0.0) eta[mask] += g * (sign * w[mask]);
            }
        }
        r.add_integration({m, id}, eta);
    }
    return r;
}

double mass(const Chain& c)
{
    double total = 0.0;
    for (const auto& [id, p] : c.cells()) {
        total += c.complex()->edge_wedge(c.dim(), id).norm() * integrate_abs(p);
    }
    for (const auto& [key, eta] : c.integration_terms()) total += integrate_norm(eta);
    return total;
}

double normal_norm(const Chain& c)
{
    return mass(c) + mass(boundary(c));
}

double evaluate(const Chain& c, const PolynomialForm& w)
{
    require(w.grade() == c.dim(), "form grade does not match chain dimension");
    require(w.ambient() == c.ambient(), "form ambient dimension does not match chain");
    if (w.is_zero()) return 0.0;
    const auto& complex = *c.complex();
    double total = 0.0;
    for (const auto& [id, p] : c.cells()) {
        auto pts = complex.points(c.dim(), id);
        Polynomial integrand = w.on_simplex(pts).pair(complex.edge_wedge(c.dim(), id)) * p;
        total += integrate_standard_simplex(integrand);
    }
    for (const auto& [key, eta] : c.integration_terms()) {
        auto pts = complex.points(key.dim, key.id);
        total += integrate_standard_simplex(w.on_simplex(pts).pair(eta));
    }
    return total;
}

Chain interior_product_vector(const PolyVector& u, const Chain& c)
{
    require(c.dim() < c.ambient(), "u ^ c exceeds the ambient dimension");
    const auto& complex = *c.complex();
    Chain r(c.complex(), c.dim() + 1);
    for (const auto& [id, p] : c.cells()) {
        auto pts = complex.points(c.dim(), id);
        r.add_integration({c.dim(), id}, c.cell_density(id).wedge_left(restrict_to_simplex(u, c.ambient(), pts)));
    }
    for (const auto& [key, eta] : c.integration_terms()) {
        auto pts = complex.points(key.dim, key.id);
        r.add_integration(key, eta.wedge_left(restrict_to_simplex(u, c.ambient(), pts)));
    }
    return r;
}

Chain interior_product_covector(const PolyVector& alpha, const Chain& c)
{
    require(c.dim() >= 1, "contraction of a 0-current");
    const auto& complex = *c.complex();
    Chain r(c.complex(), c.dim() - 1);
    for (const auto& [id, p] : c.cells()) {
        auto pts = complex.points(c.dim(), id);
        r.add_integration({c.dim(), id}, c.cell_density(id).contract(restrict_to_simplex(alpha, c.ambient(), pts)));
    }
    for (const auto& [key, eta] : c.integration_terms()) {
        auto pts = complex.points(key.dim, key.id);
        r.add_integration(key, eta.contract(restrict_to_simplex(alpha, c.ambient(), pts)));
    }
    return r;
}

std::vector<SimplexKey> support(const Chain& c)
{
    std::vector<SimplexKey> s;
    for (const auto& [id, p] : c.cells()) s.push_back({c.dim(), id});
    for (const auto& [key, eta] : c.integration_terms()) s.push_back(key);
    return s;
}

double coefficient_distance(const Chain& a, const Chain& b)
{
    Chain d = a - b;
    double m = 0.0;
    for (const auto& [id, p] : d.cells()) m = std::max(m, p.max_abs_coefficient());
    for (const auto& [key, eta] : d.integration_terms()) m = std::max(m, eta.max_abs_coefficient());
    return m;
}

} // namespace gmt
