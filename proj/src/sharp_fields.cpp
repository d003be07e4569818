#include <gmt/battery.hpp>
#include <gmt/error.hpp>
#include <gmt/flat_norm.hpp>
#include <gmt/sharp_fields.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>

namespace gmt {

namespace {

std::vector<SimplexKey> maximal(const SimplicialComplex& k)
{
    std::vector<SimplexKey> out;
    for (int dim = 1; dim <= kMaxSimplexDim; ++dim) {
        for (int id = 0; id < k.num_simplices(dim); ++id) {
            if (k.is_maximal(dim, id)) out.push_back({dim, id});
        }
    }
    return out;
}

double power(double l, int r)
{
    return r <= 0 ? 1.0 : std::pow(l, r);
}

bool holds(double lhs, double rhs)
{
    return lhs <= rhs * (1 + kBoundTol) + kBoundTol;
}

} // namespace

SharpField::SharpField(ComplexPtr complex, std::vector<double> values)
    : m_complex(std::move(complex))
    , m_values(std::move(values))
{
    require(static_cast<int>(m_values.size()) == m_complex->num_vertices(), "one field value per vertex is required");
}

SharpField SharpField::sample(ComplexPtr complex, const std::function<double(const Vec3&)>& f)
{
    std::vector<double> v;
    for (const auto& p : complex->vertices()) v.push_back(f(p));
    return SharpField(std::move(complex), std::move(v));
}

SharpField SharpField::constant(ComplexPtr complex, double c)
{
    std::vector<double> v(complex->num_vertices(), c);
    return SharpField(std::move(complex), std::move(v));
}

Vec3 SharpField::gradient(SimplexKey s) const
{
    const auto& k = *m_complex;
    if (s.dim == 0 || k.degenerate(s.dim, s.id)) return Vec3::Zero();
    const int n = k.ambient_dim();
    auto verts = k.simplex(s.dim, s.id);
    Eigen::MatrixXd x(n, s.dim);
    Eigen::VectorXd d(s.dim);
    for (int j = 0; j < s.dim; ++j) {
        x.col(j) = (k.vertex(verts[j + 1]) - k.vertex(verts[0])).head(n);
        d(j) = m_values[verts[j + 1]] - m_values[verts[0]];
    }
    Eigen::VectorXd g = x * (x.transpose() * x).ldlt().solve(d);
    Vec3 out = Vec3::Zero();
    out.head(n) = g;
    return out;
}

Polynomial SharpField::restriction(SimplexKey s) const
{
    std::vector<double> v;
    for (int i : m_complex->simplex(s.dim, s.id)) v.push_back(m_values[i]);
    if (std::all_of(v.begin(), v.end(), [&](double x) { return x == v[0]; })) {
        return Polynomial::constant(s.dim + 1, v[0]);
    }
    return barycentric_affine(v);
}

Polynomial SharpField::ambient_restriction(SimplexKey s) const
{
    const auto& k = *m_complex;
    const int n = k.ambient_dim();
    Vec3 g = gradient(s);
    int v0 = k.simplex(s.dim, s.id)[0];
    Polynomial p = Polynomial::constant(n, m_values[v0] - g.dot(k.vertex(v0)));
    for (int i = 0; i < n; ++i) {
        if (g(i) != 0.0) p += g(i) * coordinate(n, i);
    }
    return p;
}

double SharpField::sup_abs(const std::vector<SimplexKey>& region) const
{
    double s = 0.0;
    if (region.empty()) {
        for (double v : m_values) s = std::max(s, std::abs(v));
        return s;
    }
    for (SimplexKey key : region) {
        for (int i : m_complex->simplex(key.dim, key.id)) s = std::max(s, std::abs(m_values[i]));
    }
    return s;
}

double SharpField::lipschitz(const std::vector<SimplexKey>& region) const
{
    double l = 0.0;
    for (SimplexKey key : region.empty() ? maximal(*m_complex) : region) l = std::max(l, gradient(key).norm());
    return l;
}

SharpNorm sharp_norm(const SharpField& phi, const std::vector<SimplexKey>& region)
{
    SharpNorm n;
    n.sup = phi.sup_abs(region);
    n.lip = phi.lipschitz(region);
    n.norm = std::max(n.sup, n.lip);
    n.cochain_flat_norm = std::max(phi.sup_abs(), phi.lipschitz());
    return n;
}

Chain multiply(const SharpField& phi, const Chain& a)
{
    require(phi.complex() == a.complex(), "field and chain live on different complexes");
    Chain out(a.complex(), a.dim());
    for (const auto& [id, p] : a.cells()) out.add_cell(id, p * phi.restriction({a.dim(), id}));
    for (const auto& [key, eta] : a.integration_terms()) out.add_integration(key, eta.scaled(phi.restriction(key)));
    return out;
}

Chain differential_contraction(const SharpField& phi, const Chain& a)
{
    require(phi.complex() == a.complex(), "field and chain live on different complexes");
    require(a.dim() >= 1, "contraction of a 0-current");
    const int n = a.ambient();
    Chain out(a.complex(), a.dim() - 1);
    for (const auto& [id, p] : a.cells()) {
        Chain single(a.complex(), a.dim());
        single.add_cell(id, p);
        out += interior_product_covector(constant_poly_vector(n, phi.gradient({a.dim(), id})), single);
    }
    for (const auto& [key, eta] : a.integration_terms()) {
        require(key.dim == n, "contraction of an integration term needs a full-dimensional carrier");
        Chain single(a.complex(), a.dim());
        single.add_integration(key, eta);
        out += interior_product_covector(constant_poly_vector(n, phi.gradient(key)), single);
    }
    return out;
}

LeibnizCheck leibniz_boundary(const SharpField& phi, const Chain& a, int battery_size)
{
    require(a.dim() >= 1, "no boundary of a 0-chain");
    LeibnizCheck c;
    c.lhs = boundary(multiply(phi, a));
    c.rhs = multiply(phi, boundary(a)) - differential_contraction(phi, a);
    const int n = a.ambient();
    for (const auto& w : form_battery(n, a.dim() - 1, battery_size, 3, default_seed())) {
        c.residual = std::max(c.residual, std::abs(evaluate(c.lhs, w) - evaluate(c.rhs, w)));
    }
    return c;
}

MultiplicationBounds multiplication_bounds(const SharpField& phi, const Chain& a)
{
    require(phi.complex() == a.complex(), "field and chain live on different complexes");
    MultiplicationBounds b;
    const int r = a.dim();
    const int n = a.ambient();
    auto region = support(a);
    b.dim = r;
    b.sup = phi.sup_abs(region);
    b.lip = phi.lipschitz(region);
    b.sharp = std::max(b.sup, b.lip);
    if (region.empty()) {
        b.ok = true;
        return b;
    }

    Chain pa = multiply(phi, a);
    b.mass_lhs = mass(pa);
    b.mass_rhs = b.sup * mass(a);
    if (r >= 1 && a.is_cellular()) {
        b.normal_lhs = normal_norm(pa);
        b.normal_rhs = (b.sup + r * b.lip) * normal_norm(a);
        b.normal_corollary_rhs = (r + 1) * b.sharp * normal_norm(a);
    } else {
        b.normal_lhs = b.mass_lhs;
        b.normal_rhs = b.mass_rhs;
        b.normal_corollary_rhs = b.sharp * mass(a);
    }
    bool ok = holds(b.mass_lhs, b.mass_rhs) && holds(b.normal_lhs, b.normal_rhs)
              && holds(b.normal_lhs, b.normal_corollary_rhs);

    if (a.is_simplicial()) {
        b.flat_checked = true;
        auto d = flat_norm(a);
        // the Lipschitz constant is taken over the support of the decomposition too
        auto wider = region;
        for (auto key : support(d.R)) wider.push_back(key);
        if (!d.S.is_zero()) {
            for (auto key : support(d.S)) wider.push_back(key);
        }
        const double sup = phi.sup_abs(wider);
        const double lip = phi.lipschitz(wider);
        b.sup = sup;
        b.lip = lip;
        b.sharp = std::max(sup, lip);
        b.flat_lhs = mass(multiply(phi, d.R));
        if (!d.S.is_zero()) b.flat_lhs += mass(multiply(phi, d.S)) + mass(differential_contraction(phi, d.S));
        b.flat_rhs = (r < n ? sup + (r + 1) * lip : sup) * d.value;
        b.flat_corollary_rhs = (r < n ? (r + 2) * b.sharp : b.sharp) * d.value;
        ok = ok && holds(b.flat_lhs, b.flat_rhs) && holds(b.flat_lhs, b.flat_corollary_rhs);
    }
    b.ok = ok;
    return b;
}

VelocityRestriction velocity_restriction(const std::vector<SharpField>& v, const Chain& body,
                                         const PiecewiseAffineMap& kappa)
{
    VelocityRestriction out;
    out.image = pushforward(kappa, body);
    const int r = body.dim();
    out.map_lip = lipschitz_constant(kappa, support(body));
    const auto region = support(out.image);
    const double m_image = mass(out.image);
    const double m_body = mass(body);
    const bool normal = r >= 1 && body.is_cellular();
    const double n_image = normal ? normal_norm(out.image) : m_image;
    const double n_body = normal ? normal_norm(body) : m_body;
    out.ok = true;
    for (const auto& vi : v) {
        require(vi.complex() == kappa.image_complex(), "velocity must live on the image complex");
        VelocityRestriction::Component c;
        c.chain = multiply(vi, out.image);
        c.sup = vi.sup_abs(region);
        c.lip = vi.lipschitz(region);
        c.mass = mass(c.chain);
        c.mass_image_bound = c.sup * m_image;
        c.mass_bound = c.sup * power(out.map_lip, r) * m_body;
        c.normal = normal ? normal_norm(c.chain) : c.mass;
        c.normal_image_bound = (c.sup + r * c.lip) * n_image;
        c.normal_bound = (c.sup + r * c.lip) * std::max(power(out.map_lip, r), power(out.map_lip, r - 1)) * n_body;
        out.ok = out.ok && holds(c.mass, c.mass_image_bound) && holds(c.mass_image_bound, c.mass_bound)
                 && holds(c.normal, c.normal_image_bound) && holds(c.normal_image_bound, c.normal_bound);
        out.components.push_back(std::move(c));
    }
    return out;
}

} // namespace gmt
