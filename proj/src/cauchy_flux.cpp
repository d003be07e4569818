#include <gmt/battery.hpp>
#include <gmt/cauchy_flux.hpp>
#include <gmt/error.hpp>
#include <gmt/flat_norm.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <set>

namespace gmt {

namespace {

constexpr double kAgreeTol = 1e-10;
constexpr int kNormLattice = 8;

/// Barycentric lattice points with denominator q on a simplex with k + 1 vertices.
std::vector<std::vector<double>> lattice(int k, int q)
{
    std::vector<std::vector<double>> out;
    std::vector<int> c(k + 1, 0);
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == k) {
            c[k] = left;
            std::vector<double> l;
            for (int v : c) l.push_back(double(v) / q);
            out.push_back(std::move(l));
            return;
        }
        for (int v = 0; v <= left; ++v) {
            c[i] = v;
            self(self, i + 1, left - v);
        }
    };
    rec(rec, 0, q);
    return out;
}

Vec3 point_at(const std::vector<Vec3>& pts, const std::vector<double>& l)
{
    Vec3 x = Vec3::Zero();
    for (std::size_t i = 0; i < pts.size(); ++i) x += l[i] * pts[i];
    return x;
}

/// Wedges of all grade-sized subsets of the edges of a simplex from its first vertex.
std::vector<MultiVector> tangent_multivectors(const std::vector<Vec3>& pts, int n, int grade)
{
    std::vector<Vec3> edges;
    for (std::size_t i = 1; i < pts.size(); ++i) edges.push_back(pts[i] - pts[0]);
    std::vector<MultiVector> out;
    const int k = static_cast<int>(edges.size());
    for (unsigned m = 0; m < (1u << k); ++m) {
        if (std::popcount(m) != grade) continue;
        std::vector<Vec3> sel;
        for (int i = 0; i < k; ++i) {
            if (m & (1u << i)) sel.push_back(edges[i]);
        }
        out.push_back(MultiVector::wedge(sel, n));
    }
    return out;
}

std::vector<MultiVector> unit_multivectors(int n, int grade)
{
    std::vector<MultiVector> out;
    for (BasisMask m : basis_masks(n, grade)) {
        MultiVector e(n, grade);
        e[m] = 1.0;
        out.push_back(e);
    }
    return out;
}

bool agree(const PolynomialForm& a, const PolynomialForm& b, const std::vector<Vec3>& pts,
           const std::vector<MultiVector>& directions)
{
    const int q = std::max({1, a.degree(), b.degree()});
    for (const auto& l : lattice(static_cast<int>(pts.size()) - 1, q)) {
        Vec3 x = point_at(pts, l);
        for (const auto& e : directions) {
            double va = a(x, e);
            double vb = b(x, e);
            if (std::abs(va - vb) > kAgreeTol * (1 + std::abs(va) + std::abs(vb))) return false;
        }
    }
    return true;
}

/// Top simplices containing a simplex.
std::vector<int> tops_containing(const SimplicialComplex& k, SimplexKey s)
{
    const int n = k.ambient_dim();
    std::set<int> level{s.id};
    for (int dim = s.dim; dim < n; ++dim) {
        std::set<int> next;
        for (int id : level) {
            for (int c : k.cofaces(dim, id)) next.insert(c);
        }
        level = std::move(next);
    }
    return {level.begin(), level.end()};
}

/// Top cell whose piece evaluates a term on the carrier s.
int carrier_piece(const FlatForm& f, SimplexKey s, bool tangential)
{
    const auto& k = *f.complex();
    const int n = k.ambient_dim();
    if (s.dim == n) return s.id;
    auto tops = tops_containing(k, s);
    require(!tops.empty(), "chain outside the form's domain");
    if (tops.size() > 1) {
        auto pts = k.points(s.dim, s.id);
        auto dirs = tangential ? tangent_multivectors(pts, n, f.grade()) : unit_multivectors(n, f.grade());
        for (std::size_t i = 1; i < tops.size(); ++i) {
            if (!agree(f.piece(tops[0]), f.piece(tops[i]), pts, dirs)) fail("form discontinuous on carrier");
        }
    }
    return tops[0];
}

double sup_comass(const PolynomialForm& w, const std::vector<Vec3>& pts, bool& exact)
{
    if (w.is_zero()) return 0.0;
    int q = 1;
    if (w.degree() > 1) {
        q = kNormLattice;
        exact = false;
    }
    double s = 0.0;
    for (const auto& l : lattice(static_cast<int>(pts.size()) - 1, q)) s = std::max(s, w.comass_at(point_at(pts, l)));
    return s;
}

void require_velocity(const CauchyFlux& phi, const std::vector<SharpField>& v)
{
    require(static_cast<int>(v.size()) == phi.ambient(), "one velocity component per ambient direction is required");
    for (const auto& vi : v) {
        require(vi.complex() == phi.kappa().image_complex(), "velocity must live on the image complex");
    }
}

double holds_scale(double a, double b, double c)
{
    return std::max({1.0, std::abs(a), std::abs(b), std::abs(c)});
}

} // namespace

FlatForm::FlatForm(ComplexPtr complex, int grade, const std::map<int, PolynomialForm>& pieces)
{
    init(std::move(complex), grade, pieces);
    const int n = ambient();
    if (grade < n) {
        for (int id = 0; id < num_pieces(); ++id) m_derivative[id] = m_pieces[id].d();
    }
}

FlatForm::FlatForm(ComplexPtr complex, int grade, const std::map<int, PolynomialForm>& pieces,
                   const std::map<int, PolynomialForm>& derivative)
{
    init(std::move(complex), grade, pieces);
    const int n = ambient();
    require(grade < n || derivative.empty(), "a top-degree form has no derivative");
    for (const auto& [id, w] : derivative) {
        require(id >= 0 && id < num_pieces(), "derivative piece is not a top simplex");
        require(w.ambient() == n && w.grade() == grade + 1, "derivative piece has the wrong grade");
        m_derivative[id] = w;
    }
    for (int id = 0; id < num_pieces() && grade < n; ++id) {
        auto diff = m_pieces[id].d() - m_derivative[id];
        if (!diff.components().is_zero() && diff.components().max_abs_coefficient() > 1e-12) m_derived = false;
    }
}

void FlatForm::init(ComplexPtr complex, int grade, const std::map<int, PolynomialForm>& pieces)
{
    require(complex != nullptr, "flat form needs a complex");
    const int n = complex->ambient_dim();
    require(complex->top_dim() == n, "flat forms live on the top cells of a full-dimensional complex");
    require(grade >= 0 && grade <= n, "form grade out of range");
    m_complex = std::move(complex);
    m_grade = grade;
    const int count = m_complex->num_simplices(n);
    m_pieces.assign(count, PolynomialForm(n, grade));
    m_derivative.assign(count, grade < n ? PolynomialForm(n, grade + 1) : PolynomialForm());
    for (const auto& [id, w] : pieces) {
        require(id >= 0 && id < count, "form piece is not a top simplex");
        require(w.ambient() == n && w.grade() == grade, "form piece has the wrong grade");
        m_pieces[id] = w;
    }
    m_jump_free = true;
    if (grade == n) return;
    const auto& k = *m_complex;
    for (int f = 0; f < k.num_simplices(n - 1) && m_jump_free; ++f) {
        auto co = k.cofaces(n - 1, f);
        if (co.size() < 2) continue;
        auto pts = k.points(n - 1, f);
        auto dirs = tangent_multivectors(pts, n, grade);
        for (std::size_t i = 1; i < co.size(); ++i) {
            if (!agree(m_pieces[co[0]], m_pieces[co[i]], pts, dirs)) {
                m_jump_free = false;
                break;
            }
        }
    }
}

FlatForm FlatForm::global(ComplexPtr complex, const PolynomialForm& d)
{
    std::map<int, PolynomialForm> pieces;
    const int n = complex->ambient_dim();
    for (int id = 0; id < complex->num_simplices(n); ++id) pieces.emplace(id, d);
    return FlatForm(std::move(complex), d.grade(), pieces);
}

FlatForm FlatForm::zero(ComplexPtr complex, int grade)
{
    return FlatForm(std::move(complex), grade, {});
}

FormNorm FlatForm::norm() const
{
    FormNorm r;
    const int n = ambient();
    for (int id = 0; id < num_pieces(); ++id) {
        auto pts = m_complex->points(n, id);
        r.form = std::max(r.form, sup_comass(m_pieces[id], pts, r.exact));
        if (m_grade < n) r.derivative = std::max(r.derivative, sup_comass(m_derivative[id], pts, r.exact));
    }
    r.value = std::max(r.form, r.derivative);
    return r;
}

FlatForm wedge(const FlatForm& a, const FlatForm& b)
{
    require(a.complex() == b.complex(), "forms live on different complexes");
    const int n = a.ambient();
    const int m = a.grade();
    require(m + b.grade() <= n, "wedge grade exceeds the ambient dimension");
    std::map<int, PolynomialForm> pieces;
    std::map<int, PolynomialForm> derivative;
    for (int id = 0; id < a.num_pieces(); ++id) {
        pieces.emplace(id, a.piece(id).wedge(b.piece(id)));
        if (m + b.grade() < n) {
            PolynomialForm d(n, m + b.grade() + 1);
            if (m < n) d += a.derivative(id).wedge(b.piece(id));
            if (b.grade() < n) d += (m % 2 ? -1.0 : 1.0) * a.piece(id).wedge(b.derivative(id));
            derivative.emplace(id, d);
        }
    }
    return FlatForm(a.complex(), m + b.grade(), pieces, derivative);
}

double wolfe_evaluate(const Cochain& x, const Chain& a)
{
    const auto& f = x.form;
    require(a.dim() == f.grade(), "chain and cochain grades differ");
    if (a.is_zero()) return 0.0;
    require(a.complex() == f.complex(), "chain and cochain live on different complexes");
    double total = 0.0;
    for (const auto& [id, p] : a.cells()) {
        int top = carrier_piece(f, {a.dim(), id}, true);
        Chain single(a.complex(), a.dim());
        single.add_cell(id, p);
        total += evaluate(single, f.piece(top));
    }
    for (const auto& [key, eta] : a.integration_terms()) {
        int top = carrier_piece(f, key, false);
        Chain single(a.complex(), a.dim());
        single.add_integration(key, eta);
        total += evaluate(single, f.piece(top));
    }
    return total;
}

double wolfe_evaluate(const Cochain& x, const WolfeInput& a)
{
    const auto& f = x.form;
    const int n = f.ambient();
    auto part = [&](const Chain& c, int grade, bool derivative) {
        if (c.complex() == nullptr || c.is_zero()) return 0.0;
        require(c.dim() == grade, "Wolfe input has the wrong grade");
        require(c.complex() == f.complex(), "Wolfe input lives on a different complex");
        double total = 0.0;
        auto piece = [&](int id) -> const PolynomialForm& { return derivative ? f.derivative(id) : f.piece(id); };
        for (const auto& [id, p] : c.cells()) {
            require(c.dim() == n, "Wolfe input must be carried by top cells");
            Chain single(c.complex(), c.dim());
            single.add_cell(id, p);
            total += evaluate(single, piece(id));
        }
        for (const auto& [key, eta] : c.integration_terms()) {
            require(key.dim == n, "Wolfe input must be carried by top cells");
            Chain single(c.complex(), c.dim());
            single.add_integration(key, eta);
            total += evaluate(single, piece(key.id));
        }
        return total;
    };
    double v = part(a.eta, f.grade(), false);
    if (a.xi.complex() != nullptr && !a.xi.is_zero()) {
        require(f.grade() < n, "a top-degree form has no derivative");
        v += part(a.xi, f.grade() + 1, true);
    }
    return v;
}

Cochain coboundary(const Cochain& x)
{
    const int n = x.form.ambient();
    require(x.grade() < n, "coboundary of a top-degree cochain");
    std::map<int, PolynomialForm> pieces;
    for (int id = 0; id < x.form.num_pieces(); ++id) pieces.emplace(id, x.form.derivative(id));
    std::map<int, PolynomialForm> zero;
    if (x.grade() + 1 < n) {
        for (int id = 0; id < x.form.num_pieces(); ++id) zero.emplace(id, PolynomialForm(n, x.grade() + 2));
    }
    return {FlatForm(x.form.complex(), x.grade() + 1, pieces, zero), "d" + x.label};
}

CauchyFlux::CauchyFlux(std::vector<Cochain> components, PiecewiseAffineMap kappa)
    : m_components(std::move(components))
    , m_kappa(std::move(kappa))
{
    const int n = m_kappa.target_ambient();
    require(m_kappa.domain()->ambient_dim() == n, "configuration must map R^n to R^n");
    require(static_cast<int>(m_components.size()) == n, "a flux needs one cochain per ambient direction");
    for (const auto& c : m_components) {
        require(c.grade() == n - 1, "flux components are (n-1)-cochains");
        require(c.form.complex() == m_kappa.image_complex(), "flux components must live on the image complex");
    }
}

double CauchyFlux::flat_norm() const
{
    double f = 0.0;
    for (const auto& c : m_components) f = std::max(f, c.flat_norm());
    return f;
}

std::vector<double> flux_components(const CauchyFlux& phi, const Chain& s, const std::vector<SharpField>& v)
{
    require_velocity(phi, v);
    require(s.dim() == phi.ambient() - 1, "material surfaces are (n-1)-chains");
    Chain image = pushforward(phi.kappa(), s);
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(wolfe_evaluate(phi.components()[i], multiply(v[i], image)));
    return out;
}

double flux_eval(const CauchyFlux& phi, const Chain& s, const std::vector<SharpField>& v)
{
    double total = 0.0;
    for (double c : flux_components(phi, s, v)) total += c;
    return total;
}

BalanceReport balance_report(const CauchyFlux& phi, const std::vector<FluxProbe>& surfaces,
                             const std::vector<FluxProbe>& bodies)
{
    require(!surfaces.empty() && !bodies.empty(), "balance batteries must be nonempty");
    const int n = phi.ambient();
    BalanceReport r;
    r.flat_norm = phi.flat_norm();
    r.s_bound = r.flat_norm;
    r.b_bound = (n + 1) * r.flat_norm;

    auto ratio = [&](const FluxProbe& p, const Chain& image, const Chain& carrier, double& best, int index) {
        require_velocity(phi, p.v);
        const double m = mass(image);
        if (m == 0.0) {
            ++r.skipped;
            r.warnings.push_back("battery element " + std::to_string(index) + " has zero mass, skipped");
            return;
        }
        auto region = support(image);
        for (int i = 0; i < n; ++i) {
            double norm = sharp_norm(p.v[i], region).norm;
            if (norm == 0.0) continue;
            double value = wolfe_evaluate(phi.components()[i], multiply(p.v[i], carrier));
            best = std::max(best, std::abs(value) / (norm * m));
            ++r.evaluated;
        }
    };
    for (std::size_t j = 0; j < surfaces.size(); ++j) {
        require(surfaces[j].chain.dim() == n - 1, "surface battery holds (n-1)-chains");
        Chain image = pushforward(phi.kappa(), surfaces[j].chain);
        ratio(surfaces[j], image, image, r.s_hat, static_cast<int>(j));
    }
    for (std::size_t j = 0; j < bodies.size(); ++j) {
        require(bodies[j].chain.dim() == n, "body battery holds n-chains");
        Chain image = pushforward(phi.kappa(), bodies[j].chain);
        ratio(bodies[j], image, boundary(image), r.b_hat, static_cast<int>(surfaces.size() + j));
    }
    r.pass = r.s_hat <= r.s_bound * (1 + kBalanceTol) + kBalanceTol
             && r.b_hat <= r.b_bound * (1 + kBalanceTol) + kBalanceTol;
    return r;
}

SimplicialFluxTable induced_table(const Cochain& x)
{
    const int n = x.form.ambient();
    require(x.grade() == n - 1, "flux tables hold (n-1)-cochains");
    SimplicialFluxTable t;
    t.complex = x.form.complex();
    for (int id = 0; id < t.complex->num_simplices(n - 1); ++id) {
        Chain s(t.complex, n - 1);
        s.add_cell(id, 1.0);
        double v = wolfe_evaluate(x, s);
        if (v != 0.0) t.values[id] = v;
    }
    auto norm = x.form.norm();
    t.s = norm.form;
    t.b = norm.derivative;
    return t;
}

double table_evaluate(const SimplicialFluxTable& t, const Chain& a)
{
    if (a.is_zero()) return 0.0;
    require(a.complex() == t.complex, "chain and table live on different complexes");
    require(a.dim() == t.complex->ambient_dim() - 1, "flux tables act on (n-1)-chains");
    require(a.is_simplicial(), "flux tables act on polyhedral chains only");
    double v = 0.0;
    for (const auto& [id, p] : a.cells()) {
        auto it = t.values.find(id);
        if (it != t.values.end()) v += p.constant_term() * it->second;
    }
    return v;
}

TableBounds table_bounds(const SimplicialFluxTable& t)
{
    require(t.complex != nullptr, "flux table needs a complex");
    const auto& k = *t.complex;
    const int n = k.ambient_dim();
    TableBounds r;
    for (const auto& [id, v] : t.values) {
        require(id >= 0 && id < k.num_simplices(n - 1), "flux table entry is not an (n-1)-simplex");
        const double vol = k.volume(n - 1, id);
        if (vol > 0) {
            r.s_observed = std::max(r.s_observed, std::abs(v) / vol);
        } else if (v != 0.0) {
            r.s_observed = std::numeric_limits<double>::infinity();
        }
    }
    for (int id = 0; id < k.num_simplices(n); ++id) {
        const double vol = k.volume(n, id);
        if (vol <= 0) continue;
        Chain tau(t.complex, n);
        tau.add_cell(id, 1.0);
        r.b_observed = std::max(r.b_observed, std::abs(table_evaluate(t, boundary(tau))) / vol);
    }
    r.flat_lower = std::max(r.s_observed, r.b_observed);
    r.ok = r.s_observed <= t.s * (1 + 1e-9) + 1e-12 && r.b_observed <= t.b * (1 + 1e-9) + 1e-12;
    return r;
}

FluxExtension extend_flux(const SimplicialFluxTable& t, const Chain& target, const std::vector<Chain>& refinement)
{
    require(!refinement.empty(), "refinement sequence is empty");
    require(table_bounds(t).ok, "flux table violates its bounds");
    const double c = std::max(t.s, t.b);
    FluxExtension r;
    for (std::size_t j = 0; j < refinement.size(); ++j) {
        const auto& a = refinement[j];
        r.values.push_back(table_evaluate(t, a));
        r.distances.push_back(flat_distance(a, target));
        if (j > 0) {
            const double prev = r.distances[j - 1];
            if (!(r.distances[j] < prev || prev <= 1e-12)) fail("refinement not converging");
            r.step_differences.push_back(std::abs(r.values[j] - r.values[j - 1]));
            r.step_bounds.push_back(c * flat_distance(a, refinement[j - 1]));
            if (r.step_differences.back() > r.step_bounds.back() * (1 + 1e-9) + 1e-12) r.steps_ok = false;
        }
    }
    r.value = r.values.back();
    r.gap = c * r.distances.back();
    return r;
}

double table_flux(const SimplicialFluxTable& t, const std::vector<int>& simplices,
                  const std::function<double(const Vec3&)>& u)
{
    const auto& k = *t.complex;
    const int n = k.ambient_dim();
    double v = 0.0;
    for (int id : simplices) {
        auto it = t.values.find(id);
        if (it == t.values.end()) continue;
        double mean = 0.0;
        for (int i : k.simplex(n - 1, id)) mean += u(k.vertex(i));
        v += it->second * mean / n;
    }
    return v;
}

WellDefinedReport well_defined_check(const SimplicialFluxTable& t, int trials, std::uint64_t seed)
{
    require(t.complex != nullptr, "flux table needs a complex");
    const auto& k = *t.complex;
    const int n = k.ambient_dim();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-1, 1);
    WellDefinedReport r;
    const int count = k.num_simplices(n - 1);
    if (count == 0) return r;
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<int> order(count);
        for (int i = 0; i < count; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        std::set<int> used;
        std::vector<int> chosen;
        std::vector<std::pair<Vec3, double>> samples;
        for (int id : order) {
            auto vs = k.simplex(n - 1, id);
            if (std::any_of(vs.begin(), vs.end(), [&](int v) { return used.count(v) > 0; })) continue;
            if (static_cast<int>(chosen.size()) >= std::max(1, count / 4)) break;
            chosen.push_back(id);
            const double a = coef(rng);
            for (int v : vs) {
                used.insert(v);
                samples.push_back({k.vertex(v), a});
            }
        }
        double lip = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            for (std::size_t j = i + 1; j < samples.size(); ++j) {
                double dx = (samples[i].first - samples[j].first).norm();
                if (dx > 0) lip = std::max(lip, std::abs(samples[i].second - samples[j].second) / dx);
            }
        }
        LipschitzExtension tight(samples, lip);
        LipschitzExtension loose(samples, 2 * lip + 1);
        r.max_residual = std::max(r.max_residual, std::abs(table_flux(t, chosen, tight) - table_flux(t, chosen, loose)));
        ++r.trials;
    }
    return r;
}

KinematicInterpolation kinematic_interpolation(const PiecewiseAffineMap& kappa, const Chain& body,
                                               const std::vector<SharpField>& v)
{
    const int n = kappa.target_ambient();
    require(body.dim() == n, "bodies are n-chains");
    KinematicInterpolation r;
    r.image = pushforward(kappa, body);
    const Chain dimage = boundary(r.image);
    const double flat_body = mass(r.image);
    const auto region = support(r.image);
    r.bound_ok = true;
    auto battery = form_battery(n, n - 1, 10, 3, default_seed());
    for (const auto& vi : v) {
        require(vi.complex() == kappa.image_complex(), "velocity must live on the image complex");
        Chain eps = multiply(vi, dimage) - boundary(multiply(vi, r.image));
        Chain contraction = differential_contraction(vi, r.image);
        for (const auto& w : battery) {
            r.residual = std::max(r.residual, std::abs(evaluate(eps, w) - evaluate(contraction, w)));
        }
        const double lhs = std::min(mass(eps), mass(contraction));
        const double rhs = (n + 2) * sharp_norm(vi, region).norm * flat_body;
        r.flat_lhs.push_back(lhs);
        r.flat_rhs.push_back(rhs);
        r.bound_ok = r.bound_ok && lhs <= rhs * (1 + 1e-9) + 1e-12;
        r.components.push_back(std::move(eps));
        r.contractions.push_back(std::move(contraction));
    }
    return r;
}

VirtualWork virtual_work(const CauchyFlux& phi, const Chain& body, const std::vector<SharpField>& v)
{
    require_velocity(phi, v);
    const int n = phi.ambient();
    require(body.dim() == n, "bodies are n-chains");
    VirtualWork r;
    Chain image = pushforward(phi.kappa(), body);
    Chain dimage = pushforward(phi.kappa(), boundary(body));
    for (int i = 0; i < n; ++i) {
        const auto& psi = phi.components()[i];
        r.surface += wolfe_evaluate(psi, multiply(v[i], dimage));
        r.body_force -= wolfe_evaluate(coboundary(psi), multiply(v[i], image));
        r.internal += wolfe_evaluate(psi, differential_contraction(v[i], image));
    }
    r.residual = std::abs(r.surface + r.body_force - r.internal);
    r.scale = holds_scale(r.surface, r.body_force, r.internal);
    r.ok = r.residual <= kVirtualWorkTol * r.scale;
    return r;
}

double virtual_work_residual(const CauchyFlux& phi, const Chain& body, const std::vector<SharpField>& v)
{
    return virtual_work(phi, body, v).residual;
}

VirtualWork virtual_power_terms(const CauchyFlux& phi, const Chain& body, const std::vector<SharpField>& v)
{
    require_velocity(phi, v);
    const int n = phi.ambient();
    require(body.dim() == n && body.is_cellular(), "bodies are cellular n-chains");
    const auto& kappa = phi.kappa();
    require(body.complex() == kappa.domain(), "body must live on the reference complex");
    require(embedding_check(kappa).injective, "configuration is not injective");
    VirtualWork r;
    for (const auto& [id, p] : body.cells()) {
        const auto& piece = kappa.piece_for({n, id});
        Chain cell(body.complex(), n);
        cell.add_cell(id, p);
        for (int i = 0; i < n; ++i) {
            const auto& f = phi.components()[i].form;
            PolynomialForm vi = PolynomialForm::scalar(n, v[i].ambient_restriction({n, id}));
            PolynomialForm internal = vi.d().wedge(f.piece(id));
            PolynomialForm body_force = vi.wedge(f.derivative(id));
            auto pull = [&](const PolynomialForm& w) { return evaluate(cell, w.pullback_affine(piece.linear, piece.offset, n)); };
            const double a = pull(internal);
            const double b = pull(body_force);
            r.internal += a;
            r.body_force -= b;
            r.surface += a + b;
        }
    }
    r.residual = std::abs(r.surface + r.body_force - r.internal);
    r.scale = holds_scale(r.surface, r.body_force, r.internal);
    r.ok = r.residual <= kVirtualWorkTol * r.scale;
    return r;
}

std::vector<FlatForm> piola_kirchhoff(const CauchyFlux& phi)
{
    const auto& kappa = phi.kappa();
    const int n = phi.ambient();
    require(embedding_check(kappa).injective, "configuration is not injective");
    const auto& domain = kappa.domain();
    std::vector<FlatForm> out;
    for (const auto& psi : phi.components()) {
        std::map<int, PolynomialForm> pieces;
        std::map<int, PolynomialForm> derivative;
        for (int id = 0; id < domain->num_simplices(n); ++id) {
            const auto& piece = kappa.piece_for({n, id});
            if (piece.linear.topLeftCorner(n, n).determinant() <= 0) fail("orientation violation");
            pieces.emplace(id, psi.form.piece(id).pullback_affine(piece.linear, piece.offset, n));
            derivative.emplace(id, psi.form.derivative(id).pullback_affine(piece.linear, piece.offset, n));
        }
        out.emplace_back(domain, n - 1, pieces, derivative);
    }
    return out;
}

} // namespace gmt
