#include <gmt/battery.hpp>
#include <gmt/error.hpp>
#include <gmt/transport.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>

namespace gmt {

namespace {

constexpr double kRoundOffFloor = 1e-10;

Chain prism_of(const PiecewiseAffineMap& f, const PiecewiseAffineMap& g, const Chain& t)
{
    const auto& domain = *t.complex();
    const int r = t.dim();
    ComplexBuilder b(f.target_ambient());
    std::map<int, std::pair<int, int>> ends;
    for (const auto& [id, p] : t.cells()) {
        for (int v : domain.simplex(r, id)) {
            if (ends.count(v)) continue;
            int a = b.add_vertex(f.images()[v]);
            int top = b.add_vertex(g.images()[v]);
            ends[v] = {a, top};
        }
    }
    std::vector<std::pair<std::vector<int>, double>> pieces;
    for (const auto& [id, p] : t.cells()) {
        auto vs = domain.simplex(r, id);
        for (int i = 0; i <= r; ++i) {
            std::vector<int> q;
            for (int j = 0; j <= i; ++j) q.push_back(ends[vs[j]].first);
            for (int j = i; j <= r; ++j) q.push_back(ends[vs[j]].second);
            b.add_simplex(q);
            pieces.push_back({q, (i % 2 ? -1.0 : 1.0) * p.constant_term()});
        }
    }
    Chain out(b.build(), r + 1);
    for (const auto& [q, c] : pieces) out.add_oriented(q, c);
    return out;
}

} // namespace

Motion::Motion(ComplexPtr reference, std::vector<Trajectory> trajectories, double t_max)
    : m_reference(std::move(reference))
    , m_trajectories(std::move(trajectories))
    , m_t_max(t_max)
{
    require(m_reference != nullptr, "motion needs a reference complex");
    require(static_cast<int>(m_trajectories.size()) == m_reference->num_vertices(),
            "one trajectory per reference vertex is required");
    require(t_max > 0, "t_max must be positive");
    if (ambient() == 2) {
        for (const auto& c : m_trajectories) {
            require(c[0](2) == 0 && c[1](2) == 0 && c[2](2) == 0, "planar motion has a z component");
        }
    }
}

Motion Motion::fixed(ComplexPtr reference, double t_max)
{
    std::vector<Trajectory> c;
    for (const auto& p : reference->vertices()) c.push_back({p, Vec3::Zero(), Vec3::Zero()});
    return Motion(std::move(reference), std::move(c), t_max);
}

Motion Motion::dilation(ComplexPtr reference, double rate, double t_max)
{
    std::vector<Trajectory> c;
    for (const auto& p : reference->vertices()) c.push_back({p, rate * p, Vec3::Zero()});
    return Motion(std::move(reference), std::move(c), t_max);
}

Motion Motion::rotation(ComplexPtr reference, double omega, double t_max)
{
    require(reference->ambient_dim() == 2, "rotation motions are planar");
    std::vector<Trajectory> c;
    for (const auto& p : reference->vertices()) {
        Vec3 perp(-p(1), p(0), 0);
        c.push_back({p, omega * perp, -0.5 * omega * omega * p});
    }
    return Motion(std::move(reference), std::move(c), t_max);
}

Vec3 Motion::position(int vertex, double t) const
{
    const auto& c = m_trajectories[vertex];
    return c[0] + t * c[1] + t * t * c[2];
}

Vec3 Motion::velocity(int vertex, double t) const
{
    const auto& c = m_trajectories[vertex];
    return c[1] + 2 * t * c[2];
}

PiecewiseAffineMap Motion::at(double t) const
{
    std::vector<Vec3> images;
    for (int i = 0; i < m_reference->num_vertices(); ++i) images.push_back(position(i, t));
    return PiecewiseAffineMap(m_reference, std::move(images), ambient());
}

MotionCertificate certify(const Motion& m, int samples)
{
    MotionCertificate c;
    c.embedded = true;
    c.min_bilip = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= samples; ++j) {
        double t = samples > 0 ? m.t_max() * j / samples : 0.0;
        auto r = embedding_check(m.at(t));
        c.times.push_back(t);
        c.embedded = c.embedded && r.embedding;
        c.min_bilip = std::min(c.min_bilip, r.bilip_lower);
    }
    return c;
}

MaterialVelocity material_velocity(const Motion& m)
{
    const auto& k = m.reference();
    const int n = m.ambient();
    MaterialVelocity r;
    for (int i = 0; i < n; ++i) {
        std::vector<double> vals;
        for (int v = 0; v < k->num_vertices(); ++v) vals.push_back(m.velocity(v)(i));
        r.v.emplace_back(k, std::move(vals));
    }
    auto kappa = m.at(0.0);
    for (int id = 0; id < k->num_simplices(n); ++id) {
        const auto& piece = kappa.piece_for({n, id});
        if (piece.sigma_min <= kImmersionTol) fail("singular differential on simplex " + std::to_string(id));
        Eigen::MatrixXd a = piece.linear.topLeftCorner(n, n);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
        std::vector<Vec3> u;
        for (int v : k->simplex(n, id)) {
            Vec3 out = Vec3::Zero();
            out.head(n) = lu.solve(m.velocity(v).head(n));
            u.push_back(out);
        }
        r.u.push_back(std::move(u));
    }
    return r;
}

HomotopyPrism homotopy_prism(const PiecewiseAffineMap& f, const PiecewiseAffineMap& g, const Chain& t)
{
    require(f.domain() == g.domain(), "homotopy ends must share their domain");
    require(f.target_ambient() == g.target_ambient(), "homotopy ends must share their target");
    require(t.complex() == f.domain(), "chain must live on the domain of the homotopy");
    require(t.is_simplicial(), "homotopy prisms are built for simplicial chains");
    HomotopyPrism h;
    if (t.dim() + 1 > f.target_ambient()) {
        h.trivial = true;
        return h;
    }
    h.chain = prism_of(f, g, t);
    return h;
}

double homotopy_formula_residual(const PiecewiseAffineMap& f, const PiecewiseAffineMap& g, const Chain& t,
                                 int battery_size)
{
    const int r = t.dim();
    const int m = f.target_ambient();
    auto prism = homotopy_prism(f, g, t);
    Chain dprism = prism.trivial ? Chain() : boundary(prism.chain);
    HomotopyPrism side;
    side.trivial = true;
    if (r >= 1) side = homotopy_prism(f, g, boundary(t));
    Chain gt = pushforward(g, t);
    Chain ft = pushforward(f, t);
    double worst = 0.0;
    for (const auto& w : form_battery(m, r, battery_size, 3, default_seed())) {
        double v = evaluate(gt, w) - evaluate(ft, w);
        if (!prism.trivial) v -= evaluate(dprism, w);
        if (!side.trivial) v -= evaluate(side.chain, w);
        worst = std::max(worst, std::abs(v));
    }
    return worst;
}

double product_pushforward_residual(const PiecewiseAffineMap& kappa, const SharpField& psi, const Chain& t,
                                    int battery_size)
{
    require(psi.complex() == kappa.domain(), "field must live on the reference complex");
    Chain lhs = pushforward(kappa, multiply(psi, t));
    SharpField eulerian(kappa.image_complex(), psi.values());
    Chain rhs = multiply(eulerian, pushforward(kappa, t));
    double worst = 0.0;
    for (const auto& w : form_battery(kappa.target_ambient(), t.dim(), battery_size, 3, default_seed())) {
        worst = std::max(worst, std::abs(evaluate(lhs, w) - evaluate(rhs, w)));
    }
    return worst;
}

TransportLhs transport_lhs(const Motion& m, const SharpField& psi, const Chain& body, const PolynomialForm& w,
                           double eps)
{
    require(eps > 0 && eps <= m.t_max(), "eps must lie in (0, t_max]");
    require(w.grade() == body.dim(), "form grade must match the body");
    require(psi.complex() == m.reference() && body.complex() == m.reference(), "field and body must live on the reference complex");
    Chain weighted = multiply(psi, body);
    auto at = [&](double t) { return evaluate(pushforward(m.at(t), weighted), w); };
    TransportLhs r;
    r.value = (at(eps) - at(-eps)) / (2 * eps);
    r.half = (at(eps / 2) - at(-eps / 2)) / eps;
    r.richardson = (4 * r.half - r.value) / 3;
    return r;
}

TransportRhs transport_rhs(const Motion& m, const SharpField& psi, const Chain& body, const PolynomialForm& w)
{
    const int n = m.ambient();
    require(body.dim() == n && body.is_cellular(), "bodies are cellular n-chains");
    require(w.grade() == n, "transport is tested on n-forms");
    require(psi.complex() == m.reference() && body.complex() == m.reference(), "field and body must live on the reference complex");
    auto kappa = m.at(0.0);
    const auto& img = kappa.image_complex();
    for (const auto& [id, p] : body.cells()) {
        if (kappa.piece_for({n, id}).sigma_min <= kImmersionTol) {
            fail("singular differential on simplex " + std::to_string(id));
        }
    }
    SharpField psi0(img, psi.values());
    std::vector<SharpField> v;
    for (int i = 0; i < n; ++i) {
        std::vector<double> vals;
        for (int j = 0; j < img->num_vertices(); ++j) vals.push_back(m.velocity(j)(i));
        v.emplace_back(img, std::move(vals));
    }

    TransportRhs r;
    Chain weighted = multiply(psi0, pushforward(kappa, boundary(body)));
    for (const auto& [id, p] : weighted.cells()) {
        PolyVector u;
        for (int i = 0; i < kMaxAmbient; ++i) u[i] = i < n ? v[i].ambient_restriction({n - 1, id}) : Polynomial(n);
        Chain single(img, n - 1);
        single.add_cell(id, p);
        r.flux += evaluate(interior_product_vector(u, single), w);
    }
    Chain image = pushforward(kappa, body);
    Chain rate(img, n);
    for (const auto& [id, p] : image.cells()) {
        Vec3 g = psi0.gradient({n, id});
        std::vector<double> vals;
        for (int j : img->simplex(n, id)) {
            double dot = 0.0;
            for (int i = 0; i < n; ++i) dot += g(i) * v[i].values()[j];
            vals.push_back(-dot);
        }
        rate.add_cell(id, p * barycentric_affine(vals));
    }
    r.interior = evaluate(rate, w);
    r.value = r.flux + r.interior;
    return r;
}

TransportCheck transport_check(const Motion& m, const SharpField& psi, const Chain& body, const PolynomialForm& w,
                               const std::vector<double>& schedule, double final_eps)
{
    require(!schedule.empty(), "eps schedule is empty");
    TransportCheck c;
    c.rhs = transport_rhs(m, psi, body, w).value;
    c.scale = std::max(1.0, std::abs(c.rhs));
    const double floor = kRoundOffFloor * c.scale;
    for (double eps : schedule) {
        double lhs = transport_lhs(m, psi, body, w, eps).value;
        c.eps.push_back(eps);
        c.lhs.push_back(lhs);
        c.errors.push_back(std::abs(lhs - c.rhs));
    }
    const bool exact = std::all_of(c.errors.begin(), c.errors.end(), [&](double e) { return e <= floor; });
    c.slope_ok = true;
    if (!exact) {
        for (std::size_t i = 0; i + 1 < c.errors.size(); ++i) {
            if (c.errors[i] <= floor || c.errors[i + 1] <= floor) {
                c.slope_ok = false;
                continue;
            }
            double s = std::log(c.errors[i] / c.errors[i + 1]) / std::log(c.eps[i] / c.eps[i + 1]);
            c.slopes.push_back(s);
            if (std::abs(s - kSlopeTarget) > kSlopeTol) c.slope_ok = false;
        }
        if (c.slopes.empty()) c.slope_ok = false;
    }
    c.final_eps = final_eps;
    c.final_lhs = transport_lhs(m, psi, body, w, final_eps).value;
    c.final_error = std::abs(c.final_lhs - c.rhs);
    c.agreement_ok = c.final_error <= kTransportAgreement * c.scale;
    c.pass = c.slope_ok && c.agreement_ok;
    return c;
}

} // namespace gmt
