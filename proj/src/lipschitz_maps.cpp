#include <gmt/error.hpp>
#include <gmt/flat_norm.hpp>
#include <gmt/geometry.hpp>
#include <gmt/lipschitz_maps.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gmt {

namespace {

AffinePiece affine_piece(const SimplicialComplex& k, SimplexKey s, const std::vector<Vec3>& images, int target)
{
    const int n = k.ambient_dim();
    const int dim = s.dim;
    auto verts = k.simplex(dim, s.id);
    Eigen::MatrixXd x(n, dim), y(target, dim);
    for (int j = 0; j < dim; ++j) {
        x.col(j) = (k.vertex(verts[j + 1]) - k.vertex(verts[0])).head(n);
        y.col(j) = (images[verts[j + 1]] - images[verts[0]]).head(target);
    }
    require(!k.degenerate(dim, s.id), "map domain has a degenerate simplex");
    Eigen::MatrixXd gram = x.transpose() * x;
    Eigen::MatrixXd a = y * gram.ldlt().solve(x.transpose());
    AffinePiece p;
    p.simplex = s;
    p.linear.topLeftCorner(target, n) = a;
    p.offset = images[verts[0]] - p.linear * k.vertex(verts[0]);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, dim);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a * q);
    const auto& sv = svd.singularValues();
    p.sigma_max = sv.size() ? sv(0) : 0.0;
    p.sigma_min = sv.size() ? sv(sv.size() - 1) : 0.0;
    return p;
}

std::vector<SimplexKey> maximal_simplices(const SimplicialComplex& k)
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

} // namespace

PiecewiseAffineMap::PiecewiseAffineMap(ComplexPtr domain, std::vector<Vec3> images, int target_ambient)
    : m_domain(std::move(domain))
    , m_images(std::move(images))
    , m_target(target_ambient)
{
    const auto& k = *m_domain;
    require(m_target == 2 || m_target == 3, "map target must be R^2 or R^3");
    require(static_cast<int>(m_images.size()) == k.num_vertices(), "one image per domain vertex is required");
    require(k.top_dim() <= m_target, "target dimension below the domain dimension");
    for (auto& p : m_images) {
        for (int i = m_target; i < 3; ++i) p(i) = 0.0;
    }
    ComplexBuilder b(m_target);
    for (const auto& p : m_images) b.add_vertex(p);
    for (int dim = 1; dim <= kMaxSimplexDim; ++dim) {
        for (int id = 0; id < k.num_simplices(dim); ++id) b.add_simplex(k.simplex(dim, id));
    }
    m_image = b.build();
    for (SimplexKey s : maximal_simplices(k)) {
        m_piece_index[s] = static_cast<int>(m_pieces.size());
        m_pieces.push_back(affine_piece(k, s, m_images, m_target));
    }
}

PiecewiseAffineMap PiecewiseAffineMap::sample(ComplexPtr domain, const PointMap& f, int target_ambient)
{
    std::vector<Vec3> images;
    for (const auto& v : domain->vertices()) images.push_back(f(v));
    return PiecewiseAffineMap(std::move(domain), std::move(images), target_ambient);
}

const AffinePiece& PiecewiseAffineMap::piece_for(SimplexKey s) const
{
    const auto& k = *m_domain;
    for (;;) {
        if (auto it = m_piece_index.find(s); it != m_piece_index.end()) return m_pieces[it->second];
        auto up = k.cofaces(s.dim, s.id);
        require(!up.empty(), "no affine piece contains an isolated vertex");
        s = {s.dim + 1, up[0]};
    }
}

Vec3 PiecewiseAffineMap::at(SimplexKey s, std::span<const double> barycentric) const
{
    auto verts = m_domain->simplex(s.dim, s.id);
    Vec3 p = Vec3::Zero();
    for (int i = 0; i <= s.dim; ++i) p += barycentric[i] * m_images[verts[i]];
    return p;
}

PiecewiseAffineMap compose(const PiecewiseAffineMap& g, const PiecewiseAffineMap& f)
{
    require(g.domain() == f.image_complex(), "composition needs G defined on the image complex of F");
    return PiecewiseAffineMap(f.domain(), g.images(), g.target_ambient());
}

PiecewiseAffineMap refine(const PiecewiseAffineMap& f, const Subdivision& s)
{
    require(s.coarse == f.domain(), "subdivision of a different complex");
    std::vector<Vec3> images;
    for (SimplexKey o : s.origin) {
        Vec3 c = Vec3::Zero();
        for (int v : s.coarse->simplex(o.dim, o.id)) c += f.images()[v];
        images.push_back(c / static_cast<double>(o.dim + 1));
    }
    return PiecewiseAffineMap(s.fine, std::move(images), f.target_ambient());
}

double lipschitz_constant(const PiecewiseAffineMap& f, const std::vector<SimplexKey>& region)
{
    double lip = 0.0;
    if (region.empty()) {
        for (const auto& p : f.pieces()) lip = std::max(lip, p.sigma_max);
        return lip;
    }
    for (SimplexKey s : region) lip = std::max(lip, f.piece_for(s).sigma_max);
    return lip;
}

LipschitzReport embedding_check(const PiecewiseAffineMap& f)
{
    const auto& k = *f.domain();
    const auto& img = *f.image_complex();
    const int d = f.target_ambient();
    LipschitzReport r;
    r.min_singular = std::numeric_limits<double>::infinity();
    for (const auto& p : f.pieces()) {
        r.lip_upper = std::max(r.lip_upper, p.sigma_max);
        r.min_singular = std::min(r.min_singular, p.sigma_min);
    }
    if (f.pieces().empty()) r.min_singular = 0.0;
    r.immersion = !f.pieces().empty() && r.min_singular > kImmersionTol;

    // injectivity by exact separating-axis tests on image simplices
    const auto tops = maximal_simplices(k);
    std::vector<std::vector<Vec3>> pts;
    std::vector<std::pair<Vec3, Vec3>> boxes;
    for (SimplexKey s : tops) {
        pts.push_back(img.points(s.dim, s.id));
        Vec3 lo = pts.back()[0], hi = lo;
        for (const auto& p : pts.back()) {
            lo = lo.cwiseMin(p);
            hi = hi.cwiseMax(p);
        }
        boxes.push_back({lo, hi});
    }
    r.injective = true;
    for (std::size_t i = 0; i < tops.size() && r.injective; ++i) {
        for (std::size_t j = i + 1; j < tops.size(); ++j) {
            bool apart = false;
            for (int a = 0; a < d; ++a) {
                apart |= boxes[i].second(a) < boxes[j].first(a) || boxes[j].second(a) < boxes[i].first(a);
            }
            if (apart) continue;
            auto vi = k.simplex(tops[i].dim, tops[i].id);
            auto vj = k.simplex(tops[j].dim, tops[j].id);
            std::vector<std::pair<int, int>> shared;
            for (std::size_t a = 0; a < vi.size(); ++a) {
                for (std::size_t b = 0; b < vj.size(); ++b) {
                    if (vi[a] == vj[b]) shared.push_back({static_cast<int>(a), static_cast<int>(b)});
                }
            }
            bool overlap = shared.empty() ? simplices_intersect_exact(pts[i], pts[j], d)
                                          : adjacent_simplices_overlap_exact(pts[i], pts[j], shared, d);
            if (overlap) {
                r.injective = false;
                r.overlapping_pair = {tops[i], tops[j]};
                break;
            }
        }
    }
    r.embedding = r.immersion && r.injective;

    // sampled margin on a barycentric grid
    std::map<std::array<double, 3>, Vec3> samples;
    for (SimplexKey s : tops) {
        auto verts = k.simplex(s.dim, s.id);
        std::vector<int> idx(s.dim + 1, 0);
        std::function<void(int, int)> rec = [&](int pos, int left) {
            if (pos == s.dim) {
                idx[pos] = left;
                std::vector<double> lam;
                Vec3 x = Vec3::Zero();
                for (int i = 0; i <= s.dim; ++i) {
                    lam.push_back(static_cast<double>(idx[i]) / kMarginGrid);
                    x += lam.back() * k.vertex(verts[i]);
                }
                samples.try_emplace({x(0), x(1), x(2)}, f.at(s, lam));
                return;
            }
            for (int a = 0; a <= left; ++a) {
                idx[pos] = a;
                rec(pos + 1, left - a);
            }
        };
        rec(0, kMarginGrid);
    }
    std::vector<std::pair<Vec3, Vec3>> grid;
    for (const auto& [key, image] : samples) grid.push_back({Vec3(key[0], key[1], key[2]), image});
    if (grid.size() > static_cast<std::size_t>(kMarginMaxSamples)) {
        std::vector<std::pair<Vec3, Vec3>> thinned;
        const double stride = static_cast<double>(grid.size()) / kMarginMaxSamples;
        for (int i = 0; i < kMarginMaxSamples; ++i) thinned.push_back(grid[static_cast<std::size_t>(i * stride)]);
        grid = std::move(thinned);
    }
    r.sample_points = static_cast<int>(grid.size());
    r.margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            double dz = (grid[i].first - grid[j].first).norm();
            r.margin = std::min(r.margin, (grid[i].second - grid[j].second).norm() / dz);
        }
    }
    if (grid.size() < 2) r.margin = 0.0;
    r.bilip_lower = std::min(r.min_singular, r.margin);

    double shortest = std::numeric_limits<double>::infinity();
    for (int id = 0; id < k.num_simplices(1); ++id) shortest = std::min(shortest, k.volume(1, id));
    r.radius_over_lip = r.lip_upper > 0 && std::isfinite(shortest) ? shortest / r.lip_upper : 0.0;
    return r;
}

Chain pushforward(const PiecewiseAffineMap& f, const Chain& t)
{
    require(t.complex() == f.domain(), "chain is not on the map's domain complex");
    Chain out(f.image_complex(), t.dim());
    for (const auto& [id, p] : t.cells()) out.add_cell(id, p);
    const int n = f.domain()->ambient_dim();
    for (const auto& [key, eta] : t.integration_terms()) {
        const auto& piece = f.piece_for(key);
        require(piece.simplex.dim == n, "pushforward of an integration term needs a full-dimensional carrier");
        out.add_integration(key, eta.push(piece.linear, f.target_ambient()));
    }
    return out;
}

ClosedFormPushforward pushforward_closed_form(const PointMap& f, int target_ambient, const Chain& t, int d)
{
    require(d >= 0, "subdivision depth must be non-negative");
    require(t.is_cellular(), "closed-form pushforward needs a cellular chain");
    auto tower = subdivision_tower(t.complex(), d + 1);
    Chain td = t;
    for (int i = 0; i < d; ++i) td = subdivide(td, tower[i]);
    Chain tf = subdivide(td, tower[d]);
    ComplexPtr kd = td.complex();
    auto fd = PiecewiseAffineMap::sample(kd, f, target_ambient);
    auto ff = PiecewiseAffineMap::sample(tf.complex(), f, target_ambient);

    ClosedFormPushforward out;
    out.coarse = {d, pushforward(fd, td), 0.0};
    out.coarse.mass = mass(out.coarse.image);
    out.fine = {d + 1, pushforward(ff, tf), 0.0};
    out.fine.mass = mass(out.fine.image);

    auto lifted = refine(fd, tower[d]);
    for (std::size_t i = 0; i < ff.images().size(); ++i) {
        out.sup_distance = std::max(out.sup_distance, (ff.images()[i] - lifted.images()[i]).norm());
    }
    out.lip = std::max(lipschitz_constant(lifted), lipschitz_constant(ff));
    const int m = t.dim();
    double boundary_mass = m >= 1 ? mass(boundary(t)) : 0.0;
    out.indicator = out.sup_distance * (power(out.lip, m) * mass(t) + power(out.lip, m - 1) * boundary_mass);
    return out;
}

double pushforward_boundary_commutes(const PiecewiseAffineMap& f, const Chain& t)
{
    Chain diff = boundary(pushforward(f, t)) - pushforward(f, boundary(t));
    if (diff.is_zero()) return 0.0;
    return flat_norm_bound(diff);
}

PulledBackForm pullback_form(const PiecewiseAffineMap& f, const PolynomialForm& w)
{
    require(w.ambient() == f.target_ambient(), "form does not live on the map's target");
    const int n = f.domain()->ambient_dim();
    PulledBackForm out;
    out.grade = w.grade();
    for (const auto& p : f.pieces()) out.pieces.emplace(p.simplex, w.pullback_affine(p.linear, p.offset, n));
    return out;
}

double evaluate(const Chain& t, const PulledBackForm& w, const PiecewiseAffineMap& f)
{
    require(t.complex() == f.domain(), "chain is not on the map's domain complex");
    require(t.dim() == w.grade, "pulled-back form has the wrong grade");
    double total = 0.0;
    for (const auto& [id, p] : t.cells()) {
        Chain single(t.complex(), t.dim());
        single.add_cell(id, p);
        total += evaluate(single, w.pieces.at(f.piece_for({t.dim(), id}).simplex));
    }
    for (const auto& [key, eta] : t.integration_terms()) {
        Chain single(t.complex(), t.dim());
        single.add_integration(key, eta);
        total += evaluate(single, w.pieces.at(f.piece_for(key).simplex));
    }
    return total;
}

LipschitzExtension::LipschitzExtension(std::vector<std::pair<Vec3, double>> samples, double lip)
    : m_samples(std::move(samples))
    , m_lip(lip)
{
    require(!m_samples.empty(), "extension needs at least one sample");
    require(lip >= 0, "Lipschitz constant must be non-negative");
    for (std::size_t i = 0; i < m_samples.size(); ++i) {
        for (std::size_t j = i + 1; j < m_samples.size(); ++j) {
            double df = std::abs(m_samples[i].second - m_samples[j].second);
            double dx = lip * (m_samples[i].first - m_samples[j].first).norm();
            if (df > dx * (1 + 1e-12) + 1e-14) {
                std::ostringstream msg;
                msg << "samples " << i << " and " << j << " are not L-compatible: |f_i - f_j| = " << df
                    << " > L |x_i - x_j| = " << dx;
                fail(msg.str());
            }
        }
    }
}

double LipschitzExtension::operator()(const Vec3& x) const
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [p, v] : m_samples) best = std::min(best, v + m_lip * (x - p).norm());
    return best;
}

VectorLipschitzExtension::VectorLipschitzExtension(const std::vector<std::pair<Vec3, Vec3>>& samples, double lip,
                                                   int components)
{
    require(components >= 1 && components <= 3, "vector extension needs 1 to 3 components");
    for (int c = 0; c < components; ++c) {
        std::vector<std::pair<Vec3, double>> part;
        for (const auto& [x, v] : samples) part.push_back({x, v(c)});
        m_parts.emplace_back(std::move(part), lip);
    }
}

Vec3 VectorLipschitzExtension::operator()(const Vec3& x) const
{
    Vec3 out = Vec3::Zero();
    for (std::size_t c = 0; c < m_parts.size(); ++c) out(static_cast<int>(c)) = m_parts[c](x);
    return out;
}

NormBoundReport norm_bound_report(const PiecewiseAffineMap& f, const Chain& t)
{
    require(t.is_cellular(), "norm bounds need a cellular chain");
    NormBoundReport r;
    r.dim = t.dim();
    r.lip = lipschitz_constant(f, support(t));
    const Chain image = pushforward(f, t);
    const double l = r.lip;
    const int m = r.dim;
    r.mass_lhs = mass(image);
    r.mass_rhs = mass(t) * power(l, m);
    r.normal_lhs = m >= 1 ? normal_norm(image) : mass(image);
    r.normal_rhs = (m >= 1 ? normal_norm(t) : mass(t)) * std::max(power(l, m), power(l, m - 1));
    r.flat_lhs = flat_norm_bound(image);
    r.flat_rhs = flat_norm_bound(t) * std::max(power(l, m), power(l, m + 1));
    auto holds = [](double lhs, double rhs) { return lhs <= rhs * (1 + kNormBoundTol) + kNormBoundTol; };
    r.ok = holds(r.mass_lhs, r.mass_rhs) && holds(r.normal_lhs, r.normal_rhs) && holds(r.flat_lhs, r.flat_rhs);
    return r;
}

} // namespace gmt
