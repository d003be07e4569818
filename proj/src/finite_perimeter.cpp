#include <gmt/error.hpp>
#include <gmt/finite_perimeter.hpp>
#include <gmt/geometry.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

namespace gmt {

std::size_t CellHash::operator()(const Cell& c) const noexcept
{
    std::size_t h = static_cast<std::size_t>(static_cast<std::uint32_t>(c[0]));
    h = h * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint32_t>(c[1]);
    h = h * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint32_t>(c[2]);
    return h ^ (h >> 29);
}

VoxelSet::VoxelSet(int n, double h, std::vector<Cell> cells)
    : m_n(n)
    , m_h(h)
    , m_cells(std::move(cells))
{
    require(n == 2 || n == 3, "voxel sets live in R^2 or R^3");
    require(h > 0, "grid spacing must be positive");
    for (auto& c : m_cells) {
        if (n == 2) c[2] = 0;
    }
    std::sort(m_cells.begin(), m_cells.end());
    m_cells.erase(std::unique(m_cells.begin(), m_cells.end()), m_cells.end());
    m_lookup.reserve(m_cells.size() * 2);
    m_lookup.insert(m_cells.begin(), m_cells.end());
}

double VoxelSet::measure() const
{
    return static_cast<double>(m_cells.size()) * std::pow(m_h, m_n);
}

std::pair<Cell, Cell> VoxelSet::bounds() const
{
    require(!m_cells.empty(), "bounds of an empty voxel set");
    Cell lo = m_cells.front(), hi = m_cells.front();
    for (const auto& c : m_cells) {
        for (int i = 0; i < 3; ++i) {
            lo[i] = std::min(lo[i], c[i]);
            hi[i] = std::max(hi[i], c[i]);
        }
    }
    return {lo, hi};
}

VoxelSet VoxelSet::intersection(const VoxelSet& other) const
{
    require(m_n == other.m_n && m_h == other.m_h, "voxel sets on different grids");
    std::vector<Cell> out;
    for (const auto& c : m_cells) {
        if (other.contains(c)) out.push_back(c);
    }
    return VoxelSet(m_n, m_h, std::move(out));
}

Face opposite(const Face& f)
{
    Face g = f;
    g.cell[f.axis] += f.side;
    g.side = -f.side;
    return g;
}

double MaterialSurface::measure() const
{
    return static_cast<double>(faces.size()) * std::pow(h, n - 1);
}

namespace {

// int_a^b sqrt(r^2 - t^2) dt
double arc_integral(double a, double b, double r)
{
    auto prim = [r](double t) {
        double u = std::clamp(t / r, -1.0, 1.0);
        return 0.5 * (t * std::sqrt(std::max(r * r - t * t, 0.0)) + r * r * std::asin(u));
    };
    return prim(b) - prim(a);
}

Cell face_key(const Face& f)
{
    // lower cell of the geometric face, with the axis folded in
    Cell c = f.cell;
    if (f.side < 0) c[f.axis] -= 1;
    return c;
}

int permutation_sign(const std::vector<int>& p)
{
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            if (p[i] > p[j]) s = -s;
        }
    }
    return s;
}

std::vector<std::vector<int>> permutations(std::vector<int> items)
{
    std::vector<std::vector<int>> out;
    std::sort(items.begin(), items.end());
    do {
        out.push_back(items);
    } while (std::next_permutation(items.begin(), items.end()));
    return out;
}

// Kuhn simplices of the face as lattice paths, with orientation coefficient
std::vector<std::pair<std::vector<Cell>, int>> face_simplices(const Face& f, int n)
{
    Cell base = f.cell;
    if (f.side > 0) base[f.axis] += 1;
    std::vector<int> rest;
    for (int i = 0; i < n; ++i) {
        if (i != f.axis) rest.push_back(i);
    }
    const int orient = f.side * ((f.axis % 2) ? -1 : 1);
    std::vector<std::pair<std::vector<Cell>, int>> out;
    for (const auto& perm : permutations(rest)) {
        std::vector<Cell> path{base};
        for (int a : perm) {
            Cell next = path.back();
            next[a] += 1;
            path.push_back(next);
        }
        out.push_back({path, orient * permutation_sign(perm)});
    }
    return out;
}

std::vector<std::pair<std::vector<Cell>, int>> cell_simplices(const Cell& c, int n)
{
    std::vector<int> axes(n);
    std::iota(axes.begin(), axes.end(), 0);
    std::vector<std::pair<std::vector<Cell>, int>> out;
    for (const auto& perm : permutations(axes)) {
        std::vector<Cell> path{c};
        for (int a : perm) {
            Cell next = path.back();
            next[a] += 1;
            path.push_back(next);
        }
        out.push_back({path, permutation_sign(perm)});
    }
    return out;
}

Vec3 lattice_point(const Cell& c, double h)
{
    return Vec3(c[0] * h, c[1] * h, c[2] * h);
}

// Face-only complex for a list of faces.
Chain faces_chain(int n, double h, const std::vector<Face>& faces)
{
    ComplexBuilder b(n);
    std::unordered_map<Cell, int, CellHash> index;
    auto vertex = [&](const Cell& c) {
        auto [it, inserted] = index.try_emplace(c, 0);
        if (inserted) it->second = b.add_vertex(lattice_point(c, h));
        return it->second;
    };
    std::vector<std::pair<std::vector<int>, int>> simplices;
    for (const auto& f : faces) {
        for (const auto& [path, sign] : face_simplices(f, n)) {
            std::vector<int> vs;
            for (const auto& c : path) vs.push_back(vertex(c));
            b.add_simplex(vs);
            simplices.push_back({vs, sign});
        }
    }
    Chain chain(b.build(), n - 1);
    for (const auto& [vs, sign] : simplices) chain.add_oriented(vs, sign);
    return chain;
}

} // namespace

double disk_box_area(const Vec3& center, double r, const Vec3& lo, const Vec3& hi)
{
    const double x0 = lo(0) - center(0), x1 = hi(0) - center(0);
    const double y0 = lo(1) - center(1), y1 = hi(1) - center(1);
    const double a = std::max(x0, -r), b = std::min(x1, r);
    if (a >= b || y0 >= y1) return 0.0;
    std::vector<double> cuts{a, b};
    for (double y : {y0, y1}) {
        if (std::abs(y) < r) {
            double t = std::sqrt(r * r - y * y);
            for (double c : {-t, t}) {
                if (c > a && c < b) cuts.push_back(c);
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    double area = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double l = cuts[i], u = cuts[i + 1];
        if (u <= l) continue;
        double mid = 0.5 * (l + u);
        double s = std::sqrt(std::max(r * r - mid * mid, 0.0));
        bool top_is_arc = y1 >= s;
        bool bottom_is_arc = y0 <= -s;
        double top = top_is_arc ? s : y1;
        double bottom = bottom_is_arc ? -s : y0;
        if (top <= bottom) continue;
        double arcs = (top_is_arc ? 1 : 0) + (bottom_is_arc ? 1 : 0);
        double consts = (top_is_arc ? 0.0 : y1) - (bottom_is_arc ? 0.0 : y0);
        area += consts * (u - l) + arcs * arc_integral(l, u, r);
    }
    return area;
}

DensityEstimate density(const Vec3& x, const VoxelSet& u, double r, std::uint64_t seed)
{
    require(r >= u.h() / 8, "density radius must be at least h/8");
    const double h = u.h();
    DensityEstimate est;
    if (u.n() == 2) {
        int i0 = static_cast<int>(std::floor((x(0) - r) / h)), i1 = static_cast<int>(std::floor((x(0) + r) / h));
        int j0 = static_cast<int>(std::floor((x(1) - r) / h)), j1 = static_cast<int>(std::floor((x(1) + r) / h));
        double inside = 0.0;
        for (int i = i0; i <= i1; ++i) {
            for (int j = j0; j <= j1; ++j) {
                if (!u.contains({i, j, 0})) continue;
                inside += disk_box_area(x, r, Vec3(i * h, j * h, 0), Vec3((i + 1) * h, (j + 1) * h, 0));
            }
        }
        est.value = inside / (std::numbers::pi * r * r);
        return est;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    int hits = 0;
    for (int s = 0; s < kDensitySamples3d;) {
        Vec3 d(unit(rng), unit(rng), unit(rng));
        if (d.squaredNorm() > 1.0) continue;
        ++s;
        Vec3 p = x + r * d;
        Cell c{static_cast<int>(std::floor(p(0) / h)), static_cast<int>(std::floor(p(1) / h)),
               static_cast<int>(std::floor(p(2) / h))};
        if (u.contains(c)) ++hits;
    }
    double frac = static_cast<double>(hits) / kDensitySamples3d;
    est.value = frac;
    est.standard_error = std::sqrt(frac * (1.0 - frac) / kDensitySamples3d);
    return est;
}

MaterialSurface measure_boundary(const VoxelSet& u)
{
    MaterialSurface s;
    s.n = u.n();
    s.h = u.h();
    for (const auto& c : u.cells()) {
        for (int axis = 0; axis < u.n(); ++axis) {
            for (int side : {-1, 1}) {
                Cell nb = c;
                nb[axis] += side;
                if (!u.contains(nb)) s.faces.push_back({c, axis, side});
            }
        }
    }
    return s;
}

Vec3 exterior_normal(const Face& f)
{
    Vec3 v = Vec3::Zero();
    v(f.axis) = f.side;
    return v;
}

VoxelComplex::VoxelComplex(const VoxelSet& u)
    : m_set(u)
{
    ComplexBuilder b(u.n());
    for (const auto& c : u.cells()) {
        for (const auto& [path, sign] : cell_simplices(c, u.n())) {
            std::vector<int> vs;
            for (const auto& p : path) {
                auto [it, inserted] = m_index.try_emplace(p, 0);
                if (inserted) it->second = b.add_vertex(lattice_point(p, u.h()));
                vs.push_back(it->second);
            }
            b.add_simplex(vs);
        }
    }
    m_complex = b.build();
}

int VoxelComplex::vertex(const Cell& p) const
{
    auto it = m_index.find(p);
    require(it != m_index.end(), "lattice point outside the voxel complex");
    return it->second;
}

Chain VoxelComplex::body() const
{
    Chain chain(m_complex, m_set.n());
    for (const auto& c : m_set.cells()) {
        for (const auto& [path, sign] : cell_simplices(c, m_set.n())) {
            std::vector<int> vs;
            for (const auto& p : path) vs.push_back(vertex(p));
            chain.add_oriented(vs, sign);
        }
    }
    return chain;
}

Chain VoxelComplex::surface(const MaterialSurface& s) const
{
    Chain chain(m_complex, m_set.n() - 1);
    for (const auto& f : s.faces) {
        for (const auto& [path, sign] : face_simplices(f, m_set.n())) {
            std::vector<int> vs;
            for (const auto& p : path) vs.push_back(vertex(p));
            chain.add_oriented(vs, sign);
        }
    }
    return chain;
}

Chain body_current(const VoxelSet& u)
{
    return VoxelComplex(u).body();
}

Chain surface_current(const VoxelSet& u, const MaterialSurface& selector)
{
    require(selector.n == u.n(), "selector dimension mismatch");
    for (const auto& f : selector.faces) {
        Cell nb = f.cell;
        nb[f.axis] += f.side;
        require(u.contains(f.cell) && !u.contains(nb), "face selector outside the measure-theoretic boundary");
    }
    return faces_chain(u.n(), u.h(), selector.faces);
}

double gauss_green_residual(const VoxelSet& u, const PolynomialForm& w)
{
    require(w.grade() == u.n() - 1, "Gauss-Green needs an (n-1)-form");
    double surface = evaluate(surface_current(u, measure_boundary(u)), w);
    double body = evaluate(body_current(u), w.d());
    return std::abs(surface - body);
}

HalfspaceRestriction restrict_halfspace(const Chain& a, const Vec3& lambda, double s)
{
    require(a.is_simplicial(), "half-space restriction needs constant densities");
    require(a.dim() >= 1, "half-space restriction needs a chain of dimension >= 1");
    const auto& k = *a.complex();
    const int n = a.ambient();
    const int m = a.dim();
    Vec3 lam = Vec3::Zero();
    lam.head(n) = lambda.head(n);

    ComplexBuilder b(n);
    std::map<std::array<double, 3>, int> index;
    auto vertex = [&](const Vec3& p) {
        std::array<double, 3> key{p(0), p(1), p(2)};
        auto [it, inserted] = index.try_emplace(key, 0);
        if (inserted) it->second = b.add_vertex(p);
        return it->second;
    };
    struct Piece
    {
        int dim;
        std::vector<int> vertices;
        double coefficient;
    };
    std::vector<Piece> restricted, bdry, cut;
    auto add_pieces = [&](std::vector<Piece>& out, const std::vector<SimplexPoints>& pieces, double coefficient) {
        for (const auto& piece : pieces) {
            std::vector<int> vs;
            for (const auto& p : piece) vs.push_back(vertex(p));
            b.add_simplex(vs);
            out.push_back({static_cast<int>(piece.size()) - 1, vs, coefficient});
        }
    };
    auto values_of = [&](const std::vector<Vec3>& pts) {
        std::vector<double> v;
        for (const auto& p : pts) v.push_back(lam.dot(p) - s);
        return v;
    };

    for (const auto& [id, p] : a.cells()) {
        const double c = p.constant_term();
        auto pts = k.points(m, id);
        auto v = values_of(pts);
        add_pieces(restricted, clip_simplex(pts, v, n), c);

        // slice with the hyperplane, oriented by the outward conormal
        std::vector<Vec3> slice;
        for (int i = 0; i <= m; ++i) {
            if (v[i] == 0.0) slice.push_back(pts[i]);
        }
        for (int i = 0; i <= m; ++i) {
            for (int j = i + 1; j <= m; ++j) {
                if ((v[i] > 0 && v[j] < 0) || (v[i] < 0 && v[j] > 0)) {
                    auto piece = clip_simplex(std::vector<Vec3>{pts[i], pts[j]}, std::vector<double>{v[i], v[j]}, n);
                    // the clipped edge contains the crossing point as its non-original endpoint
                    const Vec3& q = v[i] > 0 ? piece[0][1] : piece[0][0];
                    slice.push_back(q);
                }
            }
        }
        if (static_cast<int>(slice.size()) < m) continue;
        bool all_zero = std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
        bool one_sided = std::all_of(v.begin(), v.end(), [](double x) { return x >= 0.0; })
                         || std::all_of(v.begin(), v.end(), [](double x) { return x <= 0.0; });
        if (all_zero || one_sided) continue;

        Eigen::MatrixXd g(n, m);
        for (int j = 0; j < m; ++j) g.col(j) = (pts[j + 1] - pts[0]).head(n);
        Eigen::VectorXd l = lam.head(n);
        Eigen::VectorXd proj = g * (g.transpose() * g).ldlt().solve(g.transpose() * l);
        Vec3 nu = Vec3::Zero();
        nu.head(n) = -proj.normalized();
        MultiVector unit = k.edge_wedge(m, id) * (1.0 / k.edge_wedge(m, id).norm());
        MultiVector target = unit.contract(nu);

        std::vector<SimplexPoints> pieces;
        if (m == 1) {
            pieces.push_back({slice[0]});
        } else if (m == 2) {
            if (slice.size() == 2) pieces.push_back({slice[0], slice[1]});
        } else {
            Vec3 center = Vec3::Zero();
            for (const auto& q : slice) center += q;
            center /= static_cast<double>(slice.size());
            Vec3 e1 = (slice[0] - center).normalized();
            Vec3 e2 = nu.cross(e1);
            std::sort(slice.begin(), slice.end(), [&](const Vec3& p, const Vec3& q) {
                return std::atan2((p - center).dot(e2), (p - center).dot(e1))
                       < std::atan2((q - center).dot(e2), (q - center).dot(e1));
            });
            for (std::size_t i = 1; i + 1 < slice.size(); ++i) pieces.push_back({slice[0], slice[i], slice[i + 1]});
        }
        for (auto& piece : pieces) {
            double sign = m == 1 ? target[0] : edge_wedge(piece, n).dot(target);
            if (std::abs(sign) < 1e-300) continue;
            add_pieces(cut, {piece}, sign > 0 ? c : -c);
        }
    }

    Chain ba = boundary(a);
    for (const auto& [id, p] : ba.cells()) {
        auto pts = k.points(m - 1, id);
        add_pieces(bdry, clip_simplex(pts, values_of(pts), n), p.constant_term());
    }

    auto complex = b.build();
    HalfspaceRestriction out{Chain(complex, m), Chain(complex, m - 1), Chain(complex, m - 1)};
    for (const auto& pc : restricted) out.restricted.add_oriented(pc.vertices, pc.coefficient);
    for (const auto& pc : bdry) out.boundary_restricted.add_oriented(pc.vertices, pc.coefficient);
    for (const auto& pc : cut) out.cut.add_oriented(pc.vertices, pc.coefficient);
    return out;
}

double halfspace_identity_residual(const HalfspaceRestriction& r, const std::vector<PolynomialForm>& forms)
{
    double worst = 0.0;
    for (const auto& w : forms) {
        double lhs = evaluate(r.restricted, w.d());
        double rhs = evaluate(r.boundary_restricted, w) + evaluate(r.cut, w);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

Trace trace_current(const VoxelSet& p, const VoxelSet& m)
{
    require(p.n() == m.n() && p.h() == m.h(), "trace needs voxel sets on one grid");
    MaterialSurface bp = measure_boundary(p);
    MaterialSurface bm = measure_boundary(m);
    std::set<std::pair<Cell, int>> keys;
    for (const auto& f : bm.faces) keys.insert({face_key(f), f.axis});
    for (const auto& f : bp.faces) {
        if (keys.count({face_key(f), f.axis})) fail("trace generator overlaps boundary");
    }
    Trace t;
    t.body = p;
    t.generator = m;
    t.faces.n = p.n();
    t.faces.h = p.h();
    for (const auto& f : bp.faces) {
        if (m.contains(f.cell)) t.faces.faces.push_back(f);
    }
    t.chain = faces_chain(p.n(), p.h(), t.faces.faces);
    return t;
}

double integrate_box(const Polynomial& f, const Vec3& lo, const Vec3& hi, int n)
{
    double total = 0.0;
    for (const auto& [e, c] : f.terms()) {
        double term = c;
        for (int i = 0; i < n; ++i) {
            if (lo(i) == hi(i)) {
                term *= std::pow(lo(i), e[i]);
            } else {
                term *= (std::pow(hi(i), e[i] + 1) - std::pow(lo(i), e[i] + 1)) / (e[i] + 1);
            }
        }
        total += term;
    }
    return total;
}

double trace_direct(const VoxelSet& p, const VoxelSet& m, const PolynomialForm& w)
{
    const int n = p.n();
    const double h = p.h();
    require(w.grade() == n - 1 && w.ambient() == n, "trace evaluation needs an (n-1)-form");
    const Polynomial g = w.d()[(1u << n) - 1];
    double body = 0.0;
    for (const auto& c : p.cells()) {
        if (!m.contains(c)) continue;
        Vec3 lo = lattice_point(c, h);
        Vec3 hi = lo + Vec3::Constant(h);
        if (n == 2) hi(2) = lo(2);
        body += integrate_box(g, lo, hi, n);
    }
    double surface = 0.0;
    for (const auto& f : measure_boundary(m).faces) {
        Cell nb = f.cell;
        nb[f.axis] += f.side;
        if (!(p.contains(f.cell) && p.contains(nb))) continue;
        Vec3 lo = lattice_point(f.cell, h);
        if (f.side > 0) lo(f.axis) += h;
        Vec3 hi = lo;
        BasisMask rest = 0;
        for (int i = 0; i < n; ++i) {
            if (i == f.axis) continue;
            hi(i) += h;
            rest |= 1u << i;
        }
        double orient = f.side * ((f.axis % 2) ? -1.0 : 1.0);
        surface += orient * integrate_box(w[rest], lo, hi, n);
    }
    return body - surface;
}

std::vector<Vec3> koch_polygon(int level)
{
    require(level >= 0 && level <= 6, "Koch level must be in 0..6");
    std::vector<Vec3> poly{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)};
    for (int l = 0; l < level; ++l) {
        std::vector<Vec3> next;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Vec3& a = poly[i];
            const Vec3& b = poly[(i + 1) % poly.size()];
            Vec3 d = (b - a) / 4.0;
            Vec3 nrm(-d(1), d(0), 0.0);
            const std::array<Vec3, 8> pts{a, a + d, a + d + nrm, a + 2 * d + nrm, a + 2 * d, a + 2 * d - nrm,
                                          a + 3 * d - nrm, a + 3 * d};
            next.insert(next.end(), pts.begin(), pts.end());
        }
        poly = std::move(next);
    }
    return poly;
}

VoxelSet koch_prefractal(int level, double h)
{
    require(h > 0, "grid spacing must be positive");
    const double feature = std::pow(0.25, level);
    const double steps = feature / h;
    if (std::abs(steps - std::round(steps)) > 1e-9 || std::round(steps) < 1) {
        fail("resolution too coarse for Koch level " + std::to_string(level));
    }
    auto poly = koch_polygon(level);
    // integer vertices on the grid; edges are axis-aligned
    std::vector<std::array<long, 2>> v;
    for (const auto& p : poly) v.push_back({std::lround(p(0) / h), std::lround(p(1) / h)});
    long ymin = v[0][1], ymax = v[0][1];
    for (const auto& q : v) {
        ymin = std::min(ymin, q[1]);
        ymax = std::max(ymax, q[1]);
    }
    std::vector<Cell> cells;
    std::vector<long> xs;
    for (long j = ymin; j < ymax; ++j) {
        xs.clear();
        // scanline through cell centres: crossings of vertical edges
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto& a = v[i];
            const auto& b = v[(i + 1) % v.size()];
            if (a[0] != b[0]) continue;
            long lo = std::min(a[1], b[1]), hi = std::max(a[1], b[1]);
            if (j >= lo && j < hi) xs.push_back(a[0]);
        }
        std::sort(xs.begin(), xs.end());
        for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
            for (long x = xs[i]; x < xs[i + 1]; ++x) cells.push_back({static_cast<int>(x), static_cast<int>(j), 0});
        }
    }
    return VoxelSet(2, h, std::move(cells));
}

void write_ppm(const std::string& path, const VoxelSet& u, int margin)
{
    require(u.n() == 2, "raster export is 2D only");
    require(!u.empty(), "raster export of an empty set");
    auto [lo, hi] = u.bounds();
    const int w = hi[0] - lo[0] + 1 + 2 * margin;
    const int ht = hi[1] - lo[1] + 1 + 2 * margin;
    std::vector<unsigned char> img(static_cast<std::size_t>(w) * ht * 3, 255);
    for (const auto& c : u.cells()) {
        bool edge = false;
        for (int axis = 0; axis < 2; ++axis) {
            for (int side : {-1, 1}) {
                Cell nb = c;
                nb[axis] += side;
                edge |= !u.contains(nb);
            }
        }
        int x = c[0] - lo[0] + margin;
        int y = hi[1] - c[1] + margin;
        unsigned char* px = &img[(static_cast<std::size_t>(y) * w + x) * 3];
        px[0] = edge ? 200 : 40;
        px[1] = edge ? 30 : 60;
        px[2] = edge ? 30 : 120;
    }
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), "cannot write " + path);
    out << "P6\n" << w << " " << ht << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data()), static_cast<std::streamsize>(img.size()));
}

} // namespace gmt
