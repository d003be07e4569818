#include <gmt/error.hpp>
#include <gmt/geometry.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <array>

namespace gmt {

namespace {

// Same edge, same point: endpoints are put in lexicographic order first.
Vec3 lerp_zero(Vec3 p, double vp, Vec3 q, double vq)
{
    if (std::lexicographical_compare(q.data(), q.data() + 3, p.data(), p.data() + 3)) {
        std::swap(p, q);
        std::swap(vp, vq);
    }
    double t = vp / (vp - vq);
    return p + t * (q - p);
}

double signed_measure(std::span<const Vec3> pts, const MultiVector& reference, int ambient)
{
    return edge_wedge(pts, ambient).dot(reference);
}

void emit(std::vector<SimplexPoints>& out, SimplexPoints piece, const MultiVector& reference, int ambient)
{
    double s = signed_measure(piece, reference, ambient);
    double scale = reference.dot(reference);
    if (!(std::abs(s) > 1e-14 * scale)) return;
    if (s < 0) std::swap(piece[0], piece[1]);
    out.push_back(std::move(piece));
}

using Q3 = std::array<mpq_class, 3>;

Q3 to_q(const Vec3& p)
{
    return {mpq_class(p(0)), mpq_class(p(1)), mpq_class(p(2))};
}

Q3 sub(const Q3& a, const Q3& b)
{
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

Q3 cross(const Q3& a, const Q3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

mpq_class dot(const Q3& a, const Q3& b, int d)
{
    mpq_class s = 0;
    for (int i = 0; i < d; ++i) s += a[i] * b[i];
    return s;
}

bool is_zero(const Q3& a)
{
    return a[0] == 0 && a[1] == 0 && a[2] == 0;
}

std::vector<Q3> candidate_axes(const std::vector<Q3>& a, const std::vector<Q3>& b, int d)
{
    std::vector<Q3> axes;
    auto push = [&](const Q3& v) {
        if (!is_zero(v)) axes.push_back(v);
    };
    for (int i = 0; i < d; ++i) {
        Q3 e{0, 0, 0};
        e[i] = 1;
        axes.push_back(e);
    }
    auto edges_of = [](const std::vector<Q3>& s) {
        std::vector<Q3> e;
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t j = i + 1; j < s.size(); ++j) e.push_back(sub(s[j], s[i]));
        }
        return e;
    };
    auto ea = edges_of(a);
    auto eb = edges_of(b);
    if (d == 2) {
        for (const auto& e : ea) push({-e[1], e[0], 0});
        for (const auto& e : eb) push({-e[1], e[0], 0});
        for (const auto& e : ea) push(e);
        for (const auto& e : eb) push(e);
        return axes;
    }
    std::vector<Q3> normals;
    auto add_normals = [&](const std::vector<Q3>& e) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (std::size_t j = i + 1; j < e.size(); ++j) {
                Q3 n = cross(e[i], e[j]);
                if (!is_zero(n)) normals.push_back(n);
            }
        }
    };
    add_normals(ea);
    add_normals(eb);
    for (const auto& n : normals) push(n);
    for (const auto& x : ea) {
        for (const auto& y : eb) push(cross(x, y));
    }
    for (const auto& n : normals) {
        for (const auto& e : ea) push(cross(n, e));
        for (const auto& e : eb) push(cross(n, e));
    }
    for (const auto& e : ea) push(e);
    for (const auto& e : eb) push(e);
    return axes;
}

} // namespace

MultiVector edge_wedge(std::span<const Vec3> points, int ambient)
{
    std::vector<Vec3> edges;
    for (std::size_t j = 1; j < points.size(); ++j) edges.push_back(points[j] - points[0]);
    return MultiVector::wedge(edges, ambient);
}

std::vector<SimplexPoints> clip_simplex(std::span<const Vec3> pts, std::span<const double> v, int ambient)
{
    const int k = static_cast<int>(pts.size()) - 1;
    require(k >= 0 && k <= 3 && v.size() == pts.size(), "clip_simplex: bad simplex");
    std::vector<SimplexPoints> out;
    bool any_neg = false, any_pos = false;
    for (double x : v) {
        any_neg |= x < 0;
        any_pos |= x > 0;
    }
    if (!any_neg) {
        if (k == 0 || edge_wedge(pts, ambient).norm() > 0) out.emplace_back(pts.begin(), pts.end());
        return out;
    }
    if (!any_pos || k == 0) return out;
    MultiVector reference = edge_wedge(pts, ambient);
    if (k == 1) {
        Vec3 x = lerp_zero(pts[0], v[0], pts[1], v[1]);
        SimplexPoints s = v[0] > 0 ? SimplexPoints{pts[0], x} : SimplexPoints{x, pts[1]};
        emit(out, s, reference, ambient);
        return out;
    }
    if (k == 2) {
        std::vector<Vec3> poly;
        for (int i = 0; i < 3; ++i) {
            int j = (i + 1) % 3;
            if (v[i] >= 0) poly.push_back(pts[i]);
            if ((v[i] > 0 && v[j] < 0) || (v[i] < 0 && v[j] > 0)) poly.push_back(lerp_zero(pts[i], v[i], pts[j], v[j]));
        }
        for (std::size_t i = 1; i + 1 < poly.size(); ++i) emit(out, {poly[0], poly[i], poly[i + 1]}, reference, ambient);
        return out;
    }
    std::vector<int> pos, zero, neg;
    for (int i = 0; i < 4; ++i) (v[i] > 0 ? pos : v[i] < 0 ? neg : zero).push_back(i);
    auto cut = [&](int p, int n) { return lerp_zero(pts[p], v[p], pts[n], v[n]); };
    auto prism = [&](const std::array<Vec3, 3>& a, const std::array<Vec3, 3>& b) {
        emit(out, {a[0], a[1], a[2], b[0]}, reference, ambient);
        emit(out, {a[1], a[2], b[0], b[1]}, reference, ambient);
        emit(out, {a[2], b[0], b[1], b[2]}, reference, ambient);
    };
    if (pos.size() == 1) {
        SimplexPoints s{pts[pos[0]]};
        for (int z : zero) s.push_back(pts[z]);
        for (int n : neg) s.push_back(cut(pos[0], n));
        emit(out, s, reference, ambient);
    } else if (pos.size() == 3) {
        int n = neg[0];
        prism({pts[pos[0]], pts[pos[1]], pts[pos[2]]}, {cut(pos[0], n), cut(pos[1], n), cut(pos[2], n)});
    } else if (pos.size() == 2 && neg.size() == 2) {
        int p1 = pos[0], p2 = pos[1];
        prism({pts[p1], cut(p1, neg[0]), cut(p1, neg[1])}, {pts[p2], cut(p2, neg[0]), cut(p2, neg[1])});
    } else {
        // two positive, one zero, one negative: pyramid with apex at the zero vertex
        int p1 = pos[0], p2 = pos[1], z = zero[0], n = neg[0];
        Vec3 x1 = cut(p1, n), x2 = cut(p2, n);
        emit(out, {pts[z], pts[p1], pts[p2], x2}, reference, ambient);
        emit(out, {pts[z], pts[p1], x2, x1}, reference, ambient);
    }
    return out;
}

int orient_exact(std::span<const Vec3> points, int d)
{
    require(static_cast<int>(points.size()) == d + 1 && (d == 2 || d == 3), "orient_exact: bad input");
    Q3 o = to_q(points[0]);
    std::vector<Q3> e;
    for (int i = 1; i <= d; ++i) e.push_back(sub(to_q(points[i]), o));
    mpq_class det;
    if (d == 2) {
        det = e[0][0] * e[1][1] - e[0][1] * e[1][0];
    } else {
        det = dot(e[0], cross(e[1], e[2]), 3);
    }
    return sgn(det);
}

bool simplices_intersect_exact(std::span<const Vec3> a, std::span<const Vec3> b, int d)
{
    std::vector<Q3> qa, qb;
    for (const auto& p : a) qa.push_back(to_q(p));
    for (const auto& p : b) qb.push_back(to_q(p));
    for (const auto& axis : candidate_axes(qa, qb, d)) {
        mpq_class amin = dot(qa[0], axis, d), amax = amin;
        for (const auto& p : qa) {
            mpq_class x = dot(p, axis, d);
            if (x < amin) amin = x;
            if (x > amax) amax = x;
        }
        mpq_class bmin = dot(qb[0], axis, d), bmax = bmin;
        for (const auto& p : qb) {
            mpq_class x = dot(p, axis, d);
            if (x < bmin) bmin = x;
            if (x > bmax) bmax = x;
        }
        if (amax < bmin || bmax < amin) return false;
    }
    return true;
}

bool adjacent_simplices_overlap_exact(std::span<const Vec3> a, std::span<const Vec3> b,
                                      std::span<const std::pair<int, int>> shared, int d)
{
    std::vector<Q3> qa, qb;
    for (const auto& p : a) qa.push_back(to_q(p));
    for (const auto& p : b) qb.push_back(to_q(p));
    std::vector<char> a_shared(qa.size(), 0), b_shared(qb.size(), 0);
    for (auto [i, j] : shared) {
        a_shared[i] = 1;
        b_shared[j] = 1;
    }
    for (auto axis : candidate_axes(qa, qb, d)) {
        for (int flip = 0; flip < 2; ++flip) {
            if (flip) {
                for (auto& c : axis) c = -c;
            }
            // want max over a <= min over b, contact only through shared vertices
            mpq_class amax = dot(qa[0], axis, d);
            for (const auto& p : qa) amax = std::max(amax, mpq_class(dot(p, axis, d)));
            mpq_class bmin = dot(qb[0], axis, d);
            for (const auto& p : qb) bmin = std::min(bmin, mpq_class(dot(p, axis, d)));
            if (amax < bmin) return false;
            if (amax > bmin) continue;
            bool a_ok = true, b_ok = true;
            for (std::size_t i = 0; i < qa.size(); ++i) {
                if (dot(qa[i], axis, d) == amax && !a_shared[i]) a_ok = false;
            }
            for (std::size_t j = 0; j < qb.size(); ++j) {
                if (dot(qb[j], axis, d) == bmin && !b_shared[j]) b_ok = false;
            }
            if (a_ok || b_ok) return false;
        }
    }
    return true;
}

} // namespace gmt
