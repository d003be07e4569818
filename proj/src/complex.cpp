#include <gmt/complex.hpp>
#include <gmt/error.hpp>
#include <gmt/polynomial.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace gmt {

namespace {

std::array<int, 4> pack(std::span<const int> v)
{
    std::array<int, 4> t{-1, -1, -1, -1};
    std::copy(v.begin(), v.end(), t.begin());
    return t;
}

} // namespace

std::size_t SimplicialComplex::TupleHash::operator()(const std::array<int, 4>& t) const noexcept
{
    std::size_t h = 1469598103934665603ull;
    for (int v : t) {
        h ^= static_cast<std::size_t>(static_cast<unsigned>(v));
        h *= 1099511628211ull;
    }
    return h;
}

int sort_with_sign(std::span<int> v)
{
    int sign = 1;
    for (std::size_t i = 1; i < v.size(); ++i) {
        for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
            std::swap(v[j - 1], v[j]);
            sign = -sign;
        }
    }
    return sign;
}

double simplex_volume(std::span<const Vec3> points, int ambient)
{
    const int k = static_cast<int>(points.size()) - 1;
    if (k <= 0) return 1.0;
    Eigen::MatrixXd g(ambient, k);
    for (int j = 0; j < k; ++j) g.col(j) = (points[j + 1] - points[0]).head(ambient);
    double det = (g.transpose() * g).determinant();
    return std::sqrt(std::max(det, 0.0)) / factorial(k);
}

double simplex_volume(const SimplicialComplex& complex, int k, int id)
{
    return complex.volume(k, id);
}

int SimplicialComplex::top_dim() const
{
    for (int k = kMaxSimplexDim; k >= 0; --k) {
        if (num_simplices(k) > 0) return k;
    }
    return -1;
}

int SimplicialComplex::num_simplices(int k) const
{
    if (k < 0 || k > kMaxSimplexDim) return 0;
    return static_cast<int>(m_tuples[k].size()) / (k + 1);
}

std::span<const int> SimplicialComplex::simplex(int k, int id) const
{
    return std::span<const int>(m_tuples[k]).subspan(static_cast<std::size_t>(id) * (k + 1), k + 1);
}

std::vector<Vec3> SimplicialComplex::points(int k, int id) const
{
    std::vector<Vec3> p;
    p.reserve(k + 1);
    for (int v : simplex(k, id)) p.push_back(m_vertices[v]);
    return p;
}

std::optional<int> SimplicialComplex::find(int k, std::span<const int> sorted) const
{
    if (k < 0 || k > kMaxSimplexDim) return std::nullopt;
    auto it = m_lookup[k].find(pack(sorted));
    if (it == m_lookup[k].end()) return std::nullopt;
    return it->second;
}

std::pair<int, int> SimplicialComplex::find_oriented(std::span<const int> vertices) const
{
    std::array<int, 4> t{};
    std::copy(vertices.begin(), vertices.end(), t.begin());
    const int k = static_cast<int>(vertices.size()) - 1;
    int sign = sort_with_sign(std::span<int>(t.data(), vertices.size()));
    auto id = find(k, std::span<const int>(t.data(), vertices.size()));
    if (!id) fail("simplex not in complex (dimension " + std::to_string(k) + ")");
    return {*id, sign};
}

std::span<const FaceRef> SimplicialComplex::faces(int k, int id) const
{
    require(k >= 1, "0-simplices have no faces");
    return std::span<const FaceRef>(m_faces[k]).subspan(static_cast<std::size_t>(id) * (k + 1), k + 1);
}

std::span<const int> SimplicialComplex::cofaces(int k, int id) const
{
    if (k >= kMaxSimplexDim || m_coface_offsets[k].empty()) return {};
    const auto& off = m_coface_offsets[k];
    return std::span<const int>(m_cofaces[k]).subspan(off[id], off[id + 1] - off[id]);
}

ComplexBuilder::ComplexBuilder(int ambient_dim)
    : m_complex(std::make_shared<SimplicialComplex>())
{
    require(ambient_dim == 2 || ambient_dim == 3, "ambient dimension must be 2 or 3");
    m_complex->m_ambient = ambient_dim;
}

int ComplexBuilder::add_vertex(const Vec3& p)
{
    Vec3 q = p;
    if (m_complex->m_ambient == 2) q(2) = 0.0;
    m_complex->m_vertices.push_back(q);
    int id = static_cast<int>(m_complex->m_vertices.size()) - 1;
    insert_sorted(0, {id, -1, -1, -1});
    return id;
}

int ComplexBuilder::insert_sorted(int k, const std::array<int, 4>& t)
{
    auto& lookup = m_complex->m_lookup[k];
    auto it = lookup.find(t);
    if (it != lookup.end()) return it->second;
    int id = m_complex->num_simplices(k);
    lookup.emplace(t, id);
    for (int i = 0; i <= k; ++i) m_complex->m_tuples[k].push_back(t[i]);
    return id;
}

std::pair<int, int> ComplexBuilder::add_simplex(std::span<const int> vertices)
{
    const int k = static_cast<int>(vertices.size()) - 1;
    require(k >= 0 && k <= m_complex->m_ambient, "simplex dimension out of range");
    std::array<int, 4> t{-1, -1, -1, -1};
    for (int i = 0; i <= k; ++i) {
        require(vertices[i] >= 0 && vertices[i] < num_vertices(),
                "simplex references missing vertex " + std::to_string(vertices[i]));
        t[i] = vertices[i];
    }
    int sign = sort_with_sign(std::span<int>(t.data(), k + 1));
    for (int i = 1; i <= k; ++i) require(t[i] != t[i - 1], "simplex repeats a vertex");
    return {insert_sorted(k, t), sign};
}

ComplexPtr ComplexBuilder::build()
{
    auto& c = *m_complex;
    // close under faces, top dimension first
    for (int k = kMaxSimplexDim; k >= 1; --k) {
        const int count = c.num_simplices(k);
        for (int id = 0; id < count; ++id) {
            std::array<int, 4> t{-1, -1, -1, -1};
            std::copy_n(c.m_tuples[k].begin() + static_cast<std::ptrdiff_t>(id) * (k + 1), k + 1, t.begin());
            for (int i = 0; i <= k; ++i) {
                std::array<int, 4> f{-1, -1, -1, -1};
                for (int j = 0, w = 0; j <= k; ++j) {
                    if (j != i) f[w++] = t[j];
                }
                insert_sorted(k - 1, f);
            }
        }
    }
    for (int k = 1; k <= kMaxSimplexDim; ++k) {
        const int count = c.num_simplices(k);
        auto& faces = c.m_faces[k];
        faces.resize(static_cast<std::size_t>(count) * (k + 1));
        for (int id = 0; id < count; ++id) {
            auto s = c.simplex(k, id);
            for (int i = 0; i <= k; ++i) {
                std::array<int, 4> f{-1, -1, -1, -1};
                for (int j = 0, w = 0; j <= k; ++j) {
                    if (j != i) f[w++] = s[j];
                }
                faces[static_cast<std::size_t>(id) * (k + 1) + i] = {c.m_lookup[k - 1].at(f), (i % 2) ? -1 : 1};
            }
        }
        // cofaces of (k-1)-simplices in CSR form
        const int lower = c.num_simplices(k - 1);
        auto& off = c.m_coface_offsets[k - 1];
        off.assign(lower + 1, 0);
        for (const auto& f : faces) ++off[f.id + 1];
        for (int i = 0; i < lower; ++i) off[i + 1] += off[i];
        auto& cof = c.m_cofaces[k - 1];
        cof.assign(faces.size(), 0);
        std::vector<int> fill(off.begin(), off.end() - 1);
        for (int id = 0; id < count; ++id) {
            for (int i = 0; i <= k; ++i) cof[fill[faces[static_cast<std::size_t>(id) * (k + 1) + i].id]++] = id;
        }
    }
    for (int k = 0; k <= kMaxSimplexDim; ++k) {
        const int count = c.num_simplices(k);
        c.m_volume[k].resize(count);
        c.m_degenerate[k].resize(count);
        c.m_wedge[k].resize(count);
        for (int id = 0; id < count; ++id) {
            auto p = c.points(k, id);
            std::vector<Vec3> edges;
            double longest = 0.0;
            for (int j = 1; j <= k; ++j) {
                edges.push_back(p[j] - p[0]);
                for (int i = 0; i < j; ++i) longest = std::max(longest, (p[j] - p[i]).norm());
            }
            c.m_wedge[k][id] = MultiVector::wedge(edges, c.m_ambient);
            double vol = k == 0 ? 1.0 : c.m_wedge[k][id].norm() / factorial(k);
            bool degenerate = k > 0 && vol <= kDegenerateRelTol * std::pow(longest, k);
            c.m_volume[k][id] = degenerate ? 0.0 : vol;
            c.m_degenerate[k][id] = degenerate ? 1 : 0;
        }
    }
    ComplexPtr out = m_complex;
    m_complex = std::make_shared<SimplicialComplex>();
    m_complex->m_ambient = out->m_ambient;
    return out;
}

} // namespace gmt
