#pragma once

#include <gmt/multivector.hpp>

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gmt {

inline constexpr int kMaxSimplexDim = 3;

/// Signed incidence entry: the face id (one dimension lower) and the sign
/// (-1)^i of the omitted vertex position.
struct FaceRef
{
    int id = 0;
    int sign = 1;
};

/// Identifies a simplex of a complex by dimension and id.
struct SimplexKey
{
    int dim = 0;
    int id = 0;
    auto operator<=>(const SimplexKey&) const = default;
};

class SimplicialComplex;
using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

///
/// Finite simplicial complex embedded in R^n, n in {2, 3}.
///
/// Simplices are stored per dimension as strictly increasing vertex tuples;
/// orientation lives in the chains. The complex is closed under faces and
/// 0-simplex i is vertex i. Instances are immutable and shared through
/// ComplexPtr; chains refer to their carrier by pointer identity.
///
class SimplicialComplex
{
public:
    int ambient_dim() const { return m_ambient; }
    /// Highest dimension that has at least one simplex (-1 when empty).
    int top_dim() const;

    int num_vertices() const { return static_cast<int>(m_vertices.size()); }
    const Vec3& vertex(int i) const { return m_vertices[i]; }
    const std::vector<Vec3>& vertices() const { return m_vertices; }

    int num_simplices(int k) const;
    std::span<const int> simplex(int k, int id) const;
    std::vector<Vec3> points(int k, int id) const;

    std::optional<int> find(int k, std::span<const int> sorted_vertices) const;
    /// Looks up a simplex given in any vertex order; returns its id and the
    /// sign of that order relative to the stored increasing tuple.
    std::pair<int, int> find_oriented(std::span<const int> vertices) const;

    std::span<const FaceRef> faces(int k, int id) const;
    std::span<const int> cofaces(int k, int id) const;
    bool is_maximal(int k, int id) const { return cofaces(k, id).empty(); }

    /// k-dimensional volume sqrt(det(G^T G)) / k!.
    double volume(int k, int id) const { return m_volume[k][id]; }
    bool degenerate(int k, int id) const { return m_degenerate[k][id] != 0; }
    /// (v1 - v0) ^ ... ^ (vk - v0) for the stored vertex order.
    const MultiVector& edge_wedge(int k, int id) const { return m_wedge[k][id]; }

private:
    friend class ComplexBuilder;

    struct TupleHash
    {
        std::size_t operator()(const std::array<int, 4>& t) const noexcept;
    };

    int m_ambient = 2;
    std::vector<Vec3> m_vertices;
    std::array<std::vector<int>, kMaxSimplexDim + 1> m_tuples;
    std::array<std::unordered_map<std::array<int, 4>, int, TupleHash>, kMaxSimplexDim + 1> m_lookup;
    std::array<std::vector<FaceRef>, kMaxSimplexDim + 1> m_faces;
    std::array<std::vector<int>, kMaxSimplexDim + 1> m_coface_offsets;
    std::array<std::vector<int>, kMaxSimplexDim + 1> m_cofaces;
    std::array<std::vector<double>, kMaxSimplexDim + 1> m_volume;
    std::array<std::vector<char>, kMaxSimplexDim + 1> m_degenerate;
    std::array<std::vector<MultiVector>, kMaxSimplexDim + 1> m_wedge;
};

///
/// Accumulates vertices and simplices, then closes the set under faces.
/// Explicitly added simplices keep their insertion order as ids; faces added
/// by the closure follow them.
///
class ComplexBuilder
{
public:
    explicit ComplexBuilder(int ambient_dim);

    int add_vertex(const Vec3& p);
    /// Returns the simplex id in its dimension and the orientation sign of
    /// the given vertex order. Adding an existing simplex returns its id.
    std::pair<int, int> add_simplex(std::span<const int> vertices);
    std::pair<int, int> add_simplex(std::initializer_list<int> vertices)
    {
        return add_simplex(std::span<const int>(vertices.begin(), vertices.size()));
    }
    int num_vertices() const { return static_cast<int>(m_complex->m_vertices.size()); }

    ComplexPtr build();

private:
    int insert_sorted(int k, const std::array<int, 4>& tuple);

    std::shared_ptr<SimplicialComplex> m_complex;
};

/// Sorts vertices in place and returns the permutation sign.
int sort_with_sign(std::span<int> vertices);

/// Degeneracy threshold relative to (max edge length)^k.
inline constexpr double kDegenerateRelTol = 1e-12;

double simplex_volume(std::span<const Vec3> points, int ambient);
double simplex_volume(const SimplicialComplex& complex, int k, int id);

} // namespace gmt
