#pragma once

#include <gmt/chain.hpp>

#include <array>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace gmt {

/// Integer lattice coordinates of a cell (unused trailing entries are 0).
using Cell = std::array<int, 3>;

struct CellHash
{
    std::size_t operator()(const Cell& c) const noexcept;
};

///
/// Finite set of occupied cells [i h, (i + 1) h] of a uniform grid in R^n.
///
class VoxelSet
{
public:
    VoxelSet() = default;
    VoxelSet(int n, double h, std::vector<Cell> cells);

    int n() const { return m_n; }
    double h() const { return m_h; }
    const std::vector<Cell>& cells() const { return m_cells; }
    std::size_t size() const { return m_cells.size(); }
    bool empty() const { return m_cells.empty(); }
    bool contains(const Cell& c) const { return m_lookup.count(c) != 0; }
    /// Lebesgue measure |cells| h^n.
    double measure() const;
    /// Inclusive lattice bounds of the occupied cells.
    std::pair<Cell, Cell> bounds() const;

    VoxelSet intersection(const VoxelSet& other) const;

private:
    int m_n = 2;
    double m_h = 1.0;
    std::vector<Cell> m_cells;
    std::unordered_set<Cell, CellHash> m_lookup;
};

/// Cell face: the facet of `cell` orthogonal to `axis` on the given side (+1 upper, -1 lower).
struct Face
{
    Cell cell{};
    int axis = 0;
    int side = 1;
    auto operator<=>(const Face&) const = default;
};

/// The same geometric face seen from the neighbouring cell.
Face opposite(const Face& f);

/// Outward-oriented boundary faces of a voxel set.
struct MaterialSurface
{
    int n = 2;
    double h = 1.0;
    std::vector<Face> faces;
    double measure() const;
};

/// Volume fraction of U in the ball B(x, r), with a standard error (zero in 2D).
struct DensityEstimate
{
    double value = 0.0;
    double standard_error = 0.0;
};

inline constexpr int kDensitySamples3d = 100000;

DensityEstimate density(const Vec3& x, const VoxelSet& u, double r, std::uint64_t seed = 42);

/// Area of the disk B(center, r) intersected with the box [lo, hi].
double disk_box_area(const Vec3& center, double r, const Vec3& lo, const Vec3& hi);

/// All faces between an occupied and an unoccupied cell, sorted.
MaterialSurface measure_boundary(const VoxelSet& u);

/// Outward unit normal side * e_axis.
Vec3 exterior_normal(const Face& f);

///
/// Kuhn triangulation of the cells of a voxel set. Body and surface chains
/// built on the same VoxelComplex can be compared coefficientwise.
///
class VoxelComplex
{
public:
    explicit VoxelComplex(const VoxelSet& u);
    const ComplexPtr& complex() const { return m_complex; }
    int vertex(const Cell& lattice_point) const;

    Chain body() const;
    Chain surface(const MaterialSurface& s) const;

private:
    VoxelSet m_set;
    ComplexPtr m_complex;
    std::unordered_map<Cell, int, CellHash> m_index;
};

/// n-chain of the Kuhn simplices of all cells, positively oriented.
Chain body_current(const VoxelSet& u);

///
/// (n-1)-chain of the selected faces with orientation nu ⌟ (e_1 ^ ... ^ e_n),
/// on a complex made of the faces only. Faces outside measure_boundary(u)
/// are rejected.
///
Chain surface_current(const VoxelSet& u, const MaterialSurface& selector);

/// |surface(w) - body(dw)|.
double gauss_green_residual(const VoxelSet& u, const PolynomialForm& w);

/// Result of restricting a chain to H = {lambda . x >= s}.
struct HalfspaceRestriction
{
    Chain restricted;          ///< A ⌞ H
    Chain boundary_restricted; ///< (boundary A) ⌞ H
    Chain cut;                 ///< A ⌞ boundary H
};

HalfspaceRestriction restrict_halfspace(const Chain& a, const Vec3& lambda, double s);

/// max over forms of |restricted(dw) - boundary_restricted(w) - cut(w)|.
double halfspace_identity_residual(const HalfspaceRestriction& r, const std::vector<PolynomialForm>& forms);

/// Trace of a generalized body P cut out by a finite-perimeter set M.
struct Trace
{
    VoxelSet body;
    VoxelSet generator;
    MaterialSurface faces; ///< faces of the boundary of P whose inner cell lies in M
    Chain chain;
};

/// Throws "trace generator overlaps boundary" if P and M share a boundary face.
Trace trace_current(const VoxelSet& p, const VoxelSet& m);

///
/// Direct evaluation of int_{P cap M} dw - int_{Gamma(M) cap P} w by box
/// quadrature of the cells and faces.
///
double trace_direct(const VoxelSet& p, const VoxelSet& m, const PolynomialForm& w);

/// Exact integral of a scalar polynomial over an axis-aligned box.
double integrate_box(const Polynomial& f, const Vec3& lo, const Vec3& hi, int n);

/// Vertices of the quadratic Koch island at the given level (unit square base, CCW).
std::vector<Vec3> koch_polygon(int level);

/// Voxelization of the quadratic Koch island; h must divide 4^-level.
VoxelSet koch_prefractal(int level, double h);

/// Binary PPM of a 2D voxel set with boundary cells highlighted.
void write_ppm(const std::string& path, const VoxelSet& u, int margin = 2);

} // namespace gmt
