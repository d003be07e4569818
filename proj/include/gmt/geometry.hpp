#pragma once

#include <gmt/multivector.hpp>

#include <span>
#include <vector>

namespace gmt {

using SimplexPoints = std::vector<Vec3>;

///
/// Clips a k-simplex (k <= 3) against {value >= 0} for an affine function
/// given by its vertex values. Returns the pieces as simplices whose vertex
/// order has the same orientation as the input; zero-volume pieces are
/// dropped. Points use the first `ambient` coordinates.
///
std::vector<SimplexPoints> clip_simplex(std::span<const Vec3> points, std::span<const double> values, int ambient);

/// Oriented k-volume factor: wedge of edge vectors.
MultiVector edge_wedge(std::span<const Vec3> points, int ambient);

/// Exact sign of the orientation determinant of d+1 points in R^d (d = 2, 3).
int orient_exact(std::span<const Vec3> points, int d);

/// Exact test whether two closed simplices (each of dimension <= d, in R^d)
/// intersect. Uses rational arithmetic.
bool simplices_intersect_exact(std::span<const Vec3> a, std::span<const Vec3> b, int d);

/// Exact test whether the relative interiors of two simplices sharing the
/// vertex set `shared` (indices into both lists given pairwise) overlap
/// beyond the common face.
bool adjacent_simplices_overlap_exact(std::span<const Vec3> a, std::span<const Vec3> b,
                                      std::span<const std::pair<int, int>> shared, int d);

} // namespace gmt
