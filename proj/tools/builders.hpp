#pragma once

#include <gmt/finite_perimeter.hpp>
#include <gmt/sharp_fields.hpp>
#include <gmt/transport.hpp>

#include <random>
#include <string>
#include <vector>

namespace gmt::demo {

using Rng = std::mt19937_64;

/// nx x ny grid of squares of side h, each split along its (i,j)-(i+1,j+1) diagonal.
ComplexPtr grid(int nx, int ny, double h);
int grid_vertex(int nx, int i, int j);
/// All triangles of a grid, positively oriented.
Chain grid_body(const ComplexPtr& k, int nx, int ny);
/// Diagonal of an n x n grid from (0,0) to the far corner.
Chain diagonal(const ComplexPtr& k, int n);
/// Monotone staircase along the diagonal with steps of `step` cells.
Chain staircase(const ComplexPtr& k, int n, int step);

/// Kuhn triangulation of the unit cube (6 tetrahedra).
ComplexPtr kuhn_cube();
/// Path of segments in the plane.
ComplexPtr path(int segments);

/// Random constant coefficients on about `fill` of the k-simplices.
Chain random_chain(const ComplexPtr& k, int dim, Rng& rng, double fill = 0.6);
/// Random cellular body on the top simplices (never empty).
Chain random_body(const ComplexPtr& k, Rng& rng, double fill = 0.7);
/// Random affine densities on about `fill` of the k-simplices.
/// Coefficients +-1; flat norm LPs of these have integral optima on the demo complexes.
Chain random_unit_chain(const ComplexPtr& k, int dim, Rng& rng, double fill = 0.6);
Chain random_weighted_chain(const ComplexPtr& k, int dim, Rng& rng, double fill = 0.6);

/// Vertices moved by up to `amp` in every coordinate.
PiecewiseAffineMap jiggled(const ComplexPtr& k, double amp, Rng& rng);
SharpField random_field(const ComplexPtr& k, Rng& rng, double amp = 1.0);
std::vector<SharpField> random_velocity(const ComplexPtr& k, Rng& rng, double amp = 1.0);
/// Vertex trajectories with random velocity and acceleration bounded by amp.
Motion random_motion(const ComplexPtr& k, Rng& rng, double amp, double t_max);

/// Random voxel body in a size^n box, with a guaranteed seed cell.
VoxelSet random_voxels(int n, int size, double h, Rng& rng, double fill = 0.5);

struct FlatInstance
{
    std::string name;
    Chain chain;
};

/// The 25 flat norm instances: the unit square boundary first, then random
/// chains on complexes with at most 12 top simplices.
std::vector<FlatInstance> flat_corpus(std::uint64_t seed);

} // namespace gmt::demo
