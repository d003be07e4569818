#include "builders.hpp"

#include <gmt/error.hpp>

namespace gmt::demo {

ComplexPtr grid(int nx, int ny, double h)
{
    ComplexBuilder b(2);
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) b.add_vertex(Vec3(i * h, j * h, 0));
    }
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            int v = grid_vertex(nx, i, j);
            b.add_simplex({v, v + 1, v + nx + 2});
            b.add_simplex({v, v + nx + 2, v + nx + 1});
        }
    }
    return b.build();
}

int grid_vertex(int nx, int i, int j)
{
    return (nx + 1) * j + i;
}

Chain grid_body(const ComplexPtr& k, int nx, int ny)
{
    Chain c(k, 2);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            int v = grid_vertex(nx, i, j);
            c.add_oriented({v, v + 1, v + nx + 2}, 1.0);
            c.add_oriented({v, v + nx + 2, v + nx + 1}, 1.0);
        }
    }
    return c;
}

Chain diagonal(const ComplexPtr& k, int n)
{
    Chain c(k, 1);
    for (int i = 0; i < n; ++i) c.add_oriented({grid_vertex(n, i, i), grid_vertex(n, i + 1, i + 1)}, 1.0);
    return c;
}

Chain staircase(const ComplexPtr& k, int n, int step)
{
    require(step > 0 && n % step == 0, "step must divide the grid size");
    Chain c(k, 1);
    for (int s = 0; s < n; s += step) {
        for (int i = s; i < s + step; ++i) c.add_oriented({grid_vertex(n, i, s), grid_vertex(n, i + 1, s)}, 1.0);
        for (int j = s; j < s + step; ++j) {
            c.add_oriented({grid_vertex(n, s + step, j), grid_vertex(n, s + step, j + 1)}, 1.0);
        }
    }
    return c;
}

ComplexPtr kuhn_cube()
{
    ComplexBuilder b(3);
    for (int v = 0; v < 8; ++v) b.add_vertex(Vec3(v & 1, (v >> 1) & 1, (v >> 2) & 1));
    // paths 0 -> 7 through the axis permutations
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& p : perms) {
        int v1 = 1 << p[0];
        int v2 = v1 | (1 << p[1]);
        b.add_simplex({0, v1, v2, 7});
    }
    return b.build();
}

ComplexPtr path(int segments)
{
    ComplexBuilder b(2);
    for (int i = 0; i <= segments; ++i) b.add_vertex(Vec3(i, 0.3 * (i % 2), 0));
    for (int i = 0; i < segments; ++i) b.add_simplex({i, i + 1});
    return b.build();
}

Chain random_chain(const ComplexPtr& k, int dim, Rng& rng, double fill)
{
    std::uniform_real_distribution<double> u(-1, 1);
    std::uniform_real_distribution<double> coin(0, 1);
    Chain c(k, dim);
    for (int id = 0; id < k->num_simplices(dim); ++id) {
        if (coin(rng) < fill) c.add_cell(id, u(rng));
    }
    if (c.is_zero()) c.add_cell(0, 1.0);
    return c;
}

Chain random_unit_chain(const ComplexPtr& k, int dim, Rng& rng, double fill)
{
    std::uniform_real_distribution<double> coin(0, 1);
    Chain c(k, dim);
    for (int id = 0; id < k->num_simplices(dim); ++id) {
        if (coin(rng) < fill) c.add_cell(id, coin(rng) < 0.5 ? -1.0 : 1.0);
    }
    if (c.is_zero()) c.add_cell(0, 1.0);
    return c;
}

Chain random_body(const ComplexPtr& k, Rng& rng, double fill)
{
    const int n = k->top_dim();
    std::uniform_real_distribution<double> coin(0, 1);
    Chain c(k, n);
    for (int id = 0; id < k->num_simplices(n); ++id) {
        if (coin(rng) < fill) c.add_cell(id, 1.0);
    }
    if (c.is_zero()) c.add_cell(0, 1.0);
    return c;
}

Chain random_weighted_chain(const ComplexPtr& k, int dim, Rng& rng, double fill)
{
    std::uniform_real_distribution<double> u(-1, 1);
    std::uniform_real_distribution<double> coin(0, 1);
    Chain c(k, dim);
    for (int id = 0; id < k->num_simplices(dim); ++id) {
        if (coin(rng) >= fill) continue;
        std::vector<double> vals;
        for (int i = 0; i <= dim; ++i) vals.push_back(u(rng));
        c.add_cell(id, barycentric_affine(vals));
    }
    if (c.is_zero()) c.add_cell(0, 1.0);
    return c;
}

PiecewiseAffineMap jiggled(const ComplexPtr& k, double amp, Rng& rng)
{
    std::uniform_real_distribution<double> u(-amp, amp);
    const int n = k->ambient_dim();
    std::vector<Vec3> images;
    for (const auto& p : k->vertices()) {
        Vec3 q = p;
        for (int i = 0; i < n; ++i) q(i) += u(rng);
        images.push_back(q);
    }
    return PiecewiseAffineMap(k, std::move(images), n);
}

SharpField random_field(const ComplexPtr& k, Rng& rng, double amp)
{
    std::uniform_real_distribution<double> u(-amp, amp);
    std::vector<double> vals;
    for (int i = 0; i < k->num_vertices(); ++i) vals.push_back(u(rng));
    return SharpField(k, std::move(vals));
}

std::vector<SharpField> random_velocity(const ComplexPtr& k, Rng& rng, double amp)
{
    std::vector<SharpField> v;
    for (int i = 0; i < k->ambient_dim(); ++i) v.push_back(random_field(k, rng, amp));
    return v;
}

Motion random_motion(const ComplexPtr& k, Rng& rng, double amp, double t_max)
{
    std::uniform_real_distribution<double> u(-amp, amp);
    const int n = k->ambient_dim();
    std::vector<Motion::Trajectory> c;
    for (const auto& p : k->vertices()) {
        Vec3 v = Vec3::Zero();
        Vec3 a = Vec3::Zero();
        for (int i = 0; i < n; ++i) {
            v(i) = u(rng);
            a(i) = u(rng);
        }
        c.push_back({p, v, a});
    }
    return Motion(k, std::move(c), t_max);
}

VoxelSet random_voxels(int n, int size, double h, Rng& rng, double fill)
{
    std::uniform_real_distribution<double> coin(0, 1);
    std::vector<Cell> cells;
    const int zmax = n == 3 ? size : 1;
    for (int z = 0; z < zmax; ++z) {
        for (int y = 0; y < size; ++y) {
            for (int x = 0; x < size; ++x) {
                if (coin(rng) < fill || (x == 0 && y == 0 && z == 0)) cells.push_back({x, y, n == 3 ? z : 0});
            }
        }
    }
    return VoxelSet(n, h, std::move(cells));
}

std::vector<FlatInstance> flat_corpus(std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<FlatInstance> out;
    auto square = grid(1, 1, 1.0);
    out.push_back({"unit-square-boundary", boundary(grid_body(square, 1, 1))});

    auto g22 = grid(2, 2, 0.5);
    auto g32 = grid(3, 2, 0.5);
    auto g23 = grid(2, 3, 1.0);
    auto cube = kuhn_cube();
    auto line = path(9);
    auto tri = grid(1, 1, 2.0);

    out.push_back({"square-loop-scaled", boundary(grid_body(tri, 1, 1))});
    out.push_back({"grid-boundary-2x2", boundary(grid_body(g22, 2, 2))});
    out.push_back({"grid-boundary-3x2", boundary(grid_body(g32, 3, 2))});
    Chain solid(cube, 3);
    for (int id = 0; id < cube->num_simplices(3); ++id) {
        auto p = cube->points(3, id);
        Mat3 e;
        for (int i = 0; i < 3; ++i) e.col(i) = p[i + 1] - p[0];
        solid.add_cell(id, e.determinant() > 0 ? 1.0 : -1.0);
    }
    out.push_back({"cube-boundary", boundary(solid)});
    for (int i = 0; i < 6; ++i) out.push_back({"edges-2x2-" + std::to_string(i), random_unit_chain(g22, 1, rng, 0.4)});
    for (int i = 0; i < 4; ++i) out.push_back({"edges-3x2-" + std::to_string(i), random_unit_chain(g32, 1, rng, 0.3)});
    for (int i = 0; i < 2; ++i) out.push_back({"edges-2x3-" + std::to_string(i), random_unit_chain(g23, 1, rng, 0.3)});
    for (int i = 0; i < 4; ++i) out.push_back({"points-path-" + std::to_string(i), random_unit_chain(line, 0, rng, 0.5)});
    for (int i = 0; i < 4; ++i) out.push_back({"faces-cube-" + std::to_string(i), random_unit_chain(cube, 2, rng, 0.3)});
    return out;
}

} // namespace gmt::demo
