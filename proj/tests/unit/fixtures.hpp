#pragma once

#include <gmt/chain.hpp>

#include <cmath>
#include <vector>

namespace fixtures {

inline gmt::ComplexPtr complex_from(int ambient, const std::vector<gmt::Vec3>& points,
                                    const std::vector<std::vector<int>>& simplices)
{
    gmt::ComplexBuilder b(ambient);
    for (const auto& p : points) b.add_vertex(p);
    for (const auto& s : simplices) b.add_simplex(s);
    return b.build();
}

inline gmt::Vec3 P(double x, double y, double z = 0.0)
{
    return gmt::Vec3(x, y, z);
}

inline gmt::ComplexPtr unit_triangle()
{
    return complex_from(2, {P(0, 0), P(1, 0), P(0, 1)}, {{0, 1, 2}});
}

/// Unit square split along the diagonal 0-2.
inline gmt::ComplexPtr unit_square()
{
    return complex_from(2, {P(0, 0), P(1, 0), P(1, 1), P(0, 1)}, {{0, 1, 2}, {0, 2, 3}});
}

inline gmt::Chain square_body(const gmt::ComplexPtr& k)
{
    gmt::Chain c(k, 2);
    c.add_oriented({0, 1, 2}, 1.0);
    c.add_oriented({0, 2, 3}, 1.0);
    return c;
}

inline gmt::Chain square_loop(const gmt::ComplexPtr& k)
{
    gmt::Chain c(k, 1);
    c.add_oriented({0, 1}, 1.0);
    c.add_oriented({1, 2}, 1.0);
    c.add_oriented({2, 3}, 1.0);
    c.add_oriented({3, 0}, 1.0);
    return c;
}

inline gmt::Polynomial x(int n = 2)
{
    return gmt::coordinate(n, 0);
}

inline gmt::Polynomial y(int n = 2)
{
    return gmt::coordinate(n, 1);
}

// n x n grid on [0,1]^2, squares split along the (i,j)-(i+1,j+1) diagonal
inline gmt::ComplexPtr grid(int n)
{
    gmt::ComplexBuilder b(2);
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) b.add_vertex(P(double(i) / n, double(j) / n));
    }
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            int v = (n + 1) * j + i;
            b.add_simplex({v, v + 1, v + n + 2});
            b.add_simplex({v, v + n + 2, v + n + 1});
        }
    }
    return b.build();
}

inline int gv(int n, int i, int j)
{
    return (n + 1) * j + i;
}

inline gmt::Chain grid_body(const gmt::ComplexPtr& k, int n)
{
    gmt::Chain c(k, 2);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            c.add_oriented({gv(n, i, j), gv(n, i + 1, j), gv(n, i + 1, j + 1)}, 1.0);
            c.add_oriented({gv(n, i, j), gv(n, i + 1, j + 1), gv(n, i, j + 1)}, 1.0);
        }
    }
    return c;
}

} // namespace fixtures
