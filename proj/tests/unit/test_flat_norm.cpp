#include "fixtures.hpp"

#include <gmt/error.hpp>
#include <gmt/flat_norm.hpp>

#include <doctest.h>

using namespace gmt;
using namespace fixtures;

TEST_CASE("flat norm of the square boundary")
{
    auto sq = unit_square();
    Chain a = boundary(square_body(sq));
    auto d = flat_norm(a);
    CHECK(d.value == doctest::Approx(1.0));
    CHECK(flat_norm_oracle(a) == doctest::Approx(1.0));
    CHECK(d.feasibility_residual <= 1e-12);
    CHECK(coefficient_distance(d.R + boundary(d.S), a) <= 1e-12);
    CHECK(mass(d.R) + mass(d.S) == doctest::Approx(d.value));
    CHECK(d.value <= mass(a));
}

TEST_CASE("flat norm trivial cases")
{
    auto sq = unit_square();
    Chain zero(sq, 1);
    auto d = flat_norm(zero);
    CHECK(d.value == 0.0);
    CHECK(d.R.is_zero());
    CHECK(d.S.is_zero());
    CHECK(flat_norm_oracle(zero) == 0.0);

    auto bare = complex_from(2, {P(0, 0), P(1, 0)}, {{0, 1}});
    Chain e(bare, 1);
    e.add_oriented({0, 1}, 1.0);
    CHECK(flat_norm(e).value == doctest::Approx(1.0));

    Chain t(unit_triangle(), 2);
    t.add_oriented({0, 1, 2}, 1.0);
    Chain bt = boundary(t);
    CHECK(flat_norm(bt).value == doctest::Approx(0.5));
    CHECK(flat_norm_oracle(bt) == doctest::Approx(0.5));
    CHECK(flat_distance(bt, bt) == 0.0);
    CHECK(flat_distance(bt, Chain(bt.complex(), 1)) == doctest::Approx(flat_norm(bt).value));
}

TEST_CASE("flat distance of parallel edges on a strip")
{
    const double h = 0.1;
    auto strip = complex_from(2, {P(0, 0), P(1, 0), P(1, h), P(0, h)}, {{0, 1, 2}, {0, 2, 3}});
    Chain top(strip, 1), bottom(strip, 1);
    top.add_oriented({3, 2}, 1.0);
    bottom.add_oriented({0, 1}, 1.0);
    double d = flat_distance(top, bottom);
    CHECK(d <= h + 2 * h + 1e-12);
    CHECK(d == doctest::Approx(flat_norm_oracle(top - bottom)));
    CHECK(d == doctest::Approx(flat_distance(bottom, top)));
}

TEST_CASE("flat norm properties")
{
    auto sq = unit_square();
    Chain a = square_loop(sq);
    Chain b(sq, 1);
    b.add_oriented({0, 2}, 2.0);
    double fa = flat_norm(a).value, fb = flat_norm(b).value;
    CHECK(flat_norm(a + b).value <= fa + fb + 1e-12);
    CHECK(flat_norm(a * -3.0).value == doctest::Approx(3.0 * fa));
    CHECK(flat_norm(boundary(square_body(sq))).value <= mass(square_body(sq)) + 1e-12);
}

TEST_CASE("oracle refuses large complexes")
{
    ComplexBuilder b(2);
    for (int i = 0; i <= 14; ++i) {
        b.add_vertex(P(i, 0));
        b.add_vertex(P(i, 1));
    }
    for (int i = 0; i < 7; ++i) {
        b.add_simplex({2 * i, 2 * i + 2, 2 * i + 3});
        b.add_simplex({2 * i, 2 * i + 3, 2 * i + 1});
    }
    auto k = b.build();
    Chain c(k, 1);
    c.add_oriented({0, 2}, 1.0);
    CHECK_THROWS_AS(flat_norm_oracle(c), Error);
}
