#include "fixtures.hpp"

#include <gmt/battery.hpp>
#include <gmt/error.hpp>
#include <gmt/finite_perimeter.hpp>

#include <doctest.h>

using namespace gmt;
using namespace fixtures;

namespace {

VoxelSet block(int nx, int ny, double h = 1.0, int x0 = 0, int y0 = 0)
{
    std::vector<Cell> cells;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) cells.push_back({x0 + i, y0 + j, 0});
    }
    return VoxelSet(2, h, cells);
}

VoxelSet block3(int nx, int ny, int nz)
{
    std::vector<Cell> cells;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            for (int k = 0; k < nz; ++k) cells.push_back({i, j, k});
        }
    }
    return VoxelSet(3, 1.0, cells);
}

} // namespace

TEST_CASE("measure-theoretic boundary")
{
    CHECK(measure_boundary(block(1, 1)).faces.size() == 4);
    CHECK(measure_boundary(block(1, 1)).measure() == doctest::Approx(4.0));
    for (int k = 1; k <= 5; ++k) {
        auto s = measure_boundary(block(k, k, 0.5));
        CHECK(s.faces.size() == static_cast<std::size_t>(4 * k));
        CHECK(s.measure() == doctest::Approx(4 * k * 0.5));
    }
    VoxelSet diag(2, 1.0, {{0, 0, 0}, {1, 1, 0}});
    CHECK(measure_boundary(diag).faces.size() == 8);
    CHECK(measure_boundary(block3(2, 1, 1)).faces.size() == 10);
}

TEST_CASE("exterior normals")
{
    Face right{{0, 0, 0}, 0, 1};
    Face top{{0, 0, 0}, 1, 1};
    CHECK(exterior_normal(right) == Vec3(1, 0, 0));
    CHECK(exterior_normal(top) == Vec3(0, 1, 0));
    CHECK(exterior_normal(opposite(right)) == -exterior_normal(right));
    CHECK(opposite(right).cell == Cell{1, 0, 0});

    // points just inside and just outside each face
    VoxelSet u = block(1, 1);
    auto s = measure_boundary(u);
    for (const auto& f : s.faces) {
        Vec3 inside = (Vec3(0.5, 0.5, 0) + 0.25 * exterior_normal(f));
        Vec3 outside = (Vec3(0.5, 0.5, 0) + 0.75 * exterior_normal(f));
        CHECK(density(inside, u, 0.2).value == doctest::Approx(1.0));
        CHECK(density(outside, u, 0.2).value == doctest::Approx(0.0));
    }
}

TEST_CASE("densities")
{
    VoxelSet u = block(8, 8);
    CHECK(density(Vec3(4, 4, 0), u, 0.5).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(density(Vec3(8, 4, 0), u, 0.5).value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(density(Vec3(8, 8, 0), u, 0.5).value == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(density(Vec3(0, 0, 0), u, 3.0).value == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(disk_box_area(Vec3(0, 0, 0), 1.0, Vec3(-2, -2, 0), Vec3(2, 2, 0)) == doctest::Approx(std::numbers::pi));
    CHECK_THROWS_AS(density(Vec3(0, 0, 0), u, 0.1), Error);

    VoxelSet c = block3(4, 4, 4);
    auto mid = density(Vec3(2, 2, 4), c, 0.5);
    CHECK(std::abs(mid.value - 0.5) <= 5 * mid.standard_error);
    CHECK(mid.standard_error > 0);
    auto corner = density(Vec3(4, 4, 4), c, 0.5);
    CHECK(std::abs(corner.value - 0.125) <= 5 * corner.standard_error);
}

TEST_CASE("body and surface currents")
{
    Chain one = body_current(block(1, 1));
    CHECK(one.cells().size() == 2);
    CHECK(mass(one) == doctest::Approx(1.0));
    CHECK(body_current(VoxelSet(2, 1.0, {})).is_zero());

    Chain two = body_current(block(2, 1));
    CHECK(mass(two) == doctest::Approx(2.0));
    CHECK(mass(boundary(two)) == doctest::Approx(6.0));

    CHECK(mass(body_current(block3(2, 2, 1))) == doctest::Approx(4.0));
    CHECK(body_current(block3(1, 1, 1)).cells().size() == 6);

    VoxelSet u = block(1, 1);
    auto full = measure_boundary(u);
    CHECK(mass(surface_current(u, full)) == doctest::Approx(4.0));

    MaterialSurface right{2, 1.0, {{{0, 0, 0}, 0, 1}}};
    Chain r = surface_current(u, right);
    CHECK(mass(r) == doctest::Approx(1.0));
    CHECK(evaluate(r, PolynomialForm::basis(2, {1}, 1.0)) == doctest::Approx(1.0));
    CHECK(evaluate(r, PolynomialForm::basis(2, {0}, 1.0)) == doctest::Approx(0.0));
    CHECK(surface_current(u, MaterialSurface{2, 1.0, {}}).is_zero());

    MaterialSurface bad{2, 1.0, {{{0, 0, 0}, 0, 1}}};
    CHECK_THROWS_AS(surface_current(block(2, 1), bad), Error);
}

TEST_CASE("boundary of the body is the surface current")
{
    for (const VoxelSet& u : {block(3, 2), VoxelSet(2, 0.5, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {2, 2, 0}}), block3(2, 2, 2),
                              VoxelSet(3, 1.0, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})}) {
        VoxelComplex vc(u);
        Chain diff = boundary(vc.body()) - vc.surface(measure_boundary(u));
        CHECK(diff.is_zero());
    }
}

TEST_CASE("Gauss-Green")
{
    VoxelSet sq = block(1, 1);
    auto w = PolynomialForm::basis(2, {1}, x());
    CHECK(evaluate(surface_current(sq, measure_boundary(sq)), w) == doctest::Approx(1.0));
    CHECK(evaluate(body_current(sq), w.d()) == doctest::Approx(1.0));
    CHECK(gauss_green_residual(sq, w) <= 1e-12);

    VoxelSet l(2, 1.0, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
    CHECK(gauss_green_residual(l, PolynomialForm::basis(2, {1}, x() * x())) <= 1e-9);
    // closed form
    auto closed = PolynomialForm::scalar(2, x() * y()).d();
    CHECK(std::abs(evaluate(surface_current(l, measure_boundary(l)), closed)) <= 1e-12);

    for (const auto& f : form_battery(2, 1)) CHECK(gauss_green_residual(l, f) <= 1e-9);
    for (const auto& f : form_battery(3, 2, 6)) CHECK(gauss_green_residual(block3(2, 1, 2), f) <= 1e-9);
}

TEST_CASE("half-space restriction")
{
    auto sq = unit_square();
    Chain a = square_body(sq);
    auto forms = form_battery(2, 1, 5);

    auto cut = restrict_halfspace(a, Vec3(1, 0, 0), 0.5);
    CHECK(mass(cut.restricted) == doctest::Approx(0.5));
    CHECK(mass(cut.cut) == doctest::Approx(1.0));
    CHECK(halfspace_identity_residual(cut, forms) <= 1e-9);

    auto all = restrict_halfspace(a, Vec3(1, 0, 0), -1.0);
    CHECK(mass(all.restricted) == doctest::Approx(1.0));
    CHECK(all.cut.is_zero());
    for (const auto& f : forms) CHECK(evaluate(all.restricted, f.d()) == doctest::Approx(evaluate(a, f.d())));

    auto none = restrict_halfspace(a, Vec3(1, 0, 0), 2.0);
    CHECK(none.restricted.is_zero());
    CHECK(none.cut.is_zero());

    auto diag = restrict_halfspace(a, Vec3(1, 1, 0), 1.0);
    CHECK(mass(diag.restricted) == doctest::Approx(0.5));
    CHECK(mass(diag.cut) == doctest::Approx(std::sqrt(2.0)));
    CHECK(halfspace_identity_residual(diag, forms) <= 1e-9);

    auto loop = restrict_halfspace(boundary(a), Vec3(0, 1, 0), 0.25);
    CHECK(mass(loop.restricted) == doctest::Approx(2.5));
    CHECK(halfspace_identity_residual(loop, form_battery(2, 0, 5)) <= 1e-9);

    Chain cube = body_current(block3(1, 1, 1));
    auto forms3 = form_battery(3, 2, 6);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int t = 0; t < 10; ++t) {
        Vec3 lam(g(rng), g(rng), g(rng));
        auto r = restrict_halfspace(cube, lam, 0.5 * lam.sum() + 0.2 * g(rng));
        CHECK(halfspace_identity_residual(r, forms3) <= 1e-9);
    }
    auto slab = restrict_halfspace(cube, Vec3(0, 0, 1), 0.5);
    CHECK(mass(slab.restricted) == doctest::Approx(0.5));
    CHECK(mass(slab.cut) == doctest::Approx(1.0));
}

TEST_CASE("traces")
{
    VoxelSet p = block(4, 4);
    auto forms = form_battery(2, 1);

    Trace all = trace_current(p, block(8, 8, 1.0, -2, -2));
    CHECK(all.faces.faces.size() == 16);
    CHECK(mass(all.chain) == doctest::Approx(16.0));

    Trace none = trace_current(p, block(2, 2, 1.0, 10, 10));
    CHECK(none.chain.is_zero());

    VoxelSet m = block(2, 8, 1.0, 1, -2);
    Trace t = trace_current(p, m);
    CHECK(mass(t.chain) == doctest::Approx(4.0));
    for (const auto& w : forms) CHECK(std::abs(evaluate(t.chain, w) - trace_direct(p, m, w)) <= 1e-9);

    CHECK_THROWS_WITH_AS(trace_current(p, block(2, 4)), "trace generator overlaps boundary", Error);
}

TEST_CASE("quadratic Koch island")
{
    const double h = 1.0 / 512;
    auto k0 = koch_prefractal(0, h);
    CHECK(k0.measure() == doctest::Approx(1.0));
    CHECK(measure_boundary(k0).measure() == doctest::Approx(4.0));
    auto k1 = koch_prefractal(1, h);
    CHECK(measure_boundary(k1).measure() / measure_boundary(k0).measure() == doctest::Approx(2.0));
    double previous = 0.0;
    for (int k = 0; k <= 4; ++k) {
        auto u = koch_prefractal(k, h);
        CHECK(u.measure() == doctest::Approx(1.0));
        double per = measure_boundary(u).measure();
        CHECK(per == doctest::Approx(4.0 * std::pow(2.0, k)));
        CHECK(per > previous);
        previous = per;
    }
    CHECK_THROWS_AS(koch_prefractal(3, 1.0 / 32), Error);
    CHECK_THROWS_AS(koch_polygon(7), Error);
    CHECK(koch_polygon(2).size() == 256);
}
