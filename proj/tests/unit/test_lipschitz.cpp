#include "fixtures.hpp"

#include <gmt/battery.hpp>
#include <gmt/error.hpp>
#include <gmt/lipschitz_maps.hpp>

#include <Eigen/Geometry>
#include <doctest.h>

using namespace gmt;
using namespace fixtures;

namespace {

PiecewiseAffineMap linear_map(const ComplexPtr& k, const Mat3& a, int target = 2)
{
    return PiecewiseAffineMap::sample(k, [&](const Vec3& x) { return Vec3(a * x); }, target);
}

Mat3 diag(double a, double b)
{
    Mat3 m = Mat3::Identity();
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

ComplexPtr strip()
{
    // 2x1 strip across x = 0
    return complex_from(2, {P(-1, 0), P(0, 0), P(1, 0), P(-1, 1), P(0, 1), P(1, 1)},
                        {{0, 1, 4}, {0, 4, 3}, {1, 2, 5}, {1, 5, 4}});
}

} // namespace

TEST_CASE("subdivision preserves the current")
{
    auto sq = unit_square();
    Chain a = square_body(sq);
    auto s = barycentric_subdivision(sq);
    CHECK(s.fine->num_simplices(2) == 12);
    Chain fine = subdivide(a, s);
    CHECK(mass(fine) == doctest::Approx(1.0));
    for (const auto& w : form_battery(2, 1)) CHECK(evaluate(subdivide(a, s), w.d()) == doctest::Approx(evaluate(a, w.d())));
    CHECK((boundary(fine) - subdivide(boundary(a), s)).is_zero());

    Chain poly(sq, 2);
    poly.add_cell(0, Polynomial::variable(3, 1) * 3.0);
    for (const auto& w : form_battery(2, 2, 4)) {
        CHECK(evaluate(subdivide(poly, s), w) == doctest::Approx(evaluate(poly, w)));
    }
    CHECK(subdivision_tower(sq, 2).size() == 2);
}

TEST_CASE("Lipschitz constants")
{
    auto sq = unit_square();
    CHECK(lipschitz_constant(linear_map(sq, Mat3::Identity())) == doctest::Approx(1.0));
    CHECK(lipschitz_constant(linear_map(sq, 2 * Mat3::Identity())) == doctest::Approx(2.0));
    Mat3 shear = Mat3::Identity();
    shear(0, 1) = 1.0;
    CHECK(lipschitz_constant(linear_map(sq, shear)) == doctest::Approx((1 + std::sqrt(5.0)) / 2));
    auto edge = complex_from(2, {P(0, 0), P(0, 1)}, {{0, 1}});
    CHECK(lipschitz_constant(linear_map(edge, diag(2, 1))) == doctest::Approx(1.0));
}

TEST_CASE("embedding check")
{
    auto k = strip();
    auto id = embedding_check(linear_map(k, Mat3::Identity()));
    CHECK(id.embedding);
    CHECK(id.margin == doctest::Approx(1.0));
    CHECK(id.bilip_lower == doctest::Approx(1.0));
    CHECK(id.lip_upper == doctest::Approx(1.0));
    CHECK(id.sample_points > 4);

    auto fold = PiecewiseAffineMap::sample(k, [](const Vec3& x) { return Vec3(std::abs(x(0)), x(1), 0); }, 2);
    auto rf = embedding_check(fold);
    CHECK(rf.immersion);
    CHECK_FALSE(rf.injective);
    CHECK_FALSE(rf.embedding);
    CHECK(rf.overlapping_pair.size() == 2);

    auto tiny = embedding_check(linear_map(k, 1e-12 * Mat3::Identity()));
    CHECK_FALSE(tiny.immersion);
    CHECK_FALSE(tiny.embedding);

    // a 3D tetrahedral complex under a rotation
    auto cube = complex_from(3, {P(0, 0, 0), P(1, 0, 0), P(0, 1, 0), P(0, 0, 1), P(1, 1, 1)},
                             {{0, 1, 2, 3}, {1, 2, 3, 4}});
    Mat3 rot = Eigen::AngleAxisd(0.3, Vec3(1, 2, 3).normalized()).toRotationMatrix();
    auto rr = embedding_check(linear_map(cube, rot, 3));
    CHECK(rr.embedding);
    CHECK(rr.margin == doctest::Approx(1.0));
}

TEST_CASE("pushforward")
{
    auto sq = unit_square();
    Chain a = square_body(sq);
    auto id = linear_map(sq, Mat3::Identity());
    CHECK(coefficient_distance(pushforward(id, a), a.rebound(id.image_complex())) == 0.0);

    auto edge = complex_from(2, {P(0, 0), P(1, 0)}, {{0, 1}});
    Chain e(edge, 1);
    e.add_oriented({0, 1}, 1.0);
    CHECK(mass(pushforward(linear_map(edge, 2 * Mat3::Identity()), e)) == doctest::Approx(2.0));
    CHECK(mass(pushforward(linear_map(sq, 2 * Mat3::Identity()), a)) == doctest::Approx(4.0));

    // orientation reversal flips the value on dx^dy
    auto flip = linear_map(sq, diag(-1, 1));
    CHECK(evaluate(pushforward(flip, a), PolynomialForm::basis(2, {0, 1}, 1.0)) == doctest::Approx(-1.0));

    // injective map: image body agrees with the body of the image region
    Mat3 m = Mat3::Identity();
    m(0, 0) = 2.0;
    m(0, 1) = 0.5;
    m(1, 1) = 1.5;
    auto f = linear_map(sq, m);
    auto other = complex_from(2, {Vec3(m * P(0, 0)), Vec3(m * P(1, 0)), Vec3(m * P(1, 1)), Vec3(m * P(0, 1))},
                              {{0, 1, 3}, {1, 2, 3}});
    Chain region(other, 2);
    region.add_oriented({0, 1, 3}, 1.0);
    region.add_oriented({1, 2, 3}, 1.0);
    for (const auto& w : form_battery(2, 2, 10)) {
        CHECK(evaluate(pushforward(f, a), w) == doctest::Approx(evaluate(region, w)));
    }
}

TEST_CASE("pushforward commutes with the boundary")
{
    auto k = strip();
    Chain body(k, 2);
    body.add_oriented({0, 1, 4}, 1.0);
    body.add_oriented({0, 4, 3}, 2.0);
    body.add_oriented({1, 2, 5}, -1.0);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    std::vector<Vec3> images;
    for (const auto& v : k->vertices()) images.push_back(v + Vec3(u(rng), u(rng), 0));
    PiecewiseAffineMap f(k, images, 2);
    CHECK(pushforward_boundary_commutes(f, body) == 0.0);

    auto fold = PiecewiseAffineMap::sample(k, [](const Vec3& x) { return Vec3(std::abs(x(0)), x(1), 0); }, 2);
    CHECK(pushforward_boundary_commutes(fold, body) == 0.0);

    // collapsing map: degenerate images vanish, the residual is a flat-null chain
    auto squash = PiecewiseAffineMap::sample(k, [](const Vec3& x) { return Vec3(x(0), 0, 0); }, 2);
    CHECK(pushforward_boundary_commutes(squash, body) <= 1e-12);

    Chain cycle = boundary(body);
    CHECK(boundary(pushforward(f, cycle)).is_zero());
}

TEST_CASE("closed-form pushforward converges")
{
    auto sq = unit_square();
    Chain a = square_body(sq);
    PointMap wavy = [](const Vec3& x) {
        return Vec3(x(0) + 0.1 * std::sin(3 * x(1)), x(1) + 0.1 * std::sin(2 * x(0)), 0);
    };
    auto r1 = pushforward_closed_form(wavy, 2, a, 1);
    auto r2 = pushforward_closed_form(wavy, 2, a, 2);
    auto r3 = pushforward_closed_form(wavy, 2, a, 3);
    CHECK(r1.indicator > r2.indicator);
    CHECK(r2.indicator > r3.indicator);
    CHECK(r3.fine.d == 4);
    CHECK(std::abs(r3.fine.mass - r3.coarse.mass) <= r3.indicator);
    CHECK(pushforward_boundary_commutes(PiecewiseAffineMap::sample(sq, wavy, 2), a) == 0.0);

    auto ident = pushforward_closed_form([](const Vec3& x) { return x; }, 2, a, 1);
    CHECK(ident.indicator <= 1e-15);
    CHECK(ident.fine.mass == doctest::Approx(1.0));
}

TEST_CASE("pullback of forms")
{
    auto sq = unit_square();
    Chain a = square_body(sq);
    auto area = PolynomialForm::basis(2, {0, 1}, 1.0);
    auto id = pullback_form(linear_map(sq, Mat3::Identity()), area);
    for (const auto& [key, w] : id.pieces) CHECK(w[3].constant_term() == doctest::Approx(1.0));

    auto scaled = pullback_form(linear_map(sq, 2 * Mat3::Identity()), area);
    for (const auto& [key, w] : scaled.pieces) CHECK(w[3].constant_term() == doctest::Approx(4.0));

    Mat3 shear = Mat3::Identity();
    shear(0, 1) = 1.0;
    auto dy = pullback_form(linear_map(sq, shear), PolynomialForm::basis(2, {1}, 1.0));
    for (const auto& [key, w] : dy.pieces) {
        CHECK(w[1].is_zero());
        CHECK(w[2].constant_term() == doctest::Approx(1.0));
    }

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    auto k = strip();
    std::vector<Vec3> images;
    for (const auto& v : k->vertices()) images.push_back(v + Vec3(u(rng), u(rng), 0));
    PiecewiseAffineMap f(k, images, 2);
    Chain body(k, 2);
    body.add_oriented({0, 1, 4}, 1.0);
    body.add_oriented({1, 2, 5}, 0.5);
    Chain loop = boundary(body);
    for (const auto& w : form_battery(2, 2, 6)) {
        CHECK(evaluate(pushforward(f, body), w) == doctest::Approx(evaluate(body, pullback_form(f, w), f)).epsilon(1e-9));
    }
    for (const auto& w : form_battery(2, 1, 6)) {
        CHECK(evaluate(pushforward(f, loop), w) == doctest::Approx(evaluate(loop, pullback_form(f, w), f)).epsilon(1e-9));
    }
}

TEST_CASE("composition")
{
    auto sq = unit_square();
    Chain a = square_body(sq);
    auto f = linear_map(sq, diag(2, 1));
    auto g = PiecewiseAffineMap::sample(
        f.image_complex(), [](const Vec3& x) { return Vec3(x(0) + x(1), x(1) - 0.5 * x(0), 0); }, 2);
    auto gf = compose(g, f);
    Chain lhs = pushforward(gf, a);
    Chain rhs = pushforward(g, pushforward(f, a));
    CHECK(coefficient_distance(lhs, rhs.rebound(gf.image_complex())) == 0.0);
    CHECK(mass(lhs) == doctest::Approx(mass(rhs)));
    CHECK_THROWS_AS(compose(f, f), Error);
}

TEST_CASE("Lipschitz extension")
{
    LipschitzExtension cone({{Vec3(0, 0, 0), 2.0}}, 3.0);
    CHECK(cone(Vec3(1, 0, 0)) == doctest::Approx(5.0));
    CHECK(cone(Vec3(0, -2, 0)) == doctest::Approx(8.0));

    LipschitzExtension line({{Vec3(0, 0, 0), 0.0}, {Vec3(1, 0, 0), 2.0}, {Vec3(3, 0, 0), 6.0}}, 2.0);
    for (double t : {0.0, 0.25, 0.5, 1.5, 2.9, 3.0}) CHECK(line(Vec3(t, 0, 0)) == doctest::Approx(2 * t));
    CHECK_THROWS_AS(LipschitzExtension({{Vec3(0, 0, 0), 0.0}, {Vec3(1, 0, 0), 3.0}}, 2.0), Error);

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<std::pair<Vec3, double>> samples;
    for (int i = 0; i < 12; ++i) {
        Vec3 x(u(rng), u(rng), 0);
        samples.push_back({x, std::sin(x(0)) + 0.5 * x(1)});
    }
    LipschitzExtension ext(samples, 1.2);
    for (const auto& [x, v] : samples) CHECK(ext(x) == doctest::Approx(v));
    for (int i = 0; i < 200; ++i) {
        Vec3 p(u(rng), u(rng), 0), q(u(rng), u(rng), 0);
        CHECK(std::abs(ext(p) - ext(q)) <= 1.2 * (p - q).norm() + 1e-12);
    }

    VectorLipschitzExtension vec({{Vec3(0, 0, 0), Vec3(1, 2, 0)}}, 1.0, 2);
    CHECK(vec(Vec3(1, 0, 0)) == Vec3(2, 3, 0));
}

TEST_CASE("norm bounds")
{
    auto sq = unit_square();
    Chain a = square_body(sq);
    auto scale = norm_bound_report(linear_map(sq, 2 * Mat3::Identity()), a);
    CHECK(scale.ok);
    CHECK(scale.mass_ratio() == doctest::Approx(1.0));

    Mat3 rot = Eigen::AngleAxisd(0.7, Vec3::UnitZ()).toRotationMatrix();
    auto r = norm_bound_report(linear_map(sq, rot), boundary(a));
    CHECK(r.ok);
    CHECK(r.mass_ratio() == doctest::Approx(1.0));
    CHECK(r.normal_ratio() == doctest::Approx(1.0));
    CHECK(r.flat_ratio() == doctest::Approx(1.0));

    auto tri = complex_from(2, {P(0, 0), P(0, 1), P(1, 0)}, {{0, 1, 2}});
    Chain edge(tri, 1);
    edge.add_oriented({0, 1}, 1.0);
    auto stretch = norm_bound_report(linear_map(tri, diag(2, 1)), edge);
    CHECK(stretch.ok);
    CHECK(stretch.lip == doctest::Approx(2.0));
    CHECK(stretch.mass_lhs == doctest::Approx(1.0));
    CHECK(stretch.mass_ratio() == doctest::Approx(0.5));
}
