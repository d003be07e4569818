#include "fixtures.hpp"

#include <gmt/battery.hpp>
#include <gmt/error.hpp>
#include <gmt/transport.hpp>

#include <doctest.h>

#include <random>

using namespace gmt;
using namespace fixtures;

namespace {

const PolynomialForm kArea = PolynomialForm::basis(2, {0, 1}, 1.0);

Motion wobble(const ComplexPtr& k, std::uint64_t seed, double amp = 0.3, double t_max = 1.0)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-amp, amp);
    std::vector<Motion::Trajectory> c;
    for (const auto& p : k->vertices()) c.push_back({p, P(u(rng), u(rng)), P(u(rng), u(rng))});
    return Motion(k, std::move(c), t_max);
}

ComplexPtr segment()
{
    return complex_from(2, {P(0, 0), P(0, 1)}, {{0, 1}});
}

} // namespace

TEST_CASE("motions")
{
    auto k = unit_square();
    auto d = Motion::dilation(k, 1.0);
    CHECK(d.position(2, 0.5).isApprox(P(1.5, 1.5)));
    CHECK(d.velocity(2).isApprox(P(1, 1)));
    auto r = Motion::rotation(k, 2.0);
    CHECK(r.velocity(1).isApprox(P(0, 2)));
    CHECK(r.velocity(1, 0.5).isApprox(P(-2, 2)));

    auto c = certify(d);
    CHECK(c.embedded);
    CHECK(c.times.size() == 5);
    CHECK(c.min_bilip == doctest::Approx(1.0));

    std::vector<Motion::Trajectory> bad(3, {P(0, 0), P(0, 0), P(0, 0)});
    CHECK_THROWS_AS(Motion(k, bad), Error);
    std::vector<Motion::Trajectory> lifted(4, {P(0, 0), P(0, 0, 1), P(0, 0)});
    CHECK_THROWS_AS(Motion(k, lifted), Error);
}

TEST_CASE("material velocity")
{
    auto k = unit_square();
    auto mv = material_velocity(Motion::dilation(k, 1.0));
    REQUIRE(mv.v.size() == 2);
    CHECK(mv.v[0].values()[2] == doctest::Approx(1.0));
    REQUIRE(mv.u.size() == 2);
    CHECK(mv.u[0][1].isApprox(P(1, 0)));

    std::vector<Motion::Trajectory> scaled;
    for (const auto& p : k->vertices()) scaled.push_back({2 * p, p, P(0, 0)});
    auto half = material_velocity(Motion(k, scaled));
    CHECK(half.u[0][2].isApprox(P(0.5, 0.5)));

    std::vector<Motion::Trajectory> flat;
    for (const auto& p : k->vertices()) flat.push_back({P(p(0), 0), P(0, 1), P(0, 0)});
    CHECK_THROWS_WITH_AS(material_velocity(Motion(k, flat)), doctest::Contains("singular differential"), Error);
}

TEST_CASE("homotopy prism")
{
    auto k = segment();
    PiecewiseAffineMap f(k, {P(0, 0), P(0, 1)}, 2);
    PiecewiseAffineMap g(k, {P(1, 0), P(1, 1)}, 2);
    Chain t(k, 1);
    t.add_oriented({0, 1}, 1.0);

    auto h = homotopy_prism(f, g, t);
    REQUIRE_FALSE(h.trivial);
    CHECK(evaluate(h.chain, kArea) == doctest::Approx(1.0));
    CHECK(mass(h.chain) == doctest::Approx(1.0));
    // boundary of the prism is g#T - f#T - P(boundary T)
    Chain db = boundary(h.chain);
    CHECK(evaluate(db, PolynomialForm::basis(2, {0}, 1.0)) == doctest::Approx(0.0));
    CHECK(evaluate(db, PolynomialForm::basis(2, {1}, 1.0)) == doctest::Approx(0.0));
    CHECK(evaluate(db, PolynomialForm::basis(2, {1}, x())) == doctest::Approx(1.0));
    CHECK(homotopy_formula_residual(f, g, t) < 1e-12);

    Chain pt(k, 0);
    pt.add_cell(1, 1.0);
    auto hp = homotopy_prism(f, g, pt);
    CHECK(evaluate(hp.chain, PolynomialForm::basis(2, {0}, 1.0)) == doctest::Approx(1.0));
    CHECK(homotopy_formula_residual(f, g, pt) < 1e-12);

    Chain dense(k, 1);
    dense.add_cell(0, barycentric_affine(std::vector<double>{0.0, 1.0}));
    CHECK_THROWS_AS(homotopy_prism(f, g, dense), Error);
}

TEST_CASE("homotopy formula on cycles and bodies")
{
    auto k = grid(3);
    auto m = wobble(k, 5);
    auto f = m.at(0.0);
    auto g = m.at(0.5);

    Chain loop = boundary(grid_body(k, 3));
    CHECK(homotopy_formula_residual(f, g, loop) < 1e-10);

    Chain body = grid_body(k, 3);
    CHECK(homotopy_prism(f, g, body).trivial);
    CHECK(homotopy_formula_residual(f, g, body) < 1e-10);

    Chain path(k, 1);
    path.add_oriented({gv(3, 0, 0), gv(3, 1, 0)}, 2.0);
    path.add_oriented({gv(3, 1, 0), gv(3, 1, 1)}, -0.5);
    CHECK(homotopy_formula_residual(f, g, path) < 1e-10);
}

TEST_CASE("pushforward of a weighted chain")
{
    auto k = grid(2);
    auto kappa = wobble(k, 9).at(0.4);
    auto psi = SharpField::sample(k, [](const Vec3& p) { return 1 + p(0) * p(1); });
    CHECK(product_pushforward_residual(kappa, psi, grid_body(k, 2)) < 1e-10);
    CHECK(product_pushforward_residual(kappa, psi, boundary(grid_body(k, 2))) < 1e-10);
}

TEST_CASE("transport of a fixed body")
{
    auto k = unit_square();
    auto m = Motion::fixed(k);
    auto psi = SharpField::sample(k, [](const Vec3& p) { return p(0); });
    auto c = transport_check(m, psi, square_body(k), kArea);
    CHECK(c.rhs == doctest::Approx(0.0));
    CHECK(c.slopes.empty());
    CHECK(c.pass);
}

TEST_CASE("transport under dilation")
{
    auto k = unit_square();
    auto m = Motion::dilation(k, 1.0);
    auto one = SharpField::constant(k, 1.0);
    auto rhs = transport_rhs(m, one, square_body(k), kArea);
    CHECK(std::abs(rhs.value - 2.0) < 1e-12);
    CHECK(std::abs(rhs.interior) < 1e-12);
    auto lhs = transport_lhs(m, one, square_body(k), kArea, 1e-2);
    CHECK(std::abs(lhs.value - 2.0) < 1e-10);
    CHECK(transport_check(m, one, square_body(k), kArea).pass);
}

TEST_CASE("transport under rotation")
{
    auto k = unit_square();
    auto m = Motion::rotation(k, 1.5);
    auto one = SharpField::constant(k, 1.0);
    auto rhs = transport_rhs(m, one, square_body(k), kArea);
    CHECK(std::abs(rhs.value) < 1e-12);

    auto psi = SharpField::sample(k, [](const Vec3& p) { return 1 + 2 * p(0) - p(1); });
    auto c = transport_check(m, psi, square_body(k), kArea);
    CHECK(c.agreement_ok);
    CHECK(c.pass);
}

TEST_CASE("transport on wobbling grids")
{
    auto k = grid(3);
    std::mt19937_64 rng(11);
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        auto m = wobble(k, seed, 0.5, 0.1);
        REQUIRE(certify(m).embedded);
        auto psi = SharpField::sample(k, [](const Vec3& p) { return std::sin(3 * p(0)) + p(1) * p(1); });
        auto w = random_form(2, 2, 2, rng);
        auto c = transport_check(m, psi, grid_body(k, 3), w);
        INFO("seed " << seed << " rhs " << c.rhs << " err " << c.final_error);
        CHECK(c.agreement_ok);
        CHECK(c.slope_ok);
    }
}

TEST_CASE("transport rejects bad input")
{
    auto k = unit_square();
    auto m = Motion::dilation(k, 1.0);
    auto one = SharpField::constant(k, 1.0);
    CHECK_THROWS_AS(transport_lhs(m, one, square_body(k), kArea, 2.0), Error);
    CHECK_THROWS_AS(transport_rhs(m, one, square_loop(k), PolynomialForm::basis(2, {0}, 1.0)), Error);
}
