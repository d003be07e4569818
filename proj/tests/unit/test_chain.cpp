#include "fixtures.hpp"

#include <gmt/error.hpp>

#include <doctest.h>

#include <numbers>

using namespace gmt;
using namespace fixtures;

TEST_CASE("simplex volumes")
{
    auto seg = complex_from(2, {P(0, 0), P(3, 4)}, {{0, 1}});
    CHECK(seg->volume(1, 0) == doctest::Approx(5.0));
    auto flat = complex_from(2, {P(0, 0), P(1, 1), P(2, 2)}, {{0, 1, 2}});
    CHECK(flat->volume(2, 0) == 0.0);
    CHECK(flat->degenerate(2, 0));
    auto tet = complex_from(3, {P(0, 0, 0), P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)}, {{0, 1, 2, 3}});
    CHECK(tet->volume(3, 0) == doctest::Approx(1.0 / 6.0));
    CHECK(tet->num_simplices(2) == 4);
    CHECK(tet->num_simplices(1) == 6);
}

TEST_CASE("complex closure and incidence")
{
    auto k = unit_square();
    CHECK(k->num_simplices(2) == 2);
    CHECK(k->num_simplices(1) == 5);
    CHECK(k->num_simplices(0) == 4);
    // explicit simplices keep their ids
    std::vector<int> t{0, 2, 3};
    CHECK(k->find(2, t).value() == 1);
    auto [id, sign] = k->find_oriented(std::vector<int>{2, 0, 1});
    CHECK(id == 0);
    CHECK(sign == 1);
    auto [id2, sign2] = k->find_oriented(std::vector<int>{1, 0});
    CHECK(sign2 == -1);
    (void)id2;
    CHECK_THROWS_AS(k->find_oriented(std::vector<int>{1, 3}), Error);
}

TEST_CASE("boundary: classical cases")
{
    auto seg = complex_from(2, {P(0, 0), P(1, 0)}, {{0, 1}});
    Chain s(seg, 1);
    s.add_oriented({0, 1}, 1.0);
    Chain b = boundary(s);
    CHECK(b.cells().at(1).constant_term() == 1.0);
    CHECK(b.cells().at(0).constant_term() == -1.0);

    auto tri = unit_triangle();
    Chain t(tri, 2);
    t.add_oriented({0, 1, 2}, 1.0);
    CHECK(boundary(boundary(t)).is_zero());
    CHECK(mass(boundary(t)) == doctest::Approx(2.0 + std::numbers::sqrt2));
    CHECK_THROWS_WITH_AS(boundary(b), "no boundary of 0-chain", Error);
}

TEST_CASE("mass examples")
{
    auto seg = complex_from(2, {P(0, 0), P(1, 0)}, {{0, 1}});
    Chain s(seg, 1);
    s.add_oriented({0, 1}, 1.0);
    CHECK(mass(s) == doctest::Approx(1.0));
    Chain t(unit_triangle(), 2);
    t.add_oriented({0, 1, 2}, 2.0);
    CHECK(mass(t) == doctest::Approx(1.0));
    Chain w(seg, 1);
    w.add_cell(0, Polynomial::variable(2, 1));
    CHECK(mass(w) == doctest::Approx(0.5));
    CHECK(mass(t * -3.0) == doctest::Approx(3.0 * mass(t)));
}

TEST_CASE("normal norm examples")
{
    auto seg = complex_from(2, {P(0, 0), P(1, 0)}, {{0, 1}});
    Chain s(seg, 1);
    s.add_oriented({0, 1}, 1.0);
    CHECK(normal_norm(s) == doctest::Approx(3.0));
    auto sq = unit_square();
    CHECK(normal_norm(square_loop(sq)) == doctest::Approx(4.0));
    Chain t(unit_triangle(), 2);
    t.add_oriented({0, 1, 2}, 1.0);
    CHECK(normal_norm(t) == doctest::Approx(0.5 + 2.0 + std::numbers::sqrt2));
}

TEST_CASE("evaluate examples")
{
    auto seg = complex_from(2, {P(0, 0), P(1, 0)}, {{0, 1}});
    Chain s(seg, 1);
    s.add_oriented({0, 1}, 1.0);
    CHECK(evaluate(s, PolynomialForm::basis(2, {0}, 1.0)) == doctest::Approx(1.0));
    CHECK(evaluate(s, PolynomialForm(2, 1)) == 0.0);
    Chain t(unit_triangle(), 2);
    t.add_oriented({0, 1, 2}, 1.0);
    CHECK(evaluate(t, PolynomialForm::basis(2, {0, 1}, x())) == doctest::Approx(1.0 / 6.0));
    CHECK_THROWS_AS(evaluate(t, PolynomialForm::basis(2, {0}, 1.0)), Error);
}

TEST_CASE("Stokes on density-weighted simplices")
{
    auto tet = complex_from(3, {P(0.1, 0, 0), P(1, 0.2, 0), P(0, 1, 0.3), P(0.2, 0.1, 1.4)}, {{0, 1, 2, 3}});
    Chain c(tet, 3);
    Polynomial dens = Polynomial::variable(4, 0) * 2.0 + Polynomial::variable(4, 2) * Polynomial::variable(4, 3) * 3.0;
    c.add_cell(0, dens);
    Polynomial xx = coordinate(3, 0), yy = coordinate(3, 1), zz = coordinate(3, 2);
    PolynomialForm w = PolynomialForm::basis(3, {0, 1}, xx * zz) + PolynomialForm::basis(3, {1, 2}, yy * yy)
                       + PolynomialForm::basis(3, {0, 2}, xx + Polynomial::constant(3, 2.0));
    CHECK(evaluate(boundary(c), w) == doctest::Approx(evaluate(c, w.d())).epsilon(1e-12));

    auto sq = unit_square();
    Chain a(sq, 2);
    a.add_cell(0, Polynomial::variable(3, 1) * 4.0 - Polynomial::constant(3, 1.0));
    a.add_cell(1, Polynomial::variable(3, 0) * Polynomial::variable(3, 2));
    PolynomialForm v = PolynomialForm::basis(2, {0}, x() * y())
                       + PolynomialForm::basis(2, {1}, x() * x());
    CHECK(evaluate(boundary(a), v) == doctest::Approx(evaluate(a, v.d())).epsilon(1e-12));
}

TEST_CASE("interior products")
{
    auto sq = unit_square();
    Chain body = square_body(sq);
    // e1 contracted into the unit square, tested on dy
    PolyVector e1{Polynomial::constant(2, 1.0), Polynomial(2), Polynomial(2)};
    Chain c = interior_product_covector(e1, body);
    CHECK(c.dim() == 1);
    CHECK(evaluate(c, PolynomialForm::basis(2, {1}, 1.0)) == doctest::Approx(1.0));
    CHECK(interior_product_covector(PolyVector{Polynomial(2), Polynomial(2), Polynomial(2)}, body).is_zero());
    // u ^ loop on dx ^ dy equals loop(u ⌟ dx^dy) and vanishes for constant u on a cycle
    PolyVector u{Polynomial::constant(2, 0.7), Polynomial::constant(2, -0.2), Polynomial(2)};
    Chain lifted = interior_product_vector(u, square_loop(sq));
    CHECK(lifted.dim() == 2);
    CHECK(std::abs(evaluate(lifted, PolynomialForm::basis(2, {0, 1}, 1.0))) < 1e-15);
    PolyVector ux{x(), Polynomial(2), Polynomial(2)};
    PolynomialForm area = PolynomialForm::basis(2, {0, 1}, 1.0);
    // loop(x ⌟ dx^dy) = loop(x dy) = 1
    CHECK(evaluate(interior_product_vector(ux, square_loop(sq)), area) == doctest::Approx(1.0));
}

TEST_CASE("chain linearity and canonical form")
{
    auto sq = unit_square();
    Chain a = square_body(sq);
    Chain z = a - a;
    CHECK(z.is_zero());
    CHECK(mass(a + a) <= mass(a) + mass(a) + 1e-15);
    auto flat = complex_from(2, {P(0, 0), P(1, 1), P(2, 2)}, {{0, 1, 2}});
    Chain d(flat, 2);
    d.add_cell(0, 1.0);
    CHECK(d.is_zero());
}
