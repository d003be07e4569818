#include "fixtures.hpp"

#include <gmt/battery.hpp>
#include <gmt/cauchy_flux.hpp>
#include <gmt/error.hpp>
#include <gmt/flat_norm.hpp>

#include <doctest.h>

#include <random>

using namespace gmt;
using namespace fixtures;

namespace {

Chain diagonal(const ComplexPtr& k, int n)
{
    Chain c(k, 1);
    for (int i = 0; i < n; ++i) c.add_oriented({gv(n, i, i), gv(n, i + 1, i + 1)}, 1.0);
    return c;
}

// staircase from (0,0) to (1,1) with steps of `step` grid cells
Chain staircase(const ComplexPtr& k, int n, int step)
{
    Chain c(k, 1);
    for (int s = 0; s < n; s += step) {
        for (int i = s; i < s + step; ++i) c.add_oriented({gv(n, i, s), gv(n, i + 1, s)}, 1.0);
        for (int j = s; j < s + step; ++j) c.add_oriented({gv(n, s + step, j), gv(n, s + step, j + 1)}, 1.0);
    }
    return c;
}

Chain right_face(const ComplexPtr& sq)
{
    Chain c(sq, 1);
    c.add_oriented({1, 2}, 1.0);
    return c;
}

Cochain global(const ComplexPtr& k, const PolynomialForm& w)
{
    return {FlatForm::global(k, w), ""};
}

PiecewiseAffineMap scaled(const ComplexPtr& k, double s)
{
    std::vector<Vec3> images;
    for (const auto& v : k->vertices()) images.push_back(s * v);
    return PiecewiseAffineMap(k, images, 2);
}

std::vector<SharpField> velocity(const ComplexPtr& k, const std::function<double(const Vec3&)>& a,
                                 const std::function<double(const Vec3&)>& b)
{
    return {SharpField::sample(k, a), SharpField::sample(k, b)};
}

} // namespace

TEST_CASE("flat forms")
{
    auto sq = unit_square();
    auto dy = FlatForm::global(sq, PolynomialForm::basis(2, {1}, 1.0));
    CHECK(dy.jump_free());
    CHECK(dy.norm().value == 1.0);
    CHECK(dy.norm().derivative == 0.0);
    CHECK(dy.derivative(0).is_zero());

    auto xdy = FlatForm::global(sq, PolynomialForm::basis(2, {1}, x()));
    CHECK(xdy.norm().form == doctest::Approx(1.0));
    CHECK(xdy.norm().derivative == doctest::Approx(1.0));
    CHECK(xdy.norm().exact);

    // dy on one triangle, 2 dy on the other: the shared diagonal sees a jump
    FlatForm jump(sq, 1, {{0, PolynomialForm::basis(2, {1}, 1.0)}, {1, PolynomialForm::basis(2, {1}, 2.0)}});
    CHECK_FALSE(jump.jump_free());
    // dx and dy agree tangentially on x = y
    FlatForm tangential(sq, 1, {{0, PolynomialForm::basis(2, {0}, 1.0)}, {1, PolynomialForm::basis(2, {1}, 1.0)}});
    CHECK(tangential.jump_free());

    CHECK_THROWS_AS(FlatForm(sq, 3, {}), Error);
    FlatForm supplied(sq, 1, {}, {{0, PolynomialForm::basis(2, {0, 1}, 1.0)}});
    CHECK_FALSE(supplied.derived());
}

TEST_CASE("Wolfe evaluation")
{
    auto sq = unit_square();
    Cochain dy = global(sq, PolynomialForm::basis(2, {1}, 1.0));
    CHECK(wolfe_evaluate(dy, right_face(sq)) == doctest::Approx(1.0));
    CHECK(wolfe_evaluate(dy, Chain(sq, 1)) == 0.0);
    CHECK(wolfe_evaluate(dy, WolfeInput{}) == 0.0);

    // D = 0, dD = dx ^ dy, xi the unit square
    Cochain x{FlatForm(sq, 1, {}, {{0, PolynomialForm::basis(2, {0, 1}, 1.0)}, {1, PolynomialForm::basis(2, {0, 1}, 1.0)}}),
              "X"};
    CHECK(wolfe_evaluate(x, WolfeInput{Chain(), square_body(sq)}) == doctest::Approx(1.0));

    // eta part: L^2 ^ e2 on the square pairs with dy
    Chain eta(sq, 1);
    GradedPolynomial e2(2, 1, 3);
    e2[0b10] = Polynomial::constant(3, 2.0);
    eta.add_integration({2, 0}, e2);
    eta.add_integration({2, 1}, e2);
    // integration densities are per unit of the standard simplex (area 1/2)
    CHECK(wolfe_evaluate(dy, WolfeInput{eta, Chain()}) == doctest::Approx(2.0 * 0.5 * 2));

    Cochain jump{FlatForm(sq, 1, {{0, PolynomialForm::basis(2, {1}, 1.0)}, {1, PolynomialForm::basis(2, {1}, 2.0)}}),
                 ""};
    Chain diag(sq, 1);
    diag.add_oriented({0, 2}, 1.0);
    CHECK_THROWS_WITH_AS(wolfe_evaluate(jump, diag), "form discontinuous on carrier", Error);
    CHECK(wolfe_evaluate(jump, right_face(sq)) == doctest::Approx(1.0));
    // the same chain through a Wolfe input avoids the trace
    CHECK(wolfe_evaluate(jump, WolfeInput{Chain(), square_body(sq)}) == 0.0);

    CHECK_THROWS_AS(wolfe_evaluate(dy, square_body(sq)), Error);
}

TEST_CASE("coboundary duality")
{
    auto sq = unit_square();
    Cochain dy = global(sq, PolynomialForm::basis(2, {1}, 1.0));
    auto d = coboundary(dy);
    CHECK(d.grade() == 2);
    CHECK(wolfe_evaluate(d, square_body(sq)) == 0.0);

    Cochain xdy = global(sq, PolynomialForm::basis(2, {1}, x()));
    CHECK(wolfe_evaluate(xdy, square_loop(sq)) == doctest::Approx(1.0));
    CHECK(wolfe_evaluate(coboundary(xdy), square_body(sq)) == doctest::Approx(1.0));

    const int n = 4;
    auto k = grid(n);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    for (const auto& w : form_battery(2, 1, 6, 3, default_seed())) {
        Cochain c = global(k, w);
        Chain a(k, 2);
        for (int id = 0; id < k->num_simplices(2); ++id) a.add_cell(id, u(rng));
        CHECK(wolfe_evaluate(coboundary(c), a) == doctest::Approx(wolfe_evaluate(c, boundary(a))));
    }
    for (const auto& w : form_battery(2, 0, 4, 3, default_seed())) {
        Cochain c = global(k, w);
        auto dd = coboundary(coboundary(c));
        for (int id = 0; id < k->num_simplices(2); ++id) CHECK(dd.form.piece(id).is_zero());
    }

    auto tet = complex_from(3, {P(0, 0, 0), P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)}, {{0, 1, 2, 3}});
    for (const auto& w : form_battery(3, 1, 4, 2, default_seed())) {
        Cochain c = global(tet, w);
        CHECK(coboundary(coboundary(c)).form.piece(0).is_zero());
        Chain t(tet, 3);
        t.add_oriented({0, 1, 2, 3}, 1.0);
        auto c2 = coboundary(c);
        CHECK(wolfe_evaluate(c2, boundary(t)) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("wedge Leibniz rule")
{
    const int n = 3;
    auto k = grid(n);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1, 1);
    auto zeros = form_battery(2, 0, 4, 2, default_seed());
    auto ones = form_battery(2, 1, 4, 2, default_seed() + 1);
    for (std::size_t t = 0; t < zeros.size(); ++t) {
        auto a = FlatForm::global(k, zeros[t]);
        auto b = FlatForm::global(k, ones[t]);
        Cochain ab{wedge(a, b), ""};
        Cochain da_b{wedge(coboundary({a, ""}).form, b), ""};
        Cochain a_db{wedge(a, coboundary({b, ""}).form), ""};
        Chain body(k, 2);
        for (int id = 0; id < k->num_simplices(2); ++id) body.add_cell(id, u(rng));
        const double lhs = wolfe_evaluate(coboundary(ab), body);
        CHECK(lhs == doctest::Approx(wolfe_evaluate(ab, boundary(body))));
        CHECK(lhs == doctest::Approx(wolfe_evaluate(da_b, body) + wolfe_evaluate(a_db, body)));
    }
}

TEST_CASE("flux evaluation")
{
    auto sq = unit_square();
    PiecewiseAffineMap id(sq, sq->vertices(), 2);
    auto img = id.image_complex();
    CauchyFlux phi({global(img, PolynomialForm::basis(2, {1}, 1.0)), {FlatForm::zero(img, 1), ""}}, id);
    auto e1 = velocity(img, [](const Vec3&) { return 1.0; }, [](const Vec3&) { return 0.0; });
    CHECK(flux_eval(phi, right_face(sq), e1) == doctest::Approx(1.0));
    auto zero = velocity(img, [](const Vec3&) { return 0.0; }, [](const Vec3&) { return 0.0; });
    CHECK(flux_eval(phi, right_face(sq), zero) == 0.0);

    Chain left(sq, 1);
    left.add_oriented({3, 0}, 1.0);
    auto v = velocity(img, [](const Vec3& p) { return 1 + p(1); }, [](const Vec3& p) { return p(0); });
    const double both = flux_eval(phi, right_face(sq) + left, v);
    CHECK(both == doctest::Approx(flux_eval(phi, right_face(sq), v) + flux_eval(phi, left, v)));
    CHECK(flux_eval(phi, right_face(sq), v) == doctest::Approx(1.5));
    CHECK(flux_eval(phi, left, v) == doctest::Approx(-1.5));

    // linearity in v
    auto w = velocity(img, [](const Vec3& p) { return p(0) * 3; }, [](const Vec3&) { return 2.0; });
    auto vw = velocity(img, [](const Vec3& p) { return 2 * (1 + p(1)) - p(0) * 3; }, [](const Vec3& p) { return 2 * p(0) - 2.0; });
    CHECK(flux_eval(phi, right_face(sq), vw)
          == doctest::Approx(2 * flux_eval(phi, right_face(sq), v) - flux_eval(phi, right_face(sq), w)));

    CHECK_THROWS_AS(CauchyFlux({global(img, PolynomialForm::basis(2, {1}, 1.0))}, id), Error);
    CHECK_THROWS_AS(flux_eval(phi, right_face(sq), {SharpField::constant(sq, 1.0), SharpField::constant(sq, 0.0)}),
                    Error);
}

TEST_CASE("balance report")
{
    auto sq = unit_square();
    PiecewiseAffineMap id(sq, sq->vertices(), 2);
    auto img = id.image_complex();
    auto e1 = velocity(img, [](const Vec3&) { return 1.0; }, [](const Vec3&) { return 0.0; });
    std::vector<FluxProbe> faces;
    for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {3, 0}}) {
        Chain c(sq, 1);
        c.add_oriented({a, b}, 1.0);
        faces.push_back({c, e1});
    }
    std::vector<FluxProbe> bodies{{square_body(sq), e1}};

    CauchyFlux none({{FlatForm::zero(img, 1), ""}, {FlatForm::zero(img, 1), ""}}, id);
    auto z = balance_report(none, faces, bodies);
    CHECK(z.s_hat == 0.0);
    CHECK(z.b_hat == 0.0);
    CHECK(z.pass);

    CauchyFlux dy({global(img, PolynomialForm::basis(2, {1}, 1.0)), {FlatForm::zero(img, 1), ""}}, id);
    auto r = balance_report(dy, faces, bodies);
    CHECK(r.s_hat == doctest::Approx(1.0));
    CHECK(r.flat_norm == doctest::Approx(1.0));
    CHECK(r.b_hat == 0.0);
    CHECK(r.pass);

    Chain empty(sq, 1);
    auto s = balance_report(dy, {{empty, e1}, faces[1]}, bodies);
    CHECK(s.skipped == 1);
    CHECK(s.warnings.size() == 1);

    // a varying field and a body force on a grid
    const int n = 3;
    auto k = grid(n);
    PiecewiseAffineMap kid(k, k->vertices(), 2);
    auto kimg = kid.image_complex();
    CauchyFlux phi({global(kimg, PolynomialForm::basis(2, {1}, x()) + PolynomialForm::basis(2, {0}, y())),
                    global(kimg, PolynomialForm::basis(2, {0}, x() * 0.5))},
                   kid);
    std::vector<FluxProbe> surf;
    std::vector<FluxProbe> body;
    auto v = velocity(kimg, [](const Vec3& p) { return 1 + p(0) * p(1); }, [](const Vec3& p) { return p(1) - 0.5; });
    for (int id2 = 0; id2 < k->num_simplices(1); ++id2) {
        Chain c(k, 1);
        c.add_cell(id2, 1.0);
        surf.push_back({c, v});
    }
    body.push_back({grid_body(k, n), v});
    auto g = balance_report(phi, surf, body);
    CHECK(g.pass);
    CHECK(g.s_hat > 0.0);
    CHECK(g.b_hat > 0.0);
}

TEST_CASE("flux tables and extension")
{
    const int n = 8;
    auto k = grid(n);
    Cochain xdy = global(k, PolynomialForm::basis(2, {1}, x()));
    auto t = induced_table(xdy);
    CHECK(t.s == doctest::Approx(1.0));
    CHECK(t.b == doctest::Approx(1.0));
    auto bounds = table_bounds(t);
    CHECK(bounds.ok);
    CHECK(bounds.flat_lower <= 1.0 + 1e-12);

    Chain diag = diagonal(k, n);
    auto same = extend_flux(t, diag, {diag});
    CHECK(same.value == doctest::Approx(wolfe_evaluate(xdy, diag)));
    CHECK(same.gap == doctest::Approx(0.0).epsilon(1e-12));

    std::vector<Chain> stairs;
    for (int step = n; step >= 1; step /= 2) stairs.push_back(staircase(k, n, step));
    auto ext = extend_flux(t, diag, stairs);
    CHECK(ext.steps_ok);
    for (std::size_t j = 0; j < stairs.size(); ++j) {
        const double h = double(n >> j) / n;
        CHECK(ext.values[j] == doctest::Approx((1 + h) / 2));
        CHECK(ext.distances[j] == doctest::Approx(h / 2).epsilon(1e-6));
    }
    CHECK(ext.value == doctest::Approx(0.5 + 0.5 / n));
    CHECK(std::abs(ext.value - wolfe_evaluate(xdy, diag)) <= ext.gap + 1e-9);

    std::vector<Chain> backwards(stairs.rbegin(), stairs.rend());
    CHECK_THROWS_WITH_AS(extend_flux(t, diag, backwards), "refinement not converging", Error);

    SimplicialFluxTable zero{k, {}, 0.0, 0.0};
    CHECK(extend_flux(zero, diag, stairs).value == 0.0);

    auto bad = t;
    bad.s = 0.5;
    CHECK_THROWS_AS(extend_flux(bad, diag, stairs), Error);

    for (std::uint64_t seed : {1, 2, 3}) {
        auto w = well_defined_check(t, 10, seed);
        CHECK(w.trials == 10);
        CHECK(w.max_residual <= kWellDefinedTol);
    }
    auto one = [](const Vec3&) { return 1.0; };
    CHECK(table_flux(t, {0, 1, 2}, one) - table_flux(t, {0, 1, 2}, one) == 0.0);
}

TEST_CASE("kinematic interpolation")
{
    auto sq = unit_square();
    PiecewiseAffineMap id(sq, sq->vertices(), 2);
    auto img = id.image_complex();
    auto c = kinematic_interpolation(id, square_body(sq),
                                     velocity(img, [](const Vec3&) { return 2.0; }, [](const Vec3&) { return -1.0; }));
    CHECK(c.residual <= 1e-12);
    for (const auto& w : form_battery(2, 1)) {
        CHECK(evaluate(c.components[0], w) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(evaluate(c.components[1], w) == doctest::Approx(0.0).epsilon(1e-12));
    }

    auto v = velocity(img, [](const Vec3& p) { return p(0); }, [](const Vec3&) { return 0.0; });
    auto r = kinematic_interpolation(id, square_body(sq), v);
    CHECK(r.residual <= 1e-9);
    CHECK(r.bound_ok);
    CHECK(evaluate(r.components[0], PolynomialForm::basis(2, {1}, 1.0)) == doctest::Approx(1.0));
    CHECK(evaluate(r.components[0], PolynomialForm::basis(2, {0}, 1.0)) == doctest::Approx(0.0).epsilon(1e-12));

    auto w = velocity(img, [](const Vec3& p) { return p(1) * p(1); }, [](const Vec3& p) { return p(0) + p(1); });
    auto vw = velocity(img, [](const Vec3& p) { return 2 * p(0) + 3 * p(1) * p(1); }, [](const Vec3& p) { return 3 * (p(0) + p(1)); });
    auto a = kinematic_interpolation(id, square_body(sq), v);
    auto b = kinematic_interpolation(id, square_body(sq), w);
    auto ab = kinematic_interpolation(id, square_body(sq), vw);
    for (const auto& f : form_battery(2, 1)) {
        for (int i = 0; i < 2; ++i) {
            CHECK(evaluate(ab.components[i], f)
                  == doctest::Approx(2 * evaluate(a.components[i], f) + 3 * evaluate(b.components[i], f)));
        }
    }
}

TEST_CASE("virtual work")
{
    const int n = 3;
    auto k = grid(n);
    std::mt19937_64 rng(default_seed());
    std::uniform_real_distribution<double> u(-1, 1);
    std::uniform_real_distribution<double> jiggle(-0.05, 0.05);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        std::vector<Vec3> images;
        for (const auto& p : k->vertices()) images.push_back(p + Vec3(jiggle(rng), jiggle(rng), 0));
        PiecewiseAffineMap kappa(k, images, 2);
        auto img = kappa.image_complex();
        CauchyFlux phi({global(img, random_form(2, 1, 2, rng)), global(img, random_form(2, 1, 2, rng))}, kappa);
        std::vector<SharpField> v;
        for (int i = 0; i < 2; ++i) {
            std::vector<double> vals;
            for (int j = 0; j < img->num_vertices(); ++j) vals.push_back(u(rng));
            v.emplace_back(img, vals);
        }
        Chain body(k, 2);
        for (int id = 0; id < k->num_simplices(2); ++id) {
            if (u(rng) > -0.3) body.add_cell(id, 1.0);
        }
        auto vw = virtual_work(phi, body, v);
        CHECK(vw.ok);
        worst = std::max(worst, vw.residual / vw.scale);
        auto ref = virtual_power_terms(phi, body, v);
        CHECK(ref.ok);
        CHECK(ref.surface == doctest::Approx(vw.surface));
        CHECK(ref.body_force == doctest::Approx(vw.body_force));
        CHECK(ref.internal == doctest::Approx(vw.internal));
    }
    CHECK(worst <= kVirtualWorkTol);

    auto sq = unit_square();
    PiecewiseAffineMap id(sq, sq->vertices(), 2);
    auto img = id.image_complex();
    CauchyFlux xdy({global(img, PolynomialForm::basis(2, {1}, x())), {FlatForm::zero(img, 1), ""}}, id);
    auto c = velocity(img, [](const Vec3&) { return 1.0; }, [](const Vec3&) { return 0.0; });
    auto cw = virtual_work(xdy, square_body(sq), c);
    CHECK(cw.internal == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cw.surface == doctest::Approx(1.0));
    CHECK(cw.body_force == doctest::Approx(-1.0));
    CHECK(virtual_work_residual(xdy, square_body(sq), c) <= 1e-12);

    CauchyFlux none({{FlatForm::zero(img, 1), ""}, {FlatForm::zero(img, 1), ""}}, id);
    CHECK(virtual_work_residual(none, square_body(sq), c) == 0.0);
}

TEST_CASE("virtual power on the reference body")
{
    auto sq = unit_square();
    auto twice = scaled(sq, 2.0);
    auto img = twice.image_complex();
    CauchyFlux phi({global(img, PolynomialForm::basis(2, {1}, x())), global(img, PolynomialForm::basis(2, {0}, y() * x()))},
                   twice);
    auto v = velocity(img, [](const Vec3& p) { return p(0) + 2 * p(1); }, [](const Vec3& p) { return 1 - p(0); });
    auto ref = virtual_power_terms(phi, square_body(sq), v);
    auto image = virtual_work(phi, square_body(sq), v);
    CHECK(ref.residual <= 1e-9 * ref.scale);
    CHECK(ref.surface == doctest::Approx(image.surface));
    CHECK(ref.body_force == doctest::Approx(image.body_force));
    CHECK(ref.internal == doctest::Approx(image.internal));
    // body force of the first component: -int_{[0,2]^2} v_1 dx dy = -(4 + 8) * ... by hand
    // int (x + 2y) over [0,2]^2 = 4 + 8 = 12
    auto e = velocity(img, [](const Vec3& p) { return p(0) + 2 * p(1); }, [](const Vec3&) { return 0.0; });
    CHECK(virtual_power_terms(phi, square_body(sq), e).body_force == doctest::Approx(-12.0));

    auto zero = velocity(img, [](const Vec3&) { return 0.0; }, [](const Vec3&) { return 0.0; });
    auto z = virtual_power_terms(phi, square_body(sq), zero);
    CHECK(z.surface == 0.0);
    CHECK(z.body_force == 0.0);
    CHECK(z.internal == 0.0);

    // folding the square onto itself is not injective
    auto fold = PiecewiseAffineMap(sq, {P(0, 0), P(1, 0), P(1, 1), P(1, 0.5)}, 2);
    auto fimg = fold.image_complex();
    CauchyFlux folded({global(fimg, PolynomialForm::basis(2, {1}, 1.0)), {FlatForm::zero(fimg, 1), ""}}, fold);
    CHECK_THROWS_AS(virtual_power_terms(folded, square_body(sq), velocity(fimg, [](const Vec3&) { return 1.0; },
                                                                            [](const Vec3&) { return 0.0; })),
                    Error);
}

TEST_CASE("Piola-Kirchhoff stress")
{
    auto sq = unit_square();
    PiecewiseAffineMap id(sq, sq->vertices(), 2);
    auto img = id.image_complex();
    CauchyFlux phi({global(img, PolynomialForm::basis(2, {1}, x())), global(img, PolynomialForm::basis(2, {0}, y()))}, id);
    auto pk = piola_kirchhoff(phi);
    for (int i = 0; i < 2; ++i) {
        for (int c = 0; c < 2; ++c) {
            auto diff = pk[i].piece(c) - phi.components()[i].form.piece(c);
            CHECK(diff.components().max_abs_coefficient() <= 1e-15);
        }
    }

    auto twice = scaled(sq, 2.0);
    auto timg = twice.image_complex();
    CauchyFlux psi({global(timg, PolynomialForm::basis(2, {1}, Polynomial::constant(2, 1.0) + x())), global(timg, PolynomialForm::basis(2, {0}, y()))},
                   twice);
    auto pk2 = piola_kirchhoff(psi);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    const int edges = sq->num_simplices(1);
    for (int t = 0; t < 10; ++t) {
        Chain a(sq, 1);
        for (int e = 0; e < edges; ++e) a.add_cell(e, u(rng));
        Chain b(sq, 2);
        for (int c = 0; c < 2; ++c) b.add_cell(c, u(rng));
        for (int i = 0; i < 2; ++i) {
            Cochain pulled{pk2[i], ""};
            CHECK(wolfe_evaluate(pulled, a) == doctest::Approx(wolfe_evaluate(psi.components()[i], pushforward(twice, a))));
            CHECK(wolfe_evaluate(coboundary(pulled), b)
                  == doctest::Approx(wolfe_evaluate(coboundary(psi.components()[i]), pushforward(twice, b))));
        }
    }
    // dy pulls back to 2 dy and dx ^ dy to 4 dx ^ dy under the scaling
    CauchyFlux dy({global(timg, PolynomialForm::basis(2, {1}, 1.0)), {FlatForm::zero(timg, 1), ""}}, twice);
    CHECK(piola_kirchhoff(dy)[0].piece(0)[0b10].constant_term() == doctest::Approx(2.0));

    CauchyFlux none({{FlatForm::zero(img, 1), ""}, {FlatForm::zero(img, 1), ""}}, id);
    CHECK(piola_kirchhoff(none)[0].piece(0).is_zero());

    std::vector<Vec3> mirrored;
    for (const auto& p : sq->vertices()) mirrored.push_back(Vec3(-p(0), p(1), 0));
    PiecewiseAffineMap mirror(sq, mirrored, 2);
    auto mimg = mirror.image_complex();
    CauchyFlux m({{FlatForm::zero(mimg, 1), ""}, {FlatForm::zero(mimg, 1), ""}}, mirror);
    CHECK_THROWS_WITH_AS(piola_kirchhoff(m), "orientation violation", Error);
}
