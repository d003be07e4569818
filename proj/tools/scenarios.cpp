#include "scenarios.hpp"

#include "builders.hpp"

#include <gmt/battery.hpp>
#include <gmt/flat_norm.hpp>

#include <algorithm>
#include <cmath>
#include <functional>

namespace gmt::cli {

void Checks::at_most(const std::string& name, double value, double bound)
{
    bool ok = value <= bound;
    m_list.push_back({{"name", name}, {"value", value}, {"max", bound}, {"pass", ok}});
    m_pass = m_pass && ok;
}

void Checks::at_least(const std::string& name, double value, double bound)
{
    bool ok = value >= bound;
    m_list.push_back({{"name", name}, {"value", value}, {"min", bound}, {"pass", ok}});
    m_pass = m_pass && ok;
}

void Checks::within(const std::string& name, double value, double lo, double hi)
{
    bool ok = value >= lo && value <= hi;
    m_list.push_back({{"name", name}, {"value", value}, {"min", lo}, {"max", hi}, {"pass", ok}});
    m_pass = m_pass && ok;
}

void Checks::holds(const std::string& name, bool ok)
{
    m_list.push_back({{"name", name}, {"pass", ok}});
    m_pass = m_pass && ok;
}

Json finish(Json report, const Checks& checks)
{
    report["checks"] = checks.json();
    report["pass"] = checks.pass();
    return report;
}

namespace {

using demo::Rng;

Cochain global_cochain(const ComplexPtr& k, const PolynomialForm& w, const std::string& label)
{
    return {FlatForm::global(k, w), label};
}

Json flatnorm(const Options& o)
{
    const auto seed = o.seed;
    Checks checks;
    Json report;
    auto corpus = demo::flat_corpus(seed);
    Json instances = Json::array();
    double worst = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
        const auto& inst = corpus[i];
        auto d = flat_norm(inst.chain);
        double oracle = flat_norm_oracle(inst.chain);
        worst = std::max(worst, std::abs(d.value - oracle));
        instances.push_back({{"name", inst.name},
                             {"value", d.value},
                             {"oracle", oracle},
                             {"mass", mass(inst.chain)},
                             {"mass_R", mass(d.R)},
                             {"mass_S", mass(d.S)},
                             {"iterations", d.iterations},
                             {"feasibility_residual", d.feasibility_residual}});
        checks.at_most(inst.name + " feasibility", d.feasibility_residual, kLpFeasibilityTol);
        if (i == 0) checks.within("unit square boundary value", d.value, 1.0 - o.agreement_tol, 1.0 + o.agreement_tol);
    }
    checks.at_most("LP against oracle", worst, o.agreement_tol);
    report["instances"] = instances;
    return finish(report, checks);
}

Json gauss_green(const Options& o)
{
    const auto seed = o.seed;
    Checks checks;
    Json report;
    Rng rng(seed);
    std::vector<std::pair<std::string, VoxelSet>> bodies;
    bodies.push_back({"unit-square", VoxelSet(2, 1.0, {Cell{0, 0, 0}})});
    for (int i = 0; i < 3; ++i) bodies.push_back({"random-2d-" + std::to_string(i), demo::random_voxels(2, 5, 0.2, rng)});
    bodies.push_back({"random-3d", demo::random_voxels(3, 3, 1.0 / 3, rng)});
    Json list = Json::array();
    for (const auto& [name, u] : bodies) {
        double worst = 0.0;
        for (const auto& w : form_battery(u.n(), u.n() - 1, 10, 3, seed)) worst = std::max(worst, gauss_green_residual(u, w));
        auto faces = measure_boundary(u);
        list.push_back({{"name", name},
                        {"n", u.n()},
                        {"cells", u.size()},
                        {"measure", u.measure()},
                        {"boundary_faces", faces.faces.size()},
                        {"perimeter", faces.measure()},
                        {"residual", worst}});
        checks.at_most(name + " residual", worst, o.identity_tol);
    }
    report["bodies"] = list;
    return finish(report, checks);
}

Json pushforward_scenario(const Options& o)
{
    const auto seed = o.seed;
    Checks checks;
    Json report;
    Rng rng(seed);
    auto k = demo::grid(3, 3, 1.0 / 3);
    Json maps = Json::array();
    for (int i = 0; i < 4; ++i) {
        auto f = demo::jiggled(k, 0.05, rng);
        Chain t = i % 2 ? demo::random_chain(k, 1, rng) : demo::random_body(k, rng);
        double commute = pushforward_boundary_commutes(f, t);
        auto nb = norm_bound_report(f, t);
        auto emb = embedding_check(f);
        maps.push_back({{"dim", t.dim()},
                        {"lip", nb.lip},
                        {"embedding", emb.embedding},
                        {"commutation_distance", commute},
                        {"mass", {nb.mass_lhs, nb.mass_rhs}},
                        {"normal", {nb.normal_lhs, nb.normal_rhs}},
                        {"flat", {nb.flat_lhs, nb.flat_rhs}}});
        checks.at_most("map " + std::to_string(i) + " boundary commutation", commute, o.identity_tol);
        checks.holds("map " + std::to_string(i) + " norm bounds", nb.ok);
    }
    report["maps"] = maps;

    PointMap bend = [](const Vec3& p) { return Vec3(p(0) + 0.1 * std::sin(3 * p(1)), p(1) + 0.1 * p(0) * p(0), 0); };
    auto cf = pushforward_closed_form(bend, 2, demo::grid_body(k, 3, 3), 1);
    report["closed_form"] = {{"coarse_mass", cf.coarse.mass},
                             {"fine_mass", cf.fine.mass},
                             {"sup_distance", cf.sup_distance},
                             {"lip", cf.lip},
                             {"indicator", cf.indicator}};
    checks.at_most("closed-form mass change against indicator", std::abs(cf.fine.mass - cf.coarse.mass),
                   cf.indicator + o.identity_tol);
    return finish(report, checks);
}

Json leibniz(const Options& o)
{
    const auto seed = o.seed;
    Checks checks;
    Json report;
    Rng rng(seed);
    auto k = demo::grid(2, 2, 0.5);
    double worst = 0.0;
    bool bounds = true;
    Json cases = Json::array();
    for (int i = 0; i < 8; ++i) {
        auto phi = demo::random_field(k, rng);
        Chain a = i % 2 ? demo::random_weighted_chain(k, 1, rng) : demo::random_chain(k, 2, rng);
        auto l = leibniz_boundary(phi, a);
        auto b = multiplication_bounds(phi, a);
        worst = std::max(worst, l.residual);
        bounds = bounds && b.ok;
        cases.push_back({{"dim", a.dim()},
                         {"residual", l.residual},
                         {"sharp_norm", b.sharp},
                         {"mass_ratio", b.mass_ratio()},
                         {"normal_ratio", b.normal_ratio()},
                         {"flat_ratio", b.flat_ratio()}});
    }
    report["cases"] = cases;
    checks.at_most("Leibniz residual", worst, o.identity_tol);
    checks.holds("multiplication bounds", bounds);

    // constant fields are extremal for the mass bound
    auto two = multiplication_bounds(SharpField::constant(k, 2.0), demo::grid_body(k, 2, 2));
    report["constant_field_mass_ratio"] = two.mass_ratio();
    checks.at_least("constant field tightness", two.mass_ratio(), 0.999);
    return finish(report, checks);
}

Json flux_roundtrip(const Options& o)
{
    const auto seed = o.seed;
    Checks checks;
    Json report;
    const int n = 8;
    auto k = demo::grid(n, n, 1.0 / n);
    auto xdy = global_cochain(k, PolynomialForm::basis(2, {1}, coordinate(2, 0)), "x dy");
    auto table = induced_table(xdy);
    auto bounds = table_bounds(table);
    report["table"] = {{"s", table.s}, {"b", table.b}, {"s_observed", bounds.s_observed}, {"b_observed", bounds.b_observed}, {"flat_lower", bounds.flat_lower}};
    checks.holds("table within its bounds", bounds.ok);

    Chain diag = demo::diagonal(k, n);
    double direct = wolfe_evaluate(xdy, diag);
    auto exact = extend_flux(table, diag, {diag});
    report["simplicial_target"] = {{"value", exact.value}, {"direct", direct}, {"gap", exact.gap}};
    checks.at_most("simplicial target gap", exact.gap, o.identity_tol);
    checks.at_most("simplicial target value", std::abs(exact.value - direct), o.identity_tol);

    std::vector<Chain> stairs;
    std::vector<int> steps;
    for (int step = n; step >= 1; step /= 2) {
        stairs.push_back(demo::staircase(k, n, step));
        steps.push_back(step);
    }
    auto ext = extend_flux(table, diag, stairs);
    const double c = std::max(table.s, table.b);
    Json levels = Json::array();
    for (std::size_t j = 0; j < stairs.size(); ++j) {
        levels.push_back({{"step", steps[j]}, {"value", ext.values[j]}, {"distance", ext.distances[j]}, {"gap", c * ext.distances[j]}, {"error", std::abs(ext.values[j] - direct)}});
        checks.at_most("level " + std::to_string(j) + " error within gap", std::abs(ext.values[j] - direct), c * ext.distances[j] + o.identity_tol);
        if (j > 0) checks.within("level " + std::to_string(j) + " gap halving", ext.distances[j - 1] / ext.distances[j], 1.8, 2.2);
    }
    report["staircase"] = levels;
    checks.holds("refinement steps within their bounds", ext.steps_ok);

    auto wd = well_defined_check(table, 10, seed);
    report["well_defined_residual"] = wd.max_residual;
    checks.at_most("well-defined flux", wd.max_residual, o.identity_tol);
    return finish(report, checks);
}

Json koch_trace(const Options& o)
{
    const auto seed = o.seed;
    Checks checks;
    Json report;
    const double h = 1.0 / 512;
    // vertical cut off the lattice of Koch edges at every level
    const int cut = 257;
    auto forms = form_battery(2, 1, 5, 3, seed);
    Json levels = Json::array();
    double area0 = 0.0;
    std::size_t previous = 0;
    for (int level = 0; level <= o.koch_level; ++level) {
        auto u = koch_prefractal(level, h);
        auto faces = measure_boundary(u);
        auto [lo, hi] = u.bounds();
        std::vector<Cell> half;
        for (int j = lo[1] - 1; j <= hi[1] + 1; ++j) {
            for (int i = lo[0] - 1; i < cut; ++i) half.push_back({i, j, 0});
        }
        VoxelSet m(2, h, std::move(half));
        auto trace = trace_current(u, m);
        double worst = 0.0;
        for (const auto& w : forms) worst = std::max(worst, std::abs(evaluate(trace.chain, w) - trace_direct(u, m, w)));
        Json dens = Json::array();
        for (double r : {1.0 / 8, 1.0 / 16, 1.0 / 32}) dens.push_back({{"radius", r}, {"value", density(Vec3(0, 0, 0), u, r).value}});
        if (level == 0) area0 = u.measure();
        levels.push_back({{"level", level},
                          {"area", u.measure()},
                          {"boundary_faces", faces.faces.size()},
                          {"perimeter", faces.measure()},
                          {"trace_faces", trace.faces.faces.size()},
                          {"trace_residual", worst},
                          {"corner_density", dens}});
        checks.within("level " + std::to_string(level) + " area", u.measure(), 0.9 * area0, 1.1 * area0);
        checks.at_most("level " + std::to_string(level) + " trace residual", worst, o.identity_tol);
        if (level > 0) checks.at_least("level " + std::to_string(level) + " face growth", double(faces.faces.size()) / previous, 1.5);
        previous = faces.faces.size();
    }
    report["h"] = h;
    report["levels"] = levels;
    return finish(report, checks);
}

Json transport_scenario(const Options& o)
{
    const auto seed = o.seed;
    Checks checks;
    Json report;
    Rng rng(seed);
    const auto area = PolynomialForm::basis(2, {0, 1}, 1.0);

    auto sq = demo::grid(1, 1, 1.0);
    auto body = demo::grid_body(sq, 1, 1);
    auto one = SharpField::constant(sq, 1.0);
    auto dil = Motion::dilation(sq, 1.0);
    auto lhs = transport_lhs(dil, one, body, area, o.schedule.front());
    auto rhs = transport_rhs(dil, one, body, area);
    report["dilation"] = {{"lhs", lhs.value}, {"rhs", rhs.value}, {"flux", rhs.flux}, {"interior", rhs.interior}};
    checks.at_most("dilation derivative", std::abs(lhs.value - 2.0), 1e-8);
    checks.at_most("dilation rhs", std::abs(rhs.value - 2.0), 1e-8);

    auto rot = transport_rhs(Motion::rotation(sq, 1.0), one, body, area);
    report["rotation_rhs"] = rot.value;
    checks.at_most("rotation preserves area", std::abs(rot.value), o.identity_tol);

    auto k = demo::grid(3, 3, 1.0 / 3);
    Json motions = Json::array();
    for (int i = 0; i < 3; ++i) {
        auto m = demo::random_motion(k, rng, 0.5, 0.1);
        auto cert = certify(m);
        auto psi = demo::random_field(k, rng);
        auto b = demo::random_body(k, rng);
        auto w = random_form(2, 2, 2, rng);
        auto c = transport_check(m, psi, b, w, o.schedule, o.final_eps);
        motions.push_back({{"embedded", cert.embedded},
                           {"min_bilip", cert.min_bilip},
                           {"rhs", c.rhs},
                           {"errors", c.errors},
                           {"slopes", c.slopes},
                           {"final_error", c.final_error},
                           {"scale", c.scale}});
        std::string tag = "motion " + std::to_string(i);
        checks.holds(tag + " embedded", cert.embedded);
        checks.holds(tag + " slope", c.slope_ok);
        checks.at_most(tag + " final agreement", c.final_error, o.agreement_tol * c.scale);

        auto f = m.at(0.0);
        auto g = m.at(m.t_max());
        double hr = homotopy_formula_residual(f, g, demo::random_chain(k, 1, rng));
        double pr = product_pushforward_residual(g, psi, b);
        checks.at_most(tag + " homotopy formula", hr, o.identity_tol);
        checks.at_most(tag + " weighted pushforward", pr, o.identity_tol);
    }
    report["motions"] = motions;
    return finish(report, checks);
}

Json virtual_work_scenario(const Options& o)
{
    const auto seed = o.seed;
    Checks checks;
    Json report;
    Rng rng(seed);
    auto k = demo::grid(3, 3, 1.0 / 3);
    Json cases = Json::array();
    double worst = 0.0;
    double agreement = 0.0;
    for (int i = 0; i < 6; ++i) {
        auto kappa = demo::jiggled(k, 0.05, rng);
        auto img = kappa.image_complex();
        CauchyFlux phi({global_cochain(img, random_form(2, 1, 2, rng), "psi_1"), global_cochain(img, random_form(2, 1, 2, rng), "psi_2")}, kappa);
        auto v = demo::random_velocity(img, rng);
        auto body = demo::random_body(k, rng);
        auto vw = virtual_work(phi, body, v);
        auto ref = virtual_power_terms(phi, body, v);
        worst = std::max(worst, vw.residual / vw.scale);
        agreement = std::max({agreement, std::abs(ref.surface - vw.surface), std::abs(ref.body_force - vw.body_force),
                              std::abs(ref.internal - vw.internal)});
        cases.push_back({{"surface", vw.surface}, {"body_force", vw.body_force}, {"internal", vw.internal}, {"residual", vw.residual}});
    }
    report["cases"] = cases;
    checks.at_most("virtual work residual", worst, o.identity_tol);
    checks.at_most("reference and image powers agree", agreement, o.identity_tol);
    return finish(report, checks);
}

using Runner = std::function<Json(const Options&)>;

const std::vector<std::pair<ScenarioInfo, Runner>>& registry()
{
    static const std::vector<std::pair<ScenarioInfo, Runner>> r{
        {{"flatnorm", "LP flat norm against the enumeration oracle, unit square boundary"}, flatnorm},
        {{"gauss-green", "discrete Gauss-Green identity on voxel bodies"}, gauss_green},
        {{"pushforward", "pushforward commutes with the boundary; Lipschitz norm bounds"}, pushforward_scenario},
        {{"leibniz", "boundary of a field times a chain; multiplication bounds"}, leibniz},
        {{"flux-roundtrip", "form to flux table to extension along a staircase refinement"}, flux_roundtrip},
        {{"koch-trace", "quadratic Koch prefractals: area, boundary growth, trace fluxes"}, koch_trace},
        {{"transport", "transport of weighted bodies under polynomial motions"}, transport_scenario},
        {{"virtual-work", "virtual work identity for Cauchy fluxes"}, virtual_work_scenario},
    };
    return r;
}

} // namespace

const std::vector<ScenarioInfo>& scenarios()
{
    static const std::vector<ScenarioInfo> list = [] {
        std::vector<ScenarioInfo> out;
        for (const auto& [info, run] : registry()) out.push_back(info);
        return out;
    }();
    return list;
}

bool is_scenario(const std::string& name)
{
    for (const auto& s : scenarios()) {
        if (s.name == name) return true;
    }
    return false;
}

void validate(const Options& o)
{
    require(o.identity_tol > 0 && o.identity_tol <= 1e-3, "identity tolerance must lie in (0, 1e-3]");
    require(o.agreement_tol > 0 && o.agreement_tol <= 1e-2, "agreement tolerance must lie in (0, 1e-2]");
    require(o.koch_level >= 0 && o.koch_level <= kMaxKochLevel, "Koch level must lie in [0, 4]");
    require(o.schedule.size() >= 2, "the eps schedule needs at least two steps");
    for (std::size_t i = 0; i < o.schedule.size(); ++i) {
        require(o.schedule[i] > 0 && o.schedule[i] <= 0.1, "eps values must lie in (0, 0.1]");
        require(i == 0 || o.schedule[i] < o.schedule[i - 1], "the eps schedule must decrease");
    }
    require(o.final_eps > 0 && o.final_eps < o.schedule.back(), "final eps must be positive and below the schedule");
}

Json run_scenario(const std::string& name, const Options& o)
{
    validate(o);
    for (const auto& [info, run] : registry()) {
        if (info.name != name) continue;
        Json report = run(o);
        report["scenario"] = name;
        report["seed"] = o.seed;
        report["schema_version"] = io::kSchemaVersion;
        return report;
    }
    fail("unknown scenario " + name);
}

std::string nearest_match(const std::string& name, const std::vector<std::string>& candidates)
{
    std::string best;
    std::size_t best_d = std::max<std::size_t>(3, name.size() / 2) + 1;
    for (const auto& c : candidates) {
        std::vector<std::size_t> row(c.size() + 1);
        for (std::size_t j = 0; j <= c.size(); ++j) row[j] = j;
        for (std::size_t i = 1; i <= name.size(); ++i) {
            std::size_t diag = row[0];
            row[0] = i;
            for (std::size_t j = 1; j <= c.size(); ++j) {
                std::size_t up = row[j];
                row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (name[i - 1] == c[j - 1] ? 0 : 1)});
                diag = up;
            }
        }
        bool prefix = c.rfind(name, 0) == 0 && !name.empty();
        std::size_t d = prefix ? 0 : row[c.size()];
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

} // namespace gmt::cli
