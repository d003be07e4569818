#include "commands.hpp"

#include <gmt/battery.hpp>
#include <gmt/flat_norm.hpp>

#include <algorithm>
#include <cmath>

namespace gmt::cli {

namespace {

void need(const std::string& value, const char* flag)
{
    if (value.empty()) fail(std::string("missing --") + flag);
}

Json chain_json(const Chain& c)
{
    return io::chain_to_json(c, io::complex_to_json(*c.complex()));
}

Json vec(const Vec3& v, int n)
{
    Json out = Json::array();
    for (int i = 0; i < n; ++i) out.push_back(v(i));
    return out;
}

/// The same form moved onto a complex with identical combinatorics.
FlatForm onto(const ComplexPtr& k, const io::LoadedForm& f)
{
    if (f.smooth) return FlatForm::global(k, *f.smooth);
    const FlatForm& src = *f.flat;
    require(src.num_pieces() == k->num_simplices(k->ambient_dim()), "form and configuration have different top cells");
    std::map<int, PolynomialForm> pieces;
    std::map<int, PolynomialForm> derivative;
    for (int id = 0; id < src.num_pieces(); ++id) {
        pieces[id] = src.piece(id);
        if (src.grade() < src.ambient()) derivative[id] = src.derivative(id);
    }
    return src.derived() ? FlatForm(k, src.grade(), pieces) : FlatForm(k, src.grade(), pieces, derivative);
}

std::vector<SharpField> transferred(const std::vector<SharpField>& v, const ComplexPtr& k)
{
    std::vector<SharpField> out;
    for (const auto& f : v) {
        require(static_cast<int>(f.values().size()) == k->num_vertices(), "field and configuration have different vertices");
        out.emplace_back(k, f.values());
    }
    return out;
}

struct FluxSetup
{
    PiecewiseAffineMap kappa;
    CauchyFlux phi;
    std::vector<SharpField> v;
    Chain body;
};

FluxSetup flux_setup(const FileInputs& in, io::Loader& loader)
{
    need(in.map, "map");
    need(in.field, "field");
    need(in.body, "body");
    auto kappa = loader.map(in.map);
    const int n = kappa.target_ambient();
    require(kappa.domain()->ambient_dim() == n, "the configuration must keep the ambient dimension");
    if (static_cast<int>(in.forms.size()) != n) fail("expected " + std::to_string(n) + " --form files, one per component");
    const auto& img = kappa.image_complex();
    std::vector<Cochain> comps;
    for (const auto& path : in.forms) {
        auto f = loader.form(path);
        comps.push_back({onto(img, f), path});
        require(comps.back().grade() == n - 1, path + ": flux components are (n-1)-forms");
    }
    auto v = loader.field(in.field);
    require(static_cast<int>(v.size()) == n, in.field + ": velocity needs one component per coordinate");
    auto body = loader.chain(in.body, kappa.domain());
    require(body.complex() == kappa.domain(), in.body + ": body must live on the map's complex");
    CauchyFlux phi(std::move(comps), kappa);
    return {kappa, std::move(phi), transferred(v, img), body};
}

Json flatnorm_cmd(const FileInputs& in, const Options& o)
{
    need(in.chain, "chain");
    io::Loader loader;
    ComplexPtr k = in.complex.empty() ? nullptr : loader.complex(in.complex);
    Chain a = loader.chain(in.chain, k);
    if (k) require(a.complex() == k, in.chain + ": chain refers to a different complex than --complex");
    auto d = flat_norm(a);
    Checks checks;
    Json report{{"value", d.value},
                {"mass", mass(a)},
                {"R", chain_json(d.R)},
                {"S", chain_json(d.S)},
                {"mass_R", mass(d.R)},
                {"mass_S", mass(d.S)},
                {"iterations", d.iterations},
                {"feasibility_residual", d.feasibility_residual}};
    checks.at_most("feasibility", d.feasibility_residual, kLpFeasibilityTol);
    checks.at_most("value at most the mass", d.value, mass(a) * (1 + o.identity_tol) + o.identity_tol);
    if (a.dim() + 1 <= a.complex()->top_dim() && a.complex()->num_simplices(a.dim() + 1) <= kOracleMaxSimplices) {
        double oracle = flat_norm_oracle(a);
        report["oracle"] = oracle;
        checks.at_most("LP against oracle", std::abs(d.value - oracle), o.agreement_tol);
    }
    return finish(report, checks);
}

Json gauss_green_cmd(const FileInputs& in, const Options& o)
{
    need(in.voxels, "voxels");
    io::Loader loader;
    auto u = loader.voxels(in.voxels);
    double worst = 0.0;
    for (const auto& w : form_battery(u.n(), u.n() - 1, 10, 3, o.seed)) worst = std::max(worst, gauss_green_residual(u, w));
    auto faces = measure_boundary(u);
    Checks checks;
    checks.at_most("Gauss-Green residual", worst, o.identity_tol);
    return finish({{"cells", u.size()}, {"measure", u.measure()}, {"boundary_faces", faces.faces.size()}, {"perimeter", faces.measure()}, {"residual", worst}}, checks);
}

Json density_cmd(const FileInputs& in, const Options& o)
{
    need(in.voxels, "voxels");
    io::Loader loader;
    auto u = loader.voxels(in.voxels);
    if (static_cast<int>(in.point.size()) != u.n()) fail("--point needs " + std::to_string(u.n()) + " coordinates");
    Vec3 x = Vec3::Zero();
    for (int i = 0; i < u.n(); ++i) x(i) = in.point[i];
    const double r0 = in.radius > 0 ? in.radius : 4 * u.h();
    Json radii = Json::array();
    Checks checks;
    for (double r : {r0, r0 / 2, r0 / 4}) {
        auto d = density(x, u, r, o.seed);
        radii.push_back({{"radius", r}, {"value", d.value}, {"standard_error", d.standard_error}});
        checks.within("density at r = " + std::to_string(r), d.value, 0.0, 1.0);
    }
    return finish({{"point", vec(x, u.n())}, {"radii", radii}}, checks);
}

Json pushforward_cmd(const FileInputs& in, const Options& o)
{
    need(in.map, "map");
    need(in.chain, "chain");
    io::Loader loader;
    auto f = loader.map(in.map);
    auto t = loader.chain(in.chain, f.domain());
    require(t.complex() == f.domain(), in.chain + ": chain must live on the map's complex");
    Chain image = pushforward(f, t);
    Checks checks;
    Json report{{"image", chain_json(image)}, {"mass", mass(t)}, {"image_mass", mass(image)}};
    if (t.dim() > 0 && t.is_simplicial()) {
        double commute = pushforward_boundary_commutes(f, t);
        report["commutation_distance"] = commute;
        checks.at_most("boundary commutation", commute, o.identity_tol);
    }
    if (t.is_simplicial()) {
        auto nb = norm_bound_report(f, t);
        report["lip"] = nb.lip;
        report["mass_bound"] = {nb.mass_lhs, nb.mass_rhs};
        report["normal_bound"] = {nb.normal_lhs, nb.normal_rhs};
        report["flat_bound"] = {nb.flat_lhs, nb.flat_rhs};
        checks.holds("norm bounds", nb.ok);
    }
    return finish(report, checks);
}

Json lipcheck_cmd(const FileInputs& in, const Options&)
{
    need(in.map, "map");
    io::Loader loader;
    auto r = embedding_check(loader.map(in.map));
    Checks checks;
    checks.holds("embedding", r.embedding);
    Json pair = Json::array();
    for (const auto& s : r.overlapping_pair) pair.push_back({{"dim", s.dim}, {"id", s.id}});
    return finish({{"lip_upper", r.lip_upper},
                   {"bilip_lower", r.bilip_lower},
                   {"min_singular", r.min_singular},
                   {"immersion", r.immersion},
                   {"injective", r.injective},
                   {"margin", r.margin},
                   {"sample_points", r.sample_points},
                   {"radius_over_lip", r.radius_over_lip},
                   {"overlapping_pair", pair}},
                  checks);
}

Json extend_cmd(const FileInputs& in, const Options& o)
{
    need(in.map, "map");
    io::Loader loader;
    auto f = loader.map(in.map);
    const auto& k = f.domain();
    const int n = f.target_ambient();
    const double lip = in.lip > 0 ? in.lip : lipschitz_constant(f);
    std::vector<std::pair<Vec3, Vec3>> samples;
    for (int v = 0; v < k->num_vertices(); ++v) samples.push_back({k->vertex(v), f.images()[v]});
    VectorLipschitzExtension ext(samples, lip, n);

    Checks checks;
    double reproduce = 0.0;
    for (const auto& [x, y] : samples) reproduce = std::max(reproduce, (ext(x) - y).norm());
    checks.at_most("samples reproduced", reproduce, o.identity_tol);

    Json points = Json::array();
    bool bounded = true;
    for (const auto& piece : f.pieces()) {
        auto pts = k->points(piece.simplex.dim, piece.simplex.id);
        Vec3 c = Vec3::Zero();
        for (const auto& p : pts) c += p / double(pts.size());
        Vec3 fx = piece.linear * c + piece.offset;
        Vec3 ex = ext(c);
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& p : pts) nearest = std::min(nearest, (p - c).norm());
        // both maps are L-Lipschitz on the simplex and agree at its vertices
        double bound = 2 * lip * nearest * std::sqrt(double(n));
        double gap = (ex - fx).norm();
        bounded = bounded && gap <= bound + o.identity_tol;
        points.push_back({{"simplex", piece.simplex.id}, {"point", vec(c, k->ambient_dim())}, {"map", vec(fx, n)}, {"extension", vec(ex, n)}, {"difference", gap}, {"bound", bound}});
    }
    checks.holds("extension within the Lipschitz envelope of the map", bounded);
    return finish({{"lip", lip}, {"barycenters", points}}, checks);
}

Json flux_eval_cmd(const FileInputs& in, const Options& o)
{
    need(in.form, "form");
    need(in.chain, "chain");
    io::Loader loader;
    auto f = loader.form(in.form);
    if (!f.flat) fail(in.form + ": flux evaluation needs a form attached to a complex");
    Cochain x{*f.flat, in.form};
    Chain a = loader.chain(in.chain, x.form.complex());
    require(a.complex() == x.form.complex(), in.chain + ": chain and form live on different complexes");
    Json report;
    if (!in.field.empty()) {
        auto phi = loader.field(in.field);
        require(phi.size() == 1, in.field + ": expected a scalar field");
        require(phi[0].complex() == a.complex(), in.field + ": field lives on a different complex");
        a = multiply(phi[0], a);
        report["weighted"] = true;
    }
    double value = wolfe_evaluate(x, a);
    auto norm = x.form.norm();
    double bound = norm.value * mass(a);
    Checks checks;
    checks.at_most("|X(A)| within F(X) M(A)", std::abs(value), bound * (1 + o.identity_tol) + o.identity_tol);
    report["value"] = value;
    report["flat_norm"] = norm.value;
    report["flat_norm_exact"] = norm.exact;
    report["mass"] = mass(a);
    report["bound"] = bound;
    report["jump_free"] = x.form.jump_free();
    return finish(report, checks);
}

Json flux_extend_cmd(const FileInputs& in, const Options&)
{
    need(in.table, "table");
    need(in.target, "target");
    if (in.refinement.empty()) fail("missing --refinement");
    io::Loader loader;
    auto t = loader.table(in.table);
    Chain target = loader.chain(in.target, t.complex);
    std::vector<Chain> refinement;
    for (const auto& path : in.refinement) refinement.push_back(loader.chain(path, t.complex));
    auto bounds = table_bounds(t);
    auto ext = extend_flux(t, target, refinement);
    Checks checks;
    checks.holds("table within its bounds", bounds.ok);
    checks.holds("refinement steps within their bounds", ext.steps_ok);
    return finish({{"value", ext.value},
                   {"gap", ext.gap},
                   {"values", ext.values},
                   {"distances", ext.distances},
                   {"step_differences", ext.step_differences},
                   {"step_bounds", ext.step_bounds},
                   {"s", t.s},
                   {"b", t.b},
                   {"flat_lower", bounds.flat_lower}},
                  checks);
}

Json balance_cmd(const FileInputs& in, const Options&)
{
    io::Loader loader;
    auto s = flux_setup(in, loader);
    std::vector<FluxProbe> surfaces;
    Chain faces = boundary(s.body);
    for (const auto& [id, p] : faces.cells()) {
        Chain c(faces.complex(), faces.dim());
        c.add_cell(id, p);
        surfaces.push_back({c, s.v});
    }
    std::vector<FluxProbe> bodies{{s.body, s.v}};
    for (const auto& [id, p] : s.body.cells()) {
        Chain c(s.body.complex(), s.body.dim());
        c.add_cell(id, p);
        bodies.push_back({c, s.v});
    }
    auto r = balance_report(s.phi, surfaces, bodies);
    Checks checks;
    checks.at_most("surface constant", r.s_hat, r.s_bound * (1 + kBalanceTol) + kBalanceTol);
    checks.at_most("body constant", r.b_hat, r.b_bound * (1 + kBalanceTol) + kBalanceTol);
    return finish({{"s_hat", r.s_hat},
                   {"b_hat", r.b_hat},
                   {"flat_norm", r.flat_norm},
                   {"s_bound", r.s_bound},
                   {"b_bound", r.b_bound},
                   {"evaluated", r.evaluated},
                   {"skipped", r.skipped},
                   {"warnings", r.warnings}},
                  checks);
}

Json virtual_work_cmd(const FileInputs& in, const Options& o)
{
    io::Loader loader;
    auto s = flux_setup(in, loader);
    auto vw = virtual_work(s.phi, s.body, s.v);
    Checks checks;
    checks.at_most("virtual work residual", vw.residual, o.identity_tol * vw.scale);
    Json report{{"surface", vw.surface}, {"body_force", vw.body_force}, {"internal", vw.internal}, {"residual", vw.residual}, {"scale", vw.scale}};
    if (embedding_check(s.kappa).injective) {
        auto ref = virtual_power_terms(s.phi, s.body, s.v);
        report["reference"] = {{"surface", ref.surface}, {"body_force", ref.body_force}, {"internal", ref.internal}};
        double gap = std::max({std::abs(ref.surface - vw.surface), std::abs(ref.body_force - vw.body_force), std::abs(ref.internal - vw.internal)});
        checks.at_most("reference and image powers agree", gap, o.identity_tol * vw.scale);
    }
    return finish(report, checks);
}

Json transport_cmd(const FileInputs& in, const Options& o)
{
    need(in.motion, "motion");
    need(in.field, "field");
    need(in.body, "body");
    io::Loader loader;
    auto m = loader.motion(in.motion);
    auto psi = loader.field(in.field);
    require(psi.size() == 1, in.field + ": expected a scalar field");
    require(psi[0].complex() == m.reference(), in.field + ": field must live on the motion's complex");
    auto body = loader.chain(in.body, m.reference());
    require(body.complex() == m.reference(), in.body + ": body must live on the motion's complex");
    const int n = m.ambient();
    PolynomialForm w = n == 2 ? PolynomialForm::basis(2, {0, 1}, 1.0) : PolynomialForm::basis(3, {0, 1, 2}, 1.0);
    if (!in.form.empty()) {
        auto f = loader.form(in.form);
        if (!f.smooth) fail(in.form + ": transport needs a global test form");
        w = *f.smooth;
    }
    auto cert = certify(m);
    auto c = transport_check(m, psi[0], body, w, o.schedule, o.final_eps);
    auto rhs = transport_rhs(m, psi[0], body, w);
    Checks checks;
    checks.holds("motion embedded at the sampled times", cert.embedded);
    checks.holds("Richardson slope", c.slope_ok);
    checks.at_most("final agreement", c.final_error, o.agreement_tol * c.scale);
    return finish({{"eps", c.eps},
                   {"lhs", c.lhs},
                   {"errors", c.errors},
                   {"slopes", c.slopes},
                   {"rhs", c.rhs},
                   {"rhs_flux", rhs.flux},
                   {"rhs_interior", rhs.interior},
                   {"final_eps", c.final_eps},
                   {"final_lhs", c.final_lhs},
                   {"final_error", c.final_error},
                   {"scale", c.scale},
                   {"certificate_times", cert.times},
                   {"min_bilip", cert.min_bilip}},
                  checks);
}

using Command = Json (*)(const FileInputs&, const Options&);

const std::vector<std::pair<ScenarioInfo, Command>>& registry()
{
    static const std::vector<std::pair<ScenarioInfo, Command>> r{
        {{"flatnorm", "flat norm of a chain file: --chain [--complex]"}, flatnorm_cmd},
        {{"gauss-green", "Gauss-Green residual of a voxel file: --voxels"}, gauss_green_cmd},
        {{"density", "volume fractions at three dyadic radii: --voxels --point [--radius]"}, density_cmd},
        {{"pushforward", "pushforward of a chain: --map --chain"}, pushforward_cmd},
        {{"lipcheck", "Lipschitz and embedding certificate of a map: --map"}, lipcheck_cmd},
        {{"extend", "McShane extension of a map's vertex samples: --map [--lip]"}, extend_cmd},
        {{"flux-eval", "cochain on a chain: --form --chain [--field]"}, flux_eval_cmd},
        {{"flux-extend", "flux table extension: --table --target --refinement ..."}, flux_extend_cmd},
        {{"balance", "balance constants of a flux: --form x n --map --field --body"}, balance_cmd},
        {{"virtual-work", "virtual work terms: --form x n --map --field --body"}, virtual_work_cmd},
        {{"transport", "transport check: --motion --field --body [--form]"}, transport_cmd},
    };
    return r;
}

} // namespace

const std::vector<ScenarioInfo>& file_commands()
{
    static const std::vector<ScenarioInfo> list = [] {
        std::vector<ScenarioInfo> out;
        for (const auto& [info, cmd] : registry()) out.push_back(info);
        return out;
    }();
    return list;
}

bool is_file_command(const std::string& name)
{
    for (const auto& c : file_commands()) {
        if (c.name == name) return true;
    }
    return false;
}

bool wants_files(const std::string& name, const FileInputs& in)
{
    if (!is_file_command(name)) return false;
    if (!is_scenario(name)) return true;
    return !in.chain.empty() || !in.map.empty() || !in.motion.empty() || !in.voxels.empty() || !in.forms.empty()
        || !in.field.empty() || !in.body.empty() || !in.complex.empty();
}

Json run_file_command(const std::string& name, const FileInputs& in, const Options& o)
{
    validate(o);
    for (const auto& [info, cmd] : registry()) {
        if (info.name != name) continue;
        Json report = cmd(in, o);
        report["command"] = name;
        report["schema_version"] = io::kSchemaVersion;
        return report;
    }
    fail("unknown command " + name);
}

} // namespace gmt::cli
