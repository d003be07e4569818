#include <gmt/io.hpp>

#include <fstream>
#include <sstream>

namespace gmt::io {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what)
{
    throw SchemaError(where + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object()) bad(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(where, std::string("missing \"") + key + "\"");
    return *it;
}

const Json* optional_field(const Json& j, const char* key)
{
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double number(const Json& j, const std::string& where)
{
    if (!j.is_number()) bad(where, "expected a number");
    return j.get<double>();
}

int integer(const Json& j, const std::string& where)
{
    if (!j.is_number_integer()) bad(where, "expected an integer");
    return j.get<int>();
}

const Json& array(const Json& j, const std::string& where)
{
    if (!j.is_array()) bad(where, "expected an array");
    return j;
}

std::string at(const std::string& where, const char* key)
{
    return where + "." + key;
}

std::string at(const std::string& where, std::size_t i)
{
    return where + "[" + std::to_string(i) + "]";
}

void check_header(const Json& j, const std::string& where)
{
    const auto& v = member(j, "schema_version", where);
    if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
        bad(where, "unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
    }
}

Vec3 point(const Json& j, int n, const std::string& where)
{
    array(j, where);
    if (static_cast<int>(j.size()) != n) bad(where, "expected " + std::to_string(n) + " coordinates");
    Vec3 p = Vec3::Zero();
    for (int i = 0; i < n; ++i) p(i) = number(j[i], at(where, i));
    return p;
}

std::vector<int> indices(const Json& j, const std::string& where)
{
    array(j, where);
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer(j[i], at(where, i)));
    return out;
}

int ambient_of(const Json& j, const std::string& where)
{
    int n = integer(member(j, "ambient", where), at(where, "ambient"));
    if (n < 1 || n > kMaxAmbient) bad(at(where, "ambient"), "must be 1, 2 or 3");
    return n;
}

// oriented simplex of a term: {"simplex": id} or {"vertices": [...]}; returns id and sign
std::pair<int, int> term_simplex(const Json& t, const SimplicialComplex& k, int dim, const std::string& where)
{
    if (const auto* s = optional_field(t, "simplex")) {
        int id = integer(*s, at(where, "simplex"));
        if (id < 0 || id >= k.num_simplices(dim)) bad(at(where, "simplex"), "no " + std::to_string(dim) + "-simplex " + std::to_string(id));
        return {id, 1};
    }
    if (const auto* v = optional_field(t, "vertices")) {
        auto vs = indices(*v, at(where, "vertices"));
        if (static_cast<int>(vs.size()) != dim + 1) bad(at(where, "vertices"), "expected " + std::to_string(dim + 1) + " vertices");
        try {
            return k.find_oriented(vs);
        } catch (const Error& e) {
            bad(at(where, "vertices"), e.what());
        }
    }
    bad(where, "missing \"simplex\" or \"vertices\"");
}

double sign_of(const Json& t, const std::string& where)
{
    const auto* s = optional_field(t, "sign");
    if (!s) return 1.0;
    int v = integer(*s, at(where, "sign"));
    if (v != 1 && v != -1) bad(at(where, "sign"), "must be 1 or -1");
    return v;
}

template <class F>
auto wrapped(const std::string& where, F&& f)
{
    try {
        return f();
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        bad(where, e.what());
    }
}

} // namespace

Json read_json(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) throw SchemaError(path.string() + ": cannot open file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError(path.string() + ": invalid JSON: " + e.what());
    }
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

void write_json(const fs::path& path, const Json& j)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cannot write " + path.string());
    out << dump(j);
}

Json polynomial_to_json(const Polynomial& p)
{
    Json out = Json::object();
    for (const auto& [e, c] : p.terms()) {
        std::string key;
        for (int i = 0; i < p.num_vars(); ++i) key += (i ? "," : "") + std::to_string(e[i]);
        out[key] = c;
    }
    return out;
}

Polynomial polynomial_from_json(const Json& j, int num_vars, const std::string& where)
{
    if (j.is_number()) return Polynomial::constant(num_vars, j.get<double>());
    if (!j.is_object()) bad(where, "expected a number or a monomial-coefficient map");
    Polynomial p(num_vars);
    for (const auto& [key, value] : j.items()) {
        Exponent e{};
        std::stringstream ss(key);
        std::string part;
        int i = 0;
        while (std::getline(ss, part, ',')) {
            if (i >= num_vars) bad(where, "monomial \"" + key + "\" has more than " + std::to_string(num_vars) + " exponents");
            int v = -1;
            try {
                std::size_t used = 0;
                v = std::stoi(part, &used);
                if (used != part.size()) v = -1;
            } catch (const std::exception&) {
            }
            if (v < 0 || v > 255) bad(where, "bad exponent in monomial \"" + key + "\"");
            e[i++] = static_cast<std::uint8_t>(v);
        }
        if (i != num_vars) bad(where, "monomial \"" + key + "\" needs " + std::to_string(num_vars) + " exponents");
        p.add_term(e, number(value, where + "[\"" + key + "\"]"));
    }
    return p;
}

std::string basis_name(BasisMask m)
{
    if (m == 0) return "1";
    static const char* names[] = {"dx", "dy", "dz"};
    std::string out;
    for (int i = 0; i < kMaxAmbient; ++i) {
        if (!(m & (1u << i))) continue;
        if (!out.empty()) out += "^";
        out += names[i];
    }
    return out;
}

Json form_to_json(const PolynomialForm& w)
{
    Json out = Json::object();
    for (BasisMask m : basis_masks(w.ambient(), w.grade())) {
        if (!w[m].is_zero()) out[basis_name(m)] = polynomial_to_json(w[m]);
    }
    return out;
}

PolynomialForm form_from_json(const Json& j, int ambient, int grade, const std::string& where)
{
    if (!j.is_object()) bad(where, "expected an object of components");
    if (grade < 0 || grade > ambient) bad(where, "grade out of range");
    PolynomialForm w(ambient, grade);
    std::map<std::string, BasisMask> names;
    for (BasisMask m : basis_masks(ambient, grade)) names[basis_name(m)] = m;
    for (const auto& [key, value] : j.items()) {
        auto it = names.find(key);
        if (it == names.end()) bad(where, "\"" + key + "\" is not a basis " + std::to_string(grade) + "-covector of R^" + std::to_string(ambient));
        w[it->second] = polynomial_from_json(value, ambient, where + "." + key);
    }
    return w;
}

Json complex_to_json(const SimplicialComplex& k)
{
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["ambient"] = k.ambient_dim();
    Json vs = Json::array();
    for (const auto& p : k.vertices()) {
        Json q = Json::array();
        for (int i = 0; i < k.ambient_dim(); ++i) q.push_back(p(i));
        vs.push_back(q);
    }
    out["vertices"] = vs;
    Json simplices = Json::object();
    for (int d = 1; d <= k.top_dim(); ++d) {
        Json list = Json::array();
        for (int id = 0; id < k.num_simplices(d); ++id) {
            auto s = k.simplex(d, id);
            list.push_back(std::vector<int>(s.begin(), s.end()));
        }
        simplices[std::to_string(d)] = list;
    }
    out["simplices"] = simplices;
    return out;
}

Json chain_to_json(const Chain& c, const Json& complex_ref)
{
    require(c.is_cellular(), "only cellular chains are serialized");
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["complex"] = complex_ref;
    out["dim"] = c.dim();
    Json terms = Json::array();
    for (const auto& [id, p] : c.cells()) {
        Json t;
        t["simplex"] = id;
        t["sign"] = 1;
        t["density"] = polynomial_to_json(p);
        terms.push_back(t);
    }
    out["terms"] = terms;
    return out;
}

Json voxels_to_json(const VoxelSet& u)
{
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["n"] = u.n();
    out["h"] = u.h();
    Json cells = Json::array();
    for (const auto& c : u.cells()) {
        Json q = Json::array();
        for (int i = 0; i < u.n(); ++i) q.push_back(c[i]);
        cells.push_back(q);
    }
    out["cells"] = cells;
    return out;
}

Json table_to_json(const SimplicialFluxTable& t, const Json& complex_ref)
{
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["complex"] = complex_ref;
    out["s"] = t.s;
    out["b"] = t.b;
    Json values = Json::array();
    for (const auto& [id, v] : t.values) values.push_back({{"simplex", id}, {"value", v}});
    out["values"] = values;
    return out;
}

ComplexPtr Loader::complex_from(const Json& j, const std::string& where)
{
    check_header(j, where);
    const int n = integer(member(j, "ambient", where), at(where, "ambient"));
    if (n != 2 && n != 3) bad(at(where, "ambient"), "must be 2 or 3");
    return wrapped(where, [&] {
        ComplexBuilder b(n);
        const auto& vs = array(member(j, "vertices", where), at(where, "vertices"));
        for (std::size_t i = 0; i < vs.size(); ++i) b.add_vertex(point(vs[i], n, at(at(where, "vertices"), i)));
        if (const auto* s = optional_field(j, "simplices")) {
            if (!s->is_object()) bad(at(where, "simplices"), "expected an object keyed by dimension");
            for (const auto& [key, list] : s->items()) {
                std::string w = at(where, "simplices") + "." + key;
                if (key != "1" && key != "2" && key != "3") bad(w, "dimension must be 1, 2 or 3");
                array(list, w);
                for (std::size_t i = 0; i < list.size(); ++i) {
                    auto t = indices(list[i], at(w, i));
                    if (static_cast<int>(t.size()) != std::stoi(key) + 1) bad(at(w, i), "wrong number of vertices");
                    for (int v : t) {
                        if (v < 0 || v >= b.num_vertices()) bad(at(w, i), "vertex index out of range");
                    }
                    b.add_simplex(t);
                }
            }
        }
        return b.build();
    });
}

ComplexPtr Loader::resolve(const Json& ref, const fs::path& base, const std::string& where)
{
    if (ref.is_string()) {
        fs::path p = ref.get<std::string>();
        if (p.is_relative()) p = base / p;
        return complex(p);
    }
    if (ref.is_object()) {
        std::string key = "inline:" + ref.dump();
        auto it = m_cache.find(key);
        if (it != m_cache.end()) return it->second;
        auto k = complex_from(ref, where);
        m_cache[key] = k;
        return k;
    }
    bad(where, "complex must be a path or an inline complex object");
}

ComplexPtr Loader::complex(const fs::path& path)
{
    std::string key = "file:" + fs::weakly_canonical(path).string();
    auto it = m_cache.find(key);
    if (it != m_cache.end()) return it->second;
    auto k = complex_from(read_json(path), path.string());
    m_cache[key] = k;
    return k;
}

Chain Loader::chain_from(const Json& j, const fs::path& base, const std::string& where, ComplexPtr fallback)
{
    check_header(j, where);
    ComplexPtr k = fallback;
    if (!k || j.contains("complex")) k = resolve(member(j, "complex", where), base, at(where, "complex"));
    int dim = integer(member(j, "dim", where), at(where, "dim"));
    if (dim < 0 || dim > k->top_dim()) bad(at(where, "dim"), "no simplices of that dimension in the complex");
    Chain c(k, dim);
    const auto& terms = array(member(j, "terms", where), at(where, "terms"));
    for (std::size_t i = 0; i < terms.size(); ++i) {
        std::string w = at(at(where, "terms"), i);
        auto [id, orient] = term_simplex(terms[i], *k, dim, w);
        Polynomial density = Polynomial::constant(dim + 1, 1.0);
        if (const auto* d = optional_field(terms[i], "density")) density = polynomial_from_json(*d, dim + 1, at(w, "density"));
        c.add_cell(id, density * (sign_of(terms[i], w) * orient));
    }
    return c;
}

Chain Loader::chain(const fs::path& path, ComplexPtr fallback)
{
    return chain_from(read_json(path), path.parent_path(), path.string(), std::move(fallback));
}

VoxelSet Loader::voxels(const fs::path& path)
{
    const std::string where = path.string();
    Json j = read_json(path);
    check_header(j, where);
    int n = integer(member(j, "n", where), at(where, "n"));
    if (n != 2 && n != 3) bad(at(where, "n"), "must be 2 or 3");
    double h = number(member(j, "h", where), at(where, "h"));
    if (!(h > 0)) bad(at(where, "h"), "must be positive");
    const auto& cells = array(member(j, "cells", where), at(where, "cells"));
    std::vector<Cell> out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        auto c = indices(cells[i], at(at(where, "cells"), i));
        if (static_cast<int>(c.size()) != n) bad(at(at(where, "cells"), i), "expected " + std::to_string(n) + " indices");
        Cell cell{};
        for (int a = 0; a < n; ++a) cell[a] = c[a];
        out.push_back(cell);
    }
    return wrapped(where, [&] { return VoxelSet(n, h, std::move(out)); });
}

PiecewiseAffineMap Loader::map(const fs::path& path)
{
    const std::string where = path.string();
    Json j = read_json(path);
    check_header(j, where);
    auto k = resolve(member(j, "complex", where), path.parent_path(), at(where, "complex"));
    int target = k->ambient_dim();
    if (const auto* t = optional_field(j, "target_ambient")) target = integer(*t, at(where, "target_ambient"));
    if (target < 1 || target > kMaxAmbient) bad(at(where, "target_ambient"), "must be 1, 2 or 3");
    const auto& imgs = array(member(j, "vertex_images", where), at(where, "vertex_images"));
    if (static_cast<int>(imgs.size()) != k->num_vertices()) bad(at(where, "vertex_images"), "expected one image per vertex");
    std::vector<Vec3> images;
    for (std::size_t i = 0; i < imgs.size(); ++i) images.push_back(point(imgs[i], target, at(at(where, "vertex_images"), i)));
    return wrapped(where, [&] { return PiecewiseAffineMap(k, std::move(images), target); });
}

std::vector<SharpField> Loader::field(const fs::path& path)
{
    const std::string where = path.string();
    Json j = read_json(path);
    check_header(j, where);
    auto k = resolve(member(j, "complex", where), path.parent_path(), at(where, "complex"));
    const auto& vals = array(member(j, "vertex_values", where), at(where, "vertex_values"));
    if (static_cast<int>(vals.size()) != k->num_vertices()) bad(at(where, "vertex_values"), "expected one value per vertex");
    std::size_t comps = 1;
    bool vector_valued = !vals.empty() && vals[0].is_array();
    if (vector_valued) comps = vals[0].size();
    if (comps == 0) bad(at(where, "vertex_values"), "empty value tuples");
    std::vector<std::vector<double>> cols(comps);
    for (std::size_t i = 0; i < vals.size(); ++i) {
        std::string w = at(at(where, "vertex_values"), i);
        if (vector_valued) {
            if (!vals[i].is_array() || vals[i].size() != comps) bad(w, "expected a tuple of " + std::to_string(comps) + " values");
            for (std::size_t c = 0; c < comps; ++c) cols[c].push_back(number(vals[i][c], at(w, c)));
        } else {
            cols[0].push_back(number(vals[i], w));
        }
    }
    std::vector<SharpField> out;
    for (auto& c : cols) out.emplace_back(k, std::move(c));
    return out;
}

LoadedForm Loader::form(const fs::path& path)
{
    const std::string where = path.string();
    Json j = read_json(path);
    check_header(j, where);
    const int n = ambient_of(j, where);
    const int grade = integer(member(j, "grade", where), at(where, "grade"));
    if (grade < 0 || grade > n) bad(at(where, "grade"), "must lie in [0, ambient]");
    ComplexPtr k;
    if (const auto* ref = optional_field(j, "complex")) {
        k = resolve(*ref, path.parent_path(), at(where, "complex"));
        if (k->ambient_dim() != n) bad(at(where, "complex"), "ambient dimension differs from the form's");
    }
    LoadedForm out;
    const auto* global = optional_field(j, "global");
    const auto* cells = optional_field(j, "cells");
    if ((global != nullptr) == (cells != nullptr)) bad(where, "exactly one of \"global\" and \"cells\" is required");
    if (global) {
        out.smooth = form_from_json(*global, n, grade, at(where, "global"));
        if (k) out.flat = wrapped(where, [&] { return FlatForm::global(k, *out.smooth); });
        return out;
    }
    if (!k) bad(where, "cellwise forms need a \"complex\"");
    array(*cells, at(where, "cells"));
    std::map<int, PolynomialForm> pieces;
    std::map<int, PolynomialForm> derivative;
    bool supplied = false;
    for (std::size_t i = 0; i < cells->size(); ++i) {
        std::string w = at(at(where, "cells"), i);
        const auto& c = (*cells)[i];
        int id = integer(member(c, "cell", w), at(w, "cell"));
        if (id < 0 || id >= k->num_simplices(n)) bad(at(w, "cell"), "no top simplex " + std::to_string(id));
        if (pieces.count(id)) bad(at(w, "cell"), "duplicate cell " + std::to_string(id));
        pieces[id] = form_from_json(member(c, "components", w), n, grade, at(w, "components"));
        if (const auto* d = optional_field(c, "derivative")) {
            if (grade >= n) bad(at(w, "derivative"), "top-degree forms have no derivative");
            derivative[id] = form_from_json(*d, n, grade + 1, at(w, "derivative"));
            supplied = true;
        }
    }
    if (!supplied) {
        out.flat = wrapped(where, [&] { return FlatForm(k, grade, pieces); });
        return out;
    }
    for (const auto& [id, p] : pieces) {
        if (!derivative.count(id)) derivative[id] = p.d();
    }
    out.flat = wrapped(where, [&] { return FlatForm(k, grade, pieces, derivative); });
    return out;
}

SimplicialFluxTable Loader::table(const fs::path& path)
{
    const std::string where = path.string();
    Json j = read_json(path);
    check_header(j, where);
    SimplicialFluxTable t;
    t.complex = resolve(member(j, "complex", where), path.parent_path(), at(where, "complex"));
    t.s = number(member(j, "s", where), at(where, "s"));
    t.b = number(member(j, "b", where), at(where, "b"));
    if (t.s < 0 || t.b < 0) bad(where, "bounds s and b must be non-negative");
    const int dim = t.complex->ambient_dim() - 1;
    const auto& vals = array(member(j, "values", where), at(where, "values"));
    for (std::size_t i = 0; i < vals.size(); ++i) {
        std::string w = at(at(where, "values"), i);
        auto [id, orient] = term_simplex(vals[i], *t.complex, dim, w);
        if (t.values.count(id)) bad(w, "duplicate simplex " + std::to_string(id));
        t.values[id] = orient * number(member(vals[i], "value", w), at(w, "value"));
    }
    return t;
}

Motion Loader::motion(const fs::path& path)
{
    const std::string where = path.string();
    Json j = read_json(path);
    check_header(j, where);
    auto k = resolve(member(j, "complex", where), path.parent_path(), at(where, "complex"));
    const int n = k->ambient_dim();
    double t_max = 1.0;
    if (const auto* t = optional_field(j, "t_max")) t_max = number(*t, at(where, "t_max"));
    const auto& coeffs = array(member(j, "coefficients", where), at(where, "coefficients"));
    if (static_cast<int>(coeffs.size()) != k->num_vertices()) bad(at(where, "coefficients"), "expected one coefficient array per vertex");
    std::vector<Motion::Trajectory> traj;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        std::string w = at(at(where, "coefficients"), i);
        array(coeffs[i], w);
        if (coeffs[i].empty() || coeffs[i].size() > 3) bad(w, "expected 1 to 3 coefficient points (c0, c1, c2)");
        Motion::Trajectory c{Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
        for (std::size_t d = 0; d < coeffs[i].size(); ++d) c[d] = point(coeffs[i][d], n, at(w, d));
        traj.push_back(c);
    }
    return wrapped(where, [&] { return Motion(k, std::move(traj), t_max); });
}

} // namespace gmt::io
