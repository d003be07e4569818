#include <gmt/flat_norm.hpp>
#include <gmt/io.hpp>
#include <scenarios.hpp>

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace gmt;

namespace {

Vec3 vec(const std::vector<double>& p)
{
    require(!p.empty() && p.size() <= 3, "points have 1 to 3 coordinates");
    Vec3 v = Vec3::Zero();
    for (std::size_t i = 0; i < p.size(); ++i) v(i) = p[i];
    return v;
}

std::vector<double> list(const Vec3& v, int n)
{
    return {v.data(), v.data() + n};
}

py::object to_python(const io::Json& j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

ComplexPtr make_complex(int ambient, const std::vector<std::vector<double>>& vertices, const std::vector<std::vector<int>>& simplices)
{
    ComplexBuilder b(ambient);
    for (const auto& p : vertices) b.add_vertex(vec(p));
    for (const auto& s : simplices) b.add_simplex(std::span<const int>(s));
    return b.build();
}

std::map<int, double> coefficients(const Chain& c)
{
    require(c.is_simplicial(), "chain has non-constant densities");
    std::map<int, double> out;
    for (const auto& [id, p] : c.cells()) out[id] = p.constant_term();
    return out;
}

} // namespace

PYBIND11_MODULE(_gmt, m)
{
    m.doc() = "Flat chains, sharp fields and Cauchy fluxes on simplicial complexes";
    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    py::class_<SimplicialComplex, std::shared_ptr<SimplicialComplex>>(m, "Complex")
        .def(py::init([](int ambient, const std::vector<std::vector<double>>& vertices, const std::vector<std::vector<int>>& simplices) {
                 return std::const_pointer_cast<SimplicialComplex>(make_complex(ambient, vertices, simplices));
             }),
             py::arg("ambient"), py::arg("vertices"), py::arg("simplices"))
        .def_property_readonly("ambient_dim", &SimplicialComplex::ambient_dim)
        .def_property_readonly("top_dim", &SimplicialComplex::top_dim)
        .def_property_readonly("num_vertices", &SimplicialComplex::num_vertices)
        .def("num_simplices", &SimplicialComplex::num_simplices)
        .def("simplex", [](const SimplicialComplex& k, int dim, int id) {
            auto s = k.simplex(dim, id);
            return std::vector<int>(s.begin(), s.end());
        })
        .def("volume", &SimplicialComplex::volume);

    py::class_<Chain>(m, "Chain")
        .def(py::init([](const std::shared_ptr<SimplicialComplex>& k, int dim) { return Chain(k, dim); }))
        .def("add_cell", py::overload_cast<int, double>(&Chain::add_cell))
        .def("add_oriented", [](Chain& c, const std::vector<int>& v, double coefficient) { c.add_oriented(std::span<const int>(v), coefficient); })
        .def_property_readonly("dim", &Chain::dim)
        .def_property_readonly("is_zero", &Chain::is_zero)
        .def("coefficients", &coefficients)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * double())
        .def(double() * py::self)
        .def(-py::self);

    m.def("boundary", &boundary);
    m.def("mass", &mass);

    py::class_<FlatDecomposition>(m, "FlatDecomposition")
        .def_readonly("value", &FlatDecomposition::value)
        .def_readonly("R", &FlatDecomposition::R)
        .def_readonly("S", &FlatDecomposition::S)
        .def_readonly("iterations", &FlatDecomposition::iterations)
        .def_readonly("feasibility_residual", &FlatDecomposition::feasibility_residual);
    m.def("flat_norm", &flat_norm);
    m.def("flat_norm_oracle", &flat_norm_oracle);
    m.def("flat_distance", &flat_distance);

    py::class_<PiecewiseAffineMap>(m, "Map")
        .def(py::init([](const std::shared_ptr<SimplicialComplex>& k, const std::vector<std::vector<double>>& images, int target) {
                 std::vector<Vec3> v;
                 for (const auto& p : images) v.push_back(vec(p));
                 return PiecewiseAffineMap(k, std::move(v), target);
             }),
             py::arg("complex"), py::arg("images"), py::arg("target_ambient"))
        .def_property_readonly("target_ambient", &PiecewiseAffineMap::target_ambient)
        .def("images", [](const PiecewiseAffineMap& f) {
            std::vector<std::vector<double>> out;
            for (const auto& p : f.images()) out.push_back(list(p, f.target_ambient()));
            return out;
        });
    m.def("pushforward", &pushforward);
    m.def("lipschitz_constant", [](const PiecewiseAffineMap& f) { return lipschitz_constant(f); });
    m.def("embedding_check", [](const PiecewiseAffineMap& f) {
        auto r = embedding_check(f);
        py::dict d;
        d["lip_upper"] = r.lip_upper;
        d["bilip_lower"] = r.bilip_lower;
        d["min_singular"] = r.min_singular;
        d["immersion"] = r.immersion;
        d["injective"] = r.injective;
        d["embedding"] = r.embedding;
        return d;
    });

    py::class_<SharpField>(m, "SharpField")
        .def(py::init([](const std::shared_ptr<SimplicialComplex>& k, std::vector<double> values) { return SharpField(k, std::move(values)); }))
        .def("values", &SharpField::values);
    m.def("multiply", &multiply);
    m.def("leibniz_residual", [](const SharpField& phi, const Chain& a) { return leibniz_boundary(phi, a).residual; });

    py::class_<VoxelSet>(m, "VoxelSet")
        .def(py::init([](int n, double h, const std::vector<std::vector<int>>& cells) {
            std::vector<Cell> c;
            for (const auto& x : cells) {
                require(static_cast<int>(x.size()) == n, "cells need n indices");
                c.push_back({x[0], x[1], n == 3 ? x[2] : 0});
            }
            return VoxelSet(n, h, std::move(c));
        }))
        .def_property_readonly("n", &VoxelSet::n)
        .def_property_readonly("h", &VoxelSet::h)
        .def("__len__", &VoxelSet::size)
        .def("measure", &VoxelSet::measure)
        .def("perimeter", [](const VoxelSet& u) { return measure_boundary(u).measure(); });
    m.def("density", [](const VoxelSet& u, const std::vector<double>& x, double r, std::uint64_t seed) {
        auto d = density(vec(x), u, r, seed);
        return std::make_pair(d.value, d.standard_error);
    }, py::arg("voxels"), py::arg("point"), py::arg("radius"), py::arg("seed") = 42);
    m.def("koch_prefractal", &koch_prefractal);

    m.def("load_chain", [](const std::string& path) { return io::Loader().chain(path); });
    m.def("load_map", [](const std::string& path) { return io::Loader().map(path); });
    m.def("load_voxels", [](const std::string& path) { return io::Loader().voxels(path); });

    m.def("scenarios", [] {
        std::vector<std::string> out;
        for (const auto& s : cli::scenarios()) out.push_back(s.name);
        return out;
    });
    m.def("run_scenario", [](const std::string& name, std::uint64_t seed) {
        cli::Options o;
        o.seed = seed;
        io::Json report;
        {
            py::gil_scoped_release release;
            report = cli::run_scenario(name, o);
        }
        return to_python(report);
    }, py::arg("name"), py::arg("seed") = 42);
}
