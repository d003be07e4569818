#pragma once

#include <gmt/cauchy_flux.hpp>
#include <gmt/error.hpp>
#include <gmt/finite_perimeter.hpp>
#include <gmt/transport.hpp>

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace gmt::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Malformed or invalid input file; the message starts with the file and field.
class SchemaError : public Error
{
public:
    using Error::Error;
};

Json read_json(const std::filesystem::path& path);
/// Two-space indented text with a trailing newline. Keys are sorted, so equal
/// documents dump to equal bytes.
std::string dump(const Json& j);
void write_json(const std::filesystem::path& path, const Json& j);

/// {"i,j,...": coefficient}; a bare number is a constant.
Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j, int num_vars, const std::string& where = "polynomial");

/// Component names "1", "dx", "dy", "dz", "dx^dy", ...
std::string basis_name(BasisMask m);
Json form_to_json(const PolynomialForm& w);
PolynomialForm form_from_json(const Json& j, int ambient, int grade, const std::string& where = "form");

Json complex_to_json(const SimplicialComplex& k);
/// Cells only; the complex reference is stored verbatim.
Json chain_to_json(const Chain& c, const Json& complex_ref);
Json voxels_to_json(const VoxelSet& u);
Json table_to_json(const SimplicialFluxTable& t, const Json& complex_ref);

/// A form file: always a smooth form when given globally, and a flat form
/// whenever a complex is attached.
struct LoadedForm
{
    std::optional<PolynomialForm> smooth;
    std::optional<FlatForm> flat;
};

///
/// Reads the versioned input files. Complex references (a path relative to
/// the referencing file, or an inline object) resolve to one shared instance
/// per path or per inline content.
///
class Loader
{
public:
    ComplexPtr complex(const std::filesystem::path& path);
    /// `fallback` is used when the file has no "complex" entry.
    Chain chain(const std::filesystem::path& path, ComplexPtr fallback = nullptr);
    VoxelSet voxels(const std::filesystem::path& path);
    PiecewiseAffineMap map(const std::filesystem::path& path);
    /// One field per value component (a scalar file gives one field).
    std::vector<SharpField> field(const std::filesystem::path& path);
    LoadedForm form(const std::filesystem::path& path);
    SimplicialFluxTable table(const std::filesystem::path& path);
    Motion motion(const std::filesystem::path& path);

    ComplexPtr complex_from(const Json& j, const std::string& where);
    Chain chain_from(const Json& j, const std::filesystem::path& base, const std::string& where,
                     ComplexPtr fallback = nullptr);

private:
    ComplexPtr resolve(const Json& ref, const std::filesystem::path& base, const std::string& where);

    std::map<std::string, ComplexPtr> m_cache;
};

} // namespace gmt::io
