#pragma once

#include <gmt/chain.hpp>
#include <gmt/subdivision.hpp>

#include <functional>
#include <map>
#include <vector>

namespace gmt {

/// Affine piece x -> linear * x + offset of a map on one maximal simplex.
struct AffinePiece
{
    SimplexKey simplex;
    Mat3 linear = Mat3::Zero();
    Vec3 offset = Vec3::Zero();
    /// Extreme singular values of the differential on the simplex's tangent space.
    double sigma_max = 0.0;
    double sigma_min = 0.0;
};

using PointMap = std::function<Vec3(const Vec3&)>;

///
/// Continuous map that is affine on every simplex of its domain complex,
/// given by the images of the vertices. The image complex has the same
/// combinatorics as the domain, so chains move between them by id.
///
class PiecewiseAffineMap
{
public:
    PiecewiseAffineMap(ComplexPtr domain, std::vector<Vec3> images, int target_ambient);
    /// Vertex interpolant of a closed-form map.
    static PiecewiseAffineMap sample(ComplexPtr domain, const PointMap& f, int target_ambient);

    const ComplexPtr& domain() const { return m_domain; }
    const ComplexPtr& image_complex() const { return m_image; }
    int target_ambient() const { return m_target; }
    const std::vector<Vec3>& images() const { return m_images; }
    const std::vector<AffinePiece>& pieces() const { return m_pieces; }
    /// Affine piece of a maximal simplex containing the given simplex.
    const AffinePiece& piece_for(SimplexKey s) const;

    /// Image of a point given by barycentric coordinates on a simplex.
    Vec3 at(SimplexKey s, std::span<const double> barycentric) const;

private:
    ComplexPtr m_domain;
    ComplexPtr m_image;
    std::vector<Vec3> m_images;
    int m_target = 2;
    std::vector<AffinePiece> m_pieces;
    std::map<SimplexKey, int> m_piece_index;
};

/// G o F, where G is defined on the image complex of F.
PiecewiseAffineMap compose(const PiecewiseAffineMap& g, const PiecewiseAffineMap& f);

/// The map on the fine complex that agrees with f (barycenters go to barycenters of images).
PiecewiseAffineMap refine(const PiecewiseAffineMap& f, const Subdivision& s);

///
/// max spectral norm of the differential over the maximal simplices that
/// contain a simplex of `region` (all maximal simplices when empty). Exact on
/// convex carriers, an upper bound otherwise.
///
double lipschitz_constant(const PiecewiseAffineMap& f, const std::vector<SimplexKey>& region = {});

inline constexpr double kImmersionTol = 1e-9;

struct LipschitzReport
{
    double lip_upper = 0.0;
    /// min(smallest singular value, sampled margin).
    double bilip_lower = 0.0;
    double min_singular = 0.0;
    bool immersion = false;
    bool injective = false;
    bool embedding = false;
    /// Sampled infimum of |F(z) - F(y)| / |z - y| over the sample grid; a
    /// certificate on the grid, not a proof.
    double margin = 0.0;
    int sample_points = 0;
    /// Smallest domain edge length over lip_upper.
    double radius_over_lip = 0.0;
    /// First pair of maximal simplices whose images overlap, if any.
    std::vector<SimplexKey> overlapping_pair;
};

/// Barycentric sample grid resolution used for the margin.
inline constexpr int kMarginGrid = 3;
inline constexpr int kMarginMaxSamples = 2000;

LipschitzReport embedding_check(const PiecewiseAffineMap& f);

/// F#T. Cells keep their coefficients on the image complex; integration
/// terms are pushed by the differential of a full-dimensional carrier piece.
Chain pushforward(const PiecewiseAffineMap& f, const Chain& t);

/// One level of a closed-form pushforward.
struct PushforwardLevel
{
    int d = 0;
    Chain image;
    double mass = 0.0;
};

///
/// Pushforward by the vertex interpolants of a closed-form map after d and
/// d + 1 barycentric subdivisions. `indicator` bounds the flat distance of
/// the two images by the homotopy estimate
/// sup|F_{d+1} - F_d| (L^m M(T) + L^{m-1} M(boundary T)).
///
struct ClosedFormPushforward
{
    PushforwardLevel coarse;
    PushforwardLevel fine;
    double sup_distance = 0.0;
    double lip = 0.0;
    double indicator = 0.0;
};

ClosedFormPushforward pushforward_closed_form(const PointMap& f, int target_ambient, const Chain& t, int d);

/// Flat distance between boundary(F#T) and F#(boundary T) on the image complex.
double pushforward_boundary_commutes(const PiecewiseAffineMap& f, const Chain& t);

/// Pullback of a form, one polynomial form per maximal simplex.
struct PulledBackForm
{
    int grade = 0;
    std::map<SimplexKey, PolynomialForm> pieces;
};

PulledBackForm pullback_form(const PiecewiseAffineMap& f, const PolynomialForm& w);

/// T(F#w), each cell paired with the piece of a maximal simplex containing it.
double evaluate(const Chain& t, const PulledBackForm& w, const PiecewiseAffineMap& f);

///
/// McShane extension x -> min_i (f_i + L |x - x_i|) of scalar samples. The
/// samples must be L-compatible.
///
class LipschitzExtension
{
public:
    LipschitzExtension(std::vector<std::pair<Vec3, double>> samples, double lip);
    double operator()(const Vec3& x) const;
    double lip() const { return m_lip; }
    const std::vector<std::pair<Vec3, double>>& samples() const { return m_samples; }

private:
    std::vector<std::pair<Vec3, double>> m_samples;
    double m_lip = 0.0;
};

/// Componentwise extension of vector samples (each component keeps the constant L).
class VectorLipschitzExtension
{
public:
    VectorLipschitzExtension(const std::vector<std::pair<Vec3, Vec3>>& samples, double lip, int components);
    Vec3 operator()(const Vec3& x) const;

private:
    std::vector<LipschitzExtension> m_parts;
};

/// Both sides of the mass, normal and flat bounds for F#T.
struct NormBoundReport
{
    double lip = 0.0;
    int dim = 0;
    double mass_lhs = 0.0, mass_rhs = 0.0;
    double normal_lhs = 0.0, normal_rhs = 0.0;
    double flat_lhs = 0.0, flat_rhs = 0.0;
    bool ok = false;

    double mass_ratio() const { return mass_rhs > 0 ? mass_lhs / mass_rhs : 0.0; }
    double normal_ratio() const { return normal_rhs > 0 ? normal_lhs / normal_rhs : 0.0; }
    double flat_ratio() const { return flat_rhs > 0 ? flat_lhs / flat_rhs : 0.0; }
};

inline constexpr double kNormBoundTol = 1e-9;

NormBoundReport norm_bound_report(const PiecewiseAffineMap& f, const Chain& t);

} // namespace gmt
