#pragma once

#include <gmt/chain.hpp>
#include <gmt/lipschitz_maps.hpp>
#include <gmt/sharp_fields.hpp>

#include <array>
#include <vector>

namespace gmt {

///
/// Motion of a reference complex: vertex i follows c0 + c1 t + c2 t^2 and
/// every time slice is the piecewise affine map with those vertex images.
/// Polynomials extend the motion to negative times.
///
class Motion
{
public:
    using Trajectory = std::array<Vec3, 3>;

    Motion(ComplexPtr reference, std::vector<Trajectory> trajectories, double t_max = 1.0);
    static Motion fixed(ComplexPtr reference, double t_max = 1.0);
    /// x -> (1 + rate t) x.
    static Motion dilation(ComplexPtr reference, double rate, double t_max = 1.0);
    /// Second-order Taylor polynomial of the rotation by omega t about the origin (n = 2).
    static Motion rotation(ComplexPtr reference, double omega, double t_max = 1.0);

    const ComplexPtr& reference() const { return m_reference; }
    int ambient() const { return m_reference->ambient_dim(); }
    double t_max() const { return m_t_max; }
    const std::vector<Trajectory>& trajectories() const { return m_trajectories; }

    Vec3 position(int vertex, double t) const;
    Vec3 velocity(int vertex, double t = 0.0) const;
    PiecewiseAffineMap at(double t) const;

private:
    ComplexPtr m_reference;
    std::vector<Trajectory> m_trajectories;
    double m_t_max = 1.0;
};

struct MotionCertificate
{
    std::vector<double> times;
    /// embedding_check passed at every sampled time.
    bool embedded = false;
    double min_bilip = 0.0;
};

/// Embedding checks at t = 0 and `samples` further times up to t_max.
MotionCertificate certify(const Motion& m, int samples = 4);

/// Velocity at t = 0 on the reference complex, with u = (D kappa_0)^-1 v at
/// the vertices of every top simplex (stored vertex order).
struct MaterialVelocity
{
    std::vector<SharpField> v;
    std::vector<std::vector<Vec3>> u;
};

MaterialVelocity material_velocity(const Motion& m);

///
/// h#([0,1] x T) for the linear homotopy from f to g, realized on the prisms
/// [a_0..a_i, b_i..b_r] (sign (-1)^i) over every simplex of T. Empty when
/// r + 1 exceeds the ambient dimension of the target.
///
struct HomotopyPrism
{
    Chain chain;
    bool trivial = false;
};

HomotopyPrism homotopy_prism(const PiecewiseAffineMap& f, const PiecewiseAffineMap& g, const Chain& t);

/// max over a form battery of |g#T - f#T - boundary h#([0,1] x T) - h#([0,1] x boundary T)|.
double homotopy_formula_residual(const PiecewiseAffineMap& f, const PiecewiseAffineMap& g, const Chain& t,
                                 int battery_size = 10);

/// kappa#(psi T) against psi_kappa kappa#(T) on a form battery.
double product_pushforward_residual(const PiecewiseAffineMap& kappa, const SharpField& psi, const Chain& t,
                                    int battery_size = 10);

/// Central difference of t -> kappa_t#(psi T)(w) at 0, at eps and eps / 2,
/// with the Richardson extrapolation of the two.
struct TransportLhs
{
    double value = 0.0;
    double half = 0.0;
    double richardson = 0.0;
};

TransportLhs transport_lhs(const Motion& m, const SharpField& psi, const Chain& body, const PolynomialForm& w,
                           double eps);

/// psi_0 v ^ kappa_0#(boundary T) plus the Eulerian rate -(d psi_0 . v) kappa_0#(T).
struct TransportRhs
{
    double flux = 0.0;
    double interior = 0.0;
    double value = 0.0;
};

TransportRhs transport_rhs(const Motion& m, const SharpField& psi, const Chain& body, const PolynomialForm& w);

inline const std::vector<double> kTransportSchedule{1e-2, 5e-3, 2.5e-3};
inline constexpr double kTransportFinalEps = 1e-4;
inline constexpr double kTransportAgreement = 1e-6;
inline constexpr double kSlopeTarget = 2.0;
inline constexpr double kSlopeTol = 0.3;

struct TransportCheck
{
    std::vector<double> eps;
    std::vector<double> lhs;
    std::vector<double> errors;
    /// Observed orders between consecutive steps; empty when every error is
    /// at round-off level (the difference quotient is exact).
    std::vector<double> slopes;
    double rhs = 0.0;
    double final_eps = kTransportFinalEps;
    double final_lhs = 0.0;
    double final_error = 0.0;
    double scale = 1.0;
    bool slope_ok = false;
    bool agreement_ok = false;
    bool pass = false;
};

TransportCheck transport_check(const Motion& m, const SharpField& psi, const Chain& body, const PolynomialForm& w,
                               const std::vector<double>& schedule = kTransportSchedule,
                               double final_eps = kTransportFinalEps);

} // namespace gmt
