#pragma once

#include <gmt/chain.hpp>

namespace gmt {

/// Optimal decomposition A = R + boundary(S) with value M(R) + M(S).
struct FlatDecomposition
{
    double value = 0.0;
    Chain R;
    Chain S;
    int iterations = 0;
    /// max |a - r - B s| over m-simplices.
    double feasibility_residual = 0.0;
};

/// Coefficient feasibility tolerance of the decomposition.
inline constexpr double kLpFeasibilityTol = 1e-7;

///
/// Simplicial flat norm of a constant-density chain on its complex, by the
/// linear program over all (m+1)-chains S of the complex.
///
FlatDecomposition flat_norm(const Chain& a);

/// Maximum number of (m+1)-simplices accepted by the oracle.
inline constexpr int kOracleMaxSimplices = 12;

///
/// Enumeration oracle: minimum over S with coefficients in
/// {-2, -1, 0, 1, 2} * max|a|, refined by exact coordinate line searches.
/// An upper bound for the LP value.
///
double flat_norm_oracle(const Chain& a);

/// flat_norm(a - b).value.
double flat_distance(const Chain& a, const Chain& b);

///
/// Flat norm for any chain: the LP value for constant densities, the mass for
/// top-dimensional chains, and the mass (an upper bound) otherwise.
///
double flat_norm_bound(const Chain& a);

} // namespace gmt
