#pragma once

#include <gmt/chain.hpp>

#include <vector>

namespace gmt {

///
/// Barycentric subdivision of a complex. Fine vertex i is the barycenter of
/// the coarse simplex origin[i].
///
struct Subdivision
{
    ComplexPtr coarse;
    ComplexPtr fine;
    std::vector<SimplexKey> origin;
};

Subdivision barycentric_subdivision(const ComplexPtr& complex);

/// The same current written on the fine complex.
Chain subdivide(const Chain& c, const Subdivision& s);

/// d successive subdivisions, coarsest first (empty for d = 0).
std::vector<Subdivision> subdivision_tower(const ComplexPtr& complex, int d);

} // namespace gmt
