#pragma once

#include <gmt/form.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace gmt {

/// Random polynomial with about half of the monomials of degree <= max_degree
/// present, coefficients uniform in [-1, 1].
Polynomial random_polynomial(int num_vars, int max_degree, std::mt19937_64& rng);

PolynomialForm random_form(int ambient, int grade, int max_degree, std::mt19937_64& rng);

///
/// Fixed battery of test forms of one grade: the constant basis forms, one
/// linear-coefficient form, then seeded random forms up to max_degree.
///
std::vector<PolynomialForm> form_battery(int ambient, int grade, int count = 10, int max_degree = 3,
                                         std::uint64_t seed = 7);

/// GMT_SEED from the environment, or 42.
std::uint64_t default_seed();

} // namespace gmt
