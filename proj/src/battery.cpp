#include <gmt/battery.hpp>

#include <cstdlib>
#include <string>

namespace gmt {

namespace {

void monomials(int num_vars, int max_degree, int var, Exponent& e, int used, std::vector<Exponent>& out)
{
    if (var == num_vars) {
        out.push_back(e);
        return;
    }
    for (int a = 0; used + a <= max_degree; ++a) {
        e[var] = static_cast<std::uint8_t>(a);
        monomials(num_vars, max_degree, var + 1, e, used + a, out);
    }
    e[var] = 0;
}

} // namespace

Polynomial random_polynomial(int num_vars, int max_degree, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::bernoulli_distribution keep(0.5);
    std::vector<Exponent> all;
    Exponent e{};
    monomials(num_vars, max_degree, 0, e, 0, all);
    Polynomial p(num_vars);
    for (const auto& m : all) {
        bool k = keep(rng);
        double c = coef(rng);
        if (k) p.add_term(m, c);
    }
    return p;
}

PolynomialForm random_form(int ambient, int grade, int max_degree, std::mt19937_64& rng)
{
    PolynomialForm w(ambient, grade);
    for (BasisMask m : basis_masks(ambient, grade)) w[m] = random_polynomial(ambient, max_degree, rng);
    return w;
}

std::vector<PolynomialForm> form_battery(int ambient, int grade, int count, int max_degree, std::uint64_t seed)
{
    std::vector<PolynomialForm> out;
    for (BasisMask m : basis_masks(ambient, grade)) {
        if (static_cast<int>(out.size()) >= count) break;
        PolynomialForm w(ambient, grade);
        w[m] = Polynomial::constant(ambient, 1.0);
        out.push_back(w);
    }
    if (static_cast<int>(out.size()) < count) {
        PolynomialForm w(ambient, grade);
        int i = 0;
        for (BasisMask m : basis_masks(ambient, grade)) w[m] = coordinate(ambient, i++ % ambient);
        out.push_back(w);
    }
    std::mt19937_64 rng(seed);
    while (static_cast<int>(out.size()) < count) out.push_back(random_form(ambient, grade, max_degree, rng));
    return out;
}

std::uint64_t default_seed()
{
    if (const char* s = std::getenv("GMT_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
        }
    }
    return 42;
}

} // namespace gmt
