#include <gmt/error.hpp>
#include <gmt/polynomial.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace gmt {

int total_degree(const Exponent& e)
{
    int d = 0;
    for (auto a : e) d += a;
    return d;
}

Polynomial::Polynomial(int num_vars)
    : m_num_vars(num_vars)
{
    require(num_vars >= 0 && num_vars <= kMaxVars, "polynomial: unsupported variable count");
}

Polynomial Polynomial::constant(int num_vars, double c)
{
    Polynomial p(num_vars);
    p.add_term(Exponent{}, c);
    return p;
}

Polynomial Polynomial::variable(int num_vars, int var)
{
    require(var >= 0 && var < num_vars, "polynomial: variable index out of range");
    Exponent e{};
    e[var] = 1;
    return monomial(num_vars, e, 1.0);
}

Polynomial Polynomial::monomial(int num_vars, const Exponent& e, double c)
{
    Polynomial p(num_vars);
    p.add_term(e, c);
    return p;
}

int Polynomial::degree() const
{
    int d = 0;
    for (const auto& [e, c] : m_terms) d = std::max(d, total_degree(e));
    return d;
}

bool Polynomial::is_constant() const
{
    return m_terms.empty() || (m_terms.size() == 1 && total_degree(m_terms.begin()->first) == 0);
}

double Polynomial::constant_term() const
{
    return coefficient(Exponent{});
}

double Polynomial::coefficient(const Exponent& e) const
{
    auto it = m_terms.find(e);
    return it == m_terms.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const Exponent& e, double c)
{
    if (c == 0.0) return;
    for (int i = m_num_vars; i < kMaxVars; ++i) {
        require(e[i] == 0, "polynomial: exponent uses a variable beyond num_vars");
    }
    auto [it, inserted] = m_terms.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) m_terms.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& other)
{
    if (other.is_zero()) return *this;
    if (is_zero() && m_num_vars < other.m_num_vars) m_num_vars = other.m_num_vars;
    require(m_num_vars == other.m_num_vars, "polynomial: variable count mismatch");
    for (const auto& [e, c] : other.m_terms) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other)
{
    if (other.is_zero()) return *this;
    if (is_zero() && m_num_vars < other.m_num_vars) m_num_vars = other.m_num_vars;
    require(m_num_vars == other.m_num_vars, "polynomial: variable count mismatch");
    for (const auto& [e, c] : other.m_terms) add_term(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(double s)
{
    if (s == 0.0) {
        m_terms.clear();
        return *this;
    }
    for (auto& [e, c] : m_terms) c *= s;
    return *this;
}

Polynomial Polynomial::operator-() const
{
    Polynomial r = *this;
    for (auto& [e, c] : r.m_terms) c = -c;
    return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero() || b.is_zero()) return Polynomial(std::max(a.num_vars(), b.num_vars()));
    require(a.num_vars() == b.num_vars(), "polynomial: variable count mismatch");
    Polynomial r(a.num_vars());
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            Exponent e{};
            for (int i = 0; i < kMaxVars; ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::derivative(int var) const
{
    require(var >= 0 && var < m_num_vars, "polynomial: derivative variable out of range");
    Polynomial r(m_num_vars);
    for (const auto& [e, c] : m_terms) {
        if (e[var] == 0) continue;
        Exponent f = e;
        f[var] = static_cast<std::uint8_t>(f[var] - 1);
        r.add_term(f, c * e[var]);
    }
    return r;
}

double Polynomial::operator()(std::span<const double> x) const
{
    require(static_cast<int>(x.size()) >= m_num_vars, "polynomial: too few evaluation coordinates");
    double sum = 0.0;
    for (const auto& [e, c] : m_terms) {
        double term = c;
        for (int i = 0; i < m_num_vars; ++i) {
            for (int k = 0; k < e[i]; ++k) term *= x[i];
        }
        sum += term;
    }
    return sum;
}

double Polynomial::max_abs_coefficient() const
{
    double m = 0.0;
    for (const auto& [e, c] : m_terms) m = std::max(m, std::abs(c));
    return m;
}

Polynomial Polynomial::substitute(const Eigen::MatrixXd& linear, const Eigen::VectorXd& offset) const
{
    const int out_vars = static_cast<int>(linear.cols());
    require(linear.rows() >= m_num_vars && offset.size() >= m_num_vars,
            "polynomial: substitution has too few rows");
    Polynomial result(out_vars);
    if (is_zero()) return result;

    // powers[i][k] = (affine expression for x_i)^k
    std::vector<std::vector<Polynomial>> powers(m_num_vars);
    std::vector<int> max_power(m_num_vars, 0);
    for (const auto& [e, c] : m_terms) {
        for (int i = 0; i < m_num_vars; ++i) max_power[i] = std::max<int>(max_power[i], e[i]);
    }
    for (int i = 0; i < m_num_vars; ++i) {
        Polynomial base(out_vars);
        base.add_term(Exponent{}, offset(i));
        for (int j = 0; j < out_vars; ++j) {
            Exponent e{};
            e[j] = 1;
            base.add_term(e, linear(i, j));
        }
        powers[i].push_back(Polynomial::constant(out_vars, 1.0));
        for (int k = 1; k <= max_power[i]; ++k) powers[i].push_back(powers[i].back() * base);
    }
    for (const auto& [e, c] : m_terms) {
        Polynomial term = Polynomial::constant(out_vars, c);
        for (int i = 0; i < m_num_vars; ++i) {
            if (e[i] > 0) term = term * powers[i][e[i]];
        }
        result += term;
    }
    return result;
}

Polynomial Polynomial::homogenized(int deg) const
{
    Polynomial sum(m_num_vars);
    for (int j = 0; j < m_num_vars; ++j) sum += Polynomial::variable(m_num_vars, j);
    std::vector<Polynomial> sum_powers{Polynomial::constant(m_num_vars, 1.0)};
    Polynomial result(m_num_vars);
    for (const auto& [e, c] : m_terms) {
        int missing = deg - total_degree(e);
        require(missing >= 0, "polynomial: homogenization degree below polynomial degree");
        while (static_cast<int>(sum_powers.size()) <= missing) sum_powers.push_back(sum_powers.back() * sum);
        result += Polynomial::monomial(m_num_vars, e, c) * sum_powers[missing];
    }
    return result;
}

Polynomial Polynomial::pruned(double tol) const
{
    Polynomial r(m_num_vars);
    for (const auto& [e, c] : m_terms) {
        if (std::abs(c) > tol) r.m_terms.emplace(e, c);
    }
    return r;
}

std::string Polynomial::to_string() const
{
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : m_terms) {
        if (!first) os << " + ";
        first = false;
        os << c;
        for (int i = 0; i < m_num_vars; ++i) {
            if (e[i] > 0) os << "*x" << i << "^" << int(e[i]);
        }
    }
    return os.str();
}

bool approx_equal(const Polynomial& a, const Polynomial& b, double tol)
{
    return (a - b).max_abs_coefficient() <= tol;
}

double factorial(int k)
{
    static const auto table = [] {
        std::array<double, 32> t{};
        t[0] = 1.0;
        for (int i = 1; i < 32; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    require(k >= 0 && k < 32, "factorial out of range");
    return table[k];
}

double integrate_standard_simplex(const Polynomial& p)
{
    const int m = p.num_vars() - 1;
    require(m >= 0, "integrate_standard_simplex: need at least one barycentric variable");
    double sum = 0.0;
    for (const auto& [e, c] : p.terms()) {
        double num = 1.0;
        for (int i = 0; i <= m; ++i) num *= factorial(e[i]);
        sum += c * num / factorial(total_degree(e) + m);
    }
    return sum;
}

} // namespace gmt
