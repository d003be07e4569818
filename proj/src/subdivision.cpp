#include <gmt/error.hpp>
#include <gmt/subdivision.hpp>

#include <algorithm>
#include <map>
#include <numeric>

namespace gmt {

namespace {

int parity(const std::vector<int>& p)
{
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            if (p[i] > p[j]) s = -s;
        }
    }
    return s;
}

struct Flag
{
    std::vector<int> fine_vertices; // barycenters of the flag, in flag order
    Eigen::MatrixXd bary;           // column j: parent barycentrics of fine vertex j
    int sign = 1;                   // orientation of the flag order relative to the parent
};

// flags of the k-simplex `id`, fine vertex ids from `vertex_of`
std::vector<Flag> flags_of(const SimplicialComplex& k, int dim, int id, const std::map<SimplexKey, int>& vertex_of)
{
    auto verts = k.simplex(dim, id);
    std::vector<int> perm(dim + 1);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Flag> out;
    do {
        Flag f;
        f.sign = parity(perm);
        f.bary = Eigen::MatrixXd::Zero(dim + 1, dim + 1);
        std::vector<int> face;
        for (int j = 0; j <= dim; ++j) {
            face.push_back(verts[perm[j]]);
            std::vector<int> sorted = face;
            std::sort(sorted.begin(), sorted.end());
            int fid = *k.find(j, sorted);
            f.fine_vertices.push_back(vertex_of.at({j, fid}));
            for (int i = 0; i <= j; ++i) f.bary(perm[i], j) = 1.0 / (j + 1);
        }
        out.push_back(std::move(f));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace

Subdivision barycentric_subdivision(const ComplexPtr& complex)
{
    const auto& k = *complex;
    Subdivision s;
    s.coarse = complex;
    ComplexBuilder b(k.ambient_dim());
    std::map<SimplexKey, int> vertex_of;
    for (int dim = 0; dim <= kMaxSimplexDim; ++dim) {
        for (int id = 0; id < k.num_simplices(dim); ++id) {
            Vec3 c = Vec3::Zero();
            auto pts = k.points(dim, id);
            for (const auto& p : pts) c += p;
            c /= static_cast<double>(pts.size());
            vertex_of[{dim, id}] = b.add_vertex(c);
            s.origin.push_back({dim, id});
        }
    }
    for (int dim = kMaxSimplexDim; dim >= 1; --dim) {
        for (int id = 0; id < k.num_simplices(dim); ++id) {
            if (!k.is_maximal(dim, id)) continue;
            for (const auto& f : flags_of(k, dim, id, vertex_of)) b.add_simplex(f.fine_vertices);
        }
    }
    s.fine = b.build();
    return s;
}

Chain subdivide(const Chain& c, const Subdivision& s)
{
    require(c.complex() == s.coarse, "chain is not on the subdivided complex");
    const auto& k = *s.coarse;
    std::map<SimplexKey, int> vertex_of;
    for (std::size_t i = 0; i < s.origin.size(); ++i) vertex_of[s.origin[i]] = static_cast<int>(i);
    Chain out(s.fine, c.dim());
    const int m = c.dim();

    // reorders a flag into the stored vertex order of its fine simplex
    auto place = [&](const Flag& f, int dim, int& id, Eigen::MatrixXd& bary) {
        std::vector<int> order(dim + 1);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return f.fine_vertices[a] < f.fine_vertices[b]; });
        std::vector<int> sorted;
        bary.resize(dim + 1, dim + 1);
        for (int j = 0; j <= dim; ++j) {
            sorted.push_back(f.fine_vertices[order[j]]);
            bary.col(j) = f.bary.col(order[j]);
        }
        id = *s.fine->find(dim, sorted);
        return parity(order);
    };

    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(m + 1);
    for (const auto& [id, p] : c.cells()) {
        for (const auto& f : flags_of(k, m, id, vertex_of)) {
            int fid = 0;
            Eigen::MatrixXd bary;
            int sign = f.sign * place(f, m, fid, bary);
            if (p.is_constant()) {
                out.add_cell(fid, sign * p.constant_term());
            } else {
                out.add_cell(fid, p.substitute(bary, zero) * static_cast<double>(sign));
            }
        }
    }
    for (const auto& [key, eta] : c.integration_terms()) {
        const Eigen::VectorXd z = Eigen::VectorXd::Zero(key.dim + 1);
        const double share = 1.0 / factorial(key.dim + 1);
        for (const auto& f : flags_of(k, key.dim, key.id, vertex_of)) {
            int fid = 0;
            Eigen::MatrixXd bary;
            place(f, key.dim, fid, bary);
            GradedPolynomial moved = eta.substitute(bary, z);
            moved *= share;
            out.add_integration({key.dim, fid}, moved);
        }
    }
    return out;
}

std::vector<Subdivision> subdivision_tower(const ComplexPtr& complex, int d)
{
    require(d >= 0, "subdivision depth must be non-negative");
    std::vector<Subdivision> tower;
    ComplexPtr current = complex;
    for (int i = 0; i < d; ++i) {
        tower.push_back(barycentric_subdivision(current));
        current = tower.back().fine;
    }
    return tower;
}

} // namespace gmt
