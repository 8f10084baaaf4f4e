#pragma once

#include <map>
#include <vector>

#include "bredon/cochain.hpp"

// Independent reference computations the test suites check the production
// pipeline against. These deliberately avoid the orbit/transport machinery.
namespace bredon::oracles {

// Local system on a bare complex: one group per vertex and one invertible
// action per oriented edge (value at head -> value at tail).
struct LocalSystem {
    std::vector<AbelianGroup> vertex_values;
    std::map<std::pair<int, int>, IntMatrix> edge_actions;
};

// Ordered-tuple cochain cohomology with local coefficients, every tuple its
// own coordinate, assembled straight from the face formula.
inline std::vector<AbelianGroup> ordered_local_cohomology(const SimplicialComplex& c,
                                                          const LocalSystem& sys, int max_dim) {
    std::vector<std::vector<VertexTuple>> tuples;
    std::vector<SumDecomposition> sums;
    for (int n = 0; n <= max_dim + 1; ++n) {
        tuples.push_back(ordered_simplices(c, n, /*include_degenerate=*/true));
        std::vector<const AbelianGroup*> parts;
        for (const auto& t : tuples[n]) parts.push_back(&sys.vertex_values[t.front()]);
        sums.push_back(direct_sum(parts));
    }
    std::map<VertexTuple, int> index;
    std::vector<std::map<VertexTuple, int>> index_by_dim(max_dim + 2);
    for (int n = 0; n <= max_dim + 1; ++n)
        for (size_t i = 0; i < tuples[n].size(); ++i)
            index_by_dim[n][tuples[n][i]] = static_cast<int>(i);

    std::vector<AbelianHom> diff;
    for (int n = 0; n <= max_dim; ++n) {
        IntMatrix big(sums[n + 1].group.generators(), sums[n].group.generators());
        for (size_t ri = 0; ri < tuples[n + 1].size(); ++ri) {
            const VertexTuple& t = tuples[n + 1][ri];
            for (size_t j = 0; j < t.size(); ++j) {
                VertexTuple face = t;
                face.erase(face.begin() + j);
                int fi = index_by_dim[n].at(face);
                const AbelianGroup& fv = sys.vertex_values[face.front()];
                IntMatrix block = IntMatrix::identity(fv.generators());
                if (j == 0 && t[0] != t[1]) block = sys.edge_actions.at({t[0], t[1]}) * block;
                int sign = (j % 2 == 0) ? 1 : -1;
                for (int a = 0; a < block.rows(); ++a)
                    for (int b = 0; b < block.cols(); ++b)
                        big.at(sums[n + 1].offset[ri] + a, sums[n].offset[fi] + b) +=
                            sign * block.at(a, b);
            }
        }
        diff.emplace_back(sums[n].group, sums[n + 1].group, std::move(big));
    }

    std::vector<AbelianGroup> out;
    for (int n = 0; n <= max_dim; ++n) {
        AbelianHom d_in = n == 0 ? AbelianHom::zero(AbelianGroup::zero(), sums[0].group)
                                 : diff[n - 1];
        out.push_back(cohomology_at(d_in, diff[n]));
    }
    return out;
}

// Classical alternating simplicial cochains with constant Z coefficients.
inline std::vector<AbelianGroup> alternating_integral_cohomology(const SimplicialComplex& c,
                                                                 int max_dim) {
    std::vector<AbelianGroup> groups;
    std::vector<AbelianHom> diff;
    std::vector<std::map<VertexSet, int>> index(max_dim + 2);
    for (int n = 0; n <= max_dim + 1; ++n) {
        for (size_t i = 0; i < c.simplices(n).size(); ++i)
            index[n][c.simplices(n)[i]] = static_cast<int>(i);
        groups.push_back(AbelianGroup::free(static_cast<int>(c.simplices(n).size())));
    }
    for (int n = 0; n <= max_dim; ++n) {
        IntMatrix d(groups[n + 1].generators(), groups[n].generators());
        for (size_t ri = 0; ri < c.simplices(n + 1).size(); ++ri) {
            const VertexSet& s = c.simplices(n + 1)[ri];
            for (size_t j = 0; j < s.size(); ++j) {
                VertexSet face = s;
                face.erase(face.begin() + j);
                d.at(static_cast<int>(ri), index[n].at(face)) += (j % 2 == 0) ? 1 : -1;
            }
        }
        diff.emplace_back(groups[n], groups[n + 1], std::move(d));
    }
    std::vector<AbelianGroup> out;
    for (int n = 0; n <= max_dim; ++n) {
        AbelianHom d_in =
            n == 0 ? AbelianHom::zero(AbelianGroup::zero(), groups[0]) : diff[n - 1];
        out.push_back(cohomology_at(d_in, diff[n]));
    }
    return out;
}

// Vertex-orbit quotient of a G-complex, taken after one barycentric
// subdivision so that every simplex has vertices in distinct orbits.
inline SimplicialComplex quotient_complex(const GComplexPtr& x) {
    GComplexPtr sd = barycentric_subdivide(*x);
    const SimplicialComplex& c = sd->complex();
    std::vector<int> orbit(c.vertex_count(), -1);
    int orbits = 0;
    for (int v = 0; v < c.vertex_count(); ++v) {
        if (orbit[v] >= 0) continue;
        for (int g = 0; g < sd->group()->order(); ++g) orbit[sd->act(g, v)] = orbits;
        ++orbits;
    }
    std::vector<VertexSet> images;
    for (int d = 0; d <= c.dim(); ++d)
        for (const auto& s : c.simplices(d)) {
            VertexSet img;
            for (int v : s) img.push_back(orbit[v]);
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            if (img.size() != s.size())
                throw Error("NOT_ADMISSIBLE", "quotient degenerates a simplex");
            images.push_back(img);
        }
    return SimplicialComplex::from_maximal(orbits, images);
}

} // namespace bredon::oracles
