#pragma once

#include <memory>
#include <vector>

#include "bredon/cochain.hpp"

namespace bredon::fixtures {

// Circle as a square (4-cycle): N=0, W=1, S=2, E=3, with Z/2 reflecting
// across the vertical axis (swaps W and E, fixes N and S).
inline GComplexPtr square_model() {
    auto z2 = FiniteGroup::cyclic(2);
    SimplicialComplex c = SimplicialComplex::from_maximal(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    std::vector<std::vector<int>> action{{0, 1, 2, 3}, {0, 3, 2, 1}};
    auto x = std::make_shared<GComplex>(z2, std::move(c), std::move(action));
    const_cast<GComplex&>(*x).vertex_names = {"N", "W", "S", "E"};
    return x;
}

// Circle as an octagon, vertex k at angle k*45deg (0 = E), with
// Z/2 x Z/2: (r,1) reflects across the vertical axis, (1,r) across the
// horizontal one.
inline GComplexPtr octagon_model() {
    ProductGroup d4 = direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    std::vector<VertexSet> edges;
    for (int k = 0; k < 8; ++k) edges.push_back({k, (k + 1) % 8});
    SimplicialComplex c = SimplicialComplex::from_maximal(8, edges);
    std::vector<std::vector<int>> action(4, std::vector<int>(8));
    for (int k = 0; k < 8; ++k) {
        action[0][k] = k;
        action[d4.pair(1, 0)][k] = ((4 - k) % 8 + 8) % 8; // vertical mirror
        action[d4.pair(0, 1)][k] = (8 - k) % 8;           // horizontal mirror
        action[d4.pair(1, 1)][k] = (k + 4) % 8;           // half turn
    }
    auto x = std::make_shared<GComplex>(d4.group, std::move(c), std::move(action));
    const_cast<GComplex&>(*x).vertex_names = {"E", "NE", "N", "NW", "W", "SW", "S", "SE"};
    return x;
}

// z -> i z^2 from the octagon to the square, over the quotient killing the
// half turn.
inline EquivariantMap psi_map(const GComplexPtr& octagon, const GComplexPtr& square) {
    GroupHom hom(octagon->group(), square->group(), {0, 1, 1, 0});
    return make_equivariant_map(octagon, square, std::move(hom), {0, 1, 2, 3, 0, 1, 2, 3});
}

// The coefficient system with Z at the south pole with its full stabilizer.
inline CoeffPtr south_pole_system(const PresentationPtr& square_pres) {
    return orbit_supported_system(square_pres, /*S=*/2,
                                  Subgroup::whole(square_pres->space()->group()),
                                  AbelianGroup::free(1));
}

// Single edge with the flip: fixes the edge setwise, not vertexwise.
inline GComplexPtr edge_swap_model() {
    auto z2 = FiniteGroup::cyclic(2);
    SimplicialComplex c = SimplicialComplex::from_maximal(2, {{0, 1}});
    return std::make_shared<GComplex>(z2, std::move(c), std::vector<std::vector<int>>{{0, 1}, {1, 0}},
                                      /*require_admissible=*/false);
}

// Hollow triangle rotated by Z/3.
inline GComplexPtr triangle_z3() {
    auto z3 = FiniteGroup::cyclic(3);
    SimplicialComplex c = SimplicialComplex::from_maximal(3, {{0, 1}, {1, 2}, {0, 2}});
    return std::make_shared<GComplex>(
        z3, std::move(c),
        std::vector<std::vector<int>>{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}},
        /*require_admissible=*/false);
}

// Free antipodal Z/2 on the 4-cycle.
inline GComplexPtr antipodal_square() {
    auto z2 = FiniteGroup::cyclic(2);
    SimplicialComplex c = SimplicialComplex::from_maximal(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    return std::make_shared<GComplex>(z2, std::move(c),
                                      std::vector<std::vector<int>>{{0, 1, 2, 3}, {2, 3, 0, 1}});
}

// Seven-vertex triangulated torus, trivial group.
inline GComplexPtr torus7() {
    std::vector<VertexSet> tris;
    for (int i = 0; i < 7; ++i) {
        tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
        tris.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    SimplicialComplex c = SimplicialComplex::from_maximal(7, tris);
    return std::make_shared<GComplex>(FiniteGroup::trivial(), std::move(c),
                                      std::vector<std::vector<int>>{{0, 1, 2, 3, 4, 5, 6}});
}

// Plain complex with the trivial group.
inline GComplexPtr with_trivial_group(SimplicialComplex c) {
    std::vector<int> id(c.vertex_count());
    for (int i = 0; i < c.vertex_count(); ++i) id[i] = i;
    return std::make_shared<GComplex>(FiniteGroup::trivial(), std::move(c),
                                      std::vector<std::vector<int>>{id});
}

} // namespace bredon::fixtures
