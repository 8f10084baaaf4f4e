#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support/fixtures.hpp"

using namespace bredon;
using namespace bredon::fixtures;

namespace {

int count_gens(const Presentation& p, GenKind kind) {
    int n = 0;
    for (int i = 0; i < p.generator_count(); ++i)
        if (p.generator(i).kind == kind) ++n;
    return n;
}

int count_relations(const Presentation& p, const std::string& tag) {
    int n = 0;
    for (const auto& r : p.relations())
        if (r.tag == tag) ++n;
    return n;
}

GComplexPtr single_edge() {
    SimplicialComplex c = SimplicialComplex::from_maximal(2, {{0, 1}});
    return with_trivial_group(std::move(c));
}

} // namespace

TEST_CASE("objects of the square presentation") {
    auto pres = build_presentation(square_model());
    CHECK(pres->object_count() == 6);
    const GroupPtr& g = pres->space()->group();
    CHECK(pres->find_object(0, Subgroup::whole(g)).has_value());    // (N, Z/2)
    CHECK(pres->find_object(0, Subgroup::trivial(g)).has_value());  // (N, 1)
    CHECK(pres->find_object(2, Subgroup::whole(g)).has_value());    // (S, Z/2)
    CHECK(pres->find_object(3, Subgroup::trivial(g)).has_value());  // (E, 1)
    CHECK_FALSE(pres->find_object(3, Subgroup::whole(g)).has_value());

    // Object count equals the sum over vertices of the stabilizer's
    // subgroup counts.
    int expected = 0;
    for (int v = 0; v < 4; ++v) {
        Subgroup stab = pointwise_stabilizer(*pres->space(), {v});
        for (const auto& h : enumerate_subgroups(g))
            if (stab.contains_subgroup(h)) ++expected;
    }
    CHECK(pres->object_count() == expected);
}

TEST_CASE("trivial group on an edge") {
    auto pres = build_presentation(single_edge());
    CHECK(pres->object_count() == 2);
    CHECK(count_gens(*pres, GenKind::EdgeStep) == 2);
    CHECK(count_gens(*pres, GenKind::Relabel) == 0);
    // Identity twists exist so that twists by subgroup elements have their
    // collapsing relations.
    CHECK(count_gens(*pres, GenKind::Twist) == 2);
    CHECK(count_relations(*pres, "R1") == 0);
    CHECK(count_relations(*pres, "R2") == 2);
    CHECK(count_relations(*pres, "R6") == 2);
}

TEST_CASE("octagon pole objects carry the two reflections") {
    auto pres = build_presentation(octagon_model());
    CHECK(pres->object_count() == 12);
    const GroupPtr& g = pres->space()->group();
    Subgroup vertical(g, {0, 2});   // fixes N and S
    Subgroup horizontal(g, {0, 1}); // fixes E and W
    CHECK(pres->find_object(2, vertical).has_value());
    CHECK(pres->find_object(6, vertical).has_value());
    CHECK(pres->find_object(0, horizontal).has_value());
    CHECK(pres->find_object(4, horizontal).has_value());
    CHECK_FALSE(pres->find_object(2, horizontal).has_value());
    CHECK_FALSE(pres->find_object(0, vertical).has_value());
}

TEST_CASE("R6 count is the subgroup order at each object") {
    auto pres = build_presentation(octagon_model());
    int expected = 0;
    for (int o = 0; o < pres->object_count(); ++o)
        expected += pres->object(o).subgroup.order();
    CHECK(count_relations(*pres, "R6") == expected);
}

TEST_CASE("word composition and reduction") {
    auto pres = build_presentation(square_model());
    const GroupPtr& g = pres->space()->group();
    Subgroup triv = Subgroup::trivial(g);

    int e01 = pres->edge_step_id(0, 1, triv);
    int e10 = pres->edge_step_id(1, 0, triv);
    ArrowWord w = pres->make_word({e01});
    ArrowWord id0 = pres->identity_word(pres->object_id(0, triv));
    CHECK(compose_words(*pres, id0, w).gens == w.gens);

    ArrowWord back = compose_words(*pres, w, pres->make_word({e10}));
    CHECK(pres->semantics(back) == pres->semantics(id0));

    // Twist by r then twist by r is the identity arrow.
    int t_r = pres->twist_id(1, 1, triv); // at (W, 1)
    int t_r2 = pres->twist_id(1, 3, triv);
    ArrowWord twists = pres->make_word({t_r, t_r2});
    CHECK(pres->semantics(twists) ==
          pres->semantics(pres->identity_word(pres->object_id(1, triv))));

    CHECK_THROWS_WITH_AS(compose_words(*pres, w, w), doctest::Contains("NOT_COMPOSABLE"), Error);
}

TEST_CASE("normalization drops unit twists and canonicalizes cosets") {
    auto pres = build_presentation(square_model());
    const GroupPtr& g = pres->space()->group();
    Subgroup whole = Subgroup::whole(g);

    int unit_twist = pres->twist_id(1, 0, whole); // r lies in the subgroup at (N, Z/2)
    ArrowWord w = pres->make_word({unit_twist});
    CHECK(pres->normalize(w).gens.empty());

    // At (N, 1) the twist by r survives normalization.
    int real_twist = pres->twist_id(1, 0, Subgroup::trivial(g));
    CHECK(pres->normalize(pres->make_word({real_twist})).gens.size() == 1);
}

TEST_CASE("identity functor induces the identity mapping") {
    auto pres = build_presentation(square_model());
    PresFunctor f = identity_functor(pres);
    for (int o = 0; o < pres->object_count(); ++o) CHECK(f.object_map[o] == o);
    for (int i = 0; i < pres->generator_count(); ++i) {
        REQUIRE(f.generator_map[i].gens.size() == 1);
        CHECK(f.generator_map[i].gens[0] == i);
    }
}

TEST_CASE("the functor induced by z -> i z^2") {
    auto oct = octagon_model();
    auto sq = square_model();
    auto oct_pres = build_presentation(oct);
    auto sq_pres = build_presentation(sq);
    EquivariantMap psi = psi_map(oct, sq);
    PresFunctor f = induced_functor(psi, oct_pres, sq_pres);

    // (N, Z/2 x 1) lands on (S, Z/2).
    Subgroup vertical(oct->group(), {0, 2});
    int n_obj = oct_pres->object_id(2, vertical);
    CHECK(f.object_map[n_obj] == sq_pres->object_id(2, Subgroup::whole(sq->group())));

    // Edges map to edges, twists to twists by the image element.
    int e = oct_pres->edge_step_id(0, 1, Subgroup::trivial(oct->group()));
    REQUIRE(f.generator_map[e].gens.size() == 1);
    CHECK(sq_pres->generator(f.generator_map[e].gens[0]).kind == GenKind::EdgeStep);
}

TEST_CASE("a collapse functor sends edge steps to identities") {
    auto edge = single_edge();
    SimplicialComplex pt = SimplicialComplex::from_maximal(1, {});
    auto point = std::make_shared<GComplex>(edge->group(), std::move(pt),
                                            std::vector<std::vector<int>>{{0}});
    EquivariantMap collapse = make_equivariant_map(
        edge, point, GroupHom::identity(edge->group()), {0, 0});
    auto epres = build_presentation(edge);
    auto ppres = build_presentation(point);
    PresFunctor f = induced_functor(collapse, epres, ppres);
    for (int i = 0; i < epres->generator_count(); ++i)
        if (epres->generator(i).kind == GenKind::EdgeStep)
            CHECK(f.generator_map[i].gens.empty());
}

TEST_CASE("non-equivariant vertex maps are rejected") {
    auto sq = square_model();
    CHECK_THROWS_WITH_AS(
        make_equivariant_map(sq, sq, GroupHom::identity(sq->group()), {0, 1, 2, 1}),
        doctest::Contains("NOT_EQUIVARIANT"), Error);
}

TEST_CASE("arrows factor as edge steps, a twist, then a relabel") {
    auto oct = octagon_model();
    auto pres = build_presentation(oct);
    const GroupPtr& grp = oct->group();
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> pick_g(0, grp->order() - 1);

    for (int trial = 0; trial < 40; ++trial) {
        // Random edge path in the full complex at the trivial subgroup.
        Subgroup triv = Subgroup::trivial(grp);
        int len = 1 + trial % 4;
        std::vector<int> path{trial % 8};
        for (int i = 0; i < len; ++i) {
            int prev = path.back();
            path.push_back((trial + i) % 2 ? (prev + 1) % 8 : (prev + 7) % 8);
        }
        int g = pick_g(rng);

        std::vector<int> gens;
        for (size_t i = 0; i + 1 < path.size(); ++i)
            gens.push_back(pres->edge_step_id(path[i], path[i + 1], triv));
        gens.push_back(pres->twist_id(g, path.back(), triv));
        int end = oct->act(grp->inv(g), path.back());
        Subgroup stab = pointwise_stabilizer(*oct, {end});
        if (!(stab == triv)) gens.push_back(pres->relabel_id(end, triv, stab));

        ArrowWord w = pres->make_word(gens);
        CHECK(w.source == pres->object_id(path.front(), triv));
        CHECK(w.target == pres->object_id(end, stab));
        WordSemantics s = pres->semantics(w);
        CHECK(s.source == w.source);
        CHECK(s.target == w.target);
    }
}
