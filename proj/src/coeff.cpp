#include "bredon/coeff.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace bredon {

CoefficientSystem::CoefficientSystem(PresentationPtr pres, std::vector<AbelianGroup> values,
                                     std::vector<AbelianHom> actions)
    : pres_(std::move(pres)), values_(std::move(values)), actions_(std::move(actions)) {
    if (static_cast<int>(values_.size()) != pres_->object_count() ||
        static_cast<int>(actions_.size()) != pres_->generator_count())
        throw Error("TYPE_MISMATCH", "value/action count does not match the presentation");
    for (int i = 0; i < pres_->generator_count(); ++i) {
        const ArrowGen& g = pres_->generator(i);
        if (!actions_[i].source().same_presentation(values_[g.target]) ||
            !actions_[i].target().same_presentation(values_[g.source]))
            throw Error("TYPE_MISMATCH",
                        "action endpoints do not match at generator " + pres_->generator_str(i));
    }
    for (size_t r = 0; r < pres_->relations().size(); ++r) {
        const Relation& rel = pres_->relations()[r];
        if (!evaluate(rel.lhs).equals_mod_relations(evaluate(rel.rhs)))
            throw Error("RELATION_VIOLATED",
                        rel.tag + " relation " + std::to_string(r) + " at " +
                            pres_->object_str(rel.lhs.source) + " -> " +
                            pres_->object_str(rel.lhs.target));
    }
}

AbelianHom CoefficientSystem::evaluate(const ArrowWord& w) const {
    AbelianHom result = AbelianHom::identity(values_[w.target]);
    for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it)
        result = actions_[*it].compose(result);
    return result;
}

CoeffPtr constant_system(const PresentationPtr& pres, const AbelianGroup& value) {
    std::vector<AbelianGroup> values(pres->object_count(), value);
    std::vector<AbelianHom> actions;
    for (int i = 0; i < pres->generator_count(); ++i)
        actions.push_back(AbelianHom::identity(value));
    return std::make_shared<CoefficientSystem>(pres, std::move(values), std::move(actions));
}

CoeffPtr orbit_supported_system(const PresentationPtr& pres, int vertex, const Subgroup& h,
                                const AbelianGroup& value) {
    const GComplex& x = *pres->space();
    const GroupPtr& grp = x.group();
    std::set<int> support;
    for (int g = 0; g < grp->order(); ++g)
        support.insert(pres->object_id(x.act(g, vertex), h.conjugate(grp->inv(g))));

    std::vector<AbelianGroup> values(pres->object_count(), AbelianGroup::zero());
    for (int o : support) values[o] = value;
    std::vector<AbelianHom> actions;
    for (int i = 0; i < pres->generator_count(); ++i) {
        const ArrowGen& g = pres->generator(i);
        if (support.count(g.source) && support.count(g.target))
            actions.push_back(AbelianHom::identity(value));
        else
            actions.push_back(AbelianHom::zero(values[g.target], values[g.source]));
    }
    return std::make_shared<CoefficientSystem>(pres, std::move(values), std::move(actions));
}

CoeffPtr explicit_system(const PresentationPtr& pres,
                         const std::vector<std::pair<int, AbelianGroup>>& values,
                         const std::vector<std::pair<int, IntMatrix>>& actions) {
    std::vector<AbelianGroup> vals(pres->object_count(), AbelianGroup::zero());
    for (const auto& [obj, grp] : values) vals[obj] = grp;
    std::map<int, IntMatrix> given(actions.begin(), actions.end());

    std::vector<AbelianHom> acts;
    for (int i = 0; i < pres->generator_count(); ++i) {
        const ArrowGen& g = pres->generator(i);
        const AbelianGroup& src = vals[g.target];
        const AbelianGroup& tgt = vals[g.source];
        auto it = given.find(i);
        if (it != given.end()) {
            acts.emplace_back(src, tgt, it->second);
            continue;
        }
        if (src.is_trivial() || tgt.is_trivial()) {
            acts.push_back(AbelianHom::zero(src, tgt));
            continue;
        }
        if (g.kind == GenKind::Twist && pres->object(g.source).subgroup.contains(g.g)) {
            acts.push_back(AbelianHom::identity(src));
            continue;
        }
        throw Error("TYPE_MISMATCH", "no action given for generator " + pres->generator_str(i));
    }
    return std::make_shared<CoefficientSystem>(pres, std::move(vals), std::move(acts));
}

namespace {

// Characters of an abelian subgroup as value vectors into Z_M (M = |G|),
// indexed by the subgroup's sorted element list, ordered lexicographically.
std::vector<std::vector<int>> characters(const GroupPtr& g, const Subgroup& k) {
    const int m = g->order();
    const auto& elems = k.elements();
    auto pos = [&](int e) {
        return std::lower_bound(elems.begin(), elems.end(), e) - elems.begin();
    };
    std::vector<int> gens;
    Subgroup cur = Subgroup::trivial(g);
    for (int e : elems) {
        if (cur.contains(e)) continue;
        gens.push_back(e);
        std::vector<int> with = cur.elements();
        with.push_back(e);
        cur = subgroup_closure(g, with);
    }
    std::vector<int> orders;
    for (int e : gens) {
        int o = 1, p = e;
        while (p != g->identity()) {
            p = g->mul(p, e);
            ++o;
        }
        orders.push_back(o);
    }

    std::set<std::vector<int>> found;
    std::vector<int> choice(gens.size(), 0);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == gens.size()) {
            // Grow the full value table from the generator images; discard
            // inconsistent choices (generators need not be independent).
            std::map<int, int> val{{g->identity(), 0}};
            bool ok = true;
            for (size_t pass = 0; pass < elems.size() && ok; ++pass) {
                auto snapshot = val;
                for (const auto& [e, v] : snapshot)
                    for (size_t j = 0; j < gens.size(); ++j) {
                        int prod = g->mul(e, gens[j]);
                        int pv = (v + choice[j] * (m / orders[j])) % m;
                        auto it = val.find(prod);
                        if (it == val.end())
                            val[prod] = pv;
                        else if (it->second != pv)
                            ok = false;
                    }
            }
            if (ok && val.size() == elems.size()) {
                std::vector<int> vec(elems.size());
                for (const auto& [e, v] : val) vec[pos(e)] = v;
                found.insert(vec);
            }
            return;
        }
        for (int c = 0; c < orders[i]; ++c) {
            choice[i] = c;
            rec(i + 1);
        }
    };
    rec(0);
    if (static_cast<int>(found.size()) != k.order())
        throw Error("NONABELIAN_UNSUPPORTED", "character count mismatch for " + k.str());
    return std::vector<std::vector<int>>(found.begin(), found.end());
}

} // namespace

CoeffPtr representation_system(const PresentationPtr& pres) {
    const GComplex& x = *pres->space();
    const GroupPtr& grp = x.group();
    if (!grp->is_abelian())
        throw Error("NONABELIAN_UNSUPPORTED", "representation system needs an abelian group");

    std::map<std::vector<int>, std::vector<std::vector<int>>> chars;
    auto chars_of = [&](const Subgroup& k) -> const std::vector<std::vector<int>>& {
        auto it = chars.find(k.elements());
        if (it == chars.end()) it = chars.emplace(k.elements(), characters(grp, k)).first;
        return it->second;
    };

    std::vector<AbelianGroup> values;
    for (int o = 0; o < pres->object_count(); ++o)
        values.push_back(
            AbelianGroup::free(static_cast<int>(chars_of(pres->object(o).subgroup).size())));

    auto restriction = [&](const Subgroup& k, const Subgroup& h) {
        const auto& ck = chars_of(k);
        const auto& ch = chars_of(h);
        IntMatrix m(static_cast<int>(ch.size()), static_cast<int>(ck.size()));
        for (size_t c = 0; c < ck.size(); ++c) {
            std::vector<int> restricted;
            for (int e : h.elements()) {
                auto at = std::lower_bound(k.elements().begin(), k.elements().end(), e) -
                          k.elements().begin();
                restricted.push_back(ck[c][at]);
            }
            auto it = std::find(ch.begin(), ch.end(), restricted);
            if (it == ch.end())
                throw Error("NONABELIAN_UNSUPPORTED", "restriction escaped the character list");
            m.at(static_cast<int>(it - ch.begin()), static_cast<int>(c)) = 1;
        }
        return m;
    };

    std::vector<AbelianHom> actions;
    for (int i = 0; i < pres->generator_count(); ++i) {
        const ArrowGen& g = pres->generator(i);
        switch (g.kind) {
        case GenKind::EdgeStep:
        case GenKind::Twist:
            // Conjugation is trivial in an abelian group.
            actions.push_back(AbelianHom::identity(values[g.source]));
            break;
        case GenKind::Relabel:
            actions.emplace_back(values[g.target], values[g.source],
                                 restriction(pres->object(g.target).subgroup,
                                             pres->object(g.source).subgroup));
            break;
        }
    }
    return std::make_shared<CoefficientSystem>(pres, std::move(values), std::move(actions));
}

CoeffPtr pullback_system(const PresFunctor& f, const CoefficientSystem& a) {
    if (a.presentation() != f.target)
        throw Error("TYPE_MISMATCH", "system lives on a different presentation");
    std::vector<AbelianGroup> values;
    for (int o = 0; o < f.source->object_count(); ++o)
        values.push_back(a.value(f.object_map[o]));
    std::vector<AbelianHom> actions;
    for (int i = 0; i < f.source->generator_count(); ++i)
        actions.push_back(a.evaluate(f.generator_map[i]));
    return std::make_shared<CoefficientSystem>(f.source, std::move(values), std::move(actions));
}

GammaData compute_gamma(const Bibundle& b, int z, const Subgroup& k) {
    const auto& prod = b.product;
    std::vector<int> zeta;
    for (int kk : k.elements()) {
        int found = -1;
        for (int h = 0; h < prod.right->order(); ++h) {
            if (b.total->act(prod.pair(kk, h), z) != z) continue;
            if (found >= 0)
                throw Error("FIBER_NOT_TORSOR",
                            "two fiber corrections for " + prod.left->name(kk) + " at " +
                                b.total->vertex_name(z));
            found = h;
        }
        if (found < 0)
            throw Error("FIBER_NOT_TORSOR", "no fiber correction for " + prod.left->name(kk) +
                                                " at " + b.total->vertex_name(z));
        zeta.push_back(found);
    }
    Subgroup gamma = [&]() {
        try {
            return graph_subgroup(k, zeta, prod);
        } catch (const Error&) {
            throw Error("ZETA_NOT_HOM", "fiber correction is not a homomorphism at " +
                                            b.total->vertex_name(z));
        }
    }();
    return GammaData{z, k, std::move(zeta), std::move(gamma)};
}

std::vector<int> lift_edge_path(const Bibundle& b, const Subgroup& k,
                                const std::vector<int>& path, int z) {
    if (path.empty()) return {z};
    if (b.lambda[z] != path.front())
        throw Error("NO_LIFT", "start vertex is not in the fiber over the path start");
    GammaData gamma = compute_gamma(b, z, k);
    auto fixed_by_gamma = [&](int w) {
        for (int e : gamma.gamma.elements())
            if (b.total->act(e, w) != w) return false;
        return true;
    };
    if (!fixed_by_gamma(z))
        throw Error("NO_LIFT", "start vertex is not gamma-fixed");

    std::vector<int> lift{z};
    const auto& total = b.total->complex();
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        int cur = lift.back();
        int next_base = path[i + 1];
        int found = -1;
        for (int w = 0; w < total.vertex_count(); ++w) {
            if (b.lambda[w] != next_base || !fixed_by_gamma(w)) continue;
            VertexSet e{std::min(cur, w), std::max(cur, w)};
            if (cur == w || !total.has_simplex(e)) continue;
            if (found >= 0)
                throw Error("NO_LIFT", "edge lift is not unique over " +
                                           b.left->vertex_name(next_base));
            found = w;
        }
        if (found < 0)
            throw Error("NO_LIFT",
                        "no edge lift over " + b.left->vertex_name(next_base) + " from " +
                            b.total->vertex_name(cur));
        lift.push_back(found);
    }
    return lift;
}

SectionFunctor sigma_right_inverse(const Bibundle& b, const PresentationPtr& base_pres,
                                   const PresentationPtr& total_pres, int section_offset) {
    if (base_pres->space() != b.left || total_pres->space() != b.total)
        throw Error("TYPE_MISMATCH", "presentations do not match the bibundle");
    const auto& prod = b.product;

    std::vector<int> section(b.left->complex().vertex_count(), -1);
    for (int v = 0; v < b.left->complex().vertex_count(); ++v) {
        std::vector<int> fiber;
        for (int z = 0; z < b.total->complex().vertex_count(); ++z)
            if (b.lambda[z] == v) fiber.push_back(z);
        if (fiber.empty())
            throw Error("FIBER_NOT_TORSOR", "empty fiber over " + b.left->vertex_name(v));
        section[v] = fiber[section_offset % fiber.size()];
    }

    std::map<std::pair<int, std::vector<int>>, Subgroup> gammas;
    auto gamma_at = [&](int z, const Subgroup& k) -> const Subgroup& {
        auto key = std::make_pair(z, k.elements());
        auto it = gammas.find(key);
        if (it == gammas.end()) it = gammas.emplace(key, compute_gamma(b, z, k).gamma).first;
        return it->second;
    };

    PresFunctor f{base_pres, total_pres, {}, {}};
    for (int o = 0; o < base_pres->object_count(); ++o) {
        const FundObject& obj = base_pres->object(o);
        int z = section[obj.vertex];
        f.object_map.push_back(total_pres->object_id(z, gamma_at(z, obj.subgroup)));
    }

    auto fiber_correction = [&](int g_left, int from, int to) {
        // Unique product element (g_left, h) carrying `from` to `to`.
        int found = -1;
        for (int h = 0; h < prod.right->order(); ++h) {
            if (b.total->act(prod.pair(g_left, h), from) != to) continue;
            if (found >= 0)
                throw Error("FIBER_NOT_TORSOR", "fiber correction is not unique");
            found = h;
        }
        if (found < 0) throw Error("FIBER_NOT_TORSOR", "no fiber correction exists");
        return prod.pair(g_left, found);
    };

    for (int i = 0; i < base_pres->generator_count(); ++i) {
        const ArrowGen& g = base_pres->generator(i);
        const FundObject& src = base_pres->object(g.source);
        const FundObject& tgt = base_pres->object(g.target);
        switch (g.kind) {
        case GenKind::EdgeStep: {
            int zs = section[src.vertex];
            const Subgroup& gam = gamma_at(zs, src.subgroup);
            std::vector<int> lifted =
                lift_edge_path(b, src.subgroup, {src.vertex, tgt.vertex}, zs);
            int ze = lifted.back();
            int zt = section[tgt.vertex];
            std::vector<int> gens{total_pres->edge_step_id(zs, ze, gam)};
            if (ze != zt) {
                // Twist by (1, h) with (1,h).zt = ze corrects into the section.
                int corr = fiber_correction(prod.left->identity(), zt, ze);
                gens.push_back(total_pres->twist_id(corr, ze, gam));
            }
            ArrowWord w = total_pres->make_word(gens);
            if (w.target != f.object_map[g.target])
                throw Error("RELATION_BROKEN", "edge lift lands at the wrong object");
            f.generator_map.push_back(w);
            break;
        }
        case GenKind::Twist: {
            int zs = section[src.vertex];
            int zt = section[tgt.vertex];
            int corr = fiber_correction(g.g, zt, zs);
            ArrowWord w =
                total_pres->make_word({total_pres->twist_id(corr, zs, gamma_at(zs, src.subgroup))});
            if (w.target != f.object_map[g.target])
                throw Error("RELATION_BROKEN", "twist correction lands at the wrong object");
            f.generator_map.push_back(w);
            break;
        }
        case GenKind::Relabel: {
            int zs = section[src.vertex];
            const Subgroup& gh = gamma_at(zs, src.subgroup);
            const Subgroup& gk = gamma_at(zs, tgt.subgroup);
            f.generator_map.push_back(
                total_pres->make_word({total_pres->relabel_id(zs, gh, gk)}));
            break;
        }
        }
    }

    // Right-inverse law, generator by generator, through the projection.
    auto [lambda_map, rho_map] = legs_as_functors(b);
    (void)rho_map;
    PresFunctor proj = induced_functor(lambda_map, total_pres, base_pres);
    for (int o = 0; o < base_pres->object_count(); ++o)
        if (proj.object_map[f.object_map[o]] != o)
            throw Error("RELATION_BROKEN", "section is not a right inverse on objects");
    for (int i = 0; i < base_pres->generator_count(); ++i) {
        ArrowWord image = base_pres->normalize(apply_functor(proj, f.generator_map[i]));
        ArrowWord expect = base_pres->normalize(base_pres->make_word({i}));
        if (!(base_pres->semantics(image) == base_pres->semantics(expect)))
            throw Error("RELATION_BROKEN", "section is not a right inverse on generator " +
                                               base_pres->generator_str(i));
    }

    return SectionFunctor{std::move(f), std::move(section)};
}

CoeffPtr pushforward_system(const SectionFunctor& sigma, const CoefficientSystem& a) {
    return pullback_system(sigma.functor, a);
}

NaturalIsoResult check_natural_iso(const CoefficientSystem& a, const CoefficientSystem& b,
                                   const std::vector<AbelianHom>& components) {
    if (a.presentation() != b.presentation())
        throw Error("TYPE_MISMATCH", "systems live on different presentations");
    const Presentation& p = *a.presentation();
    NaturalIsoResult res;
    if (static_cast<int>(components.size()) != p.object_count()) {
        res.failure = "component count mismatch";
        return res;
    }
    for (int o = 0; o < p.object_count(); ++o) {
        if (!components[o].source().same_presentation(a.value(o)) ||
            !components[o].target().same_presentation(b.value(o))) {
            res.failure = "component endpoints mismatch at " + p.object_str(o);
            return res;
        }
        if (!is_isomorphism(components[o])) {
            res.failure = "component is not invertible at " + p.object_str(o);
            return res;
        }
    }
    for (int i = 0; i < p.generator_count(); ++i) {
        const ArrowGen& g = p.generator(i);
        AbelianHom lhs = components[g.source].compose(a.action(i));
        AbelianHom rhs = b.action(i).compose(components[g.target]);
        if (!lhs.equals_mod_relations(rhs)) {
            res.failure = "naturality square fails at " + p.generator_str(i);
            return res;
        }
    }
    res.iso = NaturalTransformation{components};
    return res;
}

std::optional<std::vector<AbelianHom>> identity_components(const CoefficientSystem& a,
                                                           const CoefficientSystem& b) {
    if (a.presentation() != b.presentation()) return std::nullopt;
    std::vector<AbelianHom> comps;
    for (int o = 0; o < a.presentation()->object_count(); ++o) {
        if (!a.value(o).same_presentation(b.value(o))) return std::nullopt;
        comps.emplace_back(a.value(o), b.value(o),
                           IntMatrix::identity(a.value(o).generators()));
    }
    return comps;
}

std::vector<AbelianHom> roundtrip_components(const Bibundle& b, const SectionFunctor& sigma,
                                             const CoefficientSystem& pulled_back,
                                             const CoefficientSystem& a) {
    const Presentation& total_pres = *a.presentation();
    const auto& prod = b.product;
    std::vector<AbelianHom> comps;
    for (int o = 0; o < total_pres.object_count(); ++o) {
        const FundObject& obj = total_pres.object(o);
        int zp = sigma.section[b.lambda[obj.vertex]];
        // The arrow (z, L) -> (z', Gamma) twisting z onto the section point.
        int corr = -1;
        for (int h = 0; h < prod.right->order(); ++h)
            if (b.total->act(prod.pair(prod.left->identity(), h), obj.vertex) == zp) {
                corr = prod.pair(prod.left->identity(), h);
                break;
            }
        if (corr < 0) throw Error("FIBER_NOT_TORSOR", "section point not in the fiber");
        // Twist(gamma) with act(inv(gamma), z) = z'.
        int tw = prod.group->inv(corr);
        AbelianHom val = a.evaluate(
            total_pres.make_word({total_pres.twist_id(tw, obj.vertex, obj.subgroup)}));
        if (!val.source().same_presentation(pulled_back.value(o)))
            throw Error("TYPE_MISMATCH", "roundtrip component endpoints mismatch");
        comps.emplace_back(pulled_back.value(o), val.target(), val.matrix());
    }
    return comps;
}

std::vector<AbelianHom> section_change_components(const Bibundle& b,
                                                  const SectionFunctor& sigma1,
                                                  const SectionFunctor& sigma2,
                                                  const CoefficientSystem& push1,
                                                  const CoefficientSystem& push2,
                                                  const CoefficientSystem& a) {
    const Presentation& base_pres = *push1.presentation();
    const Presentation& total_pres = *a.presentation();
    const auto& prod = b.product;
    std::vector<AbelianHom> comps;
    for (int o = 0; o < base_pres.object_count(); ++o) {
        const FundObject& obj = base_pres.object(o);
        int z1 = sigma1.section[obj.vertex];
        int z2 = sigma2.section[obj.vertex];
        int corr = -1;
        for (int h = 0; h < prod.right->order(); ++h)
            if (b.total->act(prod.pair(prod.left->identity(), h), z1) == z2) {
                corr = prod.pair(prod.left->identity(), h);
                break;
            }
        if (corr < 0) throw Error("FIBER_NOT_TORSOR", "sections are not in one fiber");
        const FundObject& t2 = total_pres.object(sigma2.functor.object_map[o]);
        AbelianHom val =
            a.evaluate(total_pres.make_word({total_pres.twist_id(corr, z2, t2.subgroup)}));
        if (!val.source().same_presentation(push1.value(o)) ||
            !val.target().same_presentation(push2.value(o)))
            throw Error("TYPE_MISMATCH", "section-change component endpoints mismatch");
        comps.emplace_back(push1.value(o), push2.value(o), val.matrix());
    }
    return comps;
}

} // namespace bredon
