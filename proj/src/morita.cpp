#include "bredon/morita.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace bredon {

Bibundle bibundle_from_functor(const EquivariantMap& phi) {
    const GComplexPtr& x = phi.source;
    const GComplexPtr& y = phi.target;
    ProductGroup prod = direct_product(x->group(), y->group());
    const int hn = y->group()->order();
    const int xv = x->complex().vertex_count();

    auto vid = [&](int v, int h) { return v * hn + h; };

    std::vector<VertexSet> simplices;
    for (int d = 0; d <= x->complex().dim(); ++d)
        for (const auto& s : x->complex().simplices(d))
            for (int h = 0; h < hn; ++h) {
                VertexSet lifted;
                for (int v : s) lifted.push_back(vid(v, h));
                simplices.push_back(lifted);
            }
    SimplicialComplex total = SimplicialComplex::from_maximal(xv * hn, simplices);

    std::vector<std::vector<int>> action(prod.group->order(), std::vector<int>(xv * hn));
    for (int g = 0; g < x->group()->order(); ++g)
        for (int hp = 0; hp < hn; ++hp) {
            int gh = prod.pair(g, hp);
            for (int v = 0; v < xv; ++v)
                for (int h = 0; h < hn; ++h) {
                    int nh = y->group()->mul(y->group()->mul(phi.hom(g), h),
                                             y->group()->inv(hp));
                    action[gh][vid(v, h)] = vid(x->act(g, v), nh);
                }
        }

    auto total_complex = std::make_shared<GComplex>(prod.group, std::move(total),
                                                    std::move(action));
    // Names follow the vertex id layout v*|H| + h.
    std::vector<std::string> names(static_cast<size_t>(xv) * hn);
    for (int v = 0; v < xv; ++v)
        for (int h = 0; h < hn; ++h)
            names[vid(v, h)] = "(" + x->vertex_name(v) + "," + y->group()->name(h) + ")";
    const_cast<GComplex&>(*total_complex).vertex_names = std::move(names);

    std::vector<int> lambda(xv * hn), rho(xv * hn);
    for (int v = 0; v < xv; ++v)
        for (int h = 0; h < hn; ++h) {
            lambda[vid(v, h)] = v;
            rho[vid(v, h)] = y->act(y->group()->inv(h), phi.vertex_map[v]);
        }

    Bibundle b{x, y, total_complex, prod, std::move(lambda), std::move(rho)};
    validate_bibundle(b);
    return b;
}

void validate_bibundle(const Bibundle& b) {
    const auto& prod = b.product;
    const int tn = b.total->complex().vertex_count();
    if (b.total->group() != prod.group)
        throw Error("NOT_EQUIVARIANT", "total space group is not the stored product");
    if (static_cast<int>(b.lambda.size()) != tn || static_cast<int>(b.rho.size()) != tn)
        throw Error("NOT_EQUIVARIANT", "anchor map length mismatch");

    for (int gh = 0; gh < prod.group->order(); ++gh) {
        int g = prod.pr1(gh), h = prod.pr2(gh);
        for (int z = 0; z < tn; ++z) {
            int zz = b.total->act(gh, z);
            if (b.lambda[zz] != b.left->act(g, b.lambda[z]))
                throw Error("NOT_EQUIVARIANT", "lambda is not pr1-equivariant at vertex " +
                                                   b.total->vertex_name(z));
            if (b.rho[zz] != b.right->act(h, b.rho[z]))
                throw Error("NOT_EQUIVARIANT", "rho is not pr2-equivariant at vertex " +
                                                   b.total->vertex_name(z));
        }
    }
    // Anchors are simplicial without collapsing.
    for (int d = 0; d <= b.total->complex().dim(); ++d)
        for (const auto& s : b.total->complex().simplices(d)) {
            VertexSet li, ri;
            for (int v : s) {
                li.push_back(b.lambda[v]);
                ri.push_back(b.rho[v]);
            }
            std::sort(li.begin(), li.end());
            std::sort(ri.begin(), ri.end());
            li.erase(std::unique(li.begin(), li.end()), li.end());
            ri.erase(std::unique(ri.begin(), ri.end()), ri.end());
            if (!b.left->complex().has_simplex(li) || !b.right->complex().has_simplex(ri))
                throw Error("NOT_EQUIVARIANT", "anchor image of a simplex is not a simplex");
        }
}

namespace {

// One side of the certification: the `part` elements act freely, anchor
// fibers are the part-orbits, and the anchor identifies total/part with the
// base complex.
void check_leg(const Bibundle& b, bool lambda_side, BiprincipalityReport& rep) {
    const auto& prod = b.product;
    const GComplexPtr& base = lambda_side ? b.left : b.right;
    const std::vector<int>& anchor = lambda_side ? b.lambda : b.rho;
    const char* leg = lambda_side ? "lambda" : "rho";
    // Elements of the acting part not visible to this anchor.
    GroupPtr part = lambda_side ? prod.right : prod.left;
    auto embed = [&](int p) { return lambda_side ? prod.pair(prod.left->identity(), p)
                                                 : prod.pair(p, prod.right->identity()); };

    const int tn = b.total->complex().vertex_count();
    for (int p = 0; p < part->order(); ++p) {
        if (p == part->identity()) continue;
        int gh = embed(p);
        for (int z = 0; z < tn; ++z)
            if (b.total->act(gh, z) == z) {
                rep.fail(std::string(leg) + "-side action (" +
                         (lambda_side ? "H" : "G") + " part) is not free at vertex " +
                         b.total->vertex_name(z));
                return;
            }
        for (int d = 1; d <= b.total->complex().dim(); ++d)
            for (const auto& s : b.total->complex().simplices(d))
                if (b.total->act_simplex(gh, s) == s) {
                    rep.fail(std::string(leg) + "-side action is not free on a simplex");
                    return;
                }
    }

    // Vertex fibers are exactly the part-orbits, of size |part|.
    for (int v = 0; v < base->complex().vertex_count(); ++v) {
        std::vector<int> fiber;
        for (int z = 0; z < tn; ++z)
            if (anchor[z] == v) fiber.push_back(z);
        if (fiber.empty()) {
            rep.fail(std::string(leg) + " is not surjective onto vertex " +
                     base->vertex_name(v));
            return;
        }
        if (static_cast<int>(fiber.size()) != part->order()) {
            rep.fail(std::string(leg) + " fiber over " + base->vertex_name(v) +
                     " has size " + std::to_string(fiber.size()));
            return;
        }
        std::set<int> orbit;
        for (int p = 0; p < part->order(); ++p) orbit.insert(b.total->act(embed(p), fiber[0]));
        if (std::set<int>(fiber.begin(), fiber.end()) != orbit) {
            rep.fail(std::string(leg) + " fiber over " + base->vertex_name(v) +
                     " is not a single orbit");
            return;
        }
    }

    // The anchor maps simplices dimension-preservingly, and over each base
    // simplex the preimages form one free orbit of size |part|.
    for (int d = 0; d <= b.total->complex().dim(); ++d)
        for (const auto& s : b.total->complex().simplices(d)) {
            std::set<int> img;
            for (int v : s) img.insert(anchor[v]);
            if (img.size() != s.size()) {
                rep.fail(std::string(leg) + " collapses a simplex");
                return;
            }
        }
    for (int d = 0; d <= base->complex().dim(); ++d)
        for (const auto& t : base->complex().simplices(d)) {
            std::vector<VertexSet> pre;
            for (const auto& s : b.total->complex().simplices(d)) {
                VertexSet img;
                for (int v : s) img.push_back(anchor[v]);
                std::sort(img.begin(), img.end());
                if (img == t) pre.push_back(s);
            }
            if (static_cast<int>(pre.size()) != part->order()) {
                rep.fail(std::string(leg) + " preimage count of a base simplex is " +
                         std::to_string(pre.size()) + ", expected " +
                         std::to_string(part->order()));
                return;
            }
            std::set<VertexSet> orbit;
            for (int p = 0; p < part->order(); ++p)
                orbit.insert(b.total->act_simplex(embed(p), pre[0]));
            if (std::set<VertexSet>(pre.begin(), pre.end()) != orbit) {
                rep.fail(std::string(leg) + " simplex preimages are not one orbit");
                return;
            }
        }
}

} // namespace

BiprincipalityReport check_biprincipal(const Bibundle& b) {
    BiprincipalityReport rep;
    try {
        validate_bibundle(b);
    } catch (const Error& e) {
        rep.fail(e.what());
        return rep;
    }
    check_leg(b, /*lambda_side=*/true, rep);
    check_leg(b, /*lambda_side=*/false, rep);
    return rep;
}

std::pair<EquivariantMap, EquivariantMap> legs_as_functors(const Bibundle& b) {
    const auto& prod = b.product;
    std::vector<int> pr1(prod.group->order()), pr2(prod.group->order());
    for (int gh = 0; gh < prod.group->order(); ++gh) {
        pr1[gh] = prod.pr1(gh);
        pr2[gh] = prod.pr2(gh);
    }
    EquivariantMap lam = make_equivariant_map(
        b.total, b.left, GroupHom(prod.group, prod.left, std::move(pr1)), b.lambda);
    EquivariantMap rh = make_equivariant_map(
        b.total, b.right, GroupHom(prod.group, prod.right, std::move(pr2)), b.rho);
    return {std::move(lam), std::move(rh)};
}

} // namespace bredon
