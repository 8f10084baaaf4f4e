#include "bredon/fundcat.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace bredon {

Presentation::Presentation(GComplexPtr x) : x_(std::move(x)) {
    if (!x_->admissible())
        throw Error("NOT_ADMISSIBLE", "presentation requires an admissible action");
    const GroupPtr& g = x_->group();

    std::vector<Subgroup> all_subs = enumerate_subgroups(g);

    // Objects: (v, H) for every H inside the stabilizer of v.
    for (int v = 0; v < x_->complex().vertex_count(); ++v) {
        Subgroup stab = pointwise_stabilizer(*x_, {v});
        for (const auto& h : all_subs) {
            if (!stab.contains_subgroup(h)) continue;
            int id = static_cast<int>(objects_.size());
            objects_.push_back(FundObject{v, h});
            object_ids_.emplace(std::make_pair(v, h.elements()), id);
        }
    }

    // Edge steps along oriented edges of each fixed subcomplex.
    std::map<std::vector<int>, Subcomplex> fixed;
    for (const auto& h : all_subs) fixed.emplace(h.elements(), fixed_subcomplex(*x_, h));
    for (const auto& h : all_subs) {
        const Subcomplex& xh = fixed.at(h.elements());
        for (const auto& e : xh.simplices(1)) {
            for (int flip = 0; flip < 2; ++flip) {
                int v = flip ? e[1] : e[0];
                int w = flip ? e[0] : e[1];
                int src = object_id(v, h), tgt = object_id(w, h);
                int id = static_cast<int>(generators_.size());
                generators_.push_back(ArrowGen{GenKind::EdgeStep, src, tgt, -1});
                edge_ids_.emplace(std::make_pair(src, tgt), id);
            }
        }
    }

    // Relabels for nested subgroup pairs at one vertex.
    for (int src = 0; src < object_count(); ++src) {
        const FundObject& o = objects_[src];
        for (const auto& k : all_subs) {
            if (k == o.subgroup || !k.contains_subgroup(o.subgroup)) continue;
            auto tgt = find_object(o.vertex, k);
            if (!tgt) continue;
            int id = static_cast<int>(generators_.size());
            generators_.push_back(ArrowGen{GenKind::Relabel, src, *tgt, -1});
            relabel_ids_.emplace(std::make_pair(src, *tgt), id);
        }
    }

    // Twists by every group element at every object.
    for (int src = 0; src < object_count(); ++src) {
        const FundObject& o = objects_[src];
        for (int gg = 0; gg < g->order(); ++gg) {
            int gi = g->inv(gg);
            int tv = x_->act(gi, o.vertex);
            int tgt = object_id(tv, o.subgroup.conjugate(gg));
            int id = static_cast<int>(generators_.size());
            generators_.push_back(ArrowGen{GenKind::Twist, src, tgt, gg});
            twist_ids_.emplace(std::make_pair(src, gg), id);
        }
    }

    auto word1 = [&](int a) { return make_word({a}); };
    auto word2 = [&](int a, int b) { return make_word({a, b}); };

    // R1: edge composition inside fixed 2-simplices.
    for (const auto& h : all_subs) {
        const Subcomplex& xh = fixed.at(h.elements());
        for (const auto& tri : xh.simplices(2)) {
            int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
            for (auto& pi : perm) {
                int u = tri[pi[0]], v = tri[pi[1]], w = tri[pi[2]];
                relations_.push_back(Relation{
                    word2(edge_step_id(u, v, h), edge_step_id(v, w, h)),
                    word1(edge_step_id(u, w, h)), "R1"});
            }
        }
    }
    // R2: edge inversion.
    for (const auto& h : all_subs) {
        const Subcomplex& xh = fixed.at(h.elements());
        for (const auto& e : xh.simplices(1)) {
            for (int flip = 0; flip < 2; ++flip) {
                int v = flip ? e[1] : e[0], w = flip ? e[0] : e[1];
                relations_.push_back(
                    Relation{word2(edge_step_id(v, w, h), edge_step_id(w, v, h)),
                             identity_word(object_id(v, h)), "R2"});
            }
        }
    }
    // R3: twist multiplicativity.
    for (int src = 0; src < object_count(); ++src)
        for (int a = 0; a < g->order(); ++a) {
            int ta = twist_ids_.at({src, a});
            int mid = generators_[ta].target;
            for (int b = 0; b < g->order(); ++b)
                relations_.push_back(Relation{word2(ta, twist_ids_.at({mid, b})),
                                              word1(twist_ids_.at({src, g->mul(a, b)})),
                                              "R3"});
        }
    // R4: twist-edge exchange.
    for (int e = 0; e < generator_count(); ++e) {
        if (generators_[e].kind != GenKind::EdgeStep) continue;
        int src = generators_[e].source, tgt = generators_[e].target;
        const FundObject& so = objects_[src];
        const FundObject& to = objects_[tgt];
        for (int gg = 0; gg < g->order(); ++gg) {
            int gi = g->inv(gg);
            int tsrc = twist_ids_.at({src, gg});
            int ttgt = twist_ids_.at({tgt, gg});
            Subgroup conj = so.subgroup.conjugate(gg);
            relations_.push_back(Relation{
                word2(e, ttgt),
                word2(tsrc, edge_step_id(x_->act(gi, so.vertex), x_->act(gi, to.vertex), conj)),
                "R4"});
        }
    }
    for (int r = 0; r < generator_count(); ++r) {
        if (generators_[r].kind != GenKind::Relabel) continue;
        int src = generators_[r].source, tgt = generators_[r].target;
        const FundObject& so = objects_[src];
        const FundObject& to = objects_[tgt];
        // R5: relabel naturality with edges in the larger fixed set...
        const Subcomplex& xk = fixed.at(to.subgroup.elements());
        for (const auto& e : xk.simplices(1)) {
            int other = e[0] == so.vertex ? e[1] : e[0];
            if (e[0] != so.vertex && e[1] != so.vertex) continue;
            relations_.push_back(Relation{
                word2(r, edge_step_id(so.vertex, other, to.subgroup)),
                word2(edge_step_id(so.vertex, other, so.subgroup),
                      relabel_id(other, so.subgroup, to.subgroup)),
                "R5"});
        }
        // ...with twists...
        for (int gg = 0; gg < g->order(); ++gg) {
            int gi = g->inv(gg);
            relations_.push_back(Relation{
                word2(r, twist_ids_.at({tgt, gg})),
                word2(twist_ids_.at({src, gg}),
                      relabel_id(x_->act(gi, so.vertex), so.subgroup.conjugate(gg),
                                 to.subgroup.conjugate(gg))),
                "R5"});
        }
        // ...and transitively.
        for (int r2 = 0; r2 < generator_count(); ++r2) {
            if (generators_[r2].kind != GenKind::Relabel || generators_[r2].source != tgt)
                continue;
            const FundObject& lo = objects_[generators_[r2].target];
            relations_.push_back(Relation{
                word2(r, r2), word1(relabel_id(so.vertex, so.subgroup, lo.subgroup)), "R5"});
        }
    }
    // R6: twists by subgroup elements are units.
    for (int src = 0; src < object_count(); ++src)
        for (int gg : objects_[src].subgroup.elements())
            relations_.push_back(
                Relation{word1(twist_ids_.at({src, gg})), identity_word(src), "R6"});
}

int Presentation::object_id(int vertex, const Subgroup& h) const {
    auto it = object_ids_.find({vertex, h.elements()});
    if (it == object_ids_.end())
        throw Error("TYPE_MISMATCH", "no object (" + x_->vertex_name(vertex) + "," + h.str() + ")");
    return it->second;
}

std::optional<int> Presentation::find_object(int vertex, const Subgroup& h) const {
    auto it = object_ids_.find({vertex, h.elements()});
    if (it == object_ids_.end()) return std::nullopt;
    return it->second;
}

int Presentation::edge_step_id(int v, int w, const Subgroup& h) const {
    auto it = edge_ids_.find({object_id(v, h), object_id(w, h)});
    if (it == edge_ids_.end())
        throw Error("TYPE_MISMATCH", "no edge step " + x_->vertex_name(v) + "->" +
                                         x_->vertex_name(w) + " at " + h.str());
    return it->second;
}

int Presentation::relabel_id(int v, const Subgroup& h, const Subgroup& k) const {
    auto it = relabel_ids_.find({object_id(v, h), object_id(v, k)});
    if (it == relabel_ids_.end())
        throw Error("TYPE_MISMATCH", "no relabel at " + x_->vertex_name(v));
    return it->second;
}

int Presentation::twist_id(int g, int v, const Subgroup& h) const {
    return twist_ids_.at({object_id(v, h), g});
}

ArrowWord Presentation::make_word(const std::vector<int>& gens) const {
    if (gens.empty()) throw Error("NOT_COMPOSABLE", "empty word needs an explicit object");
    for (size_t i = 0; i + 1 < gens.size(); ++i)
        if (generators_[gens[i]].target != generators_[gens[i + 1]].source)
            throw Error("NOT_COMPOSABLE", "generator endpoints do not chain");
    return ArrowWord{generators_[gens.front()].source, generators_[gens.back()].target, gens};
}

ArrowWord Presentation::normalize(const ArrowWord& w) const {
    ArrowWord out{w.source, w.target, {}};
    const GroupPtr& grp = x_->group();
    for (int gid : w.gens) {
        const ArrowGen& gen = generators_[gid];
        if (gen.kind != GenKind::Twist) {
            out.gens.push_back(gid);
            continue;
        }
        const Subgroup& h = objects_[gen.source].subgroup;
        if (h.contains(gen.g)) continue; // unit by R6
        // The arrow depends on the right coset H g only; pick its least element.
        int best = gen.g;
        for (int hh : h.elements()) best = std::min(best, grp->mul(hh, gen.g));
        out.gens.push_back(twist_ids_.at({gen.source, best}));
    }
    return out;
}

WordSemantics Presentation::semantics(const ArrowWord& w) const {
    const GroupPtr& grp = x_->group();
    WordSemantics s{w.source, w.target, grp->identity(), {}};
    int acc = grp->identity();
    for (int gid : w.gens) {
        const ArrowGen& gen = generators_[gid];
        switch (gen.kind) {
        case GenKind::Twist:
            acc = grp->mul(acc, gen.g);
            break;
        case GenKind::EdgeStep: {
            int a = x_->act(acc, objects_[gen.source].vertex);
            int b = x_->act(acc, objects_[gen.target].vertex);
            if (!s.path.empty() && s.path.back().first == b && s.path.back().second == a)
                s.path.pop_back(); // free reduction
            else
                s.path.emplace_back(a, b);
            break;
        }
        case GenKind::Relabel:
            break;
        }
    }
    const Subgroup& kt = objects_[w.target].subgroup;
    int best = acc;
    for (int k : kt.elements()) best = std::min(best, grp->mul(acc, k));
    s.coset_rep = best;
    return s;
}

std::string Presentation::object_str(int id) const {
    const FundObject& o = objects_[id];
    return "(" + x_->vertex_name(o.vertex) + "," + o.subgroup.str() + ")";
}

std::string Presentation::generator_str(int id) const {
    const ArrowGen& g = generators_[id];
    std::ostringstream os;
    switch (g.kind) {
    case GenKind::EdgeStep:
        os << "EdgeStep " << object_str(g.source) << "->" << object_str(g.target);
        break;
    case GenKind::Relabel:
        os << "Relabel " << object_str(g.source) << "->" << object_str(g.target);
        break;
    case GenKind::Twist:
        os << "Twist[" << x_->group()->name(g.g) << "] " << object_str(g.source) << "->"
           << object_str(g.target);
        break;
    }
    return os.str();
}

PresentationPtr build_presentation(GComplexPtr x) {
    return std::make_shared<Presentation>(std::move(x));
}

ArrowWord compose_words(const Presentation& p, const ArrowWord& a, const ArrowWord& b) {
    if (a.target != b.source)
        throw Error("NOT_COMPOSABLE", "word endpoints do not match: " + p.object_str(a.target) +
                                          " vs " + p.object_str(b.source));
    ArrowWord out{a.source, b.target, a.gens};
    out.gens.insert(out.gens.end(), b.gens.begin(), b.gens.end());
    return out;
}

PresFunctor identity_functor(const PresentationPtr& p) {
    PresFunctor f{p, p, {}, {}};
    for (int i = 0; i < p->object_count(); ++i) f.object_map.push_back(i);
    for (int i = 0; i < p->generator_count(); ++i)
        f.generator_map.push_back(p->make_word({i}));
    return f;
}

ArrowWord apply_functor(const PresFunctor& f, const ArrowWord& w) {
    ArrowWord out{f.object_map[w.source], f.object_map[w.target], {}};
    for (int gid : w.gens) {
        const ArrowWord& img = f.generator_map[gid];
        out.gens.insert(out.gens.end(), img.gens.begin(), img.gens.end());
    }
    return out;
}

EquivariantMap make_equivariant_map(GComplexPtr source, GComplexPtr target, GroupHom hom,
                                    std::vector<int> vertex_map) {
    if (hom.source() != source->group() || hom.target() != target->group())
        throw Error("NOT_EQUIVARIANT", "group homomorphism endpoints mismatch");
    if (static_cast<int>(vertex_map.size()) != source->complex().vertex_count())
        throw Error("NOT_EQUIVARIANT", "vertex map length mismatch");
    for (int v : vertex_map)
        if (v < 0 || v >= target->complex().vertex_count())
            throw Error("NOT_EQUIVARIANT", "vertex image out of range");
    for (int g = 0; g < source->group()->order(); ++g)
        for (int v = 0; v < source->complex().vertex_count(); ++v)
            if (vertex_map[source->act(g, v)] != target->act(hom(g), vertex_map[v]))
                throw Error("NOT_EQUIVARIANT",
                            "phi(g.v) != hom(g).phi(v) at g=" + source->group()->name(g) +
                                ", v=" + source->vertex_name(v));
    for (int d = 0; d <= source->complex().dim(); ++d)
        for (const auto& s : source->complex().simplices(d)) {
            VertexSet img;
            for (int v : s) img.push_back(vertex_map[v]);
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            if (!target->complex().has_simplex(img))
                throw Error("NOT_EQUIVARIANT", "image of a simplex is not a simplex");
        }
    return EquivariantMap{std::move(source), std::move(target), std::move(hom),
                          std::move(vertex_map)};
}

namespace {

std::string word_key(const ArrowWord& w) {
    std::ostringstream os;
    os << w.source << "|" << w.target << "|";
    for (int g : w.gens) os << g << ",";
    return os.str();
}

std::string pair_key(const ArrowWord& a, const ArrowWord& b) {
    std::string ka = word_key(a), kb = word_key(b);
    return ka < kb ? ka + "#" + kb : kb + "#" + ka;
}

} // namespace

PresFunctor induced_functor(const EquivariantMap& phi, const PresentationPtr& source,
                            const PresentationPtr& target) {
    if (phi.source != source->space() || phi.target != target->space())
        throw Error("NOT_EQUIVARIANT", "presentations do not match the map's spaces");
    PresFunctor f{source, target, {}, {}};

    for (int i = 0; i < source->object_count(); ++i) {
        const FundObject& o = source->object(i);
        Subgroup img = phi.hom.map_subgroup(o.subgroup);
        f.object_map.push_back(target->object_id(phi.vertex_map[o.vertex], img));
    }
    for (int i = 0; i < source->generator_count(); ++i) {
        const ArrowGen& g = source->generator(i);
        int src = f.object_map[g.source], tgt = f.object_map[g.target];
        switch (g.kind) {
        case GenKind::EdgeStep: {
            if (src == tgt && target->object(src).vertex == target->object(tgt).vertex) {
                f.generator_map.push_back(target->identity_word(src));
            } else {
                const FundObject& so = target->object(src);
                const FundObject& to = target->object(tgt);
                f.generator_map.push_back(target->make_word(
                    {target->edge_step_id(so.vertex, to.vertex, so.subgroup)}));
            }
            break;
        }
        case GenKind::Relabel:
            if (src == tgt)
                f.generator_map.push_back(target->identity_word(src));
            else
                f.generator_map.push_back(target->make_word({target->relabel_id(
                    target->object(src).vertex, target->object(src).subgroup,
                    target->object(tgt).subgroup)}));
            break;
        case GenKind::Twist:
            f.generator_map.push_back(
                target->make_word({target->twist_id(phi.hom(g.g), target->object(src).vertex,
                                                    target->object(src).subgroup)}));
            break;
        }
    }

    // Every relation instance must be preserved: either the two image words
    // already mean the same arrow, or they form an instance of a target
    // schema (the triangle moves R1 produces).
    std::set<std::string> schema;
    for (const auto& rel : target->relations())
        schema.insert(pair_key(target->normalize(rel.lhs), target->normalize(rel.rhs)));
    for (const auto& rel : source->relations()) {
        ArrowWord la = target->normalize(apply_functor(f, rel.lhs));
        ArrowWord rb = target->normalize(apply_functor(f, rel.rhs));
        if (target->semantics(la) == target->semantics(rb)) continue;
        if (schema.count(pair_key(la, rb))) continue;
        throw Error("RELATION_BROKEN", "image of a " + rel.tag + " relation is not preserved");
    }
    return f;
}

} // namespace bredon
