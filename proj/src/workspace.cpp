#include "bredon/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace bredon {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error("PARSE", what); }

const json& need(const json& obj, const char* key, const std::string& ctx) {
    auto it = obj.find(key);
    if (it == obj.end()) parse_fail(ctx + ": missing field '" + key + "'");
    return *it;
}

mpz_class to_mpz(const json& j) {
    if (j.is_number_integer()) return mpz_class(j.get<long>());
    if (j.is_string()) return mpz_class(j.get<std::string>());
    parse_fail("matrix entries must be integers or integer strings");
}

json from_mpz(const mpz_class& v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(v.get_str());
}

IntMatrix parse_matrix(const json& j, const std::string& ctx) {
    if (!j.is_array()) parse_fail(ctx + ": matrix must be an array of rows");
    int rows = static_cast<int>(j.size());
    int cols = rows == 0 ? 0 : static_cast<int>(j[0].size());
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[i].size()) != cols) parse_fail(ctx + ": ragged matrix");
        for (int c = 0; c < cols; ++c) m.at(i, c) = to_mpz(j[i][c]);
    }
    return m;
}

json dump_matrix(const IntMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(from_mpz(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

int element_index(const GroupPtr& g, const std::string& name, const std::string& ctx) {
    int i = g->index_of(name);
    if (i < 0) parse_fail(ctx + ": unknown group element '" + name + "'");
    return i;
}

Subgroup parse_subgroup(const GroupPtr& g, const json& j, const std::string& ctx) {
    std::vector<int> elems;
    for (const auto& e : j) elems.push_back(element_index(g, e.get<std::string>(), ctx));
    return Subgroup(g, std::move(elems));
}

json dump_subgroup(const GroupPtr& g, const Subgroup& h) {
    json out = json::array();
    for (int e : h.elements()) out.push_back(g->name(e));
    return out;
}

} // namespace

AbelianGroup parse_abelian(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s == "0" || s.empty()) return AbelianGroup::zero();

    std::vector<mpz_class> torsion;
    int free_rank = 0;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t next = s.find('+', pos);
        std::string tok = s.substr(pos, next == std::string::npos ? next : next - pos);
        if (tok == "Z") {
            free_rank += 1;
        } else if (tok.rfind("Z^", 0) == 0) {
            free_rank += std::stoi(tok.substr(2));
        } else if (tok.rfind("Z/", 0) == 0) {
            torsion.push_back(mpz_class(tok.substr(2)));
        } else {
            parse_fail("cannot read abelian group '" + text + "'");
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    int gens = static_cast<int>(torsion.size()) + free_rank;
    IntMatrix rel(static_cast<int>(torsion.size()), gens);
    for (size_t i = 0; i < torsion.size(); ++i) rel.at(static_cast<int>(i), static_cast<int>(i)) = torsion[i];
    return AbelianGroup(gens, std::move(rel));
}

namespace {

AbelianGroup parse_value(const json& j, const std::string& ctx) {
    if (j.is_string()) return parse_abelian(j.get<std::string>());
    if (j.is_object()) {
        int gens = need(j, "generators", ctx).get<int>();
        return AbelianGroup(gens, parse_matrix(need(j, "relations", ctx), ctx));
    }
    parse_fail(ctx + ": value must be a string or a presentation object");
}

json dump_value(const AbelianGroup& v) {
    AbelianGroup canonical = parse_abelian(v.str());
    if (canonical.same_presentation(v)) return json(v.str());
    return json{{"generators", v.generators()}, {"relations", dump_matrix(v.relations())}};
}

GroupPtr parse_group(const json& spec, const std::map<std::string, GroupPtr>& known,
                     const std::string& name) {
    std::string kind = need(spec, "kind", "group " + name).get<std::string>();
    if (kind == "table") {
        std::vector<std::vector<int>> table =
            need(spec, "table", "group " + name).get<std::vector<std::vector<int>>>();
        std::vector<std::string> names;
        if (spec.contains("names")) names = spec["names"].get<std::vector<std::string>>();
        return std::make_shared<FiniteGroup>(std::move(table), std::move(names));
    }
    if (kind == "product") {
        auto factors = need(spec, "factors", "group " + name).get<std::vector<std::string>>();
        if (factors.size() != 2) parse_fail("group " + name + ": products take two factors");
        auto a = known.find(factors[0]);
        auto b = known.find(factors[1]);
        if (a == known.end() || b == known.end()) parse_fail("group " + name + ": unknown factor");
        return direct_product(a->second, b->second).group;
    }
    if (kind == "permutations") {
        int domain = need(spec, "domain", "group " + name).get<int>();
        auto gens =
            need(spec, "generators", "group " + name).get<std::vector<std::vector<int>>>();
        return FiniteGroup::from_permutations(domain, gens);
    }
    parse_fail("group " + name + ": unknown kind '" + kind + "'");
}

} // namespace

Workspace Workspace::parse_file(const std::string& path, bool repair) {
    std::ifstream in(path);
    if (!in) parse_fail("cannot open '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        parse_fail(std::string("invalid JSON: ") + e.what());
    }
    return parse(doc, repair);
}

Workspace Workspace::parse(const json& doc, bool repair) {
    Workspace w;
    w.doc_ = doc;
    if (!doc.is_object()) parse_fail("document must be a JSON object");
    if (need(doc, "format", "document").get<int>() != 1)
        parse_fail("unsupported format version");

    // Groups, resolving product factors in as many passes as needed.
    if (doc.contains("groups")) {
        std::map<std::string, json> pending;
        for (const auto& [name, spec] : doc["groups"].items()) pending[name] = spec;
        while (!pending.empty()) {
            bool progressed = false;
            for (auto it = pending.begin(); it != pending.end();) {
                try {
                    w.groups_[it->first] = parse_group(it->second, w.groups_, it->first);
                    it = pending.erase(it);
                    progressed = true;
                } catch (const Error&) {
                    ++it;
                }
            }
            if (!progressed) {
                // Re-raise the first real error.
                auto it = pending.begin();
                w.groups_[it->first] = parse_group(it->second, w.groups_, it->first);
            }
        }
    }

    // Complexes are stored as (names, maximal simplices); keep them raw and
    // materialize inside each action.
    std::map<std::string, std::pair<std::vector<std::string>, std::vector<VertexSet>>> complexes;
    if (doc.contains("complexes")) {
        for (const auto& [name, spec] : doc["complexes"].items()) {
            auto vertices = need(spec, "vertices", "complex " + name)
                                .get<std::vector<std::string>>();
            std::map<std::string, int> index;
            for (size_t i = 0; i < vertices.size(); ++i) {
                if (!index.emplace(vertices[i], static_cast<int>(i)).second)
                    parse_fail("complex " + name + ": duplicate vertex name");
            }
            std::vector<VertexSet> simplices;
            for (const auto& simplex : need(spec, "simplices", "complex " + name)) {
                VertexSet s;
                for (const auto& v : simplex) {
                    auto it = index.find(v.get<std::string>());
                    if (it == index.end())
                        parse_fail("complex " + name + ": unknown vertex '" +
                                   v.get<std::string>() + "'");
                    s.push_back(it->second);
                }
                simplices.push_back(s);
            }
            complexes[name] = {vertices, simplices};
        }
    }

    if (doc.contains("actions")) {
        for (const auto& [name, spec] : doc["actions"].items()) {
            std::string ctx = "action " + name;
            auto git = w.groups_.find(need(spec, "group", ctx).get<std::string>());
            if (git == w.groups_.end()) parse_fail(ctx + ": unknown group");
            auto cit = complexes.find(need(spec, "complex", ctx).get<std::string>());
            if (cit == complexes.end()) parse_fail(ctx + ": unknown complex");
            const GroupPtr& g = git->second;
            const auto& [vnames, simplices] = cit->second;
            int vc = static_cast<int>(vnames.size());
            std::map<std::string, int> vindex;
            for (int i = 0; i < vc; ++i) vindex[vnames[i]] = i;

            // Permutations for the listed elements, extended multiplicatively.
            std::map<int, std::vector<int>> given;
            if (spec.contains("action")) {
                for (const auto& [ename, perm] : spec["action"].items()) {
                    int e = element_index(g, ename, ctx);
                    std::vector<int> p(vc);
                    for (int i = 0; i < vc; ++i) p[i] = i;
                    for (const auto& [from, to] : perm.items()) {
                        auto fi = vindex.find(from);
                        auto ti = vindex.find(to.get<std::string>());
                        if (fi == vindex.end() || ti == vindex.end())
                            parse_fail(ctx + ": unknown vertex in permutation");
                        p[fi->second] = ti->second;
                    }
                    given[e] = p;
                }
            }
            std::vector<std::vector<int>> full(g->order());
            std::vector<bool> have(g->order(), false);
            std::vector<int> idperm(vc);
            for (int i = 0; i < vc; ++i) idperm[i] = i;
            full[g->identity()] = idperm;
            have[g->identity()] = true;
            for (bool progressed = true; progressed;) {
                progressed = false;
                for (int a = 0; a < g->order(); ++a) {
                    if (!have[a]) continue;
                    for (const auto& [e, pe] : given) {
                        int b = g->mul(a, e);
                        std::vector<int> pb(vc);
                        for (int i = 0; i < vc; ++i) pb[i] = full[a][pe[i]];
                        if (!have[b]) {
                            full[b] = pb;
                            have[b] = true;
                            progressed = true;
                        } else if (full[b] != pb) {
                            parse_fail(ctx + ": listed permutations are inconsistent");
                        }
                    }
                }
            }
            for (int a = 0; a < g->order(); ++a)
                if (!have[a])
                    parse_fail(ctx + ": listed elements do not generate the group");

            SimplicialComplex complex = SimplicialComplex::from_maximal(vc, simplices);
            auto x = std::make_shared<GComplex>(g, std::move(complex), std::move(full),
                                                /*require_admissible=*/false);
            const_cast<GComplex&>(*x).vertex_names = vnames;
            if (!x->admissible()) {
                if (!repair)
                    throw Error("NOT_ADMISSIBLE",
                                ctx + ": action is not admissible (rerun with --subdivide)");
                int times = 0;
                GComplexPtr fixed = x;
                while (!fixed->admissible() && times < 2) {
                    fixed = barycentric_subdivide(*fixed);
                    ++times;
                }
                if (!fixed->admissible())
                    throw Error("STILL_NOT_ADMISSIBLE_AFTER_2", ctx);
                w.notes_[name] = "subdivided " + std::to_string(times) +
                                 (times == 1 ? " time" : " times");
                w.actions_[name] = fixed;
            } else {
                w.notes_[name] = "admissible";
                w.actions_[name] = x;
            }
        }
    }

    auto pres_of = [&w](const std::string& action) -> const PresentationPtr& {
        auto it = w.presentations_.find(action);
        if (it == w.presentations_.end())
            it = w.presentations_.emplace(action, build_presentation(w.actions_.at(action)))
                     .first;
        return it->second;
    };

    if (doc.contains("functors")) {
        for (const auto& [name, spec] : doc["functors"].items()) {
            std::string ctx = "functor " + name;
            const GComplexPtr& src = w.action(need(spec, "source", ctx).get<std::string>());
            const GComplexPtr& tgt = w.action(need(spec, "target", ctx).get<std::string>());
            std::vector<int> gimage(src->group()->order(), -1);
            for (const auto& [from, to] : need(spec, "group_map", ctx).items())
                gimage[element_index(src->group(), from, ctx)] =
                    element_index(tgt->group(), to.get<std::string>(), ctx);
            for (int v : gimage)
                if (v < 0) parse_fail(ctx + ": group_map must cover every element");
            std::vector<int> vimage(src->complex().vertex_count(), -1);
            std::map<std::string, int> sv, tv;
            for (int i = 0; i < src->complex().vertex_count(); ++i)
                sv[src->vertex_name(i)] = i;
            for (int i = 0; i < tgt->complex().vertex_count(); ++i)
                tv[tgt->vertex_name(i)] = i;
            for (const auto& [from, to] : need(spec, "vertex_map", ctx).items()) {
                auto fi = sv.find(from);
                auto ti = tv.find(to.get<std::string>());
                if (fi == sv.end() || ti == tv.end())
                    parse_fail(ctx + ": unknown vertex in vertex_map");
                vimage[fi->second] = ti->second;
            }
            for (int v : vimage)
                if (v < 0) parse_fail(ctx + ": vertex_map must cover every vertex");
            w.functors_.emplace(
                name, make_equivariant_map(src, tgt,
                                           GroupHom(src->group(), tgt->group(), gimage),
                                           vimage));
        }
    }

    if (doc.contains("systems")) {
        for (const auto& [name, spec] : doc["systems"].items()) {
            std::string ctx = "system " + name;
            std::string action = need(spec, "action", ctx).get<std::string>();
            if (!w.actions_.count(action)) parse_fail(ctx + ": unknown action");
            const PresentationPtr& pres = pres_of(action);
            const GComplexPtr& x = w.actions_.at(action);
            std::map<std::string, int> vindex;
            for (int i = 0; i < x->complex().vertex_count(); ++i)
                vindex[x->vertex_name(i)] = i;
            auto vertex_of = [&](const json& j) {
                auto it = vindex.find(j.get<std::string>());
                if (it == vindex.end())
                    parse_fail(ctx + ": unknown vertex '" + j.get<std::string>() + "'");
                return it->second;
            };

            std::string kind = need(spec, "kind", ctx).get<std::string>();
            CoeffPtr built;
            if (kind == "constant") {
                built = constant_system(pres, parse_value(need(spec, "value", ctx), ctx));
            } else if (kind == "orbit") {
                int v = vertex_of(need(spec, "vertex", ctx));
                Subgroup h = parse_subgroup(x->group(), need(spec, "subgroup", ctx), ctx);
                built = orbit_supported_system(pres, v, h,
                                               parse_value(need(spec, "value", ctx), ctx));
            } else if (kind == "representation") {
                built = representation_system(pres);
            } else if (kind == "explicit") {
                std::vector<std::pair<int, AbelianGroup>> values;
                for (const auto& entry : need(spec, "values", ctx)) {
                    int v = vertex_of(need(entry, "vertex", ctx));
                    Subgroup h = parse_subgroup(x->group(), need(entry, "subgroup", ctx), ctx);
                    values.push_back({pres->object_id(v, h),
                                      parse_value(need(entry, "value", ctx), ctx)});
                }
                std::vector<std::pair<int, IntMatrix>> actions;
                if (spec.contains("actions")) {
                    for (const auto& entry : spec["actions"]) {
                        const json& gen = need(entry, "generator", ctx);
                        std::string gk = need(gen, "kind", ctx).get<std::string>();
                        int id;
                        if (gk == "edge") {
                            Subgroup h =
                                parse_subgroup(x->group(), need(gen, "subgroup", ctx), ctx);
                            id = pres->edge_step_id(vertex_of(need(gen, "from", ctx)),
                                                    vertex_of(need(gen, "to", ctx)), h);
                        } else if (gk == "relabel") {
                            Subgroup h = parse_subgroup(x->group(),
                                                        need(gen, "from_subgroup", ctx), ctx);
                            Subgroup k = parse_subgroup(x->group(),
                                                        need(gen, "to_subgroup", ctx), ctx);
                            id = pres->relabel_id(vertex_of(need(gen, "vertex", ctx)), h, k);
                        } else if (gk == "twist") {
                            Subgroup h =
                                parse_subgroup(x->group(), need(gen, "subgroup", ctx), ctx);
                            id = pres->twist_id(
                                element_index(x->group(), need(gen, "g", ctx).get<std::string>(),
                                              ctx),
                                vertex_of(need(gen, "vertex", ctx)), h);
                        } else {
                            parse_fail(ctx + ": unknown generator kind '" + gk + "'");
                        }
                        actions.push_back({id, parse_matrix(need(entry, "matrix", ctx), ctx)});
                    }
                }
                built = explicit_system(pres, values, actions);
            } else {
                parse_fail(ctx + ": unknown kind '" + kind + "'");
            }
            w.systems_[name] = built;
            w.system_actions_[name] = action;
        }
    }

    if (doc.contains("bibundles")) {
        for (const auto& [name, spec] : doc["bibundles"].items()) {
            std::string ctx = "bibundle " + name;
            if (spec.contains("functor")) {
                auto it = w.functors_.find(spec["functor"].get<std::string>());
                if (it == w.functors_.end()) parse_fail(ctx + ": unknown functor");
                w.bibundles_.emplace(name, bibundle_from_functor(it->second));
            } else {
                const GComplexPtr& left = w.action(need(spec, "left", ctx).get<std::string>());
                const GComplexPtr& right = w.action(need(spec, "right", ctx).get<std::string>());
                const GComplexPtr& total = w.action(need(spec, "total", ctx).get<std::string>());
                ProductGroup prod = direct_product(left->group(), right->group());
                // The total action must already use the product group's
                // element order; rebuild it over the canonical product.
                if (total->group()->order() != prod.group->order())
                    parse_fail(ctx + ": total group is not the product");
                std::vector<std::vector<int>> act;
                for (int e = 0; e < prod.group->order(); ++e) {
                    int src = total->group()->index_of(prod.group->name(e));
                    if (src < 0) parse_fail(ctx + ": total group names do not match the product");
                    act.push_back(total->action()[src]);
                }
                auto rebuilt = std::make_shared<GComplex>(prod.group, total->complex(), act);
                const_cast<GComplex&>(*rebuilt).vertex_names = total->vertex_names;
                std::map<std::string, int> lv, rv;
                for (int i = 0; i < left->complex().vertex_count(); ++i)
                    lv[left->vertex_name(i)] = i;
                for (int i = 0; i < right->complex().vertex_count(); ++i)
                    rv[right->vertex_name(i)] = i;
                std::vector<int> lambda(rebuilt->complex().vertex_count());
                std::vector<int> rho(rebuilt->complex().vertex_count());
                const json& lmap = need(spec, "lambda", ctx);
                const json& rmap = need(spec, "rho", ctx);
                for (int z = 0; z < rebuilt->complex().vertex_count(); ++z) {
                    std::string zn = rebuilt->vertex_name(z);
                    if (!lmap.contains(zn) || !rmap.contains(zn))
                        parse_fail(ctx + ": anchors must cover every total vertex");
                    lambda[z] = lv.at(lmap[zn].get<std::string>());
                    rho[z] = rv.at(rmap[zn].get<std::string>());
                }
                Bibundle b{left, right, rebuilt, prod, lambda, rho};
                validate_bibundle(b);
                w.bibundles_.emplace(name, std::move(b));
            }
        }
    }
    return w;
}

const GroupPtr& Workspace::group(const std::string& name) const {
    auto it = groups_.find(name);
    if (it == groups_.end()) parse_fail("unknown group '" + name + "'");
    return it->second;
}

const GComplexPtr& Workspace::action(const std::string& name) const {
    auto it = actions_.find(name);
    if (it == actions_.end()) parse_fail("unknown action '" + name + "'");
    return it->second;
}

const EquivariantMap& Workspace::functor(const std::string& name) const {
    auto it = functors_.find(name);
    if (it == functors_.end()) parse_fail("unknown functor '" + name + "'");
    return it->second;
}

const Bibundle& Workspace::bibundle(const std::string& name) const {
    auto it = bibundles_.find(name);
    if (it == bibundles_.end()) parse_fail("unknown bibundle '" + name + "'");
    return it->second;
}

CoeffPtr Workspace::system(const std::string& name) const {
    auto it = systems_.find(name);
    if (it == systems_.end()) parse_fail("unknown system '" + name + "'");
    return it->second;
}

const std::string& Workspace::system_action(const std::string& name) const {
    auto it = system_actions_.find(name);
    if (it == system_actions_.end()) parse_fail("unknown system '" + name + "'");
    return it->second;
}

const PresentationPtr& Workspace::presentation_of(const std::string& action_name) const {
    auto it = presentations_.find(action_name);
    if (it != presentations_.end()) return it->second;
    auto ins = const_cast<Workspace*>(this)->presentations_.emplace(
        action_name, build_presentation(action(action_name)));
    return ins.first->second;
}

std::vector<std::string> Workspace::action_names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : actions_) out.push_back(name);
    return out;
}

int Workspace::vertex_index(const std::string& action_name, const std::string& vertex) const {
    const GComplexPtr& x = action(action_name);
    for (int i = 0; i < x->complex().vertex_count(); ++i)
        if (x->vertex_name(i) == vertex) return i;
    parse_fail("unknown vertex '" + vertex + "' in action '" + action_name + "'");
}

json serialize_system(const CoefficientSystem& a, const std::string& action_name) {
    const Presentation& pres = *a.presentation();
    const GComplex& x = *pres.space();
    json values = json::array();
    for (int o = 0; o < pres.object_count(); ++o) {
        if (a.value(o).is_trivial()) continue;
        const FundObject& obj = pres.object(o);
        values.push_back(json{{"vertex", x.vertex_name(obj.vertex)},
                              {"subgroup", dump_subgroup(x.group(), obj.subgroup)},
                              {"value", dump_value(a.value(o))}});
    }
    json actions = json::array();
    for (int i = 0; i < pres.generator_count(); ++i) {
        const ArrowGen& g = pres.generator(i);
        if (a.value(g.source).is_trivial() || a.value(g.target).is_trivial()) continue;
        const FundObject& so = pres.object(g.source);
        const FundObject& to = pres.object(g.target);
        json gen;
        switch (g.kind) {
        case GenKind::EdgeStep:
            gen = json{{"kind", "edge"},
                       {"from", x.vertex_name(so.vertex)},
                       {"to", x.vertex_name(to.vertex)},
                       {"subgroup", dump_subgroup(x.group(), so.subgroup)}};
            break;
        case GenKind::Relabel:
            gen = json{{"kind", "relabel"},
                       {"vertex", x.vertex_name(so.vertex)},
                       {"from_subgroup", dump_subgroup(x.group(), so.subgroup)},
                       {"to_subgroup", dump_subgroup(x.group(), to.subgroup)}};
            break;
        case GenKind::Twist:
            if (so.subgroup.contains(g.g) &&
                a.action(i).matrix() == IntMatrix::identity(a.value(g.source).generators()))
                continue; // forced by the unit relation
            gen = json{{"kind", "twist"},
                       {"g", x.group()->name(g.g)},
                       {"vertex", x.vertex_name(so.vertex)},
                       {"subgroup", dump_subgroup(x.group(), so.subgroup)}};
            break;
        }
        actions.push_back(json{{"generator", gen}, {"matrix", dump_matrix(a.action(i).matrix())}});
    }
    return json{{"action", action_name},
                {"kind", "explicit"},
                {"values", values},
                {"actions", actions}};
}

json Workspace::serialize() const {
    json out;
    out["format"] = 1;

    json groups = json::object();
    for (const auto& [name, g] : groups_) {
        json table = json::array();
        std::vector<std::string> names;
        for (int a = 0; a < g->order(); ++a) {
            names.push_back(g->name(a));
            json row = json::array();
            for (int b = 0; b < g->order(); ++b) row.push_back(g->mul(a, b));
            table.push_back(row);
        }
        groups[name] = json{{"kind", "table"}, {"names", names}, {"table", table}};
    }
    if (!groups.empty()) out["groups"] = groups;

    json complexes = json::object();
    json actions = json::object();
    for (const auto& [name, x] : actions_) {
        json vertices = json::array();
        for (int v = 0; v < x->complex().vertex_count(); ++v)
            vertices.push_back(x->vertex_name(v));
        // Maximal simplices only.
        json simplices = json::array();
        for (int d = x->complex().dim(); d >= 0; --d)
            for (const auto& s : x->complex().simplices(d)) {
                bool maximal = true;
                for (int dd = d + 1; dd <= x->complex().dim() && maximal; ++dd)
                    for (const auto& t : x->complex().simplices(dd))
                        if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                            maximal = false;
                            break;
                        }
                if (!maximal) continue;
                json js = json::array();
                for (int v : s) js.push_back(x->vertex_name(v));
                simplices.push_back(js);
            }
        complexes["complex_" + name] = json{{"vertices", vertices}, {"simplices", simplices}};

        json perms = json::object();
        for (int g = 0; g < x->group()->order(); ++g) {
            if (g == x->group()->identity()) continue;
            json perm = json::object();
            for (int v = 0; v < x->complex().vertex_count(); ++v)
                if (x->act(g, v) != v) perm[x->vertex_name(v)] = x->vertex_name(x->act(g, v));
            perms[x->group()->name(g)] = perm;
        }
        std::string group_name;
        for (const auto& [gname, g] : groups_)
            if (g == x->group()) group_name = gname;
        actions[name] = json{{"group", group_name},
                             {"complex", "complex_" + name},
                             {"action", perms}};
    }
    if (!complexes.empty()) out["complexes"] = complexes;
    if (!actions.empty()) out["actions"] = actions;

    if (doc_.contains("functors")) out["functors"] = doc_["functors"];
    if (doc_.contains("bibundles")) out["bibundles"] = doc_["bibundles"];

    json systems = json::object();
    for (const auto& [name, sys] : systems_)
        systems[name] = serialize_system(*sys, system_actions_.at(name));
    if (!systems.empty()) out["systems"] = systems;
    return out;
}

} // namespace bredon
