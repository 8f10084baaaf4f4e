#include "bredon/complex.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace bredon {

namespace {

std::string set_str(const VertexSet& s) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << "}";
    return os.str();
}

} // namespace

SimplicialComplex SimplicialComplex::from_maximal(int vertex_count,
                                                  const std::vector<VertexSet>& simplices) {
    std::set<VertexSet> closed;
    for (int v = 0; v < vertex_count; ++v) closed.insert({v});
    // Close under faces by inserting all nonempty subsets.
    for (const auto& raw : simplices) {
        VertexSet s = raw;
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.size() != raw.size())
            throw Error("NOT_CLOSED_UNDER_FACES", "simplex with repeated vertices " + set_str(raw));
        for (int v : s)
            if (v < 0 || v >= vertex_count)
                throw Error("NOT_CLOSED_UNDER_FACES", "vertex out of range in " + set_str(s));
        int k = static_cast<int>(s.size());
        for (int mask = 1; mask < (1 << k); ++mask) {
            VertexSet face;
            for (int i = 0; i < k; ++i)
                if (mask & (1 << i)) face.push_back(s[i]);
            closed.insert(face);
        }
    }
    SimplicialComplex c;
    c.vertex_count_ = vertex_count;
    for (const auto& s : closed) {
        int d = static_cast<int>(s.size()) - 1;
        if (d >= static_cast<int>(c.by_dim_.size())) c.by_dim_.resize(d + 1);
        c.by_dim_[d].push_back(s);
    }
    for (auto& level : c.by_dim_) std::sort(level.begin(), level.end());
    return c;
}

const std::vector<VertexSet>& SimplicialComplex::simplices(int d) const {
    static const std::vector<VertexSet> empty;
    if (d < 0 || d >= static_cast<int>(by_dim_.size())) return empty;
    return by_dim_[d];
}

std::vector<VertexSet> SimplicialComplex::all_simplices() const {
    std::vector<VertexSet> out;
    for (const auto& level : by_dim_) out.insert(out.end(), level.begin(), level.end());
    return out;
}

bool SimplicialComplex::has_simplex(const VertexSet& s) const {
    int d = static_cast<int>(s.size()) - 1;
    if (d < 0 || d >= static_cast<int>(by_dim_.size())) return false;
    return std::binary_search(by_dim_[d].begin(), by_dim_[d].end(), s);
}

size_t SimplicialComplex::simplex_count() const {
    size_t n = 0;
    for (const auto& level : by_dim_) n += level.size();
    return n;
}

Subcomplex::Subcomplex(std::vector<std::vector<VertexSet>> by_dim) : by_dim_(std::move(by_dim)) {
    for (auto& level : by_dim_) std::sort(level.begin(), level.end());
    while (!by_dim_.empty() && by_dim_.back().empty()) by_dim_.pop_back();
}

const std::vector<VertexSet>& Subcomplex::simplices(int d) const {
    static const std::vector<VertexSet> empty;
    if (d < 0 || d >= static_cast<int>(by_dim_.size())) return empty;
    return by_dim_[d];
}

bool Subcomplex::has_simplex(const VertexSet& s) const {
    int d = static_cast<int>(s.size()) - 1;
    if (d < 0 || d >= static_cast<int>(by_dim_.size())) return false;
    return std::binary_search(by_dim_[d].begin(), by_dim_[d].end(), s);
}

std::vector<int> Subcomplex::vertices() const {
    std::vector<int> out;
    for (const auto& s : simplices(0)) out.push_back(s[0]);
    return out;
}

bool Subcomplex::has_vertex(int v) const { return has_simplex({v}); }

int Subcomplex::connected_components() const {
    std::vector<int> verts = vertices();
    std::map<int, int> comp;
    for (size_t i = 0; i < verts.size(); ++i) comp[verts[i]] = static_cast<int>(i);
    // Union by edges.
    std::vector<int> parent(verts.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (const auto& e : simplices(1)) {
        int a = find(comp[e[0]]), b = find(comp[e[1]]);
        if (a != b) parent[a] = b;
    }
    std::set<int> roots;
    for (size_t i = 0; i < verts.size(); ++i) roots.insert(find(static_cast<int>(i)));
    return static_cast<int>(roots.size());
}

size_t Subcomplex::simplex_count() const {
    size_t n = 0;
    for (const auto& level : by_dim_) n += level.size();
    return n;
}

GComplex::GComplex(GroupPtr group, SimplicialComplex complex,
                   std::vector<std::vector<int>> vertex_action, bool require_admissible)
    : group_(std::move(group)), complex_(std::move(complex)), action_(std::move(vertex_action)) {
    const int n = group_->order();
    const int vc = complex_.vertex_count();
    if (static_cast<int>(action_.size()) != n)
        throw Error("NOT_SIMPLICIAL_ACTION", "action must list one permutation per group element");
    for (int g = 0; g < n; ++g) {
        if (static_cast<int>(action_[g].size()) != vc)
            throw Error("NOT_SIMPLICIAL_ACTION", "permutation length mismatch for " + group_->name(g));
        std::vector<bool> hit(vc, false);
        for (int v : action_[g]) {
            if (v < 0 || v >= vc || hit[v])
                throw Error("NOT_SIMPLICIAL_ACTION",
                            group_->name(g) + " does not act by a vertex permutation");
            hit[v] = true;
        }
    }
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (int v = 0; v < vc; ++v)
                if (action_[group_->mul(g, h)][v] != action_[g][action_[h][v]])
                    throw Error("NOT_HOMOMORPHIC",
                                "action is not a homomorphism at (" + group_->name(g) + "," +
                                    group_->name(h) + ")");
    for (int g = 0; g < n; ++g)
        for (int d = 0; d <= complex_.dim(); ++d)
            for (const auto& s : complex_.simplices(d))
                if (!complex_.has_simplex(act_simplex(g, s)))
                    throw Error("NOT_SIMPLICIAL_ACTION", group_->name(g) +
                                                             " maps simplex " + set_str(s) +
                                                             " outside the complex");
    admissible_ = true;
    for (int g = 0; g < n && admissible_; ++g)
        for (int d = 1; d <= complex_.dim() && admissible_; ++d)
            for (const auto& s : complex_.simplices(d)) {
                if (act_simplex(g, s) != s) continue;
                bool pointwise = true;
                for (int v : s) pointwise = pointwise && action_[g][v] == v;
                if (!pointwise) {
                    if (require_admissible)
                        throw Error("NOT_ADMISSIBLE", group_->name(g) + " fixes " + set_str(s) +
                                                          " setwise but not vertexwise");
                    admissible_ = false;
                    break;
                }
            }
}

VertexSet GComplex::act_simplex(int g, const VertexSet& s) const {
    VertexSet out;
    out.reserve(s.size());
    for (int v : s) out.push_back(action_[g][v]);
    std::sort(out.begin(), out.end());
    return out;
}

VertexTuple GComplex::act_tuple(int g, const VertexTuple& t) const {
    VertexTuple out;
    out.reserve(t.size());
    for (int v : t) out.push_back(action_[g][v]);
    return out;
}

GComplexPtr barycentric_subdivide(const GComplex& x) {
    // New vertices are the simplices of x, numbered by (dim, lex);
    // new simplices are the strict face chains.
    std::vector<VertexSet> cells = x.complex().all_simplices();
    std::map<VertexSet, int> cell_index;
    for (size_t i = 0; i < cells.size(); ++i) cell_index[cells[i]] = static_cast<int>(i);

    auto is_face = [](const VertexSet& a, const VertexSet& b) {
        return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
    };

    std::vector<VertexSet> chains;
    // Depth-first enumeration of strict chains.
    std::function<void(std::vector<int>&)> extend = [&](std::vector<int>& chain) {
        if (!chain.empty()) chains.push_back(VertexSet(chain.begin(), chain.end()));
        int last = chain.empty() ? -1 : chain.back();
        for (size_t i = 0; i < cells.size(); ++i) {
            if (last >= 0 && !is_face(cells[last], cells[i])) continue;
            if (last < 0 || static_cast<int>(i) > last) {
                chain.push_back(static_cast<int>(i));
                extend(chain);
                chain.pop_back();
            }
        }
    };
    std::vector<int> chain;
    extend(chain);

    SimplicialComplex sub =
        SimplicialComplex::from_maximal(static_cast<int>(cells.size()), chains);

    std::vector<std::vector<int>> action(x.group()->order(),
                                         std::vector<int>(cells.size()));
    for (int g = 0; g < x.group()->order(); ++g)
        for (size_t i = 0; i < cells.size(); ++i)
            action[g][i] = cell_index.at(x.act_simplex(g, cells[i]));

    auto out = std::make_shared<GComplex>(x.group(), std::move(sub), std::move(action),
                                          /*require_admissible=*/false);
    // Original vertices keep their names; higher barycenters are named
    // after the simplex they subdivide.
    std::vector<std::string> names;
    for (const auto& c : cells) {
        if (c.size() == 1) {
            names.push_back(x.vertex_name(c[0]));
            continue;
        }
        std::ostringstream os;
        os << "b{";
        for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << x.vertex_name(c[i]);
        os << "}";
        names.push_back(os.str());
    }
    const_cast<GComplex&>(*out).vertex_names = std::move(names);
    return out;
}

GComplexPtr make_admissible(GComplexPtr x) {
    if (x->admissible()) return x;
    GComplexPtr once = barycentric_subdivide(*x);
    if (once->admissible()) return once;
    GComplexPtr twice = barycentric_subdivide(*once);
    if (!twice->admissible())
        throw Error("STILL_NOT_ADMISSIBLE_AFTER_2",
                    "two barycentric subdivisions failed to repair the action");
    return twice;
}

Subcomplex fixed_subcomplex(const GComplex& x, const Subgroup& h) {
    if (h.parent() != x.group())
        throw Error("NOT_SUBGROUP", "subgroup of a different group");
    std::vector<std::vector<VertexSet>> by_dim(x.complex().dim() + 1);
    for (int d = 0; d <= x.complex().dim(); ++d)
        for (const auto& s : x.complex().simplices(d)) {
            bool fixed = true;
            for (int g : h.elements())
                for (int v : s) fixed = fixed && x.act(g, v) == v;
            if (fixed) by_dim[d].push_back(s);
        }
    return Subcomplex(std::move(by_dim));
}

Subgroup pointwise_stabilizer(const GComplex& x, const VertexTuple& vertices) {
    std::vector<int> elems;
    for (int g = 0; g < x.group()->order(); ++g) {
        bool fixes = true;
        for (int v : vertices) fixes = fixes && x.act(g, v) == v;
        if (fixes) elems.push_back(g);
    }
    return Subgroup(x.group(), std::move(elems));
}

std::optional<int> transport_witness(const GComplex& x, const VertexTuple& s,
                                     const VertexTuple& t) {
    if (s.size() != t.size()) return std::nullopt;
    for (int g = 0; g < x.group()->order(); ++g)
        if (x.act_tuple(g, t) == s) return g;
    return std::nullopt;
}

bool tuple_is_degenerate(const VertexTuple& t) {
    VertexSet support(t.begin(), t.end());
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    return support.size() != t.size();
}

std::vector<VertexTuple> ordered_simplices(const SimplicialComplex& c, int n,
                                           bool include_degenerate) {
    std::vector<VertexTuple> out;
    VertexTuple cur;
    std::function<void()> extend = [&]() {
        if (static_cast<int>(cur.size()) == n + 1) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v < c.vertex_count(); ++v) {
            if (!include_degenerate &&
                std::find(cur.begin(), cur.end(), v) != cur.end())
                continue;
            VertexSet support(cur.begin(), cur.end());
            support.push_back(v);
            std::sort(support.begin(), support.end());
            support.erase(std::unique(support.begin(), support.end()), support.end());
            if (!c.has_simplex(support)) continue;
            cur.push_back(v);
            extend();
            cur.pop_back();
        }
    };
    extend();
    return out;
}

OrbitIndex orbit_reps(const GComplex& x, int n, bool include_degenerate) {
    OrbitIndex idx;
    for (const auto& t : ordered_simplices(x.complex(), n, include_degenerate)) {
        if (idx.locate.count(t)) continue;
        // Tuples are visited in lex order, so the first unseen one is the
        // least in its orbit.
        int rep_id = static_cast<int>(idx.reps.size());
        idx.reps.push_back(t);
        idx.stabilizers.push_back(pointwise_stabilizer(x, t));
        for (int g = 0; g < x.group()->order(); ++g)
            idx.locate.emplace(x.act_tuple(g, t), std::make_pair(rep_id, g));
    }
    return idx;
}

} // namespace bredon
