#include "bredon/group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace bredon {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> names)
    : n_(static_cast<int>(table.size())), table_(std::move(table)), names_(std::move(names)) {
    if (n_ == 0) throw Error("NOT_HOMOMORPHIC", "empty multiplication table");
    for (const auto& row : table_) {
        if (static_cast<int>(row.size()) != n_)
            throw Error("NOT_HOMOMORPHIC", "multiplication table is not square");
        for (int v : row)
            if (v < 0 || v >= n_)
                throw Error("NOT_HOMOMORPHIC", "table entry out of range");
    }
    id_ = -1;
    for (int e = 0; e < n_; ++e) {
        bool ok = true;
        for (int a = 0; a < n_ && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
        if (ok) {
            id_ = e;
            break;
        }
    }
    if (id_ < 0) throw Error("NOT_HOMOMORPHIC", "no two-sided identity");
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            for (int c = 0; c < n_; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw Error("NOT_HOMOMORPHIC", "multiplication is not associative");
    inv_.assign(n_, -1);
    for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b)
            if (table_[a][b] == id_ && table_[b][a] == id_) {
                inv_[a] = b;
                break;
            }
        if (inv_[a] < 0) throw Error("NOT_HOMOMORPHIC", "element without inverse");
    }
    if (names_.empty()) {
        for (int a = 0; a < n_; ++a) names_.push_back("g" + std::to_string(a));
    } else if (static_cast<int>(names_.size()) != n_) {
        throw Error("NOT_HOMOMORPHIC", "name count does not match order");
    }
}

GroupPtr FiniteGroup::trivial() {
    return std::make_shared<FiniteGroup>(std::vector<std::vector<int>>{{0}},
                                         std::vector<std::string>{"1"});
}

GroupPtr FiniteGroup::cyclic(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<std::string> names;
    for (int a = 0; a < n; ++a) {
        names.push_back(a == 0 ? "1" : "r" + (a == 1 ? std::string() : std::to_string(a)));
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    }
    return std::make_shared<FiniteGroup>(std::move(t), std::move(names));
}

GroupPtr FiniteGroup::from_permutations(int domain, const std::vector<std::vector<int>>& gens) {
    std::vector<std::vector<int>> elems;
    std::vector<int> id(domain);
    for (int i = 0; i < domain; ++i) id[i] = i;
    elems.push_back(id);
    std::map<std::vector<int>, int> index{{id, 0}};
    for (size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : gens) {
            if (static_cast<int>(g.size()) != domain)
                throw Error("NOT_SIMPLICIAL_ACTION", "generator domain mismatch");
            std::vector<int> prod(domain);
            for (int i = 0; i < domain; ++i) prod[i] = g[elems[head][i]];
            if (index.emplace(prod, elems.size()).second) elems.push_back(prod);
        }
    }
    int n = static_cast<int>(elems.size());
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<int> prod(domain);
            for (int i = 0; i < domain; ++i) prod[i] = elems[a][elems[b][i]];
            table[a][b] = index.at(prod);
        }
    std::vector<std::string> names;
    for (const auto& e : elems) {
        std::ostringstream os;
        os << "p";
        for (int i : e) os << i;
        names.push_back(os.str());
    }
    return std::make_shared<FiniteGroup>(std::move(table), std::move(names));
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b)
            if (table_[a][b] != table_[b][a]) return false;
    return true;
}

int FiniteGroup::index_of(const std::string& name) const {
    for (int a = 0; a < n_; ++a)
        if (names_[a] == name) return a;
    return -1;
}

ProductGroup direct_product(const GroupPtr& g, const GroupPtr& h) {
    int n = g->order() * h->order();
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    std::vector<std::string> names(n);
    auto pair = [&](int a, int b) { return a * h->order() + b; };
    for (int a1 = 0; a1 < g->order(); ++a1)
        for (int b1 = 0; b1 < h->order(); ++b1) {
            names[pair(a1, b1)] = "(" + g->name(a1) + "," + h->name(b1) + ")";
            for (int a2 = 0; a2 < g->order(); ++a2)
                for (int b2 = 0; b2 < h->order(); ++b2)
                    table[pair(a1, b1)][pair(a2, b2)] =
                        pair(g->mul(a1, a2), h->mul(b1, b2));
        }
    return ProductGroup{g, h, std::make_shared<FiniteGroup>(std::move(table), std::move(names))};
}

Subgroup::Subgroup(GroupPtr parent, std::vector<int> elements)
    : parent_(std::move(parent)), elems_(std::move(elements)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    if (!contains(parent_->identity()))
        throw Error("NOT_SUBGROUP", "identity missing");
    for (int a : elems_) {
        if (a < 0 || a >= parent_->order()) throw Error("NOT_SUBGROUP", "element out of range");
        if (!contains(parent_->inv(a)))
            throw Error("NOT_SUBGROUP", "not closed under inversion");
        for (int b : elems_)
            if (!contains(parent_->mul(a, b)))
                throw Error("NOT_SUBGROUP", "not closed under multiplication");
    }
}

Subgroup Subgroup::trivial(const GroupPtr& g) { return Subgroup(g, {g->identity()}); }

Subgroup Subgroup::whole(const GroupPtr& g) {
    std::vector<int> all(g->order());
    for (int i = 0; i < g->order(); ++i) all[i] = i;
    return Subgroup(g, std::move(all));
}

bool Subgroup::contains(int g) const {
    return std::binary_search(elems_.begin(), elems_.end(), g);
}

bool Subgroup::contains_subgroup(const Subgroup& other) const {
    return std::includes(elems_.begin(), elems_.end(), other.elems_.begin(),
                         other.elems_.end());
}

Subgroup Subgroup::conjugate(int g) const {
    std::vector<int> conj;
    int gi = parent_->inv(g);
    for (int h : elems_) conj.push_back(parent_->mul(gi, parent_->mul(h, g)));
    return Subgroup(parent_, std::move(conj));
}

bool Subgroup::operator<(const Subgroup& o) const {
    if (elems_.size() != o.elems_.size()) return elems_.size() < o.elems_.size();
    return elems_ < o.elems_;
}

std::string Subgroup::str() const {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < elems_.size(); ++i)
        os << (i ? "," : "") << parent_->name(elems_[i]);
    os << "}";
    return os.str();
}

GroupHom::GroupHom(GroupPtr source, GroupPtr target, std::vector<int> image)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(image)) {
    if (static_cast<int>(image_.size()) != source_->order())
        throw Error("HOM_INVALID", "image list length does not match source order");
    for (int v : image_)
        if (v < 0 || v >= target_->order()) throw Error("HOM_INVALID", "image out of range");
    for (int a = 0; a < source_->order(); ++a)
        for (int b = 0; b < source_->order(); ++b)
            if (image_[source_->mul(a, b)] != target_->mul(image_[a], image_[b]))
                throw Error("HOM_INVALID", "image is not multiplicative at (" +
                                               source_->name(a) + "," + source_->name(b) + ")");
}

GroupHom GroupHom::identity(const GroupPtr& g) {
    std::vector<int> img(g->order());
    for (int i = 0; i < g->order(); ++i) img[i] = i;
    return GroupHom(g, g, std::move(img));
}

Subgroup GroupHom::map_subgroup(const Subgroup& h) const {
    std::vector<int> img;
    for (int a : h.elements()) img.push_back(image_[a]);
    return Subgroup(target_, std::move(img));
}

Subgroup subgroup_closure(const GroupPtr& g, std::vector<int> elements) {
    std::set<int> cur(elements.begin(), elements.end());
    cur.insert(g->identity());
    for (;;) {
        std::set<int> next = cur;
        for (int a : cur) {
            next.insert(g->inv(a));
            for (int b : cur) next.insert(g->mul(a, b));
        }
        if (next == cur) break;
        cur.swap(next);
    }
    return Subgroup(g, std::vector<int>(cur.begin(), cur.end()));
}

std::vector<Subgroup> enumerate_subgroups(const GroupPtr& g) {
    std::set<std::vector<int>> seen;
    std::vector<Subgroup> out;
    std::vector<Subgroup> work{Subgroup::trivial(g)};
    seen.insert(work[0].elements());
    for (size_t head = 0; head < work.size(); ++head) {
        Subgroup cur = work[head];
        for (int a = 0; a < g->order(); ++a) {
            if (cur.contains(a)) continue;
            std::vector<int> gens = cur.elements();
            gens.push_back(a);
            Subgroup bigger = subgroup_closure(g, std::move(gens));
            if (seen.insert(bigger.elements()).second) work.push_back(bigger);
        }
    }
    out = std::move(work);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> left_cosets(const GroupPtr& g, const Subgroup& h) {
    if (h.parent() != g) throw Error("NOT_SUBGROUP", "subgroup of a different group");
    std::vector<bool> assigned(g->order(), false);
    std::vector<std::vector<int>> cosets;
    for (int a = 0; a < g->order(); ++a) {
        if (assigned[a]) continue;
        std::vector<int> coset;
        for (int x : h.elements()) {
            int e = g->mul(a, x);
            coset.push_back(e);
            assigned[e] = true;
        }
        std::sort(coset.begin(), coset.end());
        cosets.push_back(std::move(coset));
    }
    return cosets;
}

Subgroup graph_subgroup(const Subgroup& k, const std::vector<int>& zeta,
                        const ProductGroup& product) {
    if (k.parent() != product.left)
        throw Error("HOM_INVALID", "graph domain is not a subgroup of the left factor");
    if (zeta.size() != k.elements().size())
        throw Error("HOM_INVALID", "zeta image count does not match subgroup order");
    auto image_of = [&](int elem) {
        auto it = std::lower_bound(k.elements().begin(), k.elements().end(), elem);
        return zeta[it - k.elements().begin()];
    };
    const auto& ks = k.elements();
    for (size_t i = 0; i < ks.size(); ++i)
        for (size_t j = 0; j < ks.size(); ++j) {
            int prod = product.left->mul(ks[i], ks[j]);
            if (!k.contains(prod)) throw Error("HOM_INVALID", "domain is not closed");
            if (image_of(prod) != product.right->mul(zeta[i], zeta[j]))
                throw Error("HOM_INVALID", "zeta is not multiplicative");
        }
    std::vector<int> graph;
    for (size_t i = 0; i < ks.size(); ++i) graph.push_back(product.pair(ks[i], zeta[i]));
    return Subgroup(product.group, std::move(graph));
}

} // namespace bredon
