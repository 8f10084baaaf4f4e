#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bredon/error.hpp"

namespace bredon {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Finite group given by its Cayley table on element indices 0..order-1.
/// Associativity, a two-sided identity and inverses are verified at
/// construction.
class FiniteGroup {
public:
    FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> names = {});

    static GroupPtr trivial();
    static GroupPtr cyclic(int n);
    /// Closure of a set of vertex permutations under composition; the table
    /// is the induced abstract group, elements named by their permutations
    /// unless names are supplied for the generators' closure order.
    static GroupPtr from_permutations(int domain, const std::vector<std::vector<int>>& gens);

    int order() const { return n_; }
    int mul(int a, int b) const { return table_[a][b]; }
    int inv(int a) const { return inv_[a]; }
    int identity() const { return id_; }
    bool is_abelian() const;

    const std::string& name(int a) const { return names_[a]; }
    /// Index of the named element, -1 if absent.
    int index_of(const std::string& name) const;

private:
    int n_;
    std::vector<std::vector<int>> table_;
    std::vector<int> inv_;
    int id_;
    std::vector<std::string> names_;
};

/// Direct product with pairing bookkeeping: index(a,b) = a*|H| + b.
struct ProductGroup {
    GroupPtr left, right, group;

    int pair(int a, int b) const { return a * right->order() + b; }
    int pr1(int ab) const { return ab / right->order(); }
    int pr2(int ab) const { return ab % right->order(); }
};

ProductGroup direct_product(const GroupPtr& g, const GroupPtr& h);

/// Subgroup of a fixed parent group, stored as a sorted element list;
/// closure under multiplication and inversion is verified.
class Subgroup {
public:
    Subgroup(GroupPtr parent, std::vector<int> elements);

    static Subgroup trivial(const GroupPtr& g);
    static Subgroup whole(const GroupPtr& g);

    const GroupPtr& parent() const { return parent_; }
    const std::vector<int>& elements() const { return elems_; }
    int order() const { return static_cast<int>(elems_.size()); }
    bool contains(int g) const;
    bool contains_subgroup(const Subgroup& other) const;

    Subgroup conjugate(int g) const; // g^-1 H g

    bool operator==(const Subgroup& o) const { return elems_ == o.elems_; }
    bool operator!=(const Subgroup& o) const { return !(*this == o); }
    bool operator<(const Subgroup& o) const;

    std::string str() const;

private:
    GroupPtr parent_;
    std::vector<int> elems_;
};

/// Group homomorphism by element images; multiplicativity is verified.
class GroupHom {
public:
    GroupHom(GroupPtr source, GroupPtr target, std::vector<int> image);

    static GroupHom identity(const GroupPtr& g);

    const GroupPtr& source() const { return source_; }
    const GroupPtr& target() const { return target_; }
    int operator()(int a) const { return image_[a]; }
    const std::vector<int>& image() const { return image_; }

    /// Image of a subgroup as a subgroup of the target.
    Subgroup map_subgroup(const Subgroup& h) const;

private:
    GroupPtr source_, target_;
    std::vector<int> image_;
};

/// Every subgroup, duplicate-free, ordered by size then lexicographic
/// element set.
std::vector<Subgroup> enumerate_subgroups(const GroupPtr& g);

/// Smallest subgroup containing the given elements.
Subgroup subgroup_closure(const GroupPtr& g, std::vector<int> elements);

/// Left cosets gH as a partition; the coset of the identity comes first,
/// the rest ordered by least element.
std::vector<std::vector<int>> left_cosets(const GroupPtr& g, const Subgroup& h);

/// Graph {(k, zeta(k))} of a homomorphism zeta defined on the elements of K,
/// as a subgroup of the product. `zeta[i]` is the image of K.elements()[i].
Subgroup graph_subgroup(const Subgroup& k, const std::vector<int>& zeta,
                        const ProductGroup& product);

} // namespace bredon
