#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bredon/complex.hpp"

namespace bredon {

/// Object (v, H): a vertex together with a subgroup of its stabilizer.
struct FundObject {
    int vertex;
    Subgroup subgroup;

    bool operator==(const FundObject& o) const {
        return vertex == o.vertex && subgroup == o.subgroup;
    }
};

enum class GenKind { EdgeStep, Relabel, Twist };

/// Generating arrow. EdgeStep (v,H)->(w,H) walks an oriented edge of the
/// H-fixed subcomplex; Relabel (v,H)->(v,K) enlarges the subgroup (H < K);
/// Twist by g sends (v,H) to (g^-1 v, g^-1 H g).
struct ArrowGen {
    GenKind kind;
    int source, target; // object ids
    int g = -1;         // Twist only
};

/// Composable sequence of generators; empty means the identity.
struct ArrowWord {
    int source, target; // object ids
    std::vector<int> gens;

    bool is_identity_word() const { return gens.empty(); }
};

struct Relation {
    ArrowWord lhs, rhs;
    std::string tag; // R1..R6
};

/// What a word means as an arrow of the fundamental category: endpoints,
/// the orbit-map coset (canonical representative of g*K_target), and the
/// freely reduced edge path it traces in the fixed set of the source
/// subgroup. Two words with equal semantics are equal arrows; the converse
/// can additionally require triangle moves (see relation checking).
struct WordSemantics {
    int source, target;
    int coset_rep;
    std::vector<std::pair<int, int>> path;

    bool operator==(const WordSemantics& o) const {
        return source == o.source && target == o.target && coset_rep == o.coset_rep &&
               path == o.path;
    }
};

/// Finite presentation of the discrete fundamental category of an
/// admissible G-complex, restricted to vertex objects. Relations follow
/// six schemas:
///   R1 edge composition inside a fixed 2-simplex,
///   R2 edge inversion,
///   R3 twist multiplicativity,
///   R4 twist-edge exchange,
///   R5 relabel naturality (with edges, twists, and transitivity),
///   R6 twists by subgroup elements are identities.
class Presentation {
public:
    explicit Presentation(GComplexPtr x);

    const GComplexPtr& space() const { return x_; }

    int object_count() const { return static_cast<int>(objects_.size()); }
    const FundObject& object(int id) const { return objects_[id]; }
    int generator_count() const { return static_cast<int>(generators_.size()); }
    const ArrowGen& generator(int id) const { return generators_[id]; }
    const std::vector<Relation>& relations() const { return relations_; }

    int object_id(int vertex, const Subgroup& h) const;
    std::optional<int> find_object(int vertex, const Subgroup& h) const;
    int edge_step_id(int v, int w, const Subgroup& h) const;
    int relabel_id(int v, const Subgroup& h, const Subgroup& k) const;
    int twist_id(int g, int v, const Subgroup& h) const;

    ArrowWord identity_word(int obj) const { return ArrowWord{obj, obj, {}}; }
    /// Word from explicit generators; endpoints must chain (NOT_COMPOSABLE).
    ArrowWord make_word(const std::vector<int>& gens) const;

    /// Drops twists by subgroup elements and canonicalizes the remaining
    /// twists within their right coset.
    ArrowWord normalize(const ArrowWord& w) const;

    WordSemantics semantics(const ArrowWord& w) const;

    std::string object_str(int id) const;
    std::string generator_str(int id) const;

private:
    GComplexPtr x_;
    std::vector<FundObject> objects_;
    std::map<std::pair<int, std::vector<int>>, int> object_ids_;
    std::vector<ArrowGen> generators_;
    std::map<std::pair<int, int>, int> edge_ids_;    // (src obj, tgt obj)
    std::map<std::pair<int, int>, int> relabel_ids_; // (src obj, tgt obj)
    std::map<std::pair<int, int>, int> twist_ids_;   // (src obj, g)
    std::vector<Relation> relations_;
};

using PresentationPtr = std::shared_ptr<const Presentation>;

PresentationPtr build_presentation(GComplexPtr x);

ArrowWord compose_words(const Presentation& p, const ArrowWord& a, const ArrowWord& b);

/// Functor between presentations, given on objects and generators
/// (generator images are words in the target).
struct PresFunctor {
    PresentationPtr source, target;
    std::vector<int> object_map;
    std::vector<ArrowWord> generator_map;
};

PresFunctor identity_functor(const PresentationPtr& p);

ArrowWord apply_functor(const PresFunctor& f, const ArrowWord& w);

/// Simplicial equivariant map of G-complexes: vertex map plus group
/// homomorphism with phi(g.v) = hom(g).phi(v); simplices may collapse.
struct EquivariantMap {
    GComplexPtr source, target;
    GroupHom hom;
    std::vector<int> vertex_map;
};

EquivariantMap make_equivariant_map(GComplexPtr source, GComplexPtr target, GroupHom hom,
                                    std::vector<int> vertex_map);

/// Functor of presentations induced by an equivariant map: (v,K) goes to
/// (phi v, hom K), edges to edges (or identities when collapsed), twists to
/// twists, relabels to relabels. Every relation instance is checked to be
/// preserved (semantically, or as an instance of a target schema).
PresFunctor induced_functor(const EquivariantMap& phi, const PresentationPtr& source,
                            const PresentationPtr& target);

} // namespace bredon
