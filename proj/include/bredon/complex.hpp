#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bredon/group.hpp"

namespace bredon {

using VertexSet = std::vector<int>;   // sorted, distinct
using VertexTuple = std::vector<int>; // ordered, repeats allowed

/// Finite abstract simplicial complex on vertices 0..vertex_count-1,
/// closed under faces; every vertex occurs as a 0-simplex.
class SimplicialComplex {
public:
    SimplicialComplex() : vertex_count_(0) {}

    /// Closure of the given simplices under faces, with every vertex added.
    static SimplicialComplex from_maximal(int vertex_count,
                                          const std::vector<VertexSet>& simplices);

    int vertex_count() const { return vertex_count_; }
    int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    const std::vector<VertexSet>& simplices(int d) const;
    std::vector<VertexSet> all_simplices() const;
    bool has_simplex(const VertexSet& s) const;
    size_t simplex_count() const;

private:
    int vertex_count_;
    std::vector<std::vector<VertexSet>> by_dim_; // sorted within each dimension
};

/// A set of simplices of an ambient complex (e.g. a fixed subcomplex),
/// kept on the ambient vertex numbering.
class Subcomplex {
public:
    Subcomplex() = default;
    explicit Subcomplex(std::vector<std::vector<VertexSet>> by_dim);

    int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    const std::vector<VertexSet>& simplices(int d) const;
    bool has_simplex(const VertexSet& s) const;
    std::vector<int> vertices() const;
    bool has_vertex(int v) const;
    int connected_components() const;
    size_t simplex_count() const;

private:
    std::vector<std::vector<VertexSet>> by_dim_;
};

/// Simplicial complex with an admissible simplicial action of a finite
/// group: the action is a homomorphism into vertex permutations, carries
/// simplices to simplices, and any element fixing a simplex setwise fixes
/// it vertexwise.
class GComplex {
public:
    GComplex(GroupPtr group, SimplicialComplex complex,
             std::vector<std::vector<int>> vertex_action, bool require_admissible = true);

    const GroupPtr& group() const { return group_; }
    const SimplicialComplex& complex() const { return complex_; }
    int act(int g, int v) const { return action_[g][v]; }
    const std::vector<std::vector<int>>& action() const { return action_; }
    bool admissible() const { return admissible_; }

    VertexSet act_simplex(int g, const VertexSet& s) const;
    VertexTuple act_tuple(int g, const VertexTuple& t) const;

    std::vector<std::string> vertex_names; // optional, for reports

    std::string vertex_name(int v) const {
        return v < static_cast<int>(vertex_names.size()) ? vertex_names[v]
                                                         : "v" + std::to_string(v);
    }

private:
    GroupPtr group_;
    SimplicialComplex complex_;
    std::vector<std::vector<int>> action_;
    bool admissible_;
};

using GComplexPtr = std::shared_ptr<const GComplex>;

/// Barycentric subdivision with the induced action. One subdivision of any
/// simplicial action is admissible (an element fixing a flag setwise fixes
/// each member, dimensions being distinct); a second pass exists only as a
/// guard.
GComplexPtr barycentric_subdivide(const GComplex& x);
GComplexPtr make_admissible(GComplexPtr x);

/// Subcomplex of simplices fixed vertexwise by every element of h.
Subcomplex fixed_subcomplex(const GComplex& x, const Subgroup& h);

Subgroup pointwise_stabilizer(const GComplex& x, const VertexTuple& vertices);

/// Least g with g.t = s componentwise, if the tuples are in one orbit.
std::optional<int> transport_witness(const GComplex& x, const VertexTuple& s,
                                     const VertexTuple& t);

/// Orbit decomposition of ordered n-simplices: lexicographically least
/// representatives with their pointwise stabilizers, plus for every tuple
/// the index of its representative and the least witness carrying the
/// representative onto it.
struct OrbitIndex {
    std::vector<VertexTuple> reps;
    std::vector<Subgroup> stabilizers;
    std::map<VertexTuple, std::pair<int, int>> locate; // tuple -> (rep index, witness)
};

/// Ordered n-simplices are vertex tuples of length n+1 whose support spans
/// a simplex; with include_degenerate the tuples may repeat vertices.
OrbitIndex orbit_reps(const GComplex& x, int n, bool include_degenerate = false);

/// All ordered n-simplices (no orbit identification), in lex order.
std::vector<VertexTuple> ordered_simplices(const SimplicialComplex& c, int n,
                                           bool include_degenerate);

bool tuple_is_degenerate(const VertexTuple& t);

} // namespace bredon
