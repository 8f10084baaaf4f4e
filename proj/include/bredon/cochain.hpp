#pragma once

#include <string>
#include <vector>

#include "bredon/coeff.hpp"

namespace bredon {

/// One coordinate of the cochain group: an orbit representative with its
/// full pointwise stabilizer; the coordinate's value group is the system's
/// value at (first vertex, stabilizer).
struct BasisEntry {
    VertexTuple rep;
    Subgroup stabilizer;
    int object; // id in the presentation
};

/// The twisted cochain complex materialized on orbit representatives of
/// ordered simplices (repeats allowed), through degree max_degree, with
/// differentials as block homomorphisms. delta^2 = 0 is verified during
/// assembly.
struct CochainComplex {
    GComplexPtr space;
    PresentationPtr pres;
    CoeffPtr system;
    int max_degree;
    std::vector<OrbitIndex> orbits;            // per degree 0..max_degree
    std::vector<std::vector<BasisEntry>> basis;
    std::vector<SumDecomposition> groups;      // per degree
    std::vector<AbelianHom> differentials;     // [n]: degree n -> n+1
    std::string content_hash;

    const AbelianGroup& degree_group(int n) const { return groups[n].group; }
};

/// Transport of a tuple with a subgroup fixing it pointwise onto its orbit
/// representative: the basis-entry index and the word (twist then relabel)
/// whose evaluation converts the representative's value into the value at
/// the given pair.
struct Transport {
    int entry;
    ArrowWord word;
};

Transport transport_to_rep(const Presentation& pres, const OrbitIndex& orbits,
                           const std::vector<BasisEntry>& basis, const VertexTuple& s,
                           const Subgroup& h);

/// Basis degrees 0..max_dim+1, differentials 0..max_dim, so cohomology is
/// available through degree max_dim.
CochainComplex assemble_complex(const PresentationPtr& pres, CoeffPtr system, int max_dim);

struct CohomologyResult {
    std::vector<AbelianGroup> groups; // degrees 0..max_dim
    std::string complex_hash;
    std::string conventions;

    std::string str() const;
};

extern const char* kConventionsVersion;

CohomologyResult cohomology(const CochainComplex& c);

/// Per-degree kernel/image data, for induced maps.
std::vector<Subquotient> cohomology_spaces(const CochainComplex& c);

/// Degreewise map of cochain complexes; commutation with the differentials
/// is verified at construction (CHAIN_MAP_BROKEN).
struct ChainMap {
    const CochainComplex* from;
    const CochainComplex* to;
    std::vector<IntMatrix> blocks; // degrees 0..min(max_degree)
};

ChainMap make_chain_map(const CochainComplex& from, const CochainComplex& to,
                        std::vector<IntMatrix> blocks);

/// Chain map induced by an equivariant map phi: the target complex (over A)
/// maps to the source complex (over the pullback of A): each source entry
/// reads its value through phi and a transport in the target space.
ChainMap pullback_cochain_map(const EquivariantMap& phi, const CochainComplex& target_cplx,
                              const CochainComplex& source_cplx);

/// Blockwise application of a natural transformation's components.
ChainMap coefficient_change_map(const NaturalTransformation& nt, const CochainComplex& from,
                                const CochainComplex& to);

struct InducedMaps {
    std::vector<AbelianHom> maps; // per degree
    std::vector<bool> iso;        // per degree
    bool all_iso;
};

InducedMaps induced_cohomology_map(const ChainMap& f);

/// Full Morita pipeline report for a biprincipal bibundle and a system on
/// the right groupoid.
struct MoritaReport {
    int max_dim;
    std::vector<AbelianGroup> left_cohomology;  // with the pushed-forward system
    std::vector<AbelianGroup> right_cohomology; // with the given system
    std::vector<bool> lambda_iso, rho_iso;
    bool natural_iso_ok;
    bool isomorphic;
    std::string natural_iso_failure;
};

MoritaReport verify_morita(const Bibundle& b, const CoefficientSystem& a_right, int max_dim);

/// Cohomology with the constant Z system (the orbit space's cohomology).
CohomologyResult orbit_space_cohomology(const GComplexPtr& x, int max_dim);

} // namespace bredon
