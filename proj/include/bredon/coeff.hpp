#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bredon/abelian.hpp"
#include "bredon/fundcat.hpp"
#include "bredon/morita.hpp"

namespace bredon {

/// Contravariant functor from a fundamental-category presentation to
/// finitely generated abelian groups: a value per object and, for each
/// generating arrow o1 -> o2, an action value(o2) -> value(o1). Validation
/// checks the typing and every relation instance.
class CoefficientSystem {
public:
    CoefficientSystem(PresentationPtr pres, std::vector<AbelianGroup> values,
                      std::vector<AbelianHom> actions);

    const PresentationPtr& presentation() const { return pres_; }
    const AbelianGroup& value(int object) const { return values_[object]; }
    const AbelianHom& action(int generator) const { return actions_[generator]; }

    /// Contravariant evaluation: for w : o1 -> o2 returns value(o2) -> value(o1).
    AbelianHom evaluate(const ArrowWord& w) const;

private:
    PresentationPtr pres_;
    std::vector<AbelianGroup> values_;
    std::vector<AbelianHom> actions_;
};

using CoeffPtr = std::shared_ptr<const CoefficientSystem>;

/// Constant system: every object gets `value`, every generator the identity.
CoeffPtr constant_system(const PresentationPtr& pres, const AbelianGroup& value);

/// System supported on the twist-orbit of one object: `value` there,
/// zero elsewhere; twists inside the support act as the identity.
CoeffPtr orbit_supported_system(const PresentationPtr& pres, int vertex, const Subgroup& h,
                                const AbelianGroup& value);

/// Explicit data; unlisted objects default to zero, arrows into or out of
/// zero are forced zero, twists by subgroup elements are identities.
CoeffPtr explicit_system(const PresentationPtr& pres,
                         const std::vector<std::pair<int, AbelianGroup>>& values,
                         const std::vector<std::pair<int, IntMatrix>>& actions);

/// Representation-ring system of an abelian group action: value(v,K) is
/// free abelian on the characters of K, relabels restrict characters,
/// edges and twists act as the identity. NONABELIAN_UNSUPPORTED otherwise.
CoeffPtr representation_system(const PresentationPtr& pres);

/// Precompose along a functor of presentations: value = A(F(-)).
CoeffPtr pullback_system(const PresFunctor& f, const CoefficientSystem& a);

/// Fiber-correction data at a total-space vertex z over a K-fixed base
/// vertex: the unique zeta with (k, zeta(k)) fixing z, and its graph.
struct GammaData {
    int z;
    Subgroup k;
    std::vector<int> zeta; // images of k.elements()
    Subgroup gamma;        // subgroup of the product
};

GammaData compute_gamma(const Bibundle& b, int z, const Subgroup& k);

/// Unique edgewise lift through lambda of an edge path in the K-fixed base
/// subcomplex, starting at z and staying in the gamma-fixed subcomplex.
std::vector<int> lift_edge_path(const Bibundle& b, const Subgroup& k,
                                const std::vector<int>& path, int z);

/// Right inverse to the lambda-induced functor: objects go to the chosen
/// section point with its gamma subgroup; edge steps lift and get a fiber
/// correction twist; twists get the unique product-element correction.
struct SectionFunctor {
    PresFunctor functor;      // base presentation -> total presentation
    std::vector<int> section; // base vertex -> total vertex
};

/// section_offset rotates the per-fiber choice away from the default
/// lexicographic least; the right-inverse law is verified generator by
/// generator either way.
SectionFunctor sigma_right_inverse(const Bibundle& b, const PresentationPtr& base_pres,
                                   const PresentationPtr& total_pres, int section_offset = 0);

/// Pushforward along lambda: pullback of a total-space system through a
/// right inverse of the lambda-induced functor.
CoeffPtr pushforward_system(const SectionFunctor& sigma, const CoefficientSystem& a);

struct NaturalTransformation {
    std::vector<AbelianHom> components; // per object: A(o) -> B(o)
};

struct NaturalIsoResult {
    std::optional<NaturalTransformation> iso;
    std::string failure; // witness when absent
};

/// Verifies candidate components as a natural isomorphism A => B
/// (invertibility of every component plus all naturality squares).
NaturalIsoResult check_natural_iso(const CoefficientSystem& a, const CoefficientSystem& b,
                                   const std::vector<AbelianHom>& components);

/// Identity candidates where values have literally equal presentations.
std::optional<std::vector<AbelianHom>> identity_components(const CoefficientSystem& a,
                                                           const CoefficientSystem& b);

/// Components comparing a total-space system with the pullback of its own
/// pushforward: at (z, L) the arrow twisting z to the section point of its
/// fiber, evaluated through A.
std::vector<AbelianHom> roundtrip_components(const Bibundle& b, const SectionFunctor& sigma,
                                             const CoefficientSystem& pulled_back,
                                             const CoefficientSystem& a);

/// Components comparing pushforwards along two different sections: the
/// fiber-change twist between the section points, evaluated through A.
std::vector<AbelianHom> section_change_components(const Bibundle& b,
                                                  const SectionFunctor& sigma1,
                                                  const SectionFunctor& sigma2,
                                                  const CoefficientSystem& push1,
                                                  const CoefficientSystem& push2,
                                                  const CoefficientSystem& a);

} // namespace bredon
