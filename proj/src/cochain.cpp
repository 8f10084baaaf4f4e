#include "bredon/cochain.hpp"

#include <algorithm>
#include <sstream>

namespace bredon {

const char* kConventionsVersion = "bi/ordered-degenerate/lex-reps/v1";

namespace {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_complex(const CochainComplex& c) {
    std::ostringstream os;
    os << c.max_degree << "#";
    for (int n = 0; n <= c.max_degree; ++n) {
        for (const auto& e : c.basis[n]) {
            for (int v : e.rep) os << v << ",";
            os << "/" << e.stabilizer.str() << ";";
        }
        os << "|";
    }
    for (const auto& d : c.differentials) os << d.matrix().str() << "|";
    std::ostringstream out;
    out << std::hex << fnv1a(os.str());
    return out.str();
}

} // namespace

Transport transport_to_rep(const Presentation& pres, const OrbitIndex& orbits,
                           const std::vector<BasisEntry>& basis, const VertexTuple& s,
                           const Subgroup& h) {
    auto it = orbits.locate.find(s);
    if (it == orbits.locate.end())
        throw Error("NO_ORBIT", "tuple is not an ordered simplex of the complex");
    auto [rep_id, g] = it->second;
    const GComplex& x = *pres.space();
    const BasisEntry& entry = basis[rep_id];

    int v0s = s.front();
    std::vector<int> gens;
    Subgroup at = h;
    if (g != x.group()->identity()) {
        gens.push_back(pres.twist_id(g, v0s, h));
        at = h.conjugate(g);
    }
    if (at != entry.stabilizer)
        gens.push_back(pres.relabel_id(entry.rep.front(), at, entry.stabilizer));

    ArrowWord word = gens.empty() ? pres.identity_word(pres.object_id(v0s, h))
                                  : pres.make_word(gens);
    if (word.target != entry.object)
        throw Error("NO_ORBIT", "transport word misses the representative object");
    return Transport{rep_id, word};
}

CochainComplex assemble_complex(const PresentationPtr& pres, CoeffPtr system, int max_dim) {
    if (system->presentation() != pres)
        throw Error("TYPE_MISMATCH", "system does not live on this presentation");
    const GComplexPtr& x = pres->space();
    if (!x->admissible()) throw Error("NOT_ADMISSIBLE", "assembly needs an admissible action");

    CochainComplex c;
    c.space = x;
    c.pres = pres;
    c.system = system;
    c.max_degree = max_dim + 1;

    for (int n = 0; n <= c.max_degree; ++n) {
        c.orbits.push_back(orbit_reps(*x, n, /*include_degenerate=*/true));
        std::vector<BasisEntry> entries;
        const OrbitIndex& idx = c.orbits.back();
        for (size_t i = 0; i < idx.reps.size(); ++i) {
            int obj = pres->object_id(idx.reps[i].front(), idx.stabilizers[i]);
            entries.push_back(BasisEntry{idx.reps[i], idx.stabilizers[i], obj});
        }
        std::vector<const AbelianGroup*> parts;
        for (const auto& e : entries) parts.push_back(&system->value(e.object));
        c.groups.push_back(direct_sum(parts));
        c.basis.push_back(std::move(entries));
    }

    for (int n = 0; n < c.max_degree; ++n) {
        IntMatrix big(c.groups[n + 1].group.generators(), c.groups[n].group.generators());
        for (size_t ri = 0; ri < c.basis[n + 1].size(); ++ri) {
            const BasisEntry& r = c.basis[n + 1][ri];
            const Subgroup& k = r.stabilizer;
            for (size_t j = 0; j < r.rep.size(); ++j) {
                VertexTuple face = r.rep;
                face.erase(face.begin() + j);
                Transport t = transport_to_rep(*pres, c.orbits[n], c.basis[n], face, k);
                IntMatrix block = system->evaluate(t.word).matrix();
                if (j == 0 && r.rep[0] != r.rep[1]) {
                    // Face zero moves the basepoint along the leading edge.
                    int e = pres->edge_step_id(r.rep[0], r.rep[1], k);
                    block = system->action(e).matrix() * block;
                }
                int sign = (j % 2 == 0) ? 1 : -1;
                int ro = c.groups[n + 1].offset[ri];
                int co = c.groups[n].offset[t.entry];
                for (int a = 0; a < block.rows(); ++a)
                    for (int bcol = 0; bcol < block.cols(); ++bcol)
                        big.at(ro + a, co + bcol) += sign * block.at(a, bcol);
            }
        }
        c.differentials.emplace_back(c.groups[n].group, c.groups[n + 1].group, std::move(big));
    }

    for (int n = 0; n + 1 < c.max_degree; ++n) {
        IntMatrix sq = c.differentials[n + 1].matrix() * c.differentials[n].matrix();
        for (int j = 0; j < sq.cols(); ++j)
            if (!c.groups[n + 2].group.contains_relation(sq.column_vec(j)))
                throw Error("DELTA_SQUARED_NONZERO",
                            "delta^2 != 0 at degree " + std::to_string(n));
    }

    c.content_hash = hash_complex(c);
    return c;
}

std::string CohomologyResult::str() const {
    std::ostringstream os;
    for (size_t n = 0; n < groups.size(); ++n)
        os << "H^" << n << " = " << groups[n].str() << "\n";
    return os.str();
}

CohomologyResult cohomology(const CochainComplex& c) {
    CohomologyResult out;
    out.complex_hash = c.content_hash;
    out.conventions = kConventionsVersion;
    for (int n = 0; n < c.max_degree; ++n) {
        AbelianHom d_in = n == 0 ? AbelianHom::zero(AbelianGroup::zero(), c.degree_group(0))
                                 : c.differentials[n - 1];
        out.groups.push_back(cohomology_at(d_in, c.differentials[n]));
    }
    return out;
}

std::vector<Subquotient> cohomology_spaces(const CochainComplex& c) {
    std::vector<Subquotient> out;
    for (int n = 0; n < c.max_degree; ++n) {
        AbelianHom d_in = n == 0 ? AbelianHom::zero(AbelianGroup::zero(), c.degree_group(0))
                                 : c.differentials[n - 1];
        out.push_back(cohomology_data(d_in, c.differentials[n]));
    }
    return out;
}

ChainMap make_chain_map(const CochainComplex& from, const CochainComplex& to,
                        std::vector<IntMatrix> blocks) {
    ChainMap f{&from, &to, std::move(blocks)};
    int degrees = static_cast<int>(f.blocks.size());
    for (int n = 0; n < degrees; ++n) {
        if (f.blocks[n].rows() != to.degree_group(n).generators() ||
            f.blocks[n].cols() != from.degree_group(n).generators())
            throw Error("CHAIN_MAP_BROKEN", "block shape mismatch at degree " + std::to_string(n));
        // Blocks must define homomorphisms of the degree groups.
        AbelianHom check(from.degree_group(n), to.degree_group(n), f.blocks[n]);
        (void)check;
    }
    for (int n = 0; n + 1 < degrees; ++n) {
        IntMatrix lhs = to.differentials[n].matrix() * f.blocks[n];
        IntMatrix rhs = f.blocks[n + 1] * from.differentials[n].matrix();
        IntMatrix diff = lhs - rhs;
        for (int j = 0; j < diff.cols(); ++j)
            if (!to.degree_group(n + 1).contains_relation(diff.column_vec(j)))
                throw Error("CHAIN_MAP_BROKEN",
                            "does not commute with the differential at degree " +
                                std::to_string(n));
    }
    return f;
}

ChainMap pullback_cochain_map(const EquivariantMap& phi, const CochainComplex& target_cplx,
                              const CochainComplex& source_cplx) {
    if (source_cplx.space != phi.source || target_cplx.space != phi.target)
        throw Error("TYPE_MISMATCH", "complexes do not match the map");
    int degrees = std::min(source_cplx.max_degree, target_cplx.max_degree) + 1;
    std::vector<IntMatrix> blocks;
    for (int n = 0; n < degrees; ++n) {
        IntMatrix big(source_cplx.degree_group(n).generators(),
                      target_cplx.degree_group(n).generators());
        for (size_t i = 0; i < source_cplx.basis[n].size(); ++i) {
            const BasisEntry& e = source_cplx.basis[n][i];
            VertexTuple image;
            for (int v : e.rep) image.push_back(phi.vertex_map[v]);
            Subgroup img_stab = phi.hom.map_subgroup(e.stabilizer);
            Transport t = transport_to_rep(*target_cplx.pres, target_cplx.orbits[n],
                                           target_cplx.basis[n], image, img_stab);
            IntMatrix block = target_cplx.system->evaluate(t.word).matrix();
            int ro = source_cplx.groups[n].offset[i];
            int co = target_cplx.groups[n].offset[t.entry];
            for (int a = 0; a < block.rows(); ++a)
                for (int b = 0; b < block.cols(); ++b) big.at(ro + a, co + b) = block.at(a, b);
        }
        blocks.push_back(std::move(big));
    }
    return make_chain_map(target_cplx, source_cplx, std::move(blocks));
}

ChainMap coefficient_change_map(const NaturalTransformation& nt, const CochainComplex& from,
                                const CochainComplex& to) {
    if (from.pres != to.pres)
        throw Error("TYPE_MISMATCH", "complexes live on different presentations");
    int degrees = std::min(from.max_degree, to.max_degree) + 1;
    std::vector<IntMatrix> blocks;
    for (int n = 0; n < degrees; ++n) {
        IntMatrix big(to.degree_group(n).generators(), from.degree_group(n).generators());
        for (size_t i = 0; i < from.basis[n].size(); ++i) {
            const IntMatrix& comp = nt.components[from.basis[n][i].object].matrix();
            int ro = to.groups[n].offset[i];
            int co = from.groups[n].offset[i];
            for (int a = 0; a < comp.rows(); ++a)
                for (int b = 0; b < comp.cols(); ++b) big.at(ro + a, co + b) = comp.at(a, b);
        }
        blocks.push_back(std::move(big));
    }
    return make_chain_map(from, to, std::move(blocks));
}

InducedMaps induced_cohomology_map(const ChainMap& f) {
    std::vector<Subquotient> src = cohomology_spaces(*f.from);
    std::vector<Subquotient> dst = cohomology_spaces(*f.to);
    int degrees = std::min({static_cast<int>(f.blocks.size()) - 1,
                            static_cast<int>(src.size()), static_cast<int>(dst.size())});
    InducedMaps out;
    out.all_iso = true;
    for (int n = 0; n < degrees; ++n) {
        out.maps.push_back(induced_on_subquotient(src[n], dst[n], f.blocks[n]));
        out.iso.push_back(is_isomorphism(out.maps.back()));
        out.all_iso = out.all_iso && out.iso.back();
    }
    return out;
}

MoritaReport verify_morita(const Bibundle& b, const CoefficientSystem& a_right, int max_dim) {
    BiprincipalityReport bp = check_biprincipal(b);
    if (!bp.pass)
        throw Error("NOT_BIPRINCIPAL",
                    bp.failures.empty() ? "bibundle is not biprincipal" : bp.failures.front());

    PresentationPtr right_pres = a_right.presentation();
    if (right_pres->space() != b.right)
        throw Error("TYPE_MISMATCH", "system presentation is not on the right space");
    PresentationPtr left_pres = build_presentation(b.left);
    PresentationPtr total_pres = build_presentation(b.total);

    auto [lambda_map, rho_map] = legs_as_functors(b);
    PresFunctor pi_lambda = induced_functor(lambda_map, total_pres, left_pres);
    PresFunctor pi_rho = induced_functor(rho_map, total_pres, right_pres);

    CoeffPtr rho_star = pullback_system(pi_rho, a_right);
    SectionFunctor sigma = sigma_right_inverse(b, left_pres, total_pres);
    CoeffPtr push = pushforward_system(sigma, *rho_star);
    CoeffPtr lambda_star_push = pullback_system(pi_lambda, *push);

    CochainComplex c_left = assemble_complex(left_pres, push, max_dim);
    CochainComplex c_right = assemble_complex(right_pres,
                                              std::make_shared<CoefficientSystem>(a_right),
                                              max_dim);
    CochainComplex c_total_push = assemble_complex(total_pres, lambda_star_push, max_dim);
    CochainComplex c_total_rho = assemble_complex(total_pres, rho_star, max_dim);

    ChainMap lambda_pull = pullback_cochain_map(lambda_map, c_left, c_total_push);
    ChainMap rho_pull = pullback_cochain_map(rho_map, c_right, c_total_rho);

    MoritaReport rep;
    rep.max_dim = max_dim;
    NaturalIsoResult eta = check_natural_iso(
        *lambda_star_push, *rho_star,
        roundtrip_components(b, sigma, *lambda_star_push, *rho_star));
    rep.natural_iso_ok = eta.iso.has_value();
    rep.natural_iso_failure = eta.failure;

    InducedMaps lam = induced_cohomology_map(lambda_pull);
    InducedMaps rho = induced_cohomology_map(rho_pull);
    rep.lambda_iso = lam.iso;
    rep.rho_iso = rho.iso;

    bool eta_iso = rep.natural_iso_ok;
    if (rep.natural_iso_ok) {
        ChainMap eta_map = coefficient_change_map(*eta.iso, c_total_push, c_total_rho);
        eta_iso = induced_cohomology_map(eta_map).all_iso;
    }

    rep.left_cohomology = cohomology(c_left).groups;
    rep.right_cohomology = cohomology(c_right).groups;

    rep.isomorphic = rep.natural_iso_ok && eta_iso && lam.all_iso && rho.all_iso;
    for (int n = 0; n <= max_dim && rep.isomorphic; ++n)
        rep.isomorphic = rep.left_cohomology[n] == rep.right_cohomology[n];
    return rep;
}

CohomologyResult orbit_space_cohomology(const GComplexPtr& x, int max_dim) {
    PresentationPtr pres = build_presentation(x);
    return cohomology(assemble_complex(pres, constant_system(pres, AbelianGroup::free(1)),
                                       max_dim));
}

} // namespace bredon
