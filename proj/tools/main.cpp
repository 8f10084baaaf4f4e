#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <set>

#include "bredon/workspace.hpp"

using namespace bredon;
using nlohmann::json;

namespace {

// 1 = validation problems, 2 = computation failures, 3 = verification failed.
int exit_code_for(const Error& e) {
    static const std::set<std::string> validation{
        "PARSE",          "NOT_CLOSED_UNDER_FACES", "NOT_SIMPLICIAL_ACTION",
        "NOT_HOMOMORPHIC", "NOT_ADMISSIBLE",         "NOT_SUBGROUP",
        "HOM_INVALID",    "TYPE_MISMATCH",          "RELATION_VIOLATED",
        "NOT_EQUIVARIANT", "NONABELIAN_UNSUPPORTED", "NOT_COMPOSABLE",
        "STILL_NOT_ADMISSIBLE_AFTER_2"};
    if (e.code() == "NOT_BIPRINCIPAL") return 3;
    return validation.count(e.code()) ? 1 : 2;
}

json cohomology_json(const CohomologyResult& r) {
    json degrees = json::array();
    for (size_t n = 0; n < r.groups.size(); ++n) {
        json factors = json::array();
        for (const auto& d : r.groups[n].invariant_factors()) factors.push_back(d.get_si());
        degrees.push_back(json{{"degree", n},
                               {"free_rank", r.groups[n].free_rank()},
                               {"invariant_factors", factors},
                               {"text", r.groups[n].str()}});
    }
    return json{{"format", 1},
                {"cohomology", degrees},
                {"complex_hash", r.complex_hash},
                {"conventions", r.conventions}};
}

void print_cohomology(const CohomologyResult& r) {
    std::cout << r.str();
    std::cout << "# complex " << r.complex_hash << " conventions " << r.conventions << "\n";
}

int default_max_dim(const GComplexPtr& x) { return x->complex().dim() + 1; }

int cmd_validate(const std::string& file, bool subdivide) {
    Workspace w = Workspace::parse_file(file, subdivide);
    for (const auto& name : w.action_names())
        std::cout << "action " << name << ": OK (" << w.action_notes().at(name) << ")\n";
    std::cout << "OK\n";
    return 0;
}

int cmd_cohomology(const std::string& file, const std::string& action,
                   const std::string& system, int max_dim, const std::string& json_out) {
    Workspace w = Workspace::parse_file(file);
    CoeffPtr a = w.system(system);
    if (w.system_action(system) != action)
        throw Error("TYPE_MISMATCH", "system '" + system + "' lives on action '" +
                                         w.system_action(system) + "'");
    const GComplexPtr& x = w.action(action);
    if (max_dim < 0) max_dim = default_max_dim(x);
    CohomologyResult r = cohomology(assemble_complex(a->presentation(), a, max_dim));
    print_cohomology(r);
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        out << cohomology_json(r).dump(2) << "\n";
    }
    return 0;
}

int cmd_pullback(const std::string& file, const std::string& functor,
                 const std::string& system, const std::string& out_path) {
    Workspace w = Workspace::parse_file(file);
    const EquivariantMap& phi = w.functor(functor);
    CoeffPtr a = w.system(system);
    std::string target_action, source_action;
    for (const auto& name : w.action_names()) {
        if (w.action(name) == phi.target) target_action = name;
        if (w.action(name) == phi.source) source_action = name;
    }
    if (w.system_action(system) != target_action)
        throw Error("TYPE_MISMATCH", "system must live on the functor's target action");

    PresFunctor f = induced_functor(phi, w.presentation_of(source_action),
                                    w.presentation_of(target_action));
    CoeffPtr pulled = pullback_system(f, *a);
    json doc = serialize_system(*pulled, source_action);
    if (out_path.empty())
        std::cout << doc.dump(2) << "\n";
    else {
        std::ofstream out(out_path);
        out << doc.dump(2) << "\n";
    }
    std::cout << "pullback of " << system << " along " << functor << ": OK\n";
    return 0;
}

int cmd_pushforward(const std::string& file, const std::string& bundle,
                    const std::string& system, std::vector<int> sections) {
    Workspace w = Workspace::parse_file(file);
    const Bibundle& b = w.bibundle(bundle);
    CoeffPtr a = w.system(system);
    if (w.action(w.system_action(system)) != b.right)
        throw Error("TYPE_MISMATCH", "system must live on the bibundle's right action");
    std::string left_action;
    for (const auto& name : w.action_names())
        if (w.action(name) == b.left) left_action = name;

    PresentationPtr base = w.presentation_of(left_action);
    PresentationPtr total = build_presentation(b.total);
    auto [lam, rho] = legs_as_functors(b);
    (void)lam;
    PresFunctor pi_rho = induced_functor(rho, total, a->presentation());
    CoeffPtr rho_star = pullback_system(pi_rho, *a);

    if (sections.empty()) sections.push_back(0);
    std::vector<SectionFunctor> sigmas;
    std::vector<CoeffPtr> pushed;
    for (size_t i = 0; i < sections.size(); ++i) {
        sigmas.push_back(sigma_right_inverse(b, base, total, sections[i]));
        pushed.push_back(pushforward_system(sigmas.back(), *rho_star));
        std::cout << "# section " << sections[i] << "\n";
        std::cout << serialize_system(*pushed.back(), left_action).dump(2) << "\n";
    }
    for (size_t i = 1; i < pushed.size(); ++i) {
        auto comps = section_change_components(b, sigmas[0], sigmas[i], *pushed[0], *pushed[i],
                                               *rho_star);
        NaturalIsoResult res = check_natural_iso(*pushed[0], *pushed[i], comps);
        std::cout << "naturally isomorphic: " << (res.iso ? "yes" : "no") << "\n";
        if (!res.iso) {
            std::cout << "  " << res.failure << "\n";
            return 3;
        }
    }
    return 0;
}

int cmd_check_biprincipal(const std::string& file, const std::string& bundle) {
    Workspace w = Workspace::parse_file(file);
    BiprincipalityReport rep = check_biprincipal(w.bibundle(bundle));
    if (rep.pass) {
        std::cout << "PASS: bibundle " << bundle << " is biprincipal\n";
        return 0;
    }
    for (const auto& f : rep.failures) std::cout << "FAIL: " << f << "\n";
    return 3;
}

int cmd_verify_morita(const std::string& file, const std::string& bundle,
                      const std::string& system, int max_dim) {
    Workspace w = Workspace::parse_file(file);
    const Bibundle& b = w.bibundle(bundle);
    CoeffPtr a = w.system(system);
    if (w.action(w.system_action(system)) != b.right)
        throw Error("TYPE_MISMATCH", "system must live on the bibundle's right action");
    if (max_dim < 0)
        max_dim = std::max(default_max_dim(b.left), default_max_dim(b.right));

    MoritaReport rep = verify_morita(b, *a, max_dim);
    std::cout << "biprincipal: yes\n";
    std::cout << "pushforward certificate (pullback of pushforward vs original): "
              << (rep.natural_iso_ok ? "naturally isomorphic" : rep.natural_iso_failure) << "\n";
    for (int n = 0; n <= rep.max_dim; ++n) {
        std::cout << "H^" << n << ": left = " << rep.left_cohomology[n].str()
                  << ", right = " << rep.right_cohomology[n].str() << " [lambda* "
                  << (rep.lambda_iso[n] ? "iso" : "NOT iso") << ", rho* "
                  << (rep.rho_iso[n] ? "iso" : "NOT iso") << "]\n";
    }
    if (rep.isomorphic) {
        std::cout << "ISOMORPHIC through degree " << rep.max_dim << "\n";
        return 0;
    }
    std::cout << "NOT ISOMORPHIC\n";
    return 3;
}

int cmd_fundcat_dump(const std::string& file, const std::string& action) {
    Workspace w = Workspace::parse_file(file);
    const PresentationPtr& pres = w.presentation_of(action);
    std::cout << "objects (" << pres->object_count() << "):\n";
    for (int o = 0; o < pres->object_count(); ++o)
        std::cout << "  " << pres->object_str(o) << "\n";
    int edges = 0, relabels = 0, twists = 0;
    for (int i = 0; i < pres->generator_count(); ++i) {
        switch (pres->generator(i).kind) {
        case GenKind::EdgeStep: ++edges; break;
        case GenKind::Relabel: ++relabels; break;
        case GenKind::Twist: ++twists; break;
        }
    }
    std::cout << "generators (" << pres->generator_count() << "): " << edges << " edge steps, "
              << relabels << " relabels, " << twists << " twists\n";
    for (int i = 0; i < pres->generator_count(); ++i)
        std::cout << "  " << pres->generator_str(i) << "\n";
    std::cout << "relations: " << pres->relations().size() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact twisted equivariant cohomology of finite group actions"};
    app.require_subcommand(1);

    std::string file, action, system, functor, bundle, json_out, out_path;
    int max_dim = -1;
    bool subdivide = false;
    std::vector<int> sections;

    auto* validate = app.add_subcommand("validate", "Parse and validate a workspace document");
    validate->add_option("file", file)->required();
    validate->add_flag("--subdivide", subdivide,
                       "repair non-admissible actions by barycentric subdivision");

    auto* coh = app.add_subcommand("cohomology", "Twisted cohomology of an action");
    coh->add_option("file", file)->required();
    coh->add_option("--action", action)->required();
    coh->add_option("--system", system)->required();
    coh->add_option("--max-dim", max_dim);
    coh->add_option("--json", json_out, "also write a machine-readable report");

    auto* pull = app.add_subcommand("pullback", "Pull a system back along a functor");
    pull->add_option("file", file)->required();
    pull->add_option("--functor", functor)->required();
    pull->add_option("--system", system)->required();
    pull->add_option("--out", out_path, "write the resulting system document here");

    auto* push = app.add_subcommand("pushforward",
                                    "Push a right-hand system across a bibundle's lambda leg");
    push->add_option("file", file)->required();
    push->add_option("--bibundle", bundle)->required();
    push->add_option("--system", system)->required();
    push->add_option("--section", sections,
                     "fiber-point selector; pass twice to compare two sections");

    auto* bip = app.add_subcommand("check-biprincipal", "Certify biprincipality of a bibundle");
    bip->add_option("file", file)->required();
    bip->add_option("--bibundle", bundle)->required();

    auto* morita = app.add_subcommand("verify-morita",
                                      "Certify invariance of cohomology across a bibundle");
    morita->add_option("file", file)->required();
    morita->add_option("--bibundle", bundle)->required();
    morita->add_option("--system", system)->required();
    morita->add_option("--max-dim", max_dim);

    auto* dump = app.add_subcommand("fundcat-dump", "Print the fundamental category presentation");
    dump->add_option("file", file)->required();
    dump->add_option("--action", action)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(file, subdivide);
        if (coh->parsed()) return cmd_cohomology(file, action, system, max_dim, json_out);
        if (pull->parsed()) return cmd_pullback(file, functor, system, out_path);
        if (push->parsed()) return cmd_pushforward(file, bundle, system, sections);
        if (bip->parsed()) return cmd_check_biprincipal(file, bundle);
        if (morita->parsed()) return cmd_verify_morita(file, bundle, system, max_dim);
        if (dump->parsed()) return cmd_fundcat_dump(file, action);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
