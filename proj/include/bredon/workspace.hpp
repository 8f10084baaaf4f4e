#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bredon/cochain.hpp"

namespace bredon {

/// Parsed workspace document: named groups, complexes, actions, functors,
/// coefficient systems and bibundles, with all cross-references resolved.
/// The document format is JSON with a versioned "format" field.
class Workspace {
public:
    /// Parses and validates every entity. With repair_admissibility,
    /// actions failing admissibility are barycentrically subdivided (at
    /// most twice); otherwise they are rejected.
    static Workspace parse(const nlohmann::json& doc, bool repair_admissibility = false);
    static Workspace parse_file(const std::string& path, bool repair_admissibility = false);

    const GroupPtr& group(const std::string& name) const;
    const GComplexPtr& action(const std::string& name) const;
    const EquivariantMap& functor(const std::string& name) const;
    const Bibundle& bibundle(const std::string& name) const;
    CoeffPtr system(const std::string& name) const;
    /// Name of the action a system lives on.
    const std::string& system_action(const std::string& name) const;
    const PresentationPtr& presentation_of(const std::string& action_name) const;

    std::vector<std::string> action_names() const;
    /// Per-action note from parsing ("admissible" or "subdivided n times").
    const std::map<std::string, std::string>& action_notes() const { return notes_; }

    int vertex_index(const std::string& action_name, const std::string& vertex) const;

    /// Serializes back to a normalized document; parse . serialize is the
    /// identity on already-normalized documents.
    nlohmann::json serialize() const;

private:
    nlohmann::json doc_;
    std::map<std::string, GroupPtr> groups_;
    std::map<std::string, GComplexPtr> actions_;
    std::map<std::string, PresentationPtr> presentations_;
    std::map<std::string, EquivariantMap> functors_;
    std::map<std::string, CoeffPtr> systems_;
    std::map<std::string, std::string> system_actions_;
    std::map<std::string, Bibundle> bibundles_;
    std::map<std::string, std::string> notes_;
};

/// "Z", "Z^2", "Z/2 + Z^2", "0" -> presented group, and back.
AbelianGroup parse_abelian(const std::string& text);

/// Serializes a coefficient system as an explicit-mode document fragment:
/// nonzero values plus the actions between nonzero objects (forced actions
/// are omitted).
nlohmann::json serialize_system(const CoefficientSystem& a, const std::string& action_name);

} // namespace bredon
