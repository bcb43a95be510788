#include "sac/trace.hpp"

#include "json.hpp"

#include <algorithm>
#include <sstream>

namespace sac {

std::string_view to_string(RegistryKind kind)
{
    switch (kind) {
    case RegistryKind::Hazards: return "hazards";
    case RegistryKind::RegulatoryRequirements: return "regulatory_requirements";
    case RegistryKind::NormativeRequirements: return "normative_requirements";
    case RegistryKind::RiskAcceptanceCriteria: return "risk_acceptance_criteria";
    }
    return "?";
}

RegistryKind registry_from_string(std::string_view name)
{
    for (const RegistryKind k : {RegistryKind::Hazards, RegistryKind::RegulatoryRequirements,
                                 RegistryKind::NormativeRequirements, RegistryKind::RiskAcceptanceCriteria}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw UnknownRegistryError(std::string(name));
}

ArgumentType covering_argument(RegistryKind kind)
{
    switch (kind) {
    case RegistryKind::RegulatoryRequirements: return ArgumentType::Compliance;
    case RegistryKind::NormativeRequirements: return ArgumentType::Conformance;
    case RegistryKind::Hazards:
    case RegistryKind::RiskAcceptanceCriteria: return ArgumentType::Product;
    }
    return ArgumentType::Product;
}

namespace {

std::vector<std::string> item_ids(const Registries& reg, RegistryKind kind)
{
    std::vector<std::string> out;
    auto collect = [&](const auto& items) {
        for (const auto& item : items) {
            out.push_back(item.id);
        }
    };
    switch (kind) {
    case RegistryKind::Hazards: collect(reg.hazards); break;
    case RegistryKind::RegulatoryRequirements: collect(reg.regulatory_requirements); break;
    case RegistryKind::NormativeRequirements: collect(reg.normative_requirements); break;
    case RegistryKind::RiskAcceptanceCriteria: collect(reg.risk_acceptance_criteria); break;
    }
    return out;
}

}  // namespace

TraceMatrix trace_registry(const LinkedModel& model, RegistryKind registry)
{
    using Index = LinkedModel::Index;
    TraceMatrix matrix;
    matrix.registry_name = std::string(to_string(registry));
    const ArgumentType argument = covering_argument(registry);
    const bool needs_role = registry == RegistryKind::Hazards;

    // item id -> covering element indices
    std::unordered_map<std::string, std::vector<Index>> covering;
    for (Index i = 0; i < model.size(); ++i) {
        const GsnElement& e = model.element(i);
        if (e.traces.empty() || !model.argument_types(i).contains(argument)) {
            continue;
        }
        if (needs_role && !e.has_role(RoleTag::HazardManagement)) {
            continue;
        }
        for (const auto& item : e.traces) {
            covering[item].push_back(i);
        }
    }

    std::size_t covered = 0;
    for (const auto& item : item_ids(model.model().registries, registry)) {
        TraceRow row;
        row.item_id = item;
        if (const auto it = covering.find(item); it != covering.end()) {
            for (Index i : it->second) {
                row.covering_elements.push_back(model.element(i).id);
                if (model.has_solution_descendant(i)) {
                    row.solution_backed = true;
                } else {
                    row.unbacked_elements.push_back(model.element(i).id);
                }
            }
            std::sort(row.covering_elements.begin(), row.covering_elements.end());
            std::sort(row.unbacked_elements.begin(), row.unbacked_elements.end());
            ++covered;
        }
        matrix.rows.push_back(std::move(row));
    }
    matrix.vacuous = matrix.rows.empty();
    matrix.coverage = matrix.vacuous ? 1.0
                                     : static_cast<double>(covered) / static_cast<double>(matrix.rows.size());
    return matrix;
}

TraceMatrix trace_registry(const LinkedModel& model, std::string_view registry_name)
{
    return trace_registry(model, registry_from_string(registry_name));
}

AcpReport acp_report(const LinkedModel& model)
{
    using Index = LinkedModel::Index;
    AcpReport report;
    std::set<std::string> linked_goals;
    for (Index i = 0; i < model.size(); ++i) {
        const GsnElement& e = model.element(i);
        report.total_acps += e.acps.size();
        for (const auto& acp : e.acps) {
            linked_goals.insert(acp.confidence_goal);
        }
        if (!model.argument_types(i).contains(ArgumentType::Risk)) {
            continue;
        }
        for (const auto& child : e.supported_by) {
            ++report.risk_edges;
            const bool has_acp = std::any_of(e.acps.begin(), e.acps.end(), [&](const AssuranceClaimPoint& a) {
                return a.relation == Relation::SupportedBy && a.target == child;
            });
            if (has_acp) {
                ++report.risk_edges_with_acp;
            }
        }
    }
    report.acp_density = report.risk_edges == 0 ? 0.0
                                                : static_cast<double>(report.risk_edges_with_acp) /
                                                      static_cast<double>(report.risk_edges);
    for (Index i = 0; i < model.size(); ++i) {
        const GsnElement& e = model.element(i);
        if (e.kind != ElementKind::Goal || !model.argument_types(i).contains(ArgumentType::Confidence) ||
            linked_goals.contains(e.id)) {
            continue;
        }
        const auto& parents = model.parents(i);
        const bool inside_fragment = std::any_of(parents.begin(), parents.end(), [&](Index p) {
            return model.argument_types(p).contains(ArgumentType::Confidence);
        });
        if (!inside_fragment) {
            report.unlinked_confidence_goals.push_back(e.id);
        }
    }
    std::sort(report.unlinked_confidence_goals.begin(), report.unlinked_confidence_goals.end());
    return report;
}

EvidenceReport evidence_report(const LinkedModel& model)
{
    EvidenceReport report;
    std::unordered_map<std::string, ArtifactRole> roles;
    for (const Artifact& a : model.model().artifacts) {
        roles.emplace(a.id, a.role);
    }
    for (LinkedModel::Index i = 0; i < model.size(); ++i) {
        const GsnElement& e = model.element(i);
        if (e.kind == ElementKind::Solution) {
            ++report.solutions_total;
            const bool has_evidence = std::any_of(e.artifacts.begin(), e.artifacts.end(), [&](const std::string& a) {
                const auto it = roles.find(a);
                return it != roles.end() && it->second == ArtifactRole::Evidence;
            });
            if (!has_evidence) {
                report.solutions_without_artifacts.push_back(e.id);
            }
        }
        if (e.kind == ElementKind::Goal && e.undeveloped) {
            report.undeveloped_goals.push_back(e.id);
        }
    }
    std::sort(report.solutions_without_artifacts.begin(), report.solutions_without_artifacts.end());
    std::sort(report.undeveloped_goals.begin(), report.undeveloped_goals.end());
    return report;
}

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string trace_matrix_csv(const TraceMatrix& matrix)
{
    std::ostringstream out;
    out << "item_id,covered,solution_backed,covering_elements\n";
    for (const auto& row : matrix.rows) {
        std::string elements;
        for (const auto& e : row.covering_elements) {
            elements += (elements.empty() ? "" : ";") + e;
        }
        out << csv_field(row.item_id) << ',' << (row.covered() ? "true" : "false") << ','
            << (row.solution_backed ? "true" : "false") << ',' << csv_field(elements) << '\n';
    }
    return out.str();
}

std::string trace_matrix_json(const TraceMatrix& matrix)
{
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : matrix.rows) {
        rows.push_back({
            {"item_id", row.item_id},
            {"covered", row.covered()},
            {"solution_backed", row.solution_backed},
            {"covering_elements", row.covering_elements},
            {"unbacked_elements", row.unbacked_elements},
        });
    }
    nlohmann::ordered_json out = {
        {"registry", matrix.registry_name},
        {"coverage", matrix.coverage},
        {"vacuous", matrix.vacuous},
        {"rows", rows},
    };
    return out.dump(2) + "\n";
}

}  // namespace sac
