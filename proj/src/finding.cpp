#include "sac/finding.hpp"

#include <algorithm>
#include <tuple>

namespace sac {

std::string_view to_string(Severity s)
{
    switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Info: return "info";
    }
    return "?";
}

std::optional<Severity> severity_from_string(std::string_view s)
{
    if (s == "error") {
        return Severity::Error;
    }
    if (s == "warning") {
        return Severity::Warning;
    }
    if (s == "info") {
        return Severity::Info;
    }
    return std::nullopt;
}

const std::vector<RuleDescriptor>& rule_catalog()
{
    using enum Severity;
    constexpr std::string_view kGsn = "Goal Structuring Notation";
    static const std::vector<RuleDescriptor> catalog{
        {"WF1", "Acyclic support", Error, kGsn,
         "The supported_by relation must not contain cycles."},
        {"WF2", "Unique identifiers", Error, kGsn,
         "Element identifiers are unique across all modules."},
        {"WF3", "Resolved references", Error, kGsn,
         "Every supported_by, in_context_of and assurance claim point reference names an existing element."},
        {"WF4", "Legal support target", Error, kGsn,
         "A goal may be supported by goals, strategies and solutions; a strategy only by goals and solutions."},
        {"WF5", "Solutions are leaves", Error, kGsn,
         "Solutions carry no supported_by or in_context_of relations."},
        {"WF6", "Contextual elements via in_context_of", Error, kGsn,
         "Contexts, assumptions and justifications are only targets of in_context_of, and in_context_of only targets them."},
        {"WF7", "Single root per module", Warning, kGsn,
         "Each module has at most one element not supported from within the module."},
        {"WF8", "Undeveloped elements have no support", Error, kGsn,
         "An element marked undeveloped has an empty supported_by list."},

        {"R1", "Risk argument", Error, "risk argument that argues over risk reduction",
         "A risk argument exists and its topmost elements are reachable from the global root goal."},
        {"R2", "Distributed confidence argument", Error,
         "why elements or their assertion in the risk argument should be trusted",
         "Every assurance claim point links a goal of the confidence argument; the risk argument should carry assurance claim points."},
        {"R3", "Compliance argument", Error, "adherence to regulatory requirements",
         "Each regulatory requirement is traced from the compliance argument by an element backed by a solution."},
        {"R4", "Conformance argument", Error,
         "adherence to normative requirements; rationale for selecting normative documents",
         "Each normative requirement is traced from the conformance argument by an element backed by a solution, and the selection of normative documents is justified."},
        {"R5", "Product and process arguments", Error,
         "risk argument comprising a product argument and a process argument",
         "Product and process arguments exist and lie within the risk argument."},
        {"R6", "Hazard management", Error, "hazards are managed by adequate measures",
         "Each hazard is managed and traced from a hazard-management element of the product argument backed by a solution."},
        {"R7", "System lifecycle", Error,
         "system lifecycle considerations, including operational aspects; post-deployment activities",
         "The process argument covers operation and maintenance lifecycle phases."},
        {"R8", "Safety culture", Error, "establishment of a safety culture",
         "The process argument contains a safety-culture element backed by a solution."},
        {"R9", "Contextualization argument", Error,
         "contextualization argument addressing relevant context dimensions",
         "A contextualization argument references a context document for every declared context dimension."},
        {"R10", "Soundness argument", Error, "soundness argument that argues over applied methods",
         "A soundness argument covers uncertainty-handling methods and, when assurance claim points are used, their rationale."},

        {"ST1", "Conformance and compliance under process", Warning,
         "Subordinating the conformity and compliance argument to the process argument",
         "Conformance and compliance arguments are placed below the process argument."},
        {"D1", "Risk acceptance criteria strands", Error,
         "defined in accordance with stakeholder expectations, evaluated to be met, and be maintained",
         "Global and scenario-based risk acceptance criteria exist and each is defined, evaluated and maintained in the product argument."},
        {"D2", "Known and unknown scenarios", Error,
         "residual risk in known and unknown scenarios",
         "The product argument addresses both known and unknown scenarios."},
        {"TL1", "Top-level claim wording", Info,
         "absence of unreasonable risk as a favorable top-level claim",
         "The global root goal claims absence of unreasonable risk."},
        {"EV1", "Evidence linkage", Error,
         "documentation associated with evidence and context elements",
         "Every solution references at least one evidence artifact."},
    };
    return catalog;
}

const RuleDescriptor* find_rule(std::string_view id)
{
    const auto& catalog = rule_catalog();
    const auto it = std::find_if(catalog.begin(), catalog.end(),
                                 [&](const RuleDescriptor& d) { return d.id == id; });
    return it == catalog.end() ? nullptr : &*it;
}

std::size_t rule_ordinal(std::string_view id)
{
    const auto& catalog = rule_catalog();
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        if (catalog[i].id == id) {
            return i;
        }
    }
    return catalog.size();
}

void sort_findings(std::vector<Finding>& findings)
{
    static const std::string none;
    std::stable_sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
        const auto& ea = a.elements.empty() ? none : a.elements.front();
        const auto& eb = b.elements.empty() ? none : b.elements.front();
        return std::forward_as_tuple(rule_ordinal(a.rule), a.rule, ea, a.message) <
               std::forward_as_tuple(rule_ordinal(b.rule), b.rule, eb, b.message);
    });
}

SeverityCounts count_by_severity(const std::vector<Finding>& findings)
{
    SeverityCounts counts;
    for (const auto& f : findings) {
        switch (f.severity) {
        case Severity::Error: ++counts.errors; break;
        case Severity::Warning: ++counts.warnings; break;
        case Severity::Info: ++counts.infos; break;
        }
    }
    return counts;
}

}  // namespace sac
