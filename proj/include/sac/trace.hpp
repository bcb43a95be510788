#pragma once

#include "sac/model.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sac {

enum class RegistryKind : std::uint8_t { Hazards, RegulatoryRequirements, NormativeRequirements, RiskAcceptanceCriteria };

[[nodiscard]] std::string_view to_string(RegistryKind kind);
/// Throws UnknownRegistryError.
[[nodiscard]] RegistryKind registry_from_string(std::string_view name);

/// Argument whose elements may cover items of the registry.
[[nodiscard]] ArgumentType covering_argument(RegistryKind kind);

class UnknownRegistryError : public std::invalid_argument
{
public:
    explicit UnknownRegistryError(const std::string& name)
        : std::invalid_argument("unknown registry '" + name +
                                "' (expected hazards, regulatory_requirements, normative_requirements or "
                                "risk_acceptance_criteria)")
    {}
};

struct TraceRow
{
    std::string item_id;
    std::vector<std::string> covering_elements;  // sorted
    /// Covering elements with no solution below them; sorted.
    std::vector<std::string> unbacked_elements;
    bool solution_backed = false;

    [[nodiscard]] bool covered() const { return !covering_elements.empty(); }
    bool operator==(const TraceRow&) const = default;
};

struct TraceMatrix
{
    std::string registry_name;
    std::vector<TraceRow> rows;
    double coverage = 1.0;
    bool vacuous = true;

    bool operator==(const TraceMatrix&) const = default;
};

/// Rows follow registry order. Covering elements are members of the
/// registry's argument (hazards and risk acceptance criteria: product;
/// regulatory: compliance; normative: conformance) that trace the item.
/// Hazards are only covered by elements with the hazard_management role.
[[nodiscard]] TraceMatrix trace_registry(const LinkedModel& model, RegistryKind registry);
[[nodiscard]] TraceMatrix trace_registry(const LinkedModel& model, std::string_view registry_name);

struct AcpReport
{
    std::size_t total_acps = 0;
    std::size_t risk_edges = 0;
    std::size_t risk_edges_with_acp = 0;
    double acp_density = 0.0;
    std::vector<std::string> unlinked_confidence_goals;
};

/// Risk edges are supported_by edges whose source belongs to the risk
/// argument. A confidence goal counts as unlinked when no ACP names it and
/// no confidence-typed element supports it (it heads a dangling fragment).
[[nodiscard]] AcpReport acp_report(const LinkedModel& model);

struct EvidenceReport
{
    std::size_t solutions_total = 0;
    std::vector<std::string> solutions_without_artifacts;
    std::vector<std::string> undeveloped_goals;
};

[[nodiscard]] EvidenceReport evidence_report(const LinkedModel& model);

[[nodiscard]] std::string trace_matrix_csv(const TraceMatrix& matrix);
[[nodiscard]] std::string trace_matrix_json(const TraceMatrix& matrix);

}  // namespace sac
