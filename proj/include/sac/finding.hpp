#pragma once

#include "sac/model.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sac {

enum class Severity : std::uint8_t { Error, Warning, Info };

/// Lowercase name: error | warning | info.
[[nodiscard]] std::string_view to_string(Severity s);
[[nodiscard]] std::optional<Severity> severity_from_string(std::string_view s);

struct Finding
{
    std::string rule;
    Severity severity = Severity::Error;
    std::string message;
    std::vector<std::string> elements;
    std::optional<SourceLocation> location;

    bool operator==(const Finding&) const = default;
};

struct RuleDescriptor
{
    std::string_view id;
    std::string_view title;
    Severity default_severity;
    std::string_view anchor;  // exported as "paper_anchor"
    std::string_view description;
};

/// All registered rules in canonical order: WF1..WF8, R1..R10, ST1, D1, D2, TL1, EV1.
[[nodiscard]] const std::vector<RuleDescriptor>& rule_catalog();
[[nodiscard]] const RuleDescriptor* find_rule(std::string_view id);
/// Position in the catalog; unknown ids sort last.
[[nodiscard]] std::size_t rule_ordinal(std::string_view id);

class UnknownRuleError : public std::invalid_argument
{
public:
    explicit UnknownRuleError(const std::string& id)
        : std::invalid_argument("unknown rule id '" + id + "'")
    {}
};

/// Sort by rule ordinal, then first element id, then message.
void sort_findings(std::vector<Finding>& findings);

struct SeverityCounts
{
    std::size_t errors = 0;
    std::size_t warnings = 0;
    std::size_t infos = 0;
};

[[nodiscard]] SeverityCounts count_by_severity(const std::vector<Finding>& findings);

}  // namespace sac
