/**
 * @file rules.hpp
 * @brief Structural requirement rules over a linked argumentation model.
 *
 * Rules are checked against explicit annotations (argument types, role tags
 * and trace links); claim prose is never interpreted, apart from the
 * advisory TL1 phrase check.
 */
#pragma once

#include "sac/finding.hpp"
#include "sac/model.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sac {

struct RuleProfile
{
    std::string name;
    std::set<std::string> enabled_rules;
    std::map<std::string, Severity> severity_overrides;

    /// "core" | "instantiation" | "gsn-wf" | "all". Throws std::invalid_argument otherwise.
    [[nodiscard]] static RuleProfile named(std::string_view name);

    [[nodiscard]] bool enabled(std::string_view rule) const
    {
        return enabled_rules.contains(std::string(rule));
    }
};

/// Raised when requirement rules are asked to run on a model with
/// well-formedness errors.
class PreconditionError : public std::runtime_error
{
public:
    PreconditionError(const std::string& what, std::vector<Finding> blocking)
        : std::runtime_error(what), blocking_(std::move(blocking))
    {}

    [[nodiscard]] const std::vector<Finding>& blocking() const { return blocking_; }

private:
    std::vector<Finding> blocking_;
};

/// Throws UnknownRuleError if the profile names or overrides an unregistered rule.
void validate_profile(const RuleProfile& profile);

void apply_severity_overrides(std::vector<Finding>& findings, const RuleProfile& profile);

/// Evaluates the enabled R*, ST1, D*, TL1 and EV1 rules. Throws
/// PreconditionError when well-formedness errors are present.
[[nodiscard]] std::vector<Finding> check_requirements(const LinkedModel& model, const RuleProfile& profile);

struct ProfileResult
{
    std::vector<Finding> findings;
    /// False when well-formedness errors blocked the requirement rules.
    bool requirements_evaluated = false;
};

/// Well-formedness gate followed by the requirement rules. Blocking WF errors
/// are always reported, even when the profile does not enable gsn-wf.
[[nodiscard]] ProfileResult run_profile(const LinkedModel& model, const RuleProfile& profile);

/// [{id, title, default_severity, paper_anchor, description}, ...]
[[nodiscard]] std::string rule_catalog_json();

}  // namespace sac
