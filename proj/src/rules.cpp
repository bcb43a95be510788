#include "sac/rules.hpp"

#include "sac/wellformed.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace sac {

namespace {

using Index = LinkedModel::Index;

const std::vector<std::string> kCoreRules{"R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9", "R10"};
const std::vector<std::string> kInstantiationRules{"ST1", "D1", "D2", "TL1", "EV1"};
const std::vector<std::string> kWellformedRules{"WF1", "WF2", "WF3", "WF4", "WF5", "WF6", "WF7", "WF8"};

constexpr std::string_view kTopClaimPhrase = "absence of unreasonable risk";

std::string lowercase(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (const auto& s : items) {
        out += (out.empty() ? "" : ", ") + s;
    }
    return out;
}

class RequirementChecker
{
public:
    RequirementChecker(const LinkedModel& model, const RuleProfile& profile)
        : m_(model), profile_(profile)
    {
        for (Index i = 0; i < m_.size(); ++i) {
            const ArgumentTypeSet types = m_.argument_types(i);
            for (std::size_t t = 0; t < kArgumentTypeCount; ++t) {
                if (types.contains(static_cast<ArgumentType>(t))) {
                    subsets_[t].push_back(i);
                }
            }
            for (const auto& acp : m_.element(i).acps) {
                acps_.push_back({i, &acp});
            }
        }
    }

    std::vector<Finding> run()
    {
        const std::array<std::pair<std::string_view, void (RequirementChecker::*)()>, 15> rules{{
            {"R1", &RequirementChecker::r1},   {"R2", &RequirementChecker::r2},
            {"R3", &RequirementChecker::r3},   {"R4", &RequirementChecker::r4},
            {"R5", &RequirementChecker::r5},   {"R6", &RequirementChecker::r6},
            {"R7", &RequirementChecker::r7},   {"R8", &RequirementChecker::r8},
            {"R9", &RequirementChecker::r9},   {"R10", &RequirementChecker::r10},
            {"ST1", &RequirementChecker::st1}, {"D1", &RequirementChecker::d1},
            {"D2", &RequirementChecker::d2},   {"TL1", &RequirementChecker::tl1},
            {"EV1", &RequirementChecker::ev1},
        }};
        for (const auto& [id, fn] : rules) {
            if (profile_.enabled(id)) {
                rule_ = id;
                (this->*fn)();
            }
        }
        return std::move(findings_);
    }

private:
    struct AcpRef
    {
        Index owner;
        const AssuranceClaimPoint* acp;
    };

    const std::vector<Index>& subset(ArgumentType t) const
    {
        return subsets_[static_cast<std::size_t>(t)];
    }

    bool in(Index i, ArgumentType t) const { return m_.argument_types(i).contains(t); }

    const std::string& id(Index i) const { return m_.element(i).id; }

    void add(std::string message, std::vector<std::string> elements = {},
             std::optional<Severity> severity = std::nullopt)
    {
        Finding f;
        f.rule = std::string(rule_);
        f.severity = severity.value_or(find_rule(rule_)->default_severity);
        f.message = std::move(message);
        if (!elements.empty()) {
            if (const GsnElement* e = m_.find(elements.front())) {
                f.location = e->location;
            }
        }
        f.elements = std::move(elements);
        findings_.push_back(std::move(f));
    }

    void vacuous(std::string_view registry)
    {
        add("registry '" + std::string(registry) + "' is empty; rule passes vacuously", {},
            Severity::Warning);
    }

    bool any_with_role(ArgumentType t, RoleTag role) const
    {
        const auto& members = subset(t);
        return std::any_of(members.begin(), members.end(),
                           [&](Index i) { return m_.element(i).has_role(role); });
    }

    /// Members of `t` tracing `item`, optionally restricted to a role.
    std::vector<Index> tracers(ArgumentType t, const std::string& item,
                               std::optional<RoleTag> role = std::nullopt) const
    {
        std::vector<Index> out;
        for (Index i : subset(t)) {
            const GsnElement& e = m_.element(i);
            if (e.traces.contains(item) && (!role || e.has_role(*role))) {
                out.push_back(i);
            }
        }
        return out;
    }

    std::vector<std::string> ids(const std::vector<Index>& indices) const
    {
        std::vector<std::string> out;
        for (Index i : indices) {
            out.push_back(id(i));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Members of the subset plus everything below them.
    std::vector<bool> span_of(ArgumentType t) const
    {
        const auto& members = subset(t);
        auto mask = m_.descendant_mask(members);
        for (Index i : members) {
            mask[i] = true;
        }
        return mask;
    }

    // Shared shape of R3 and R4. One Error per item that is untraced or has
    // no solution-backed tracer; extra unbacked tracers are Warnings, so
    // adding trace links never adds Errors.
    template <typename Items>
    void requirement_coverage(const Items& items, std::string_view registry, ArgumentType t,
                              std::string_view argument)
    {
        if (items.empty()) {
            vacuous(registry);
            return;
        }
        const std::string why = subset(t).empty() ? " (no " + std::string(argument) + " argument exists)" : "";
        for (const auto& item : items) {
            const auto traced_by = tracers(t, item.id);
            if (traced_by.empty()) {
                add("requirement '" + item.id + "' is not traced from the " + std::string(argument) +
                    " argument" + why);
                continue;
            }
            std::vector<Index> unbacked;
            for (Index i : traced_by) {
                if (!m_.has_solution_descendant(i)) {
                    unbacked.push_back(i);
                }
            }
            if (unbacked.size() == traced_by.size()) {
                add("requirement '" + item.id + "' is traced but no tracing element is supported by a solution",
                    ids(traced_by));
                continue;
            }
            for (Index i : unbacked) {
                add("'" + id(i) + "' traces requirement '" + item.id + "' but no solution supports it",
                    {id(i)}, Severity::Warning);
            }
        }
    }

    // Rules.

    void r1()
    {
        const auto& risk = subset(ArgumentType::Risk);
        if (risk.empty()) {
            add("no element belongs to the risk argument");
            return;
        }
        std::vector<bool> reachable = m_.descendant_mask(m_.root_goals());
        for (Index r : m_.root_goals()) {
            reachable[r] = true;
        }
        for (Index i : risk) {
            const auto& parents = m_.parents(i);
            const bool topmost = std::none_of(parents.begin(), parents.end(),
                                              [&](Index p) { return in(p, ArgumentType::Risk); });
            if (topmost && !reachable[i]) {
                add("risk argument element '" + id(i) + "' is not reachable from the root goal", {id(i)});
            }
        }
    }

    void r2()
    {
        for (const auto& [owner, acp] : acps_) {
            const Index goal = m_.index_of(acp->confidence_goal);
            if (!in(goal, ArgumentType::Confidence)) {
                add("assurance claim point on '" + id(owner) + "' -> '" + acp->target + "' links goal '" +
                        acp->confidence_goal + "', which is not part of the confidence argument",
                    {id(owner), acp->confidence_goal});
            }
        }
        const auto& risk = subset(ArgumentType::Risk);
        const bool risk_has_acp = std::any_of(acps_.begin(), acps_.end(), [&](const AcpRef& a) {
            return in(a.owner, ArgumentType::Risk);
        });
        if (!risk.empty() && !risk_has_acp) {
            add("the risk argument carries no assurance claim points", {}, Severity::Warning);
        }
    }

    void r3()
    {
        requirement_coverage(m_.model().registries.regulatory_requirements, "regulatory_requirements",
                             ArgumentType::Compliance, "compliance");
    }

    void r4()
    {
        const auto& items = m_.model().registries.normative_requirements;
        requirement_coverage(items, "normative_requirements", ArgumentType::Conformance, "conformance");
        if (any_with_role(ArgumentType::Conformance, RoleTag::SelectionRationale)) {
            return;
        }
        for (const auto& item : items) {
            if (!item.selection_rationale || item.selection_rationale->empty()) {
                add("normative requirement '" + item.id +
                    "' has no selection rationale and the conformance argument has no selection_rationale element");
            }
        }
    }

    void r5()
    {
        const auto& product = subset(ArgumentType::Product);
        const auto& process = subset(ArgumentType::Process);
        if (product.empty()) {
            add("no element belongs to the product argument");
        }
        if (process.empty()) {
            add("no element belongs to the process argument");
        }
        // Containment is only meaningful once a risk argument exists (R1).
        if (subset(ArgumentType::Risk).empty()) {
            return;
        }
        const auto risk_span = span_of(ArgumentType::Risk);
        for (const auto* members : {&product, &process}) {
            for (Index i : *members) {
                if (!risk_span[i]) {
                    add("'" + id(i) + "' belongs to the " +
                            std::string(members == &product ? "product" : "process") +
                            " argument but lies outside the risk argument",
                        {id(i)});
                }
            }
        }
    }

    void r6()
    {
        const auto& hazards = m_.model().registries.hazards;
        if (hazards.empty()) {
            vacuous("hazards");
            return;
        }
        for (const auto& h : hazards) {
            if (h.status == HazardStatus::Open) {
                add("hazard '" + h.id + "' is still open");
            }
            const auto traced_by = tracers(ArgumentType::Product, h.id, RoleTag::HazardManagement);
            if (traced_by.empty()) {
                add("hazard '" + h.id + "' is not traced from a hazard_management element of the product argument");
                continue;
            }
            const bool backed = std::any_of(traced_by.begin(), traced_by.end(),
                                            [&](Index i) { return m_.has_solution_descendant(i); });
            if (!backed) {
                add("hazard '" + h.id + "' is traced but no tracing element is supported by a solution",
                    ids(traced_by));
            }
        }
    }

    void r7()
    {
        if (subset(ArgumentType::Process).empty()) {
            return;  // reported by R5
        }
        if (!any_with_role(ArgumentType::Process, RoleTag::LifecycleOperation)) {
            add("the process argument has no lifecycle_operation element");
        }
        if (!any_with_role(ArgumentType::Process, RoleTag::LifecycleMaintenance)) {
            add("the process argument has no lifecycle_maintenance element");
        }
    }

    void r8()
    {
        const auto& process = subset(ArgumentType::Process);
        if (process.empty()) {
            return;  // reported by R5
        }
        std::vector<Index> culture;
        for (Index i : process) {
            if (m_.element(i).has_role(RoleTag::SafetyCulture)) {
                culture.push_back(i);
            }
        }
        if (culture.empty()) {
            add("the process argument has no safety_culture element");
            return;
        }
        const bool backed = std::any_of(culture.begin(), culture.end(),
                                        [&](Index i) { return m_.has_solution_descendant(i); });
        if (!backed) {
            add("no safety_culture element of the process argument is supported by a solution", ids(culture));
        }
    }

    void r9()
    {
        const auto& members = subset(ArgumentType::Contextualization);
        if (members.empty()) {
            add("no element belongs to the contextualization argument");
            return;
        }
        const auto& dims = m_.model().registries.context_dimensions;
        if (dims.empty()) {
            vacuous("context_dimensions");
            return;
        }
        std::set<std::string> referenced;
        for (Index i : members) {
            const auto& refs = m_.element(i).artifacts;
            referenced.insert(refs.begin(), refs.end());
        }
        std::set<std::string> covered;
        for (const Artifact& a : m_.model().artifacts) {
            if (a.role == ArtifactRole::ContextDoc && a.dimension && referenced.contains(a.id)) {
                covered.insert(*a.dimension);
            }
        }
        for (const auto& dim : dims) {
            if (!covered.contains(dim)) {
                add("context dimension '" + dim +
                    "' has no context document referenced from the contextualization argument");
            }
        }
    }

    void r10()
    {
        if (subset(ArgumentType::Soundness).empty()) {
            add("no element belongs to the soundness argument");
            return;
        }
        if (!any_with_role(ArgumentType::Soundness, RoleTag::UncertaintyMethod)) {
            add("the soundness argument has no uncertainty_method element");
        }
        if (!acps_.empty() && !any_with_role(ArgumentType::Soundness, RoleTag::AcpRationale)) {
            add("assurance claim points are used but the soundness argument has no acp_rationale element");
        }
    }

    void st1()
    {
        const auto process_below = m_.descendant_mask(subset(ArgumentType::Process));
        std::vector<bool> offending(m_.size(), false);
        for (const ArgumentType t : {ArgumentType::Compliance, ArgumentType::Conformance}) {
            for (Index i : subset(t)) {
                if (!process_below[i]) {
                    offending[i] = true;
                }
            }
        }
        // Report only the topmost offenders of each misplaced subtree.
        for (Index i = 0; i < m_.size(); ++i) {
            if (!offending[i]) {
                continue;
            }
            const auto& parents = m_.parents(i);
            const auto& owners = m_.context_owners(i);
            const bool nested = std::any_of(parents.begin(), parents.end(), [&](Index p) { return offending[p]; }) ||
                                std::any_of(owners.begin(), owners.end(), [&](Index p) { return offending[p]; });
            if (!nested) {
                add("'" + id(i) + "' belongs to the conformance/compliance argument but is not placed below the process argument",
                    {id(i)});
            }
        }
    }

    void d1()
    {
        const auto& criteria = m_.model().registries.risk_acceptance_criteria;
        if (criteria.empty()) {
            vacuous("risk_acceptance_criteria");
            return;
        }
        const auto has_level = [&](RacLevel level) {
            return std::any_of(criteria.begin(), criteria.end(),
                               [&](const RiskAcceptanceCriterion& c) { return c.level == level; });
        };
        if (!has_level(RacLevel::Global)) {
            add("no global risk acceptance criterion is registered");
        }
        if (!has_level(RacLevel::Scenario)) {
            add("no scenario-based risk acceptance criterion is registered");
        }
        for (const auto& c : criteria) {
            std::vector<std::string> missing;
            for (const RoleTag role : {RoleTag::RacDefine, RoleTag::RacEvaluate, RoleTag::RacMaintain}) {
                if (tracers(ArgumentType::Product, c.id, role).empty()) {
                    missing.emplace_back(to_string(role));
                }
            }
            if (!missing.empty()) {
                add(std::string(to_string(c.level)) + " risk acceptance criterion '" + c.id +
                    "' is not traced from product argument elements with role(s): " + join(missing));
            }
        }
    }

    void d2()
    {
        if (subset(ArgumentType::Product).empty()) {
            return;  // reported by R5
        }
        if (!any_with_role(ArgumentType::Product, RoleTag::KnownScenarios)) {
            add("the product argument has no known_scenarios element");
        }
        if (!any_with_role(ArgumentType::Product, RoleTag::UnknownScenarios)) {
            add("the product argument has no unknown_scenarios element");
        }
    }

    void tl1()
    {
        const Index root = m_.global_root();
        if (root == LinkedModel::npos) {
            return;
        }
        if (lowercase(m_.element(root).text).find(kTopClaimPhrase) == std::string::npos) {
            add("root goal '" + id(root) + "' does not claim \"" + std::string(kTopClaimPhrase) + "\"",
                {id(root)});
        }
    }

    void ev1()
    {
        std::unordered_map<std::string, ArtifactRole> roles;
        for (const Artifact& a : m_.model().artifacts) {
            roles.emplace(a.id, a.role);
        }
        for (Index i = 0; i < m_.size(); ++i) {
            const GsnElement& e = m_.element(i);
            std::size_t evidence = 0;
            for (const auto& ref : e.artifacts) {
                const ArtifactRole role = roles.at(ref);
                if (role == ArtifactRole::Evidence) {
                    ++evidence;
                    if (e.kind != ElementKind::Solution) {
                        add("evidence artifact '" + ref + "' is referenced by " +
                                std::string(to_string(e.kind)) + " '" + e.id + "'; only solutions reference evidence",
                            {e.id}, Severity::Warning);
                    }
                } else if (!is_contextual(e.kind)) {
                    add("context document '" + ref + "' is referenced by " + std::string(to_string(e.kind)) +
                            " '" + e.id + "'; only contextual elements reference context documents",
                        {e.id}, Severity::Warning);
                }
            }
            if (e.kind == ElementKind::Solution && evidence == 0) {
                add("solution '" + e.id + "' references no evidence artifact", {e.id});
            }
        }
    }

    const LinkedModel& m_;
    const RuleProfile& profile_;
    std::array<std::vector<Index>, kArgumentTypeCount> subsets_;
    std::vector<AcpRef> acps_;
    std::string_view rule_;
    std::vector<Finding> findings_;
};

bool has_errors(const std::vector<Finding>& findings)
{
    return std::any_of(findings.begin(), findings.end(),
                       [](const Finding& f) { return f.severity == Severity::Error; });
}

}  // namespace

RuleProfile RuleProfile::named(std::string_view name)
{
    RuleProfile profile;
    profile.name = std::string(name);
    auto add = [&](const std::vector<std::string>& ids) { profile.enabled_rules.insert(ids.begin(), ids.end()); };
    if (name == "core") {
        add(kCoreRules);
    } else if (name == "instantiation") {
        add(kInstantiationRules);
    } else if (name == "gsn-wf") {
        add(kWellformedRules);
    } else if (name == "all") {
        add(kWellformedRules);
        add(kCoreRules);
        add(kInstantiationRules);
    } else {
        throw std::invalid_argument("unknown rule profile '" + std::string(name) +
                                    "' (expected core, instantiation, gsn-wf or all)");
    }
    return profile;
}

void validate_profile(const RuleProfile& profile)
{
    for (const auto& id : profile.enabled_rules) {
        if (find_rule(id) == nullptr) {
            throw UnknownRuleError(id);
        }
    }
    for (const auto& [id, _] : profile.severity_overrides) {
        if (find_rule(id) == nullptr) {
            throw UnknownRuleError(id);
        }
    }
}

void apply_severity_overrides(std::vector<Finding>& findings, const RuleProfile& profile)
{
    for (auto& f : findings) {
        if (const auto it = profile.severity_overrides.find(f.rule); it != profile.severity_overrides.end()) {
            f.severity = it->second;
        }
    }
}

std::vector<Finding> check_requirements(const LinkedModel& model, const RuleProfile& profile)
{
    validate_profile(profile);
    auto wf = check_wellformed(model);
    apply_severity_overrides(wf, profile);
    if (has_errors(wf)) {
        std::erase_if(wf, [](const Finding& f) { return f.severity != Severity::Error; });
        throw PreconditionError("model has " + std::to_string(wf.size()) +
                                    " well-formedness error(s); requirement rules not evaluated",
                                std::move(wf));
    }
    auto findings = RequirementChecker(model, profile).run();
    apply_severity_overrides(findings, profile);
    sort_findings(findings);
    return findings;
}

ProfileResult run_profile(const LinkedModel& model, const RuleProfile& profile)
{
    validate_profile(profile);
    ProfileResult result;
    auto wf = check_wellformed(model);
    apply_severity_overrides(wf, profile);
    const bool blocked = has_errors(wf);
    for (auto& f : wf) {
        if (profile.enabled(f.rule) || (blocked && f.severity == Severity::Error)) {
            result.findings.push_back(std::move(f));
        }
    }
    if (!blocked) {
        auto req = check_requirements(model, profile);
        result.findings.insert(result.findings.end(), std::make_move_iterator(req.begin()),
                               std::make_move_iterator(req.end()));
        result.requirements_evaluated = true;
    }
    sort_findings(result.findings);
    return result;
}

std::string rule_catalog_json()
{
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& rule : rule_catalog()) {
        out.push_back({
            {"id", rule.id},
            {"title", rule.title},
            {"default_severity", to_string(rule.default_severity)},
            {"paper_anchor", rule.anchor},
            {"description", rule.description},
        });
    }
    return out.dump(2) + "\n";
}

}  // namespace sac
