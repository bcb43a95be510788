#include "sac/scaffold.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <set>
#include <tuple>

namespace sac {

namespace {

std::string id_token(std::string_view s)
{
    std::string out;
    for (unsigned char c : s) {
        out += std::isalnum(c) != 0 ? static_cast<char>(std::toupper(c)) : '_';
    }
    return out.empty() ? std::string("DIM") : out;
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

class Scaffolder
{
public:
    explicit Scaffolder(const ScaffoldOptions& options) : opt_(options)
    {
        model_.id = "reference-argumentation";
        model_.version = "0.1.0";
        std::vector<std::string> dims;
        for (const auto& d : options.context_dimensions) {
            if (std::find(dims.begin(), dims.end(), d) == dims.end()) {
                dims.push_back(d);
            }
        }
        model_.registries.context_dimensions = dims;
        if (options.include_samples) {
            add_samples();
        }
    }

    GsnModel build() &&
    {
        top();
        contextualization();
        soundness();
        risk();
        product();
        process();
        confidence();
        return std::move(model_);
    }

private:
    static GsnElement element(ElementKind kind, std::string id, std::string text)
    {
        GsnElement e;
        e.kind = kind;
        e.id = std::move(id);
        e.text = std::move(text);
        return e;
    }

    static GsnElement goal(std::string id, std::string text, std::optional<ArgumentType> type = std::nullopt,
                           std::set<RoleTag> roles = {})
    {
        GsnElement e = element(ElementKind::Goal, std::move(id), "PLACEHOLDER: " + std::move(text));
        e.argument_type = type;
        e.roles = std::move(roles);
        return e;
    }

    static GsnElement strategy(std::string id, std::string text)
    {
        return element(ElementKind::Strategy, std::move(id), "PLACEHOLDER: " + std::move(text));
    }

    void begin_module(std::string id)
    {
        GsnModule m;
        m.id = std::move(id);
        model_.modules.push_back(std::move(m));
    }

    void add(GsnElement e) { model_.modules.back().elements.push_back(std::move(e)); }

    /// Adds Sn_<suffix> with its evidence artifact below `parent`.
    void solution(GsnElement& parent, const std::string& suffix, std::string text)
    {
        const std::string sn = "Sn_" + suffix;
        const std::string ev = "EV_" + suffix;
        GsnElement e = element(ElementKind::Solution, sn, "PLACEHOLDER: " + std::move(text));
        e.artifacts.insert(ev);
        add(std::move(e));
        model_.artifacts.push_back({ev, ArtifactRole::Evidence, "Evidence record " + suffix,
                                    "evidence/" + lower(suffix) + ".md", std::nullopt, {}});
        parent.supported_by.push_back(sn);
    }

    void add_samples()
    {
        auto& reg = model_.registries;
        reg.hazards = {
            {"H-SAMPLE-1", "PLACEHOLDER: sample hazard, collision with a crossing road user", HazardStatus::Managed, {}},
            {"H-SAMPLE-2", "PLACEHOLDER: sample hazard, loss of localization", HazardStatus::Managed, {}},
        };
        reg.regulatory_requirements = {
            {"REG-SAMPLE-1", "PLACEHOLDER: applicable regulation", "PLACEHOLDER: sample regulatory requirement", {}},
        };
        reg.normative_requirements = {
            {"NORM-SAMPLE-1", "PLACEHOLDER: selected standard", "PLACEHOLDER: sample normative requirement",
             std::string("PLACEHOLDER: reason the standard was selected"), {}},
        };
        reg.risk_acceptance_criteria = {
            {"RAC-GLOBAL-1", RacLevel::Global, "PLACEHOLDER: fleet-level statistical risk threshold", {}},
            {"RAC-SCENARIO-1", RacLevel::Scenario, "PLACEHOLDER: per-scenario risk threshold", {}},
        };
    }

    void top()
    {
        begin_module("top");
        GsnElement root = element(ElementKind::Goal, "G_TOP", opt_.top_claim_text);
        root.supported_by = {"S_TOP"};
        add(std::move(root));
        GsnElement s = strategy("S_TOP", "argue over context, soundness of methods and residual risk");
        s.supported_by = {"G_CTX", "G_SND", "G_RISK"};
        add(std::move(s));
    }

    void contextualization()
    {
        begin_module("contextualization");
        GsnElement g = goal("G_CTX", "the operating context of the system is completely described",
                            ArgumentType::Contextualization);
        std::set<std::string> used;
        for (const auto& dim : model_.registries.context_dimensions) {
            std::string token = id_token(dim);
            for (int n = 2; used.contains(token); ++n) {
                token = id_token(dim) + "_" + std::to_string(n);
            }
            used.insert(token);
            GsnElement c = element(ElementKind::Context, "C_CTX_" + token, "PLACEHOLDER: " + dim + " description");
            c.artifacts.insert("DOC_CTX_" + token);
            add(std::move(c));
            model_.artifacts.push_back({"DOC_CTX_" + token, ArtifactRole::ContextDoc, "Context document " + dim,
                                        "context/" + lower(token) + ".md", dim, {}});
            g.in_context_of.push_back("C_CTX_" + token);
        }
        solution(g, "CTX", "review record of the context documentation");
        add(std::move(g));
    }

    void soundness()
    {
        begin_module("soundness");
        GsnElement g = goal("G_SND", "the methods applied in this argumentation are sound", ArgumentType::Soundness);
        g.supported_by = {"S_SND"};
        GsnElement s = strategy("S_SND", "argue over each applied method");
        s.supported_by = {"G_SND_METHODS", "G_SND_ACP"};
        GsnElement methods = goal("G_SND_METHODS", "uncertainty in applied methods is handled", std::nullopt,
                                  {RoleTag::UncertaintyMethod});
        solution(methods, "SND_METHODS", "method assessment report");
        GsnElement acp = goal("G_SND_ACP", "placement of assurance claim points is justified", std::nullopt,
                              {RoleTag::AcpRationale});
        solution(acp, "SND_ACP", "assurance claim point placement rationale");
        add(std::move(g));
        add(std::move(s));
        add(std::move(methods));
        add(std::move(acp));
    }

    void risk()
    {
        begin_module("risk");
        GsnElement g = goal("G_RISK", "residual risk of the system is acceptable", ArgumentType::Risk);
        g.supported_by = {"S_RISK"};
        GsnElement s = strategy("S_RISK", "argue over the product and over the development process");
        s.supported_by = {"G_PRODUCT", "G_PROCESS"};
        s.acps = {
            {"G_PRODUCT", Relation::SupportedBy, "G_CONF_PRODUCT"},
            {"G_PROCESS", Relation::SupportedBy, "G_CONF_PROCESS"},
        };
        add(std::move(g));
        add(std::move(s));
    }

    /// RAC goal with define/evaluate/maintain subgoals tracing `rac`.
    GsnElement rac_strand(const std::string& id, const std::string& label, RoleTag role,
                          const std::optional<std::string>& rac)
    {
        GsnElement g = goal(id, label + " risk acceptance criteria are satisfied", std::nullopt, {role});
        const std::array<std::tuple<RoleTag, std::string, std::string>, 3> strands{{
            {RoleTag::RacDefine, "DEFINE", "are defined with stakeholders"},
            {RoleTag::RacEvaluate, "EVALUATE", "are evaluated as met"},
            {RoleTag::RacMaintain, "MAINTAIN", "are maintained after release"},
        }};
        for (const auto& [strand_role, suffix, text] : strands) {
            GsnElement sub = goal(id + "_" + suffix, label + " criteria " + text, std::nullopt, {strand_role});
            if (rac) {
                sub.traces.insert(*rac);
            }
            solution(sub, id.substr(2) + "_" + suffix, label + " criteria " + lower(suffix) + " record");
            g.supported_by.push_back(sub.id);
            add(std::move(sub));
        }
        return g;
    }

    void product()
    {
        begin_module("product");
        const auto& racs = model_.registries.risk_acceptance_criteria;
        auto first_of = [&](RacLevel level) -> std::optional<std::string> {
            for (const auto& c : racs) {
                if (c.level == level) {
                    return c.id;
                }
            }
            return std::nullopt;
        };

        GsnElement g = goal("G_PRODUCT", "the product is free of unreasonable risk", ArgumentType::Product);
        g.supported_by = {"S_PRODUCT"};
        GsnElement s = strategy("S_PRODUCT", "argue over global and scenario-based risk acceptance criteria");
        s.supported_by = {"G_RAC_GLOBAL", "G_RAC_SCENARIO"};

        GsnElement global = rac_strand("G_RAC_GLOBAL", "global", RoleTag::GlobalRac, first_of(RacLevel::Global));
        GsnElement scenario =
            rac_strand("G_RAC_SCENARIO", "scenario-based", RoleTag::ScenarioRac, first_of(RacLevel::Scenario));
        scenario.supported_by.insert(scenario.supported_by.end(), {"G_KNOWN", "G_UNKNOWN"});

        GsnElement known = goal("G_KNOWN", "residual risk in known scenarios is acceptable", std::nullopt,
                                {RoleTag::KnownScenarios});
        known.supported_by = {"G_HAZARD_MGMT"};
        GsnElement mgmt = goal("G_HAZARD_MGMT", "identified hazards are mitigated", std::nullopt,
                               {RoleTag::HazardManagement});
        solution(mgmt, "HAZARD_ANALYSIS", "hazard analysis report");
        const auto& hazards = model_.registries.hazards;
        for (std::size_t i = 0; i < hazards.size(); ++i) {
            const std::string n = std::to_string(i + 1);
            GsnElement h = goal("G_HAZ_" + n, "hazard " + hazards[i].id + " is mitigated", std::nullopt,
                                {RoleTag::HazardManagement});
            h.traces.insert(hazards[i].id);
            solution(h, "HAZ_" + n, "verification record for hazard " + hazards[i].id);
            mgmt.supported_by.push_back(h.id);
            add(std::move(h));
        }
        GsnElement unknown = goal("G_UNKNOWN", "residual risk in unknown scenarios is acceptable", std::nullopt,
                                  {RoleTag::UnknownScenarios});
        solution(unknown, "UNKNOWN", "field monitoring and exploration report");

        for (GsnElement* e : {&g, &s, &global, &scenario, &known, &mgmt, &unknown}) {
            add(std::move(*e));
        }
    }

    void process()
    {
        begin_module("process");
        GsnElement g = goal("G_PROCESS", "the development process is adequate", ArgumentType::Process);
        g.supported_by = {"S_PROCESS"};
        GsnElement s = strategy("S_PROCESS", "argue over organisation, lifecycle and state of the art");
        s.supported_by = {"G_SAFETY_CULTURE", "G_LIFECYCLE", "G_PROCESS_SOTA"};

        GsnElement culture = goal("G_SAFETY_CULTURE", "the organisation maintains a safety culture", std::nullopt,
                                  {RoleTag::SafetyCulture});
        solution(culture, "SAFETY_CULTURE", "safety culture audit");

        GsnElement lifecycle = goal("G_LIFECYCLE", "all lifecycle phases are addressed");
        GsnElement operation = goal("G_LC_OPERATION", "operation of the system is safe", std::nullopt,
                                    {RoleTag::LifecycleOperation});
        solution(operation, "LC_OPERATION", "operations procedure review");
        GsnElement maintenance = goal("G_LC_MAINTENANCE", "maintenance and updates preserve safety", std::nullopt,
                                      {RoleTag::LifecycleMaintenance});
        solution(maintenance, "LC_MAINTENANCE", "maintenance procedure review");
        lifecycle.supported_by = {operation.id, maintenance.id};

        GsnElement sota = goal("G_PROCESS_SOTA", "the process follows the state of the art");
        sota.supported_by = {"G_CONFORMANCE", "G_COMPLIANCE"};

        GsnElement conformance =
            goal("G_CONFORMANCE", "selected standards are adhered to", ArgumentType::Conformance);
        GsnElement selection = goal("G_NORM_SELECTION", "the selection of standards is justified", std::nullopt,
                                    {RoleTag::SelectionRationale});
        solution(selection, "NORM_SELECTION", "standards selection record");
        conformance.supported_by.push_back(selection.id);
        add(std::move(selection));
        const auto& norms = model_.registries.normative_requirements;
        for (std::size_t i = 0; i < norms.size(); ++i) {
            const std::string n = std::to_string(i + 1);
            GsnElement q = goal("G_NORM_" + n, "requirement " + norms[i].id + " is met");
            q.traces.insert(norms[i].id);
            solution(q, "NORM_" + n, "conformance evidence for " + norms[i].id);
            conformance.supported_by.push_back(q.id);
            add(std::move(q));
        }

        GsnElement compliance =
            goal("G_COMPLIANCE", "applicable regulations are complied with", ArgumentType::Compliance);
        GsnElement translation = goal("G_REG_TRANSLATION", "regulations are translated into requirements");
        solution(translation, "REG_TRANSLATION", "regulation analysis record");
        compliance.supported_by.push_back(translation.id);
        add(std::move(translation));
        const auto& regs = model_.registries.regulatory_requirements;
        for (std::size_t i = 0; i < regs.size(); ++i) {
            const std::string n = std::to_string(i + 1);
            GsnElement q = goal("G_REG_" + n, "requirement " + regs[i].id + " is met");
            q.traces.insert(regs[i].id);
            solution(q, "REG_" + n, "compliance evidence for " + regs[i].id);
            compliance.supported_by.push_back(q.id);
            add(std::move(q));
        }

        for (GsnElement* e : {&g, &s, &culture, &lifecycle, &operation, &maintenance, &sota, &conformance,
                              &compliance}) {
            add(std::move(*e));
        }
    }

    void confidence()
    {
        begin_module("confidence");
        for (const std::string which : {"PRODUCT", "PROCESS"}) {
            GsnElement g = goal("G_CONF_" + which,
                                "the decomposition into the " + lower(which) + " argument is trustworthy",
                                ArgumentType::Confidence);
            solution(g, "CONF_" + which, "review of the " + lower(which) + " decomposition");
            add(std::move(g));
        }
    }

    const ScaffoldOptions& opt_;
    GsnModel model_;
};

}  // namespace

GsnModel scaffold_reference_model(const ScaffoldOptions& options)
{
    return Scaffolder(options).build();
}

}  // namespace sac
