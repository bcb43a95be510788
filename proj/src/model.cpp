#include "sac/model.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace sac {

namespace {

template <typename Enum, std::size_t N>
struct Vocabulary
{
    std::array<std::pair<Enum, std::string_view>, N> entries;

    [[nodiscard]] constexpr std::string_view name(Enum v) const
    {
        for (const auto& [value, text] : entries) {
            if (value == v) {
                return text;
            }
        }
        return "?";
    }

    [[nodiscard]] constexpr std::optional<Enum> parse(std::string_view s) const
    {
        for (const auto& [value, text] : entries) {
            if (text == s) {
                return value;
            }
        }
        return std::nullopt;
    }

    [[nodiscard]] std::vector<Enum> values() const
    {
        std::vector<Enum> out;
        for (const auto& entry : entries) {
            out.push_back(entry.first);
        }
        return out;
    }
};

constexpr Vocabulary<ElementKind, 6> kKinds{{{
    {ElementKind::Goal, "goal"},
    {ElementKind::Strategy, "strategy"},
    {ElementKind::Solution, "solution"},
    {ElementKind::Context, "context"},
    {ElementKind::Assumption, "assumption"},
    {ElementKind::Justification, "justification"},
}}};

constexpr Vocabulary<ArgumentType, kArgumentTypeCount> kArgumentTypes{{{
    {ArgumentType::Risk, "risk"},
    {ArgumentType::Confidence, "confidence"},
    {ArgumentType::Conformance, "conformance"},
    {ArgumentType::Compliance, "compliance"},
    {ArgumentType::Product, "product"},
    {ArgumentType::Process, "process"},
    {ArgumentType::Contextualization, "contextualization"},
    {ArgumentType::Soundness, "soundness"},
}}};

constexpr Vocabulary<RoleTag, 14> kRoles{{{
    {RoleTag::SafetyCulture, "safety_culture"},
    {RoleTag::LifecycleOperation, "lifecycle_operation"},
    {RoleTag::LifecycleMaintenance, "lifecycle_maintenance"},
    {RoleTag::HazardManagement, "hazard_management"},
    {RoleTag::GlobalRac, "global_rac"},
    {RoleTag::ScenarioRac, "scenario_rac"},
    {RoleTag::KnownScenarios, "known_scenarios"},
    {RoleTag::UnknownScenarios, "unknown_scenarios"},
    {RoleTag::RacDefine, "rac_define"},
    {RoleTag::RacEvaluate, "rac_evaluate"},
    {RoleTag::RacMaintain, "rac_maintain"},
    {RoleTag::SelectionRationale, "selection_rationale"},
    {RoleTag::UncertaintyMethod, "uncertainty_method"},
    {RoleTag::AcpRationale, "acp_rationale"},
}}};

constexpr Vocabulary<Relation, 2> kRelations{{{
    {Relation::SupportedBy, "supported_by"},
    {Relation::InContextOf, "in_context_of"},
}}};

constexpr Vocabulary<HazardStatus, 2> kStatuses{{{
    {HazardStatus::Open, "open"},
    {HazardStatus::Managed, "managed"},
}}};

constexpr Vocabulary<RacLevel, 2> kLevels{{{
    {RacLevel::Global, "global"},
    {RacLevel::Scenario, "scenario"},
}}};

constexpr Vocabulary<ArtifactRole, 2> kArtifactRoles{{{
    {ArtifactRole::Evidence, "evidence"},
    {ArtifactRole::ContextDoc, "context_doc"},
}}};

template <typename Enum>
constexpr const auto& vocabulary()
{
    if constexpr (std::is_same_v<Enum, ElementKind>) {
        return kKinds;
    } else if constexpr (std::is_same_v<Enum, ArgumentType>) {
        return kArgumentTypes;
    } else if constexpr (std::is_same_v<Enum, RoleTag>) {
        return kRoles;
    } else if constexpr (std::is_same_v<Enum, Relation>) {
        return kRelations;
    } else if constexpr (std::is_same_v<Enum, HazardStatus>) {
        return kStatuses;
    } else if constexpr (std::is_same_v<Enum, RacLevel>) {
        return kLevels;
    } else {
        static_assert(std::is_same_v<Enum, ArtifactRole>);
        return kArtifactRoles;
    }
}

}  // namespace

std::string_view to_string(ElementKind v) { return kKinds.name(v); }
std::string_view to_string(ArgumentType v) { return kArgumentTypes.name(v); }
std::string_view to_string(RoleTag v) { return kRoles.name(v); }
std::string_view to_string(Relation v) { return kRelations.name(v); }
std::string_view to_string(HazardStatus v) { return kStatuses.name(v); }
std::string_view to_string(RacLevel v) { return kLevels.name(v); }
std::string_view to_string(ArtifactRole v) { return kArtifactRoles.name(v); }

template <typename Enum>
std::optional<Enum> enum_from_string(std::string_view s)
{
    return vocabulary<Enum>().parse(s);
}

template <typename Enum>
const std::vector<Enum>& enum_values()
{
    static const std::vector<Enum> values = vocabulary<Enum>().values();
    return values;
}

#define SAC_INSTANTIATE_ENUM(E)                                          \
    template std::optional<E> enum_from_string<E>(std::string_view); \
    template const std::vector<E>& enum_values<E>();
SAC_INSTANTIATE_ENUM(ElementKind)
SAC_INSTANTIATE_ENUM(ArgumentType)
SAC_INSTANTIATE_ENUM(RoleTag)
SAC_INSTANTIATE_ENUM(Relation)
SAC_INSTANTIATE_ENUM(HazardStatus)
SAC_INSTANTIATE_ENUM(RacLevel)
SAC_INSTANTIATE_ENUM(ArtifactRole)
#undef SAC_INSTANTIATE_ENUM

bool is_contextual(ElementKind kind)
{
    return kind == ElementKind::Context || kind == ElementKind::Assumption ||
           kind == ElementKind::Justification;
}

const std::vector<std::string>& default_context_dimensions()
{
    static const std::vector<std::string> dims{
        "operational_concept",   "odd",
        "behavior_spec",         "concept_of_operations",
        "system_description",    "concept_explanations",
    };
    return dims;
}

bool operator==(const GsnElement& a, const GsnElement& b)
{
    auto key = [](const GsnElement& e) {
        return std::tie(e.id, e.kind, e.text, e.undeveloped, e.argument_type, e.roles,
                        e.supported_by, e.in_context_of, e.traces, e.artifacts, e.acps);
    };
    return key(a) == key(b);
}

// Element order within a module carries no meaning (canonical form sorts by id).
bool operator==(const GsnModule& a, const GsnModule& b)
{
    if (a.id != b.id || a.elements.size() != b.elements.size()) {
        return false;
    }
    auto sorted = [](const GsnModule& m) {
        std::vector<const GsnElement*> out;
        for (const auto& e : m.elements) {
            out.push_back(&e);
        }
        std::stable_sort(out.begin(), out.end(),
                         [](const GsnElement* x, const GsnElement* y) { return x->id < y->id; });
        return out;
    };
    const auto sa = sorted(a);
    const auto sb = sorted(b);
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (!(*sa[i] == *sb[i])) {
            return false;
        }
    }
    return true;
}

bool operator==(const Hazard& a, const Hazard& b)
{
    return std::tie(a.id, a.description, a.status) == std::tie(b.id, b.description, b.status);
}

bool operator==(const RegulatoryRequirement& a, const RegulatoryRequirement& b)
{
    return std::tie(a.id, a.source, a.text) == std::tie(b.id, b.source, b.text);
}

bool operator==(const NormativeRequirement& a, const NormativeRequirement& b)
{
    return std::tie(a.id, a.source, a.text, a.selection_rationale) ==
           std::tie(b.id, b.source, b.text, b.selection_rationale);
}

bool operator==(const RiskAcceptanceCriterion& a, const RiskAcceptanceCriterion& b)
{
    return std::tie(a.id, a.level, a.text) == std::tie(b.id, b.level, b.text);
}

bool operator==(const Artifact& a, const Artifact& b)
{
    return std::tie(a.id, a.role, a.title, a.uri, a.dimension) ==
           std::tie(b.id, b.role, b.title, b.uri, b.dimension);
}

bool operator==(const GsnModel& a, const GsnModel& b)
{
    return std::tie(a.id, a.version, a.fragmentary, a.modules, a.registries, a.artifacts) ==
           std::tie(b.id, b.version, b.fragmentary, b.modules, b.registries, b.artifacts);
}

std::size_t GsnModel::element_count() const
{
    std::size_t n = 0;
    for (const auto& module : modules) {
        n += module.elements.size();
    }
    return n;
}

std::string_view to_string(LinkCode code)
{
    switch (code) {
    case LinkCode::DuplicateId: return "duplicate-id";
    case LinkCode::UnresolvedReference: return "unresolved-reference";
    case LinkCode::Cycle: return "cycle";
    case LinkCode::InvalidAcp: return "invalid-acp";
    case LinkCode::RootCount: return "root-count";
    }
    return "?";
}

// LinkedModel

const GsnElement* LinkedModel::find(std::string_view id) const
{
    const Index i = index_of(id);
    return i == npos ? nullptr : &element(i);
}

LinkedModel::Index LinkedModel::index_of(std::string_view id) const
{
    const auto it = by_id_.find(std::string(id));
    return it == by_id_.end() ? npos : it->second;
}

const GsnElement& LinkedModel::element(Index i) const
{
    const auto [m, e] = order_.at(i);
    return model_.modules[m].elements[e];
}

const std::string& LinkedModel::module_of(Index i) const
{
    return model_.modules[order_.at(i).first].id;
}

std::vector<bool> LinkedModel::descendant_mask(std::span<const Index> start) const
{
    std::vector<bool> seen(size(), false);
    std::vector<Index> stack;
    auto visit_contexts = [&](Index i) {
        for (Index c : contexts_[i]) {
            seen[c] = true;
        }
    };
    for (Index s : start) {
        visit_contexts(s);
        for (Index c : children_[s]) {
            if (!seen[c]) {
                seen[c] = true;
                stack.push_back(c);
            }
        }
    }
    while (!stack.empty()) {
        const Index i = stack.back();
        stack.pop_back();
        visit_contexts(i);
        for (Index c : children_[i]) {
            if (!seen[c]) {
                seen[c] = true;
                stack.push_back(c);
            }
        }
    }
    return seen;
}

namespace {

// Strongly connected components of the supported_by graph that contain a
// cycle (size > 1 or a self-loop). Iterative Tarjan.
std::vector<std::vector<std::size_t>> cyclic_components(
    const std::vector<std::vector<std::size_t>>& adj)
{
    const std::size_t n = adj.size();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited);
    std::vector<std::size_t> low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> result;
    std::size_t counter = 0;

    struct Frame
    {
        std::size_t node;
        std::size_t next_edge;
    };

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) {
            continue;
        }
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next_edge < adj[f.node].size()) {
                const std::size_t w = adj[f.node][f.next_edge++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.node] = std::min(low[f.node], index[w]);
                }
                continue;
            }
            const std::size_t v = f.node;
            call.pop_back();
            if (!call.empty()) {
                low[call.back().node] = std::min(low[call.back().node], low[v]);
            }
            if (low[v] != index[v]) {
                continue;
            }
            std::vector<std::size_t> component;
            std::size_t w = 0;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                component.push_back(w);
            } while (w != v);
            const bool self_loop =
                std::find(adj[v].begin(), adj[v].end(), v) != adj[v].end();
            if (component.size() > 1 || self_loop) {
                result.push_back(std::move(component));
            }
        }
    }
    return result;
}

}  // namespace

LinkResult link(GsnModel model)
{
    using Index = LinkedModel::Index;
    LinkResult result;
    auto& diags = result.diagnostics;
    LinkedModel linked(std::move(model));
    const GsnModel& m = linked.model_;

    for (std::size_t mi = 0; mi < m.modules.size(); ++mi) {
        for (std::size_t ei = 0; ei < m.modules[mi].elements.size(); ++ei) {
            const GsnElement& e = m.modules[mi].elements[ei];
            const Index next = linked.order_.size();
            auto [it, inserted] = linked.by_id_.emplace(e.id, next);
            if (!inserted) {
                const GsnElement& first = linked.element(it->second);
                diags.push_back({LinkCode::DuplicateId,
                                 "duplicate element id '" + e.id + "' (first declared at " +
                                     first.location.file + ":" +
                                     std::to_string(first.location.line) + ")",
                                 {e.id},
                                 e.location});
                continue;
            }
            linked.order_.emplace_back(mi, ei);
        }
    }

    // Registry items and artifacts: ids unique per list.
    IdSet registry_ids;
    auto check_unique = [&](const auto& items, std::string_view what) {
        IdSet seen;
        for (const auto& item : items) {
            if (!seen.insert(item.id).second) {
                diags.push_back({LinkCode::DuplicateId,
                                 "duplicate " + std::string(what) + " id '" + item.id + "'",
                                 {item.id},
                                 item.location});
            }
            registry_ids.insert(item.id);
        }
    };
    check_unique(m.registries.hazards, "hazard");
    check_unique(m.registries.regulatory_requirements, "regulatory requirement");
    check_unique(m.registries.normative_requirements, "normative requirement");
    check_unique(m.registries.risk_acceptance_criteria, "risk acceptance criterion");
    IdSet artifact_ids;
    for (const Artifact& a : m.artifacts) {
        if (!artifact_ids.insert(a.id).second) {
            diags.push_back({LinkCode::DuplicateId, "duplicate artifact id '" + a.id + "'",
                             {a.id}, a.location});
        }
    }
    {
        IdSet dims;
        for (const auto& d : m.registries.context_dimensions) {
            if (!dims.insert(d).second) {
                diags.push_back({LinkCode::DuplicateId, "duplicate context dimension '" + d + "'",
                                 {d}, m.location});
            }
        }
    }

    const std::size_t n = linked.order_.size();
    linked.children_.assign(n, {});
    linked.contexts_.assign(n, {});
    linked.parents_.assign(n, {});
    linked.context_owners_.assign(n, {});
    linked.acp_goal_.assign(n, 0);

    auto unresolved = [&](const GsnElement& owner, const std::string& ref, std::string_view what) {
        diags.push_back({LinkCode::UnresolvedReference,
                         "element '" + owner.id + "' references unknown " + std::string(what) +
                             " '" + ref + "'",
                         {owner.id, ref},
                         owner.location});
    };

    for (Index i = 0; i < n; ++i) {
        const GsnElement& e = linked.element(i);
        for (const auto& ref : e.supported_by) {
            const Index j = linked.index_of(ref);
            if (j == LinkedModel::npos) {
                unresolved(e, ref, "element");
                continue;
            }
            linked.children_[i].push_back(j);
            linked.parents_[j].push_back(i);
        }
        for (const auto& ref : e.in_context_of) {
            const Index j = linked.index_of(ref);
            if (j == LinkedModel::npos) {
                unresolved(e, ref, "element");
                continue;
            }
            linked.contexts_[i].push_back(j);
            linked.context_owners_[j].push_back(i);
        }
        for (const auto& ref : e.traces) {
            if (!registry_ids.contains(ref)) {
                unresolved(e, ref, "registry item");
            }
        }
        for (const auto& ref : e.artifacts) {
            if (!artifact_ids.contains(ref)) {
                unresolved(e, ref, "artifact");
            }
        }
        for (const auto& acp : e.acps) {
            const auto& list = acp.relation == Relation::SupportedBy ? e.supported_by : e.in_context_of;
            if (std::find(list.begin(), list.end(), acp.target) == list.end()) {
                diags.push_back({LinkCode::InvalidAcp,
                                 "assurance claim point on '" + e.id + "' targets '" + acp.target +
                                     "', which is not in its " +
                                     std::string(to_string(acp.relation)) + " list",
                                 {e.id, acp.target},
                                 e.location});
            }
            const Index g = linked.index_of(acp.confidence_goal);
            if (g == LinkedModel::npos) {
                unresolved(e, acp.confidence_goal, "confidence goal");
            } else if (linked.element(g).kind != ElementKind::Goal) {
                diags.push_back({LinkCode::InvalidAcp,
                                 "confidence goal '" + acp.confidence_goal + "' of an assurance claim point on '" +
                                     e.id + "' is not a goal",
                                 {e.id, acp.confidence_goal},
                                 e.location});
            } else {
                linked.acp_goal_[g] = 1;
            }
        }
    }

    auto cycles = cyclic_components(linked.children_);
    for (auto& component : cycles) {
        std::vector<std::string> ids;
        for (Index i : component) {
            ids.push_back(linked.element(i).id);
        }
        std::sort(ids.begin(), ids.end());
        std::string joined;
        for (const auto& id : ids) {
            joined += (joined.empty() ? "" : ", ") + id;
        }
        const GsnElement& first = *linked.find(ids.front());
        diags.push_back({LinkCode::Cycle, "cyclic supported_by relation among: " + joined, ids,
                         first.location});
    }

    for (Index i = 0; i < n; ++i) {
        const GsnElement& e = linked.element(i);
        if (e.kind == ElementKind::Goal && linked.parents_[i].empty() && !linked.acp_goal_[i]) {
            linked.roots_.push_back(i);
        }
    }
    std::sort(linked.roots_.begin(), linked.roots_.end(), [&](Index a, Index b) {
        return linked.element(a).id < linked.element(b).id;
    });
    if (cycles.empty() && !m.fragmentary && linked.roots_.size() != 1) {
        std::vector<std::string> ids;
        for (Index r : linked.roots_) {
            ids.push_back(linked.element(r).id);
        }
        std::string message = "model must have exactly one root goal, found " +
                              std::to_string(ids.size());
        for (std::size_t k = 0; k < ids.size(); ++k) {
            message += (k == 0 ? ": " : ", ") + ids[k];
        }
        message += " (declare 'fragmentary: true' for partial arguments)";
        const SourceLocation where = ids.empty() ? m.location : linked.find(ids[1])->location;
        diags.push_back({LinkCode::RootCount, message, ids, where});
    }

    if (!diags.empty()) {
        return result;
    }

    // Topological order over supported_by (parents first).
    std::vector<std::size_t> indegree(n, 0);
    for (Index i = 0; i < n; ++i) {
        indegree[i] = linked.parents_[i].size();
    }
    std::vector<Index> topo;
    topo.reserve(n);
    for (Index i = 0; i < n; ++i) {
        if (indegree[i] == 0) {
            topo.push_back(i);
        }
    }
    for (std::size_t k = 0; k < topo.size(); ++k) {
        for (Index c : linked.children_[topo[k]]) {
            if (--indegree[c] == 0) {
                topo.push_back(c);
            }
        }
    }

    linked.solution_below_.assign(n, 0);
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        const Index i = *it;
        std::uint8_t found = 0;
        for (Index c : linked.children_[i]) {
            if (linked.element(c).kind == ElementKind::Solution || linked.solution_below_[c]) {
                found = 1;
                break;
            }
        }
        for (Index c : linked.contexts_[i]) {
            if (linked.element(c).kind == ElementKind::Solution) {
                found = 1;
            }
        }
        linked.solution_below_[i] = found;
    }

    // Effective argument types: monotone fixpoint over both relations.
    // Converges since each element's set only grows within 8 bits.
    linked.types_.assign(n, ArgumentTypeSet{});
    std::vector<bool> explicit_tag(n, false);
    for (Index i = 0; i < n; ++i) {
        if (const auto& t = linked.element(i).argument_type) {
            linked.types_[i].insert(*t);
            explicit_tag[i] = true;
        }
    }
    std::deque<Index> work(topo.begin(), topo.end());
    std::vector<bool> queued(n, true);
    while (!work.empty()) {
        const Index i = work.front();
        work.pop_front();
        queued[i] = false;
        auto push = [&](Index c) {
            if (explicit_tag[c]) {
                return;
            }
            const ArgumentTypeSet before = linked.types_[c];
            linked.types_[c] |= linked.types_[i];
            if (!(before == linked.types_[c]) && !queued[c]) {
                queued[c] = true;
                work.push_back(c);
            }
        };
        for (Index c : linked.children_[i]) {
            push(c);
        }
        for (Index c : linked.contexts_[i]) {
            push(c);
        }
    }

    result.model.emplace(std::move(linked));
    return result;
}

const GsnElement* resolve(const LinkedModel& model, std::string_view id)
{
    return model.find(id);
}

IdSet argument_subset(const LinkedModel& model, ArgumentType type)
{
    IdSet out;
    for (LinkedModel::Index i = 0; i < model.size(); ++i) {
        if (model.argument_types(i).contains(type)) {
            out.insert(model.element(i).id);
        }
    }
    return out;
}

IdSet descendants(const LinkedModel& model, std::string_view id)
{
    const auto start = model.index_of(id);
    if (start == LinkedModel::npos) {
        throw std::out_of_range("unknown element id '" + std::string(id) + "'");
    }
    const std::array<LinkedModel::Index, 1> seeds{start};
    const auto mask = model.descendant_mask(seeds);
    IdSet out;
    for (LinkedModel::Index i = 0; i < mask.size(); ++i) {
        if (mask[i] && i != start) {
            out.insert(model.element(i).id);
        }
    }
    return out;
}

}  // namespace sac
