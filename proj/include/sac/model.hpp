/**
 * @file model.hpp
 * @brief Safety assurance argumentation model: GSN elements, registries and
 *        referenced artifacts, plus the linked (indexed, immutable) view.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sac {

enum class ElementKind : std::uint8_t { Goal, Strategy, Solution, Context, Assumption, Justification };

enum class ArgumentType : std::uint8_t {
    Risk,
    Confidence,
    Conformance,
    Compliance,
    Product,
    Process,
    Contextualization,
    Soundness,
};
inline constexpr std::size_t kArgumentTypeCount = 8;

enum class RoleTag : std::uint8_t {
    SafetyCulture,
    LifecycleOperation,
    LifecycleMaintenance,
    HazardManagement,
    GlobalRac,
    ScenarioRac,
    KnownScenarios,
    UnknownScenarios,
    RacDefine,
    RacEvaluate,
    RacMaintain,
    SelectionRationale,
    UncertaintyMethod,
    AcpRationale,
};

enum class Relation : std::uint8_t { SupportedBy, InContextOf };
enum class HazardStatus : std::uint8_t { Open, Managed };
enum class RacLevel : std::uint8_t { Global, Scenario };
enum class ArtifactRole : std::uint8_t { Evidence, ContextDoc };

// Serialized (lowercase snake_case) names. from_string returns nullopt for
// anything outside the closed vocabulary.
[[nodiscard]] std::string_view to_string(ElementKind v);
[[nodiscard]] std::string_view to_string(ArgumentType v);
[[nodiscard]] std::string_view to_string(RoleTag v);
[[nodiscard]] std::string_view to_string(Relation v);
[[nodiscard]] std::string_view to_string(HazardStatus v);
[[nodiscard]] std::string_view to_string(RacLevel v);
[[nodiscard]] std::string_view to_string(ArtifactRole v);

template <typename Enum>
[[nodiscard]] std::optional<Enum> enum_from_string(std::string_view s);

template <typename Enum>
[[nodiscard]] const std::vector<Enum>& enum_values();

[[nodiscard]] bool is_contextual(ElementKind kind);

struct SourceLocation
{
    std::string file;
    int line = 0;
    int column = 0;

    bool operator==(const SourceLocation&) const = default;
};

struct AssuranceClaimPoint
{
    std::string target;
    Relation relation = Relation::SupportedBy;
    std::string confidence_goal;

    bool operator==(const AssuranceClaimPoint&) const = default;
};

/// One GSN node. Equality is structural and ignores the source location.
struct GsnElement
{
    std::string id;
    ElementKind kind = ElementKind::Goal;
    std::string text;
    bool undeveloped = false;
    std::optional<ArgumentType> argument_type;
    std::set<RoleTag> roles;
    std::vector<std::string> supported_by;
    std::vector<std::string> in_context_of;
    std::set<std::string> traces;
    std::set<std::string> artifacts;
    std::vector<AssuranceClaimPoint> acps;
    SourceLocation location;

    [[nodiscard]] bool has_role(RoleTag role) const { return roles.contains(role); }
    friend bool operator==(const GsnElement& a, const GsnElement& b);
};

struct GsnModule
{
    std::string id;
    std::vector<GsnElement> elements;
    SourceLocation location;

    friend bool operator==(const GsnModule& a, const GsnModule& b);
};

struct Hazard
{
    std::string id;
    std::string description;
    HazardStatus status = HazardStatus::Open;
    SourceLocation location;

    friend bool operator==(const Hazard& a, const Hazard& b);
};

struct RegulatoryRequirement
{
    std::string id;
    std::string source;
    std::string text;
    SourceLocation location;

    friend bool operator==(const RegulatoryRequirement& a, const RegulatoryRequirement& b);
};

struct NormativeRequirement
{
    std::string id;
    std::string source;
    std::string text;
    std::optional<std::string> selection_rationale;
    SourceLocation location;

    friend bool operator==(const NormativeRequirement& a, const NormativeRequirement& b);
};

struct RiskAcceptanceCriterion
{
    std::string id;
    RacLevel level = RacLevel::Global;
    std::string text;
    SourceLocation location;

    friend bool operator==(const RiskAcceptanceCriterion& a, const RiskAcceptanceCriterion& b);
};

/// Context dimensions used when a model does not declare its own.
[[nodiscard]] const std::vector<std::string>& default_context_dimensions();

struct Registries
{
    std::vector<Hazard> hazards;
    std::vector<RegulatoryRequirement> regulatory_requirements;
    std::vector<NormativeRequirement> normative_requirements;
    std::vector<RiskAcceptanceCriterion> risk_acceptance_criteria;
    std::vector<std::string> context_dimensions = default_context_dimensions();

    bool operator==(const Registries&) const = default;
};

struct Artifact
{
    std::string id;
    ArtifactRole role = ArtifactRole::Evidence;
    std::string title;
    std::string uri;
    std::optional<std::string> dimension;
    SourceLocation location;

    friend bool operator==(const Artifact& a, const Artifact& b);
};

/// The raw argumentation model as read from documents. Not yet indexed;
/// references may dangle until it goes through link().
struct GsnModel
{
    std::string id;
    std::string version;
    bool fragmentary = false;
    std::vector<GsnModule> modules;
    Registries registries;
    std::vector<Artifact> artifacts;
    SourceLocation location;

    [[nodiscard]] std::size_t element_count() const;
    friend bool operator==(const GsnModel& a, const GsnModel& b);
};

using IdSet = std::set<std::string>;

/// Bit set over ArgumentType.
class ArgumentTypeSet
{
public:
    constexpr ArgumentTypeSet() = default;
    constexpr explicit ArgumentTypeSet(std::uint8_t bits) : bits_(bits) {}

    [[nodiscard]] constexpr bool contains(ArgumentType t) const
    {
        return (bits_ & bit(t)) != 0;
    }
    constexpr void insert(ArgumentType t) { bits_ |= bit(t); }
    [[nodiscard]] constexpr bool empty() const { return bits_ == 0; }
    [[nodiscard]] constexpr std::uint8_t bits() const { return bits_; }
    constexpr ArgumentTypeSet& operator|=(ArgumentTypeSet o)
    {
        bits_ |= o.bits_;
        return *this;
    }
    constexpr bool operator==(const ArgumentTypeSet&) const = default;

private:
    static constexpr std::uint8_t bit(ArgumentType t)
    {
        return static_cast<std::uint8_t>(1U << static_cast<unsigned>(t));
    }
    std::uint8_t bits_ = 0;
};

struct LinkResult;

/// Indexed, immutable view over a GsnModel whose references all resolve and
/// whose supported_by relation is acyclic. Every query is read-only.
class LinkedModel
{
public:
    using Index = std::size_t;
    static constexpr Index npos = static_cast<Index>(-1);

    [[nodiscard]] const GsnModel& model() const { return model_; }
    [[nodiscard]] std::size_t size() const { return order_.size(); }

    [[nodiscard]] const GsnElement* find(std::string_view id) const;
    [[nodiscard]] Index index_of(std::string_view id) const;
    [[nodiscard]] const GsnElement& element(Index i) const;
    [[nodiscard]] const std::string& module_of(Index i) const;

    [[nodiscard]] const std::vector<Index>& children(Index i) const { return children_[i]; }
    [[nodiscard]] const std::vector<Index>& contexts(Index i) const { return contexts_[i]; }
    [[nodiscard]] const std::vector<Index>& parents(Index i) const { return parents_[i]; }
    [[nodiscard]] const std::vector<Index>& context_owners(Index i) const { return context_owners_[i]; }

    /// Goals referenced by no supported_by list and by no ACP as confidence goal.
    [[nodiscard]] const std::vector<Index>& root_goals() const { return roots_; }
    /// The unique root, or npos for fragmentary models without exactly one.
    [[nodiscard]] Index global_root() const { return roots_.size() == 1 ? roots_.front() : npos; }

    [[nodiscard]] ArgumentTypeSet argument_types(Index i) const { return types_[i]; }
    [[nodiscard]] bool has_solution_descendant(Index i) const { return solution_below_[i] != 0; }
    [[nodiscard]] bool is_acp_confidence_goal(Index i) const { return acp_goal_[i] != 0; }

    /// Indices reachable through supported_by from `start`, plus the
    /// in_context_of targets of `start` and of every reached element.
    /// Excludes `start` itself unless it is its own context (never, if linked).
    [[nodiscard]] std::vector<bool> descendant_mask(std::span<const Index> start) const;

    /// Elements in declaration order (module by module).
    [[nodiscard]] const std::vector<std::pair<std::size_t, std::size_t>>& order() const { return order_; }

private:
    friend LinkResult link(GsnModel model);
    explicit LinkedModel(GsnModel model) : model_(std::move(model)) {}

    GsnModel model_;
    std::vector<std::pair<std::size_t, std::size_t>> order_;  // (module, element)
    std::unordered_map<std::string, Index> by_id_;
    std::vector<std::vector<Index>> children_;
    std::vector<std::vector<Index>> contexts_;
    std::vector<std::vector<Index>> parents_;
    std::vector<std::vector<Index>> context_owners_;
    std::vector<Index> roots_;
    std::vector<ArgumentTypeSet> types_;
    std::vector<std::uint8_t> solution_below_;
    std::vector<std::uint8_t> acp_goal_;
};

enum class LinkCode : std::uint8_t {
    DuplicateId,
    UnresolvedReference,
    Cycle,
    InvalidAcp,
    RootCount,
};

[[nodiscard]] std::string_view to_string(LinkCode code);

struct LinkDiagnostic
{
    LinkCode code;
    std::string message;
    std::vector<std::string> ids;
    SourceLocation location;
};

struct LinkResult
{
    std::optional<LinkedModel> model;
    std::vector<LinkDiagnostic> diagnostics;
};

/// Index a model and verify its referential integrity. Collects every
/// problem instead of stopping at the first one.
[[nodiscard]] LinkResult link(GsnModel model);

// Queries.

[[nodiscard]] const GsnElement* resolve(const LinkedModel& model, std::string_view id);

/// Elements whose effective argument type includes `type`. The effective
/// type is the explicit tag when present, otherwise the union over every
/// element referencing it through supported_by or in_context_of.
[[nodiscard]] IdSet argument_subset(const LinkedModel& model, ArgumentType type);

/// Transitive supported_by closure of `id` plus attached in_context_of
/// targets; excludes `id`. Throws std::out_of_range for an unknown id.
[[nodiscard]] IdSet descendants(const LinkedModel& model, std::string_view id);

}  // namespace sac
