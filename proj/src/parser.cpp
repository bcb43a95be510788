#include "sac/parser.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

namespace sac {

std::string_view to_string(DiagnosticCode code)
{
    switch (code) {
    case DiagnosticCode::Syntax: return "syntax";
    case DiagnosticCode::UnknownKey: return "unknown-key";
    case DiagnosticCode::MissingField: return "missing-field";
    case DiagnosticCode::InvalidValue: return "invalid-value";
    case DiagnosticCode::UnknownEnumValue: return "unknown-enum-value";
    case DiagnosticCode::DuplicateId: return "duplicate-id";
    case DiagnosticCode::UnresolvedReference: return "unresolved-reference";
    case DiagnosticCode::Cycle: return "cycle";
    case DiagnosticCode::InvalidAcp: return "invalid-acp";
    case DiagnosticCode::RootCount: return "root-count";
    case DiagnosticCode::Io: return "io";
    }
    return "?";
}

std::string format_diagnostic(const ParseDiagnostic& d)
{
    std::ostringstream out;
    out << d.file << ':' << d.line << ':' << d.column << ": "
        << (d.severity == ParseDiagnostic::Level::Error ? "error" : "warning") << '['
        << to_string(d.code) << "]: " << d.message;
    return out.str();
}

bool RawParseResult::has_errors() const
{
    return std::any_of(diagnostics.begin(), diagnostics.end(), [](const ParseDiagnostic& d) {
        return d.severity == ParseDiagnostic::Level::Error;
    });
}

namespace {

using Keys = std::initializer_list<std::string_view>;

class DocumentReader
{
public:
    DocumentReader(const std::string& file, const ParseOptions& options,
                   std::vector<ParseDiagnostic>& diags)
        : file_(file), options_(options), diags_(diags)
    {}

    [[nodiscard]] SourceLocation where(const YAML::Node& node) const
    {
        const YAML::Mark mark = node.Mark();
        if (mark.is_null()) {
            return {file_, 1, 1};
        }
        return {file_, mark.line + 1, mark.column + 1};
    }

    void error(DiagnosticCode code, const YAML::Node& at, std::string message)
    {
        report(ParseDiagnostic::Level::Error, code, where(at), std::move(message));
    }

    void report(ParseDiagnostic::Level level, DiagnosticCode code, const SourceLocation& loc,
                std::string message)
    {
        diags_.push_back({level, code, std::move(message), loc.file, loc.line, loc.column});
    }

    /// Validates that `node` is a mapping whose keys are all in `allowed`.
    bool expect_map(const YAML::Node& node, std::string_view what, Keys allowed)
    {
        if (!node.IsMap()) {
            error(DiagnosticCode::Syntax, node, std::string(what) + " must be a mapping");
            return false;
        }
        std::vector<std::string> seen;
        for (const auto& kv : node) {
            const YAML::Node& key = kv.first;
            if (!key.IsScalar()) {
                error(DiagnosticCode::Syntax, key, "mapping keys must be plain strings");
                continue;
            }
            const std::string name = key.Scalar();
            if (std::find(seen.begin(), seen.end(), name) != seen.end()) {
                error(DiagnosticCode::InvalidValue, key, "duplicate key '" + name + "' in " + std::string(what));
                continue;
            }
            seen.push_back(name);
            if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
                const auto level = options_.lenient ? ParseDiagnostic::Level::Warning
                                                    : ParseDiagnostic::Level::Error;
                report(level, DiagnosticCode::UnknownKey, where(key),
                       "unknown key '" + name + "' in " + std::string(what));
            }
        }
        return true;
    }

    /// Absent and explicit null are both treated as "not given".
    [[nodiscard]] static bool present(const YAML::Node& node)
    {
        return node.IsDefined() && !node.IsNull();
    }

    std::optional<std::string> required_string(const YAML::Node& map, std::string_view key,
                                               std::string_view what)
    {
        const YAML::Node node = map[std::string(key)];
        if (!present(node)) {
            error(DiagnosticCode::MissingField, map,
                  std::string(what) + " is missing required key '" + std::string(key) + "'");
            return std::nullopt;
        }
        return scalar(node, key);
    }

    std::optional<std::string> optional_string(const YAML::Node& map, std::string_view key)
    {
        const YAML::Node node = map[std::string(key)];
        if (!present(node)) {
            return std::nullopt;
        }
        return scalar(node, key);
    }

    std::optional<std::string> scalar(const YAML::Node& node, std::string_view key)
    {
        if (!node.IsScalar()) {
            error(DiagnosticCode::InvalidValue, node, "'" + std::string(key) + "' must be a scalar");
            return std::nullopt;
        }
        return node.Scalar();
    }

    template <typename Enum>
    std::optional<Enum> enumeration(const YAML::Node& node, std::string_view key)
    {
        auto text = scalar(node, key);
        if (!text) {
            return std::nullopt;
        }
        auto value = enum_from_string<Enum>(*text);
        if (!value) {
            std::string allowed;
            for (Enum v : enum_values<Enum>()) {
                allowed += (allowed.empty() ? "" : ", ") + std::string(to_string(v));
            }
            error(DiagnosticCode::UnknownEnumValue, node,
                  "unknown enumeration value '" + *text + "' for '" + std::string(key) +
                      "' (expected one of: " + allowed + ")");
        }
        return value;
    }

    template <typename Enum>
    std::optional<Enum> required_enum(const YAML::Node& map, std::string_view key, std::string_view what)
    {
        const YAML::Node node = map[std::string(key)];
        if (!present(node)) {
            error(DiagnosticCode::MissingField, map,
                  std::string(what) + " is missing required key '" + std::string(key) + "'");
            return std::nullopt;
        }
        return enumeration<Enum>(node, key);
    }

    std::optional<bool> optional_bool(const YAML::Node& map, std::string_view key)
    {
        const YAML::Node node = map[std::string(key)];
        if (!present(node)) {
            return std::nullopt;
        }
        auto text = scalar(node, key);
        if (!text) {
            return std::nullopt;
        }
        if (*text == "true") {
            return true;
        }
        if (*text == "false") {
            return false;
        }
        error(DiagnosticCode::InvalidValue, node, "'" + std::string(key) + "' must be true or false");
        return std::nullopt;
    }

    /// Sequence of scalars; absent or null yields an empty list.
    std::vector<std::pair<std::string, YAML::Node>> string_list(const YAML::Node& map, std::string_view key)
    {
        std::vector<std::pair<std::string, YAML::Node>> out;
        const YAML::Node node = map[std::string(key)];
        if (!present(node)) {
            return out;
        }
        if (!node.IsSequence()) {
            error(DiagnosticCode::InvalidValue, node, "'" + std::string(key) + "' must be a list");
            return out;
        }
        for (const auto& item : node) {
            if (auto s = scalar(item, key)) {
                out.emplace_back(*s, item);
            }
        }
        return out;
    }

    /// Sequence of mappings; absent or null yields an empty node list.
    std::vector<YAML::Node> map_list(const YAML::Node& parent, std::string_view key)
    {
        std::vector<YAML::Node> out;
        const YAML::Node node = parent[std::string(key)];
        if (!present(node)) {
            return out;
        }
        if (!node.IsSequence()) {
            error(DiagnosticCode::InvalidValue, node, "'" + std::string(key) + "' must be a list");
            return out;
        }
        for (const auto& item : node) {
            out.push_back(item);
        }
        return out;
    }

private:
    const std::string& file_;
    const ParseOptions& options_;
    std::vector<ParseDiagnostic>& diags_;
};

struct MergeState
{
    std::optional<GsnModel> model;
    GsnModel body;
    bool dimensions_declared = false;
    std::string dimensions_file;
    std::vector<std::pair<std::string, SourceLocation>> module_ids;
};

std::optional<GsnElement> read_element(DocumentReader& r, const YAML::Node& node)
{
    if (!r.expect_map(node, "element",
                      {"id", "kind", "text", "undeveloped", "argument_type", "roles", "supported_by",
                       "in_context_of", "traces", "artifacts", "acp"})) {
        return std::nullopt;
    }
    GsnElement e;
    e.location = r.where(node);
    auto id = r.required_string(node, "id", "element");
    auto kind = r.required_enum<ElementKind>(node, "kind", "element");
    auto text = r.required_string(node, "text", "element");
    if (!id) {
        return std::nullopt;
    }
    e.id = *id;
    if (kind) {
        e.kind = *kind;
    }
    if (text) {
        e.text = *text;
    }
    if (auto undeveloped = r.optional_bool(node, "undeveloped")) {
        e.undeveloped = *undeveloped;
        if (e.undeveloped && kind && *kind != ElementKind::Goal && *kind != ElementKind::Strategy) {
            r.error(DiagnosticCode::InvalidValue, node["undeveloped"],
                    "only goals and strategies can be undeveloped ('" + e.id + "' is a " +
                        std::string(to_string(*kind)) + ")");
        }
    }
    if (const YAML::Node t = node["argument_type"]; DocumentReader::present(t)) {
        e.argument_type = r.enumeration<ArgumentType>(t, "argument_type");
    }
    if (const YAML::Node roles = node["roles"]; DocumentReader::present(roles)) {
        if (!roles.IsSequence()) {
            r.error(DiagnosticCode::InvalidValue, roles, "'roles' must be a list");
        } else {
            for (const auto& item : roles) {
                if (auto role = r.enumeration<RoleTag>(item, "roles")) {
                    e.roles.insert(*role);
                }
            }
        }
    }
    for (auto& [ref, _] : r.string_list(node, "supported_by")) {
        e.supported_by.push_back(ref);
    }
    for (auto& [ref, _] : r.string_list(node, "in_context_of")) {
        e.in_context_of.push_back(ref);
    }
    for (auto& [ref, _] : r.string_list(node, "traces")) {
        e.traces.insert(ref);
    }
    for (auto& [ref, _] : r.string_list(node, "artifacts")) {
        e.artifacts.insert(ref);
    }
    for (const YAML::Node& a : r.map_list(node, "acp")) {
        if (!r.expect_map(a, "assurance claim point", {"target", "relation", "confidence_goal"})) {
            continue;
        }
        auto target = r.required_string(a, "target", "assurance claim point");
        auto relation = r.required_enum<Relation>(a, "relation", "assurance claim point");
        auto goal = r.required_string(a, "confidence_goal", "assurance claim point");
        if (target && relation && goal) {
            e.acps.push_back({*target, *relation, *goal});
        }
    }
    return e;
}

void read_registries(DocumentReader& r, const YAML::Node& node, const std::string& file, MergeState& state,
                     std::vector<ParseDiagnostic>& diags)
{
    if (!r.expect_map(node, "registries",
                      {"hazards", "regulatory_requirements", "normative_requirements",
                       "risk_acceptance_criteria", "context_dimensions"})) {
        return;
    }
    Registries& reg = state.body.registries;
    for (const YAML::Node& item : r.map_list(node, "hazards")) {
        if (!r.expect_map(item, "hazard", {"id", "description", "status"})) {
            continue;
        }
        auto id = r.required_string(item, "id", "hazard");
        auto description = r.required_string(item, "description", "hazard");
        auto status = r.required_enum<HazardStatus>(item, "status", "hazard");
        if (id && description && status) {
            reg.hazards.push_back({*id, *description, *status, r.where(item)});
        }
    }
    for (const YAML::Node& item : r.map_list(node, "regulatory_requirements")) {
        if (!r.expect_map(item, "regulatory requirement", {"id", "source", "text"})) {
            continue;
        }
        auto id = r.required_string(item, "id", "regulatory requirement");
        auto source = r.required_string(item, "source", "regulatory requirement");
        auto text = r.required_string(item, "text", "regulatory requirement");
        if (id && source && text) {
            reg.regulatory_requirements.push_back({*id, *source, *text, r.where(item)});
        }
    }
    for (const YAML::Node& item : r.map_list(node, "normative_requirements")) {
        if (!r.expect_map(item, "normative requirement", {"id", "source", "text", "selection_rationale"})) {
            continue;
        }
        auto id = r.required_string(item, "id", "normative requirement");
        auto source = r.required_string(item, "source", "normative requirement");
        auto text = r.required_string(item, "text", "normative requirement");
        auto rationale = r.optional_string(item, "selection_rationale");
        if (id && source && text) {
            reg.normative_requirements.push_back({*id, *source, *text, rationale, r.where(item)});
        }
    }
    for (const YAML::Node& item : r.map_list(node, "risk_acceptance_criteria")) {
        if (!r.expect_map(item, "risk acceptance criterion", {"id", "level", "text"})) {
            continue;
        }
        auto id = r.required_string(item, "id", "risk acceptance criterion");
        auto level = r.required_enum<RacLevel>(item, "level", "risk acceptance criterion");
        auto text = r.required_string(item, "text", "risk acceptance criterion");
        if (id && level && text) {
            reg.risk_acceptance_criteria.push_back({*id, *level, *text, r.where(item)});
        }
    }
    if (const YAML::Node dims = node["context_dimensions"]; dims.IsDefined()) {
        if (state.dimensions_declared) {
            r.error(DiagnosticCode::DuplicateId, dims,
                    "context_dimensions already declared in " + state.dimensions_file);
            return;
        }
        state.dimensions_declared = true;
        state.dimensions_file = file;
        reg.context_dimensions.clear();
        for (auto& [dim, _] : r.string_list(node, "context_dimensions")) {
            reg.context_dimensions.push_back(dim);
        }
    }
    (void)diags;
}

int last_content_line(std::string_view text)
{
    int line = 1;
    int last = 1;
    for (char c : text) {
        if (c == '\n') {
            ++line;
        } else if (std::isspace(static_cast<unsigned char>(c)) == 0) {
            last = line;
        }
    }
    return last;
}

void read_document(const SourceDocument& doc, const ParseOptions& options, MergeState& state,
                   std::vector<ParseDiagnostic>& diags, bool& fatal)
{
    YAML::Node root;
    try {
        root = YAML::Load(doc.text);
    } catch (const YAML::ParserException& e) {
        int line = e.mark.is_null() ? 1 : e.mark.line + 1;
        int column = e.mark.is_null() ? 1 : e.mark.column + 1;
        // Errors detected at end of input point at the last line with content.
        const int last = last_content_line(doc.text);
        if (line > last) {
            line = last;
            column = 1;
        }
        diags.push_back({ParseDiagnostic::Level::Error, DiagnosticCode::Syntax, e.msg, doc.path, line, column});
        fatal = true;
        return;
    }
    DocumentReader r(doc.path, options, diags);
    if (!root.IsDefined() || root.IsNull()) {
        return;  // empty document contributes nothing
    }
    if (!r.expect_map(root, "document", {"model", "modules", "registries", "artifacts"})) {
        fatal = true;
        return;
    }

    if (const YAML::Node header = root["model"]; header.IsDefined()) {
        if (state.model) {
            r.error(DiagnosticCode::DuplicateId, header,
                    "model header already declared in " + state.model->location.file);
        } else if (r.expect_map(header, "model", {"id", "version", "fragmentary"})) {
            GsnModel m;
            m.location = r.where(header);
            auto id = r.required_string(header, "id", "model");
            auto version = r.required_string(header, "version", "model");
            m.id = id.value_or("");
            m.version = version.value_or("");
            m.fragmentary = r.optional_bool(header, "fragmentary").value_or(false);
            state.model = std::move(m);
        }
    }

    for (const YAML::Node& mod : r.map_list(root, "modules")) {
        if (!r.expect_map(mod, "module", {"id", "elements"})) {
            continue;
        }
        GsnModule module;
        module.location = r.where(mod);
        auto id = r.required_string(mod, "id", "module");
        if (!id) {
            continue;
        }
        module.id = *id;
        const auto dup = std::find_if(state.module_ids.begin(), state.module_ids.end(),
                                      [&](const auto& p) { return p.first == module.id; });
        if (dup != state.module_ids.end()) {
            r.error(DiagnosticCode::DuplicateId, mod,
                    "duplicate module id '" + module.id + "' (first declared at " + dup->second.file + ":" +
                        std::to_string(dup->second.line) + ")");
            continue;
        }
        state.module_ids.emplace_back(module.id, module.location);
        for (const YAML::Node& el : r.map_list(mod, "elements")) {
            if (auto e = read_element(r, el)) {
                module.elements.push_back(std::move(*e));
            }
        }
        state.body.modules.push_back(std::move(module));
    }

    if (const YAML::Node reg = root["registries"]; DocumentReader::present(reg)) {
        read_registries(r, reg, doc.path, state, diags);
    }

    for (const YAML::Node& item : r.map_list(root, "artifacts")) {
        if (!r.expect_map(item, "artifact", {"id", "role", "title", "uri", "dimension"})) {
            continue;
        }
        auto id = r.required_string(item, "id", "artifact");
        auto role = r.required_enum<ArtifactRole>(item, "role", "artifact");
        auto title = r.required_string(item, "title", "artifact");
        auto uri = r.required_string(item, "uri", "artifact");
        auto dimension = r.optional_string(item, "dimension");
        if (id && role && title && uri) {
            state.body.artifacts.push_back({*id, *role, *title, *uri, dimension, r.where(item)});
        }
    }
}

}  // namespace

RawParseResult parse_documents(std::span<const SourceDocument> documents, const ParseOptions& options)
{
    RawParseResult result;
    std::vector<const SourceDocument*> ordered;
    for (const auto& doc : documents) {
        ordered.push_back(&doc);
    }
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const SourceDocument* a, const SourceDocument* b) { return a->path < b->path; });

    MergeState state;
    bool fatal = false;
    for (const SourceDocument* doc : ordered) {
        read_document(*doc, options, state, result.diagnostics, fatal);
    }
    if (fatal) {
        return result;
    }
    if (!state.model) {
        const std::string file = ordered.empty() ? std::string("<none>") : ordered.front()->path;
        result.diagnostics.push_back({ParseDiagnostic::Level::Error, DiagnosticCode::MissingField,
                                      "no document declares the 'model' header", file, 1, 1});
        return result;
    }
    GsnModel model = std::move(*state.model);
    model.modules = std::move(state.body.modules);
    model.registries = std::move(state.body.registries);
    model.artifacts = std::move(state.body.artifacts);
    result.model = std::move(model);
    return result;
}

ParseDiagnostic to_parse_diagnostic(const LinkDiagnostic& d)
{
    DiagnosticCode code = DiagnosticCode::Syntax;
    switch (d.code) {
    case LinkCode::DuplicateId: code = DiagnosticCode::DuplicateId; break;
    case LinkCode::UnresolvedReference: code = DiagnosticCode::UnresolvedReference; break;
    case LinkCode::Cycle: code = DiagnosticCode::Cycle; break;
    case LinkCode::InvalidAcp: code = DiagnosticCode::InvalidAcp; break;
    case LinkCode::RootCount: code = DiagnosticCode::RootCount; break;
    }
    return {ParseDiagnostic::Level::Error, code, d.message, d.location.file,
            std::max(d.location.line, 1), std::max(d.location.column, 1)};
}

ParseResult parse_model(std::span<const SourceDocument> documents, const ParseOptions& options)
{
    RawParseResult raw = parse_documents(documents, options);
    ParseResult result;
    result.diagnostics = std::move(raw.diagnostics);
    const bool errors = std::any_of(result.diagnostics.begin(), result.diagnostics.end(),
                                    [](const auto& d) { return d.severity == ParseDiagnostic::Level::Error; });
    // Reference and cycle checks only make sense on schema-clean input.
    if (!raw.model || errors) {
        return result;
    }
    LinkResult linked = link(std::move(*raw.model));
    for (const auto& d : linked.diagnostics) {
        result.diagnostics.push_back(to_parse_diagnostic(d));
    }
    if (linked.diagnostics.empty()) {
        result.model = std::move(linked.model);
    }
    return result;
}

std::vector<SourceDocument> read_documents(std::span<const std::string> paths,
                                           std::vector<ParseDiagnostic>& diagnostics)
{
    std::vector<SourceDocument> docs;
    for (const auto& path : paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            diagnostics.push_back({ParseDiagnostic::Level::Error, DiagnosticCode::Io,
                                   "cannot read file", path, 1, 1});
            continue;
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        docs.push_back({path, buffer.str()});
    }
    return docs;
}

// Serialization

namespace {

std::string quote(std::string_view s)
{
    static constexpr char hex[] = "0123456789abcdef";
    std::string out = "\"";
    for (const char ch : s) {
        const auto c = static_cast<unsigned char>(ch);
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (c < 0x20 || c == 0x7f) {
                out += "\\x";
                out += hex[c >> 4];
                out += hex[c & 0xf];
            } else {
                out += ch;
            }
        }
    }
    out += '"';
    return out;
}

template <typename Range, typename Fn>
std::string flow_list(const Range& items, Fn&& render)
{
    std::string out = "[";
    bool first = true;
    for (const auto& item : items) {
        if (!first) {
            out += ", ";
        }
        first = false;
        out += render(item);
    }
    return out + "]";
}

std::string quoted_list(const auto& items)
{
    return flow_list(items, [](const std::string& s) { return quote(s); });
}

void write_element(std::ostream& out, const GsnElement& e)
{
    const std::string pad = "      ";
    out << "    - id: " << quote(e.id) << '\n';
    out << pad << "kind: " << to_string(e.kind) << '\n';
    out << pad << "text: " << quote(e.text) << '\n';
    if (e.undeveloped) {
        out << pad << "undeveloped: true\n";
    }
    if (e.argument_type) {
        out << pad << "argument_type: " << to_string(*e.argument_type) << '\n';
    }
    if (!e.roles.empty()) {
        out << pad << "roles: "
            << flow_list(e.roles, [](RoleTag r) { return std::string(to_string(r)); }) << '\n';
    }
    if (!e.supported_by.empty()) {
        out << pad << "supported_by: " << quoted_list(e.supported_by) << '\n';
    }
    if (!e.in_context_of.empty()) {
        out << pad << "in_context_of: " << quoted_list(e.in_context_of) << '\n';
    }
    if (!e.traces.empty()) {
        out << pad << "traces: " << quoted_list(e.traces) << '\n';
    }
    if (!e.artifacts.empty()) {
        out << pad << "artifacts: " << quoted_list(e.artifacts) << '\n';
    }
    if (!e.acps.empty()) {
        out << pad << "acp:\n";
        for (const auto& acp : e.acps) {
            out << pad << "  - target: " << quote(acp.target) << '\n';
            out << pad << "    relation: " << to_string(acp.relation) << '\n';
            out << pad << "    confidence_goal: " << quote(acp.confidence_goal) << '\n';
        }
    }
}

void write_registries(std::ostream& out, const Registries& reg)
{
    out << "registries:\n";
    auto open_list = [&](std::string_view key, bool empty) {
        out << "  " << key << ':' << (empty ? " []\n" : "\n");
    };
    open_list("hazards", reg.hazards.empty());
    for (const auto& h : reg.hazards) {
        out << "    - id: " << quote(h.id) << '\n'
            << "      description: " << quote(h.description) << '\n'
            << "      status: " << to_string(h.status) << '\n';
    }
    open_list("regulatory_requirements", reg.regulatory_requirements.empty());
    for (const auto& q : reg.regulatory_requirements) {
        out << "    - id: " << quote(q.id) << '\n'
            << "      source: " << quote(q.source) << '\n'
            << "      text: " << quote(q.text) << '\n';
    }
    open_list("normative_requirements", reg.normative_requirements.empty());
    for (const auto& q : reg.normative_requirements) {
        out << "    - id: " << quote(q.id) << '\n'
            << "      source: " << quote(q.source) << '\n'
            << "      text: " << quote(q.text) << '\n';
        if (q.selection_rationale) {
            out << "      selection_rationale: " << quote(*q.selection_rationale) << '\n';
        }
    }
    open_list("risk_acceptance_criteria", reg.risk_acceptance_criteria.empty());
    for (const auto& c : reg.risk_acceptance_criteria) {
        out << "    - id: " << quote(c.id) << '\n'
            << "      level: " << to_string(c.level) << '\n'
            << "      text: " << quote(c.text) << '\n';
    }
    out << "  context_dimensions: " << quoted_list(reg.context_dimensions) << '\n';
}

}  // namespace

std::string serialize_model(const GsnModel& model, const SerializeOptions& options)
{
    std::ostringstream out;
    if (options.include_structure) {
        out << "model:\n";
        out << "  id: " << quote(model.id) << '\n';
        out << "  version: " << quote(model.version) << '\n';
        if (model.fragmentary) {
            out << "  fragmentary: true\n";
        }
        out << "modules:" << (model.modules.empty() ? " []\n" : "\n");
        for (const auto& module : model.modules) {
            out << "  - id: " << quote(module.id) << '\n';
            out << "    elements:" << (module.elements.empty() ? " []\n" : "\n");
            std::vector<const GsnElement*> sorted;
            for (const auto& e : module.elements) {
                sorted.push_back(&e);
            }
            std::stable_sort(sorted.begin(), sorted.end(),
                             [](const GsnElement* a, const GsnElement* b) { return a->id < b->id; });
            for (const GsnElement* e : sorted) {
                write_element(out, *e);
            }
        }
    }
    if (options.include_registries) {
        write_registries(out, model.registries);
    }
    if (options.include_structure) {
        out << "artifacts:" << (model.artifacts.empty() ? " []\n" : "\n");
        for (const auto& a : model.artifacts) {
            out << "  - id: " << quote(a.id) << '\n'
                << "    role: " << to_string(a.role) << '\n'
                << "    title: " << quote(a.title) << '\n'
                << "    uri: " << quote(a.uri) << '\n';
            if (a.dimension) {
                out << "    dimension: " << quote(*a.dimension) << '\n';
            }
        }
    }
    return out.str();
}

}  // namespace sac
