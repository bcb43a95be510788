#include "sac/report.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <sstream>

namespace sac {

ReportBundle make_bundle(std::vector<Finding> findings, std::string profile, std::string model_id,
                         std::string model_version)
{
    ReportBundle bundle;
    sort_findings(findings);
    const SeverityCounts counts = count_by_severity(findings);
    bundle.findings = std::move(findings);
    bundle.summary = {counts.errors, counts.warnings, counts.infos, std::move(profile), std::move(model_id),
                      std::move(model_version)};
    return bundle;
}

void attach_metrics(ReportBundle& bundle, const LinkedModel& model)
{
    bundle.matrices.clear();
    for (const RegistryKind kind : {RegistryKind::Hazards, RegistryKind::RegulatoryRequirements,
                                    RegistryKind::NormativeRequirements, RegistryKind::RiskAcceptanceCriteria}) {
        bundle.matrices.push_back(trace_registry(model, kind));
    }
    bundle.acp_report = acp_report(model);
    bundle.evidence_report = evidence_report(model);
}

namespace {

std::string upper(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

std::string ratio(std::size_t num, std::size_t den, double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", value);
    return std::to_string(num) + "/" + std::to_string(den) + " (" + buf + ")";
}

std::size_t covered_rows(const TraceMatrix& m)
{
    return static_cast<std::size_t>(
        std::count_if(m.rows.begin(), m.rows.end(), [](const TraceRow& r) { return r.covered(); }));
}

std::string emit_text(const ReportBundle& bundle)
{
    std::ostringstream out;
    for (const auto& f : bundle.findings) {
        out << upper(to_string(f.severity)) << ' ' << f.rule;
        for (const auto& e : f.elements) {
            out << ' ' << e;
        }
        out << ": " << f.message << '\n';
    }
    for (const auto& m : bundle.matrices) {
        out << "coverage " << m.registry_name << ": " << ratio(covered_rows(m), m.rows.size(), m.coverage)
            << (m.vacuous ? " vacuous" : "") << '\n';
    }
    if (const auto& acp = bundle.acp_report) {
        out << "acp density: " << ratio(acp->risk_edges_with_acp, acp->risk_edges, acp->acp_density)
            << ", unlinked confidence goals: " << acp->unlinked_confidence_goals.size() << '\n';
    }
    if (const auto& ev = bundle.evidence_report) {
        out << "solutions without evidence: " << ev->solutions_without_artifacts.size() << '/'
            << ev->solutions_total << ", undeveloped goals: " << ev->undeveloped_goals.size() << '\n';
    }
    const auto& s = bundle.summary;
    out << s.errors << " errors, " << s.warnings << " warnings";
    if (s.infos > 0) {
        out << ", " << s.infos << " infos";
    }
    out << '\n';
    return out.str();
}

std::string emit_json(const ReportBundle& bundle)
{
    using nlohmann::ordered_json;
    ordered_json findings = ordered_json::array();
    for (const auto& f : bundle.findings) {
        ordered_json item;
        item["rule"] = f.rule;
        item["severity"] = to_string(f.severity);
        item["message"] = f.message;
        item["elements"] = f.elements;
        if (f.location && !f.location->file.empty()) {
            item["file"] = f.location->file;
            item["line"] = f.location->line;
        } else {
            item["file"] = nullptr;
            item["line"] = nullptr;
        }
        findings.push_back(std::move(item));
    }
    const auto& s = bundle.summary;
    ordered_json out;
    out["model"] = {{"id", s.model_id}, {"version", s.model_version}};
    out["profile"] = s.rule_profile;
    out["findings"] = std::move(findings);
    out["summary"] = {{"errors", s.errors}, {"warnings", s.warnings}, {"infos", s.infos}};

    if (!bundle.matrices.empty() || bundle.acp_report || bundle.evidence_report) {
        ordered_json metrics;
        ordered_json coverage = ordered_json::array();
        for (const auto& m : bundle.matrices) {
            coverage.push_back({{"registry", m.registry_name},
                                {"covered", covered_rows(m)},
                                {"total", m.rows.size()},
                                {"coverage", m.coverage},
                                {"vacuous", m.vacuous}});
        }
        metrics["coverage"] = std::move(coverage);
        if (const auto& acp = bundle.acp_report) {
            metrics["acp"] = {{"total_acps", acp->total_acps},
                              {"risk_edges", acp->risk_edges},
                              {"acp_density", acp->acp_density},
                              {"unlinked_confidence_goals", acp->unlinked_confidence_goals}};
        }
        if (const auto& ev = bundle.evidence_report) {
            metrics["evidence"] = {{"solutions_total", ev->solutions_total},
                                   {"solutions_without_artifacts", ev->solutions_without_artifacts},
                                   {"undeveloped_goals", ev->undeveloped_goals}};
        }
        out["metrics"] = std::move(metrics);
    }
    return out.dump(2) + "\n";
}

std::string dot_quote(std::string_view s)
{
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': break;
        default: out += c;
        }
    }
    return out + "\"";
}

constexpr std::array<std::string_view, kArgumentTypeCount> kTypeColors{
    "#f4cccc",  // risk
    "#d9d2e9",  // confidence
    "#fff2cc",  // conformance
    "#fce5cd",  // compliance
    "#cfe2f3",  // product
    "#d9ead3",  // process
    "#d0e0e3",  // contextualization
    "#ead1dc",  // soundness
};

std::string fill_color(ArgumentTypeSet types)
{
    for (std::size_t t = 0; t < kArgumentTypeCount; ++t) {
        if (types.contains(static_cast<ArgumentType>(t))) {
            return std::string(kTypeColors[t]);
        }
    }
    return "#ffffff";
}

std::string node_attributes(const GsnElement& e, ArgumentTypeSet types, const DotOptions& options)
{
    std::string shape;
    std::string style;
    std::string extra;
    switch (e.kind) {
    case ElementKind::Goal: shape = "box"; break;
    case ElementKind::Strategy: shape = "parallelogram"; break;
    case ElementKind::Solution: shape = "circle"; break;
    case ElementKind::Context:
        shape = "box";
        style = "rounded";
        break;
    case ElementKind::Assumption:
        shape = "ellipse";
        extra = ", xlabel=\"A\"";
        break;
    case ElementKind::Justification:
        shape = "ellipse";
        extra = ", xlabel=\"J\"";
        break;
    }
    if (options.color_by_type) {
        style = style.empty() ? "filled" : style + ",filled";
        extra += ", fillcolor=" + dot_quote(fill_color(types));
    }
    std::string attrs = "shape=" + shape;
    if (!style.empty()) {
        attrs += ", style=" + dot_quote(style);
    }
    return attrs + ", label=" + dot_quote(e.id + "\n" + e.text) + extra;
}

}  // namespace

std::string emit_findings(const ReportBundle& bundle, ReportFormat format)
{
    return format == ReportFormat::Json ? emit_json(bundle) : emit_text(bundle);
}

std::string render_dot(const LinkedModel& model, const DotOptions& options)
{
    using Index = LinkedModel::Index;
    std::vector<Index> sorted(model.size());
    for (Index i = 0; i < model.size(); ++i) {
        sorted[i] = i;
    }
    std::sort(sorted.begin(), sorted.end(),
              [&](Index a, Index b) { return model.element(a).id < model.element(b).id; });

    std::ostringstream out;
    out << "digraph " << dot_quote(model.model().id) << " {\n";
    out << "  rankdir=TB;\n";
    out << "  node [fontsize=10];\n";
    for (Index i : sorted) {
        const GsnElement& e = model.element(i);
        out << "  " << dot_quote(e.id) << " [" << node_attributes(e, model.argument_types(i), options) << "];\n";
    }

    std::vector<std::string> edges;
    for (Index i : sorted) {
        const GsnElement& e = model.element(i);
        std::vector<std::size_t> acp_seen(e.acps.size(), 0);
        auto emit = [&](const std::string& target, Relation relation) {
            const std::string style = relation == Relation::SupportedBy ? "solid" : "dashed";
            const std::string head = relation == Relation::SupportedBy ? "normal" : "empty";
            std::string from = dot_quote(e.id);
            for (std::size_t k = 0; k < e.acps.size(); ++k) {
                const auto& acp = e.acps[k];
                if (acp.target != target || acp.relation != relation || acp_seen[k] != 0) {
                    continue;
                }
                acp_seen[k] = 1;
                const std::string node = dot_quote("ACP:" + e.id + "->" + target + "#" + std::to_string(k));
                out << "  " << node
                    << " [shape=square, style=filled, fillcolor=\"#000000\", width=0.12, height=0.12, "
                       "fixedsize=true, label=\"\"];\n";
                edges.push_back("  " + from + " -> " + node + " [style=" + style + ", arrowhead=none];\n");
                edges.push_back("  " + node + " -> " + dot_quote(acp.confidence_goal) +
                                " [style=dotted, arrowhead=odot, constraint=false];\n");
                from = node;
            }
            edges.push_back("  " + from + " -> " + dot_quote(target) + " [style=" + style + ", arrowhead=" + head +
                            "];\n");
        };
        for (const auto& child : e.supported_by) {
            emit(child, Relation::SupportedBy);
        }
        for (const auto& ctx : e.in_context_of) {
            emit(ctx, Relation::InContextOf);
        }
    }
    for (const auto& edge : edges) {
        out << edge;
    }
    out << "}\n";
    return out.str();
}

}  // namespace sac
