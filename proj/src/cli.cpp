#include "sac/cli.hpp"

#include "sac/parser.hpp"
#include "sac/report.hpp"
#include "sac/rules.hpp"
#include "sac/scaffold.hpp"
#include "sac/trace.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace sac {

namespace {

namespace fs = std::filesystem;

struct InputOptions
{
    std::vector<std::string> paths;
    bool lenient = false;
};

/// Parses and links the inputs; prints diagnostics. Empty on failure.
std::optional<LinkedModel> load(const InputOptions& in, std::ostream& err)
{
    std::vector<ParseDiagnostic> diags;
    const auto docs = read_documents(in.paths, diags);
    if (!diags.empty()) {
        for (const auto& d : diags) {
            err << format_diagnostic(d) << '\n';
        }
        return std::nullopt;
    }
    ParseResult result = parse_model(docs, ParseOptions{in.lenient});
    for (const auto& d : result.diagnostics) {
        err << format_diagnostic(d) << '\n';
    }
    return std::move(result.model);
}

bool write_file(const fs::path& path, const std::string& text, std::ostream& err)
{
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    file << text;
    file.close();
    if (!file) {
        err << path.string() << ": cannot write file\n";
        return false;
    }
    return true;
}

/// `model.sac.yaml` -> `model.registries.sac.yaml`
fs::path registries_path(const fs::path& out)
{
    std::string name = out.filename().string();
    constexpr std::string_view kSuffix = ".sac.yaml";
    if (name.size() > kSuffix.size() && name.ends_with(kSuffix)) {
        name.resize(name.size() - kSuffix.size());
    } else if (out.has_extension()) {
        name = out.stem().string();
    }
    return out.parent_path() / (name + ".registries.sac.yaml");
}

struct CheckOptions
{
    InputOptions input;
    std::string profile = "all";
    std::string format = "text";
    bool strict_warnings = false;
    std::vector<std::string> severities;
};

int cmd_check(const CheckOptions& opt, std::ostream& out, std::ostream& err)
{
    RuleProfile profile;
    try {
        profile = RuleProfile::named(opt.profile);
        for (const auto& spec : opt.severities) {
            const auto eq = spec.find('=');
            const auto level = eq == std::string::npos ? std::nullopt : severity_from_string(spec.substr(eq + 1));
            if (!level) {
                err << "error: --severity expects RULE=error|warning|info, got '" << spec << "'\n";
                return kExitFailure;
            }
            profile.severity_overrides[spec.substr(0, eq)] = *level;
        }
        validate_profile(profile);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }

    const auto model = load(opt.input, err);
    if (!model) {
        return kExitFailure;
    }
    ProfileResult result = run_profile(*model, profile);
    if (!result.requirements_evaluated) {
        err << "note: well-formedness errors present; requirement rules were not evaluated\n";
    }
    ReportBundle bundle =
        make_bundle(std::move(result.findings), profile.name, model->model().id, model->model().version);
    attach_metrics(bundle, *model);
    out << emit_findings(bundle, opt.format == "json" ? ReportFormat::Json : ReportFormat::Text);

    const auto& s = bundle.summary;
    if (s.errors > 0 || (opt.strict_warnings && s.warnings > 0)) {
        return kExitFindings;
    }
    return kExitOk;
}

struct ScaffoldCliOptions
{
    std::string out_path;
    bool split = false;
    bool force = false;
    bool no_samples = false;
    std::optional<std::string> top_claim;
    std::optional<std::vector<std::string>> dimensions;
};

int cmd_scaffold(const ScaffoldCliOptions& opt, std::ostream& out, std::ostream& err)
{
    ScaffoldOptions options;
    options.include_samples = !opt.no_samples;
    if (opt.top_claim) {
        options.top_claim_text = *opt.top_claim;
    }
    if (opt.dimensions) {
        options.context_dimensions = *opt.dimensions;
    }
    const GsnModel model = scaffold_reference_model(options);

    const fs::path main_path(opt.out_path);
    std::vector<std::pair<fs::path, std::string>> files;
    if (opt.split) {
        files.emplace_back(main_path, serialize_model(model, {.include_registries = false}));
        files.emplace_back(registries_path(main_path), serialize_model(model, {.include_structure = false}));
    } else {
        files.emplace_back(main_path, serialize_model(model));
    }
    if (!opt.force) {
        for (const auto& [path, _] : files) {
            if (fs::exists(path)) {
                err << path.string() << ": file exists (use --force to overwrite)\n";
                return kExitFailure;
            }
        }
    }
    for (const auto& [path, text] : files) {
        if (!write_file(path, text, err)) {
            return kExitFailure;
        }
    }
    out << "wrote " << files.front().first.string();
    if (files.size() > 1) {
        out << " and " << files.back().first.string();
    }
    out << " (" << model.element_count() << " elements, " << model.artifacts.size() << " artifacts)\n";
    return kExitOk;
}

struct TraceCliOptions
{
    InputOptions input;
    std::string registry;
    std::string format = "csv";
};

int cmd_trace(const TraceCliOptions& opt, std::ostream& out, std::ostream& err)
{
    RegistryKind kind{};
    try {
        kind = registry_from_string(opt.registry);
    } catch (const UnknownRegistryError& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    const auto model = load(opt.input, err);
    if (!model) {
        return kExitFailure;
    }
    const TraceMatrix matrix = trace_registry(*model, kind);
    out << (opt.format == "json" ? trace_matrix_json(matrix) : trace_matrix_csv(matrix));
    return kExitOk;
}

struct RenderCliOptions
{
    InputOptions input;
    std::string out_path;
    bool color_by_type = false;
};

int cmd_render(const RenderCliOptions& opt, std::ostream& out, std::ostream& err)
{
    const auto model = load(opt.input, err);
    if (!model) {
        return kExitFailure;
    }
    const std::string dot = render_dot(*model, {opt.color_by_type});
    if (opt.out_path.empty()) {
        out << dot;
        return kExitOk;
    }
    return write_file(opt.out_path, dot, err) ? kExitOk : kExitFailure;
}

int cmd_rules(const std::string& format, std::ostream& out)
{
    if (format == "json") {
        out << rule_catalog_json();
        return kExitOk;
    }
    for (const auto& rule : rule_catalog()) {
        out << rule.id << '\t' << to_string(rule.default_severity) << '\t' << rule.title << '\n';
    }
    return kExitOk;
}

void add_inputs(CLI::App* cmd, InputOptions& in)
{
    cmd->add_option("paths", in.paths, "Model documents (.sac.yaml)")->required();
    cmd->add_flag("--lenient", in.lenient, "Report unknown keys as warnings");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Safety assurance argumentation checker", "sac"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "sac 0.1.0");

    CheckOptions check;
    CLI::App* check_cmd = app.add_subcommand("check", "Validate models against a rule profile");
    add_inputs(check_cmd, check.input);
    check_cmd->add_option("--profile", check.profile, "Rule profile")
        ->check(CLI::IsMember({"core", "instantiation", "gsn-wf", "all"}))
        ->capture_default_str();
    check_cmd->add_option("--format", check.format, "Report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    check_cmd->add_flag("--strict-warnings", check.strict_warnings, "Treat warnings as errors for the exit code");
    check_cmd->add_option("--severity", check.severities, "Override a rule severity, RULE=error|warning|info")
        ->take_all()
        ->allow_extra_args(false);

    ScaffoldCliOptions scaffold;
    CLI::App* scaffold_cmd = app.add_subcommand("scaffold", "Write the reference argumentation skeleton");
    scaffold_cmd->add_option("out", scaffold.out_path, "Output path")->required();
    scaffold_cmd->add_flag("--split", scaffold.split, "Write registries to a separate document");
    scaffold_cmd->add_flag("--force", scaffold.force, "Overwrite existing files");
    scaffold_cmd->add_flag("--no-samples", scaffold.no_samples, "Leave the registries empty");
    scaffold_cmd->add_option("--top-claim", scaffold.top_claim, "Text of the root goal");
    scaffold_cmd->add_option("--dimensions", scaffold.dimensions, "Comma-separated context dimensions")
        ->delimiter(',')
        ->allow_extra_args(false);

    TraceCliOptions trace;
    CLI::App* trace_cmd = app.add_subcommand("trace", "Print the trace matrix of a registry");
    add_inputs(trace_cmd, trace.input);
    trace_cmd->add_option("--registry", trace.registry,
                          "hazards | regulatory_requirements | normative_requirements | risk_acceptance_criteria")
        ->required();
    trace_cmd->add_option("--format", trace.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    RenderCliOptions render;
    CLI::App* render_cmd = app.add_subcommand("render", "Render the argument graph as Graphviz DOT");
    add_inputs(render_cmd, render.input);
    render_cmd->add_option("-o,--output", render.out_path, "Output file (default: standard output)");
    render_cmd->add_flag("--color-by-type", render.color_by_type, "Fill nodes by argument type");

    std::string rules_format = "text";
    CLI::App* rules_cmd = app.add_subcommand("rules", "Print the rule catalog");
    rules_cmd->add_option("--format", rules_format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion& e) {
        out << e.what() << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        if (!app.get_subcommands().empty()) {
            err << app.get_subcommands().front()->help();
        } else {
            err << app.help();
        }
        return kExitFailure;
    }

    if (check_cmd->parsed()) {
        return cmd_check(check, out, err);
    }
    if (scaffold_cmd->parsed()) {
        return cmd_scaffold(scaffold, out, err);
    }
    if (trace_cmd->parsed()) {
        return cmd_trace(trace, out, err);
    }
    if (render_cmd->parsed()) {
        return cmd_render(render, out, err);
    }
    return cmd_rules(rules_format, out);
}

}  // namespace sac
