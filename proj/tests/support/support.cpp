#include "support.hpp"

#include "sac/scaffold.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sac::test {

namespace fs = std::filesystem;

fs::path source_dir()
{
    return SAC_SOURCE_DIR;
}

fs::path fixture_dir()
{
    return source_dir() / "tests" / "fixtures";
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fs::path temp_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("sac-test-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

ParseResult parse_text(const std::string& text, const std::string& path, const ParseOptions& options)
{
    const SourceDocument doc{path, text};
    return parse_model(std::span(&doc, 1), options);
}

RawParseResult parse_raw(const std::string& text, const std::string& path)
{
    const SourceDocument doc{path, text};
    return parse_documents(std::span(&doc, 1));
}

LinkedModel must_link(GsnModel model)
{
    LinkResult r = link(std::move(model));
    if (!r.model) {
        throw std::runtime_error("link failed: " + r.diagnostics.front().message);
    }
    return std::move(*r.model);
}

std::vector<fs::path> fixtures(const fs::path& dir)
{
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.ends_with(".sac.yaml")) {
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

GsnElement& element(GsnModel& model, std::string_view id)
{
    for (auto& module : model.modules) {
        for (auto& e : module.elements) {
            if (e.id == id) {
                return e;
            }
        }
    }
    throw std::out_of_range("no element " + std::string(id));
}

GsnElement make_element(ElementKind kind, std::string id, std::vector<std::string> supported_by)
{
    GsnElement e;
    e.kind = kind;
    e.id = std::move(id);
    e.text = "text of " + e.id;
    e.supported_by = std::move(supported_by);
    return e;
}

std::size_t count(const std::vector<Finding>& findings, std::string_view rule, Severity severity)
{
    return static_cast<std::size_t>(std::count_if(findings.begin(), findings.end(), [&](const Finding& f) {
        return f.rule == rule && f.severity == severity;
    }));
}

std::size_t count_errors(const std::vector<Finding>& findings)
{
    return static_cast<std::size_t>(std::count_if(
        findings.begin(), findings.end(), [](const Finding& f) { return f.severity == Severity::Error; }));
}

namespace {

void erase_ref(std::vector<std::string>& refs, std::string_view id)
{
    const auto it = std::find(refs.begin(), refs.end(), id);
    if (it == refs.end()) {
        throw std::out_of_range("no reference " + std::string(id));
    }
    refs.erase(it);
}

}  // namespace

const std::vector<Mutation>& scaffold_mutations()
{
    static const std::vector<Mutation> mutations{
        {"R1", "drop the risk tag from G_RISK",
         [](GsnModel& m) { element(m, "G_RISK").argument_type.reset(); }},
        {"R2", "drop the confidence tag from G_CONF_PRODUCT",
         [](GsnModel& m) { element(m, "G_CONF_PRODUCT").argument_type.reset(); }},
        {"R3", "remove the trace link of G_REG_1", [](GsnModel& m) { element(m, "G_REG_1").traces.clear(); }},
        {"R4", "remove the trace link of G_NORM_1", [](GsnModel& m) { element(m, "G_NORM_1").traces.clear(); }},
        {"R5", "drop the process tag from G_PROCESS",
         [](GsnModel& m) { element(m, "G_PROCESS").argument_type.reset(); }},
        {"R6", "set hazard H-SAMPLE-1 to open",
         [](GsnModel& m) { m.registries.hazards.at(0).status = HazardStatus::Open; }},
        {"R7", "drop the lifecycle_maintenance role from G_LC_MAINTENANCE",
         [](GsnModel& m) { element(m, "G_LC_MAINTENANCE").roles.erase(RoleTag::LifecycleMaintenance); }},
        {"R8", "drop the safety_culture role from G_SAFETY_CULTURE",
         [](GsnModel& m) { element(m, "G_SAFETY_CULTURE").roles.erase(RoleTag::SafetyCulture); }},
        {"R9", "detach C_CTX_ODD from G_CTX",
         [](GsnModel& m) { erase_ref(element(m, "G_CTX").in_context_of, "C_CTX_ODD"); }},
        {"R10", "delete the soundness module and its link from S_TOP",
         [](GsnModel& m) {
             erase_ref(element(m, "S_TOP").supported_by, "G_SND");
             std::erase_if(m.modules, [](const GsnModule& mod) { return mod.id == "soundness"; });
         }},
        {"ST1", "move G_COMPLIANCE from G_PROCESS_SOTA to S_TOP",
         [](GsnModel& m) {
             erase_ref(element(m, "G_PROCESS_SOTA").supported_by, "G_COMPLIANCE");
             element(m, "S_TOP").supported_by.push_back("G_COMPLIANCE");
         }},
        {"D1", "drop the rac_maintain role from G_RAC_GLOBAL_MAINTAIN",
         [](GsnModel& m) { element(m, "G_RAC_GLOBAL_MAINTAIN").roles.erase(RoleTag::RacMaintain); }},
        {"D2", "drop the unknown_scenarios role from G_UNKNOWN",
         [](GsnModel& m) { element(m, "G_UNKNOWN").roles.erase(RoleTag::UnknownScenarios); }},
        {"TL1", "reword the root claim",
         [](GsnModel& m) { element(m, "G_TOP").text = "The system is acceptably safe"; }},
        {"EV1", "remove the evidence link of Sn_HAZARD_ANALYSIS",
         [](GsnModel& m) { element(m, "Sn_HAZARD_ANALYSIS").artifacts.clear(); }},
    };
    return mutations;
}

GsnModel random_model(std::uint32_t seed, std::size_t max_elements)
{
    std::mt19937 rng(seed);
    auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

    GsnModel m;
    m.id = "random-" + std::to_string(seed);
    m.version = "1";
    auto& reg = m.registries;
    std::vector<std::string> item_ids;
    for (std::size_t i = 0, n = pick(4); i < n; ++i) {
        reg.hazards.push_back({"H" + std::to_string(i), "hazard",
                               chance(0.25) ? HazardStatus::Open : HazardStatus::Managed, {}});
        item_ids.push_back(reg.hazards.back().id);
    }
    for (std::size_t i = 0, n = pick(4); i < n; ++i) {
        reg.regulatory_requirements.push_back({"REG" + std::to_string(i), "law", "text", {}});
        item_ids.push_back(reg.regulatory_requirements.back().id);
    }
    for (std::size_t i = 0, n = pick(4); i < n; ++i) {
        std::optional<std::string> rationale;
        if (chance(0.5)) {
            rationale = "because";
        }
        reg.normative_requirements.push_back({"NORM" + std::to_string(i), "std", "text", rationale, {}});
        item_ids.push_back(reg.normative_requirements.back().id);
    }
    for (std::size_t i = 0, n = pick(3); i < n; ++i) {
        reg.risk_acceptance_criteria.push_back(
            {"RAC" + std::to_string(i), chance(0.5) ? RacLevel::Global : RacLevel::Scenario, "text", {}});
        item_ids.push_back(reg.risk_acceptance_criteria.back().id);
    }

    const auto& types = enum_values<ArgumentType>();
    const auto& roles = enum_values<RoleTag>();
    GsnModule module;
    module.id = "m";
    const std::size_t n = 1 + pick(max_elements);
    for (std::size_t k = 0; k < n; ++k) {
        ElementKind kind = ElementKind::Goal;
        if (k > 0) {
            const double r = std::uniform_real_distribution<double>(0, 1)(rng);
            kind = r < 0.5 ? ElementKind::Goal : (r < 0.7 ? ElementKind::Strategy : ElementKind::Solution);
        }
        GsnElement e = make_element(kind, "E" + std::to_string(k));
        if (k > 0) {
            std::vector<std::size_t> legal;
            for (std::size_t p = 0; p < k; ++p) {
                const ElementKind pk = module.elements[p].kind;
                if ((pk == ElementKind::Goal) ||
                    (pk == ElementKind::Strategy && kind != ElementKind::Strategy)) {
                    legal.push_back(p);
                }
            }
            std::set<std::size_t> parents{legal[pick(legal.size())]};
            if (chance(0.3)) {
                parents.insert(legal[pick(legal.size())]);
            }
            for (std::size_t p : parents) {
                module.elements[p].supported_by.push_back(e.id);
            }
        }
        if (kind != ElementKind::Solution) {
            if (chance(0.35)) {
                e.argument_type = types[pick(types.size())];
            }
            if (chance(0.3)) {
                e.roles.insert(chance(0.5) ? RoleTag::HazardManagement : roles[pick(roles.size())]);
            }
            if (!item_ids.empty() && chance(0.5)) {
                e.traces.insert(item_ids[pick(item_ids.size())]);
                if (chance(0.3)) {
                    e.traces.insert(item_ids[pick(item_ids.size())]);
                }
            }
        }
        module.elements.push_back(std::move(e));
    }
    m.modules.push_back(std::move(module));
    return m;
}

GsnModel synthetic_model(std::size_t elements, std::size_t traces)
{
    GsnModel m = scaffold_reference_model();
    // Each bulk item adds a tracing goal and its solution.
    const std::size_t base_elements = m.element_count();
    const std::size_t pairs_needed = elements > base_elements ? (elements - base_elements + 1) / 2 : 0;
    const std::size_t items = std::max(pairs_needed, traces);
    GsnModule& product = *std::find_if(m.modules.begin(), m.modules.end(),
                                       [](const GsnModule& mod) { return mod.id == "product"; });
    GsnModule& process = *std::find_if(m.modules.begin(), m.modules.end(),
                                       [](const GsnModule& mod) { return mod.id == "process"; });
    std::vector<GsnElement> hazard_goals;
    std::vector<GsnElement> reg_goals;
    for (std::size_t i = 0; i < items; ++i) {
        const std::string n = std::to_string(i);
        const bool hazard = i % 2 == 0;
        const std::string item = (hazard ? "H-BULK-" : "REG-BULK-") + n;
        GsnElement goal = make_element(ElementKind::Goal, (hazard ? "G_HAZ_BULK_" : "G_REG_BULK_") + n,
                                       {"Sn_BULK_" + n});
        goal.traces.insert(item);
        GsnElement sn = make_element(ElementKind::Solution, "Sn_BULK_" + n);
        sn.artifacts.insert("EV_BULK_" + n);
        m.artifacts.push_back({"EV_BULK_" + n, ArtifactRole::Evidence, "bulk evidence", "bulk/" + n, {}, {}});
        if (hazard) {
            goal.roles.insert(RoleTag::HazardManagement);
            m.registries.hazards.push_back({item, "bulk hazard", HazardStatus::Managed, {}});
            element(m, "G_HAZARD_MGMT").supported_by.push_back(goal.id);
            product.elements.push_back(std::move(goal));
            product.elements.push_back(std::move(sn));
        } else {
            m.registries.regulatory_requirements.push_back({item, "bulk law", "bulk text", {}});
            element(m, "G_COMPLIANCE").supported_by.push_back(goal.id);
            process.elements.push_back(std::move(goal));
            process.elements.push_back(std::move(sn));
        }
    }
    return m;
}

std::map<std::string, std::set<ArgumentType>> oracle_types(const GsnModel& m)
{
    std::vector<const GsnElement*> all;
    for (const auto& mod : m.modules) {
        for (const auto& e : mod.elements) {
            all.push_back(&e);
        }
    }
    std::map<std::string, std::set<ArgumentType>> types;
    for (bool changed = true; changed;) {
        changed = false;
        for (const GsnElement* e : all) {
            std::set<ArgumentType> next;
            if (e->argument_type) {
                next.insert(*e->argument_type);
            } else {
                for (const GsnElement* p : all) {
                    const bool refs = std::find(p->supported_by.begin(), p->supported_by.end(), e->id) !=
                                          p->supported_by.end() ||
                                      std::find(p->in_context_of.begin(), p->in_context_of.end(), e->id) !=
                                          p->in_context_of.end();
                    if (refs) {
                        next.insert(types[p->id].begin(), types[p->id].end());
                    }
                }
            }
            if (next != types[e->id]) {
                types[e->id] = next;
                changed = true;
            }
        }
    }
    return types;
}

IdSet oracle_subset(const GsnModel& m, ArgumentType t)
{
    IdSet out;
    for (const auto& [id, types] : oracle_types(m)) {
        if (types.contains(t)) {
            out.insert(id);
        }
    }
    return out;
}

TraceErrorCounts trace_error_counts(const LinkedModel& model)
{
    TraceErrorCounts counts;
    const auto& reg = model.model().registries;
    auto coverage_errors = [](const TraceMatrix& matrix) {
        std::size_t n = 0;
        for (const auto& row : matrix.rows) {
            n += (!row.covered() || !row.solution_backed) ? 1 : 0;
        }
        return n;
    };
    counts.r3 = coverage_errors(trace_registry(model, RegistryKind::RegulatoryRequirements));
    counts.r4 = coverage_errors(trace_registry(model, RegistryKind::NormativeRequirements));

    bool selection_element = false;
    for (const auto& id : argument_subset(model, ArgumentType::Conformance)) {
        selection_element = selection_element || resolve(model, id)->has_role(RoleTag::SelectionRationale);
    }
    if (!selection_element) {
        for (const auto& item : reg.normative_requirements) {
            counts.r4 += (!item.selection_rationale || item.selection_rationale->empty()) ? 1 : 0;
        }
    }

    const TraceMatrix hazards = trace_registry(model, RegistryKind::Hazards);
    for (std::size_t i = 0; i < hazards.rows.size(); ++i) {
        const TraceRow& row = hazards.rows[i];
        counts.r6 += reg.hazards[i].status == HazardStatus::Open ? 1 : 0;
        counts.r6 += (!row.covered() || !row.solution_backed) ? 1 : 0;
    }
    return counts;
}

// DOT grammar subset: graph, node, edge, attribute and ID=ID statements.
namespace {

class DotParser
{
public:
    explicit DotParser(const std::string& text) : text_(text) {}

    std::string run(DotStats* stats)
    {
        try {
            tokenize();
            graph();
        } catch (const std::runtime_error& e) {
            return e.what();
        }
        if (stats != nullptr) {
            stats->nodes = nodes_.size();
            stats->edges = edges_;
        }
        return {};
    }

private:
    struct Token
    {
        enum Kind { Id, Punct, End } kind;
        std::string text;
        bool quoted = false;
    };

    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::runtime_error("DOT: " + what + " at token " + std::to_string(pos_));
    }

    void tokenize()
    {
        std::size_t i = 0;
        while (i < text_.size()) {
            const char c = text_[i];
            if (std::isspace(static_cast<unsigned char>(c)) != 0) {
                ++i;
            } else if (c == '"') {
                std::string s;
                ++i;
                while (i < text_.size() && text_[i] != '"') {
                    if (text_[i] == '\\' && i + 1 < text_.size()) {
                        s += text_[i];
                        ++i;
                    }
                    if (text_[i] == '\n') {
                        fail("raw newline in quoted string");
                    }
                    s += text_[i++];
                }
                if (i >= text_.size()) {
                    fail("unterminated string");
                }
                ++i;
                tokens_.push_back({Token::Id, s, true});
            } else if (std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.' || c == '-') {
                if (c == '-' && i + 1 < text_.size() && (text_[i + 1] == '>' || text_[i + 1] == '-')) {
                    tokens_.push_back({Token::Punct, text_.substr(i, 2)});
                    i += 2;
                    continue;
                }
                const std::size_t start = i;
                while (i < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i])) != 0 ||
                                            text_[i] == '_' || text_[i] == '.')) {
                    ++i;
                }
                if (i == start) {
                    ++i;
                }
                const std::string word = text_.substr(start, i - start);
                const bool numeral = std::all_of(word.begin(), word.end(), [](char ch) {
                    return std::isdigit(static_cast<unsigned char>(ch)) != 0 || ch == '.' || ch == '-';
                });
                const bool identifier = std::isdigit(static_cast<unsigned char>(word[0])) == 0 &&
                                        std::all_of(word.begin(), word.end(), [](char ch) {
                                            return std::isalnum(static_cast<unsigned char>(ch)) != 0 || ch == '_';
                                        });
                if (!numeral && !identifier) {
                    fail("bad identifier '" + word + "'");
                }
                tokens_.push_back({Token::Id, word});
            } else if (std::string_view("{}[];,=").find(c) != std::string_view::npos) {
                tokens_.push_back({Token::Punct, std::string(1, c)});
                ++i;
            } else {
                fail(std::string("unexpected character '") + c + "'");
            }
        }
        tokens_.push_back({Token::End, ""});
    }

    const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
    bool is(const char* punct, std::size_t ahead = 0) const
    {
        return peek(ahead).kind == Token::Punct && peek(ahead).text == punct;
    }
    bool keyword(const char* word) const
    {
        return peek().kind == Token::Id && !peek().quoted && peek().text == word;
    }
    void expect(const char* punct)
    {
        if (!is(punct)) {
            fail(std::string("expected '") + punct + "'");
        }
        ++pos_;
    }
    std::string id()
    {
        if (peek().kind != Token::Id) {
            fail("expected identifier");
        }
        return tokens_[pos_++].text;
    }

    void graph()
    {
        if (keyword("strict")) {
            ++pos_;
        }
        if (!keyword("digraph")) {
            fail("expected 'digraph'");
        }
        ++pos_;
        if (peek().kind == Token::Id) {
            ++pos_;
        }
        expect("{");
        while (!is("}")) {
            if (peek().kind == Token::End) {
                fail("unterminated graph body");
            }
            statement();
            if (is(";")) {
                ++pos_;
            }
        }
        expect("}");
        if (peek().kind != Token::End) {
            fail("trailing content");
        }
    }

    void statement()
    {
        if (keyword("graph") || keyword("node") || keyword("edge")) {
            ++pos_;
            attr_list(true);
            return;
        }
        const std::string first = id();
        if (is("=")) {
            ++pos_;
            id();
            return;
        }
        if (is("--")) {
            fail("undirected edge in digraph");
        }
        if (is("->")) {
            while (is("->")) {
                ++pos_;
                id();
                ++edges_;
            }
            attr_list(false);
            return;
        }
        nodes_.insert(first);
        attr_list(false);
    }

    void attr_list(bool required)
    {
        if (required && !is("[")) {
            fail("expected attribute list");
        }
        while (is("[")) {
            ++pos_;
            while (!is("]")) {
                id();
                expect("=");
                id();
                if (is(",") || is(";")) {
                    ++pos_;
                }
            }
            expect("]");
        }
    }

    const std::string& text_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::set<std::string> nodes_;
    std::size_t edges_ = 0;
};

}  // namespace

std::string dot_syntax_error(const std::string& text, DotStats* stats)
{
    return DotParser(text).run(stats);
}

}  // namespace sac::test
