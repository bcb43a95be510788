#include "doctest.h"
#include "support.hpp"

#include "sac/cli.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

using namespace sac;
using namespace sac::test;
namespace fs = std::filesystem;

namespace {

struct Run
{
    int status = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.status = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string fixture(const std::string& name)
{
    return (fixture_dir() / name).string();
}

std::size_t lines_starting(const std::string& text, const std::string& prefix)
{
    std::size_t n = 0;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        n += line.rfind(prefix, 0) == 0 ? 1 : 0;
    }
    return n;
}

std::set<std::string> listing(const fs::path& dir)
{
    std::set<std::string> out;
    for (const auto& e : fs::directory_iterator(dir)) {
        out.insert(e.path().filename().string());
    }
    return out;
}

}  // namespace

TEST_CASE("check exit codes over the corpus")
{
    const std::map<std::string, int> expected{
        {"01_minimal_goal.sac.yaml", 1},
        {"02_chain.sac.yaml", 1},
        {"03_two_modules.sac.yaml", 1},
        {"04_diamond_types.sac.yaml", 1},
        {"05_contextual_kinds.sac.yaml", 1},
        {"06_acp_supported_by.sac.yaml", 1},
        {"07_acp_in_context_of.sac.yaml", 1},
        {"08_registries.sac.yaml", 1},
        {"09_fragmentary.sac.yaml", 1},
        {"10_undeveloped.sac.yaml", 1},
        {"11_quoting.sac.yaml", 1},
        {"12_duplicate_roles.sac.yaml", 1},
        {"13_empty_registries.sac.yaml", 1},
        {"14_unbacked_traces.sac.yaml", 1},
        {"15_multi_acp.sac.yaml", 1},
        {"16_scaffold_reference.sac.yaml", 0},
        {"17_scaffold_no_samples.sac.yaml", 0},
        {"18_product_hazard.sac.yaml", 1},
        {"20_wf1_cycle.sac.yaml", 2},
        {"21_wf2_duplicate_id.sac.yaml", 2},
        {"22_wf3_unresolved.sac.yaml", 2},
        {"23_wf4_strategy_strategy.sac.yaml", 1},
        {"24_wf4_strategy_context.sac.yaml", 1},
        {"25_wf5_solution_relations.sac.yaml", 1},
        {"26_wf6_context_target_goal.sac.yaml", 1},
        {"27_wf6_context_owner.sac.yaml", 1},
        {"28_wf7_module_roots.sac.yaml", 1},
        {"29_wf8_undeveloped_with_child.sac.yaml", 1},
    };
    const auto files = fixtures(fixture_dir());
    CHECK(files.size() == expected.size());
    for (const auto& path : files) {
        const std::string name = path.filename().string();
        CAPTURE(name);
        REQUIRE(expected.contains(name));
        const Run r = run({"check", path.string()});
        CHECK(r.status == expected.at(name));
        if (r.status == kExitFailure) {
            CHECK(r.out.empty());
            CHECK_FALSE(r.err.empty());
        } else {
            CHECK(r.out.find(" errors, ") != std::string::npos);
        }
    }
    for (const auto& path : fixtures(fixture_dir() / "invalid")) {
        CAPTURE(path.string());
        const Run r = run({"check", path.string()});
        CHECK(r.status == kExitFailure);
        CHECK(r.err.find("error[") != std::string::npos);
    }
}

TEST_CASE("check reports")
{
    const Run cycle = run({"check", fixture("invalid/cycle_2.sac.yaml")});
    CHECK(cycle.status == kExitFailure);
    CHECK(cycle.err.find("error[cycle]") != std::string::npos);

    const Run json = run({"check", fixture("16_scaffold_reference.sac.yaml"), "--format", "json"});
    CHECK(json.status == kExitOk);
    const auto doc = nlohmann::json::parse(json.out);
    CHECK(doc["summary"]["errors"] == 0);
    CHECK(doc["profile"] == "all");

    const Run core = run({"check", fixture("16_scaffold_reference.sac.yaml"), "--profile", "core"});
    CHECK(core.status == kExitOk);

    const Run blocked = run({"check", fixture("23_wf4_strategy_strategy.sac.yaml")});
    CHECK(blocked.status == kExitFindings);
    CHECK(blocked.err.find("note:") != std::string::npos);
    CHECK(lines_starting(blocked.out, "ERROR WF4") >= 1);
}

TEST_CASE("soundness-free model fails with one R10 line")
{
    const fs::path dir = temp_dir("cli-r10");
    GsnModel m = *parse_raw(read_file(fixture_dir() / "16_scaffold_reference.sac.yaml")).model;
    for (const auto& mutation : scaffold_mutations()) {
        if (mutation.rule == "R10") {
            mutation.apply(m);
        }
    }
    const fs::path path = dir / "mutated.sac.yaml";
    std::ofstream(path) << serialize_model(m);
    const Run r = run({"check", path.string()});
    CHECK(r.status == kExitFindings);
    CHECK(lines_starting(r.out, "ERROR ") == 1);
    CHECK(lines_starting(r.out, "ERROR R10") == 1);
}

TEST_CASE("warnings only change the exit code when strict")
{
    const std::string path = fixture("17_scaffold_no_samples.sac.yaml");
    CHECK(run({"check", path}).status == kExitOk);
    CHECK(run({"check", path, "--strict-warnings"}).status == kExitFindings);
    CHECK(run({"check", path, "--severity", "R3=info", "--severity", "R4=info", "--severity", "R6=info",
               "--severity", "D1=info", "--strict-warnings"})
              .status == kExitOk);
    CHECK(run({"check", path, "--severity", "TL1=error"}).status == kExitFindings);
}

TEST_CASE("usage errors")
{
    const std::string good = fixture("16_scaffold_reference.sac.yaml");
    CHECK(run({}).status == kExitFailure);
    CHECK(run({"frobnicate"}).status == kExitFailure);
    CHECK(run({"check"}).status == kExitFailure);
    CHECK(run({"check", good, "--profile", "nope"}).status == kExitFailure);
    CHECK(run({"check", good, "--severity", "R1=fatal"}).status == kExitFailure);
    CHECK(run({"check", good, "--severity", "R99=error"}).status == kExitFailure);
    CHECK(run({"check", fixture("missing.sac.yaml")}).status == kExitFailure);
    const Run help = run({"--help"});
    CHECK(help.status == kExitOk);
    CHECK(help.out.find("check") != std::string::npos);
}

TEST_CASE("scaffold command")
{
    const fs::path dir = temp_dir("cli-scaffold");
    const std::string out = (dir / "case.sac.yaml").string();

    const Run first = run({"scaffold", out});
    CHECK(first.status == kExitOk);
    CHECK(first.out.rfind("wrote ", 0) == 0);
    CHECK(read_file(out) == read_file(source_dir() / "tests" / "golden" / "scaffold_default.sac.yaml"));
    CHECK(run({"check", out}).status == kExitOk);

    std::ofstream(out) << "sentinel";
    const Run again = run({"scaffold", out});
    CHECK(again.status == kExitFailure);
    CHECK(read_file(out) == "sentinel");
    CHECK(run({"scaffold", out, "--force"}).status == kExitOk);
    CHECK(read_file(out) != "sentinel");

    const std::string bare = (dir / "bare.sac.yaml").string();
    CHECK(run({"scaffold", bare, "--no-samples"}).status == kExitOk);
    const Run checked = run({"check", bare});
    CHECK(checked.status == kExitOk);
    CHECK(lines_starting(checked.out, "WARNING ") == 4);

    const std::string split = (dir / "split.sac.yaml").string();
    CHECK(run({"scaffold", split, "--split", "--dimensions", "odd,system_description"}).status == kExitOk);
    const std::string registries = (dir / "split.registries.sac.yaml").string();
    CHECK(run({"check", split, registries}).status == kExitOk);
    CHECK(run({"check", split}).status == kExitFailure);  // traces dangle without the registries

    CHECK(listing(dir) == std::set<std::string>{"bare.sac.yaml", "case.sac.yaml", "split.registries.sac.yaml",
                                                "split.sac.yaml"});
    CHECK(run({"scaffold", (dir / "no-such-dir" / "x.sac.yaml").string()}).status == kExitFailure);
}

TEST_CASE("trace command")
{
    const Run csv = run({"trace", fixture("16_scaffold_reference.sac.yaml"), "--registry", "hazards"});
    CHECK(csv.status == kExitOk);
    CHECK(csv.out.rfind("item_id,covered,solution_backed,covering_elements\n", 0) == 0);
    CHECK(lines_starting(csv.out, "H-SAMPLE-") == 2);

    const Run json = run({"trace", fixture("16_scaffold_reference.sac.yaml"), "--registry", "hazards", "--format",
                          "json"});
    CHECK(json.status == kExitOk);
    CHECK(nlohmann::json::parse(json.out)["coverage"] == 1.0);

    const Run empty = run({"trace", fixture("17_scaffold_no_samples.sac.yaml"), "--registry", "hazards", "--format",
                           "json"});
    const auto doc = nlohmann::json::parse(empty.out);
    CHECK(doc["coverage"] == 1.0);
    CHECK(doc["vacuous"] == true);

    CHECK(run({"trace", fixture("16_scaffold_reference.sac.yaml"), "--registry", "foo"}).status == kExitFailure);
    CHECK(run({"trace", fixture("16_scaffold_reference.sac.yaml")}).status == kExitFailure);
}

TEST_CASE("render command")
{
    const Run dot = run({"render", fixture("16_scaffold_reference.sac.yaml")});
    CHECK(dot.status == kExitOk);
    CHECK(dot_syntax_error(dot.out).empty());
    CHECK(dot.out.find("fillcolor=\"#") != std::string::npos);  // ACP markers only

    const Run colored = run({"render", fixture("16_scaffold_reference.sac.yaml"), "--color-by-type"});
    CHECK(colored.out.size() > dot.out.size());

    const fs::path dir = temp_dir("cli-render");
    const std::string target = (dir / "graph.dot").string();
    CHECK(run({"render", fixture("02_chain.sac.yaml"), "-o", target}).status == kExitOk);
    CHECK(dot_syntax_error(read_file(target)).empty());
    CHECK(listing(dir) == std::set<std::string>{"graph.dot"});

    CHECK(run({"render", fixture("missing.sac.yaml")}).status == kExitFailure);
}

TEST_CASE("rules command")
{
    const Run text = run({"rules"});
    CHECK(text.status == kExitOk);
    CHECK(lines_starting(text.out, "R10\terror\t") == 1);
    CHECK(lines_starting(text.out, "TL1\tinfo\t") == 1);

    const Run json = run({"rules", "--format", "json"});
    const auto catalog = nlohmann::json::parse(json.out);
    REQUIRE(catalog.size() == rule_catalog().size());
    for (const auto& entry : catalog) {
        CHECK(entry.contains("paper_anchor"));
        CHECK(entry.contains("default_severity"));
    }
}
