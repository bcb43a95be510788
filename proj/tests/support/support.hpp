// Shared helpers for the unit tests and the acceptance runner.
#pragma once

#include "sac/finding.hpp"
#include "sac/model.hpp"
#include "sac/parser.hpp"
#include "sac/trace.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace sac::test {

std::filesystem::path source_dir();
std::filesystem::path fixture_dir();

std::string read_file(const std::filesystem::path& path);

/// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& name);

/// Single in-memory document through the full pipeline.
ParseResult parse_text(const std::string& text, const std::string& path = "test.sac.yaml",
                       const ParseOptions& options = {});
RawParseResult parse_raw(const std::string& text, const std::string& path = "test.sac.yaml");

/// Links or throws std::runtime_error with the first diagnostic.
LinkedModel must_link(GsnModel model);

/// Sorted `*.sac.yaml` files directly inside `dir`.
std::vector<std::filesystem::path> fixtures(const std::filesystem::path& dir);

GsnElement& element(GsnModel& model, std::string_view id);
GsnElement make_element(ElementKind kind, std::string id, std::vector<std::string> supported_by = {});

std::size_t count(const std::vector<Finding>& findings, std::string_view rule, Severity severity);
std::size_t count_errors(const std::vector<Finding>& findings);

// Scaffold mutations: each one edit that should trigger exactly one rule.
struct Mutation
{
    std::string rule;
    std::string description;
    std::function<void(GsnModel&)> apply;
};

const std::vector<Mutation>& scaffold_mutations();

/// Random well-formed single-root model with ≤ max_elements elements and
/// randomly populated registries.
GsnModel random_model(std::uint32_t seed, std::size_t max_elements = 30);

/// Scaffold grown to at least `elements` elements and `traces` trace links.
GsnModel synthetic_model(std::size_t elements, std::size_t traces);

/// Effective argument types by naive fixpoint iteration over the raw
/// relation lists.
std::map<std::string, std::set<ArgumentType>> oracle_types(const GsnModel& model);
IdSet oracle_subset(const GsnModel& model, ArgumentType type);

// R3/R4/R6 Error counts recomputed from trace matrices and registry
// attributes, independently of the rules module.
struct TraceErrorCounts
{
    std::size_t r3 = 0;
    std::size_t r4 = 0;
    std::size_t r6 = 0;
};

TraceErrorCounts trace_error_counts(const LinkedModel& model);

struct DotStats
{
    std::size_t nodes = 0;  // distinct node ids declared by node statements
    std::size_t edges = 0;
};

/// Minimal DOT grammar check. Returns an empty string when `text` parses.
std::string dot_syntax_error(const std::string& text, DotStats* stats = nullptr);

}  // namespace sac::test
