/**
 * @file parser.hpp
 * @brief Reading and writing `.sac.yaml` argumentation documents.
 *
 * Documents use a strict YAML subset. A model may be split across several
 * documents; they are merged in path order so the result does not depend
 * on the order in which they were passed.
 */
#pragma once

#include "sac/model.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sac {

enum class DiagnosticCode : std::uint8_t {
    Syntax,
    UnknownKey,
    MissingField,
    InvalidValue,
    UnknownEnumValue,
    DuplicateId,
    UnresolvedReference,
    Cycle,
    InvalidAcp,
    RootCount,
    Io,
};

[[nodiscard]] std::string_view to_string(DiagnosticCode code);

struct ParseDiagnostic
{
    enum class Level : std::uint8_t { Error, Warning };

    Level severity = Level::Error;
    DiagnosticCode code = DiagnosticCode::Syntax;
    std::string message;
    std::string file;
    int line = 1;
    int column = 1;
};

/// `file:line:column: error[code]: message`
[[nodiscard]] std::string format_diagnostic(const ParseDiagnostic& d);

struct SourceDocument
{
    std::string path;
    std::string text;
};

struct ParseOptions
{
    /// Unknown keys become warnings instead of errors.
    bool lenient = false;
};

/// Unlinked result: `model` is present unless a document failed YAML-level
/// parsing or no model header was found.
struct RawParseResult
{
    std::optional<GsnModel> model;
    std::vector<ParseDiagnostic> diagnostics;

    [[nodiscard]] bool has_errors() const;
};

struct ParseResult
{
    std::optional<LinkedModel> model;
    std::vector<ParseDiagnostic> diagnostics;

    [[nodiscard]] bool ok() const { return model.has_value(); }
};

/// Syntax, schema and vocabulary checks plus multi-document merge.
[[nodiscard]] RawParseResult parse_documents(std::span<const SourceDocument> documents,
                                             const ParseOptions& options = {});

/// Full pipeline: parse_documents followed by link(). Never yields a model
/// when any Error diagnostic was produced.
[[nodiscard]] ParseResult parse_model(std::span<const SourceDocument> documents,
                                      const ParseOptions& options = {});

[[nodiscard]] ParseDiagnostic to_parse_diagnostic(const LinkDiagnostic& d);

/// Reads files from disk; unreadable files become Io diagnostics.
[[nodiscard]] std::vector<SourceDocument> read_documents(std::span<const std::string> paths,
                                                         std::vector<ParseDiagnostic>& diagnostics);

struct SerializeOptions
{
    bool include_registries = true;
    bool include_structure = true;  // model header, modules, artifacts
};

/// Canonical text: fixed key order, elements sorted by id, relation lists
/// in declared order, optional fields omitted when empty.
[[nodiscard]] std::string serialize_model(const GsnModel& model, const SerializeOptions& options = {});

}  // namespace sac
