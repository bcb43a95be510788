#pragma once

#include "sac/finding.hpp"
#include "sac/model.hpp"
#include "sac/trace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sac {

struct ReportSummary
{
    std::size_t errors = 0;
    std::size_t warnings = 0;
    std::size_t infos = 0;
    std::string rule_profile;
    std::string model_id;
    std::string model_version;
};

struct ReportBundle
{
    std::vector<Finding> findings;
    std::vector<TraceMatrix> matrices;
    std::optional<AcpReport> acp_report;
    std::optional<EvidenceReport> evidence_report;
    ReportSummary summary;
};

/// Bundle whose summary counts are derived from `findings`.
[[nodiscard]] ReportBundle make_bundle(std::vector<Finding> findings, std::string profile, std::string model_id,
                                       std::string model_version);

/// Attaches coverage matrices for every registry plus the ACP and evidence reports.
void attach_metrics(ReportBundle& bundle, const LinkedModel& model);

enum class ReportFormat : std::uint8_t { Text, Json };

/// Text: `SEVERITY RULE [elements...]: message` per finding, metric lines,
/// then `N errors, M warnings[, K infos]`. Json: fixed-key document.
[[nodiscard]] std::string emit_findings(const ReportBundle& bundle, ReportFormat format);

struct DotOptions
{
    bool color_by_type = false;
};

[[nodiscard]] std::string render_dot(const LinkedModel& model, const DotOptions& options = {});

}  // namespace sac
