#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "brdkit/casefile.hpp"
#include "brdkit/evaluator.hpp"
#include "brdkit/gatecrasher.hpp"
#include "brdkit/worldmodel.hpp"

namespace brdkit {

enum class ReportFormat : std::uint8_t { kText, kJson };

std::optional<ReportFormat> parse_report_format(std::string_view text);

// All formatters are byte-deterministic. JSON output uses a fixed key order
// and renders every rational as a "p/q" string.

std::string format_report(const EvaluationReport& report, ReportFormat format);
std::string format_report(const SuiteReport& report, ReportFormat format);
std::string format_report(const AuditReport& report, ReportFormat format);
std::string format_diagnostics(const Diagnostics& diagnostics, ReportFormat format);

/// Named verdicts, e.g. the dominates/resilient pair of the resiliency command.
std::string format_verdicts(const std::vector<std::pair<std::string, Verdict3>>& verdicts, ReportFormat format);

/// Result of closing a narration under the commitment norm.
struct ClosureReport {
  Narration original;
  Narration closed;
  std::vector<Formula> initial_violations;
  Relevance relevance;
};

std::string format_report(const ClosureReport& report, ReportFormat format);

}  // namespace brdkit
