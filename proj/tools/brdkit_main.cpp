// brdkit command-line interface.
//
// Exit codes: 0 success (whatever the verdict), 1 invalid case, 2 usage error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "brdkit/casefile.hpp"
#include "brdkit/error.hpp"
#include "brdkit/evaluator.hpp"
#include "brdkit/gatecrasher.hpp"
#include "brdkit/report.hpp"

namespace {

using namespace brdkit;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string case_path;
  std::string format = "text";
  std::string thresholds;
  std::optional<int> max_disjunction;
  std::string gap_mode;
  std::string commitment_variant;
  std::string narration;
  long long n = 10;
  std::string variant = "v1";
  std::string mode = "enumerate";
  bool suite = false;
};

ReportFormat report_format(const Options& o) { return *parse_report_format(o.format); }

Thresholds parse_thresholds(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 4) throw UsageError("--thresholds expects a,s,r,n");
  Thresholds t;
  try {
    t.a = parse_rational(parts[0]);
    t.s = parse_rational(parts[1]);
    t.r = parse_rational(parts[2]);
    t.n = parse_rational(parts[3]);
  } catch (const Error& e) {
    throw UsageError(std::string("--thresholds: ") + e.what());
  }
  return t;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void apply_overrides(CaseModel& c, const Options& o) {
  if (!o.thresholds.empty()) c.thresholds = parse_thresholds(o.thresholds);
  if (o.max_disjunction) c.search.max_disjunction = *o.max_disjunction;
  if (!o.gap_mode.empty()) c.search.gap_mode = o.gap_mode == "direct" ? GapMode::kDirect : GapMode::kCommitment;
  if (!o.commitment_variant.empty()) {
    c.search.commitment_variant =
        o.commitment_variant == "evidential" ? CommitmentVariant::kEvidential : CommitmentVariant::kFExtended;
  }
}

/// Parses, applies overrides and validates. Prints diagnostics to stderr.
std::optional<CaseModel> load(const Options& o) {
  const std::string document = read_file(o.case_path);
  CaseModel c;
  try {
    c = parse_case_document(document);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return std::nullopt;
  }
  apply_overrides(c, o);
  const auto diagnostics = validate_case(c);
  for (const auto& d : diagnostics.items) {
    std::cerr << (d.severity == Diagnostic::Severity::kError ? "error" : "warning") << " [" << d.code << "] "
              << d.message << "\n";
  }
  if (diagnostics.has_errors()) return std::nullopt;
  return c;
}

std::size_t narration_index(const CaseModel& c, const Options& o, Side side) {
  if (o.narration.empty()) throw UsageError("--narration is required");
  const auto idx = c.narration_index(o.narration);
  if (!idx) throw UsageError("unknown narration '" + o.narration + "'");
  if (c.narrations[*idx].side != side) {
    throw UsageError("narration '" + o.narration + "' is not " + to_string(side));
  }
  return *idx;
}

int run_validate(const Options& o) {
  const std::string document = read_file(o.case_path);
  CaseModel c;
  try {
    c = parse_case_document(document);
  } catch (const Error& e) {
    Diagnostics d;
    d.items.push_back({Diagnostic::Severity::kError, "schema", e.what()});
    std::cout << format_diagnostics(d, report_format(o));
    return kExitInvalid;
  }
  apply_overrides(c, o);
  const auto diagnostics = validate_case(c);
  std::cout << format_diagnostics(diagnostics, report_format(o));
  return diagnostics.has_errors() ? kExitInvalid : kExitOk;
}

int run_evaluate(const Options& o) {
  const auto c = load(o);
  if (!c) return kExitInvalid;
  const Evaluator ev(*c);
  const auto report = ev.evaluate();
  if (!report.wellformedness.all_pass()) std::cerr << "warning: case is not well-formed; verdicts are flagged\n";
  std::cout << format_report(report, report_format(o));
  return kExitOk;
}

int run_audit(const Options& o) {
  const auto c = load(o);
  if (!c) return kExitInvalid;
  std::cout << format_report(audit_case(*c), report_format(o));
  return kExitOk;
}

int run_resiliency(const Options& o) {
  const auto c = load(o);
  if (!c) return kExitInvalid;
  const auto i = narration_index(*c, o, Side::kAccusing);
  const Evaluator ev(*c);
  std::vector<std::pair<std::string, Verdict3>> verdicts;
  const auto d = ev.dominates(i);
  verdicts.emplace_back("dominates", d);
  if (d.status == Status::kPass) {
    verdicts.emplace_back("resilient", ev.resilient(i));
  } else {
    std::cerr << "note: narration '" << o.narration << "' does not dominate; resiliency not applicable\n";
  }
  std::cout << format_verdicts(verdicts, report_format(o));
  return kExitOk;
}

int run_commitment_close(const Options& o) {
  const auto c = load(o);
  if (!c) return kExitInvalid;
  const auto i = narration_index(*c, o, Side::kAccusing);
  const Evaluator ev(*c);
  ClosureReport report;
  report.original = c->narrations[i];
  report.relevance = ev.relevance();
  report.initial_violations = ev.commitment_violations(i, report.relevance);
  report.closed = ev.commitment_closure(i);
  std::cout << format_report(report, report_format(o));
  return kExitOk;
}

int run_gatecrasher(const Options& o) {
  GatecrasherSpec spec;
  spec.n = o.n;
  spec.variant = *parse_gatecrasher_variant(o.variant);
  spec.mode = *parse_gatecrasher_mode(o.mode);
  if (!o.thresholds.empty()) spec.thresholds = parse_thresholds(o.thresholds);
  const auto problems = spec.problems();
  if (!problems.empty()) throw UsageError(problems.front());
  if (spec.mode == GatecrasherMode::kEnumerate && spec.n > spec.max_enumerated) {
    throw UsageError("enumerate mode supports at most " + std::to_string(spec.max_enumerated) +
                     " spectators; use --mode analytic");
  }
  if (o.suite) {
    std::cout << format_report(run_gatecrasher_suite(spec.n, spec.thresholds, spec.mode), report_format(o));
    return kExitOk;
  }
  if (spec.mode == GatecrasherMode::kAnalytic) {
    SuiteReport report = run_gatecrasher_suite(spec.n, spec.thresholds, GatecrasherMode::kAnalytic);
    std::cout << format_report(report, report_format(o));
    return kExitOk;
  }
  CaseModel c = generate_case(spec);
  if (o.max_disjunction) c.search.max_disjunction = *o.max_disjunction;
  if (!o.gap_mode.empty()) apply_overrides(c, o);
  std::cout << to_document(c);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate legal narrations against evidence with exact partial credences", "brdkit"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> formats = {"text", "json"};
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
    sub->add_option("--thresholds", o.thresholds, "Override thresholds as a,s,r,n (p/q each)");
  };
  auto add_case = [&](CLI::App* sub) {
    sub->add_option("case", o.case_path, "Case document (JSON)")->required()->check(CLI::ExistingFile);
    add_common(sub);
    sub->add_option("--max-disjunction", o.max_disjunction, "Largest disjunction in gap/missing-evidence searches")
        ->check(CLI::Range(0, 64));
    sub->add_option("--gap-mode", o.gap_mode, "Gap test")->check(CLI::IsMember({"direct", "commitment"}));
    sub->add_option("--commitment-variant", o.commitment_variant, "Commitment antecedent conditioning")
        ->check(CLI::IsMember({"evidential", "f-extended"}));
  };

  auto* validate = app.add_subcommand("validate", "Check a case document");
  add_case(validate);
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate every criterion and the overall verdict");
  add_case(evaluate);
  auto* audit = app.add_subcommand("audit", "Check the credence axioms on a case");
  add_case(audit);
  auto* resiliency = app.add_subcommand("resiliency", "Domination and resiliency of one accusing narration");
  add_case(resiliency);
  resiliency->add_option("--narration", o.narration, "Narration id")->required();
  auto* close = app.add_subcommand("commitment-close", "Close an accusing narration under the commitment norm");
  add_case(close);
  close->add_option("--narration", o.narration, "Narration id")->required();
  auto* gate = app.add_subcommand("gatecrasher", "Generate or analyze the gatecrasher scenario");
  add_common(gate);
  gate->add_option("--n", o.n, "Number of spectators")->check(CLI::Range(2LL, GatecrasherSpec::kMaxAnalytic));
  gate->add_option("--variant", o.variant, "Narration variant")->check(CLI::IsMember({"v1", "v2", "bullet"}));
  gate->add_option("--mode", o.mode, "Computation mode")->check(CLI::IsMember({"enumerate", "analytic"}));
  gate->add_flag("--suite", o.suite, "Run the full analysis suite");
  gate->add_option("--max-disjunction", o.max_disjunction, "Largest disjunction in searches")->check(CLI::Range(0, 64));
  gate->add_option("--gap-mode", o.gap_mode, "Gap test")->check(CLI::IsMember({"direct", "commitment"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*validate) return run_validate(o);
    if (*evaluate) return run_evaluate(o);
    if (*audit) return run_audit(o);
    if (*resiliency) return run_resiliency(o);
    if (*close) return run_commitment_close(o);
    if (*gate) return run_gatecrasher(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BoundError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitUsage;
}
