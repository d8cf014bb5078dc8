// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "brdkit/casefile.hpp"
#include "brdkit/error.hpp"
#include "brdkit/evaluator.hpp"
#include "brdkit/gatecrasher.hpp"
#include "oracle/oracle.hpp"
#include "oracle/random_case.hpp"

namespace {

using namespace brdkit;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

Rational q(long p, long d) { return make_rational(p, d); }

CaseModel gatecrasher(int n, GatecrasherVariant variant) {
  GatecrasherSpec spec;
  spec.n = n;
  spec.variant = variant;
  return generate_case(spec);
}

std::string value_of(const Verdict3& v) {
  if (v.witnesses.empty() || !v.witnesses.front().value) return "none";
  return v.witnesses.front().value->to_string();
}

Outcome gatecrasher_posterior() {
  Outcome out;
  const Rational analytic = analytic_gatecrasher(1000, AnalyticQuery::kPosterior);
  out.require(analytic == q(999, 1000), "analytic N=1000 gave " + to_string(analytic));
  const Rational engine = engine_gatecrasher(10, AnalyticQuery::kPosterior);
  out.require(engine == q(9, 10), "enumerated N=10 gave " + to_string(engine));
  if (out.ok) out.detail = "analytic 999/1000, enumerated 9/10";
  return out;
}

Outcome analytic_equivalence() {
  Outcome out;
  int checked = 0;
  for (int n = 2; n <= 12; ++n) {
    for (auto query : all_analytic_queries()) {
      const Rational engine = engine_gatecrasher(n, query);
      const Rational analytic = analytic_gatecrasher(n, query);
      out.require(engine == analytic, "N=" + std::to_string(n) + " " + to_string(query) + ": engine " +
                                          to_string(engine) + " vs analytic " + to_string(analytic));
      ++checked;
    }
  }
  if (out.ok) out.detail = std::to_string(checked) + " values equal";
  return out;
}

Outcome unexplained_evidence() {
  Outcome out;
  const auto v1 = Evaluator(gatecrasher(10, GatecrasherVariant::kV1)).explains_evidence_accusing(0);
  const auto v2 = Evaluator(gatecrasher(10, GatecrasherVariant::kV2)).explains_evidence_accusing(0);
  out.require(v1.status == Status::kFail, "V1 status " + to_string(v1.status));
  out.require(value_of(v1) == "9/512", "V1 witness value " + value_of(v1));
  out.require(v2.status == Status::kPass, "V2 status " + to_string(v2.status));
  if (out.ok) out.detail = "V1 FAIL at 9/512, V2 PASS";
  return out;
}

Outcome commitment_gap() {
  Outcome out;
  CaseModel c = gatecrasher(10, GatecrasherVariant::kV2);
  c.search.gap_mode = GapMode::kCommitment;
  c.search.commitment_variant = CommitmentVariant::kEvidential;
  const Evaluator ev(c);
  const auto gap = ev.gap(0);
  out.require(gap.status == Status::kPass, "gap status " + to_string(gap.status));
  const auto& members = gap.witnesses.front().formulas;
  const bool other_spectator = members.size() == 1 && members[0].is_atom() && members[0].key() != "g1" &&
                               members[0].key().front() == 'g';
  out.require(other_spectator, "gap witness is not a single g_j with j != 1");
  out.require(value_of(gap) == "8/9", "clause-1 value " + value_of(gap));
  out.require(gap.witnesses.front().value && gap.witnesses.front().value->value() >= c.thresholds.s, "8/9 below s");
  const auto brd = ev.evaluate().beyond_reasonable_doubt;
  out.require(brd.status == Status::kFail, "BRD " + to_string(brd.status));
  if (out.ok) out.detail = "gappy with witness " + members[0].key() + " at 8/9, BRD FAIL";
  return out;
}

Outcome bite_the_bullet() {
  Outcome out;
  const CaseModel c = gatecrasher(10, GatecrasherVariant::kV2);
  const Narration closed = Evaluator(c).commitment_closure(0);
  FormulaSet expected{Formula::base("g1"), c.evidence.at(0)};
  for (int k = 2; k <= 10; ++k) expected.insert(Formula::base("g" + std::to_string(k)));
  out.require(FormulaSet(closed.content).same_members(expected), "closure differs from {g1, e} + {g_k : k != 1}");
  const auto w = Evaluator(with_narration_content(c, 0, closed.content)).wellformedness();
  out.require(w.initial_plausibility.status == Status::kFail, "initial plausibility " +
                                                                  to_string(w.initial_plausibility.status));
  const auto& deciding = w.initial_plausibility.witnesses.front().value;
  out.require(deciding && deciding->is_defined() && deciding->value() == 0,
              "evidential mass " + value_of(w.initial_plausibility));
  if (out.ok) out.detail = "closure has " + std::to_string(closed.content.size()) + " sentences, evidential mass 0";
  return out;
}

Outcome axiom_audit() {
  Outcome out;
  oracle::RandomCaseOptions options;
  options.max_total_atoms = 10;
  options.allow_unsuspended_labels = false;
  std::size_t checked = 0, part2 = 0, part3 = 0, part5 = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const CaseModel c = oracle::random_case(seed, options);
    const auto report = audit_case(c);
    for (const auto& [axiom, count] : report.checked) checked += count;
    out.require(report.clean(), "seed " + std::to_string(seed) + ": " +
                                    (report.clean() ? "" : report.violations.front().axiom + " on " +
                                                                report.violations.front().formula));
    part2 += audit_case(c, DefinednessFault::kDropMembership).violations_of("Part-2");
    part3 += audit_case(c, DefinednessFault::kDropNegationSymmetry).violations_of("Part-3");
    part5 += audit_case(c, DefinednessFault::kDropConjunctionGuard).violations_of("Part-5");
  }
  out.require(part2 > 0, "dropped membership clause not caught");
  out.require(part3 > 0, "dropped negation symmetry not caught");
  out.require(part5 > 0, "dropped conjunction guard not caught");
  if (out.ok) {
    out.detail = "100 cases, " + std::to_string(checked) + " instances clean; seeded faults caught (" +
                 std::to_string(part2) + "/" + std::to_string(part3) + "/" + std::to_string(part5) + ")";
  }
  return out;
}

Outcome oracle_equivalence() {
  Outcome out;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const CaseModel c = oracle::random_case(seed);
    const auto diff = oracle::mismatches(c);
    out.require(diff.empty(), "seed " + std::to_string(seed) + ": " + (diff.empty() ? "" : diff.front()));
  }
  if (out.ok) out.detail = "25 cases, all verdicts and witnesses equal";
  return out;
}

std::string run_command(const std::string& command, int& status) {
  std::string output;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return output;
  }
  std::array<char, 4096> buffer{};
  std::size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) output.append(buffer.data(), n);
  status = pclose(pipe);
  return output;
}

Outcome threshold_and_report_invariants() {
  Outcome out;
  const std::string head = R"({"atoms": ["a"], "guilt": {"constant": "G", "conjuncts": ["a"]}, "universe": ["a"],)"
                           R"( "narrations": [{"id": "n1", "side": "accusing", "content": ["a"]}], "thresholds": )";
  auto document = [&](const char* a, const char* s, const char* r, const char* n) {
    return head + "{\"a\": \"" + a + "\", \"s\": \"" + s + "\", \"r\": \"" + r + "\", \"n\": \"" + n + "\"}}";
  };
  const std::vector<std::array<const char*, 4>> invalid = {
      {"17/20", "17/20", "3/20", "3/20"},  // a = s
      {"4/5", "17/20", "3/20", "1/5"},     // a < s
      {"99/100", "3/10", "7/10", "1/100"}, // s < r
      {"99/100", "17/20", "1/10", "1/100"},  // r != 1 - s
      {"99/100", "17/20", "3/20", "1/50"},   // n != 1 - a
      {"1/1", "17/20", "3/20", "0/1"},       // a = 1, n = 0
      {"99/100", "1/2", "1/2", "1/100"},     // s = r
  };
  for (const auto& t : invalid) {
    bool rejected = false;
    try {
      load_case(document(t[0], t[1], t[2], t[3]));
    } catch (const Error&) {
      rejected = true;
    }
    out.require(rejected, std::string("accepted a=") + t[0] + " s=" + t[1] + " r=" + t[2] + " n=" + t[3]);
  }
  bool accepted = true;
  try {
    load_case(document("9/10", "7/10", "3/10", "1/10"));
  } catch (const Error&) {
    accepted = false;
  }
  out.require(accepted, "valid thresholds rejected");

#ifdef BRDKIT_CLI_PATH
  for (const char* format : {"text", "json"}) {
    for (const char* name : {"alibi.json", "gatecrasher_n10_v2.json"}) {
      const std::string command = std::string("'") + BRDKIT_CLI_PATH + "' evaluate '" + BRDKIT_CASES_DIR + "/" + name +
                                  "' --format " + format + " 2>/dev/null";
      int s1 = 0, s2 = 0;
      const std::string first = run_command(command, s1);
      const std::string second = run_command(command, s2);
      out.require(s1 == 0 && s2 == 0, std::string("evaluate exited nonzero on ") + name);
      out.require(!first.empty() && first == second, std::string("evaluate output differs between runs on ") + name);
    }
  }
  if (out.ok) out.detail = std::to_string(invalid.size()) + " threshold violations rejected; CLI output byte-identical";
#else
  out.require(false, "CLI not built; determinism across runs not checked");
#endif
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"gatecrasher posterior", gatecrasher_posterior},
      {"analytic/enumeration equivalence", analytic_equivalence},
      {"unexplained evidence (V1 fails, V2 passes)", unexplained_evidence},
      {"commitment-mode gap and verdict", commitment_gap},
      {"bite-the-bullet closure", bite_the_bullet},
      {"axiom audit property suite", axiom_audit},
      {"oracle equivalence", oracle_equivalence},
      {"threshold and report invariants", threshold_and_report_invariants},
  };
  const std::array<double, 8> budgets = {5, 60, 0, 0, 0, 120, 0, 0};
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = Clock::now();
    Outcome out;
    try {
      out = criteria[k].second();
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (budgets[k] > 0 && seconds >= budgets[k]) {
      if (out.ok) out.detail = "over time budget of " + std::to_string(static_cast<int>(budgets[k])) + " s";
      out.ok = false;
    }
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << seconds;
    std::cout << "criterion " << k + 1 << ": " << (out.ok ? "PASS" : "FAIL") << "  " << criteria[k].first << "; "
              << out.detail << " (" << time.str() << " s)" << std::endl;
    failures += out.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
