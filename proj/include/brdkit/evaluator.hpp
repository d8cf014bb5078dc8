#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "brdkit/casefile.hpp"
#include "brdkit/formula.hpp"
#include "brdkit/worldmodel.hpp"

namespace brdkit {

enum class Status : std::uint8_t { kPass, kFail, kUndetermined };

/// "PASS", "FAIL" or "UNDETERMINED".
std::string to_string(Status status);

/// One credence query consulted by a verdict.
struct Witness {
  /// Candidate sentences (search criteria) or the narration content involved.
  std::vector<Formula> formulas;
  /// The queried formula, rendered.
  std::string query;
  /// Absent for summary witnesses of vacuous or exhausted searches.
  std::optional<StanceValue> value;
  /// Conditioning variant, e.g. "full" or "play-along[n1]".
  std::string bundle;
  std::string note;
};

struct Verdict3 {
  Status status = Status::kUndetermined;
  /// witnesses[0] decides the status.
  std::vector<Witness> witnesses;
  /// Queries that came out undefined and were skipped or left the verdict open.
  std::vector<Witness> unresolved;
};

struct Wellformedness {
  Verdict3 exclusion;
  Verdict3 decision;
  Verdict3 initial_plausibility;
  Verdict3 exhaustion;

  bool all_pass() const;
};

/// A minimal relevant set and the narration whose credence it moves.
struct RelevantSet {
  std::vector<Formula> members;
  std::size_t narration;
  Rational before;
  Rational after;
};

struct Relevance {
  std::vector<RelevantSet> minimal_sets;
  /// Universe sentences phi such that phi or !phi is in a minimal set, in universe order.
  std::vector<Formula> sentences;

  bool is_relevant(const Formula& phi) const;
};

struct NarrationReport {
  std::size_t index;
  std::string id;
  Side side;
  /// Criterion name and verdict, in evaluation order.
  std::vector<std::pair<std::string, Verdict3>> criteria;
};

struct EvaluationReport {
  Thresholds thresholds;
  SearchConfig search;
  Wellformedness wellformedness;
  std::vector<NarrationReport> narrations;
  Verdict3 beyond_reasonable_doubt;
};

/// Evaluates the criteria of one case. Immutable after construction and
/// safe to share across threads.
class Evaluator {
 public:
  explicit Evaluator(CaseModel c, DefinednessFault fault = DefinednessFault::kNone);
  /// Reuses a credence built for a case with the same universe, prior and suspended set.
  Evaluator(CaseModel c, std::shared_ptr<const PartialCredence> credence);

  const CaseModel& model() const { return case_; }
  const PartialCredence& credence() const { return *credence_; }

  const FormulaSet& bundle_formulas(BundleTag tag, std::optional<std::size_t> narration = std::nullopt) const;
  /// Display name, e.g. "evidential" or "f-extended[n1]".
  std::string bundle_name(BundleTag tag, std::optional<std::size_t> narration = std::nullopt) const;

  StanceValue p_variant(BundleTag tag, const Formula& f, const FormulaSet& extra = {},
                        std::optional<std::size_t> narration = std::nullopt) const;
  /// Credence with no bundle: P(f | gamma).
  StanceValue bare(const Formula& f, const FormulaSet& gamma = {}) const;

  Wellformedness wellformedness() const;
  Verdict3 explains_evidence_accusing(std::size_t i) const;
  Verdict3 explains_evidence_defending(std::size_t k) const;
  /// Dispatches on the narration's side.
  Verdict3 explains_evidence(std::size_t i) const;
  /// Pass means evidence is missing.
  Verdict3 missing_evidence(std::size_t i) const;
  /// Pass means the narration is gappy. Commitment mode only applies to
  /// accusing narrations; defending narrations always use the direct test.
  Verdict3 gap(std::size_t i) const { return gap(i, case_.search.gap_mode); }
  Verdict3 gap(std::size_t i, GapMode mode) const;
  Verdict3 dominates(std::size_t i) const;
  /// Throws PreconditionError unless dominates(i) passes.
  Verdict3 resilient(std::size_t i) const;
  Verdict3 reasonable_doubt(std::size_t k) const;
  EvaluationReport evaluate() const;

  /// Throws BoundError when the candidate-set enumeration exceeds its limit.
  Relevance relevance() const;
  std::vector<Formula> commitment_violations(std::size_t i) const;
  std::vector<Formula> commitment_violations(std::size_t i, const Relevance& relevance) const;
  Narration commitment_closure(std::size_t i) const;

  /// Largest number of candidate subsets a relevance search may examine.
  static constexpr std::uint64_t kMaxRelevanceCandidates = 2'000'000;

 private:
  Verdict3 ordering_clause(std::size_t i, const StanceValue& own) const;

  CaseModel case_;
  std::shared_ptr<const PartialCredence> credence_;
  std::map<std::pair<BundleTag, std::size_t>, FormulaSet> bundles_;
};

// Free-function forms of the criteria.
StanceValue p_variant(const CaseModel& c, BundleTag tag, const Formula& f, const FormulaSet& extra = {},
                      std::optional<std::size_t> narration = std::nullopt);
Wellformedness wellformedness(const CaseModel& c);
Verdict3 explains_evidence_accusing(const CaseModel& c, std::size_t i);
Verdict3 explains_evidence_defending(const CaseModel& c, std::size_t k);
Verdict3 missing_evidence(const CaseModel& c, std::size_t i);
Verdict3 gap(const CaseModel& c, std::size_t i, GapMode mode);
Verdict3 dominates(const CaseModel& c, std::size_t i);
Verdict3 resilient(const CaseModel& c, std::size_t i);
Verdict3 reasonable_doubt(const CaseModel& c, std::size_t k);
EvaluationReport beyond_reasonable_doubt(const CaseModel& c);
Relevance relevant_sentences(const CaseModel& c);
std::vector<Formula> commitment_violations(const CaseModel& c, std::size_t i);
Narration commitment_closure(const CaseModel& c, std::size_t i);

/// Subformula closure of the case's sentences, contents and labels, paired
/// with the bare context and every standard bundle.
std::vector<AuditProbe> audit_probes(const CaseModel& c);
AuditReport audit_case(const CaseModel& c, DefinednessFault fault = DefinednessFault::kNone);

/// Subsets of {0..n-1} of size 1..max_size, by size then lexicographically.
std::vector<std::vector<std::size_t>> ordered_subsets(std::size_t n, int max_size);

}  // namespace brdkit
