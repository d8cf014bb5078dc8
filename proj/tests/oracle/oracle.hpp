#pragma once

// Brute-force reference implementation used by the property and acceptance
// tests. It shares only the formula and case data types with the library:
// credences are recomputed by summing over an explicit table of every world,
// and bundles, definedness and every criterion are re-derived here.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "brdkit/casefile.hpp"
#include "brdkit/evaluator.hpp"
#include "brdkit/formula.hpp"

namespace oracle {

using brdkit::BundleTag;
using brdkit::CaseModel;
using brdkit::Formula;
using brdkit::Rational;
using brdkit::Status;

struct Value {
  enum class Kind { kDefined, kUncovered, kZeroCondition };
  Kind kind = Kind::kUncovered;
  Rational value;

  bool defined() const { return kind == Kind::kDefined; }
  /// Same spelling as the library's StanceValue::to_string.
  std::string str() const;
};

/// Status plus the deciding witness (first witness) of a verdict.
struct Outcome {
  Status status = Status::kUndetermined;
  std::vector<Formula> formulas;
  /// Absent for summary witnesses.
  std::optional<std::string> value;
};

/// The same projection taken from a library verdict.
Outcome project(const brdkit::Verdict3& v);
bool operator==(const Outcome& x, const Outcome& y);
std::string describe(const Outcome& o);

class BruteForce {
 public:
  explicit BruteForce(CaseModel c);

  const CaseModel& model() const { return case_; }
  std::size_t world_count() const { return weights_.size(); }

  Value credence(const Formula& f, const std::vector<Formula>& gamma) const;
  bool defined(const Formula& f, const std::vector<Formula>& gamma) const;
  /// Probability under the total prior.
  Rational mass(const std::vector<Formula>& conjuncts) const;
  std::vector<Formula> bundle(BundleTag tag, std::optional<std::size_t> j = std::nullopt) const;
  Value p(BundleTag tag, const Formula& f, std::optional<std::size_t> j = std::nullopt) const;

  Outcome exclusion() const;
  Outcome decision() const;
  Outcome initial_plausibility() const;
  Outcome exhaustion() const;
  Outcome explains_evidence(std::size_t i) const;
  Outcome missing_evidence(std::size_t i) const;
  Outcome gap(std::size_t i) const;
  Outcome dominates(std::size_t i) const;
  Outcome resilient(std::size_t i) const;
  Outcome reasonable_doubt(std::size_t k) const;
  Outcome beyond_reasonable_doubt() const;
  std::vector<Formula> relevant_sentences() const;
  std::vector<Formula> commitment_violations(std::size_t i) const;

 private:
  enum class T { kTrue, kFalse, kUnknown };
  struct Instance {
    T truth;
    Outcome witness;
  };

  static T ge(const Value& v, const Rational& threshold);
  const std::vector<bool>& truth(const Formula& f) const;
  bool holds(const Formula& f, std::size_t world) const;
  bool tautology(const Formula& f) const;
  bool contradiction(const Formula& f) const;
  std::vector<std::string> suspended_keys(const Formula& f) const;
  bool relevant(const Formula& phi) const;

  static Outcome all_of(const std::vector<Instance>& instances);
  Outcome any_of(const std::vector<Instance>& instances) const;

  CaseModel case_;
  std::vector<std::string> atom_keys_;
  std::map<std::string, std::size_t> atom_index_;
  std::vector<brdkit::BigInt> weights_;
  std::vector<std::string> suspended_;
  mutable std::map<std::string, std::vector<bool>> truth_cache_;
  mutable std::optional<std::vector<Formula>> relevant_cache_;
};

}  // namespace oracle

namespace oracle {

/// Every disagreement between the library and the brute force on one case:
/// credences over the audit probe set, every criterion verdict with its
/// deciding witness, relevance and commitment violations.
std::vector<std::string> mismatches(const brdkit::CaseModel& c);

}  // namespace oracle
