#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "brdkit/formula.hpp"
#include "brdkit/rational.hpp"

namespace brdkit {

/// Acceptance (a), strong plausibility (s), rejectability (r) and
/// negligibility (n) thresholds.
struct Thresholds {
  Rational a = make_rational(99, 100);
  Rational s = make_rational(17, 20);
  Rational r = make_rational(3, 20);
  Rational n = make_rational(1, 100);

  /// Human-readable list of violated invariants; empty when valid.
  std::vector<std::string> problems() const;
  bool operator==(const Thresholds&) const = default;
};

enum class UndefinedReason : std::uint8_t { kNone, kUncovered, kZeroCondition };

/// A credence value: an exact rational in [0,1], or Undefined.
class StanceValue {
 public:
  static StanceValue defined(Rational value) { return StanceValue(std::move(value), UndefinedReason::kNone); }
  static StanceValue undefined(UndefinedReason reason) { return StanceValue(Rational(0), reason); }

  bool is_defined() const { return reason_ == UndefinedReason::kNone; }
  const Rational& value() const { return value_; }
  UndefinedReason reason() const { return reason_; }
  /// "p/q", or "undefined" / "undefined(zero-condition)".
  std::string to_string() const;

  bool operator==(const StanceValue& other) const {
    return is_defined() == other.is_defined() && (!is_defined() || value_ == other.value_);
  }

 private:
  StanceValue(Rational value, UndefinedReason reason) : value_(std::move(value)), reason_(reason) {}

  Rational value_;
  UndefinedReason reason_;
};

/// Insertion-ordered set of formulas, deduplicated by structure.
class FormulaSet {
 public:
  FormulaSet() = default;
  FormulaSet(std::initializer_list<Formula> formulas);
  explicit FormulaSet(std::span<const Formula> formulas);

  bool insert(const Formula& f);
  void insert_all(const FormulaSet& other);
  bool contains(const Formula& f) const { return keys_.contains(f.key()); }
  FormulaSet without(const Formula& f) const;
  FormulaSet united(const FormulaSet& other) const;

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::vector<Formula>& items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  /// Same members regardless of order.
  bool same_members(const FormulaSet& other) const { return keys_ == other.keys_; }

 private:
  std::vector<Formula> items_;
  std::set<std::string> keys_;
};

/// Finite carrier of the extended language: base atoms plus E- and N-labels
/// over a declared sentence universe.
class Universe {
 public:
  static constexpr int kDefaultMaxEnumeratedAtoms = 24;

  Universe(std::vector<std::string> base_atoms, std::vector<Formula> sentences, int narration_count,
           GuiltDef guilt, int max_enumerated_atoms = kDefaultMaxEnumeratedAtoms);

  const std::vector<AtomId>& base_atoms() const { return base_; }
  const std::vector<AtomId>& label_atoms() const { return labels_; }
  /// Base atoms followed by labels; the world bit order.
  const std::vector<AtomId>& atoms() const { return all_; }
  const std::vector<Formula>& sentences() const { return sentences_; }
  int narration_count() const { return narration_count_; }
  const GuiltDef& guilt() const { return guilt_; }
  int max_enumerated_atoms() const { return max_enumerated_atoms_; }

  std::optional<std::size_t> index_of(const AtomId& atom) const;
  bool contains(const AtomId& atom) const { return index_of(atom).has_value(); }
  /// 2^(number of atoms).
  BigInt world_count() const;

  /// Throws UnknownAtomError unless every atom of f (after guilt expansion) is declared.
  void require_known(const Formula& f) const;

 private:
  std::vector<AtomId> base_;
  std::vector<AtomId> labels_;
  std::vector<AtomId> all_;
  std::vector<Formula> sentences_;
  int narration_count_;
  GuiltDef guilt_;
  int max_enumerated_atoms_;
  std::map<std::string, std::size_t> index_;
};

/// Total truth assignment, indexed like Universe::atoms().
struct World {
  std::vector<bool> values;
};

/// World number `index` (bit i gives atom i). Requires fewer than 64 atoms.
World world_at(const Universe& universe, std::uint64_t index);

bool satisfies(const Universe& universe, const World& world, const Formula& f);

/// Tautology / contradiction / contingent over the universe; guilt expanded.
SemanticStatus semantic_status(const Formula& f, const Universe& universe);

struct PriorSpec {
  /// Each satisfying world's weight is multiplied by the factor.
  std::vector<std::pair<Formula, Rational>> reweight;
};

/// Exact-rational prior over the worlds of a universe: uniform, multiplied by
/// one factor per reweight rule, renormalized.
///
/// Stored in factored form. Queries only enumerate the atoms connected to
/// the query through shared atoms or reweight rules; disconnected parts
/// cancel exactly, so no query ever materializes the full world space.
class Distribution {
 public:
  Distribution(std::shared_ptr<const Universe> universe, const PriorSpec& prior);

  const Universe& universe() const { return *universe_; }
  std::shared_ptr<const Universe> universe_ptr() const { return universe_; }

  Rational probability(const Formula& f) const;
  /// Probability of the conjunction of `conjuncts`.
  Rational mass(std::span<const Formula> conjuncts) const;
  /// P(f | conjunction of gamma); throws ZeroConditionError on a null condition.
  Rational conditional(const Formula& f, std::span<const Formula> gamma) const;
  /// Normalized weight of a single world.
  Rational weight(const World& world) const;

  struct Factor {
    Formula formula;
    BigInt satisfied;
    BigInt unsatisfied;
    std::vector<AtomId> atoms;
  };

 private:
  struct Outcome {
    bool null_condition = false;
    Rational value;
  };
  Outcome run(std::span<const Formula> conjuncts, const Formula* target) const;

  std::shared_ptr<const Universe> universe_;
  std::vector<Factor> factors_;
};

inline Distribution build_prior(std::shared_ptr<const Universe> universe, const PriorSpec& prior) {
  return Distribution(std::move(universe), prior);
}

/// Seeded defects used to validate the axiom audit.
enum class DefinednessFault : std::uint8_t {
  kNone,
  /// Conditioning members no longer cover themselves.
  kDropMembership,
  /// Negations are only defined by logic or membership.
  kDropNegationSymmetry,
  /// A conjunction is defined as soon as either conjunct is.
  kDropConjunctionGuard,
};

/// A total distribution filtered by a coverage-based definedness rule.
///
/// P(f | gamma) is defined when f is a tautology or contradiction, when
/// f is in gamma, when every suspended atom occurring in f also occurs in
/// gamma, or when f is a conjunction with a conjunct defined at 0. Negation
/// is transparent. Atoms inside label arguments and the atoms of the guilt
/// definition count as occurring.
class PartialCredence {
 public:
  PartialCredence(Distribution distribution, std::set<AtomId> suspended,
                  DefinednessFault fault = DefinednessFault::kNone);

  /// Guilt marker plus every label atom of the universe.
  static std::set<AtomId> default_suspended(const Universe& universe);

  bool is_defined(const Formula& f, const FormulaSet& gamma) const;
  StanceValue credence(const Formula& f, const FormulaSet& gamma) const;

  const Distribution& distribution() const { return distribution_; }
  const std::set<AtomId>& suspended() const { return suspended_; }
  DefinednessFault fault() const { return fault_; }

 private:
  class Query;

  Distribution distribution_;
  std::set<AtomId> suspended_;
  DefinednessFault fault_;
};

struct AuditProbe {
  Formula formula;
  /// Label of the conditioning set, e.g. "evidential" or "play-along[2]".
  std::string context;
  FormulaSet gamma;
};

struct AxiomViolation {
  std::string axiom;
  std::string context;
  std::string formula;
  std::string detail;
};

struct AuditReport {
  std::map<std::string, std::size_t> checked;
  std::vector<AxiomViolation> violations;

  bool clean() const { return violations.empty(); }
  std::size_t violations_of(const std::string& axiom) const;
};

/// Checks every Part-1..Part-6 instance generated by the probes, closing them
/// under negation and conjunct swapping.
AuditReport audit_axioms(const PartialCredence& credence, std::span<const AuditProbe> probes);

}  // namespace brdkit
