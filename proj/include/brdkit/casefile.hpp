#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "brdkit/formula.hpp"
#include "brdkit/worldmodel.hpp"

namespace brdkit {

enum class Side : std::uint8_t { kAccusing, kDefending };

struct Narration {
  std::string id;
  Side side = Side::kAccusing;
  std::vector<Formula> content;

  /// Conjunction of the content sentences.
  Formula conjunction() const { return Formula::all_of(content); }
  bool contains(const Formula& f) const;
  bool operator==(const Narration&) const = default;
};

/// The nine conditioning variants.
enum class BundleTag : std::uint8_t {
  kFull,
  kNFull,
  kInformed,
  kEvidential,
  kArgued,
  kPlayAlong,
  kNExtended,
  kEExtended,
  kFExtended,
};

/// True for the play-along flavors, which need a narration.
bool needs_narration(BundleTag tag);
std::string to_string(BundleTag tag);
std::optional<BundleTag> parse_bundle_tag(std::string_view text);

enum class GapMode : std::uint8_t { kDirect, kCommitment };
enum class CommitmentVariant : std::uint8_t { kEvidential, kFExtended };
enum class RelevanceBackground : std::uint8_t { kEvidential, kFull };

std::string to_string(Side side);
std::string to_string(GapMode mode);
std::string to_string(CommitmentVariant variant);
std::string to_string(RelevanceBackground background);

struct SearchConfig {
  /// Largest disjunction size for missing-evidence and gap searches.
  int max_disjunction = 2;
  GapMode gap_mode = GapMode::kDirect;
  CommitmentVariant commitment_variant = CommitmentVariant::kEvidential;
  /// Largest candidate set examined when computing minimal relevant sets.
  int max_relevant_set = 2;
  RelevanceBackground relevance_background = RelevanceBackground::kEvidential;
  /// Treat every undefined comparison as undetermined, including search candidates.
  bool strict = false;

  bool operator==(const SearchConfig&) const = default;
};

struct CaseModel {
  std::vector<std::string> atoms;
  /// Adjustments to the default suspended set (guilt marker and all labels).
  /// Entries name atoms to add; a leading '-' removes. "E(*)" and "N(*)"
  /// stand for every E-label and every N-label.
  std::vector<std::string> suspended;
  GuiltDef guilt;
  /// Declared sentence universe A.
  std::vector<Formula> universe;
  /// Evidence, a subset of the universe kept in universe order.
  std::vector<Formula> evidence;
  std::vector<Narration> narrations;
  PriorSpec prior;
  Thresholds thresholds;
  SearchConfig search;

  ParseContext parse_context() const;
  std::optional<std::size_t> narration_index(std::string_view id) const;
  bool in_universe(const Formula& f) const;
  bool is_evidence(const Formula& f) const;
  /// Universe sentences that are not evidence, in universe order.
  std::vector<Formula> non_evidence() const;
};

/// A conditioning set together with the variant that produced it.
struct ConditionBundle {
  BundleTag tag;
  std::optional<std::size_t> narration;
  FormulaSet formulas;
};

struct Diagnostic {
  enum class Severity : std::uint8_t { kError, kWarning };
  Severity severity;
  std::string code;
  std::string message;
};

struct Diagnostics {
  std::vector<Diagnostic> items;

  bool has_errors() const;
  std::vector<Diagnostic> errors() const;
  std::vector<Diagnostic> warnings() const;
};

/// Parses and schema-checks a case document without semantic validation.
/// Throws CaseError (schema) or ParseError (formulas).
CaseModel parse_case_document(std::string_view document);

/// parse_case_document followed by validate_case; throws CaseError listing
/// every error diagnostic.
CaseModel load_case(std::string_view document);

/// Deterministic JSON document; load_case(to_document(c)) reproduces c.
std::string to_document(const CaseModel& c);

Diagnostics validate_case(const CaseModel& c);

std::shared_ptr<const Universe> build_universe(const CaseModel& c);
std::set<AtomId> resolve_suspended(const CaseModel& c, const Universe& universe);
PartialCredence build_credence(const CaseModel& c, DefinednessFault fault = DefinednessFault::kNone);

/// Throws PreconditionError when a narration is required but missing, or
/// given for a variant that takes none, or out of range.
ConditionBundle bundle(const CaseModel& c, BundleTag tag, std::optional<std::size_t> narration = std::nullopt);

/// Copy of c with phi added to the evidence. phi must be a non-evidence
/// universe sentence.
CaseModel with_evidence(const CaseModel& c, const Formula& phi);

/// Copy of c with narration `index` given new content.
CaseModel with_narration_content(const CaseModel& c, std::size_t index, std::vector<Formula> content);

}  // namespace brdkit
