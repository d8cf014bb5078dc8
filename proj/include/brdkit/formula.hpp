#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace brdkit {

enum class Op : std::uint8_t { kAtom, kGuilt, kTop, kBottom, kNot, kAnd, kOr, kImplies, kIff };

namespace detail {
struct Node;
}

class Formula;

/// Identity of a propositional atom of the extended language.
///
/// Base atoms are plain identifiers. Operator applications E(phi) and
/// N<i>(phi) are treated as opaque label atoms whose argument is a
/// base-language formula. The guilt constant gets its own marker so it can
/// be tracked in suspended-atom sets.
class AtomId {
 public:
  enum class Kind : std::uint8_t { kBase, kEvidence, kNarration, kGuilt };

  static AtomId base(std::string name);
  static AtomId evidence(const Formula& argument);
  static AtomId narration(int index, const Formula& argument);
  static AtomId guilt_marker(std::string constant = "G");

  Kind kind() const { return kind_; }
  bool is_label() const { return kind_ == Kind::kEvidence || kind_ == Kind::kNarration; }
  /// Base atom name or guilt constant name; empty for labels.
  const std::string& name() const { return name_; }
  /// 1-based narration index for N-labels, 0 otherwise.
  int narration_index() const { return narration_; }
  /// Label argument. Only valid for label atoms.
  Formula argument() const;
  /// Canonical spelling, e.g. "g1", "E(g1 | g2)", "N2(g1)", "G".
  const std::string& key() const { return key_; }

  bool operator==(const AtomId& other) const { return key_ == other.key_; }
  std::strong_ordering operator<=>(const AtomId& other) const { return key_ <=> other.key_; }

 private:
  AtomId() = default;

  Kind kind_ = Kind::kBase;
  std::string name_;
  int narration_ = 0;
  std::shared_ptr<const detail::Node> argument_;
  std::string key_;
};

/// Immutable formula tree of the extended language. Cheap to copy.
///
/// Every node carries its canonical rendering, which doubles as the
/// structural identity used for equality, ordering and hashing.
class Formula {
 public:
  /// The constant `true`.
  Formula();

  static Formula atom(const AtomId& id);
  static Formula base(std::string name) { return atom(AtomId::base(std::move(name))); }
  static Formula evidence(const Formula& argument) { return atom(AtomId::evidence(argument)); }
  static Formula narration(int index, const Formula& argument) {
    return atom(AtomId::narration(index, argument));
  }
  static Formula guilt(std::string constant = "G");
  static Formula top();
  static Formula bottom();
  static Formula negation(const Formula& f);
  static Formula conjunction(const Formula& lhs, const Formula& rhs);
  static Formula disjunction(const Formula& lhs, const Formula& rhs);
  static Formula implication(const Formula& lhs, const Formula& rhs);
  static Formula biconditional(const Formula& lhs, const Formula& rhs);

  /// Left-nested conjunction; `true` when empty, the sole member when singleton.
  static Formula all_of(std::span<const Formula> parts);
  /// Left-nested disjunction; `false` when empty.
  static Formula any_of(std::span<const Formula> parts);

  Op op() const;
  bool is_atom() const { return op() == Op::kAtom; }
  bool is_binary() const;
  /// Only valid when is_atom().
  const AtomId& atom_id() const;
  /// Operand of a negation, or left operand of a binary connective.
  Formula lhs() const;
  Formula rhs() const;
  /// Guilt constant name, only valid for Op::kGuilt.
  const std::string& guilt_name() const;

  const std::string& key() const;
  std::size_t size() const;

  bool operator==(const Formula& other) const { return key() == other.key(); }
  std::strong_ordering operator<=>(const Formula& other) const { return key() <=> other.key(); }

 private:
  explicit Formula(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  static Formula binary(Op op, const Formula& lhs, const Formula& rhs);
  friend class AtomId;

  std::shared_ptr<const detail::Node> node_;
};

namespace detail {
struct Node {
  Op op;
  std::optional<AtomId> atom;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
  std::string guilt_name;
  std::string key;
  std::size_t size = 1;
};
}  // namespace detail

/// Definition of guilt: constant <-> g_1 & ... & g_l over the base language.
struct GuiltDef {
  std::string constant = "G";
  std::vector<Formula> conjuncts;

  Formula body() const { return Formula::all_of(conjuncts); }
  /// The biconditional that enters conditioning bundles.
  Formula definition() const { return Formula::biconditional(Formula::guilt(constant), body()); }
};

struct ParseContext {
  std::string guilt_constant = "G";
  /// Number of declared narrations; N<i> labels with i outside 1..count are rejected.
  std::optional<int> narration_count;
  /// Declared base atoms; unknown identifiers are rejected when present.
  std::optional<std::set<std::string>> atoms;
};

Formula parse_formula(std::string_view text, const ParseContext& context = {});

/// Canonical fully parenthesized rendering; parse(render(f)) == f.
inline const std::string& render_formula(const Formula& f) { return f.key(); }

/// Atoms occurring at the top level of f. Label atoms are reported as
/// themselves (their arguments are not descended into); the guilt constant is
/// reported as its marker.
std::set<AtomId> collect_atoms(const Formula& f);

/// collect_atoms plus the atoms occurring inside label arguments. This is the
/// syntactic occurrence relation used by the definedness rule.
std::set<AtomId> occurring_atoms(const Formula& f);

/// True when f contains no label atom and no guilt constant.
bool is_base_formula(const Formula& f);
bool contains_guilt(const Formula& f);

/// Replaces every guilt constant occurrence with the definition body.
Formula expand_guilt(const Formula& f, const GuiltDef& guilt);

enum class SemanticStatus { kTautology, kContradiction, kContingent };

/// Classifies a guilt-free formula by exhaustive evaluation over its own atoms.
SemanticStatus classify(const Formula& f);

std::string to_string(SemanticStatus status);

/// Visits every subformula (including f itself) in pre-order.
void for_each_subformula(const Formula& f, const std::function<void(const Formula&)>& visit);

}  // namespace brdkit
