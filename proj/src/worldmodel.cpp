#include "brdkit/worldmodel.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "brdkit/error.hpp"
#include "truth_columns.hpp"

namespace brdkit {

using detail::Column;
using detail::TruthColumns;

// ---------------------------------------------------------------- Thresholds

std::vector<std::string> Thresholds::problems() const {
  std::vector<std::string> out;
  if (!(n > 0)) out.push_back("threshold n must be > 0");
  if (!(a < 1)) out.push_back("threshold a must be < 1");
  if (!(a > s)) out.push_back("thresholds must satisfy a > s");
  if (!(s > r)) out.push_back("thresholds must satisfy s > r");
  if (!(r > n)) out.push_back("thresholds must satisfy r > n");
  if (r != 1 - s) out.push_back("threshold r must equal 1 - s");
  if (n != 1 - a) out.push_back("threshold n must equal 1 - a");
  return out;
}

std::string StanceValue::to_string() const {
  switch (reason_) {
    case UndefinedReason::kNone: return brdkit::to_string(value_);
    case UndefinedReason::kZeroCondition: return "undefined(zero-condition)";
    default: return "undefined";
  }
}

// ---------------------------------------------------------------- FormulaSet

FormulaSet::FormulaSet(std::initializer_list<Formula> formulas) {
  for (const auto& f : formulas) insert(f);
}

FormulaSet::FormulaSet(std::span<const Formula> formulas) {
  for (const auto& f : formulas) insert(f);
}

bool FormulaSet::insert(const Formula& f) {
  if (!keys_.insert(f.key()).second) return false;
  items_.push_back(f);
  return true;
}

void FormulaSet::insert_all(const FormulaSet& other) {
  for (const auto& f : other) insert(f);
}

FormulaSet FormulaSet::without(const Formula& f) const {
  FormulaSet out;
  for (const auto& g : items_) {
    if (g != f) out.insert(g);
  }
  return out;
}

FormulaSet FormulaSet::united(const FormulaSet& other) const {
  FormulaSet out = *this;
  out.insert_all(other);
  return out;
}

// ---------------------------------------------------------------- Universe

Universe::Universe(std::vector<std::string> base_atoms, std::vector<Formula> sentences, int narration_count,
                   GuiltDef guilt, int max_enumerated_atoms)
    : sentences_(std::move(sentences)),
      narration_count_(narration_count),
      guilt_(std::move(guilt)),
      max_enumerated_atoms_(max_enumerated_atoms) {
  for (auto& name : base_atoms) base_.push_back(AtomId::base(std::move(name)));
  for (const auto& phi : sentences_) labels_.push_back(AtomId::evidence(phi));
  for (int i = 1; i <= narration_count_; ++i) {
    for (const auto& phi : sentences_) labels_.push_back(AtomId::narration(i, phi));
  }
  all_ = base_;
  all_.insert(all_.end(), labels_.begin(), labels_.end());
  for (std::size_t i = 0; i < all_.size(); ++i) {
    if (!index_.emplace(all_[i].key(), i).second) {
      throw CaseError("duplicate atom '" + all_[i].key() + "' in universe");
    }
  }
}

std::optional<std::size_t> Universe::index_of(const AtomId& atom) const {
  const auto it = index_.find(atom.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

BigInt Universe::world_count() const {
  BigInt n;
  mpz_ui_pow_ui(n.get_mpz_t(), 2, all_.size());
  return n;
}

void Universe::require_known(const Formula& f) const {
  for (const auto& a : collect_atoms(expand_guilt(f, guilt_))) {
    if (!contains(a)) throw UnknownAtomError("atom '" + a.key() + "' is not declared in the universe");
  }
}

World world_at(const Universe& universe, std::uint64_t index) {
  World w;
  w.values.resize(universe.atoms().size());
  for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] = ((index >> i) & 1u) != 0;
  return w;
}

bool satisfies(const Universe& universe, const World& world, const Formula& f) {
  switch (f.op()) {
    case Op::kTop: return true;
    case Op::kBottom: return false;
    case Op::kGuilt: return satisfies(universe, world, universe.guilt().body());
    case Op::kAtom: {
      const auto idx = universe.index_of(f.atom_id());
      if (!idx) throw UnknownAtomError("atom '" + f.atom_id().key() + "' is not declared in the universe");
      return world.values.at(*idx);
    }
    case Op::kNot: return !satisfies(universe, world, f.lhs());
    case Op::kAnd: return satisfies(universe, world, f.lhs()) && satisfies(universe, world, f.rhs());
    case Op::kOr: return satisfies(universe, world, f.lhs()) || satisfies(universe, world, f.rhs());
    case Op::kImplies: return !satisfies(universe, world, f.lhs()) || satisfies(universe, world, f.rhs());
    case Op::kIff: return satisfies(universe, world, f.lhs()) == satisfies(universe, world, f.rhs());
  }
  return false;
}

SemanticStatus semantic_status(const Formula& f, const Universe& universe) {
  universe.require_known(f);
  return classify(expand_guilt(f, universe.guilt()));
}

// ---------------------------------------------------------------- Distribution

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

// Weighted world count of `x`: each world weighs the product over factors of
// its satisfied/unsatisfied integer weight.
BigInt weighted_count(const Column& x, const std::vector<Column>& factor_columns,
                      const std::vector<const Distribution::Factor*>& factors) {
  const std::size_t k = factors.size();
  if (k == 0) return BigInt(static_cast<unsigned long>(TruthColumns::count(x)));

  auto pattern_weight = [&](std::uint64_t pattern) {
    BigInt w = 1;
    for (std::size_t j = 0; j < k; ++j) w *= ((pattern >> j) & 1u) ? factors[j]->satisfied : factors[j]->unsatisfied;
    return w;
  };

  BigInt total = 0;
  if (k <= 10) {
    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << k); ++pattern) {
      std::uint64_t n = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        std::uint64_t w = x[i];
        for (std::size_t j = 0; j < k && w; ++j) w &= ((pattern >> j) & 1u) ? factor_columns[j][i] : ~factor_columns[j][i];
        n += static_cast<std::uint64_t>(std::popcount(w));
      }
      if (n) total += BigInt(static_cast<unsigned long>(n)) * pattern_weight(pattern);
    }
    return total;
  }

  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::uint64_t w = x[i];
    while (w) {
      const int bit = std::countr_zero(w);
      w &= w - 1;
      std::uint64_t pattern = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if ((factor_columns[j][i] >> bit) & 1u) pattern |= std::uint64_t{1} << j;
      }
      ++counts[pattern];
    }
  }
  for (const auto& [pattern, n] : counts) total += BigInt(static_cast<unsigned long>(n)) * pattern_weight(pattern);
  return total;
}

std::vector<AtomId> atom_list(const Formula& f) {
  const auto s = collect_atoms(f);
  return {s.begin(), s.end()};
}

}  // namespace

Distribution::Distribution(std::shared_ptr<const Universe> universe, const PriorSpec& prior)
    : universe_(std::move(universe)) {
  for (const auto& [formula, weight] : prior.reweight) {
    if (!(weight > 0)) throw CaseError("reweight factor for '" + formula.key() + "' must be positive");
    universe_->require_known(formula);
    Factor f;
    f.formula = expand_guilt(formula, universe_->guilt());
    f.satisfied = weight.get_num();
    f.unsatisfied = weight.get_den();
    f.atoms = atom_list(f.formula);
    if (f.satisfied == f.unsatisfied) continue;
    factors_.push_back(std::move(f));
  }

  // Every query touching a rule enumerates at least that rule's component.
  DisjointSets sets(factors_.size());
  std::map<std::string, std::size_t> owner;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    for (const auto& a : factors_[i].atoms) {
      const auto [it, fresh] = owner.emplace(a.key(), i);
      if (!fresh) sets.unite(i, it->second);
    }
  }
  std::map<std::size_t, std::set<std::string>> components;
  for (const auto& [atom, i] : owner) components[sets.find(i)].insert(atom);
  for (const auto& [root, atoms] : components) {
    if (atoms.size() > static_cast<std::size_t>(universe_->max_enumerated_atoms())) {
      throw BoundError("prior rules connect " + std::to_string(atoms.size()) + " atoms, exceeding the bound of " +
                       std::to_string(universe_->max_enumerated_atoms()));
    }
  }
}

Distribution::Outcome Distribution::run(std::span<const Formula> conjuncts, const Formula* target) const {
  struct Item {
    Formula formula;
    std::vector<AtomId> atoms;
    int role;  // 0 conjunct, 1 target, 2 factor
    const Factor* factor = nullptr;
  };
  std::vector<Item> items;
  for (const auto& c : conjuncts) {
    universe_->require_known(c);
    Formula e = expand_guilt(c, universe_->guilt());
    auto atoms = atom_list(e);
    if (atoms.empty()) {
      if (classify(e) == SemanticStatus::kContradiction) return {true, Rational(0)};
      continue;
    }
    items.push_back({std::move(e), std::move(atoms), 0});
  }
  std::optional<Formula> constant_target;
  if (target) {
    universe_->require_known(*target);
    Formula e = expand_guilt(*target, universe_->guilt());
    auto atoms = atom_list(e);
    if (atoms.empty()) {
      constant_target = e;
    } else {
      items.push_back({std::move(e), std::move(atoms), 1});
    }
  }
  const std::size_t query_items = items.size();
  for (const auto& f : factors_) items.push_back({f.formula, f.atoms, 2, &f});

  DisjointSets sets(items.size());
  std::map<std::string, std::size_t> owner;
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (const auto& a : items[i].atoms) {
      const auto [it, fresh] = owner.emplace(a.key(), i);
      if (!fresh) sets.unite(i, it->second);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < items.size(); ++i) groups[sets.find(i)].push_back(i);

  Rational product = 1;
  std::optional<Rational> target_value;
  for (const auto& [root, members] : groups) {
    const bool relevant = std::any_of(members.begin(), members.end(), [&](std::size_t i) { return i < query_items; });
    if (!relevant) continue;
    std::set<AtomId> atom_set;
    for (auto i : members) atom_set.insert(items[i].atoms.begin(), items[i].atoms.end());
    const TruthColumns table({atom_set.begin(), atom_set.end()}, universe_->max_enumerated_atoms());

    Column x = table.ones();
    std::optional<Column> target_column;
    std::vector<Column> factor_columns;
    std::vector<const Factor*> factors;
    for (auto i : members) {
      switch (items[i].role) {
        case 0: TruthColumns::and_into(x, table.evaluate(items[i].formula)); break;
        case 1: target_column = table.evaluate(items[i].formula); break;
        default:
          factor_columns.push_back(table.evaluate(items[i].formula));
          factors.push_back(items[i].factor);
      }
    }
    const BigInt satisfied = weighted_count(x, factor_columns, factors);
    if (satisfied == 0) return {true, Rational(0)};
    if (target_column) {
      TruthColumns::and_into(*target_column, x);
      Rational v(weighted_count(*target_column, factor_columns, factors), satisfied);
      v.canonicalize();
      target_value = v;
    } else if (!target) {
      Rational v(satisfied, weighted_count(table.ones(), factor_columns, factors));
      v.canonicalize();
      product *= v;
    }
  }
  if (!target) return {false, product};
  if (constant_target) return {false, classify(*constant_target) == SemanticStatus::kTautology ? Rational(1) : Rational(0)};
  return {false, *target_value};
}

Rational Distribution::probability(const Formula& f) const {
  const Formula conjuncts[] = {f};
  return run(conjuncts, nullptr).value;
}

Rational Distribution::mass(std::span<const Formula> conjuncts) const { return run(conjuncts, nullptr).value; }

Rational Distribution::conditional(const Formula& f, std::span<const Formula> gamma) const {
  const Outcome o = run(gamma, &f);
  if (o.null_condition) throw ZeroConditionError("conditioning set has zero probability");
  return o.value;
}

Rational Distribution::weight(const World& world) const {
  BigInt numerator = 1;
  for (const auto& f : factors_) numerator *= satisfies(*universe_, world, f.formula) ? f.satisfied : f.unsatisfied;

  // Normalizer: product over factor-connected groups times 2^(free atoms).
  DisjointSets sets(factors_.size());
  std::map<std::string, std::size_t> owner;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    for (const auto& a : factors_[i].atoms) {
      const auto [it, fresh] = owner.emplace(a.key(), i);
      if (!fresh) sets.unite(i, it->second);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < factors_.size(); ++i) groups[sets.find(i)].push_back(i);
  BigInt normalizer = 1;
  std::size_t bound_atoms = 0;
  for (const auto& [root, members] : groups) {
    std::set<AtomId> atom_set;
    for (auto i : members) atom_set.insert(factors_[i].atoms.begin(), factors_[i].atoms.end());
    bound_atoms += atom_set.size();
    const TruthColumns table({atom_set.begin(), atom_set.end()}, universe_->max_enumerated_atoms());
    std::vector<Column> columns;
    std::vector<const Factor*> fs;
    for (auto i : members) {
      columns.push_back(table.evaluate(factors_[i].formula));
      fs.push_back(&factors_[i]);
    }
    normalizer *= weighted_count(table.ones(), columns, fs);
  }
  BigInt free_worlds;
  mpz_ui_pow_ui(free_worlds.get_mpz_t(), 2, universe_->atoms().size() - bound_atoms);
  Rational w(numerator, normalizer * free_worlds);
  w.canonicalize();
  return w;
}

// ---------------------------------------------------------------- PartialCredence

class PartialCredence::Query {
 public:
  Query(const PartialCredence& pc, const FormulaSet& gamma) : pc_(pc), gamma_(gamma) {
    const GuiltDef& guilt = pc_.distribution_.universe().guilt();
    for (const auto& g : gamma_) {
      auto occ = suspended_in(g, guilt);
      if (pc_.fault_ == DefinednessFault::kDropMembership) per_member_.push_back(occ);
      covered_.insert(occ.begin(), occ.end());
    }
  }

  bool defined(const Formula& f) {
    const DefinednessFault fault = pc_.fault_;
    if (f.op() == Op::kNot && fault != DefinednessFault::kDropNegationSymmetry) return defined(f.lhs());
    if (status(f) != SemanticStatus::kContingent) return true;
    if (f.op() == Op::kNot) return gamma_.contains(f);  // seeded fault only
    if (fault != DefinednessFault::kDropMembership && gamma_.contains(f)) return true;
    if (covered(f)) return true;
    if (f.op() == Op::kAnd) {
      if (fault == DefinednessFault::kDropConjunctionGuard) return defined(f.lhs()) || defined(f.rhs());
      for (const Formula& c : {f.lhs(), f.rhs()}) {
        const StanceValue v = value(c);
        if (v.is_defined() && v.value() == 0) return true;
      }
    }
    return false;
  }

  StanceValue value(const Formula& f) {
    if (!defined(f)) return StanceValue::undefined(UndefinedReason::kUncovered);
    switch (status(f)) {
      case SemanticStatus::kTautology: return StanceValue::defined(Rational(1));
      case SemanticStatus::kContradiction: return StanceValue::defined(Rational(0));
      default: break;
    }
    const auto& gamma = gamma_.items();
    try {
      return StanceValue::defined(pc_.distribution_.conditional(f, gamma));
    } catch (const ZeroConditionError&) {
      return StanceValue::undefined(UndefinedReason::kZeroCondition);
    }
  }

 private:
  std::set<AtomId> suspended_in(const Formula& f, const GuiltDef& guilt) const {
    std::set<AtomId> out;
    for (const auto& a : occurring_atoms(f)) {
      if (pc_.suspended_.contains(a)) out.insert(a);
    }
    if (contains_guilt(f)) {
      for (const auto& a : occurring_atoms(expand_guilt(f, guilt))) {
        if (pc_.suspended_.contains(a)) out.insert(a);
      }
    }
    return out;
  }

  bool covered(const Formula& f) const {
    const auto need = suspended_in(f, pc_.distribution_.universe().guilt());
    if (pc_.fault_ != DefinednessFault::kDropMembership) {
      return std::includes(covered_.begin(), covered_.end(), need.begin(), need.end());
    }
    // Seeded fault: a member of gamma never contributes coverage to itself.
    std::set<AtomId> pool;
    std::size_t i = 0;
    for (const auto& g : gamma_) {
      if (g != f) pool.insert(per_member_[i].begin(), per_member_[i].end());
      ++i;
    }
    return std::includes(pool.begin(), pool.end(), need.begin(), need.end());
  }

  SemanticStatus status(const Formula& f) {
    const auto it = status_.find(f.key());
    if (it != status_.end()) return it->second;
    const SemanticStatus s = semantic_status(f, pc_.distribution_.universe());
    status_.emplace(f.key(), s);
    return s;
  }

  const PartialCredence& pc_;
  const FormulaSet& gamma_;
  std::set<AtomId> covered_;
  std::vector<std::set<AtomId>> per_member_;
  std::map<std::string, SemanticStatus> status_;
};

PartialCredence::PartialCredence(Distribution distribution, std::set<AtomId> suspended, DefinednessFault fault)
    : distribution_(std::move(distribution)), suspended_(std::move(suspended)), fault_(fault) {}

std::set<AtomId> PartialCredence::default_suspended(const Universe& universe) {
  std::set<AtomId> out(universe.label_atoms().begin(), universe.label_atoms().end());
  out.insert(AtomId::guilt_marker(universe.guilt().constant));
  return out;
}

bool PartialCredence::is_defined(const Formula& f, const FormulaSet& gamma) const {
  distribution_.universe().require_known(f);
  return Query(*this, gamma).defined(f);
}

StanceValue PartialCredence::credence(const Formula& f, const FormulaSet& gamma) const {
  distribution_.universe().require_known(f);
  return Query(*this, gamma).value(f);
}

// ---------------------------------------------------------------- audit

std::size_t AuditReport::violations_of(const std::string& axiom) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [&](const auto& v) { return v.axiom == axiom; }));
}

namespace {

bool is_zero(const StanceValue& v) { return v.is_defined() && v.value() == 0; }
bool is_positive(const StanceValue& v) { return v.is_defined() && v.value() > 0; }

}  // namespace

AuditReport audit_axioms(const PartialCredence& pc, std::span<const AuditProbe> probes) {
  AuditReport report;
  for (const char* axiom : {"Part-1", "Part-2", "Part-3", "Part-4", "Part-5", "Part-6"}) report.checked[axiom] = 0;
  const Universe& universe = pc.distribution().universe();

  auto violate = [&](const char* axiom, const AuditProbe& p, const Formula& f, std::string detail) {
    report.violations.push_back({axiom, p.context, f.key(), std::move(detail)});
  };

  std::set<std::string> seen_contexts;
  std::set<std::pair<std::string, std::string>> seen_forms;
  for (const auto& probe : probes) {
    const FormulaSet& gamma = probe.gamma;
    if (seen_contexts.insert(probe.context).second) {
      report.checked["Part-1"] += 2;
      if (pc.credence(Formula::top(), gamma) != StanceValue::defined(Rational(1))) {
        violate("Part-1", probe, Formula::top(), "P(true | gamma) != 1");
      }
      if (pc.credence(Formula::bottom(), gamma) != StanceValue::defined(Rational(0))) {
        violate("Part-1", probe, Formula::bottom(), "P(false | gamma) != 0");
      }
      for (const auto& g : gamma) {
        ++report.checked["Part-2"];
        if (!pc.is_defined(g, gamma)) violate("Part-2", probe, g, "member of gamma is undefined");
      }
    }

    std::vector<Formula> forms = {probe.formula, Formula::negation(probe.formula)};
    if (probe.formula.op() == Op::kAnd) forms.push_back(Formula::conjunction(probe.formula.rhs(), probe.formula.lhs()));

    for (const auto& f : forms) {
      if (!seen_forms.insert({probe.context, f.key()}).second) continue;
      const StanceValue v = pc.credence(f, gamma);

      const SemanticStatus st = semantic_status(f, universe);
      if (st != SemanticStatus::kContingent) {
        ++report.checked["Part-1"];
        const Rational expected = st == SemanticStatus::kTautology ? 1 : 0;
        if (v != StanceValue::defined(expected)) violate("Part-1", probe, f, "logical constant valued " + v.to_string());
      }

      ++report.checked["Part-3"];
      const Formula neg = Formula::negation(f);
      if (pc.is_defined(f, gamma) != pc.is_defined(neg, gamma)) {
        violate("Part-3", probe, f, "definedness differs from its negation");
      }
      if (f.op() != Op::kAnd) continue;

      const Formula lhs = f.lhs();
      const Formula rhs = f.rhs();
      const Formula swapped = Formula::conjunction(rhs, lhs);
      const bool df = pc.is_defined(f, gamma);
      ++report.checked["Part-3"];
      if (df != pc.is_defined(swapped, gamma)) {
        violate("Part-3", probe, f, "definedness differs from the swapped conjunction");
      }

      const StanceValue vl = pc.credence(lhs, gamma);
      const StanceValue vr = pc.credence(rhs, gamma);
      const bool dl = pc.is_defined(lhs, gamma);
      const bool dr = pc.is_defined(rhs, gamma);

      ++report.checked["Part-4"];
      if (is_positive(v) && (!dl || !dr)) {
        violate("Part-4", probe, f, "positive conjunction with an undefined conjunct");
      }
      for (const auto* c : {&vl, &vr}) {
        ++report.checked["Part-4"];
        if (is_zero(*c) && !is_zero(v)) violate("Part-4", probe, f, "conjunct at 0 but conjunction is " + v.to_string());
      }

      const std::pair<bool, const StanceValue*> orders[] = {{dl, &vr}, {dr, &vl}};
      for (const auto& [x_defined, y] : orders) {
        ++report.checked["Part-5"];
        if (!x_defined && df && !is_zero(*y) && st != SemanticStatus::kContradiction) {
          violate("Part-5", probe, f, "undefined conjunct but defined conjunction");
        }
      }

      const std::pair<Formula, Formula> pairs[] = {{lhs, rhs}, {rhs, lhs}};
      for (std::size_t k = 0; k < 2; ++k) {
        const StanceValue& vx = k == 0 ? vl : vr;
        ++report.checked["Part-6"];
        if (!(is_positive(vx) && is_zero(v))) continue;
        FormulaSet extended = gamma;
        extended.insert(pairs[k].first);
        const StanceValue vy = pc.credence(pairs[k].second, extended);
        if (is_positive(vy)) {
          violate("Part-6", probe, f, "P(other | gamma, conjunct) = " + vy.to_string() + " but conjunction is 0");
        }
      }
    }
  }
  return report;
}

}  // namespace brdkit
