#include "brdkit/evaluator.hpp"

#include <algorithm>
#include <limits>

#include "brdkit/error.hpp"

namespace brdkit {

std::string to_string(Status status) {
  switch (status) {
    case Status::kPass: return "PASS";
    case Status::kFail: return "FAIL";
    default: return "UNDETERMINED";
  }
}

bool Wellformedness::all_pass() const {
  return exclusion.status == Status::kPass && decision.status == Status::kPass &&
         initial_plausibility.status == Status::kPass && exhaustion.status == Status::kPass;
}

bool Relevance::is_relevant(const Formula& phi) const {
  return std::find(sentences.begin(), sentences.end(), phi) != sentences.end();
}

std::vector<std::vector<std::size_t>> ordered_subsets(std::size_t n, int max_size) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t limit = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(max_size, 0)));
  for (std::size_t k = 1; k <= limit; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      out.push_back(idx);
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return out;
}

namespace {

constexpr std::size_t kNoNarration = std::numeric_limits<std::size_t>::max();

enum class Tri : std::uint8_t { kTrue, kFalse, kUnknown };

Tri tri(bool b) { return b ? Tri::kTrue : Tri::kFalse; }

Tri at_least(const StanceValue& v, const Rational& threshold) {
  if (!v.is_defined()) return Tri::kUnknown;
  return tri(v.value() >= threshold);
}

Tri at_least(const StanceValue& x, const StanceValue& y) {
  if (!x.is_defined() || !y.is_defined()) return Tri::kUnknown;
  return tri(x.value() >= y.value());
}

Tri kleene_and(Tri x, Tri y) {
  if (x == Tri::kFalse || y == Tri::kFalse) return Tri::kFalse;
  if (x == Tri::kUnknown || y == Tri::kUnknown) return Tri::kUnknown;
  return Tri::kTrue;
}

Tri kleene_or(Tri x, Tri y) {
  if (x == Tri::kTrue || y == Tri::kTrue) return Tri::kTrue;
  if (x == Tri::kUnknown || y == Tri::kUnknown) return Tri::kUnknown;
  return Tri::kFalse;
}

Tri kleene_not(Tri x) {
  if (x == Tri::kUnknown) return x;
  return x == Tri::kTrue ? Tri::kFalse : Tri::kTrue;
}

/// A search-style condition: undefined counts as "not a witness" unless strict.
Tri searched(Tri x, bool strict) { return (x == Tri::kUnknown && !strict) ? Tri::kFalse : x; }

Witness summary(std::string note) {
  Witness w;
  w.note = std::move(note);
  return w;
}

class Forall {
 public:
  void add(Tri t, Witness w) {
    switch (t) {
      case Tri::kTrue: passing_.push_back(std::move(w)); break;
      case Tri::kFalse: failing_.push_back(std::move(w)); break;
      case Tri::kUnknown: unknown_.push_back(std::move(w)); break;
    }
  }

  Verdict3 finish(const std::string& vacuous_note) {
    Verdict3 v;
    v.unresolved = unknown_;
    if (!failing_.empty()) {
      v.status = Status::kFail;
      v.witnesses = std::move(failing_);
    } else if (!unknown_.empty()) {
      v.status = Status::kUndetermined;
      v.witnesses = std::move(unknown_);
    } else {
      v.status = Status::kPass;
      v.witnesses = std::move(passing_);
      if (v.witnesses.empty()) v.witnesses.push_back(summary(vacuous_note));
    }
    return v;
  }

 private:
  std::vector<Witness> passing_, failing_, unknown_;
};

class Exists {
 public:
  explicit Exists(bool strict) : strict_(strict) {}

  /// Returns true once a witness is found; callers stop searching.
  bool add(Tri t, Witness w) {
    ++examined_;
    if (t == Tri::kTrue) {
      found_ = std::move(w);
      return true;
    }
    if (t == Tri::kUnknown) unknown_.push_back(std::move(w));
    return false;
  }

  Verdict3 finish(const std::string& what) {
    Verdict3 v;
    v.unresolved = unknown_;
    if (found_) {
      v.status = Status::kPass;
      v.witnesses.push_back(std::move(*found_));
    } else if (strict_ && !unknown_.empty()) {
      v.status = Status::kUndetermined;
      v.witnesses = std::move(unknown_);
    } else {
      v.status = Status::kFail;
      std::string note = "no " + what + " among " + std::to_string(examined_) + " candidate sets";
      if (!unknown_.empty()) note += "; " + std::to_string(unknown_.size()) + " undefined candidates skipped";
      v.witnesses.push_back(summary(std::move(note)));
    }
    return v;
  }

 private:
  bool strict_;
  std::size_t examined_ = 0;
  std::optional<Witness> found_;
  std::vector<Witness> unknown_;
};

Tri as_tri(Status s) {
  switch (s) {
    case Status::kPass: return Tri::kTrue;
    case Status::kFail: return Tri::kFalse;
    default: return Tri::kUnknown;
  }
}

Status as_status(Tri t) {
  switch (t) {
    case Tri::kTrue: return Status::kPass;
    case Tri::kFalse: return Status::kFail;
    default: return Status::kUndetermined;
  }
}

Verdict3 prefixed(Verdict3 v, const std::string& prefix) {
  for (auto* list : {&v.witnesses, &v.unresolved}) {
    for (auto& w : *list) w.note = w.note.empty() ? prefix : prefix + ": " + w.note;
  }
  return v;
}

Verdict3 negated(Verdict3 v) {
  if (v.status == Status::kPass) {
    v.status = Status::kFail;
  } else if (v.status == Status::kFail) {
    v.status = Status::kPass;
  }
  return v;
}

/// Kleene conjunction of already-oriented conjuncts.
Verdict3 conjunction(const std::vector<Verdict3>& parts) {
  Verdict3 out;
  for (const auto& p : parts) out.unresolved.insert(out.unresolved.end(), p.unresolved.begin(), p.unresolved.end());
  for (const auto& p : parts) {
    if (p.status == Status::kFail) {
      out.status = Status::kFail;
      out.witnesses = p.witnesses;
      return out;
    }
  }
  for (const auto& p : parts) {
    if (p.status == Status::kUndetermined) {
      out.status = Status::kUndetermined;
      out.witnesses = p.witnesses;
      return out;
    }
  }
  out.status = Status::kPass;
  for (const auto& p : parts) out.witnesses.insert(out.witnesses.end(), p.witnesses.begin(), p.witnesses.end());
  return out;
}


}  // namespace

// ---------------------------------------------------------------- Evaluator

Evaluator::Evaluator(CaseModel c, DefinednessFault fault)
    : Evaluator(c, std::make_shared<const PartialCredence>(build_credence(c, fault))) {}

Evaluator::Evaluator(CaseModel c, std::shared_ptr<const PartialCredence> credence)
    : case_(std::move(c)), credence_(std::move(credence)) {
  for (auto tag : {BundleTag::kFull, BundleTag::kNFull, BundleTag::kInformed, BundleTag::kEvidential, BundleTag::kArgued}) {
    bundles_.emplace(std::make_pair(tag, kNoNarration), bundle(case_, tag).formulas);
  }
  for (std::size_t j = 0; j < case_.narrations.size(); ++j) {
    for (auto tag : {BundleTag::kPlayAlong, BundleTag::kNExtended, BundleTag::kEExtended, BundleTag::kFExtended}) {
      bundles_.emplace(std::make_pair(tag, j), bundle(case_, tag, j).formulas);
    }
  }
}

const FormulaSet& Evaluator::bundle_formulas(BundleTag tag, std::optional<std::size_t> narration) const {
  if (needs_narration(tag) != narration.has_value()) {
    throw PreconditionError("bundle '" + to_string(tag) + "' narration argument mismatch");
  }
  const auto it = bundles_.find({tag, narration.value_or(kNoNarration)});
  if (it == bundles_.end()) throw PreconditionError("unknown narration index " + std::to_string(*narration));
  return it->second;
}

std::string Evaluator::bundle_name(BundleTag tag, std::optional<std::size_t> narration) const {
  std::string name = to_string(tag);
  if (narration) name += "[" + case_.narrations.at(*narration).id + "]";
  return name;
}

StanceValue Evaluator::p_variant(BundleTag tag, const Formula& f, const FormulaSet& extra,
                                 std::optional<std::size_t> narration) const {
  const FormulaSet& base = bundle_formulas(tag, narration);
  if (extra.empty()) return credence_->credence(f, base);
  return credence_->credence(f, base.united(extra));
}

StanceValue Evaluator::bare(const Formula& f, const FormulaSet& gamma) const { return credence_->credence(f, gamma); }

Wellformedness Evaluator::wellformedness() const {
  const auto& t = case_.thresholds;
  const auto& ns = case_.narrations;
  Wellformedness out;
  const std::string full = bundle_name(BundleTag::kFull);

  Forall exclusion;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    for (std::size_t j = i + 1; j < ns.size(); ++j) {
      const Formula q = Formula::negation(Formula::conjunction(ns[i].conjunction(), ns[j].conjunction()));
      const auto v = p_variant(BundleTag::kFull, q);
      exclusion.add(at_least(v, t.a), {{}, q.key(), v, full, ns[i].id + " vs " + ns[j].id + ", needs >= a"});
    }
  }
  out.exclusion = exclusion.finish("fewer than two narrations");

  Forall decision;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const Formula g = Formula::guilt(case_.guilt.constant);
    const Formula q = ns[i].side == Side::kAccusing ? g : Formula::negation(g);
    const auto v = p_variant(BundleTag::kFExtended, q, {}, i);
    decision.add(at_least(v, t.a), {ns[i].content, q.key(), v, bundle_name(BundleTag::kFExtended, i), "needs >= a"});
  }
  out.decision = decision.finish("no narrations");

  Forall plausibility;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const Formula q = ns[i].conjunction();
    const auto v = p_variant(BundleTag::kEvidential, q);
    plausibility.add(at_least(v, t.n),
                     {ns[i].content, q.key(), v, bundle_name(BundleTag::kEvidential), ns[i].id + ", needs >= n"});
  }
  out.initial_plausibility = plausibility.finish("no narrations");

  Forall exhaustion;
  std::vector<Formula> disjuncts;
  for (const auto& n : ns) disjuncts.push_back(n.conjunction());
  const Formula q = Formula::any_of(disjuncts);
  const auto v = p_variant(BundleTag::kFull, q);
  exhaustion.add(at_least(v, t.s), {{}, q.key(), v, full, "needs >= s"});
  out.exhaustion = exhaustion.finish("");
  return out;
}

Verdict3 Evaluator::explains_evidence_accusing(std::size_t i) const {
  const auto& n = case_.narrations.at(i);
  if (n.side != Side::kAccusing) throw PreconditionError("narration '" + n.id + "' is not accusing");
  const auto& t = case_.thresholds;
  const bool strict = case_.search.strict;
  const std::string name = bundle_name(BundleTag::kPlayAlong, i);
  Forall all;
  for (const auto& e : case_.evidence) {
    const Formula excluded = Formula::negation(Formula::evidence(e));
    const auto vx = p_variant(BundleTag::kPlayAlong, excluded, {}, i);
    const Tri exempt = searched(at_least(vx, t.s), strict);
    if (exempt == Tri::kTrue) {
      all.add(Tri::kTrue, {{e}, excluded.key(), vx, name, "excluded as evidence"});
      continue;
    }
    const auto ve = p_variant(BundleTag::kPlayAlong, e, {}, i);
    const Tri explained = kleene_or(exempt, at_least(ve, t.s));
    all.add(explained, {{e}, e.key(), ve, name, "needs >= s"});
  }
  return all.finish("no evidence");
}

Verdict3 Evaluator::explains_evidence_defending(std::size_t k) const {
  const auto& n = case_.narrations.at(k);
  if (n.side != Side::kDefending) throw PreconditionError("narration '" + n.id + "' is not defending");
  const auto& t = case_.thresholds;
  const std::string name = bundle_name(BundleTag::kPlayAlong, k);
  Forall all;
  for (const auto& e : case_.evidence) {
    // Does e confirm some accusing narration on bare priors?
    std::size_t defined = 0;
    std::size_t open = 0;
    std::optional<std::string> confirms;
    for (const auto& a : case_.narrations) {
      if (a.side != Side::kAccusing) continue;
      const Formula q = a.conjunction();
      const auto prior = bare(q);
      const auto posterior = bare(q, FormulaSet{e});
      if (!prior.is_defined() || !posterior.is_defined()) {
        ++open;
        continue;
      }
      ++defined;
      if (posterior.value() > prior.value()) {
        confirms = a.id;
        break;
      }
    }
    Tri trigger = Tri::kFalse;
    if (confirms) {
      trigger = Tri::kTrue;
    } else if (open > 0 && (case_.search.strict || defined == 0)) {
      trigger = Tri::kUnknown;
    }
    if (trigger == Tri::kFalse) {
      all.add(Tri::kTrue, {{e}, e.key(), std::nullopt, "bare", "does not confirm any accusing narration"});
      continue;
    }
    const auto ve = p_variant(BundleTag::kPlayAlong, e, {}, k);
    const Tri ok = kleene_or(kleene_not(trigger), at_least(ve, t.r));
    std::string note = confirms ? "confirms " + *confirms + ", needs >= r" : "confirmation undefined, needs >= r";
    if (ok == Tri::kUnknown && ve.is_defined()) {
      // The open part is the confirmation test itself.
      all.add(ok, {{e}, "P(N | " + e.key() + ") > P(N)", StanceValue::undefined(UndefinedReason::kUncovered), "bare",
                   "confirmation of accusing narrations undefined; " + std::string(ve.value() >= t.r ? "" : "not ") +
                       "explained under " + name});
      continue;
    }
    all.add(ok, {{e}, e.key(), ve, name, note});
  }
  return all.finish("no evidence");
}

Verdict3 Evaluator::explains_evidence(std::size_t i) const {
  return case_.narrations.at(i).side == Side::kAccusing ? explains_evidence_accusing(i) : explains_evidence_defending(i);
}

Verdict3 Evaluator::missing_evidence(std::size_t i) const {
  const auto& n = case_.narrations.at(i);
  const auto& t = case_.thresholds;
  const auto candidates = case_.non_evidence();
  const std::string name = bundle_name(BundleTag::kNExtended, i);
  Exists search(case_.search.strict);
  for (const auto& subset : ordered_subsets(candidates.size(), case_.search.max_disjunction)) {
    std::vector<Formula> members, labels;
    for (auto idx : subset) {
      members.push_back(candidates[idx]);
      labels.push_back(Formula::evidence(candidates[idx]));
    }
    const Formula q = Formula::any_of(labels);
    const auto v = p_variant(BundleTag::kNExtended, q, {}, i);
    if (search.add(at_least(v, t.s), {members, q.key(), v, name, "expected evidence, needs >= s"})) break;
  }
  (void)n;
  return search.finish("expected-but-missing evidence");
}

Verdict3 Evaluator::gap(std::size_t i, GapMode mode) const {
  const auto& n = case_.narrations.at(i);
  const auto& t = case_.thresholds;
  const bool strict = case_.search.strict;
  const bool commitment = mode == GapMode::kCommitment && n.side == Side::kAccusing;
  std::vector<Formula> candidates;
  for (const auto& phi : case_.universe) {
    if (!n.contains(phi)) candidates.push_back(phi);
  }

  std::optional<Relevance> relevance;
  std::optional<StanceValue> guilt_value;
  const Formula guilt = Formula::guilt(case_.guilt.constant);
  auto antecedent_value = [&](const Formula& phi) {
    return case_.search.commitment_variant == CommitmentVariant::kEvidential
               ? p_variant(BundleTag::kEvidential, phi)
               : p_variant(BundleTag::kFExtended, phi, {}, i);
  };
  const std::string antecedent_bundle = case_.search.commitment_variant == CommitmentVariant::kEvidential
                                            ? bundle_name(BundleTag::kEvidential)
                                            : bundle_name(BundleTag::kFExtended, i);
  if (commitment) {
    relevance = this->relevance();
    guilt_value = antecedent_value(guilt);
  }

  const std::string clause1_bundle = bundle_name(BundleTag::kFExtended, i);
  const std::string clause2_bundle = bundle_name(BundleTag::kEExtended, i);
  Exists search(strict);
  for (const auto& subset : ordered_subsets(candidates.size(), case_.search.max_disjunction)) {
    std::vector<Formula> members, labels;
    for (auto idx : subset) {
      members.push_back(candidates[idx]);
      labels.push_back(Formula::narration(static_cast<int>(i) + 1, candidates[idx]));
    }
    const Formula q1 = Formula::any_of(members);
    const auto v1 = p_variant(BundleTag::kFExtended, q1, {}, i);
    const Tri clause1 = searched(at_least(v1, t.s), strict);
    Witness w{members, q1.key(), v1, clause1_bundle, "claimed choice, needs >= s"};
    if (clause1 == Tri::kFalse) {
      search.add(Tri::kFalse, std::move(w));
      continue;
    }
    Tri clause2 = Tri::kTrue;
    std::optional<Witness> open;
    if (commitment) {
      for (const auto& phi : members) {
        if (!relevance->is_relevant(phi)) {
          clause2 = Tri::kFalse;
          break;
        }
        const auto vphi = antecedent_value(phi);
        const Tri c = at_least(vphi, *guilt_value);
        if (c == Tri::kUnknown && !open) {
          open = Witness{{phi}, phi.key(), vphi.is_defined() ? *guilt_value : vphi, antecedent_bundle,
                         "commitment antecedent undefined"};
        }
        clause2 = kleene_and(clause2, c);
      }
      if (clause2 == Tri::kTrue) w.note += "; each member relevant and at least as credible as guilt under " + antecedent_bundle;
    } else {
      const Formula q2 = Formula::any_of(labels);
      const auto v2 = p_variant(BundleTag::kEExtended, q2, {}, i);
      clause2 = at_least(v2, t.s);
      if (clause2 == Tri::kUnknown) open = Witness{members, q2.key(), v2, clause2_bundle, "description credence undefined"};
      if (clause2 == Tri::kTrue) w.note += "; described choice " + q2.key() + " = " + v2.to_string();
    }
    const Tri both = kleene_and(clause1, clause2);
    if (both == Tri::kUnknown) {
      search.add(Tri::kUnknown, (clause1 == Tri::kUnknown || !open) ? std::move(w) : std::move(*open));
      continue;
    }
    if (search.add(both, std::move(w))) break;
  }
  return search.finish(commitment ? "gap (commitment)" : "gap");
}

Verdict3 Evaluator::ordering_clause(std::size_t i, const StanceValue& own) const {
  const auto& ns = case_.narrations;
  const std::string full = bundle_name(BundleTag::kFull);
  Forall all;
  all.add(at_least(own, case_.thresholds.s), {ns[i].content, ns[i].conjunction().key(), own, full, "needs >= s"});
  for (std::size_t j = 0; j < ns.size(); ++j) {
    if (j == i || ns[j].side != Side::kAccusing) continue;
    const auto other = p_variant(BundleTag::kFull, ns[j].conjunction());
    all.add(at_least(own, other),
            {ns[j].content, ns[j].conjunction().key(), other, full, "rival " + ns[j].id + " must not exceed " + own.to_string()});
  }
  return all.finish("");
}

Verdict3 Evaluator::dominates(std::size_t i) const {
  const auto& n = case_.narrations.at(i);
  if (n.side != Side::kAccusing) throw PreconditionError("narration '" + n.id + "' is not accusing");
  const auto own = p_variant(BundleTag::kFull, n.conjunction());
  return conjunction({prefixed(negated(missing_evidence(i)), "missing evidence"), prefixed(negated(gap(i)), "gap"),
                      prefixed(ordering_clause(i, own), "credence")});
}

Verdict3 Evaluator::resilient(std::size_t i) const {
  if (dominates(i).status != Status::kPass) {
    throw PreconditionError("narration '" + case_.narrations.at(i).id + "' does not dominate");
  }
  const auto& t = case_.thresholds;
  const bool strict = case_.search.strict;
  const std::string name = bundle_name(BundleTag::kNFull);
  Forall all;
  for (const auto& phi : case_.non_evidence()) {
    const Formula q = Formula::evidence(phi);
    const auto v = p_variant(BundleTag::kNFull, q);
    const Tri relevant = searched(at_least(v, t.n), strict);
    if (relevant == Tri::kFalse) {
      continue;
    }
    if (relevant == Tri::kUnknown) {
      all.add(Tri::kUnknown, {{phi}, q.key(), v, name, "potential evidence credence undefined"});
      continue;
    }
    const Evaluator extended(with_evidence(case_, phi), credence_);
    const auto d = extended.dominates(i);
    Witness w{{phi}, q.key(), v, name, "potential evidence; domination after adding it: " + to_string(d.status)};
    all.add(as_tri(d.status), std::move(w));
  }
  return all.finish("no non-negligible potential evidence");
}

Verdict3 Evaluator::reasonable_doubt(std::size_t k) const {
  const auto& n = case_.narrations.at(k);
  if (n.side != Side::kDefending) throw PreconditionError("narration '" + n.id + "' is not defending");
  const auto v = p_variant(BundleTag::kFull, n.conjunction());
  Forall credence;
  credence.add(at_least(v, case_.thresholds.r), {n.content, n.conjunction().key(), v, bundle_name(BundleTag::kFull), "needs >= r"});
  return conjunction({prefixed(negated(gap(k)), "gap"), prefixed(credence.finish(""), "credence")});
}

EvaluationReport Evaluator::evaluate() const {
  EvaluationReport report;
  report.thresholds = case_.thresholds;
  report.search = case_.search;
  report.wellformedness = wellformedness();

  Tri exists = Tri::kFalse;
  std::optional<Verdict3> chosen;
  std::optional<Verdict3> open_accuser;
  Tri forall = Tri::kTrue;
  std::optional<Verdict3> doubt;
  std::optional<Verdict3> open_doubt;
  std::vector<Witness> doubt_witnesses;

  for (std::size_t i = 0; i < case_.narrations.size(); ++i) {
    const auto& n = case_.narrations[i];
    NarrationReport nr{i, n.id, n.side, {}};
    nr.criteria.emplace_back("explains_evidence", explains_evidence(i));
    if (n.side == Side::kAccusing) {
      nr.criteria.emplace_back("missing_evidence", missing_evidence(i));
      nr.criteria.emplace_back("gap", gap(i));
      auto d = dominates(i);
      nr.criteria.emplace_back("dominates", d);
      Tri candidate = as_tri(d.status);
      if (d.status == Status::kPass) {
        auto r = resilient(i);
        nr.criteria.emplace_back("resilient", r);
        candidate = as_tri(r.status);
        if (r.status == Status::kPass && !chosen) chosen = prefixed(conjunction({d, r}), n.id);
        if (r.status == Status::kUndetermined && !open_accuser) open_accuser = prefixed(r, n.id);
      } else if (d.status == Status::kUndetermined && !open_accuser) {
        open_accuser = prefixed(d, n.id);
      }
      exists = kleene_or(exists, candidate);
    } else {
      nr.criteria.emplace_back("gap", gap(i));
      auto rd = reasonable_doubt(i);
      nr.criteria.emplace_back("reasonable_doubt", rd);
      forall = kleene_and(forall, kleene_not(as_tri(rd.status)));
      if (rd.status == Status::kPass && !doubt) doubt = prefixed(rd, "reasonable doubt from " + n.id);
      if (rd.status == Status::kUndetermined && !open_doubt) open_doubt = prefixed(rd, n.id);
      if (rd.status == Status::kFail) {
        Witness w = rd.witnesses.front();
        w.note = "no reasonable doubt from " + n.id + (w.note.empty() ? "" : ": " + w.note);
        doubt_witnesses.push_back(std::move(w));
      }
    }
    report.narrations.push_back(std::move(nr));
  }

  Verdict3 brd;
  brd.status = as_status(kleene_and(exists, forall));
  for (const auto& nr : report.narrations) {
    for (const auto& [name, v] : nr.criteria) {
      if (name == "dominates" || name == "resilient" || name == "reasonable_doubt") {
        brd.unresolved.insert(brd.unresolved.end(), v.unresolved.begin(), v.unresolved.end());
      }
    }
  }
  if (brd.status == Status::kPass) {
    brd.witnesses = chosen->witnesses;
    brd.witnesses.insert(brd.witnesses.end(), doubt_witnesses.begin(), doubt_witnesses.end());
  } else if (brd.status == Status::kFail) {
    if (exists == Tri::kFalse) {
      std::size_t accusers = 0;
      for (const auto& n : case_.narrations) accusers += n.side == Side::kAccusing ? 1 : 0;
      brd.witnesses.push_back(summary(accusers == 0 ? "no accusing narrations"
                                                    : "no accusing narration is both dominating and resilient"));
    } else {
      brd.witnesses = doubt->witnesses;
    }
  } else {
    brd.witnesses = (exists == Tri::kUnknown && open_accuser) ? open_accuser->witnesses : open_doubt->witnesses;
  }
  report.beyond_reasonable_doubt = std::move(brd);
  return report;
}

Relevance Evaluator::relevance() const {
  const auto& universe = case_.universe;
  std::vector<Formula> candidates;
  std::vector<std::size_t> sentence_of;
  for (std::size_t k = 0; k < universe.size(); ++k) {
    candidates.push_back(universe[k]);
    sentence_of.push_back(k);
    candidates.push_back(Formula::negation(universe[k]));
    sentence_of.push_back(k);
  }
  const int max_size = case_.search.max_relevant_set;
  {
    // Bound the enumeration before materializing it.
    BigInt total = 0;
    BigInt binom = 1;
    const std::size_t n = candidates.size();
    for (int k = 1; k <= max_size && static_cast<std::size_t>(k) <= n; ++k) {
      binom = binom * static_cast<unsigned long>(n - k + 1) / static_cast<unsigned long>(k);
      total += binom;
    }
    if (total > kMaxRelevanceCandidates) {
      throw BoundError("relevance search over " + std::to_string(n) + " candidates up to size " +
                       std::to_string(max_size) + " exceeds " + std::to_string(kMaxRelevanceCandidates) + " sets");
    }
  }

  const BundleTag background_tag =
      case_.search.relevance_background == RelevanceBackground::kEvidential ? BundleTag::kEvidential : BundleTag::kFull;
  const FormulaSet& background = bundle_formulas(background_tag);
  const auto& dist = credence_->distribution();
  std::vector<StanceValue> before;
  for (const auto& n : case_.narrations) before.push_back(credence_->credence(n.conjunction(), background));

  Relevance out;
  std::vector<std::vector<std::size_t>> minimal;
  std::vector<bool> relevant_sentence(universe.size(), false);
  for (const auto& subset : ordered_subsets(candidates.size(), max_size)) {
    bool clash = false;
    for (std::size_t a = 0; a + 1 < subset.size() && !clash; ++a) {
      for (std::size_t b = a + 1; b < subset.size(); ++b) {
        if (sentence_of[subset[a]] == sentence_of[subset[b]]) {
          clash = true;
          break;
        }
      }
    }
    if (clash) continue;
    const bool contains_minimal = std::any_of(minimal.begin(), minimal.end(), [&](const std::vector<std::size_t>& m) {
      return std::includes(subset.begin(), subset.end(), m.begin(), m.end());
    });
    if (contains_minimal) continue;

    std::vector<Formula> members;
    for (auto idx : subset) members.push_back(candidates[idx]);
    std::vector<Formula> joint(background.items());
    joint.insert(joint.end(), members.begin(), members.end());
    if (!(dist.mass(joint) > 0)) continue;

    FormulaSet extended = background;
    for (const auto& m : members) extended.insert(m);
    for (std::size_t j = 0; j < case_.narrations.size(); ++j) {
      if (!before[j].is_defined()) continue;
      const auto after = credence_->credence(case_.narrations[j].conjunction(), extended);
      if (!after.is_defined() || after.value() == before[j].value()) continue;
      minimal.push_back(subset);
      out.minimal_sets.push_back({members, j, before[j].value(), after.value()});
      for (auto idx : subset) relevant_sentence[sentence_of[idx]] = true;
      break;
    }
  }
  for (std::size_t k = 0; k < universe.size(); ++k) {
    if (relevant_sentence[k]) out.sentences.push_back(universe[k]);
  }
  return out;
}

std::vector<Formula> Evaluator::commitment_violations(std::size_t i) const { return commitment_violations(i, relevance()); }

std::vector<Formula> Evaluator::commitment_violations(std::size_t i, const Relevance& relevance) const {
  const auto& n = case_.narrations.at(i);
  if (n.side != Side::kAccusing) throw PreconditionError("narration '" + n.id + "' is not accusing");
  const bool evidential = case_.search.commitment_variant == CommitmentVariant::kEvidential;
  auto value = [&](const Formula& phi) {
    return evidential ? p_variant(BundleTag::kEvidential, phi) : p_variant(BundleTag::kFExtended, phi, {}, i);
  };
  const auto guilt = value(Formula::guilt(case_.guilt.constant));
  std::vector<Formula> out;
  for (const auto& phi : case_.universe) {
    if (!relevance.is_relevant(phi)) continue;
    if (at_least(value(phi), guilt) != Tri::kTrue) continue;
    const auto described = p_variant(BundleTag::kEExtended, Formula::narration(static_cast<int>(i) + 1, phi), {}, i);
    if (at_least(described, case_.thresholds.s) != Tri::kTrue) out.push_back(phi);
  }
  return out;
}

Narration Evaluator::commitment_closure(std::size_t i) const {
  CaseModel current = case_;
  while (true) {
    const Evaluator step(current, credence_);
    const auto violations = step.commitment_violations(i);
    auto& content = current.narrations[i].content;
    bool grew = false;
    for (const auto& phi : violations) {
      if (std::find(content.begin(), content.end(), phi) == content.end()) {
        content.push_back(phi);
        grew = true;
      }
    }
    if (!grew) return current.narrations[i];
  }
}

// ---------------------------------------------------------------- free functions

StanceValue p_variant(const CaseModel& c, BundleTag tag, const Formula& f, const FormulaSet& extra,
                      std::optional<std::size_t> narration) {
  return Evaluator(c).p_variant(tag, f, extra, narration);
}
Wellformedness wellformedness(const CaseModel& c) { return Evaluator(c).wellformedness(); }
Verdict3 explains_evidence_accusing(const CaseModel& c, std::size_t i) { return Evaluator(c).explains_evidence_accusing(i); }
Verdict3 explains_evidence_defending(const CaseModel& c, std::size_t k) {
  return Evaluator(c).explains_evidence_defending(k);
}
Verdict3 missing_evidence(const CaseModel& c, std::size_t i) { return Evaluator(c).missing_evidence(i); }
Verdict3 gap(const CaseModel& c, std::size_t i, GapMode mode) { return Evaluator(c).gap(i, mode); }
Verdict3 dominates(const CaseModel& c, std::size_t i) { return Evaluator(c).dominates(i); }
Verdict3 resilient(const CaseModel& c, std::size_t i) { return Evaluator(c).resilient(i); }
Verdict3 reasonable_doubt(const CaseModel& c, std::size_t k) { return Evaluator(c).reasonable_doubt(k); }
EvaluationReport beyond_reasonable_doubt(const CaseModel& c) { return Evaluator(c).evaluate(); }
Relevance relevant_sentences(const CaseModel& c) { return Evaluator(c).relevance(); }
std::vector<Formula> commitment_violations(const CaseModel& c, std::size_t i) {
  return Evaluator(c).commitment_violations(i);
}
Narration commitment_closure(const CaseModel& c, std::size_t i) { return Evaluator(c).commitment_closure(i); }

std::vector<AuditProbe> audit_probes(const CaseModel& c) {
  FormulaSet closure;
  auto add = [&](const Formula& f) { for_each_subformula(f, [&](const Formula& s) { closure.insert(s); }); };
  for (const auto& phi : c.universe) {
    add(phi);
    add(Formula::evidence(phi));
    for (std::size_t i = 0; i < c.narrations.size(); ++i) add(Formula::narration(static_cast<int>(i) + 1, phi));
  }
  for (const auto& n : c.narrations) {
    for (const auto& f : n.content) add(f);
    add(n.conjunction());
  }
  for (const auto& g : c.guilt.conjuncts) add(g);
  add(Formula::guilt(c.guilt.constant));
  add(c.guilt.definition());

  std::vector<std::pair<std::string, FormulaSet>> contexts;
  contexts.emplace_back("bare", FormulaSet{});
  for (auto tag : {BundleTag::kFull, BundleTag::kNFull, BundleTag::kInformed, BundleTag::kEvidential, BundleTag::kArgued}) {
    contexts.emplace_back(to_string(tag), bundle(c, tag).formulas);
  }
  for (std::size_t j = 0; j < c.narrations.size(); ++j) {
    for (auto tag : {BundleTag::kPlayAlong, BundleTag::kNExtended, BundleTag::kEExtended, BundleTag::kFExtended}) {
      contexts.emplace_back(to_string(tag) + "[" + c.narrations[j].id + "]", bundle(c, tag, j).formulas);
    }
  }
  std::vector<AuditProbe> probes;
  for (const auto& [name, gamma] : contexts) {
    for (const auto& f : closure) probes.push_back({f, name, gamma});
  }
  return probes;
}

AuditReport audit_case(const CaseModel& c, DefinednessFault fault) {
  const auto pc = build_credence(c, fault);
  const auto probes = audit_probes(c);
  return audit_axioms(pc, probes);
}

}  // namespace brdkit
