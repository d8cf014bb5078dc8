#include <gtest/gtest.h>

#include "brdkit/error.hpp"
#include "brdkit/evaluator.hpp"
#include "brdkit/gatecrasher.hpp"
#include "brdkit/worldmodel.hpp"
#include "support.hpp"

using namespace brdkit;
using test_support::F;
using test_support::Q;

namespace {

std::shared_ptr<const Universe> spectators(int n, int narrations = 0) {
  std::vector<std::string> atoms;
  for (int i = 1; i <= n; ++i) atoms.push_back("g" + std::to_string(i));
  return std::make_shared<const Universe>(atoms, std::vector<Formula>{}, narrations, GuiltDef{"G", {F("g1")}});
}

}  // namespace

TEST(Universe, AddsOneLabelPerSentenceAndNarration) {
  const Universe u({"g1", "g2"}, {F("g1")}, 1, GuiltDef{"G", {F("g1")}});
  std::vector<std::string> keys;
  for (const auto& a : u.atoms()) keys.push_back(a.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"g1", "g2", "E(g1)", "N1(g1)"}));
  EXPECT_EQ(u.world_count(), 16);
}

TEST(Universe, WithoutNarrationsOnlyEvidenceLabels) {
  const Universe u({"g1"}, {F("g1"), F("!g1")}, 0, GuiltDef{"G", {F("g1")}});
  ASSERT_EQ(u.label_atoms().size(), 2u);
  for (const auto& a : u.label_atoms()) EXPECT_EQ(a.kind(), AtomId::Kind::kEvidence);
}

TEST(Universe, RejectsUnknownAtoms) {
  const auto u = spectators(2);
  EXPECT_NO_THROW(u->require_known(F("g1 & G")));
  EXPECT_THROW(u->require_known(F("g3")), UnknownAtomError);
}

TEST(Satisfaction, ClassicalWithGuiltExpansion) {
  const Universe u({"g1", "g2"}, {}, 0, GuiltDef{"G", {F("g1"), F("g2")}});
  const World w = world_at(u, 0b01);  // g1 true, g2 false
  EXPECT_FALSE(satisfies(u, w, F("!g1")));
  EXPECT_TRUE(satisfies(u, w, Formula::top()));
  EXPECT_FALSE(satisfies(u, w, F("G")));
  EXPECT_TRUE(satisfies(u, world_at(u, 0b11), F("G")));
}

TEST(Prior, UniformAndReweighted) {
  const auto u = spectators(1);
  EXPECT_EQ(Distribution(u, {}).probability(F("g1")), Q(1, 2));
  EXPECT_EQ(Distribution(u, {{{F("g1"), Q(3, 1)}}}).probability(F("g1")), Q(3, 4));
  EXPECT_EQ(Distribution(u, {{{F("g1 & !g1"), Q(2, 1)}}}).probability(F("g1")), Q(1, 2));
  const auto u4 = spectators(4);
  const Distribution d(u4, {});
  EXPECT_EQ(d.weight(world_at(*u4, 5)), Q(1, 16));
}

TEST(Prior, ExactProbabilitiesOverSpectators) {
  const auto u = spectators(4);
  const Distribution d(u, {});
  const Formula e = exactly_n_minus_one(4);
  EXPECT_EQ(d.probability(e), Q(1, 4));
  EXPECT_EQ(d.probability(Formula::top()), 1);
  EXPECT_EQ(d.probability(Formula::bottom()), 0);
  EXPECT_EQ(d.conditional(F("g1"), std::vector<Formula>{e}), Q(3, 4));
  EXPECT_EQ(d.conditional(F("g2"), std::vector<Formula>{e, F("g1")}), Q(2, 3));
  EXPECT_EQ(d.conditional(e, std::vector<Formula>{e}), 1);
  EXPECT_THROW(d.conditional(F("g1"), std::vector<Formula>{F("g2 & !g2")}), ZeroConditionError);
}

TEST(Prior, ComplementAndMonotonicity) {
  const Universe base({"a", "b", "c"}, {F("a")}, 1, GuiltDef{"G", {F("a")}});
  const auto u = std::make_shared<const Universe>(base);
  const Distribution d(u, {{{F("a -> b"), Q(5, 2)}, {F("E(a) <-> c"), Q(1, 3)}, {F("N1(a)"), Q(7, 1)}}});
  for (const char* text : {"a", "a & b", "E(a) | c", "N1(a) -> b", "(a <-> c) & !b"}) {
    const Formula f = F(text);
    EXPECT_EQ(d.probability(f) + d.probability(Formula::negation(f)), 1) << text;
    EXPECT_LE(d.probability(Formula::conjunction(f, F("b"))), d.probability(f)) << text;
  }
}

TEST(Definedness, SuspendedPriorsAreUndefined) {
  const auto u = std::make_shared<const Universe>(std::vector<std::string>{"g1", "g5"},
                                                  std::vector<Formula>{F("g5")}, 0, GuiltDef{"G", {F("g1")}});
  const PartialCredence pc(Distribution(u, {}), PartialCredence::default_suspended(*u));
  const GuiltDef guilt{"G", {F("g1")}};
  EXPECT_FALSE(pc.is_defined(F("G"), {}));
  EXPECT_TRUE(pc.is_defined(F("G"), FormulaSet{guilt.definition()}));
  EXPECT_EQ(pc.credence(F("G"), FormulaSet{guilt.definition()}), StanceValue::defined(Q(1, 2)));
  EXPECT_TRUE(pc.is_defined(Formula::top(), {}));
  EXPECT_EQ(pc.credence(Formula::top(), {}), StanceValue::defined(Rational(1)));
  EXPECT_EQ(pc.credence(Formula::bottom(), FormulaSet{F("E(g5)")}), StanceValue::defined(Rational(0)));
  EXPECT_FALSE(pc.credence(F("E(g5)"), {}).is_defined());
  EXPECT_TRUE(pc.is_defined(F("E(g5)"), FormulaSet{F("E(g5)")}));
  EXPECT_TRUE(pc.is_defined(F("!E(g5)"), FormulaSet{F("E(g5) | g1")}));
  EXPECT_TRUE(pc.is_defined(F("g5"), {}));
}

TEST(Definedness, ZeroConjunctRescuesConjunction) {
  const auto u = std::make_shared<const Universe>(std::vector<std::string>{"a"}, std::vector<Formula>{F("a")}, 0,
                                                  GuiltDef{"G", {F("a")}});
  const PartialCredence pc(Distribution(u, {}), PartialCredence::default_suspended(*u));
  const FormulaSet gamma{F("!a")};
  EXPECT_FALSE(pc.is_defined(F("E(a)"), gamma));
  EXPECT_TRUE(pc.is_defined(F("a & E(a)"), gamma));
  EXPECT_EQ(pc.credence(F("a & E(a)"), gamma), StanceValue::defined(Rational(0)));
  EXPECT_FALSE(pc.is_defined(F("!a & E(a)"), gamma));
}

TEST(Definedness, ZeroMassConditionIsUndefined) {
  const auto u = spectators(1);
  const PartialCredence pc(Distribution(u, {}), {});
  const auto v = pc.credence(F("g1"), FormulaSet{F("g1 & !g1")});
  EXPECT_FALSE(v.is_defined());
  EXPECT_EQ(v.reason(), UndefinedReason::kZeroCondition);
  EXPECT_EQ(v.to_string(), "undefined(zero-condition)");
}

TEST(Thresholds, InvariantsEnforced) {
  EXPECT_TRUE(Thresholds{}.problems().empty());
  EXPECT_FALSE((Thresholds{Q(17, 20), Q(17, 20), Q(3, 20), Q(3, 20)}.problems().empty()));
  EXPECT_FALSE((Thresholds{Q(99, 100), Q(17, 20), Q(1, 10), Q(1, 100)}.problems().empty()));
  EXPECT_FALSE((Thresholds{Q(99, 100), Q(17, 20), Q(3, 20), Q(1, 50)}.problems().empty()));
  EXPECT_TRUE((Thresholds{Q(9, 10), Q(7, 10), Q(3, 10), Q(1, 10)}.problems().empty()));
}

TEST(Audit, ConstructiveModelIsClean) {
  const auto c = test_support::sample("alibi.json");
  const auto report = audit_case(c);
  EXPECT_TRUE(report.clean());
  for (const auto& [axiom, count] : report.checked) EXPECT_GT(count, 0u) << axiom;
}

TEST(Audit, SeededFaultsAreCaught) {
  const auto c = test_support::sample("alibi.json");
  EXPECT_GT(audit_case(c, DefinednessFault::kDropMembership).violations_of("Part-2"), 0u);
  EXPECT_GT(audit_case(c, DefinednessFault::kDropNegationSymmetry).violations_of("Part-3"), 0u);

  const auto u = std::make_shared<const Universe>(std::vector<std::string>{"a"}, std::vector<Formula>{F("a")}, 0,
                                                  GuiltDef{"G", {F("a")}});
  const PartialCredence guardless(Distribution(u, {}), PartialCredence::default_suspended(*u),
                                  DefinednessFault::kDropConjunctionGuard);
  const std::vector<AuditProbe> probes = {{F("a & E(a)"), "bare", {}}};
  EXPECT_GT(audit_axioms(guardless, probes).violations_of("Part-5"), 0u);
}

TEST(Audit, TopProbeHasValueOne) {
  const auto u = spectators(2);
  const PartialCredence pc(Distribution(u, {}), PartialCredence::default_suspended(*u));
  const std::vector<AuditProbe> probes = {{Formula::top(), "bare", {}}, {F("g1"), "g", FormulaSet{F("g2")}}};
  const auto report = audit_axioms(pc, probes);
  EXPECT_TRUE(report.clean());
  EXPECT_GT(report.checked.at("Part-1"), 0u);
}
