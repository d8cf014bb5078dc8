#include <gtest/gtest.h>

#include <algorithm>

#include "brdkit/evaluator.hpp"
#include "brdkit/gatecrasher.hpp"
#include "oracle/oracle.hpp"
#include "oracle/random_case.hpp"
#include "support.hpp"

using namespace brdkit;
using test_support::F;

namespace {

// Seeds disjoint from the acceptance run.
constexpr std::uint64_t kFirstSeed = 5000;

bool subset_of(const std::vector<Formula>& xs, const std::vector<Formula>& ys) {
  return std::all_of(xs.begin(), xs.end(), [&](const Formula& x) { return std::find(ys.begin(), ys.end(), x) != ys.end(); });
}

}  // namespace

TEST(Property, RandomCasesMatchTheOracle) {
  for (std::uint64_t seed = kFirstSeed; seed < kFirstSeed + 12; ++seed) {
    const CaseModel c = oracle::random_case(seed);
    const auto diff = oracle::mismatches(c);
    EXPECT_TRUE(diff.empty()) << "seed " << seed << ": " << diff.size() << " mismatches, first: " << diff.front()
                              << "\n" << to_document(c);
  }
}

TEST(Property, SamplesMatchTheOracle) {
  for (const char* name : {"alibi.json", "drunk_driving.json", "open_and_shut.json", "two_accusers.json"}) {
    const auto diff = oracle::mismatches(test_support::sample(name));
    EXPECT_TRUE(diff.empty()) << name << ": " << (diff.empty() ? "" : diff.front());
  }
}

TEST(Property, OracleAgreesOnSmallGatecrasher) {
  for (auto variant : {GatecrasherVariant::kV1, GatecrasherVariant::kV2}) {
    GatecrasherSpec spec;
    spec.n = 3;
    spec.variant = variant;
    const auto diff = oracle::mismatches(generate_case(spec));
    EXPECT_TRUE(diff.empty()) << to_string(variant) << ": " << (diff.empty() ? "" : diff.front());
  }
}

TEST(Property, AuditIsCleanOnRandomCases) {
  oracle::RandomCaseOptions options;
  options.max_total_atoms = 10;
  options.allow_unsuspended_labels = false;
  for (std::uint64_t seed = kFirstSeed; seed < kFirstSeed + 15; ++seed) {
    const auto report = audit_case(oracle::random_case(seed, options));
    EXPECT_TRUE(report.clean()) << "seed " << seed << ": " << report.violations.front().axiom << " "
                                << report.violations.front().formula;
  }
}

TEST(Property, ProbabilityOfComplementsSumsToOne) {
  for (std::uint64_t seed = kFirstSeed; seed < kFirstSeed + 10; ++seed) {
    const CaseModel c = oracle::random_case(seed);
    const auto pc = build_credence(c);
    const auto& d = pc.distribution();
    for (const auto& phi : c.universe) {
      EXPECT_EQ(d.probability(phi) + d.probability(Formula::negation(phi)), 1);
      EXPECT_EQ(d.probability(Formula::evidence(phi)) + d.probability(Formula::negation(Formula::evidence(phi))), 1);
    }
  }
}

TEST(Property, DominationOnlyForMaximalNarrations) {
  std::vector<CaseModel> cases = {test_support::sample("two_accusers.json")};
  for (std::uint64_t seed = kFirstSeed; seed < kFirstSeed + 40; ++seed) {
    CaseModel c = oracle::random_case(seed);
    if (c.narrations.size() == 3) c.narrations[2].side = Side::kAccusing;
    c.narrations[1].side = Side::kAccusing;
    if (!validate_case(c).has_errors()) cases.push_back(c);
  }
  for (const auto& c : cases) {
    const Evaluator ev(c);
    for (std::size_t i = 0; i < c.narrations.size(); ++i) {
      if (ev.dominates(i).status != Status::kPass) continue;
      const auto own = ev.p_variant(BundleTag::kFull, c.narrations[i].conjunction());
      ASSERT_TRUE(own.is_defined());
      for (std::size_t j = 0; j < c.narrations.size(); ++j) {
        const auto other = ev.p_variant(BundleTag::kFull, c.narrations[j].conjunction());
        if (other.is_defined()) EXPECT_GE(own.value(), other.value());
      }
    }
  }
}

TEST(Property, ResiliencyAntiMonotoneInCandidates) {
  CaseModel narrow = test_support::sample("alibi.json");
  narrow.universe = {F("eyewitness")};
  narrow.suspended.clear();
  const CaseModel wide = test_support::sample("alibi.json");
  EXPECT_EQ(Evaluator(narrow).resilient(0).status, Status::kPass);
  EXPECT_EQ(Evaluator(wide).resilient(0).status, Status::kFail);

  // Adding a candidate never rescues a failing narration.
  CaseModel wider = wide;
  wider.atoms.push_back("weather");
  wider.universe.push_back(F("weather"));
  wider.suspended.push_back("-E(weather)");
  ASSERT_EQ(Evaluator(wider).dominates(0).status, Status::kPass);
  EXPECT_EQ(Evaluator(wider).resilient(0).status, Status::kFail);
}

TEST(Property, CommitmentClosureIsAClosureOperator) {
  std::vector<std::pair<CaseModel, std::size_t>> cases;
  for (int n : {3, 4, 6}) {
    GatecrasherSpec spec;
    spec.n = n;
    spec.variant = GatecrasherVariant::kV2;
    cases.emplace_back(generate_case(spec), 0);
  }
  for (std::uint64_t seed = kFirstSeed; seed < kFirstSeed + 15; ++seed) cases.emplace_back(oracle::random_case(seed), 0);

  for (const auto& [c, i] : cases) {
    const Narration closed = Evaluator(c).commitment_closure(i);
    EXPECT_TRUE(subset_of(c.narrations[i].content, closed.content));  // extensive
    const CaseModel again = with_narration_content(c, i, closed.content);
    EXPECT_EQ(Evaluator(again).commitment_closure(i).content, closed.content);  // idempotent
    // Monotone: growing the content by a sentence keeps the closure growing.
    for (const auto& phi : c.universe) {
      if (c.narrations[i].contains(phi)) continue;
      auto grown = c.narrations[i].content;
      grown.push_back(phi);
      const CaseModel bigger = with_narration_content(c, i, grown);
      if (validate_case(bigger).has_errors()) continue;
      EXPECT_TRUE(subset_of(closed.content, Evaluator(bigger).commitment_closure(i).content))
          << to_document(c) << " + " << phi.key();
    }
  }
}

TEST(Property, SearchWitnessesAreStable) {
  for (std::uint64_t seed = kFirstSeed; seed < kFirstSeed + 10; ++seed) {
    const CaseModel c = oracle::random_case(seed);
    const Evaluator a(c), b(c);
    for (std::size_t i = 0; i < c.narrations.size(); ++i) {
      EXPECT_TRUE(oracle::project(a.gap(i)) == oracle::project(b.gap(i)));
      EXPECT_TRUE(oracle::project(a.missing_evidence(i)) == oracle::project(b.missing_evidence(i)));
    }
  }
}

TEST(Property, DecidedVerdictsCiteDefinedValues) {
  for (std::uint64_t seed = kFirstSeed; seed < kFirstSeed + 12; ++seed) {
    const auto report = Evaluator(oracle::random_case(seed)).evaluate();
    for (const auto& n : report.narrations) {
      for (const auto& [name, v] : n.criteria) {
        if (v.status == Status::kUndetermined) continue;
        ASSERT_FALSE(v.witnesses.empty()) << name;
        const auto& w = v.witnesses.front();
        if (w.value) EXPECT_TRUE(w.value->is_defined()) << "seed " << seed << " " << n.id << " " << name;
      }
    }
  }
}
