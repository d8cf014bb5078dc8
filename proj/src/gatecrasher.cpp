#include "brdkit/gatecrasher.hpp"

#include <algorithm>

#include "brdkit/error.hpp"

namespace brdkit {

std::string to_string(GatecrasherVariant variant) {
  switch (variant) {
    case GatecrasherVariant::kV1: return "v1";
    case GatecrasherVariant::kV2: return "v2";
    default: return "bullet";
  }
}

std::optional<GatecrasherVariant> parse_gatecrasher_variant(std::string_view text) {
  if (text == "v1") return GatecrasherVariant::kV1;
  if (text == "v2") return GatecrasherVariant::kV2;
  if (text == "bullet") return GatecrasherVariant::kBullet;
  return std::nullopt;
}

std::string to_string(GatecrasherMode mode) { return mode == GatecrasherMode::kEnumerate ? "enumerate" : "analytic"; }

std::optional<GatecrasherMode> parse_gatecrasher_mode(std::string_view text) {
  if (text == "enumerate") return GatecrasherMode::kEnumerate;
  if (text == "analytic") return GatecrasherMode::kAnalytic;
  return std::nullopt;
}

std::vector<std::string> GatecrasherSpec::problems() const {
  std::vector<std::string> out = thresholds.problems();
  if (n < 2) out.push_back("spectator count must be at least 2");
  if (mode == GatecrasherMode::kAnalytic && n > kMaxAnalytic) {
    out.push_back("analytic mode supports at most " + std::to_string(kMaxAnalytic) + " spectators");
  }
  return out;
}

namespace {

Formula spectator(long long k) { return Formula::base("g" + std::to_string(k)); }

}  // namespace

Formula exactly_n_minus_one(int n) {
  std::vector<Formula> cases;
  for (int innocent = 1; innocent <= n; ++innocent) {
    std::vector<Formula> parts;
    for (int k = 1; k <= n; ++k) parts.push_back(k == innocent ? Formula::negation(spectator(k)) : spectator(k));
    cases.push_back(Formula::all_of(parts));
  }
  return Formula::any_of(cases);
}

CaseModel generate_case(const GatecrasherSpec& spec) {
  const auto problems = spec.problems();
  if (!problems.empty()) throw PreconditionError("invalid gatecrasher spec: " + problems.front());
  if (spec.n > spec.max_enumerated) {
    throw BoundError("gatecrasher with " + std::to_string(spec.n) + " spectators exceeds the enumeration bound of " +
                     std::to_string(spec.max_enumerated));
  }
  const int n = static_cast<int>(spec.n);
  CaseModel c;
  c.suspended = {"G", "E(*)", "N(*)"};
  for (int k = 1; k <= n; ++k) {
    c.atoms.push_back("g" + std::to_string(k));
    c.suspended.push_back("g" + std::to_string(k));
  }
  c.guilt.constant = "G";
  c.guilt.conjuncts = {spectator(1)};
  const Formula e = exactly_n_minus_one(n);
  c.universe.push_back(e);
  for (int k = 1; k <= n; ++k) c.universe.push_back(spectator(k));
  c.evidence = {e};

  Narration accusing{"accusation", Side::kAccusing, {spectator(1)}};
  if (spec.variant != GatecrasherVariant::kV1) accusing.content.push_back(e);
  if (spec.variant == GatecrasherVariant::kBullet) {
    for (int k = 2; k <= n; ++k) accusing.content.push_back(spectator(k));
  }
  c.narrations.push_back(std::move(accusing));
  c.narrations.push_back({"defense", Side::kDefending, {Formula::negation(spectator(1))}});

  c.thresholds = spec.thresholds;
  c.search.gap_mode = GapMode::kCommitment;
  c.search.commitment_variant = CommitmentVariant::kEvidential;
  return c;
}

std::string to_string(AnalyticQuery query) {
  switch (query) {
    case AnalyticQuery::kPosterior: return "posterior";
    case AnalyticQuery::kLikelihood: return "likelihood";
    case AnalyticQuery::kCross: return "cross";
    default: return "bullet-mass";
  }
}

std::optional<AnalyticQuery> parse_analytic_query(std::string_view text) {
  for (auto q : all_analytic_queries()) {
    if (to_string(q) == text) return q;
  }
  return std::nullopt;
}

const std::vector<AnalyticQuery>& all_analytic_queries() {
  static const std::vector<AnalyticQuery> all = {AnalyticQuery::kPosterior, AnalyticQuery::kLikelihood,
                                                 AnalyticQuery::kCross, AnalyticQuery::kBulletMass};
  return all;
}

Rational analytic_gatecrasher(long long n, AnalyticQuery query) {
  if (n < 2 || n > GatecrasherSpec::kMaxAnalytic) {
    throw PreconditionError("spectator count must be in 2.." + std::to_string(GatecrasherSpec::kMaxAnalytic));
  }
  switch (query) {
    case AnalyticQuery::kPosterior: {
      Rational r(BigInt(static_cast<long>(n - 1)), BigInt(static_cast<long>(n)));
      r.canonicalize();
      return r;
    }
    case AnalyticQuery::kLikelihood: {
      BigInt den;
      mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(n - 1));
      Rational r(BigInt(static_cast<long>(n - 1)), den);
      r.canonicalize();
      return r;
    }
    case AnalyticQuery::kCross: {
      Rational r(BigInt(static_cast<long>(n - 2)), BigInt(static_cast<long>(n - 1)));
      r.canonicalize();
      return r;
    }
    case AnalyticQuery::kBulletMass: return Rational(0);
  }
  throw PreconditionError("unknown analytic query");
}

namespace {

Rational defined_value(const StanceValue& v, const std::string& what) {
  if (!v.is_defined()) throw PreconditionError(what + " is undefined");
  return v.value();
}

}  // namespace

Rational engine_gatecrasher(int n, AnalyticQuery query, const Thresholds& thresholds) {
  GatecrasherSpec spec;
  spec.n = n;
  spec.thresholds = thresholds;
  const Formula e = exactly_n_minus_one(n);
  switch (query) {
    case AnalyticQuery::kPosterior: {
      const Evaluator ev(generate_case(spec));
      return defined_value(ev.p_variant(BundleTag::kEvidential, spectator(1)), "evidential P(g1)");
    }
    case AnalyticQuery::kLikelihood: {
      const Evaluator ev(generate_case(spec));
      return defined_value(ev.p_variant(BundleTag::kPlayAlong, e, {}, 0), "play-along P(e)");
    }
    case AnalyticQuery::kCross: {
      spec.variant = GatecrasherVariant::kV2;
      const Evaluator ev(generate_case(spec));
      return defined_value(ev.p_variant(BundleTag::kFExtended, spectator(2), {}, 0), "f-extended P(g2)");
    }
    case AnalyticQuery::kBulletMass: {
      spec.variant = GatecrasherVariant::kBullet;
      const Evaluator ev(generate_case(spec));
      return defined_value(ev.p_variant(BundleTag::kEvidential, ev.model().narrations[0].conjunction()),
                           "evidential P(bullet narration)");
    }
  }
  throw PreconditionError("unknown analytic query");
}

long long strategy_one_count(const Rational& s) {
  if (!(s < 1)) throw PreconditionError("threshold s must be below 1");
  // (n-1)/n >= s  <=>  n >= 1/(1-s)
  const Rational bound = 1 / (1 - s);
  BigInt ceil;
  mpz_cdiv_q(ceil.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  return std::max(2L, ceil.get_si());
}

SuiteReport run_gatecrasher_suite(long long n, const Thresholds& thresholds, GatecrasherMode mode) {
  GatecrasherSpec spec;
  spec.n = n;
  spec.mode = mode;
  spec.thresholds = thresholds;
  const auto problems = spec.problems();
  if (!problems.empty()) throw PreconditionError("invalid gatecrasher spec: " + problems.front());

  SuiteReport report;
  report.n = n;
  report.mode = mode;
  report.thresholds = thresholds;
  for (auto q : all_analytic_queries()) report.analytic.emplace_back(q, analytic_gatecrasher(n, q));
  report.strategy_one_n = strategy_one_count(thresholds.s);
  report.strategy_one_posterior = analytic_gatecrasher(report.strategy_one_n, AnalyticQuery::kPosterior);
  if (mode == GatecrasherMode::kAnalytic) return report;

  SuiteReport::Engine engine;
  spec.variant = GatecrasherVariant::kV1;
  const Evaluator v1(generate_case(spec));
  spec.variant = GatecrasherVariant::kV2;
  const Evaluator v2(generate_case(spec));
  spec.variant = GatecrasherVariant::kBullet;
  const Evaluator bullet(generate_case(spec));

  engine.posterior = defined_value(v1.p_variant(BundleTag::kEvidential, spectator(1)), "evidential P(g1)");
  engine.v1_explains_evidence = v1.explains_evidence_accusing(0);
  engine.v2_explains_evidence = v2.explains_evidence_accusing(0);
  engine.v2_gap = v2.gap(0, GapMode::kCommitment);
  engine.v2_commitment_violations = v2.commitment_violations(0);
  engine.v2_closure = v2.commitment_closure(0);
  engine.v2_closure_is_bullet =
      FormulaSet(std::span<const Formula>(engine.v2_closure.content))
          .same_members(FormulaSet(std::span<const Formula>(bullet.model().narrations[0].content)));
  engine.bullet_wellformedness = bullet.wellformedness();
  engine.bullet_mass = defined_value(bullet.p_variant(BundleTag::kEvidential, bullet.model().narrations[0].conjunction()),
                                     "evidential P(bullet narration)");
  engine.beyond_reasonable_doubt.emplace_back(GatecrasherVariant::kV1, v1.evaluate().beyond_reasonable_doubt);
  engine.beyond_reasonable_doubt.emplace_back(GatecrasherVariant::kV2, v2.evaluate().beyond_reasonable_doubt);
  engine.beyond_reasonable_doubt.emplace_back(GatecrasherVariant::kBullet, bullet.evaluate().beyond_reasonable_doubt);
  report.engine = std::move(engine);
  return report;
}

}  // namespace brdkit
