#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "brdkit/casefile.hpp"
#include "brdkit/evaluator.hpp"

namespace brdkit {

/// V1: bare accusation {g1}; V2: accusation {g1, e}; kBullet: accusation
/// {g1, e} plus every other spectator's guilt. All variants carry the
/// defense {!g1}.
enum class GatecrasherVariant : std::uint8_t { kV1, kV2, kBullet };
enum class GatecrasherMode : std::uint8_t { kEnumerate, kAnalytic };

std::string to_string(GatecrasherVariant variant);
std::optional<GatecrasherVariant> parse_gatecrasher_variant(std::string_view text);
std::string to_string(GatecrasherMode mode);
std::optional<GatecrasherMode> parse_gatecrasher_mode(std::string_view text);

struct GatecrasherSpec {
  static constexpr long long kMaxAnalytic = 1'000'000;

  long long n = 10;
  GatecrasherVariant variant = GatecrasherVariant::kV1;
  GatecrasherMode mode = GatecrasherMode::kEnumerate;
  Thresholds thresholds;
  /// Largest spectator count materialized as a case.
  int max_enumerated = 16;

  std::vector<std::string> problems() const;
};

/// "Exactly n-1 of g1..gn hold" as a disjunction of n conjunctions.
Formula exactly_n_minus_one(int n);

/// Throws PreconditionError for invalid specs and BoundError when n exceeds
/// the enumeration bound.
CaseModel generate_case(const GatecrasherSpec& spec);

enum class AnalyticQuery : std::uint8_t {
  /// P(g1 | e)
  kPosterior,
  /// P(e | g1)
  kLikelihood,
  /// P(gj | e & g1), j != 1
  kCross,
  /// P(e & g1 & ... & gn)
  kBulletMass,
};

std::string to_string(AnalyticQuery query);
std::optional<AnalyticQuery> parse_analytic_query(std::string_view text);
const std::vector<AnalyticQuery>& all_analytic_queries();

/// Closed form under the uniform prior; requires 2 <= n <= kMaxAnalytic.
Rational analytic_gatecrasher(long long n, AnalyticQuery query);

/// The same quantity computed through a generated case and the evaluator:
/// evidential P(g1), play-along P(e) for V1, f-extended P(g2) for V2, and
/// evidential P of the bullet narration.
Rational engine_gatecrasher(int n, AnalyticQuery query, const Thresholds& thresholds = {});

/// Smallest spectator count (at least 2) whose posterior (n-1)/n reaches s.
long long strategy_one_count(const Rational& s);

struct SuiteReport {
  long long n = 0;
  GatecrasherMode mode = GatecrasherMode::kEnumerate;
  Thresholds thresholds;

  /// Closed-form values for every query.
  std::vector<std::pair<AnalyticQuery, Rational>> analytic;

  long long strategy_one_n = 0;
  Rational strategy_one_posterior;

  /// Engine results; present in enumerate mode only.
  struct Engine {
    Rational posterior;
    Verdict3 v1_explains_evidence;
    Verdict3 v2_explains_evidence;
    Verdict3 v2_gap;
    std::vector<Formula> v2_commitment_violations;
    Narration v2_closure;
    bool v2_closure_is_bullet = false;
    Wellformedness bullet_wellformedness;
    Rational bullet_mass;
    std::vector<std::pair<GatecrasherVariant, Verdict3>> beyond_reasonable_doubt;
  };
  std::optional<Engine> engine;
};

SuiteReport run_gatecrasher_suite(long long n, const Thresholds& thresholds = {},
                            GatecrasherMode mode = GatecrasherMode::kEnumerate);

}  // namespace brdkit
