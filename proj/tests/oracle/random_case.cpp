#include "random_case.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using brdkit::Formula;
using brdkit::Rational;

namespace {

Rational q(long p, long d) { return brdkit::make_rational(p, d); }

struct Generator {
  std::mt19937_64 rng;

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
  bool coin(int percent = 50) { return static_cast<int>(below(100)) < percent; }
  template <class T>
  const T& pick(const std::vector<T>& xs) { return xs[below(xs.size())]; }

  Formula sentence(const std::vector<std::string>& atoms) {
    const Formula x = Formula::base(pick(atoms));
    switch (below(6)) {
      case 0: return Formula::negation(x);
      case 1: {
        const Formula y = Formula::base(pick(atoms));
        if (y == x) return x;
        return coin() ? Formula::conjunction(x, y) : Formula::disjunction(x, y);
      }
      default: return x;
    }
  }

  brdkit::CaseModel attempt(const RandomCaseOptions& options) {
    brdkit::CaseModel c;
    const std::vector<std::string> names = {"p", "q", "t", "u"};
    const std::size_t base = 2 + below(3);
    c.atoms.assign(names.begin(), names.begin() + static_cast<long>(base));

    std::size_t narrations = 2 + (coin(25) ? 1 : 0);
    const auto fitting = [&] {
      const std::size_t room = static_cast<std::size_t>(options.max_total_atoms) - c.atoms.size();
      return std::min<std::size_t>(3, room / (1 + narrations));
    };
    if (fitting() < 2) narrations = 2;
    while (fitting() < 2 && c.atoms.size() > 2) c.atoms.pop_back();
    const std::size_t max_sentences = fitting();
    if (max_sentences < 2) throw std::logic_error("atom bound too small");
    const std::size_t sentences = 2 + below(max_sentences - 1);
    while (c.universe.size() < sentences) {
      const Formula s = sentence(c.atoms);
      if (std::find(c.universe.begin(), c.universe.end(), s) == c.universe.end()) c.universe.push_back(s);
    }

    c.guilt.constant = "G";
    c.guilt.conjuncts.push_back(Formula::base(c.atoms[0]));
    if (coin(30)) c.guilt.conjuncts.push_back(Formula::base(c.atoms[1]));

    for (const auto& phi : c.universe) {
      if (coin(40)) c.evidence.push_back(phi);
    }

    // First narration accuses, second defends, an optional third is random.
    for (std::size_t i = 0; i < narrations; ++i) {
      brdkit::Narration n;
      n.id = "n" + std::to_string(i + 1);
      n.side = i == 0 ? brdkit::Side::kAccusing : i == 1 ? brdkit::Side::kDefending
                                                         : (coin() ? brdkit::Side::kAccusing : brdkit::Side::kDefending);
      for (const auto& phi : c.universe) {
        if (coin(45)) n.content.push_back(phi);
      }
      if (n.content.empty()) n.content.push_back(pick(c.universe));
      c.narrations.push_back(std::move(n));
    }

    // Couple labels with the facts they report so conditionals move.
    const std::vector<Rational> weights = {q(1, 3), q(1, 2), q(2, 1), q(3, 1), q(9, 1)};
    const std::size_t rules = below(4);
    for (std::size_t k = 0; k < rules; ++k) {
      const Formula phi = pick(c.universe);
      Formula rule;
      switch (below(4)) {
        case 0: rule = Formula::implication(Formula::evidence(phi), phi); break;
        case 1: rule = Formula::biconditional(Formula::narration(static_cast<int>(1 + below(narrations)), phi), phi); break;
        case 2: rule = Formula::biconditional(Formula::evidence(phi), phi); break;
        default: rule = sentence(c.atoms); break;
      }
      c.prior.reweight.emplace_back(rule, pick(weights));
    }

    if (coin(30)) c.suspended.push_back(pick(c.atoms));
    if (options.allow_unsuspended_labels && coin(15)) c.suspended.push_back("-E(*)");

    const std::vector<brdkit::Thresholds> thresholds = {
        {q(99, 100), q(17, 20), q(3, 20), q(1, 100)},
        {q(9, 10), q(7, 10), q(3, 10), q(1, 10)},
        {q(9, 10), q(3, 5), q(2, 5), q(1, 10)},
        {q(19, 20), q(4, 5), q(1, 5), q(1, 20)},
    };
    c.thresholds = pick(thresholds);
    c.search.max_disjunction = 1 + static_cast<int>(below(2));
    c.search.gap_mode = coin() ? brdkit::GapMode::kDirect : brdkit::GapMode::kCommitment;
    c.search.commitment_variant = coin() ? brdkit::CommitmentVariant::kEvidential : brdkit::CommitmentVariant::kFExtended;
    c.search.max_relevant_set = 1 + static_cast<int>(below(2));
    c.search.relevance_background = coin(75) ? brdkit::RelevanceBackground::kEvidential : brdkit::RelevanceBackground::kFull;
    c.search.strict = coin(25);
    return c;
  }
};

}  // namespace

brdkit::CaseModel random_case(std::uint64_t seed, const RandomCaseOptions& options) {
  Generator g{std::mt19937_64(seed)};
  for (int tries = 0; tries < 1000; ++tries) {
    brdkit::CaseModel c = g.attempt(options);
    if (!brdkit::validate_case(c).has_errors()) return c;
  }
  throw std::runtime_error("random_case: no valid case after 1000 attempts");
}

}  // namespace oracle
