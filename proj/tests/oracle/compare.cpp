#include "brdkit/evaluator.hpp"
#include "oracle.hpp"

namespace oracle {

namespace {

std::string render(const std::vector<Formula>& fs) {
  std::string out = "{";
  for (std::size_t i = 0; i < fs.size(); ++i) out += (i ? ", " : "") + fs[i].key();
  return out + "}";
}

}  // namespace

std::vector<std::string> mismatches(const brdkit::CaseModel& c) {
  using brdkit::Side;
  std::vector<std::string> out;
  const brdkit::Evaluator ev(c);
  const BruteForce bf(c);

  for (const auto& probe : brdkit::audit_probes(c)) {
    const std::string lib = ev.credence().credence(probe.formula, probe.gamma).to_string();
    const std::string ref = bf.credence(probe.formula, probe.gamma.items()).str();
    if (lib != ref) out.push_back("P(" + probe.formula.key() + ") [" + probe.context + "]: " + lib + " vs " + ref);
  }

  auto check = [&](const std::string& what, const brdkit::Verdict3& lib, const Outcome& ref) {
    const Outcome got = project(lib);
    if (!(got == ref)) out.push_back(what + ": " + describe(got) + " vs " + describe(ref));
  };
  const auto w = ev.wellformedness();
  check("exclusion", w.exclusion, bf.exclusion());
  check("decision", w.decision, bf.decision());
  check("initial_plausibility", w.initial_plausibility, bf.initial_plausibility());
  check("exhaustion", w.exhaustion, bf.exhaustion());
  for (std::size_t i = 0; i < c.narrations.size(); ++i) {
    const std::string id = c.narrations[i].id + " ";
    check(id + "explains_evidence", ev.explains_evidence(i), bf.explains_evidence(i));
    check(id + "gap", ev.gap(i), bf.gap(i));
    if (c.narrations[i].side == Side::kAccusing) {
      check(id + "missing_evidence", ev.missing_evidence(i), bf.missing_evidence(i));
      const auto d = ev.dominates(i);
      check(id + "dominates", d, bf.dominates(i));
      if (d.status == brdkit::Status::kPass) check(id + "resilient", ev.resilient(i), bf.resilient(i));
      const auto lib = ev.commitment_violations(i);
      const auto ref = bf.commitment_violations(i);
      if (lib != ref) out.push_back(id + "commitment_violations: " + render(lib) + " vs " + render(ref));
    } else {
      check(id + "reasonable_doubt", ev.reasonable_doubt(i), bf.reasonable_doubt(i));
    }
  }
  check("beyond_reasonable_doubt", ev.evaluate().beyond_reasonable_doubt, bf.beyond_reasonable_doubt());
  const auto lib = ev.relevance().sentences;
  const auto ref = bf.relevant_sentences();
  if (lib != ref) out.push_back("relevant_sentences: " + render(lib) + " vs " + render(ref));
  return out;
}

}  // namespace oracle
