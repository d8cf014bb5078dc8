#include "brdkit/report.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

namespace brdkit {

using ojson = nlohmann::ordered_json;

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "text") return ReportFormat::kText;
  if (text == "json") return ReportFormat::kJson;
  return std::nullopt;
}

namespace {

constexpr std::size_t kTextWitnessLimit = 4;

ojson formulas_json(const std::vector<Formula>& fs) {
  ojson out = ojson::array();
  for (const auto& f : fs) out.push_back(f.key());
  return out;
}

ojson witness_json(const Witness& w) {
  ojson out;
  out["formulas"] = formulas_json(w.formulas);
  out["query"] = w.query;
  out["value"] = w.value ? ojson(w.value->to_string()) : ojson(nullptr);
  out["bundle"] = w.bundle;
  out["note"] = w.note;
  return out;
}

ojson verdict_json(const Verdict3& v) {
  ojson out;
  out["status"] = to_string(v.status);
  out["witnesses"] = ojson::array();
  for (const auto& w : v.witnesses) out["witnesses"].push_back(witness_json(w));
  out["unresolved"] = ojson::array();
  for (const auto& w : v.unresolved) out["unresolved"].push_back(witness_json(w));
  return out;
}

ojson thresholds_json(const Thresholds& t) {
  return {{"a", to_string(t.a)}, {"s", to_string(t.s)}, {"r", to_string(t.r)}, {"n", to_string(t.n)}};
}

ojson search_json(const SearchConfig& s) {
  return {{"max_disjunction", s.max_disjunction},
          {"gap_mode", to_string(s.gap_mode)},
          {"commitment_variant", to_string(s.commitment_variant)},
          {"max_relevant_set", s.max_relevant_set},
          {"relevance_background", to_string(s.relevance_background)},
          {"strict", s.strict}};
}

ojson wellformedness_json(const Wellformedness& w) {
  return {{"exclusion", verdict_json(w.exclusion)},
          {"decision", verdict_json(w.decision)},
          {"initial_plausibility", verdict_json(w.initial_plausibility)},
          {"exhaustion", verdict_json(w.exhaustion)}};
}

ojson narration_json(const Narration& n) {
  return {{"id", n.id}, {"side", to_string(n.side)}, {"content", formulas_json(n.content)}};
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

std::string render_set(const std::vector<Formula>& fs) {
  std::string out = "{";
  for (std::size_t i = 0; i < fs.size(); ++i) out += (i ? ", " : "") + fs[i].key();
  return out + "}";
}

std::string witness_text(const Witness& w) {
  std::string out;
  if (!w.query.empty()) {
    out += "P(" + w.query + ")";
    if (!w.bundle.empty()) out += " [" + w.bundle + "]";
    if (w.value) out += " = " + w.value->to_string();
  }
  if (!w.note.empty()) out += (out.empty() ? "" : "; ") + w.note;
  return out;
}

void verdict_text(std::ostringstream& os, const std::string& indent, const std::string& name, const Verdict3& v) {
  os << indent << name << ": " << to_string(v.status) << "\n";
  const std::size_t shown = std::min(v.witnesses.size(), kTextWitnessLimit);
  for (std::size_t i = 0; i < shown; ++i) os << indent << "  - " << witness_text(v.witnesses[i]) << "\n";
  if (v.witnesses.size() > shown) os << indent << "  (+" << v.witnesses.size() - shown << " more)\n";
  if (!v.unresolved.empty()) os << indent << "  undefined queries: " << v.unresolved.size() << "\n";
}

void thresholds_text(std::ostringstream& os, const Thresholds& t) {
  os << "thresholds: a=" << to_string(t.a) << " s=" << to_string(t.s) << " r=" << to_string(t.r)
     << " n=" << to_string(t.n) << "\n";
}

}  // namespace

std::string format_report(const EvaluationReport& report, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    ojson root;
    root["thresholds"] = thresholds_json(report.thresholds);
    root["search"] = search_json(report.search);
    root["wellformedness"] = wellformedness_json(report.wellformedness);
    root["narrations"] = ojson::array();
    for (const auto& n : report.narrations) {
      ojson entry;
      entry["id"] = n.id;
      entry["side"] = to_string(n.side);
      entry["criteria"] = ojson::object();
      for (const auto& [name, v] : n.criteria) entry["criteria"][name] = verdict_json(v);
      root["narrations"].push_back(entry);
    }
    root["beyond_reasonable_doubt"] = verdict_json(report.beyond_reasonable_doubt);
    return dump(root);
  }
  std::ostringstream os;
  thresholds_text(os, report.thresholds);
  const auto& s = report.search;
  os << "search: max_disjunction=" << s.max_disjunction << " gap_mode=" << to_string(s.gap_mode)
     << " commitment_variant=" << to_string(s.commitment_variant) << " max_relevant_set=" << s.max_relevant_set
     << (s.strict ? " strict" : "") << "\n";
  os << "wellformedness:\n";
  verdict_text(os, "  ", "exclusion", report.wellformedness.exclusion);
  verdict_text(os, "  ", "decision", report.wellformedness.decision);
  verdict_text(os, "  ", "initial_plausibility", report.wellformedness.initial_plausibility);
  verdict_text(os, "  ", "exhaustion", report.wellformedness.exhaustion);
  for (const auto& n : report.narrations) {
    os << "narration " << n.id << " (" << to_string(n.side) << "):\n";
    for (const auto& [name, v] : n.criteria) verdict_text(os, "  ", name, v);
  }
  verdict_text(os, "", "beyond_reasonable_doubt", report.beyond_reasonable_doubt);
  return os.str();
}

std::string format_report(const SuiteReport& report, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    ojson root;
    root["n"] = report.n;
    root["mode"] = to_string(report.mode);
    root["thresholds"] = thresholds_json(report.thresholds);
    root["analytic"] = ojson::object();
    for (const auto& [q, v] : report.analytic) root["analytic"][to_string(q)] = to_string(v);
    root["strategy_one"] = {{"n", report.strategy_one_n}, {"posterior", to_string(report.strategy_one_posterior)}};
    if (report.engine) {
      const auto& e = *report.engine;
      ojson engine;
      engine["posterior"] = to_string(e.posterior);
      engine["v1_explains_evidence"] = verdict_json(e.v1_explains_evidence);
      engine["v2_explains_evidence"] = verdict_json(e.v2_explains_evidence);
      engine["v2_gap"] = verdict_json(e.v2_gap);
      engine["v2_commitment_violations"] = formulas_json(e.v2_commitment_violations);
      engine["v2_closure"] = narration_json(e.v2_closure);
      engine["v2_closure_is_bullet"] = e.v2_closure_is_bullet;
      engine["bullet_wellformedness"] = wellformedness_json(e.bullet_wellformedness);
      engine["bullet_mass"] = to_string(e.bullet_mass);
      engine["beyond_reasonable_doubt"] = ojson::object();
      for (const auto& [variant, v] : e.beyond_reasonable_doubt) {
        engine["beyond_reasonable_doubt"][to_string(variant)] = verdict_json(v);
      }
      root["engine"] = engine;
    } else {
      root["engine"] = nullptr;
    }
    return dump(root);
  }
  std::ostringstream os;
  os << "gatecrasher suite: n=" << report.n << " mode=" << to_string(report.mode) << "\n";
  thresholds_text(os, report.thresholds);
  os << "analytic:\n";
  for (const auto& [q, v] : report.analytic) os << "  " << to_string(q) << ": " << to_string(v) << "\n";
  os << "extreme thresholds: n'=" << report.strategy_one_n << " gives posterior "
     << to_string(report.strategy_one_posterior) << " >= s\n";
  if (report.engine) {
    const auto& e = *report.engine;
    os << "engine posterior: " << to_string(e.posterior) << "\n";
    verdict_text(os, "", "v1 explains_evidence", e.v1_explains_evidence);
    verdict_text(os, "", "v2 explains_evidence", e.v2_explains_evidence);
    verdict_text(os, "", "v2 gap (commitment)", e.v2_gap);
    os << "v2 commitment violations: " << render_set(e.v2_commitment_violations) << "\n";
    os << "v2 commitment closure: " << render_set(e.v2_closure.content)
       << (e.v2_closure_is_bullet ? " (bullet narration)" : "") << "\n";
    verdict_text(os, "", "bullet initial_plausibility", e.bullet_wellformedness.initial_plausibility);
    os << "bullet mass: " << to_string(e.bullet_mass) << "\n";
    for (const auto& [variant, v] : e.beyond_reasonable_doubt) {
      verdict_text(os, "", to_string(variant) + " beyond_reasonable_doubt", v);
    }
  }
  return os.str();
}

std::string format_report(const AuditReport& report, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    ojson root;
    root["clean"] = report.clean();
    root["checked"] = ojson::object();
    for (const auto& [axiom, count] : report.checked) root["checked"][axiom] = count;
    root["violations"] = ojson::array();
    for (const auto& v : report.violations) {
      root["violations"].push_back({{"axiom", v.axiom}, {"context", v.context}, {"formula", v.formula}, {"detail", v.detail}});
    }
    return dump(root);
  }
  std::ostringstream os;
  os << "axiom audit: " << (report.clean() ? "CLEAN" : "VIOLATIONS") << "\n";
  for (const auto& [axiom, count] : report.checked) {
    os << "  " << axiom << ": " << count << " checked, " << report.violations_of(axiom) << " violated\n";
  }
  for (const auto& v : report.violations) {
    os << "  - " << v.axiom << " [" << v.context << "] " << v.formula << ": " << v.detail << "\n";
  }
  return os.str();
}

std::string format_diagnostics(const Diagnostics& diagnostics, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    ojson root;
    root["valid"] = !diagnostics.has_errors();
    root["diagnostics"] = ojson::array();
    for (const auto& d : diagnostics.items) {
      root["diagnostics"].push_back({{"severity", d.severity == Diagnostic::Severity::kError ? "error" : "warning"},
                                     {"code", d.code},
                                     {"message", d.message}});
    }
    return dump(root);
  }
  std::ostringstream os;
  os << (diagnostics.has_errors() ? "invalid" : "valid") << "\n";
  for (const auto& d : diagnostics.items) {
    os << (d.severity == Diagnostic::Severity::kError ? "error" : "warning") << " [" << d.code << "] " << d.message
       << "\n";
  }
  return os.str();
}

std::string format_verdicts(const std::vector<std::pair<std::string, Verdict3>>& verdicts, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    ojson root = ojson::object();
    for (const auto& [name, v] : verdicts) root[name] = verdict_json(v);
    return dump(root);
  }
  std::ostringstream os;
  for (const auto& [name, v] : verdicts) verdict_text(os, "", name, v);
  return os.str();
}

std::string format_report(const ClosureReport& report, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    ojson root;
    root["original"] = narration_json(report.original);
    root["closed"] = narration_json(report.closed);
    root["initial_violations"] = formulas_json(report.initial_violations);
    root["minimal_relevant_sets"] = ojson::array();
    for (const auto& s : report.relevance.minimal_sets) {
      root["minimal_relevant_sets"].push_back({{"members", formulas_json(s.members)},
                                               {"narration", s.narration},
                                               {"before", to_string(s.before)},
                                               {"after", to_string(s.after)}});
    }
    root["relevant"] = formulas_json(report.relevance.sentences);
    return dump(root);
  }
  std::ostringstream os;
  os << "narration " << report.original.id << ": " << render_set(report.original.content) << "\n";
  os << "relevant sentences: " << render_set(report.relevance.sentences) << "\n";
  os << "commitment violations: " << render_set(report.initial_violations) << "\n";
  os << "closed narration: " << render_set(report.closed.content) << "\n";
  return os.str();
}

}  // namespace brdkit
