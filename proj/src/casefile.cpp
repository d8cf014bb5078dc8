#include "brdkit/casefile.hpp"

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>
#include <regex>

#include "brdkit/error.hpp"

namespace brdkit {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------- enums

namespace {

struct TagName {
  BundleTag tag;
  const char* name;
};

constexpr TagName kTagNames[] = {
    {BundleTag::kFull, "full"},
    {BundleTag::kNFull, "n-full"},
    {BundleTag::kInformed, "informed"},
    {BundleTag::kEvidential, "evidential"},
    {BundleTag::kArgued, "argued"},
    {BundleTag::kPlayAlong, "play-along"},
    {BundleTag::kNExtended, "n-extended"},
    {BundleTag::kEExtended, "e-extended"},
    {BundleTag::kFExtended, "f-extended"},
};

}  // namespace

bool needs_narration(BundleTag tag) {
  return tag == BundleTag::kPlayAlong || tag == BundleTag::kNExtended || tag == BundleTag::kEExtended ||
         tag == BundleTag::kFExtended;
}

std::string to_string(BundleTag tag) {
  for (const auto& t : kTagNames) {
    if (t.tag == tag) return t.name;
  }
  return "unknown";
}

std::optional<BundleTag> parse_bundle_tag(std::string_view text) {
  for (const auto& t : kTagNames) {
    if (text == t.name) return t.tag;
  }
  return std::nullopt;
}

std::string to_string(Side side) { return side == Side::kAccusing ? "accusing" : "defending"; }
std::string to_string(GapMode mode) { return mode == GapMode::kDirect ? "direct" : "commitment"; }
std::string to_string(CommitmentVariant variant) {
  return variant == CommitmentVariant::kEvidential ? "evidential" : "f-extended";
}
std::string to_string(RelevanceBackground background) {
  return background == RelevanceBackground::kEvidential ? "evidential" : "full";
}

// ---------------------------------------------------------------- model helpers

bool Narration::contains(const Formula& f) const { return std::find(content.begin(), content.end(), f) != content.end(); }

ParseContext CaseModel::parse_context() const {
  ParseContext ctx;
  ctx.guilt_constant = guilt.constant;
  ctx.narration_count = static_cast<int>(narrations.size());
  ctx.atoms = std::set<std::string>(atoms.begin(), atoms.end());
  return ctx;
}

std::optional<std::size_t> CaseModel::narration_index(std::string_view id) const {
  for (std::size_t i = 0; i < narrations.size(); ++i) {
    if (narrations[i].id == id) return i;
  }
  return std::nullopt;
}

bool CaseModel::in_universe(const Formula& f) const { return std::find(universe.begin(), universe.end(), f) != universe.end(); }

bool CaseModel::is_evidence(const Formula& f) const { return std::find(evidence.begin(), evidence.end(), f) != evidence.end(); }

std::vector<Formula> CaseModel::non_evidence() const {
  std::vector<Formula> out;
  for (const auto& phi : universe) {
    if (!is_evidence(phi)) out.push_back(phi);
  }
  return out;
}

bool Diagnostics::has_errors() const {
  return std::any_of(items.begin(), items.end(), [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::kError; });
}

std::vector<Diagnostic> Diagnostics::errors() const {
  std::vector<Diagnostic> out;
  for (const auto& d : items) {
    if (d.severity == Diagnostic::Severity::kError) out.push_back(d);
  }
  return out;
}

std::vector<Diagnostic> Diagnostics::warnings() const {
  std::vector<Diagnostic> out;
  for (const auto& d : items) {
    if (d.severity == Diagnostic::Severity::kWarning) out.push_back(d);
  }
  return out;
}

// ---------------------------------------------------------------- parsing

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw CaseError("schema error at " + path + ": " + what);
}

void require_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed,
                  std::initializer_list<const char*> required) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; })) {
      schema_error(path, "unknown key '" + key + "'");
    }
  }
  for (const char* key : required) {
    if (!obj.contains(key)) schema_error(path, "missing key '" + std::string(key) + "'");
  }
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) schema_error(path, "expected a string");
  return v.get<std::string>();
}

std::vector<std::string> get_strings(const json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected a list of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_string(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

int get_count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 64) {
    schema_error(path, "expected an integer in 0..64");
  }
  return v.get<int>();
}

Rational get_rational(const json& v, const std::string& path) {
  const auto text = get_string(v, path);
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    schema_error(path, e.what());
  }
}

Formula get_formula(const json& v, const std::string& path, const ParseContext& ctx) {
  const auto text = get_string(v, path);
  try {
    return parse_formula(text, ctx);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + std::string(e.what()).substr(0, std::string(e.what()).rfind(" at position")),
                     e.position());
  }
}

std::vector<Formula> get_formulas(const json& v, const std::string& path, const ParseContext& ctx) {
  if (!v.is_array()) schema_error(path, "expected a list of formula strings");
  std::vector<Formula> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_formula(v[i], path + "[" + std::to_string(i) + "]", ctx));
  return out;
}

}  // namespace

CaseModel parse_case_document(std::string_view document) {
  json root;
  try {
    root = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw CaseError(std::string("malformed JSON: ") + e.what());
  }
  require_keys(root, "$",
               {"atoms", "suspended_atoms", "guilt", "universe", "evidence", "narrations", "prior", "thresholds", "search"},
               {"atoms", "guilt", "universe", "narrations"});

  CaseModel c;
  c.atoms = get_strings(root["atoms"], "$.atoms");
  if (root.contains("suspended_atoms")) c.suspended = get_strings(root["suspended_atoms"], "$.suspended_atoms");

  const auto& guilt = root["guilt"];
  require_keys(guilt, "$.guilt", {"constant", "conjuncts"}, {"conjuncts"});
  if (guilt.contains("constant")) c.guilt.constant = get_string(guilt["constant"], "$.guilt.constant");

  const auto& narrations = root["narrations"];
  if (!narrations.is_array()) schema_error("$.narrations", "expected a list");
  // Narration count must be known before any formula is parsed.
  ParseContext ctx;
  ctx.guilt_constant = c.guilt.constant;
  ctx.narration_count = static_cast<int>(narrations.size());
  ctx.atoms = std::set<std::string>(c.atoms.begin(), c.atoms.end());

  c.guilt.conjuncts = get_formulas(guilt["conjuncts"], "$.guilt.conjuncts", ctx);
  c.universe = get_formulas(root["universe"], "$.universe", ctx);

  if (root.contains("evidence")) {
    auto evidence = get_formulas(root["evidence"], "$.evidence", ctx);
    // Universe order makes the evidence list independent of insertion order.
    auto rank = [&](const Formula& f) {
      const auto it = std::find(c.universe.begin(), c.universe.end(), f);
      return static_cast<std::size_t>(it - c.universe.begin());
    };
    std::stable_sort(evidence.begin(), evidence.end(), [&](const Formula& x, const Formula& y) { return rank(x) < rank(y); });
    c.evidence = std::move(evidence);
  }

  for (std::size_t i = 0; i < narrations.size(); ++i) {
    const std::string path = "$.narrations[" + std::to_string(i) + "]";
    const auto& n = narrations[i];
    require_keys(n, path, {"id", "side", "content"}, {"id", "side", "content"});
    Narration out;
    out.id = get_string(n["id"], path + ".id");
    const auto side = get_string(n["side"], path + ".side");
    if (side == "accusing") {
      out.side = Side::kAccusing;
    } else if (side == "defending") {
      out.side = Side::kDefending;
    } else {
      schema_error(path + ".side", "expected \"accusing\" or \"defending\"");
    }
    out.content = get_formulas(n["content"], path + ".content", ctx);
    c.narrations.push_back(std::move(out));
  }

  if (root.contains("prior")) {
    const auto& prior = root["prior"];
    require_keys(prior, "$.prior", {"base", "reweight"}, {});
    if (prior.contains("base") && get_string(prior["base"], "$.prior.base") != "uniform") {
      schema_error("$.prior.base", "only \"uniform\" is supported");
    }
    if (prior.contains("reweight")) {
      const auto& rules = prior["reweight"];
      if (!rules.is_array()) schema_error("$.prior.reweight", "expected a list");
      for (std::size_t i = 0; i < rules.size(); ++i) {
        const std::string path = "$.prior.reweight[" + std::to_string(i) + "]";
        require_keys(rules[i], path, {"formula", "weight"}, {"formula", "weight"});
        c.prior.reweight.emplace_back(get_formula(rules[i]["formula"], path + ".formula", ctx),
                                      get_rational(rules[i]["weight"], path + ".weight"));
      }
    }
  }

  if (root.contains("thresholds")) {
    const auto& t = root["thresholds"];
    require_keys(t, "$.thresholds", {"a", "s", "r", "n"}, {});
    if (t.contains("a")) c.thresholds.a = get_rational(t["a"], "$.thresholds.a");
    if (t.contains("s")) c.thresholds.s = get_rational(t["s"], "$.thresholds.s");
    if (t.contains("r")) c.thresholds.r = get_rational(t["r"], "$.thresholds.r");
    if (t.contains("n")) c.thresholds.n = get_rational(t["n"], "$.thresholds.n");
  }

  if (root.contains("search")) {
    const auto& s = root["search"];
    require_keys(s, "$.search",
                 {"max_disjunction", "gap_mode", "commitment_variant", "max_relevant_set", "relevance_background", "strict"},
                 {});
    if (s.contains("max_disjunction")) c.search.max_disjunction = get_count(s["max_disjunction"], "$.search.max_disjunction");
    if (s.contains("max_relevant_set")) {
      c.search.max_relevant_set = get_count(s["max_relevant_set"], "$.search.max_relevant_set");
    }
    if (s.contains("gap_mode")) {
      const auto v = get_string(s["gap_mode"], "$.search.gap_mode");
      if (v == "direct") {
        c.search.gap_mode = GapMode::kDirect;
      } else if (v == "commitment") {
        c.search.gap_mode = GapMode::kCommitment;
      } else {
        schema_error("$.search.gap_mode", "expected \"direct\" or \"commitment\"");
      }
    }
    if (s.contains("commitment_variant")) {
      const auto v = get_string(s["commitment_variant"], "$.search.commitment_variant");
      if (v == "evidential") {
        c.search.commitment_variant = CommitmentVariant::kEvidential;
      } else if (v == "f-extended") {
        c.search.commitment_variant = CommitmentVariant::kFExtended;
      } else {
        schema_error("$.search.commitment_variant", "expected \"evidential\" or \"f-extended\"");
      }
    }
    if (s.contains("relevance_background")) {
      const auto v = get_string(s["relevance_background"], "$.search.relevance_background");
      if (v == "evidential") {
        c.search.relevance_background = RelevanceBackground::kEvidential;
      } else if (v == "full") {
        c.search.relevance_background = RelevanceBackground::kFull;
      } else {
        schema_error("$.search.relevance_background", "expected \"evidential\" or \"full\"");
      }
    }
    if (s.contains("strict")) {
      if (!s["strict"].is_boolean()) schema_error("$.search.strict", "expected a boolean");
      c.search.strict = s["strict"].get<bool>();
    }
  }
  return c;
}

CaseModel load_case(std::string_view document) {
  CaseModel c = parse_case_document(document);
  const auto diagnostics = validate_case(c);
  if (diagnostics.has_errors()) {
    std::string message = "invalid case:";
    for (const auto& d : diagnostics.errors()) message += "\n  [" + d.code + "] " + d.message;
    throw CaseError(message);
  }
  return c;
}

std::string to_document(const CaseModel& c) {
  auto formulas = [](const std::vector<Formula>& fs) {
    ordered_json out = ordered_json::array();
    for (const auto& f : fs) out.push_back(f.key());
    return out;
  };
  ordered_json root;
  root["atoms"] = c.atoms;
  root["suspended_atoms"] = c.suspended;
  root["guilt"] = {{"constant", c.guilt.constant}, {"conjuncts", formulas(c.guilt.conjuncts)}};
  root["universe"] = formulas(c.universe);
  root["evidence"] = formulas(c.evidence);
  ordered_json narrations = ordered_json::array();
  for (const auto& n : c.narrations) {
    narrations.push_back({{"id", n.id}, {"side", to_string(n.side)}, {"content", formulas(n.content)}});
  }
  root["narrations"] = narrations;
  ordered_json rules = ordered_json::array();
  for (const auto& [f, w] : c.prior.reweight) rules.push_back({{"formula", f.key()}, {"weight", to_string(w)}});
  root["prior"] = {{"base", "uniform"}, {"reweight", rules}};
  root["thresholds"] = {{"a", to_string(c.thresholds.a)},
                        {"s", to_string(c.thresholds.s)},
                        {"r", to_string(c.thresholds.r)},
                        {"n", to_string(c.thresholds.n)}};
  root["search"] = {{"max_disjunction", c.search.max_disjunction},
                    {"gap_mode", to_string(c.search.gap_mode)},
                    {"commitment_variant", to_string(c.search.commitment_variant)},
                    {"max_relevant_set", c.search.max_relevant_set},
                    {"relevance_background", to_string(c.search.relevance_background)},
                    {"strict", c.search.strict}};
  return root.dump(2) + "\n";
}

// ---------------------------------------------------------------- construction

std::shared_ptr<const Universe> build_universe(const CaseModel& c) {
  return std::make_shared<const Universe>(c.atoms, c.universe, static_cast<int>(c.narrations.size()), c.guilt);
}

std::set<AtomId> resolve_suspended(const CaseModel& c, const Universe& universe) {
  std::set<AtomId> out = PartialCredence::default_suspended(universe);
  const auto ctx = c.parse_context();
  for (const auto& entry : c.suspended) {
    const bool remove = !entry.empty() && entry.front() == '-';
    const std::string token = remove ? entry.substr(1) : entry;
    std::vector<AtomId> selected;
    if (token == "E(*)" || token == "N(*)") {
      const auto kind = token[0] == 'E' ? AtomId::Kind::kEvidence : AtomId::Kind::kNarration;
      for (const auto& a : universe.label_atoms()) {
        if (a.kind() == kind) selected.push_back(a);
      }
    } else if (token == c.guilt.constant) {
      selected.push_back(AtomId::guilt_marker(c.guilt.constant));
    } else {
      Formula f;
      try {
        f = parse_formula(token, ctx);
      } catch (const ParseError& e) {
        throw CaseError("suspended atom '" + entry + "': " + e.what());
      }
      if (!f.is_atom()) throw CaseError("suspended entry '" + entry + "' is not an atom");
      if (!universe.contains(f.atom_id())) {
        throw CaseError("suspended atom '" + entry + "' is not an atom of the universe");
      }
      selected.push_back(f.atom_id());
    }
    for (const auto& a : selected) {
      if (remove) {
        out.erase(a);
      } else {
        out.insert(a);
      }
    }
  }
  return out;
}

PartialCredence build_credence(const CaseModel& c, DefinednessFault fault) {
  auto universe = build_universe(c);
  auto suspended = resolve_suspended(c, *universe);
  return PartialCredence(Distribution(std::move(universe), c.prior), std::move(suspended), fault);
}

namespace {

struct Components {
  FormulaSet evidence, evidence_labels, evidence_negative, narration_labels, narration_negative, guilt;
};

Components components(const CaseModel& c) {
  Components out;
  for (const auto& phi : c.universe) {
    if (c.is_evidence(phi)) {
      out.evidence.insert(phi);
      out.evidence_labels.insert(Formula::evidence(phi));
    } else {
      out.evidence_negative.insert(Formula::negation(Formula::evidence(phi)));
    }
  }
  for (std::size_t i = 0; i < c.narrations.size(); ++i) {
    const int index = static_cast<int>(i) + 1;
    const auto& n = c.narrations[i];
    // Content outside the universe has no description label.
    for (const auto& phi : n.content) {
      if (c.in_universe(phi)) out.narration_labels.insert(Formula::narration(index, phi));
    }
    for (const auto& phi : c.universe) {
      if (!n.contains(phi)) out.narration_negative.insert(Formula::negation(Formula::narration(index, phi)));
    }
  }
  out.guilt.insert(c.guilt.definition());
  return out;
}

}  // namespace

ConditionBundle bundle(const CaseModel& c, BundleTag tag, std::optional<std::size_t> narration) {
  if (needs_narration(tag) && !narration) {
    throw PreconditionError("bundle '" + to_string(tag) + "' requires a narration");
  }
  if (!needs_narration(tag) && narration) {
    throw PreconditionError("bundle '" + to_string(tag) + "' takes no narration");
  }
  if (narration && *narration >= c.narrations.size()) {
    throw PreconditionError("unknown narration index " + std::to_string(*narration));
  }
  const auto parts = components(c);
  ConditionBundle out{tag, narration, {}};
  auto& f = out.formulas;
  const bool with_evidence = tag == BundleTag::kFull || tag == BundleTag::kNFull || tag == BundleTag::kInformed ||
                             tag == BundleTag::kEvidential || tag == BundleTag::kNExtended ||
                             tag == BundleTag::kEExtended || tag == BundleTag::kFExtended;
  const bool with_negative_evidence = tag == BundleTag::kFull || tag == BundleTag::kEvidential ||
                                      tag == BundleTag::kEExtended || tag == BundleTag::kFExtended;
  const bool with_labels = tag != BundleTag::kEvidential;
  const bool with_negative_labels = tag == BundleTag::kFull || tag == BundleTag::kNFull || tag == BundleTag::kPlayAlong ||
                                    tag == BundleTag::kNExtended || tag == BundleTag::kFExtended;
  if (narration) f.insert_all(FormulaSet(std::span<const Formula>(c.narrations[*narration].content)));
  if (with_evidence) {
    f.insert_all(parts.evidence);
    f.insert_all(parts.evidence_labels);
  }
  if (with_negative_evidence) f.insert_all(parts.evidence_negative);
  if (with_labels) f.insert_all(parts.narration_labels);
  if (with_negative_labels) f.insert_all(parts.narration_negative);
  f.insert_all(parts.guilt);
  return out;
}

CaseModel with_evidence(const CaseModel& c, const Formula& phi) {
  if (!c.in_universe(phi)) throw PreconditionError("'" + phi.key() + "' is not in the sentence universe");
  if (c.is_evidence(phi)) throw PreconditionError("'" + phi.key() + "' is already evidence");
  CaseModel out = c;
  out.evidence.clear();
  for (const auto& psi : c.universe) {
    if (psi == phi || c.is_evidence(psi)) out.evidence.push_back(psi);
  }
  return out;
}

CaseModel with_narration_content(const CaseModel& c, std::size_t index, std::vector<Formula> content) {
  if (index >= c.narrations.size()) throw PreconditionError("unknown narration index " + std::to_string(index));
  CaseModel out = c;
  out.narrations[index].content = std::move(content);
  return out;
}

// ---------------------------------------------------------------- validation

namespace {

class DiagnosticSink {
 public:
  void error(std::string code, std::string message) {
    out.items.push_back({Diagnostic::Severity::kError, std::move(code), std::move(message)});
  }
  void warning(std::string code, std::string message) {
    out.items.push_back({Diagnostic::Severity::kWarning, std::move(code), std::move(message)});
  }
  Diagnostics out;
};

bool is_reserved_name(const std::string& name, const std::string& guilt_constant) {
  static const std::regex narration_label("N[0-9]*");
  return name == "E" || name == "true" || name == "false" || name == guilt_constant ||
         std::regex_match(name, narration_label);
}

bool has_label(const Formula& f) {
  for (const auto& a : collect_atoms(f)) {
    if (a.is_label()) return true;
  }
  return false;
}

}  // namespace

Diagnostics validate_case(const CaseModel& c) {
  DiagnosticSink sink;
  for (const auto& p : c.thresholds.problems()) sink.error("threshold-order", p);

  static const std::regex identifier("[A-Za-z_][A-Za-z0-9_]*");
  std::set<std::string> seen_atoms;
  if (!std::regex_match(c.guilt.constant, identifier)) {
    sink.error("guilt-definition", "guilt constant '" + c.guilt.constant + "' is not an identifier");
  }
  for (const auto& a : c.atoms) {
    if (!std::regex_match(a, identifier)) sink.error("atom-name", "atom '" + a + "' is not an identifier");
    if (is_reserved_name(a, c.guilt.constant)) sink.error("atom-name", "atom name '" + a + "' is reserved");
    if (!seen_atoms.insert(a).second) sink.error("duplicate-atom", "atom '" + a + "' declared twice");
  }

  std::set<std::string> seen_sentences;
  for (const auto& phi : c.universe) {
    if (!is_base_formula(phi)) {
      sink.error("universe-formula", "universe sentence '" + phi.key() + "' must not contain labels or the guilt constant");
    }
    if (!seen_sentences.insert(phi.key()).second) {
      sink.error("duplicate-sentence", "universe sentence '" + phi.key() + "' listed twice");
    }
  }
  std::set<std::string> seen_evidence;
  for (const auto& e : c.evidence) {
    if (!c.in_universe(e)) sink.error("evidence-outside-universe", "evidence '" + e.key() + "' is not in the universe");
    if (!seen_evidence.insert(e.key()).second) sink.error("duplicate-evidence", "evidence '" + e.key() + "' listed twice");
  }
  if (c.guilt.conjuncts.empty()) sink.error("guilt-definition", "guilt definition needs at least one conjunct");
  for (const auto& g : c.guilt.conjuncts) {
    if (!is_base_formula(g)) {
      sink.error("guilt-definition", "guilt conjunct '" + g.key() + "' must be a base-language formula");
    }
  }

  if (c.narrations.empty()) sink.warning("no-narrations", "case has no narrations");
  std::set<std::string> seen_ids;
  for (const auto& n : c.narrations) {
    if (n.id.empty()) sink.error("narration-id", "narration id must be nonempty");
    if (!seen_ids.insert(n.id).second) sink.error("duplicate-narration-id", "narration id '" + n.id + "' used twice");
    if (n.content.empty()) sink.error("narration-empty", "narration '" + n.id + "' has no content");
    for (const auto& f : n.content) {
      if (has_label(f)) {
        sink.warning("label-in-content", "narration '" + n.id + "' asserts label facts in '" + f.key() + "'");
      }
    }
  }
  for (std::size_t i = 0; i < c.narrations.size(); ++i) {
    for (std::size_t j = i + 1; j < c.narrations.size(); ++j) {
      if (FormulaSet(std::span<const Formula>(c.narrations[i].content))
              .same_members(FormulaSet(std::span<const Formula>(c.narrations[j].content)))) {
        sink.warning("identical-narrations", "narrations '" + c.narrations[i].id + "' and '" + c.narrations[j].id +
                                                 "' have identical content; Exclusion will fail");
      }
    }
  }

  for (const auto& [f, w] : c.prior.reweight) {
    if (!(w > 0)) sink.error("prior-weight", "reweight factor for '" + f.key() + "' must be positive");
  }
  if (c.search.max_disjunction < 0) sink.error("search-bound", "max_disjunction must be nonnegative");
  if (c.search.max_relevant_set < 0) sink.error("search-bound", "max_relevant_set must be nonnegative");
  if (sink.out.has_errors()) return sink.out;

  std::shared_ptr<const Universe> universe;
  try {
    universe = build_universe(c);
  } catch (const Error& e) {
    sink.error("universe", e.what());
    return sink.out;
  }
  auto check_known = [&](const Formula& f, const std::string& where) {
    try {
      universe->require_known(f);
      return true;
    } catch (const UnknownAtomError& e) {
      sink.error("unknown-atom", where + ": " + e.what());
      return false;
    }
  };
  for (const auto& n : c.narrations) {
    for (const auto& f : n.content) check_known(f, "narration '" + n.id + "'");
  }
  for (const auto& [f, w] : c.prior.reweight) check_known(f, "reweight rule '" + f.key() + "'");
  try {
    resolve_suspended(c, *universe);
  } catch (const CaseError& e) {
    sink.error("suspended-atom", e.what());
  }
  if (sink.out.has_errors()) return sink.out;

  try {
    const Distribution dist(universe, c.prior);
    auto check_mass = [&](BundleTag tag, std::optional<std::size_t> j) {
      const auto b = bundle(c, tag, j);
      if (dist.mass(b.formulas.items()) > 0) return;
      std::string name = to_string(tag);
      if (j) name += "[" + c.narrations[*j].id + "]";
      if (j) {
        // Narration bundles may be null for implausible narrations; the
        // criteria report those as undefined comparisons.
        sink.warning("zero-mass", "bundle " + name + " has zero prior mass");
      } else {
        sink.error("zero-mass", "bundle " + name + " has zero prior mass");
      }
    };
    for (auto tag : {BundleTag::kFull, BundleTag::kNFull, BundleTag::kInformed, BundleTag::kEvidential, BundleTag::kArgued}) {
      check_mass(tag, std::nullopt);
    }
    for (std::size_t j = 0; j < c.narrations.size(); ++j) {
      for (auto tag : {BundleTag::kPlayAlong, BundleTag::kNExtended, BundleTag::kEExtended, BundleTag::kFExtended}) {
        check_mass(tag, j);
      }
    }
  } catch (const BoundError& e) {
    sink.error("universe-size", e.what());
  } catch (const Error& e) {
    sink.error("prior", e.what());
  }
  return sink.out;
}

}  // namespace brdkit
