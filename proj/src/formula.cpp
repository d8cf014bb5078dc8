#include "brdkit/formula.hpp"

#include <cctype>
#include <utility>

#include "brdkit/error.hpp"
#include "truth_columns.hpp"

namespace brdkit {
namespace {

using detail::Node;
using NodePtr = std::shared_ptr<const Node>;

const char* connective(Op op) {
  switch (op) {
    case Op::kAnd: return " & ";
    case Op::kOr: return " | ";
    case Op::kImplies: return " -> ";
    case Op::kIff: return " <-> ";
    default: return "";
  }
}

// Label arguments are rendered without their outermost parentheses.
std::string argument_text(const Formula& f) {
  const std::string& k = f.key();
  const bool compound = f.op() == Op::kNot || f.is_binary();
  return compound ? k.substr(1, k.size() - 2) : k;
}

NodePtr make_leaf(Op op, std::string key) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->key = std::move(key);
  return n;
}

}  // namespace

// ---------------------------------------------------------------- AtomId

AtomId AtomId::base(std::string name) {
  AtomId a;
  a.kind_ = Kind::kBase;
  a.key_ = name;
  a.name_ = std::move(name);
  return a;
}

AtomId AtomId::evidence(const Formula& argument) {
  if (!is_base_formula(argument)) {
    throw ParseError("operator E may only be applied to base-language formulas", 0);
  }
  AtomId a;
  a.kind_ = Kind::kEvidence;
  a.argument_ = argument.node_;
  a.key_ = "E(" + argument_text(argument) + ")";
  return a;
}

AtomId AtomId::narration(int index, const Formula& argument) {
  if (!is_base_formula(argument)) {
    throw ParseError("operator N may only be applied to base-language formulas", 0);
  }
  if (index < 1) throw ParseError("narration index must be positive", 0);
  AtomId a;
  a.kind_ = Kind::kNarration;
  a.narration_ = index;
  a.argument_ = argument.node_;
  a.key_ = "N" + std::to_string(index) + "(" + argument_text(argument) + ")";
  return a;
}

AtomId AtomId::guilt_marker(std::string constant) {
  AtomId a;
  a.kind_ = Kind::kGuilt;
  a.key_ = constant;
  a.name_ = std::move(constant);
  return a;
}

Formula AtomId::argument() const { return Formula(argument_); }

// ---------------------------------------------------------------- Formula

Formula::Formula() : Formula(top()) {}

Formula Formula::atom(const AtomId& id) {
  auto n = std::make_shared<Node>();
  n->op = Op::kAtom;
  n->atom = id;
  n->key = id.key();
  return Formula(std::move(n));
}

Formula Formula::guilt(std::string constant) {
  auto n = std::make_shared<Node>();
  n->op = Op::kGuilt;
  n->key = constant;
  n->guilt_name = std::move(constant);
  return Formula(std::move(n));
}

Formula Formula::top() {
  static const NodePtr node = make_leaf(Op::kTop, "true");
  return Formula(node);
}

Formula Formula::bottom() {
  static const NodePtr node = make_leaf(Op::kBottom, "false");
  return Formula(node);
}

Formula Formula::negation(const Formula& f) {
  auto n = std::make_shared<Node>();
  n->op = Op::kNot;
  n->lhs = f.node_;
  n->key = "(!" + f.key() + ")";
  n->size = f.size() + 1;
  return Formula(std::move(n));
}

Formula Formula::binary(Op op, const Formula& lhs, const Formula& rhs) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = lhs.node_;
  n->rhs = rhs.node_;
  std::string key;
  key.reserve(lhs.key().size() + rhs.key().size() + 8);
  key += '(';
  key += lhs.key();
  key += connective(op);
  key += rhs.key();
  key += ')';
  n->key = std::move(key);
  n->size = lhs.size() + rhs.size() + 1;
  return Formula(std::move(n));
}

Formula Formula::conjunction(const Formula& lhs, const Formula& rhs) { return binary(Op::kAnd, lhs, rhs); }
Formula Formula::disjunction(const Formula& lhs, const Formula& rhs) { return binary(Op::kOr, lhs, rhs); }
Formula Formula::implication(const Formula& lhs, const Formula& rhs) { return binary(Op::kImplies, lhs, rhs); }
Formula Formula::biconditional(const Formula& lhs, const Formula& rhs) { return binary(Op::kIff, lhs, rhs); }

Formula Formula::all_of(std::span<const Formula> parts) {
  if (parts.empty()) return top();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conjunction(acc, parts[i]);
  return acc;
}

Formula Formula::any_of(std::span<const Formula> parts) {
  if (parts.empty()) return bottom();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disjunction(acc, parts[i]);
  return acc;
}

Op Formula::op() const { return node_->op; }

bool Formula::is_binary() const {
  const Op o = op();
  return o == Op::kAnd || o == Op::kOr || o == Op::kImplies || o == Op::kIff;
}

const AtomId& Formula::atom_id() const { return *node_->atom; }
Formula Formula::lhs() const { return Formula(node_->lhs); }
Formula Formula::rhs() const { return Formula(node_->rhs); }
const std::string& Formula::guilt_name() const { return node_->guilt_name; }
const std::string& Formula::key() const { return node_->key; }
std::size_t Formula::size() const { return node_->size; }

// ---------------------------------------------------------------- parser

namespace {

enum class Tok { kIdent, kLParen, kRParen, kNot, kAnd, kOr, kImplies, kIff, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i + 1;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::kIdent, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (s.compare(i, 3, "<->") == 0) {
      out.push_back({Tok::kIff, "<->", i});
      i += 3;
      continue;
    }
    if (s.compare(i, 2, "->") == 0) {
      out.push_back({Tok::kImplies, "->", i});
      i += 2;
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tok::kLParen, "(", i}); break;
      case ')': out.push_back({Tok::kRParen, ")", i}); break;
      case '!': out.push_back({Tok::kNot, "!", i}); break;
      case '&': out.push_back({Tok::kAnd, "&", i}); break;
      case '|': out.push_back({Tok::kOr, "|", i}); break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    ++i;
  }
  out.push_back({Tok::kEnd, "", s.size()});
  return out;
}

bool is_narration_ident(const std::string& s) {
  if (s.size() < 2 || s[0] != 'N') return false;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

class Parser {
 public:
  Parser(std::string_view text, const ParseContext& ctx) : tokens_(tokenize(text)), ctx_(ctx) {}

  Formula parse() {
    Formula f = iff();
    if (peek().kind != Tok::kEnd) throw ParseError("unexpected token '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  void expect(Tok kind, const char* what) {
    if (!accept(kind)) throw ParseError(std::string("expected ") + what, peek().pos);
  }

  Formula iff() {
    Formula f = imp();
    while (accept(Tok::kIff)) f = Formula::biconditional(f, imp());
    return f;
  }

  Formula imp() {
    Formula f = disj();
    if (accept(Tok::kImplies)) return Formula::implication(f, imp());
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (accept(Tok::kOr)) f = Formula::disjunction(f, conj());
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (accept(Tok::kAnd)) f = Formula::conjunction(f, unary());
    return f;
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kNot:
        take();
        return Formula::negation(unary());
      case Tok::kLParen: {
        take();
        Formula f = iff();
        expect(Tok::kRParen, "')'");
        return f;
      }
      case Tok::kIdent:
        return identifier();
      case Tok::kEnd:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected token '" + t.text + "'", t.pos);
    }
  }

  Formula identifier() {
    const Token t = take();
    const bool call = peek().kind == Tok::kLParen;
    if (t.text == "true") return Formula::top();
    if (t.text == "false") return Formula::bottom();
    if (call && (t.text == "E" || is_narration_ident(t.text) || t.text == "N")) {
      if (in_label_) throw ParseError("nested operator application '" + t.text + "(...)'", t.pos);
      if (t.text == "N") throw ParseError("narration label requires an index, e.g. N1(...)", t.pos);
      int index = 0;
      if (t.text != "E") {
        index = std::stoi(t.text.substr(1));
        if (index < 1 || (ctx_.narration_count && index > *ctx_.narration_count)) {
          throw ParseError("unknown narration index " + t.text.substr(1), t.pos);
        }
      }
      take();  // '('
      in_label_ = true;
      Formula arg = iff();
      in_label_ = false;
      expect(Tok::kRParen, "')' closing operator argument");
      return index == 0 ? Formula::evidence(arg) : Formula::narration(index, arg);
    }
    if (t.text == ctx_.guilt_constant) {
      if (in_label_) throw ParseError("nested operator: guilt constant inside operator argument", t.pos);
      return Formula::guilt(ctx_.guilt_constant);
    }
    if (ctx_.atoms && !ctx_.atoms->contains(t.text)) {
      throw ParseError("unknown atom '" + t.text + "'", t.pos);
    }
    return Formula::base(t.text);
  }

  std::vector<Token> tokens_;
  const ParseContext& ctx_;
  std::size_t pos_ = 0;
  bool in_label_ = false;
};

void collect(const Formula& f, bool deep, std::set<AtomId>& out) {
  switch (f.op()) {
    case Op::kAtom:
      out.insert(f.atom_id());
      if (deep && f.atom_id().is_label()) collect(f.atom_id().argument(), deep, out);
      return;
    case Op::kGuilt:
      out.insert(AtomId::guilt_marker(f.guilt_name()));
      return;
    case Op::kTop:
    case Op::kBottom:
      return;
    case Op::kNot:
      collect(f.lhs(), deep, out);
      return;
    default:
      collect(f.lhs(), deep, out);
      collect(f.rhs(), deep, out);
  }
}

}  // namespace

Formula parse_formula(std::string_view text, const ParseContext& context) {
  bool blank = true;
  for (char c : text) blank = blank && std::isspace(static_cast<unsigned char>(c));
  if (blank) throw ParseError("empty formula", 0);
  return Parser(text, context).parse();
}

std::set<AtomId> collect_atoms(const Formula& f) {
  std::set<AtomId> out;
  collect(f, false, out);
  return out;
}

std::set<AtomId> occurring_atoms(const Formula& f) {
  std::set<AtomId> out;
  collect(f, true, out);
  return out;
}

bool is_base_formula(const Formula& f) {
  for (const auto& a : collect_atoms(f)) {
    if (a.kind() != AtomId::Kind::kBase) return false;
  }
  return true;
}

bool contains_guilt(const Formula& f) {
  switch (f.op()) {
    case Op::kGuilt: return true;
    case Op::kAtom:
    case Op::kTop:
    case Op::kBottom: return false;
    case Op::kNot: return contains_guilt(f.lhs());
    default: return contains_guilt(f.lhs()) || contains_guilt(f.rhs());
  }
}

Formula expand_guilt(const Formula& f, const GuiltDef& guilt) {
  switch (f.op()) {
    case Op::kGuilt: return guilt.body();
    case Op::kAtom:
    case Op::kTop:
    case Op::kBottom: return f;
    case Op::kNot: {
      if (!contains_guilt(f)) return f;
      return Formula::negation(expand_guilt(f.lhs(), guilt));
    }
    default: {
      if (!contains_guilt(f)) return f;
      const Formula l = expand_guilt(f.lhs(), guilt);
      const Formula r = expand_guilt(f.rhs(), guilt);
      switch (f.op()) {
        case Op::kAnd: return Formula::conjunction(l, r);
        case Op::kOr: return Formula::disjunction(l, r);
        case Op::kImplies: return Formula::implication(l, r);
        default: return Formula::biconditional(l, r);
      }
    }
  }
}

SemanticStatus classify(const Formula& f) {
  const auto atoms = collect_atoms(f);
  const std::vector<AtomId> local(atoms.begin(), atoms.end());
  const detail::TruthColumns table(local, 30);
  const auto column = table.evaluate(f);
  const std::uint64_t n = detail::TruthColumns::count(column);
  if (n == 0) return SemanticStatus::kContradiction;
  if (n == detail::TruthColumns::count(table.ones())) return SemanticStatus::kTautology;
  return SemanticStatus::kContingent;
}

std::string to_string(SemanticStatus status) {
  switch (status) {
    case SemanticStatus::kTautology: return "tautology";
    case SemanticStatus::kContradiction: return "contradiction";
    default: return "contingent";
  }
}

void for_each_subformula(const Formula& f, const std::function<void(const Formula&)>& visit) {
  visit(f);
  if (f.op() == Op::kNot) {
    for_each_subformula(f.lhs(), visit);
  } else if (f.is_binary()) {
    for_each_subformula(f.lhs(), visit);
    for_each_subformula(f.rhs(), visit);
  }
}

}  // namespace brdkit
