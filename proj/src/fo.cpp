#include "fowb/fo.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <tuple>
#include <utility>

namespace fowb {

namespace {

bool is_keyword(std::string_view s) {
  return s == "true" || s == "false" || s == "forall" || s == "exists";
}

bool is_var_name(std::string_view s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z' || is_keyword(s)) return false;
  for (char c : s) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  }
  return true;
}

bool is_symbol_name(std::string_view s) {
  if (s.empty() || is_keyword(s)) return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '_' || c == '<' || c == '\'';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> unary_syms, std::vector<std::string> binary_syms)
    : unary_(std::move(unary_syms)), binary_(std::move(binary_syms)) {
  for (const auto* names : {&unary_, &binary_}) {
    for (const auto& n : *names) {
      if (!is_symbol_name(n)) throw VocabularyError("bad relation symbol name: '" + n + "'");
    }
  }
  std::sort(unary_.begin(), unary_.end());
  unary_.erase(std::unique(unary_.begin(), unary_.end()), unary_.end());
  std::sort(binary_.begin(), binary_.end());
  binary_.erase(std::unique(binary_.begin(), binary_.end()), binary_.end());
  for (const auto& n : unary_) {
    if (std::binary_search(binary_.begin(), binary_.end(), n)) {
      throw VocabularyError("symbol '" + n + "' is both unary and binary");
    }
  }
}

bool Vocabulary::has_unary(std::string_view name) const {
  return std::binary_search(unary_.begin(), unary_.end(), name);
}

bool Vocabulary::has_binary(std::string_view name) const {
  return std::binary_search(binary_.begin(), binary_.end(), name);
}

bool Vocabulary::includes(const Vocabulary& other) const {
  for (const auto& n : other.unary_) {
    if (!has_unary(n)) return false;
  }
  for (const auto& n : other.binary_) {
    if (!has_binary(n)) return false;
  }
  return true;
}

std::string Vocabulary::key() const {
  std::string out = "unary:";
  for (const auto& n : unary_) {
    out += ' ';
    out += n;
  }
  out += "; binary:";
  for (const auto& n : binary_) {
    out += ' ';
    out += n;
  }
  return out;
}

Vocabulary word_vocabulary(const std::vector<std::string>& letters) {
  if (letters.empty()) throw VocabularyError("word vocabulary needs at least one letter");
  return Vocabulary(letters, {"<"});
}

struct Formula::Node {
  FormulaKind kind;
  std::string name;                // Atom: relation; Exists/Forall: bound variable
  std::vector<std::string> names;  // Atom/Eq arguments
  std::vector<Formula> kids;
};

Formula::Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

Formula Formula::truth() {
  static const Formula f{std::make_shared<Node>(Node{FormulaKind::True, {}, {}, {}})};
  return f;
}

Formula Formula::falsity() {
  static const Formula f{std::make_shared<Node>(Node{FormulaKind::False, {}, {}, {}})};
  return f;
}

Formula Formula::atom(std::string rel, std::vector<std::string> args) {
  if (!is_symbol_name(rel)) throw VocabularyError("bad relation symbol name: '" + rel + "'");
  if (args.empty() || args.size() > 2) {
    throw VocabularyError("atoms take one or two arguments");
  }
  for (const auto& a : args) {
    if (!is_var_name(a)) throw VocabularyError("bad variable name: '" + a + "'");
  }
  return Formula{
      std::make_shared<Node>(Node{FormulaKind::Atom, std::move(rel), std::move(args), {}})};
}

Formula Formula::eq(std::string lhs, std::string rhs) {
  if (!is_var_name(lhs) || !is_var_name(rhs)) throw VocabularyError("bad variable name in '='");
  return Formula{std::make_shared<Node>(
      Node{FormulaKind::Eq, {}, {std::move(lhs), std::move(rhs)}, {}})};
}

Formula Formula::negation(Formula f) {
  return Formula{std::make_shared<Node>(Node{FormulaKind::Not, {}, {}, {std::move(f)}})};
}

Formula Formula::conj(Formula l, Formula r) {
  return Formula{
      std::make_shared<Node>(Node{FormulaKind::And, {}, {}, {std::move(l), std::move(r)}})};
}

Formula Formula::disj(Formula l, Formula r) {
  return Formula{
      std::make_shared<Node>(Node{FormulaKind::Or, {}, {}, {std::move(l), std::move(r)}})};
}

Formula Formula::implies(Formula l, Formula r) {
  return Formula{
      std::make_shared<Node>(Node{FormulaKind::Implies, {}, {}, {std::move(l), std::move(r)}})};
}

Formula Formula::exists(std::string var, Formula body) {
  if (!is_var_name(var)) throw VocabularyError("bad variable name: '" + var + "'");
  return Formula{
      std::make_shared<Node>(Node{FormulaKind::Exists, std::move(var), {}, {std::move(body)}})};
}

Formula Formula::forall(std::string var, Formula body) {
  if (!is_var_name(var)) throw VocabularyError("bad variable name: '" + var + "'");
  return Formula{
      std::make_shared<Node>(Node{FormulaKind::Forall, std::move(var), {}, {std::move(body)}})};
}

FormulaKind Formula::kind() const { return node_->kind; }

const std::string& Formula::rel() const {
  assert(node_->kind == FormulaKind::Atom);
  return node_->name;
}

const std::vector<std::string>& Formula::args() const {
  assert(node_->kind == FormulaKind::Atom || node_->kind == FormulaKind::Eq);
  return node_->names;
}

const std::string& Formula::var() const {
  assert(node_->kind == FormulaKind::Exists || node_->kind == FormulaKind::Forall);
  return node_->name;
}

const Formula& Formula::left() const {
  assert(node_->kids.size() == 2);
  return node_->kids[0];
}

const Formula& Formula::right() const {
  assert(node_->kids.size() == 2);
  return node_->kids[1];
}

const Formula& Formula::child() const {
  assert(node_->kids.size() == 1);
  return node_->kids[0];
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  if (a.kind != b.kind || a.name != b.name || a.names != b.names ||
      a.kids.size() != b.kids.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.kids.size(); ++i) {
    if (a.kids[i] != b.kids[i]) return false;
  }
  return true;
}

Sentence::Sentence(Formula f) : formula(std::move(f)) {
  auto fv = free_vars(formula);
  if (!fv.empty()) {
    std::string msg = "sentence has free variables:";
    for (const auto& v : fv) msg += " " + v;
    throw std::invalid_argument(msg);
  }
}

Formula conj_all(const std::vector<Formula>& parts) {
  assert(!parts.empty());
  Formula acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::conj(acc, parts[i]);
  return acc;
}

Formula disj_all(const std::vector<Formula>& parts) {
  assert(!parts.empty());
  Formula acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::disj(acc, parts[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// Parsing
//
// formula := quant | impl
// quant   := ("forall" | "exists") VAR "." formula
// impl    := disj [ "->" formula ]
// disj    := conj { "|" conj }
// conj    := neg { "&" neg }
// neg     := "!" neg | atom
// atom    := "true" | "false" | "(" formula ")" | REL "(" VAR { "," VAR } ")"
//          | VAR "<" VAR | VAR "<'" VAR | VAR "=" VAR | quant
//
// Lexing note: identifiers starting with a lowercase letter stop at any
// character outside [a-z0-9_], so "x<y" splits into three tokens, while
// uppercase-initial relation names may continue with [A-Za-z0-9_<'].

namespace {

enum class TokKind {
  End,
  LParen,
  RParen,
  Dot,
  Comma,
  Bang,
  Amp,
  Pipe,
  Arrow,
  Less,
  LessPrime,
  Equal,
  Ident,
  KwTrue,
  KwFalse,
  KwForall,
  KwExists,
};

struct Token {
  TokKind kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto push = [&](TokKind k, std::string t, int l, int c) {
    out.push_back(Token{k, std::move(t), l, c});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    int tl = line;
    int tc = col;
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i;
      while (j < text.size()) {
        char d = text[j];
        if ((d >= 'a' && d <= 'z') || (d >= '0' && d <= '9') || d == '_') {
          ++j;
        } else {
          break;
        }
      }
      std::string word(text.substr(i, j - i));
      col += static_cast<int>(j - i);
      i = j;
      if (word == "true") {
        push(TokKind::KwTrue, word, tl, tc);
      } else if (word == "false") {
        push(TokKind::KwFalse, word, tl, tc);
      } else if (word == "forall") {
        push(TokKind::KwForall, word, tl, tc);
      } else if (word == "exists") {
        push(TokKind::KwExists, word, tl, tc);
      } else {
        push(TokKind::Ident, word, tl, tc);
      }
      continue;
    }
    if (c >= 'A' && c <= 'Z') {
      std::size_t j = i;
      while (j < text.size()) {
        char d = text[j];
        if ((d >= 'a' && d <= 'z') || (d >= 'A' && d <= 'Z') || (d >= '0' && d <= '9') ||
            d == '_' || d == '<' || d == '\'') {
          ++j;
        } else {
          break;
        }
      }
      std::string word(text.substr(i, j - i));
      col += static_cast<int>(j - i);
      i = j;
      push(TokKind::Ident, word, tl, tc);
      continue;
    }
    switch (c) {
      case '(':
        push(TokKind::LParen, "(", tl, tc);
        break;
      case ')':
        push(TokKind::RParen, ")", tl, tc);
        break;
      case '.':
        push(TokKind::Dot, ".", tl, tc);
        break;
      case ',':
        push(TokKind::Comma, ",", tl, tc);
        break;
      case '!':
        push(TokKind::Bang, "!", tl, tc);
        break;
      case '&':
        push(TokKind::Amp, "&", tl, tc);
        break;
      case '|':
        push(TokKind::Pipe, "|", tl, tc);
        break;
      case '=':
        push(TokKind::Equal, "=", tl, tc);
        break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(TokKind::Arrow, "->", tl, tc);
          ++i;
          ++col;
        } else {
          throw SyntaxError(tl, tc, "expected '->'");
        }
        break;
      case '<':
        if (i + 1 < text.size() && text[i + 1] == '\'') {
          push(TokKind::LessPrime, "<'", tl, tc);
          ++i;
          ++col;
        } else {
          push(TokKind::Less, "<", tl, tc);
        }
        break;
      default:
        throw SyntaxError(tl, tc, std::string("unexpected character '") + c + "'");
    }
    ++i;
    ++col;
  }
  out.push_back(Token{TokKind::End, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const Vocabulary& vocab)
      : toks_(std::move(toks)), vocab_(vocab) {}

  Formula run() {
    Formula f = formula();
    if (cur().kind != TokKind::End) {
      throw SyntaxError(cur().line, cur().col, "unexpected trailing input");
    }
    return f;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  void advance() { ++pos_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(cur().line, cur().col, msg);
  }

  std::string expect_var(const char* what) {
    if (cur().kind != TokKind::Ident || !is_var_name(cur().text)) {
      fail(std::string("expected ") + what);
    }
    std::string v = cur().text;
    advance();
    return v;
  }

  Formula formula() {
    if (cur().kind == TokKind::KwForall || cur().kind == TokKind::KwExists) return quant();
    return impl();
  }

  Formula quant() {
    bool universal = cur().kind == TokKind::KwForall;
    advance();
    std::string v = expect_var("variable after quantifier");
    if (cur().kind != TokKind::Dot) fail("expected '.' after quantified variable");
    advance();
    Formula body = formula();
    return universal ? Formula::forall(v, body) : Formula::exists(v, body);
  }

  Formula impl() {
    Formula l = disj();
    if (cur().kind == TokKind::Arrow) {
      advance();
      return Formula::implies(l, formula());
    }
    return l;
  }

  Formula disj() {
    Formula l = conj();
    while (cur().kind == TokKind::Pipe) {
      advance();
      l = Formula::disj(l, conj());
    }
    return l;
  }

  Formula conj() {
    Formula l = neg();
    while (cur().kind == TokKind::Amp) {
      advance();
      l = Formula::conj(l, neg());
    }
    return l;
  }

  Formula neg() {
    if (cur().kind == TokKind::Bang) {
      advance();
      return Formula::negation(neg());
    }
    return atom();
  }

  Formula make_checked_atom(const Token& rel_tok, std::vector<std::string> args) {
    const std::string& rel = rel_tok.text;
    bool unary = vocab_.has_unary(rel);
    bool binary = vocab_.has_binary(rel);
    if (!unary && !binary) {
      throw UnknownSymbolError(rel_tok.line, rel_tok.col, "unknown relation symbol '" + rel + "'");
    }
    std::size_t want = unary ? 1 : 2;
    if (args.size() != want) {
      throw ArityError(rel_tok.line, rel_tok.col,
                       "relation '" + rel + "' takes " + std::to_string(want) + " argument" +
                           (want == 1 ? "" : "s") + ", got " + std::to_string(args.size()));
    }
    return Formula::atom(rel, std::move(args));
  }

  Formula atom() {
    switch (cur().kind) {
      case TokKind::KwTrue:
        advance();
        return Formula::truth();
      case TokKind::KwFalse:
        advance();
        return Formula::falsity();
      case TokKind::KwForall:
      case TokKind::KwExists:
        return quant();
      case TokKind::LParen: {
        advance();
        Formula f = formula();
        if (cur().kind != TokKind::RParen) fail("expected ')'");
        advance();
        return f;
      }
      case TokKind::Ident: {
        Token name = cur();
        advance();
        if (cur().kind == TokKind::LParen) {
          advance();
          std::vector<std::string> args;
          args.push_back(expect_var("variable in argument list"));
          while (cur().kind == TokKind::Comma) {
            advance();
            args.push_back(expect_var("variable in argument list"));
          }
          if (cur().kind != TokKind::RParen) fail("expected ')' after arguments");
          advance();
          return make_checked_atom(name, std::move(args));
        }
        if (cur().kind == TokKind::Less || cur().kind == TokKind::LessPrime ||
            cur().kind == TokKind::Equal) {
          TokKind op = cur().kind;
          Token op_tok = cur();
          advance();
          if (!is_var_name(name.text)) {
            throw SyntaxError(name.line, name.col, "expected variable before comparison");
          }
          std::string rhs = expect_var("variable after comparison");
          if (op == TokKind::Equal) return Formula::eq(name.text, rhs);
          std::string rel = op == TokKind::Less ? "<" : "<'";
          if (!vocab_.has_binary(rel)) {
            throw UnknownSymbolError(op_tok.line, op_tok.col,
                                     "unknown relation symbol '" + rel + "'");
          }
          return Formula::atom(rel, {name.text, rhs});
        }
        fail("expected '(' or comparison after identifier");
      }
      default:
        fail("expected formula");
    }
  }

  std::vector<Token> toks_;
  const Vocabulary& vocab_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, const Vocabulary& vocab) {
  return Parser(lex(text), vocab).run();
}

Sentence parse_sentence(std::string_view text, const Vocabulary& vocab) {
  return Sentence(parse_formula(text, vocab));
}

// ---------------------------------------------------------------------------
// Printing
//
// Binding strengths: implication and quantifiers 0, "|" 1, "&" 2, "!" 3,
// atoms 4. Comparison atoms print at strength 2 so they pick up parentheses
// under "!". A child is parenthesized exactly when its strength is below what
// its position requires, which makes the rendering canonical.

namespace {

int strength(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Implies:
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      return 0;
    case FormulaKind::Or:
      return 1;
    case FormulaKind::And:
      return 2;
    case FormulaKind::Eq:
      return 2;
    case FormulaKind::Atom:
      return (f.rel() == "<" || f.rel() == "<'") ? 2 : 4;
    case FormulaKind::Not:
      return 3;
    case FormulaKind::True:
    case FormulaKind::False:
      return 4;
  }
  return 4;
}

void print_rec(const Formula& f, int required, std::string& out) {
  bool parens = strength(f) < required;
  if (parens) out += '(';
  switch (f.kind()) {
    case FormulaKind::True:
      out += "true";
      break;
    case FormulaKind::False:
      out += "false";
      break;
    case FormulaKind::Atom:
      if (f.rel() == "<" || f.rel() == "<'") {
        out += f.args()[0];
        out += ' ';
        out += f.rel();
        out += ' ';
        out += f.args()[1];
      } else {
        out += f.rel();
        out += '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ", ";
          out += f.args()[i];
        }
        out += ')';
      }
      break;
    case FormulaKind::Eq:
      out += f.args()[0];
      out += " = ";
      out += f.args()[1];
      break;
    case FormulaKind::Not:
      out += '!';
      print_rec(f.child(), 3, out);
      break;
    case FormulaKind::And:
      print_rec(f.left(), 2, out);
      out += " & ";
      print_rec(f.right(), 3, out);
      break;
    case FormulaKind::Or:
      print_rec(f.left(), 1, out);
      out += " | ";
      print_rec(f.right(), 2, out);
      break;
    case FormulaKind::Implies:
      print_rec(f.left(), 1, out);
      out += " -> ";
      print_rec(f.right(), 0, out);
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out += f.kind() == FormulaKind::Exists ? "exists " : "forall ";
      out += f.var();
      out += ". ";
      print_rec(f.child(), 0, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print_rec(f, 0, out);
  return out;
}

std::string print_sentence(const Sentence& s) { return print_formula(s.formula); }

namespace {

void free_vars_rec(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
      break;
    case FormulaKind::Atom:
    case FormulaKind::Eq:
      for (const auto& v : f.args()) {
        if (!bound.count(v)) out.insert(v);
      }
      break;
    case FormulaKind::Not:
      free_vars_rec(f.child(), bound, out);
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      free_vars_rec(f.left(), bound, out);
      free_vars_rec(f.right(), bound, out);
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool fresh = bound.insert(f.var()).second;
      free_vars_rec(f.child(), bound, out);
      if (fresh) bound.erase(f.var());
      break;
    }
  }
}

}  // namespace

std::vector<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound;
  std::set<std::string> out;
  free_vars_rec(f, bound, out);
  return {out.begin(), out.end()};
}

Sentence conjunction_power(const Sentence& phi, int n) {
  if (n < 1) throw std::invalid_argument("conjunction power needs n >= 1");
  Formula acc = phi.formula;
  for (int i = 1; i < n; ++i) acc = Formula::conj(acc, phi.formula);
  return Sentence(acc);
}

void collect_symbols(const Formula& f, std::set<std::string>& unary_out,
                     std::set<std::string>& binary_out) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Eq:
      break;
    case FormulaKind::Atom:
      (f.args().size() == 1 ? unary_out : binary_out).insert(f.rel());
      break;
    case FormulaKind::Not:
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      collect_symbols(f.child(), unary_out, binary_out);
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      collect_symbols(f.left(), unary_out, binary_out);
      collect_symbols(f.right(), unary_out, binary_out);
      break;
  }
}

bool uses_only(const Formula& f, const Vocabulary& vocab) {
  std::set<std::string> u, b;
  collect_symbols(f, u, b);
  for (const auto& n : u) {
    if (!vocab.has_unary(n)) return false;
  }
  for (const auto& n : b) {
    if (!vocab.has_binary(n)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Sentence enumeration
//
// Sentences are generated as canonical printed strings, graded by exact
// length and sorted bytewise within each length. Generation mirrors the
// printer: a construct below the required strength appears only inside one
// pair of parentheses. Bound-variable names range over all VAR tokens the
// remaining budget admits, so every sentence is eventually produced.

namespace {

const char* kVarTail = "0123456789_abcdefghijklmnopqrstuvwxyz";

class SentenceEnumerator {
 public:
  explicit SentenceEnumerator(Vocabulary v) : vocab_(std::move(v)) {}

  std::string at(std::uint64_t index) {
    if (index == 0) return "false";
    for (;;) {
      if (false_pos_ >= 0) {
        std::uint64_t physical =
            index - 1 < static_cast<std::uint64_t>(false_pos_) ? index - 1 : index;
        if (physical < ordered_.size()) return ordered_[physical];
      }
      extend_one_length();
    }
  }

 private:
  void extend_one_length() {
    std::set<std::string> bound;
    std::vector<std::string> batch = gen(next_len_, 0, bound);
    std::sort(batch.begin(), batch.end());
    batch.erase(std::unique(batch.begin(), batch.end()), batch.end());
    for (auto& s : batch) {
      if (false_pos_ < 0 && s == "false") false_pos_ = static_cast<long long>(ordered_.size());
      ordered_.push_back(std::move(s));
    }
    ++next_len_;
  }

  static std::string bound_key(const std::set<std::string>& bound) {
    std::string k;
    for (const auto& v : bound) {
      k += v;
      k += ',';
    }
    return k;
  }

  // All canonical strings of exactly `budget` characters valid at a context
  // requiring the given strength, with free variables among `bound`.
  std::vector<std::string> gen(int budget, int required, std::set<std::string>& bound) {
    if (budget < 4) return {};
    auto key = std::make_tuple(budget, required, bound_key(bound));
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;

    std::vector<std::string> out;
    emit_class(budget, required, 4, bound, out);  // true/false/relation atoms
    emit_class(budget, required, 2, bound, out);  // comparisons and "&"
    emit_class(budget, required, 3, bound, out);  // "!"
    emit_class(budget, required, 1, bound, out);  // "|"
    emit_class(budget, required, 0, bound, out);  // "->" and quantifiers
    memo_.emplace(std::move(key), out);
    return out;
  }

  // Emits every construct of intrinsic strength `cls`, parenthesized when the
  // context demands more.
  void emit_class(int budget, int required, int cls, std::set<std::string>& bound,
                  std::vector<std::string>& out) {
    bool wrap = cls < required;
    int inner = wrap ? budget - 2 : budget;
    if (inner < 4) return;
    std::vector<std::string> bare;
    switch (cls) {
      case 4:
        emit_atoms(inner, bound, bare);
        break;
      case 3:
        for (const auto& s : gen(inner - 1, 3, bound)) bare.push_back("!" + s);
        break;
      case 2:
        emit_comparisons(inner, bound, bare);
        emit_binary(inner, 2, 3, " & ", bound, bare);
        break;
      case 1:
        emit_binary(inner, 1, 2, " | ", bound, bare);
        break;
      case 0:
        emit_binary(inner, 1, 0, " -> ", bound, bare);
        emit_quantifiers(inner, bound, bare);
        break;
    }
    if (wrap) {
      for (auto& s : bare) out.push_back("(" + s + ")");
    } else {
      for (auto& s : bare) out.push_back(std::move(s));
    }
  }

  void emit_atoms(int budget, const std::set<std::string>& bound,
                  std::vector<std::string>& out) {
    if (budget == 4) out.push_back("true");
    if (budget == 5) out.push_back("false");
    for (const auto& p : vocab_.unary()) {
      int need = static_cast<int>(p.size()) + 2;
      for (const auto& v : bound) {
        if (need + static_cast<int>(v.size()) == budget) out.push_back(p + "(" + v + ")");
      }
    }
    for (const auto& r : vocab_.binary()) {
      if (r == "<" || r == "<'") continue;  // rendered infix
      int need = static_cast<int>(r.size()) + 4;
      for (const auto& v : bound) {
        for (const auto& w : bound) {
          if (need + static_cast<int>(v.size() + w.size()) == budget) {
            out.push_back(r + "(" + v + ", " + w + ")");
          }
        }
      }
    }
  }

  void emit_comparisons(int budget, const std::set<std::string>& bound,
                        std::vector<std::string>& out) {
    for (const auto& v : bound) {
      for (const auto& w : bound) {
        int base = static_cast<int>(v.size() + w.size());
        if (vocab_.has_binary("<") && base + 3 == budget) out.push_back(v + " < " + w);
        if (vocab_.has_binary("<'") && base + 4 == budget) out.push_back(v + " <' " + w);
        if (base + 3 == budget) out.push_back(v + " = " + w);
      }
    }
  }

  void emit_binary(int budget, int lreq, int rreq, const std::string& op,
                   std::set<std::string>& bound, std::vector<std::string>& out) {
    int op_len = static_cast<int>(op.size());
    for (int lb = 4; lb + op_len + 4 <= budget; ++lb) {
      std::vector<std::string> ls = gen(lb, lreq, bound);
      if (ls.empty()) continue;
      std::vector<std::string> rs = gen(budget - op_len - lb, rreq, bound);
      for (const auto& l : ls) {
        for (const auto& r : rs) out.push_back(l + op + r);
      }
    }
  }

  void emit_quantifiers(int budget, std::set<std::string>& bound,
                        std::vector<std::string>& out) {
    // "exists " and "forall " are both 7 characters; ". " adds 2 more.
    for (int name_len = 1; 9 + name_len + 4 <= budget; ++name_len) {
      std::string name(name_len, 'a');
      for_each_var_name(name, 0, [&](const std::string& v) {
        if (is_keyword(v)) return;
        bool fresh = bound.insert(v).second;
        std::vector<std::string> bodies = gen(budget - 9 - name_len, 0, bound);
        if (fresh) bound.erase(v);
        for (const auto& b : bodies) {
          out.push_back("exists " + v + ". " + b);
          out.push_back("forall " + v + ". " + b);
        }
      });
    }
  }

  template <typename Fn>
  void for_each_var_name(std::string& name, std::size_t pos, Fn&& fn) {
    if (pos == name.size()) {
      fn(name);
      return;
    }
    if (pos == 0) {
      for (char c = 'a'; c <= 'z'; ++c) {
        name[0] = c;
        for_each_var_name(name, 1, fn);
      }
    } else {
      for (const char* p = kVarTail; *p; ++p) {
        name[pos] = *p;
        for_each_var_name(name, pos + 1, fn);
      }
    }
  }

  Vocabulary vocab_;
  std::vector<std::string> ordered_;
  long long false_pos_ = -1;
  int next_len_ = 4;
  std::map<std::tuple<int, int, std::string>, std::vector<std::string>> memo_;
};

}  // namespace

Sentence enumerate_sentences(const Vocabulary& vocab, std::uint64_t index) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<SentenceEnumerator>> enumerators;
  std::string text;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto& e = enumerators[vocab.key()];
    if (!e) e = std::make_unique<SentenceEnumerator>(vocab);
    text = e->at(index);
  }
  return parse_sentence(text, vocab);
}

}  // namespace fowb
