#include "fowb/structures.hpp"

#include <algorithm>
#include <sstream>

namespace fowb {

Vocabulary Structure::vocabulary() const {
  std::vector<std::string> u, b;
  for (const auto& [name, _] : unary) u.push_back(name);
  for (const auto& [name, _] : binary) b.push_back(name);
  return Vocabulary(std::move(u), std::move(b));
}

namespace {

int lookup(const Assignment& env, const std::string& v) {
  auto it = env.find(v);
  if (it == env.end()) throw EvalError("unbound variable '" + v + "'");
  return it->second;
}

bool eval_rec(const Formula& f, const Structure& s, Assignment& env) {
  switch (f.kind()) {
    case FormulaKind::True:
      return true;
    case FormulaKind::False:
      return false;
    case FormulaKind::Atom: {
      const auto& args = f.args();
      if (args.size() == 1) {
        auto it = s.unary.find(f.rel());
        if (it == s.unary.end()) {
          throw EvalError("structure has no unary relation '" + f.rel() + "'");
        }
        return it->second.count(lookup(env, args[0])) > 0;
      }
      auto it = s.binary.find(f.rel());
      if (it == s.binary.end()) {
        throw EvalError("structure has no binary relation '" + f.rel() + "'");
      }
      return it->second.count({lookup(env, args[0]), lookup(env, args[1])}) > 0;
    }
    case FormulaKind::Eq:
      return lookup(env, f.args()[0]) == lookup(env, f.args()[1]);
    case FormulaKind::Not:
      return !eval_rec(f.child(), s, env);
    case FormulaKind::And:
      return eval_rec(f.left(), s, env) && eval_rec(f.right(), s, env);
    case FormulaKind::Or:
      return eval_rec(f.left(), s, env) || eval_rec(f.right(), s, env);
    case FormulaKind::Implies:
      return !eval_rec(f.left(), s, env) || eval_rec(f.right(), s, env);
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool universal = f.kind() == FormulaKind::Forall;
      auto old = env.find(f.var());
      bool had_old = old != env.end();
      int old_val = had_old ? old->second : 0;
      bool result = universal;
      for (int e = 0; e < s.size; ++e) {
        env[f.var()] = e;
        bool v = eval_rec(f.child(), s, env);
        if (v != universal) {
          result = !universal;
          break;
        }
      }
      if (had_old) {
        env[f.var()] = old_val;
      } else {
        env.erase(f.var());
      }
      return result;
    }
  }
  return false;
}

}  // namespace

bool eval(const Formula& f, const Structure& s, const Assignment& a) {
  if (s.size <= 0) throw EvalError("structure has an empty domain");
  for (const auto& [v, e] : a) {
    if (e < 0 || e >= s.size) throw EvalError("assignment binds '" + v + "' outside the domain");
  }
  Assignment env = a;
  return eval_rec(f, s, env);
}

bool eval(const Sentence& s, const Structure& st) { return eval(s.formula, st, {}); }

bool is_word(const Structure& s) {
  if (s.binary.size() != 1 || !s.binary.count("<")) {
    throw VocabularyError("a word structure has exactly one binary relation '<'");
  }
  const auto& less = s.binary.at("<");
  for (int i = 0; i < s.size; ++i) {
    if (less.count({i, i})) return false;
  }
  for (int i = 0; i < s.size; ++i) {
    for (int j = 0; j < s.size; ++j) {
      if (i == j) continue;
      bool ij = less.count({i, j}) > 0;
      bool ji = less.count({j, i}) > 0;
      if (ij == ji) return false;  // totality and antisymmetry
    }
  }
  for (const auto& [i, j] : less) {
    for (int k = 0; k < s.size; ++k) {
      if (less.count({j, k}) && !less.count({i, k})) return false;
    }
  }
  for (int e = 0; e < s.size; ++e) {
    int hits = 0;
    for (const auto& [_, members] : s.unary) hits += members.count(e);
    if (hits != 1) return false;
  }
  return true;
}

Structure word_to_structure(const Word& w, const Vocabulary& vocab) {
  if (w.letters.empty()) throw std::invalid_argument("empty words are rejected: domains are nonempty");
  if (vocab.binary() != std::vector<std::string>{"<"}) {
    throw VocabularyError("word vocabulary must have binary symbols exactly {\"<\"}");
  }
  Structure s;
  s.size = static_cast<int>(w.letters.size());
  for (const auto& p : vocab.unary()) s.unary[p] = {};
  for (int i = 0; i < s.size; ++i) {
    const auto& letter = w.letters[i];
    if (!vocab.has_unary(letter)) {
      throw VocabularyError("letter '" + letter + "' is not in the vocabulary");
    }
    s.unary[letter].insert(i);
  }
  auto& less = s.binary["<"];
  for (int i = 0; i < s.size; ++i) {
    for (int j = i + 1; j < s.size; ++j) less.insert({i, j});
  }
  return s;
}

Word word_of_structure(const Structure& s) {
  if (!is_word(s)) throw VocabularyError("structure is not a word");
  const auto& less = s.binary.at("<");
  // position = number of smaller elements
  std::vector<int> by_position(s.size);
  for (int e = 0; e < s.size; ++e) {
    int pos = 0;
    for (int f = 0; f < s.size; ++f) {
      if (less.count({f, e})) ++pos;
    }
    by_position[pos] = e;
  }
  Word w;
  for (int e : by_position) {
    for (const auto& [name, members] : s.unary) {
      if (members.count(e)) {
        w.letters.push_back(name);
        break;
      }
    }
  }
  return w;
}

Structure restrict_vocabulary(const Structure& s, const Vocabulary& vocab) {
  Structure out;
  out.size = s.size;
  for (const auto& n : vocab.unary()) {
    auto it = s.unary.find(n);
    if (it == s.unary.end()) throw VocabularyError("structure has no unary relation '" + n + "'");
    out.unary[n] = it->second;
  }
  for (const auto& n : vocab.binary()) {
    auto it = s.binary.find(n);
    if (it == s.binary.end()) throw VocabularyError("structure has no binary relation '" + n + "'");
    out.binary[n] = it->second;
  }
  return out;
}

Formula linear_order_axioms(const std::string& order_symbol) {
  auto lt = [&](const std::string& a, const std::string& b) {
    return Formula::atom(order_symbol, {a, b});
  };
  Formula irreflexive = Formula::forall("x", Formula::negation(lt("x", "x")));
  Formula transitive = Formula::forall(
      "x", Formula::forall(
               "y", Formula::forall("z", Formula::implies(Formula::conj(lt("x", "y"), lt("y", "z")),
                                                          lt("x", "z")))));
  Formula total = Formula::forall(
      "x", Formula::forall("y", disj_all({lt("x", "y"), lt("y", "x"), Formula::eq("x", "y")})));
  return conj_all({irreflexive, transitive, total});
}

Sentence word_axioms(const Vocabulary& vocab) {
  if (vocab.binary() != std::vector<std::string>{"<"}) {
    throw VocabularyError("word vocabulary must have binary symbols exactly {\"<\"}");
  }
  if (vocab.unary().empty()) throw VocabularyError("word vocabulary needs at least one letter");
  std::vector<Formula> parts;
  parts.push_back(linear_order_axioms("<"));
  std::vector<Formula> letters;
  for (const auto& p : vocab.unary()) letters.push_back(Formula::atom(p, {"x"}));
  parts.push_back(Formula::forall("x", disj_all(letters)));
  std::vector<Formula> exclusive;
  for (std::size_t i = 0; i < vocab.unary().size(); ++i) {
    for (std::size_t j = i + 1; j < vocab.unary().size(); ++j) {
      exclusive.push_back(Formula::negation(Formula::conj(
          Formula::atom(vocab.unary()[i], {"x"}), Formula::atom(vocab.unary()[j], {"x"}))));
    }
  }
  if (!exclusive.empty()) parts.push_back(Formula::forall("x", conj_all(exclusive)));
  return Sentence(conj_all(parts));
}

Structure apply_permutation(const Structure& s, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != s.size) {
    throw std::invalid_argument("permutation size mismatch");
  }
  Structure out;
  out.size = s.size;
  for (const auto& [name, members] : s.unary) {
    auto& dst = out.unary[name];
    for (int e : members) dst.insert(perm[e]);
  }
  for (const auto& [name, pairs] : s.binary) {
    auto& dst = out.binary[name];
    for (const auto& [i, j] : pairs) dst.insert({perm[i], perm[j]});
  }
  return out;
}

std::string structure_to_text(const Structure& s) {
  std::ostringstream out;
  out << "size " << s.size << "\n";
  for (const auto& [name, members] : s.unary) {
    out << name << ":";
    for (int e : members) out << " " << e;
    out << "\n";
  }
  for (const auto& [name, pairs] : s.binary) {
    out << name << ":";
    for (const auto& [i, j] : pairs) out << " (" << i << "," << j << ")";
    out << "\n";
  }
  return out.str();
}

namespace {

Structure from_text_impl(std::string_view text, const Vocabulary* vocab) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  Structure s;
  bool have_size = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!have_size) {
      std::istringstream ls(line);
      std::string kw;
      if (!(ls >> kw >> s.size) || kw != "size" || s.size <= 0) {
        throw ParseError(line_no, 1, "expected 'size N' with N >= 1");
      }
      have_size = true;
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(line_no, 1, "expected 'NAME: ...'");
    std::string name = line.substr(0, colon);
    std::istringstream items(line.substr(colon + 1));
    std::string item;
    bool saw_pair = false;
    bool saw_elem = false;
    std::set<int> members;
    std::set<std::pair<int, int>> pairs;
    while (items >> item) {
      if (item.front() == '(') {
        int i, j;
        char l, comma, r;
        std::istringstream ps(item);
        if (!(ps >> l >> i >> comma >> j >> r) || l != '(' || comma != ',' || r != ')') {
          throw ParseError(line_no, 1, "bad pair '" + item + "'");
        }
        if (i < 0 || i >= s.size || j < 0 || j >= s.size) {
          throw ParseError(line_no, 1, "element out of range in '" + item + "'");
        }
        pairs.insert({i, j});
        saw_pair = true;
      } else {
        int e;
        std::istringstream es(item);
        if (!(es >> e)) throw ParseError(line_no, 1, "bad element '" + item + "'");
        if (e < 0 || e >= s.size) {
          throw ParseError(line_no, 1, "element out of range: " + item);
        }
        members.insert(e);
        saw_elem = true;
      }
    }
    if (saw_pair && saw_elem) throw ParseError(line_no, 1, "mixed unary and binary entries");
    bool binary;
    if (vocab != nullptr) {
      if (vocab->has_unary(name)) {
        binary = false;
      } else if (vocab->has_binary(name)) {
        binary = true;
      } else {
        throw ParseError(line_no, 1, "relation '" + name + "' is not in the vocabulary");
      }
      if ((binary && saw_elem) || (!binary && saw_pair)) {
        throw ParseError(line_no, 1, "arity of '" + name + "' does not match the vocabulary");
      }
    } else {
      binary = saw_pair;
    }
    if (binary) {
      s.binary[name] = std::move(pairs);
    } else {
      s.unary[name] = std::move(members);
    }
  }
  if (!have_size) throw ParseError(1, 1, "missing 'size N' header");
  if (vocab != nullptr) {
    for (const auto& n : vocab->unary()) s.unary.emplace(n, std::set<int>{});
    for (const auto& n : vocab->binary()) s.binary.emplace(n, std::set<std::pair<int, int>>{});
  }
  return s;
}

}  // namespace

Structure structure_from_text(std::string_view text) { return from_text_impl(text, nullptr); }

Structure structure_from_text(std::string_view text, const Vocabulary& vocab) {
  return from_text_impl(text, &vocab);
}

}  // namespace fowb
