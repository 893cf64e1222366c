#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fowb/errors.hpp"

namespace fowb {

// A finite relational vocabulary: unary and binary predicate names. Names are
// kept sorted and deduplicated, so equal vocabularies compare equal. Equality
// "=" is a logical built-in and never appears here.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> unary_syms, std::vector<std::string> binary_syms);

  const std::vector<std::string>& unary() const { return unary_; }
  const std::vector<std::string>& binary() const { return binary_; }
  bool has_unary(std::string_view name) const;
  bool has_binary(std::string_view name) const;
  bool includes(const Vocabulary& other) const;

  // Canonical one-line rendering; doubles as a cache key.
  std::string key() const;

  bool operator==(const Vocabulary&) const = default;

 private:
  std::vector<std::string> unary_;
  std::vector<std::string> binary_;
};

// Letters plus the single binary order symbol "<".
Vocabulary word_vocabulary(const std::vector<std::string>& letters);

enum class FormulaKind { True, False, Atom, Eq, Not, And, Or, Implies, Exists, Forall };

// Immutable first-order formula tree. Copies share structure; all accessors
// are cheap. Arity against a vocabulary is checked by the parser, not here.
class Formula {
 public:
  static Formula truth();
  static Formula falsity();
  static Formula atom(std::string rel, std::vector<std::string> args);
  static Formula eq(std::string lhs, std::string rhs);
  static Formula negation(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula implies(Formula l, Formula r);
  static Formula exists(std::string var, Formula body);
  static Formula forall(std::string var, Formula body);

  FormulaKind kind() const;
  const std::string& rel() const;                // Atom
  const std::vector<std::string>& args() const;  // Atom, Eq
  const std::string& var() const;                // Exists, Forall
  const Formula& left() const;                   // And, Or, Implies
  const Formula& right() const;
  const Formula& child() const;  // Not, quantifier body

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n);
  std::shared_ptr<const Node> node_;
};

// A formula with no free variables. The constructor enforces closedness.
struct Sentence {
  Formula formula;
  explicit Sentence(Formula f);
  bool operator==(const Sentence& o) const { return formula == o.formula; }
  bool operator!=(const Sentence& o) const { return !(*this == o); }
};

// Left-nested conjunction/disjunction of a nonempty list.
Formula conj_all(const std::vector<Formula>& parts);
Formula disj_all(const std::vector<Formula>& parts);

Formula parse_formula(std::string_view text, const Vocabulary& vocab);
Sentence parse_sentence(std::string_view text, const Vocabulary& vocab);

// Deterministic rendering; parse_formula(print_formula(f)) == f.
std::string print_formula(const Formula& f);
std::string print_sentence(const Sentence& s);

// Free variables in sorted order.
std::vector<std::string> free_vars(const Formula& f);

// Left-nested n-fold conjunction of phi with itself; n >= 1.
Sentence conjunction_power(const Sentence& phi, int n);

// Deterministic enumeration of all sentences over the vocabulary. Index 0 is
// "false"; the remainder follows printed-form shortlex order (length, then
// bytewise), skipping the duplicate of "false". Every sentence appears at
// exactly one index.
Sentence enumerate_sentences(const Vocabulary& vocab, std::uint64_t index);

// Relation symbols appearing in atoms of f (equality excluded).
void collect_symbols(const Formula& f, std::set<std::string>& unary_out,
                     std::set<std::string>& binary_out);
bool uses_only(const Formula& f, const Vocabulary& vocab);

}  // namespace fowb
