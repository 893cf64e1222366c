#include "fowb/fo.hpp"

#include <set>

#include "doctest.h"
#include "support/oracle.hpp"

using namespace fowb;

namespace {

const Vocabulary& zo_vocab() {
  static const Vocabulary v({"Z", "O"}, {"<"});
  return v;
}

}  // namespace

TEST_CASE("vocabulary is canonical and validated") {
  Vocabulary a({"O", "Z", "Z"}, {"<"});
  Vocabulary b({"Z", "O"}, {"<"});
  CHECK(a == b);
  CHECK(a.unary() == std::vector<std::string>{"O", "Z"});
  CHECK(a.has_binary("<"));
  CHECK_FALSE(a.has_unary("<"));
  CHECK_THROWS_AS(Vocabulary({"P"}, {"P"}), VocabularyError);
  CHECK_THROWS_AS(Vocabulary({"bad name"}, {}), VocabularyError);
  CHECK_THROWS_AS(Vocabulary({""}, {}), VocabularyError);
}

TEST_CASE("parsing the documented examples") {
  Formula f = parse_formula("forall y. !(y < y)", zo_vocab());
  REQUIRE(f.kind() == FormulaKind::Forall);
  CHECK(f.var() == "y");
  REQUIRE(f.child().kind() == FormulaKind::Not);
  const Formula& atom = f.child().child();
  REQUIRE(atom.kind() == FormulaKind::Atom);
  CHECK(atom.rel() == "<");
  CHECK(atom.args() == std::vector<std::string>{"y", "y"});

  Formula g = parse_formula("exists x. Z(x) & O(x)", zo_vocab());
  REQUIRE(g.kind() == FormulaKind::Exists);
  REQUIRE(g.child().kind() == FormulaKind::And);
  CHECK(g.child().left().rel() == "Z");
  CHECK(g.child().right().rel() == "O");
}

TEST_CASE("connective precedence and associativity") {
  CHECK(parse_formula("!true & false", zo_vocab()) ==
        Formula::conj(Formula::negation(Formula::truth()), Formula::falsity()));
  CHECK(parse_formula("true & false | true", zo_vocab()) ==
        Formula::disj(Formula::conj(Formula::truth(), Formula::falsity()), Formula::truth()));
  CHECK(parse_formula("true | false -> true", zo_vocab()) ==
        Formula::implies(Formula::disj(Formula::truth(), Formula::falsity()), Formula::truth()));
  CHECK(parse_formula("true -> false -> true", zo_vocab()) ==
        Formula::implies(Formula::truth(), Formula::implies(Formula::falsity(), Formula::truth())));
  // quantifier scope extends maximally right
  CHECK(parse_formula("exists x. Z(x) & O(x)", zo_vocab()) ==
        Formula::exists("x", Formula::conj(Formula::atom("Z", {"x"}), Formula::atom("O", {"x"}))));
  CHECK(parse_formula("true & (exists x. Z(x)) & false", zo_vocab()) ==
        Formula::conj(Formula::conj(Formula::truth(),
                                    Formula::exists("x", Formula::atom("Z", {"x"}))),
                      Formula::falsity()));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_formula("P(x, y)", Vocabulary({"P"}, {})), ArityError);
  CHECK_THROWS_AS(parse_formula("Q(x)", zo_vocab()), UnknownSymbolError);
  CHECK_THROWS_AS(parse_formula("forall x. x <", zo_vocab()), SyntaxError);
  CHECK_THROWS_AS(parse_formula("true &", zo_vocab()), SyntaxError);
  CHECK_THROWS_AS(parse_formula("true true", zo_vocab()), SyntaxError);
  try {
    parse_formula("forall x.\n  Z(x) &", zo_vocab());
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
    CHECK(e.column == 9);
  }
  try {
    parse_formula("exists x. W(x)", zo_vocab());
    FAIL("expected an unknown symbol error");
  } catch (const UnknownSymbolError& e) {
    CHECK(e.line == 1);
    CHECK(e.column == 11);
  }
}

TEST_CASE("printing the documented examples") {
  Formula f = Formula::forall(
      "y", Formula::negation(Formula::atom("<", {"y", "y"})));
  CHECK(print_formula(f) == "forall y. !(y < y)");
  CHECK(print_formula(Formula::conj(Formula::truth(), Formula::falsity())) == "true & false");
  // a quantifier on the left of a connective needs parentheses
  Formula g = Formula::conj(Formula::exists("x", Formula::atom("Z", {"x"})), Formula::truth());
  CHECK(print_formula(g) == "(exists x. Z(x)) & true");
  CHECK(parse_formula(print_formula(g), zo_vocab()) == g);
}

TEST_CASE("round trip on random formulas") {
  testing::FormulaGen gen(zo_vocab(), {"x", "y", "z"}, 20240811);
  for (int i = 0; i < 500; ++i) {
    Formula f = gen.formula(6);
    CAPTURE(print_formula(f));
    CHECK(parse_formula(print_formula(f), zo_vocab()) == f);
  }
}

TEST_CASE("free variables") {
  CHECK(free_vars(Formula::atom("<", {"x", "y"})) == std::vector<std::string>{"x", "y"});
  CHECK(free_vars(Formula::exists("x", Formula::atom("<", {"x", "y"}))) ==
        std::vector<std::string>{"y"});
  CHECK(free_vars(parse_formula("forall x. forall y. x < y", zo_vocab())).empty());
  // shadowing: the inner binder hides the outer one
  Formula shadow = Formula::exists(
      "x", Formula::conj(Formula::atom("Z", {"x"}),
                         Formula::exists("x", Formula::atom("O", {"x"}))));
  CHECK(free_vars(shadow).empty());
  CHECK_THROWS_AS(Sentence(Formula::atom("Z", {"x"})), std::invalid_argument);
}

TEST_CASE("conjunction power") {
  Sentence phi = parse_sentence("exists x. Z(x)", zo_vocab());
  CHECK(conjunction_power(phi, 1) == phi);
  Sentence cubed = conjunction_power(phi, 3);
  CHECK(cubed.formula == Formula::conj(Formula::conj(phi.formula, phi.formula), phi.formula));
  CHECK(parse_formula(print_sentence(conjunction_power(phi, 2)), zo_vocab()) ==
        Formula::conj(phi.formula, phi.formula));
  CHECK_THROWS_AS(conjunction_power(phi, 0), std::invalid_argument);
  for (int n = 1; n <= 4; ++n) {
    CHECK(free_vars(conjunction_power(phi, n).formula) == free_vars(phi.formula));
  }
}

TEST_CASE("shortest sentences agree with raw grammar-string enumeration") {
  // Within five characters no quantifier prefix fits ("exists x. " alone is
  // ten characters), so no variable can be bound and no atom over variables
  // can appear; candidate strings only need the characters of true, false
  // and '!'. Enumerate those strings and keep the ones that parse as
  // sentences.
  const std::string charset = "truefals!";
  std::set<std::string> found;
  std::string candidate;
  auto search = [&](auto&& self, int remaining) -> void {
    if (!candidate.empty()) {
      try {
        parse_sentence(candidate, zo_vocab());
        found.insert(candidate);
      } catch (const std::exception&) {
      }
    }
    if (remaining == 0) return;
    for (char c : charset) {
      candidate.push_back(c);
      self(self, remaining - 1);
      candidate.pop_back();
    }
  };
  search(search, 5);
  CHECK(found == std::set<std::string>{"true", "false", "!true"});

  CHECK(print_sentence(enumerate_sentences(zo_vocab(), 0)) == "false");
  CHECK(print_sentence(enumerate_sentences(zo_vocab(), 1)) == "true");
  CHECK(print_sentence(enumerate_sentences(zo_vocab(), 2)) == "!true");

  // index 0 does not depend on the vocabulary
  Vocabulary grid({"E", "O", "Z"}, {"<", "<'", "P_zero"});
  CHECK(print_sentence(enumerate_sentences(grid, 0)) == "false");
}

TEST_CASE("enumerated sentences parse back and stay in order") {
  std::string prev;
  for (std::uint64_t i = 1; i < 1000; ++i) {
    Sentence s = enumerate_sentences(zo_vocab(), i);
    std::string text = print_sentence(s);
    CHECK(parse_sentence(text, zo_vocab()) == s);
    if (i > 1) {
      bool shortlex = prev.size() < text.size() || (prev.size() == text.size() && prev < text);
      CHECK(shortlex);
    }
    prev = text;
  }
}

TEST_CASE("enumeration has no duplicates among the first 10000") {
  std::set<std::string> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    seen.insert(print_sentence(enumerate_sentences(zo_vocab(), i)));
  }
  CHECK(seen.size() == 10000);
}

TEST_CASE("symbol collection") {
  Formula f = parse_formula("exists x. Z(x) & x < x & x = x", zo_vocab());
  std::set<std::string> u, b;
  collect_symbols(f, u, b);
  CHECK(u == std::set<std::string>{"Z"});
  CHECK(b == std::set<std::string>{"<"});
  CHECK(uses_only(f, zo_vocab()));
  CHECK_FALSE(uses_only(f, Vocabulary({"Z"}, {})));
}
