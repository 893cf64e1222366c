#include "fowb/automata.hpp"

#include <functional>

#include "doctest.h"
#include "support/corpus.hpp"
#include "support/oracle.hpp"

using namespace fowb;

namespace {

const std::vector<std::string> kZO = {"Z", "O"};
const std::vector<std::string> kZOE = {"Z", "O", "E"};

const Vocabulary& zo_vocab() {
  static const Vocabulary v({"Z", "O"}, {"<"});
  return v;
}

std::vector<int> encode(const Nfa& a, const Word& w) {
  std::vector<int> letters;
  for (const auto& letter : w.letters) {
    int idx = -1;
    for (std::size_t i = 0; i < a.alphabet.base.size(); ++i) {
      if (a.alphabet.base[i] == letter) idx = static_cast<int>(i);
    }
    REQUIRE(idx >= 0);
    letters.push_back(a.alphabet.make_letter(idx, 0));
  }
  return letters;
}

void for_each_word(const std::vector<std::string>& letters, int max_len,
                   const std::function<void(const Word&)>& fn) {
  std::function<void(Word&)> rec = [&](Word& w) {
    if (!w.letters.empty()) fn(w);
    if (static_cast<int>(w.letters.size()) == max_len) return;
    for (const auto& l : letters) {
      w.letters.push_back(l);
      rec(w);
      w.letters.pop_back();
    }
  };
  Word w;
  rec(w);
}

}  // namespace

TEST_CASE("compiled automata match eval on every short word") {
  Vocabulary vocab = word_vocabulary(kZO);
  for (const auto& text : testing::corpus_sentences()) {
    Sentence s = parse_sentence(text, vocab);
    Nfa a = formula_to_nfa(s.formula, kZO, {});
    CAPTURE(text);
    for_each_word(kZO, 5, [&](const Word& w) {
      Structure st = word_to_structure(w, vocab);
      CHECK(nfa_accepts(a, encode(a, w)) == eval(s, st));
    });
  }
}

TEST_CASE("atoms over tracks") {
  // x < y accepts exactly the annotated words where x's mark precedes y's
  Formula f = Formula::atom("<", {"x", "y"});
  Nfa a = formula_to_nfa(f, kZO, {"x", "y"});
  auto letter = [&](int base, bool x, bool y) {
    return a.alphabet.make_letter(base, (x ? 1u : 0u) | (y ? 2u : 0u));
  };
  CHECK(nfa_accepts(a, {letter(0, true, false), letter(1, false, true)}));
  CHECK(nfa_accepts(a, {letter(0, true, false), letter(0, false, false), letter(0, false, true)}));
  CHECK_FALSE(nfa_accepts(a, {letter(0, false, true), letter(1, true, false)}));
  CHECK_FALSE(nfa_accepts(a, {letter(0, true, true)}));   // same position
  CHECK_FALSE(nfa_accepts(a, {letter(0, true, false)}));  // y never marked
  CHECK_FALSE(nfa_accepts(a, {letter(0, true, false), letter(1, false, true),
                              letter(1, false, true)}));  // y marked twice

  Nfa empty = formula_to_nfa(Formula::falsity(), kZO, {});
  CHECK_FALSE(is_empty_with_witness(empty).has_value());
}

TEST_CASE("product intersection") {
  Nfa some_o = formula_to_nfa(parse_formula("exists x. O(x)", zo_vocab()), kZO, {});
  Nfa universal = formula_to_nfa(Formula::truth(), kZO, {});
  Nfa empty = formula_to_nfa(Formula::falsity(), kZO, {});

  Nfa with_universal = product_intersect(some_o, universal);
  Nfa with_empty = product_intersect(some_o, empty);
  CHECK_FALSE(is_empty_with_witness(with_empty).has_value());

  testing::FormulaGen gen(zo_vocab(), {"x"}, 5);
  Nfa all_z = formula_to_nfa(parse_formula("forall x. Z(x)", zo_vocab()), kZO, {});
  Nfa both = product_intersect(some_o, all_z);
  for (int trial = 0; trial < 100; ++trial) {
    Word w;
    int len = 1 + static_cast<int>(gen.rng()() % 6);
    for (int i = 0; i < len; ++i) w.letters.push_back(kZO[gen.rng()() % 2]);
    auto seq = encode(some_o, w);
    CHECK(nfa_accepts(with_universal, seq) == nfa_accepts(some_o, seq));
    CHECK(nfa_accepts(both, seq) == (nfa_accepts(some_o, seq) && nfa_accepts(all_z, seq)));
  }

  Nfa other_alphabet = formula_to_nfa(Formula::truth(), kZOE, {});
  CHECK_THROWS_AS(product_intersect(some_o, other_alphabet), VocabularyError);
}

TEST_CASE("determinize and complement") {
  Nfa some_o = formula_to_nfa(parse_formula("exists x. O(x)", zo_vocab()), kZO, {});
  Nfa not_some_o = determinize_complement(some_o);
  Nfa back = determinize_complement(not_some_o);
  testing::FormulaGen gen(zo_vocab(), {"x"}, 17);
  for (int trial = 0; trial < 100; ++trial) {
    Word w;
    int len = static_cast<int>(gen.rng()() % 7);
    for (int i = 0; i < len; ++i) w.letters.push_back(kZO[gen.rng()() % 2]);
    auto seq = encode(some_o, w);
    CHECK(nfa_accepts(not_some_o, seq) == !nfa_accepts(some_o, seq));
    CHECK(nfa_accepts(back, seq) == nfa_accepts(some_o, seq));
  }
  // complement of the empty language is universal
  Nfa empty = formula_to_nfa(Formula::falsity(), kZO, {});
  Nfa full = determinize_complement(empty);
  CHECK(nfa_accepts(full, {}));
  CHECK(nfa_accepts(full, {0, 1, 0}));
  // intersecting with the complement leaves nothing
  CHECK_FALSE(is_empty_with_witness(product_intersect(some_o, not_some_o)).has_value());

  CHECK_THROWS_AS(determinize_complement(some_o, 1), ResourceError);
}

TEST_CASE("projection is existential quantification") {
  Nfa marked = formula_to_nfa(Formula::atom("O", {"x"}), kZO, {"x"});
  Nfa projected = project_exists(marked, "x");
  Nfa direct = formula_to_nfa(parse_formula("exists x. O(x)", zo_vocab()), kZO, {});
  CHECK(nfa_language_equal(projected, direct));

  Nfa empty = formula_to_nfa(Formula::falsity(), kZO, {"x"});
  CHECK_FALSE(is_empty_with_witness(project_exists(empty, "x")).has_value());

  // projecting two tracks commutes
  Formula f = Formula::conj(Formula::atom("Z", {"x"}), Formula::atom("O", {"y"}));
  Nfa a = formula_to_nfa(f, kZO, {"x", "y"});
  Nfa xy = project_exists(project_exists(a, "x"), "y");
  Nfa yx = project_exists(project_exists(a, "y"), "x");
  CHECK(nfa_language_equal(xy, yx));

  CHECK_THROWS_AS(project_exists(direct, "zz"), VocabularyError);
}

TEST_CASE("automata with tracks only accept single-mark annotations") {
  Formula parts = Formula::conj(Formula::atom("Z", {"x"}),
                                Formula::implies(Formula::atom("<", {"x", "y"}),
                                                 Formula::atom("O", {"y"})));
  Nfa a = formula_to_nfa(parts, kZO, {"x", "y"});
  // accepted strings sampled via shortest witnesses at growing lengths
  for (int min_len = 0; min_len <= 4; ++min_len) {
    auto wit = is_empty_with_witness(a, min_len);
    REQUIRE(wit.has_value());
    unsigned seen_x = 0, seen_y = 0;
    for (int letter : *wit) {
      unsigned bits = a.alphabet.bits_of(letter);
      seen_x += bits & 1u;
      seen_y += (bits >> 1) & 1u;
    }
    CHECK(seen_x == 1);
    CHECK(seen_y == 1);
  }
}

TEST_CASE("emptiness with witness") {
  CHECK_FALSE(
      is_empty_with_witness(formula_to_nfa(Formula::falsity(), kZO, {})).has_value());

  Nfa some_o = formula_to_nfa(parse_formula("exists x. O(x)", zo_vocab()), kZO, {});
  auto wit = is_empty_with_witness(some_o, 1);
  REQUIRE(wit.has_value());
  CHECK(wit->size() == 1);
  CHECK(some_o.alphabet.base[some_o.alphabet.base_of((*wit)[0])] == "O");

  // minimality: no accepted sequence is shorter than the witness
  Sentence needs_three = parse_sentence("exists x. exists y. exists z. x < y & y < z", zo_vocab());
  Nfa a = formula_to_nfa(needs_three.formula, kZO, {});
  auto wit3 = is_empty_with_witness(a, 1);
  REQUIRE(wit3.has_value());
  CHECK(wit3->size() == 3);
  for_each_word(kZO, 2, [&](const Word& w) { CHECK_FALSE(nfa_accepts(a, encode(a, w))); });
}

TEST_CASE("word satisfiability") {
  CHECK_FALSE(word_sat(parse_sentence("exists x. Z(x) & O(x)", zo_vocab()), kZO).has_value());

  auto any = word_sat(parse_sentence("true", zo_vocab()), kZO);
  REQUIRE(any.has_value());
  CHECK(any->letters.size() == 1);  // the empty word is not a structure

  auto witness = word_sat(parse_sentence("exists x. O(x)", zo_vocab()), kZO);
  REQUIRE(witness.has_value());
  CHECK(witness->letters == std::vector<std::string>{"O"});

  // every witness satisfies its sentence
  Vocabulary vocab = word_vocabulary(kZO);
  for (const auto& text : testing::corpus_sentences()) {
    Sentence s = parse_sentence(text, vocab);
    auto w = word_sat(s, kZO);
    if (w) CHECK(eval(s, word_to_structure(*w, vocab)));
  }

  Sentence grid = Sentence(Formula::forall(
      "x", Formula::forall("y", Formula::implies(Formula::atom("<'", {"x", "y"}),
                                                 Formula::truth()))));
  CHECK_THROWS_AS(word_sat(grid, kZO), VocabularyError);
}

TEST_CASE("word equivalence") {
  Vocabulary vocab = word_vocabulary(kZO);
  Sentence s = parse_sentence("exists x. O(x)", vocab);
  CHECK_FALSE(word_equiv(s, s, kZO).has_value());

  auto diff = word_equiv(s, parse_sentence("true", vocab), kZO);
  REQUIRE(diff.has_value());
  CHECK(diff->letters == std::vector<std::string>{"Z"});

  // distinguishing words really distinguish
  Structure st = word_to_structure(*diff, vocab);
  CHECK(eval(parse_sentence("true", vocab), st) != eval(s, st));

  // conjunction is idempotent over words
  Sentence twice = conjunction_power(s, 2);
  CHECK_FALSE(word_equiv(s, twice, kZO).has_value());
}

TEST_CASE("shadowed bound variables compile correctly") {
  // the inner binder reuses x; compilation renames it apart
  Vocabulary vocab = word_vocabulary(kZO);
  Sentence s = parse_sentence("exists x. Z(x) & (exists x. O(x) & forall y. !(y < x))", vocab);
  Nfa a = formula_to_nfa(s.formula, kZO, {});
  for_each_word(kZO, 4, [&](const Word& w) {
    std::vector<int> seq;
    for (const auto& letter : w.letters) seq.push_back(letter == "Z" ? 0 : 1);
    CHECK(nfa_accepts(a, seq) == eval(s, word_to_structure(w, vocab)));
  });
}

TEST_CASE("automaton dump format") {
  Nfa a = formula_to_nfa(Formula::truth(), kZO, {});
  std::string dump = dump_nfa(a);
  CHECK(dump ==
        "states 1\n"
        "initial: 0\n"
        "accepting: 0\n"
        "trans: 0 --(Z|)--> 0\n"
        "trans: 0 --(O|)--> 0\n");
}
