#include "fowb/reduction.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "doctest.h"
#include "fowb/automata.hpp"
#include "fowb/solver.hpp"
#include "support/oracle.hpp"

using namespace fowb;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

TmSpec load_machine(const std::string& name) {
  return parse_tm(read_file(std::string(MACHINES_DIR) + "/" + name));
}

const Vocabulary& word_vocab() {
  static const Vocabulary v({"E", "O", "Z"}, {"<"});
  return v;
}

void for_each_word(int max_len, const std::function<void(const Word&)>& fn) {
  std::function<void(Word&)> rec = [&](Word& w) {
    if (!w.letters.empty()) fn(w);
    if (static_cast<int>(w.letters.size()) == max_len) return;
    for (const auto& l : kGridLetters) {
      w.letters.push_back(l);
      rec(w);
      w.letters.pop_back();
    }
  };
  Word w;
  rec(w);
}

// the word spells the input (Z for 0, O for 1) followed by blanks only
bool spells_input_then_blanks(const Word& w, std::string_view input) {
  if (w.letters.size() < input.size()) return false;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i < input.size()) {
      const char* want = input[i] == '0' ? "Z" : "O";
      if (w.letters[i] != want) return false;
    } else if (w.letters[i] != "E") {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("machine files parse and validate") {
  TmSpec m = load_machine("write1.tm");
  CHECK(m.states == std::vector<std::string>{"q0", "h"});
  CHECK(m.start == "q0");
  CHECK(m.halting == std::set<std::string>{"h"});
  CHECK(m.transitions.size() == 3);
  CHECK(m.transitions.at({"q0", TapeSym::Blank}) == TmRule{"h", TapeSym::One, Move::Stay});

  const char* base =
      "states: q0 h\n"
      "start: q0\n"
      "halt: h\n";
  CHECK_THROWS_AS(parse_tm(std::string(base) +
                           "trans: q0 0 -> h 0 S\n"
                           "trans: q0 0 -> q0 0 S\n"
                           "trans: q0 1 -> h 1 S\n"
                           "trans: q0 _ -> h _ S\n"),
                  ParseError);  // two rules for (q0, 0)
  CHECK_THROWS_AS(parse_tm(std::string(base) +
                           "trans: q0 0 -> h 0 S\n"
                           "trans: q0 1 -> h 1 S\n"
                           "trans: q0 _ -> h _ S\n"
                           "trans: h 0 -> h 0 S\n"),
                  VocabularyError);  // halting state with a rule
  CHECK_THROWS_AS(parse_tm(std::string(base) +
                           "trans: q0 0 -> h 0 S\n"
                           "trans: q0 1 -> h 1 S\n"),
                  VocabularyError);  // q0 lacks a blank rule
  CHECK_THROWS_AS(parse_tm(std::string(base) +
                           "trans: q0 0 -> q9 0 S\n"
                           "trans: q0 1 -> h 1 S\n"
                           "trans: q0 _ -> h _ S\n"),
                  VocabularyError);  // undeclared target state
  CHECK_THROWS_AS(parse_tm("states: q0 h\nstart: q0\n"), ParseError);
}

TEST_CASE("simulation oracle") {
  auto write1 = simulate(load_machine("write1.tm"), "", 10);
  REQUIRE(write1.has_value());
  CHECK(write1->steps == 1);
  CHECK(write1->cells_used == 1);
  REQUIRE(write1->trace.configs.size() == 2);
  CHECK(write1->trace.configs[0].state == "q0");
  CHECK(write1->trace.configs[1].state == "h");
  CHECK(write1->trace.configs[1].tape == std::vector<TapeSym>{TapeSym::One});

  CHECK_FALSE(simulate(load_machine("loop.tm"), "", 100).has_value());

  auto scan = simulate(load_machine("scanright.tm"), "01", 100);
  REQUIRE(scan.has_value());
  CHECK(scan->steps == 3);
  CHECK(scan->cells_used == 3);
  CHECK(scan->trace.configs.size() == static_cast<std::size_t>(scan->steps) + 1);
  auto scan10 = simulate(load_machine("scanright.tm"), "10", 100);
  REQUIRE(scan10.has_value());
  CHECK(scan10->steps == 3);
  CHECK(scan10->cells_used == 3);

  auto busy = simulate(load_machine("busy3.tm"), "", 100);
  REQUIRE(busy.has_value());
  CHECK(busy->steps >= 5);
  CHECK(busy->steps == 5);
  CHECK(busy->cells_used == 3);

  CHECK_THROWS_AS(simulate(load_machine("write1.tm"), "012", 10), std::invalid_argument);
}

TEST_CASE("input word sentence characterizes input-then-blanks") {
  for (std::string_view input : {"", "0", "1", "01", "110"}) {
    Sentence s = input_word_sentence(input);
    CHECK(free_vars(s.formula).empty());
    // round trip through the printer
    CHECK(parse_sentence(print_sentence(s), word_vocab()) == s);
    for_each_word(4, [&](const Word& w) {
      Structure st = word_to_structure(w, word_vocab());
      CAPTURE(input);
      CHECK(eval(s, st) == spells_input_then_blanks(w, input));
    });
  }
  CHECK(input_word_sentence("") ==
        Sentence(Formula::forall("y", Formula::atom("E", {"y"}))));
  CHECK_THROWS_AS(input_word_sentence("2"), std::invalid_argument);
}

TEST_CASE("input word sentences under the word decision procedure") {
  Sentence s = input_word_sentence("01");
  auto witness = word_sat(s, kGridLetters);
  REQUIRE(witness.has_value());
  CHECK(witness->letters == std::vector<std::string>{"Z", "O"});
  CHECK(eval(s, word_to_structure(*witness, word_vocab())));

  // conjunction is idempotent over words
  CHECK_FALSE(word_equiv(s, conjunction_power(s, 2), kGridLetters).has_value());

  // blanks-only inputs are satisfied by a single blank
  auto blank = word_sat(input_word_sentence(""), kGridLetters);
  REQUIRE(blank.has_value());
  CHECK(blank->letters == std::vector<std::string>{"E"});
}

TEST_CASE("minimum grid size comes from the oracle") {
  CHECK(minimum_grid_size(load_machine("write1.tm"), "", 100) == 2);
  CHECK(minimum_grid_size(load_machine("scanright.tm"), "01", 100) == 4);
  CHECK(minimum_grid_size(load_machine("busy3.tm"), "", 100) == 6);
  CHECK_FALSE(minimum_grid_size(load_machine("loop.tm"), "", 100).has_value());
}

TEST_CASE("grid vocabulary shape") {
  TmSpec m = load_machine("write1.tm");
  Vocabulary v = grid_vocabulary(m);
  CHECK(v.unary() == std::vector<std::string>{"E", "O", "Z"});
  for (const char* rel : {"<", "<'", "P_zero", "P_one", "P_empty", "H_q0", "H_h"}) {
    CHECK(v.has_binary(rel));
  }
  Sentence pair = reduction_sentence(m, "");
  CHECK(uses_only(pair.formula, v));
  // the sentence survives a print/parse round trip over its vocabulary
  CHECK(parse_sentence(print_sentence(pair), v) == pair);
}

TEST_CASE("models of the run sentence decode to the oracle trace") {
  TmSpec m = load_machine("write1.tm");
  Vocabulary vocab = grid_vocabulary(m);
  Sentence pair = reduction_sentence(m, "");

  CHECK_FALSE(find_model(pair, 1, vocab).has_value());
  auto model = find_model(pair, 2, vocab);
  REQUIRE(model.has_value());
  CHECK(eval(pair, *model));

  auto sim = simulate(m, "", 10);
  REQUIRE(sim.has_value());
  RunTrace decoded = decode_run(*model, m);
  CHECK(same_run(decoded, sim->trace));

  // halting persistence admits a strictly larger grid
  auto bigger = find_model(pair, 3, vocab);
  REQUIRE(bigger.has_value());
  CHECK(same_run(decode_run(*bigger, m), sim->trace));

  // the word part of any model is a word
  Structure word_part = restrict_vocabulary(*model, word_vocab());
  CHECK(is_word(word_part));

  // decoding is isomorphism invariant
  testing::FormulaGen gen(vocab, {"x"}, 3);
  for (int trial = 0; trial < 5; ++trial) {
    Structure shuffled = apply_permutation(*model, gen.permutation(model->size));
    CHECK(same_run(decode_run(shuffled, m), sim->trace));
  }

  // a structure that fails the run sentence is rejected
  Structure junk = *model;
  junk.binary["H_q0"].clear();
  CHECK_THROWS_AS(decode_run(junk, m), NotAModelError);
}

TEST_CASE("the spinning machine has no small models") {
  TmSpec m = load_machine("loop.tm");
  Vocabulary vocab = grid_vocabulary(m);
  Sentence pair = reduction_sentence(m, "");
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    CHECK_FALSE(find_model(pair, n, vocab).has_value());
  }
}

TEST_CASE("busy3 round trip at the minimum grid size") {
  TmSpec m = load_machine("busy3.tm");
  Vocabulary vocab = grid_vocabulary(m);
  Sentence pair = reduction_sentence(m, "");
  auto sim = simulate(m, "", 100);
  REQUIRE(sim.has_value());
  REQUIRE(minimum_grid_size(m, "", 100) == 6);

  // the word axioms force "<" to be a strict total order, so pinning it to
  // the natural order is sound here
  CHECK_FALSE(find_model(pair, 5, vocab, {.fix_order = true}).has_value());
  auto model = find_model(pair, 6, vocab, {.fix_order = true});
  REQUIRE(model.has_value());
  CHECK(eval(pair, *model));
  CHECK(same_run(decode_run(*model, m), sim->trace));
  CHECK(is_word(restrict_vocabulary(*model, word_vocab())));
}

TEST_CASE("scanright round trip at the minimum grid size") {
  TmSpec m = load_machine("scanright.tm");
  Vocabulary vocab = grid_vocabulary(m);
  Sentence pair = reduction_sentence(m, "01");
  auto sim = simulate(m, "01", 100);
  REQUIRE(sim.has_value());

  CHECK_FALSE(find_model(pair, 3, vocab, {.fix_order = true}).has_value());
  auto model = find_model(pair, 4, vocab, {.fix_order = true});
  REQUIRE(model.has_value());
  CHECK(eval(pair, *model));
  CHECK(same_run(decode_run(*model, m), sim->trace));
  CHECK(is_word(restrict_vocabulary(*model, word_vocab())));
}
