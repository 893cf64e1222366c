// Command line front end: every pipeline stage as a subcommand. Reports are
// plain text ending in a single "RESULT: <token>" line; exit codes are
// 0 success, 1 negative answer or invalid input, 2 usage error, 3 resource
// exhaustion.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fowb/automata.hpp"
#include "fowb/fo.hpp"
#include "fowb/fragment.hpp"
#include "fowb/reduction.hpp"
#include "fowb/solver.hpp"
#include "fowb/structures.hpp"

using namespace fowb;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::invalid_argument("cannot read file '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out.good()) throw std::invalid_argument("cannot write file '" + path + "'");
  out << content;
}

std::vector<std::string> split_letters(const std::string& csv) {
  std::vector<std::string> out;
  std::string current;
  for (char c : csv) {
    if (c == ',') {
      if (!current.empty()) out.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) out.push_back(current);
  if (out.empty()) throw std::invalid_argument("--letters needs at least one letter");
  return out;
}

std::string join_letters(const std::vector<std::string>& letters) {
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out += ',';
    out += letters[i];
  }
  return out;
}

// Options shared by the formula-driven subcommands.
struct FormulaArgs {
  std::string formula;
  std::string file;
  std::string letters;
  std::string tm;

  void attach(CLI::App* cmd, bool with_tm = true) {
    cmd->add_option("--formula,-f", formula, "formula text");
    cmd->add_option("--file", file, "file holding the formula");
    cmd->add_option("--letters", letters, "comma-separated word letters, e.g. Z,O,E");
    if (with_tm) cmd->add_option("--tm", tm, "machine file supplying the grid vocabulary");
  }

  std::string text() const {
    if (formula.empty() == file.empty()) {
      throw CLI::ValidationError("give exactly one of --formula and --file");
    }
    return formula.empty() ? read_file(file) : formula;
  }

  Vocabulary vocabulary() const {
    if (!tm.empty()) return grid_vocabulary(parse_tm(read_file(tm)));
    if (!letters.empty()) return word_vocabulary(split_letters(letters));
    throw CLI::ValidationError("give --letters or --tm to fix the vocabulary");
  }

  std::vector<std::string> letter_list() const {
    if (letters.empty()) throw CLI::ValidationError("--letters is required here");
    return split_letters(letters);
  }
};

int finish(const std::string& token, int exit_code) {
  std::cout << "RESULT: " << token << "\n";
  return exit_code;
}

int run_check(const FormulaArgs& args) {
  Formula f = parse_formula(args.text(), args.vocabulary());
  std::cout << "parsed: " << print_formula(f) << "\n";
  auto fv = free_vars(f);
  std::cout << "free variables:";
  if (fv.empty()) {
    std::cout << " (none)";
  } else {
    for (const auto& v : fv) std::cout << " " << v;
  }
  std::cout << "\n";
  return finish("OK", kExitOk);
}

int run_print(const FormulaArgs& args) {
  std::cout << print_formula(parse_formula(args.text(), args.vocabulary())) << "\n";
  return finish("OK", kExitOk);
}

int run_eval(const FormulaArgs& args, const std::string& structure_path) {
  Vocabulary vocab = args.vocabulary();
  Sentence s = parse_sentence(args.text(), vocab);
  Structure st = structure_from_text(read_file(structure_path), vocab);
  bool value = eval(s, st);
  std::cout << "value: " << (value ? "true" : "false") << "\n";
  return value ? finish("TRUE", kExitOk) : finish("FALSE", kExitNegative);
}

int run_word_sat(const FormulaArgs& args) {
  auto letters = args.letter_list();
  Sentence s = parse_sentence(args.text(), word_vocabulary(letters));
  auto witness = word_sat(s, letters);
  if (!witness) return finish("UNSAT", kExitNegative);
  std::cout << "witness: " << join_letters(witness->letters) << "\n";
  return finish("SAT", kExitOk);
}

int run_word_equiv(const FormulaArgs& args, const std::string& formula2,
                   const std::string& file2) {
  auto letters = args.letter_list();
  Vocabulary vocab = word_vocabulary(letters);
  Sentence s1 = parse_sentence(args.text(), vocab);
  if (formula2.empty() == file2.empty()) {
    throw CLI::ValidationError("give exactly one of --formula2 and --file2");
  }
  Sentence s2 = parse_sentence(formula2.empty() ? read_file(file2) : formula2, vocab);
  auto witness = word_equiv(s1, s2, letters);
  if (!witness) return finish("EQUIVALENT", kExitOk);
  std::cout << "witness: " << join_letters(witness->letters) << "\n";
  return finish("NOT-EQUIVALENT", kExitNegative);
}

int run_simulate(const std::string& tm_path, const std::string& input, int max_steps) {
  TmSpec m = parse_tm(read_file(tm_path));
  auto sim = simulate(m, input, max_steps);
  if (!sim) {
    std::cout << "no halt within " << max_steps << " steps\n";
    return finish("RUNNING", kExitNegative);
  }
  std::cout << "steps: " << sim->steps << "\n";
  std::cout << "cells: " << sim->cells_used << "\n";
  std::cout << "trace:\n" << format_trace(sim->trace);
  return finish("HALTED", kExitOk);
}

int run_reduce(const std::string& tm_path, const std::string& input, int find_up_to,
               const std::string& fragment_name, const std::string& cache_path,
               std::uint64_t budget, const std::string& out_path, const std::string& emit,
               bool fix_order) {
  std::string machine_text = read_file(tm_path);
  TmSpec m = parse_tm(machine_text);
  std::optional<Sentence> sentence;
  if (!fragment_name.empty()) {
    FragmentSpec frag = fragment_by_name(fragment_name, word_vocabulary(kGridLetters), 8);
    FragmentCache cache;
    if (!cache_path.empty()) cache = parse_fragment_cache(read_file(cache_path));
    sentence = hardness_instance(frag, m, machine_text, input, cache, budget);
    if (!sentence) return finish("EXHAUSTED", kExitResource);
  } else if (emit == "machine") {
    sentence = machine_run_sentence(m);
  } else if (emit == "input") {
    sentence = input_word_sentence(input);
  } else {
    sentence = reduction_sentence(m, input);
  }
  if (!out_path.empty()) write_file(out_path, print_sentence(*sentence) + "\n");
  std::cout << "sentence size: " << print_sentence(*sentence).size() << " characters\n";
  if (find_up_to <= 0) return finish("OK", kExitOk);
  auto hit = find_model_up_to(*sentence, find_up_to, grid_vocabulary(m), {.fix_order = fix_order});
  if (!hit) return finish("NO-MODEL-UP-TO " + std::to_string(find_up_to), kExitNegative);
  std::cout << "model size: " << hit->first << "\n";
  return finish("MODEL-FOUND " + std::to_string(hit->first), kExitOk);
}

int run_find_model(const FormulaArgs& args, int size, int find_up_to,
                   const std::string& out_path, const std::string& dimacs_path, bool fix_order) {
  Vocabulary vocab = args.vocabulary();
  Sentence s = parse_sentence(args.text(), vocab);
  if ((size <= 0) == (find_up_to <= 0)) {
    throw CLI::ValidationError("give exactly one of --size and --find-up-to");
  }
  if (!dimacs_path.empty()) {
    if (size <= 0) throw CLI::ValidationError("--dimacs requires --size");
    write_file(dimacs_path, to_dimacs(ground(s, size, {.fix_order = fix_order})));
  }
  std::optional<std::pair<int, Structure>> hit;
  if (size > 0) {
    auto model = find_model(s, size, vocab, {.fix_order = fix_order});
    if (model) hit = std::make_pair(size, std::move(*model));
  } else {
    hit = find_model_up_to(s, find_up_to, vocab, {.fix_order = fix_order});
  }
  if (!hit) {
    if (size > 0) return finish("NO-MODEL", kExitNegative);
    return finish("NO-MODEL-UP-TO " + std::to_string(find_up_to), kExitNegative);
  }
  std::string text = structure_to_text(hit->second);
  if (!out_path.empty()) write_file(out_path, text);
  std::cout << text;
  return finish("MODEL-FOUND " + std::to_string(hit->first), kExitOk);
}

int run_translate(const FormulaArgs& args, const std::string& fragment_name,
                  std::uint64_t budget, int size_bound) {
  auto letters = args.letter_list();
  Vocabulary vocab = word_vocabulary(letters);
  Sentence s = parse_sentence(args.text(), vocab);
  FragmentSpec frag = fragment_by_name(fragment_name, vocab, size_bound);
  auto translated = translate_over_words(frag, s, letters, budget);
  if (!translated) return finish("EXHAUSTED", kExitResource);
  std::cout << "sentence: " << print_sentence(*translated) << "\n";
  return finish("TRANSLATED", kExitOk);
}

int run_fragment_sat(const FormulaArgs& args, const std::string& fragment_name, int size_bound) {
  if (fragment_name != "power") {
    throw CLI::ValidationError("only the power fragment has a decision procedure");
  }
  Vocabulary vocab = word_vocabulary(args.letter_list());
  Sentence s = parse_sentence(args.text(), vocab);
  PowerSatResult result = power_fragment_finite_sat(s, size_bound, vocab);
  switch (result.verdict) {
    case PowerSatVerdict::Unsatisfiable:
      return finish("UNSAT", kExitNegative);
    case PowerSatVerdict::NotInFragment:
      return finish("NOT-IN-FRAGMENT", kExitNegative);
    case PowerSatVerdict::Satisfiable:
      std::cout << "witness size: " << result.witness_size << "\n";
      std::cout << structure_to_text(*result.model);
      return finish("SAT", kExitOk);
  }
  return kExitUsage;
}

int run_demo_halting(const std::string& tm_path, const std::string& input, int max_size,
                     int max_steps, bool fix_order) {
  TmSpec m = parse_tm(read_file(tm_path));
  Vocabulary vocab = grid_vocabulary(m);
  auto sim = simulate(m, input, max_steps);
  if (sim) {
    std::cout << "oracle: HALTED steps=" << sim->steps << " cells=" << sim->cells_used << "\n";
  } else {
    std::cout << "oracle: RUNNING (no halt within " << max_steps << " steps)\n";
  }
  Sentence pair = reduction_sentence(m, input);
  auto hit = find_model_up_to(pair, max_size, vocab, {.fix_order = fix_order});
  if (!hit) {
    std::cout << "model: none up to size " << max_size << "\n";
    if (!sim) return finish("AGREE", kExitOk);
    std::cout << "note: the minimum grid size is "
              << std::max({sim->steps + 1, sim->cells_used, 1}) << "\n";
    return finish("NO-MODEL-UP-TO " + std::to_string(max_size), kExitNegative);
  }
  std::cout << "model: size " << hit->first << " (searched up to " << max_size << ")\n";
  if (!sim) {
    std::cout << "oracle says running but a model exists\n";
    return finish("MISMATCH", kExitNegative);
  }
  RunTrace decoded = decode_run(hit->second, m);
  if (!same_run(decoded, sim->trace)) {
    std::cout << "decoded trace:\n" << format_trace(decoded);
    std::cout << "oracle trace:\n" << format_trace(sim->trace);
    return finish("MISMATCH", kExitNegative);
  }
  std::cout << "decoded trace matches the oracle\n";
  bool word_ok = is_word(restrict_vocabulary(hit->second, word_vocabulary(kGridLetters)));
  std::cout << "word restriction: " << (word_ok ? "is a word" : "IS NOT A WORD") << "\n";
  if (!word_ok) return finish("MISMATCH", kExitNegative);
  return finish("AGREE", kExitOk);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"first-order finite-model workbench"};
  app.require_subcommand(1);

  std::function<int()> action;

  FormulaArgs check_args;
  auto* check = app.add_subcommand("check", "parse and validate a formula");
  check_args.attach(check);
  check->callback([&] { action = [&] { return run_check(check_args); }; });

  FormulaArgs print_args;
  auto* print = app.add_subcommand("print", "canonical form of a formula");
  print_args.attach(print);
  print->callback([&] { action = [&] { return run_print(print_args); }; });

  FormulaArgs eval_args;
  std::string eval_structure;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a sentence on a structure file");
  eval_args.attach(eval_cmd);
  eval_cmd->add_option("--structure", eval_structure, "structure file")->required();
  eval_cmd->callback([&] { action = [&] { return run_eval(eval_args, eval_structure); }; });

  FormulaArgs word_sat_args;
  auto* wsat = app.add_subcommand("word-sat", "satisfiability over words");
  word_sat_args.attach(wsat, false);
  wsat->callback([&] { action = [&] { return run_word_sat(word_sat_args); }; });

  FormulaArgs word_equiv_args;
  std::string formula2, file2;
  auto* wequiv = app.add_subcommand("word-equiv", "equivalence of two sentences over words");
  word_equiv_args.attach(wequiv, false);
  wequiv->add_option("--formula2", formula2, "second formula");
  wequiv->add_option("--file2", file2, "file holding the second formula");
  wequiv->callback(
      [&] { action = [&] { return run_word_equiv(word_equiv_args, formula2, file2); }; });

  std::string sim_tm, sim_input;
  int sim_max_steps = 10000;
  auto* sim = app.add_subcommand("simulate", "run a machine on an input");
  sim->add_option("--tm", sim_tm, "machine file")->required();
  sim->add_option("--input", sim_input, "binary input string");
  sim->add_option("--max-steps", sim_max_steps, "step bound");
  sim->callback([&] { action = [&] { return run_simulate(sim_tm, sim_input, sim_max_steps); }; });

  std::string red_tm, red_input, red_fragment, red_cache, red_out;
  std::string red_emit = "pair";
  int red_up_to = 0;
  std::uint64_t red_budget = 10000;
  bool red_fix = false;
  auto* red = app.add_subcommand("reduce", "build the halting reduction sentence");
  red->add_option("--tm", red_tm, "machine file")->required();
  red->add_option("--input", red_input, "binary input string");
  red->add_option("--find-up-to", red_up_to, "search for a model up to this size");
  red->add_option("--fragment", red_fragment, "route the sentence through a fragment");
  red->add_option("--cache", red_cache, "fragment cache file");
  red->add_option("--budget", red_budget, "translation budget");
  red->add_option("--out", red_out, "write the sentence to a file");
  red->add_option("--emit", red_emit, "pair (default), machine or input part only")
      ->check(CLI::IsMember({"pair", "machine", "input"}));
  red->add_flag("--fix-order", red_fix, "pin < to the natural order during search");
  red->callback([&] {
    action = [&] {
      return run_reduce(red_tm, red_input, red_up_to, red_fragment, red_cache, red_budget,
                        red_out, red_emit, red_fix);
    };
  });

  FormulaArgs fm_args;
  int fm_size = 0, fm_up_to = 0;
  std::string fm_out, fm_dimacs;
  bool fm_fix = false;
  auto* fm = app.add_subcommand("find-model", "bounded model search for a sentence");
  fm_args.attach(fm);
  fm->add_option("--size", fm_size, "exact domain size");
  fm->add_option("--find-up-to", fm_up_to, "try sizes 1..N");
  fm->add_option("--out", fm_out, "write the model to a file");
  fm->add_option("--dimacs", fm_dimacs, "write the grounding in DIMACS form");
  fm->add_flag("--fix-order", fm_fix, "pin < to the natural order");
  fm->callback([&] {
    action = [&] { return run_find_model(fm_args, fm_size, fm_up_to, fm_out, fm_dimacs, fm_fix); };
  });

  FormulaArgs tr_args;
  std::string tr_fragment = "full-fo";
  std::uint64_t tr_budget = 10000;
  int tr_bound = 8;
  auto* tr = app.add_subcommand("translate", "find a fragment sentence equivalent over words");
  tr_args.attach(tr, false);
  tr->add_option("--fragment", tr_fragment, "fragment name");
  tr->add_option("--budget", tr_budget, "enumeration budget");
  tr->add_option("--size", tr_bound, "size bound for fragment membership checks");
  tr->callback(
      [&] { action = [&] { return run_translate(tr_args, tr_fragment, tr_budget, tr_bound); }; });

  FormulaArgs fs_args;
  std::string fs_fragment = "power";
  int fs_bound = 8;
  auto* fs = app.add_subcommand("fragment-sat", "decide finite satisfiability in a fragment");
  fs_args.attach(fs, false);
  fs->add_option("--fragment", fs_fragment, "fragment name");
  fs->add_option("--size", fs_bound, "size bound for membership checks");
  fs->callback([&] { action = [&] { return run_fragment_sat(fs_args, fs_fragment, fs_bound); }; });

  std::string demo_tm, demo_input;
  int demo_size = 4, demo_steps = 10000;
  bool demo_fix = false;
  auto* demo = app.add_subcommand("demo-halting",
                                  "side-by-side run of the oracle and the reduction");
  demo->add_option("--tm", demo_tm, "machine file")->required();
  demo->add_option("--input", demo_input, "binary input string");
  demo->add_option("--find-up-to", demo_size, "model search bound");
  demo->add_option("--max-steps", demo_steps, "oracle step bound");
  demo->add_flag("--fix-order", demo_fix, "pin < to the natural order during search");
  demo->callback([&] {
    action = [&] { return run_demo_halting(demo_tm, demo_input, demo_size, demo_steps, demo_fix); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << "usage error: " << e.what() << "\n";
    std::cout << "hint: run with --help for the command list\n";
    return finish("USAGE", kExitUsage);
  }

  try {
    return action();
  } catch (const CLI::ValidationError& e) {
    std::cout << "usage error: " << e.what() << "\n";
    return finish("USAGE", kExitUsage);
  } catch (const ResourceError& e) {
    std::cout << "error: " << e.what() << "\n";
    return finish("RESOURCE-LIMIT", kExitResource);
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << "\n";
    return finish("INVALID", kExitNegative);
  }
}
