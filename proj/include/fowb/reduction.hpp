#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fowb/fo.hpp"
#include "fowb/structures.hpp"

namespace fowb {

enum class TapeSym { Zero, One, Blank };
enum class Move { Left, Right, Stay };

struct TmRule {
  std::string state;
  TapeSym write;
  Move move;
  bool operator==(const TmRule&) const = default;
};

// Deterministic single-tape machine over {0, 1, blank} with a one-way
// infinite tape. Halting states have no outgoing rules; every other state has
// a rule for each symbol.
struct TmSpec {
  std::vector<std::string> states;  // declaration order
  std::string start;
  std::set<std::string> halting;
  std::map<std::pair<std::string, TapeSym>, TmRule> transitions;

  bool is_halting(const std::string& q) const { return halting.count(q) > 0; }
};

// Line-based machine file with '#' comments:
//   states: q0 q1 h
//   start: q0
//   halt: h
//   trans: q0 _ -> h 1 S
TmSpec parse_tm(std::string_view text);

struct TmConfig {
  std::string state;
  int head = 0;
  std::vector<TapeSym> tape;  // prefix; head < tape.size()
  bool operator==(const TmConfig&) const = default;
};

struct RunTrace {
  std::vector<TmConfig> configs;
  bool operator==(const RunTrace&) const = default;
};

struct SimHalted {
  int steps = 0;       // transitions taken before entering a halting state
  int cells_used = 0;  // max(input length, 1 + highest head position visited)
  RunTrace trace;      // steps + 1 configurations
};

// Runs the machine on the input; nullopt means still running after max_steps.
std::optional<SimHalted> simulate(const TmSpec& m, std::string_view input, int max_steps);

// Word part {E, O, Z, <}, the second order <', cell contents P_zero / P_one /
// P_empty, and one head relation H_q per machine state.
Vocabulary grid_vocabulary(const TmSpec& m);

inline const std::vector<std::string> kGridLetters = {"E", "O", "Z"};

// Over words: the letters spell the input (Z for 0, O for 1) followed by
// blanks only. The empty input yields "every position is blank".
Sentence input_word_sentence(std::string_view input);

// Finite models of this sentence are grids whose rows, ordered by <', list
// successive machine configurations over columns ordered by <, starting from
// the tape spelled by the letters, ending in a halting state, with halting
// rows copied verbatim to the end of the grid.
Sentence machine_run_sentence(const TmSpec& m);

// machine_run_sentence(m) /\ input_word_sentence(input): finitely satisfiable
// iff the machine halts on the input.
Sentence reduction_sentence(const TmSpec& m, std::string_view input);

// Smallest grid size admitting a model, from the simulation oracle:
// max(steps + 1, cells_used). nullopt when the machine is still running.
std::optional<int> minimum_grid_size(const TmSpec& m, std::string_view input, int max_steps);

// Reads the run back out of a model of machine_run_sentence(m): rows sorted
// by <', columns by <, trailing repeated halting configurations stripped.
RunTrace decode_run(const Structure& s, const TmSpec& m);

// Trace equality modulo trailing blanks on each tape.
bool same_run(const RunTrace& a, const RunTrace& b);

std::string format_trace(const RunTrace& t);

}  // namespace fowb
