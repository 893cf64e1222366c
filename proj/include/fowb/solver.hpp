#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fowb/fo.hpp"
#include "fowb/structures.hpp"

namespace fowb {

struct GroundAtom {
  std::string rel;
  int first = 0;
  int second = -1;  // -1 for unary atoms
  bool operator==(const GroundAtom&) const = default;
};

// Propositional form of "the sentence has a model of size n". Variables
// 1..atoms.size() stand for the ground atoms, in order of first occurrence;
// the rest are auxiliaries introduced per distinct ground subformula.
struct ClauseSet {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;  // signed 1-based literals
  std::vector<GroundAtom> atoms;
};

struct GroundOptions {
  // Interpret "<" as the natural order on {0, ..., n-1}. Sound only when the
  // sentence forces "<" to be a strict total order; the caller is responsible.
  bool fix_order = false;
};

ClauseSet ground(const Sentence& s, int n, const GroundOptions& opts = {});

struct SolveOptions {
  long long conflict_budget = 10'000'000;
};

// Complete backtracking search with unit propagation. Branches on the
// lowest-index unassigned variable, false first, so results are
// deterministic. Exceeding the conflict budget raises ResourceError.
std::optional<std::vector<bool>> solve_ground(const ClauseSet& c, const SolveOptions& opts = {});

struct FindOptions {
  bool fix_order = false;
  long long conflict_budget = 10'000'000;
};

// Ground, solve, and read the relation tables back into a structure over the
// given ambient vocabulary. nullopt when there is no model of size n.
std::optional<Structure> find_model(const Sentence& s, int n, const Vocabulary& vocab,
                                    const FindOptions& opts = {});

// Tries sizes 1..max_n in order; first model wins.
std::optional<std::pair<int, Structure>> find_model_up_to(const Sentence& s, int max_n,
                                                          const Vocabulary& vocab,
                                                          const FindOptions& opts = {});

std::string to_dimacs(const ClauseSet& c);

}  // namespace fowb
