#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fowb/fo.hpp"
#include "fowb/structures.hpp"

namespace fowb {

// Alphabet for formula automata: each letter combines a base word letter with
// one bit per track (one track per free variable). A letter is encoded as
// base_index * 2^|tracks| + bits, so letter order is base-major.
struct LayeredAlphabet {
  std::vector<std::string> base;
  std::vector<std::string> tracks;

  int track_count() const { return static_cast<int>(tracks.size()); }
  int num_letters() const { return static_cast<int>(base.size()) << tracks.size(); }
  int make_letter(int base_idx, unsigned bits) const {
    return (base_idx << tracks.size()) | static_cast<int>(bits);
  }
  int base_of(int letter) const { return letter >> tracks.size(); }
  unsigned bits_of(int letter) const {
    return static_cast<unsigned>(letter) & ((1u << tracks.size()) - 1u);
  }
  int track_index(const std::string& var) const;
  std::string letter_name(int letter) const;  // e.g. "O|01"; "O|" with no tracks

  bool operator==(const LayeredAlphabet&) const = default;
};

struct Nfa {
  LayeredAlphabet alphabet;
  int num_states = 0;
  std::vector<int> initial;                    // sorted, unique
  std::vector<int> accepting;                  // sorted, unique
  std::vector<std::array<int, 3>> transitions;  // (state, letter, state), sorted, unique
};

inline constexpr int kDefaultStateCap = 1 << 20;

// Compiles a formula over a word vocabulary (base letters plus "<") into an
// automaton over the track-annotated alphabet. The automaton accepts exactly
// the annotated words, one mark per track, whose (word, assignment) reading
// satisfies the formula. free_vars(f) must be contained in tracks.
Nfa formula_to_nfa(const Formula& f, const std::vector<std::string>& base_letters,
                   const std::vector<std::string>& tracks, int state_cap = kDefaultStateCap);

Nfa product_intersect(const Nfa& a, const Nfa& b);
Nfa nfa_union(const Nfa& a, const Nfa& b);

// Subset construction, completed, accepting states flipped. The result is
// deterministic and accepts the complement within all letter sequences.
// Exceeding state_cap raises ResourceError.
Nfa determinize_complement(const Nfa& a, int state_cap = kDefaultStateCap);

// Drops the given track from the alphabet; accepts a sequence iff some
// single-mark annotation of that track extends it to an accepted sequence.
Nfa project_exists(const Nfa& a, const std::string& track);

// Accepts exactly the sequences with exactly one mark on every track.
Nfa valid_tracks_nfa(const LayeredAlphabet& alphabet);

Nfa prune_unreachable(const Nfa& a);

bool nfa_accepts(const Nfa& a, const std::vector<int>& letters);

// Shortest accepted letter sequence of length >= min_length, ties broken by
// letter order; nullopt when the (restricted) language is empty.
std::optional<std::vector<int>> is_empty_with_witness(const Nfa& a, int min_length = 0);

bool nfa_language_equal(const Nfa& a, const Nfa& b);

std::string dump_nfa(const Nfa& a);

// Satisfiability of a sentence over words (nonempty, per FO semantics).
// Returns a shortest witness word, or nullopt when unsatisfiable.
std::optional<Word> word_sat(const Sentence& s, const std::vector<std::string>& letters,
                             int state_cap = kDefaultStateCap);

// Equivalence over words: nullopt when equivalent, otherwise a shortest
// distinguishing word.
std::optional<Word> word_equiv(const Sentence& s1, const Sentence& s2,
                               const std::vector<std::string>& letters,
                               int state_cap = kDefaultStateCap);

}  // namespace fowb
