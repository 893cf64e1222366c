#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fowb/fo.hpp"
#include "fowb/reduction.hpp"
#include "fowb/solver.hpp"
#include "fowb/structures.hpp"

namespace fowb {

// A fragment as a value: a total membership test, a total enumerator whose
// range covers the fragment, and an optional effective conjunction map.
// member, enumerate and conjoin must be pure.
struct FragmentSpec {
  std::string name;
  std::function<bool(const Sentence&)> member;
  std::function<Sentence(std::uint64_t)> enumerate;
  std::function<Sentence(const Sentence&, const Sentence&)> conjoin;  // may be empty

  bool has_conjoin() const { return static_cast<bool>(conjoin); }
};

struct MissingConjoinError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MissingCacheEntryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finds a fragment sentence equivalent to s over words. If s itself belongs
// to the fragment it is returned directly; otherwise candidates are drawn
// from the fragment's enumerator and checked with word_equiv. nullopt means
// the budget ran out, not that no such sentence exists.
std::optional<Sentence> translate_over_words(const FragmentSpec& frag, const Sentence& s,
                                             const std::vector<std::string>& letters,
                                             std::uint64_t budget);

// Membership in the power fragment: "false", or an n-fold conjunction power
// of a sentence with a model of size n. Returns the witness n (0 for
// "false"); nullopt when not in the fragment. Candidate decompositions with
// n beyond size_bound raise ResourceError unless a smaller one already
// decides membership.
std::optional<int> power_fragment_member(const Sentence& s, int size_bound,
                                         const Vocabulary& vocab);

enum class PowerSatVerdict { Satisfiable, Unsatisfiable, NotInFragment };

struct PowerSatResult {
  PowerSatVerdict verdict;
  int witness_size = 0;
  std::optional<Structure> model;
};

// The fragment's decision procedure for finite satisfiability: "false" is
// unsatisfiable, any other member carries a model of its witness size.
PowerSatResult power_fragment_finite_sat(const Sentence& s, int size_bound,
                                         const Vocabulary& vocab);

FragmentSpec full_fo_fragment(const Vocabulary& vocab);
FragmentSpec power_fragment(const Vocabulary& vocab, int size_bound);
FragmentSpec reject_all_fragment(const Vocabulary& vocab);

// Built-in fragments by CLI name: "full-fo", "power", "reject-all".
FragmentSpec fragment_by_name(const std::string& name, const Vocabulary& vocab, int size_bound);

// Lookup table mapping a machine-file hash to a pre-translated sentence for
// that machine's run sentence. File format: one "hash<TAB>sentence" per line,
// '#' comments allowed.
using FragmentCache = std::map<std::string, std::string>;

FragmentCache parse_fragment_cache(std::string_view text);
std::string fnv1a64_hex(std::string_view bytes);

// The end-to-end pipeline: an equivalent of the machine's run sentence (from
// the cache, or the sentence itself when the fragment contains it) conjoined
// with the translated input sentence via the fragment's conjunction map.
// nullopt when the translation budget runs out.
std::optional<Sentence> hardness_instance(const FragmentSpec& frag, const TmSpec& m,
                                          std::string_view machine_file_text,
                                          std::string_view input, const FragmentCache& cache,
                                          std::uint64_t budget);

}  // namespace fowb
