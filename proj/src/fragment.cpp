#include "fowb/fragment.hpp"

#include <sstream>

#include "fowb/automata.hpp"

namespace fowb {

std::optional<Sentence> translate_over_words(const FragmentSpec& frag, const Sentence& s,
                                             const std::vector<std::string>& letters,
                                             std::uint64_t budget) {
  Vocabulary vocab = word_vocabulary(letters);
  if (!uses_only(s.formula, vocab)) {
    throw VocabularyError("sentence to translate is not over the word vocabulary");
  }
  if (frag.member(s)) return s;  // already in the fragment, equivalent to itself
  for (std::uint64_t i = 0; i < budget; ++i) {
    Sentence candidate = frag.enumerate(i);
    if (!frag.member(candidate)) continue;
    if (!uses_only(candidate.formula, vocab)) continue;
    if (!word_equiv(candidate, s, letters).has_value()) return candidate;
  }
  return std::nullopt;
}

namespace {

// Candidate readings of s as an n-fold conjunction power. Larger n first:
// peeling equal right conjuncts off the left-nested spine gives at most one
// candidate beyond the trivial n = 1.
std::vector<std::pair<Formula, int>> power_decompositions(const Sentence& s) {
  std::vector<std::pair<Formula, int>> out;
  if (s.formula.kind() == FormulaKind::And) {
    Formula conjunct = s.formula.right();
    Formula rest = s.formula.left();
    int peeled = 1;
    while (rest.kind() == FormulaKind::And && rest.right() == conjunct) {
      rest = rest.left();
      ++peeled;
    }
    if (rest == conjunct) out.push_back({conjunct, peeled + 1});
  }
  out.push_back({s.formula, 1});
  return out;
}

}  // namespace

std::optional<int> power_fragment_member(const Sentence& s, int size_bound,
                                         const Vocabulary& vocab) {
  if (s.formula == Formula::falsity()) return 0;
  bool over_bound = false;
  for (const auto& [phi, n] : power_decompositions(s)) {
    if (n > size_bound) {
      over_bound = true;
      continue;
    }
    if (find_model(Sentence(phi), n, vocab).has_value()) return n;
  }
  if (over_bound) {
    throw ResourceError("conjunction power exceeds the size bound of " +
                        std::to_string(size_bound));
  }
  return std::nullopt;
}

PowerSatResult power_fragment_finite_sat(const Sentence& s, int size_bound,
                                         const Vocabulary& vocab) {
  if (s.formula == Formula::falsity()) {
    return PowerSatResult{PowerSatVerdict::Unsatisfiable, 0, std::nullopt};
  }
  bool over_bound = false;
  for (const auto& [phi, n] : power_decompositions(s)) {
    if (n > size_bound) {
      over_bound = true;
      continue;
    }
    auto model = find_model(Sentence(phi), n, vocab);
    // phi^n and phi are equivalent, so the conjunct's model witnesses s
    if (model) return PowerSatResult{PowerSatVerdict::Satisfiable, n, std::move(model)};
  }
  if (over_bound) {
    throw ResourceError("conjunction power exceeds the size bound of " +
                        std::to_string(size_bound));
  }
  return PowerSatResult{PowerSatVerdict::NotInFragment, 0, std::nullopt};
}

FragmentSpec full_fo_fragment(const Vocabulary& vocab) {
  FragmentSpec f;
  f.name = "full-fo";
  f.member = [](const Sentence&) { return true; };
  f.enumerate = [vocab](std::uint64_t i) { return enumerate_sentences(vocab, i); };
  f.conjoin = [](const Sentence& a, const Sentence& b) {
    return Sentence(Formula::conj(a.formula, b.formula));
  };
  return f;
}

FragmentSpec power_fragment(const Vocabulary& vocab, int size_bound) {
  FragmentSpec f;
  f.name = "power";
  f.member = [vocab, size_bound](const Sentence& s) {
    return power_fragment_member(s, size_bound, vocab).has_value();
  };
  f.enumerate = [vocab](std::uint64_t i) { return enumerate_sentences(vocab, i); };
  // no conjoin: an effective conjunction map would make the fragment's
  // decidable finite satisfiability contradict the halting reduction
  return f;
}

FragmentSpec reject_all_fragment(const Vocabulary& vocab) {
  FragmentSpec f;
  f.name = "reject-all";
  f.member = [](const Sentence&) { return false; };
  f.enumerate = [vocab](std::uint64_t i) { return enumerate_sentences(vocab, i); };
  return f;
}

FragmentSpec fragment_by_name(const std::string& name, const Vocabulary& vocab, int size_bound) {
  if (name == "full-fo") return full_fo_fragment(vocab);
  if (name == "power") return power_fragment(vocab, size_bound);
  if (name == "reject-all") return reject_all_fragment(vocab);
  throw std::invalid_argument("unknown fragment '" + name +
                              "' (available: full-fo, power, reject-all)");
}

FragmentCache parse_fragment_cache(std::string_view text) {
  FragmentCache cache;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(line_no, 1, "expected 'hash<TAB>sentence'");
    }
    cache[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return cache;
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) out << ((h >> shift) & 0xf);
  return out.str();
}

std::optional<Sentence> hardness_instance(const FragmentSpec& frag, const TmSpec& m,
                                          std::string_view machine_file_text,
                                          std::string_view input, const FragmentCache& cache,
                                          std::uint64_t budget) {
  if (!frag.has_conjoin()) {
    throw MissingConjoinError("fragment '" + frag.name + "' has no conjunction map");
  }
  Sentence run_sentence = machine_run_sentence(m);
  std::optional<Sentence> run_equivalent;
  auto cached = cache.find(fnv1a64_hex(machine_file_text));
  if (cached != cache.end()) {
    run_equivalent = parse_sentence(cached->second, grid_vocabulary(m));
  } else if (frag.member(run_sentence)) {
    run_equivalent = run_sentence;
  } else {
    throw MissingCacheEntryError("fragment '" + frag.name +
                                 "' does not contain the machine's run sentence and the cache "
                                 "has no entry for this machine");
  }
  auto input_equivalent =
      translate_over_words(frag, input_word_sentence(input), kGridLetters, budget);
  if (!input_equivalent) return std::nullopt;
  return frag.conjoin(*run_equivalent, *input_equivalent);
}

}  // namespace fowb
