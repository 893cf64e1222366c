#include "fowb/automata.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace fowb {

int LayeredAlphabet::track_index(const std::string& var) const {
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    if (tracks[i] == var) return static_cast<int>(i);
  }
  return -1;
}

std::string LayeredAlphabet::letter_name(int letter) const {
  std::string out = base[base_of(letter)];
  out += '|';
  unsigned bits = bits_of(letter);
  for (std::size_t t = 0; t < tracks.size(); ++t) {
    out += (bits >> t) & 1u ? '1' : '0';
  }
  return out;
}

namespace {

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void sort_unique(std::vector<std::array<int, 3>>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void check_same_alphabet(const Nfa& a, const Nfa& b) {
  if (!(a.alphabet == b.alphabet)) throw VocabularyError("automata alphabets differ");
}

// Automaton whose states are masks of tracks already marked. `ok` decides,
// per letter and mask seen so far, whether the letter is allowed; marking a
// track twice is never allowed. Accepts when every track got its mark.
template <typename LetterOk>
Nfa mask_automaton(const LayeredAlphabet& al, LetterOk ok) {
  int k = al.track_count();
  unsigned full = (1u << k) - 1u;
  Nfa out;
  out.alphabet = al;
  out.num_states = 1 << k;
  out.initial = {0};
  out.accepting = {static_cast<int>(full)};
  for (unsigned m = 0; m <= full; ++m) {
    for (int letter = 0; letter < al.num_letters(); ++letter) {
      unsigned bits = al.bits_of(letter);
      if ((bits & m) != 0) continue;
      if (!ok(al.base_of(letter), bits, m)) continue;
      out.transitions.push_back({static_cast<int>(m), letter, static_cast<int>(m | bits)});
    }
  }
  return out;
}

}  // namespace

Nfa valid_tracks_nfa(const LayeredAlphabet& alphabet) {
  return mask_automaton(alphabet, [](int, unsigned, unsigned) { return true; });
}

Nfa prune_unreachable(const Nfa& a) {
  std::vector<std::vector<std::pair<int, int>>> adj(a.num_states);
  for (const auto& t : a.transitions) adj[t[0]].push_back({t[1], t[2]});
  std::vector<int> remap(a.num_states, -1);
  std::deque<int> queue;
  int next = 0;
  for (int q : a.initial) {
    if (remap[q] < 0) {
      remap[q] = next++;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (const auto& [letter, r] : adj[q]) {
      if (remap[r] < 0) {
        remap[r] = next++;
        queue.push_back(r);
      }
    }
  }
  Nfa out;
  out.alphabet = a.alphabet;
  out.num_states = next;
  for (int q : a.initial) out.initial.push_back(remap[q]);
  for (int q : a.accepting) {
    if (remap[q] >= 0) out.accepting.push_back(remap[q]);
  }
  for (const auto& t : a.transitions) {
    if (remap[t[0]] >= 0 && remap[t[2]] >= 0) {
      out.transitions.push_back({remap[t[0]], t[1], remap[t[2]]});
    }
  }
  sort_unique(out.initial);
  sort_unique(out.accepting);
  sort_unique(out.transitions);
  return out;
}

Nfa product_intersect(const Nfa& a, const Nfa& b) {
  check_same_alphabet(a, b);
  std::vector<std::vector<std::pair<int, int>>> adj_a(a.num_states), adj_b(b.num_states);
  for (const auto& t : a.transitions) adj_a[t[0]].push_back({t[1], t[2]});
  for (const auto& t : b.transitions) adj_b[t[0]].push_back({t[1], t[2]});

  std::map<std::pair<int, int>, int> ids;
  std::deque<std::pair<int, int>> queue;
  auto intern = [&](int qa, int qb) {
    auto [it, fresh] = ids.emplace(std::make_pair(qa, qb), static_cast<int>(ids.size()));
    if (fresh) queue.push_back({qa, qb});
    return it->second;
  };

  Nfa out;
  out.alphabet = a.alphabet;
  for (int qa : a.initial) {
    for (int qb : b.initial) out.initial.push_back(intern(qa, qb));
  }
  std::set<int> accept_a(a.accepting.begin(), a.accepting.end());
  std::set<int> accept_b(b.accepting.begin(), b.accepting.end());
  while (!queue.empty()) {
    auto [qa, qb] = queue.front();
    queue.pop_front();
    int id = ids.at({qa, qb});
    if (accept_a.count(qa) && accept_b.count(qb)) out.accepting.push_back(id);
    for (const auto& [la, ra] : adj_a[qa]) {
      for (const auto& [lb, rb] : adj_b[qb]) {
        if (la == lb) out.transitions.push_back({id, la, intern(ra, rb)});
      }
    }
  }
  out.num_states = static_cast<int>(ids.size());
  sort_unique(out.initial);
  sort_unique(out.accepting);
  sort_unique(out.transitions);
  return out;
}

Nfa nfa_union(const Nfa& a, const Nfa& b) {
  check_same_alphabet(a, b);
  Nfa out;
  out.alphabet = a.alphabet;
  out.num_states = a.num_states + b.num_states;
  out.initial = a.initial;
  out.accepting = a.accepting;
  out.transitions = a.transitions;
  for (int q : b.initial) out.initial.push_back(q + a.num_states);
  for (int q : b.accepting) out.accepting.push_back(q + a.num_states);
  for (const auto& t : b.transitions) {
    out.transitions.push_back({t[0] + a.num_states, t[1], t[2] + a.num_states});
  }
  sort_unique(out.initial);
  sort_unique(out.accepting);
  sort_unique(out.transitions);
  return out;
}

Nfa determinize_complement(const Nfa& a, int state_cap) {
  int letters = a.alphabet.num_letters();
  std::vector<std::vector<std::pair<int, int>>> adj(a.num_states);
  for (const auto& t : a.transitions) adj[t[0]].push_back({t[1], t[2]});

  std::map<std::vector<int>, int> ids;
  std::deque<std::vector<int>> queue;
  auto intern = [&](std::vector<int> subset) {
    auto [it, fresh] = ids.emplace(std::move(subset), static_cast<int>(ids.size()));
    if (fresh) {
      if (static_cast<int>(ids.size()) > state_cap) {
        throw ResourceError("determinization exceeded the state cap of " +
                            std::to_string(state_cap));
      }
      queue.push_back(it->first);
    }
    return it->second;
  };

  Nfa out;
  out.alphabet = a.alphabet;
  std::vector<int> start = a.initial;
  sort_unique(start);
  out.initial = {intern(start)};
  std::set<int> accept_a(a.accepting.begin(), a.accepting.end());
  while (!queue.empty()) {
    std::vector<int> subset = queue.front();
    queue.pop_front();
    int id = ids.at(subset);
    bool accepts = std::any_of(subset.begin(), subset.end(),
                               [&](int q) { return accept_a.count(q) > 0; });
    if (!accepts) out.accepting.push_back(id);  // complement
    for (int letter = 0; letter < letters; ++letter) {
      std::vector<int> next;
      for (int q : subset) {
        for (const auto& [l, r] : adj[q]) {
          if (l == letter) next.push_back(r);
        }
      }
      sort_unique(next);
      out.transitions.push_back({id, letter, intern(std::move(next))});
    }
  }
  out.num_states = static_cast<int>(ids.size());
  sort_unique(out.accepting);
  sort_unique(out.transitions);
  return out;
}

Nfa project_exists(const Nfa& a, const std::string& track) {
  int idx = a.alphabet.track_index(track);
  if (idx < 0) throw VocabularyError("automaton has no track '" + track + "'");
  LayeredAlphabet al = a.alphabet;
  al.tracks.erase(al.tracks.begin() + idx);
  unsigned low_mask = (1u << idx) - 1u;
  Nfa out;
  out.alphabet = al;
  out.num_states = a.num_states;
  out.initial = a.initial;
  out.accepting = a.accepting;
  out.transitions.reserve(a.transitions.size());
  for (const auto& t : a.transitions) {
    unsigned bits = a.alphabet.bits_of(t[1]);
    unsigned kept = (bits & low_mask) | ((bits >> (idx + 1)) << idx);
    out.transitions.push_back({t[0], al.make_letter(a.alphabet.base_of(t[1]), kept), t[2]});
  }
  sort_unique(out.transitions);
  return prune_unreachable(out);
}

bool nfa_accepts(const Nfa& a, const std::vector<int>& letters) {
  std::set<int> current(a.initial.begin(), a.initial.end());
  for (int letter : letters) {
    std::set<int> next;
    for (const auto& t : a.transitions) {
      if (t[1] == letter && current.count(t[0])) next.insert(t[2]);
    }
    current = std::move(next);
    if (current.empty()) return false;
  }
  for (int q : a.accepting) {
    if (current.count(q)) return true;
  }
  return false;
}

std::optional<std::vector<int>> is_empty_with_witness(const Nfa& a, int min_length) {
  Nfa work = a;
  if (min_length > 0) {
    // product with a counter that saturates at min_length
    Nfa counter;
    counter.alphabet = a.alphabet;
    counter.num_states = min_length + 1;
    counter.initial = {0};
    counter.accepting = {min_length};
    for (int q = 0; q <= min_length; ++q) {
      int next = std::min(q + 1, min_length);
      for (int letter = 0; letter < a.alphabet.num_letters(); ++letter) {
        counter.transitions.push_back({q, letter, next});
      }
    }
    work = product_intersect(a, counter);
  }

  // distance from each state to acceptance (backward BFS)
  std::vector<std::vector<std::pair<int, int>>> radj(work.num_states);
  std::vector<std::vector<std::pair<int, int>>> adj(work.num_states);
  for (const auto& t : work.transitions) {
    radj[t[2]].push_back({t[1], t[0]});
    adj[t[0]].push_back({t[1], t[2]});
  }
  constexpr int kInf = -1;
  std::vector<int> dist(work.num_states, kInf);
  std::deque<int> queue;
  for (int q : work.accepting) {
    dist[q] = 0;
    queue.push_back(q);
  }
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (const auto& [letter, p] : radj[q]) {
      if (dist[p] == kInf) {
        dist[p] = dist[q] + 1;
        queue.push_back(p);
      }
    }
  }

  int best = kInf;
  for (int q : work.initial) {
    if (dist[q] != kInf && (best == kInf || dist[q] < best)) best = dist[q];
  }
  if (best == kInf) return std::nullopt;

  // greedy reconstruction: of the shortest witnesses, pick the
  // lexicographically least by letter order
  std::vector<int> witness;
  std::set<int> current;
  for (int q : work.initial) {
    if (dist[q] == best) current.insert(q);
  }
  for (int remaining = best; remaining > 0; --remaining) {
    for (int letter = 0;; ++letter) {
      assert(letter < work.alphabet.num_letters());
      std::set<int> next;
      for (int q : current) {
        for (const auto& [l, r] : adj[q]) {
          if (l == letter && dist[r] == remaining - 1) next.insert(r);
        }
      }
      if (!next.empty()) {
        witness.push_back(letter);
        current = std::move(next);
        break;
      }
    }
  }
  return witness;
}

bool nfa_language_equal(const Nfa& a, const Nfa& b) {
  check_same_alphabet(a, b);
  Nfa not_a = determinize_complement(a);
  Nfa not_b = determinize_complement(b);
  Nfa diff = nfa_union(prune_unreachable(product_intersect(a, not_b)),
                       prune_unreachable(product_intersect(b, not_a)));
  return !is_empty_with_witness(diff).has_value();
}

std::string dump_nfa(const Nfa& a) {
  std::ostringstream out;
  out << "states " << a.num_states << "\n";
  out << "initial:";
  for (int q : a.initial) out << " " << q;
  out << "\n";
  out << "accepting:";
  for (int q : a.accepting) out << " " << q;
  out << "\n";
  for (const auto& t : a.transitions) {
    out << "trans: " << t[0] << " --(" << a.alphabet.letter_name(t[1]) << ")--> " << t[2] << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Formula compilation

namespace {

// Renames bound variables so they are pairwise distinct and avoid the given
// names; quantifier semantics are untouched.
class Rectifier {
 public:
  explicit Rectifier(const std::vector<std::string>& avoid)
      : used_(avoid.begin(), avoid.end()) {}

  Formula run(const Formula& f) {
    std::map<std::string, std::string> renaming;
    return rec(f, renaming);
  }

 private:
  Formula rec(const Formula& f, std::map<std::string, std::string>& renaming) {
    switch (f.kind()) {
      case FormulaKind::True:
      case FormulaKind::False:
        return f;
      case FormulaKind::Atom: {
        std::vector<std::string> args;
        for (const auto& v : f.args()) args.push_back(subst(v, renaming));
        return Formula::atom(f.rel(), std::move(args));
      }
      case FormulaKind::Eq:
        return Formula::eq(subst(f.args()[0], renaming), subst(f.args()[1], renaming));
      case FormulaKind::Not:
        return Formula::negation(rec(f.child(), renaming));
      case FormulaKind::And:
        return Formula::conj(rec(f.left(), renaming), rec(f.right(), renaming));
      case FormulaKind::Or:
        return Formula::disj(rec(f.left(), renaming), rec(f.right(), renaming));
      case FormulaKind::Implies:
        return Formula::implies(rec(f.left(), renaming), rec(f.right(), renaming));
      case FormulaKind::Exists:
      case FormulaKind::Forall: {
        std::string fresh = pick(f.var());
        auto old = renaming.find(f.var());
        bool had_old = old != renaming.end();
        std::string old_name = had_old ? old->second : "";
        renaming[f.var()] = fresh;
        Formula body = rec(f.child(), renaming);
        if (had_old) {
          renaming[f.var()] = old_name;
        } else {
          renaming.erase(f.var());
        }
        return f.kind() == FormulaKind::Exists ? Formula::exists(fresh, body)
                                               : Formula::forall(fresh, body);
      }
    }
    throw std::logic_error("unreachable");
  }

  std::string subst(const std::string& v, const std::map<std::string, std::string>& renaming) {
    auto it = renaming.find(v);
    return it == renaming.end() ? v : it->second;
  }

  std::string pick(const std::string& base) {
    if (used_.insert(base).second) return base;
    for (int i = 1;; ++i) {
      std::string candidate = base + "_" + std::to_string(i);
      if (used_.insert(candidate).second) return candidate;
    }
  }

  std::set<std::string> used_;
};

class Compiler {
 public:
  Compiler(std::vector<std::string> base, int state_cap)
      : base_(std::move(base)), state_cap_(state_cap) {}

  Nfa compile(const Formula& f, const LayeredAlphabet& al) {
    switch (f.kind()) {
      case FormulaKind::True:
        return valid_tracks_nfa(al);
      case FormulaKind::False: {
        Nfa n = valid_tracks_nfa(al);
        n.accepting.clear();
        return n;
      }
      case FormulaKind::Atom:
        return atom_nfa(f, al);
      case FormulaKind::Eq: {
        int x = track_of(al, f.args()[0]);
        int y = track_of(al, f.args()[1]);
        return mask_automaton(al, [x, y](int, unsigned bits, unsigned) {
          return ((bits >> x) & 1u) == ((bits >> y) & 1u);
        });
      }
      case FormulaKind::Not:
        return complement_valid(compile(f.child(), al), al);
      case FormulaKind::And:
        return prune_unreachable(product_intersect(compile(f.left(), al), compile(f.right(), al)));
      case FormulaKind::Or:
        return nfa_union(compile(f.left(), al), compile(f.right(), al));
      case FormulaKind::Implies:
        return nfa_union(complement_valid(compile(f.left(), al), al), compile(f.right(), al));
      case FormulaKind::Exists: {
        LayeredAlphabet inner = al;
        inner.tracks.push_back(f.var());
        return project_exists(compile(f.child(), inner), f.var());
      }
      case FormulaKind::Forall: {
        LayeredAlphabet inner = al;
        inner.tracks.push_back(f.var());
        Nfa negated_body = complement_valid(compile(f.child(), inner), inner);
        return complement_valid(project_exists(negated_body, f.var()), al);
      }
    }
    throw std::logic_error("unreachable");
  }

 private:
  int track_of(const LayeredAlphabet& al, const std::string& v) {
    int idx = al.track_index(v);
    if (idx < 0) throw VocabularyError("free variable '" + v + "' is not a track");
    return idx;
  }

  Nfa atom_nfa(const Formula& f, const LayeredAlphabet& al) {
    if (f.args().size() == 1) {
      int base_idx = -1;
      for (std::size_t i = 0; i < base_.size(); ++i) {
        if (base_[i] == f.rel()) base_idx = static_cast<int>(i);
      }
      if (base_idx < 0) {
        throw VocabularyError("'" + f.rel() + "' is not a letter of the word vocabulary");
      }
      int x = track_of(al, f.args()[0]);
      return mask_automaton(al, [x, base_idx](int base, unsigned bits, unsigned) {
        return ((bits >> x) & 1u) == 0 || base == base_idx;
      });
    }
    if (f.rel() != "<") {
      throw VocabularyError("'" + f.rel() + "' is not part of a word vocabulary");
    }
    int x = track_of(al, f.args()[0]);
    int y = track_of(al, f.args()[1]);
    return mask_automaton(al, [x, y](int, unsigned bits, unsigned mask) {
      bool marks_x = (bits >> x) & 1u;
      bool marks_y = (bits >> y) & 1u;
      if (marks_x && marks_y) return false;        // same position is not "<"
      if (marks_y) return ((mask >> x) & 1u) != 0;  // x must come strictly before y
      return true;
    });
  }

  Nfa complement_valid(const Nfa& a, const LayeredAlphabet& al) {
    Nfa d = determinize_complement(a, state_cap_);
    if (al.track_count() == 0) return prune_unreachable(d);
    return prune_unreachable(product_intersect(d, valid_tracks_nfa(al)));
  }

  std::vector<std::string> base_;
  int state_cap_;
};

}  // namespace

Nfa formula_to_nfa(const Formula& f, const std::vector<std::string>& base_letters,
                   const std::vector<std::string>& tracks, int state_cap) {
  if (base_letters.empty()) throw VocabularyError("word vocabulary needs at least one letter");
  Vocabulary vocab = word_vocabulary(base_letters);
  if (!uses_only(f, vocab)) {
    throw VocabularyError("formula is not over the given word vocabulary");
  }
  for (const auto& v : free_vars(f)) {
    if (std::find(tracks.begin(), tracks.end(), v) == tracks.end()) {
      throw VocabularyError("free variable '" + v + "' has no track");
    }
  }
  Formula rectified = Rectifier(tracks).run(f);
  LayeredAlphabet al{base_letters, tracks};
  return Compiler(base_letters, state_cap).compile(rectified, al);
}

namespace {

Word decode_word(const Nfa& a, const std::vector<int>& letters) {
  Word w;
  for (int letter : letters) w.letters.push_back(a.alphabet.base[a.alphabet.base_of(letter)]);
  return w;
}

void check_word_sentence(const Sentence& s, const Vocabulary& vocab) {
  if (!uses_only(s.formula, vocab)) {
    throw VocabularyError("sentence is not over the given word vocabulary");
  }
}

}  // namespace

std::optional<Word> word_sat(const Sentence& s, const std::vector<std::string>& letters,
                             int state_cap) {
  check_word_sentence(s, word_vocabulary(letters));
  Nfa a = formula_to_nfa(s.formula, letters, {}, state_cap);
  auto witness = is_empty_with_witness(a, 1);  // domains are nonempty
  if (!witness) return std::nullopt;
  return decode_word(a, *witness);
}

std::optional<Word> word_equiv(const Sentence& s1, const Sentence& s2,
                               const std::vector<std::string>& letters, int state_cap) {
  Vocabulary vocab = word_vocabulary(letters);
  check_word_sentence(s1, vocab);
  check_word_sentence(s2, vocab);
  Nfa a1 = formula_to_nfa(s1.formula, letters, {}, state_cap);
  Nfa a2 = formula_to_nfa(s2.formula, letters, {}, state_cap);
  Nfa not_a1 = determinize_complement(a1, state_cap);
  Nfa not_a2 = determinize_complement(a2, state_cap);
  Nfa diff = nfa_union(prune_unreachable(product_intersect(a1, not_a2)),
                       prune_unreachable(product_intersect(a2, not_a1)));
  auto witness = is_empty_with_witness(diff, 1);
  if (!witness) return std::nullopt;
  return decode_word(diff, *witness);
}

}  // namespace fowb
