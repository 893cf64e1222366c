#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fowb/fo.hpp"

namespace fowb {

// A finite relational structure over the domain {0, ..., size-1}. Every
// symbol of the ambient vocabulary has an entry, possibly empty; the
// vocabulary is recovered from the relation tables.
struct Structure {
  int size = 0;
  std::map<std::string, std::set<int>> unary;
  std::map<std::string, std::set<std::pair<int, int>>> binary;

  Vocabulary vocabulary() const;
  bool operator==(const Structure&) const = default;
};

using Assignment = std::map<std::string, int>;

// A word as a letter sequence; each letter is a unary symbol name.
struct Word {
  std::vector<std::string> letters;
  bool operator==(const Word&) const = default;
};

// Tarskian satisfaction; quantifiers range over {0, ..., size-1}.
bool eval(const Formula& f, const Structure& s, const Assignment& a);
bool eval(const Sentence& s, const Structure& st);

// True iff "<" is a strict total order and the unary relations partition the
// domain. Requires the structure's binary symbols to be exactly {"<"}.
bool is_word(const Structure& s);

Structure word_to_structure(const Word& w, const Vocabulary& vocab);

// Reads the letters back off a word structure (requires is_word).
Word word_of_structure(const Structure& s);

Structure restrict_vocabulary(const Structure& s, const Vocabulary& vocab);

// Irreflexivity, transitivity and totality for one binary symbol.
Formula linear_order_axioms(const std::string& order_symbol);

// Order axioms for "<" plus exactly-one-letter axioms for the unary symbols.
Sentence word_axioms(const Vocabulary& vocab);

// Renames element e to perm[e] everywhere; perm must be a permutation of the
// domain.
Structure apply_permutation(const Structure& s, const std::vector<int>& perm);

std::string structure_to_text(const Structure& s);

// Without a vocabulary, the arity of an empty relation is read as unary; the
// vocabulary overload is authoritative and fills in missing symbols.
Structure structure_from_text(std::string_view text);
Structure structure_from_text(std::string_view text, const Vocabulary& vocab);

}  // namespace fowb
