#include "fowb/reduction.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace fowb {

namespace {

const char* kCellRel[] = {"P_zero", "P_one", "P_empty"};  // indexed by TapeSym

char sym_char(TapeSym s) { return s == TapeSym::Zero ? '0' : s == TapeSym::One ? '1' : '_'; }

bool is_state_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '_';
    if (!ok) return false;
  }
  return true;
}

std::string head_rel(const std::string& state) { return "H_" + state; }

}  // namespace

TmSpec parse_tm(std::string_view text) {
  TmSpec m;
  bool have_states = false, have_start = false, have_halt = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "states:") {
      if (have_states) throw ParseError(line_no, 1, "duplicate 'states:' line");
      std::string name;
      while (ls >> name) {
        if (!is_state_name(name)) throw ParseError(line_no, 1, "bad state name '" + name + "'");
        if (std::find(m.states.begin(), m.states.end(), name) != m.states.end()) {
          throw ParseError(line_no, 1, "duplicate state '" + name + "'");
        }
        m.states.push_back(name);
      }
      if (m.states.empty()) throw ParseError(line_no, 1, "empty state list");
      have_states = true;
    } else if (key == "start:") {
      if (have_start) throw ParseError(line_no, 1, "duplicate 'start:' line");
      if (!(ls >> m.start)) throw ParseError(line_no, 1, "missing start state");
      have_start = true;
    } else if (key == "halt:") {
      if (have_halt) throw ParseError(line_no, 1, "duplicate 'halt:' line");
      std::string name;
      while (ls >> name) m.halting.insert(name);
      if (m.halting.empty()) throw ParseError(line_no, 1, "empty halting set");
      have_halt = true;
    } else if (key == "trans:") {
      std::string from, sym, arrow, to, write, move;
      if (!(ls >> from >> sym >> arrow >> to >> write >> move) || arrow != "->") {
        throw ParseError(line_no, 1, "expected 'trans: STATE SYM -> STATE SYM MOVE'");
      }
      auto parse_sym = [&](const std::string& s) {
        if (s == "0") return TapeSym::Zero;
        if (s == "1") return TapeSym::One;
        if (s == "_") return TapeSym::Blank;
        throw ParseError(line_no, 1, "bad tape symbol '" + s + "' (use 0, 1 or _)");
      };
      Move mv;
      if (move == "L") {
        mv = Move::Left;
      } else if (move == "R") {
        mv = Move::Right;
      } else if (move == "S") {
        mv = Move::Stay;
      } else {
        throw ParseError(line_no, 1, "bad move '" + move + "' (use L, R or S)");
      }
      auto key_pair = std::make_pair(from, parse_sym(sym));
      if (m.transitions.count(key_pair)) {
        throw ParseError(line_no, 1,
                         "duplicate transition for (" + from + ", " + sym + ")");
      }
      m.transitions[key_pair] = TmRule{to, parse_sym(write), mv};
    } else {
      throw ParseError(line_no, 1, "unknown directive '" + key + "'");
    }
  }
  if (!have_states) throw ParseError(line_no, 1, "missing 'states:' line");
  if (!have_start) throw ParseError(line_no, 1, "missing 'start:' line");
  if (!have_halt) throw ParseError(line_no, 1, "missing 'halt:' line");

  auto known = [&](const std::string& q) {
    return std::find(m.states.begin(), m.states.end(), q) != m.states.end();
  };
  if (!known(m.start)) throw VocabularyError("start state '" + m.start + "' is not declared");
  for (const auto& q : m.halting) {
    if (!known(q)) throw VocabularyError("halting state '" + q + "' is not declared");
  }
  for (const auto& [key, rule] : m.transitions) {
    if (!known(key.first)) {
      throw VocabularyError("transition from undeclared state '" + key.first + "'");
    }
    if (!known(rule.state)) {
      throw VocabularyError("transition to undeclared state '" + rule.state + "'");
    }
    if (m.is_halting(key.first)) {
      throw VocabularyError("halting state '" + key.first + "' has an outgoing transition");
    }
  }
  for (const auto& q : m.states) {
    if (m.is_halting(q)) continue;
    for (TapeSym s : {TapeSym::Zero, TapeSym::One, TapeSym::Blank}) {
      if (!m.transitions.count({q, s})) {
        throw VocabularyError("state '" + q + "' is missing a transition for symbol '" +
                              std::string(1, sym_char(s)) + "'");
      }
    }
  }
  return m;
}

std::optional<SimHalted> simulate(const TmSpec& m, std::string_view input, int max_steps) {
  std::vector<TapeSym> tape;
  for (char c : input) {
    if (c == '0') {
      tape.push_back(TapeSym::Zero);
    } else if (c == '1') {
      tape.push_back(TapeSym::One);
    } else {
      throw std::invalid_argument("input must be a binary string");
    }
  }
  if (tape.empty()) tape.push_back(TapeSym::Blank);

  std::string state = m.start;
  int head = 0;
  int max_head = 0;
  RunTrace trace;
  trace.configs.push_back({state, head, tape});
  int steps = 0;
  while (!m.is_halting(state)) {
    if (steps >= max_steps) return std::nullopt;
    auto it = m.transitions.find({state, tape[head]});
    assert(it != m.transitions.end());
    const TmRule& rule = it->second;
    tape[head] = rule.write;
    if (rule.move == Move::Left) {
      if (head == 0) throw std::logic_error("left move at cell 0 (one-way tape)");
      --head;
    } else if (rule.move == Move::Right) {
      ++head;
      if (head >= static_cast<int>(tape.size())) tape.push_back(TapeSym::Blank);
    }
    max_head = std::max(max_head, head);
    state = rule.state;
    ++steps;
    trace.configs.push_back({state, head, tape});
  }
  SimHalted out;
  out.steps = steps;
  out.cells_used = std::max(static_cast<int>(input.size()), 1 + max_head);
  out.trace = std::move(trace);
  return out;
}

Vocabulary grid_vocabulary(const TmSpec& m) {
  std::vector<std::string> binary = {"<", "<'", "P_zero", "P_one", "P_empty"};
  for (const auto& q : m.states) binary.push_back(head_rel(q));
  return Vocabulary(kGridLetters, std::move(binary));
}

namespace {

Formula lt(const std::string& a, const std::string& b) { return Formula::atom("<", {a, b}); }

Formula first_in(const std::string& order, const std::string& z, const std::string& aux) {
  return Formula::forall(aux, Formula::negation(Formula::atom(order, {aux, z})));
}

Formula last_in(const std::string& order, const std::string& z, const std::string& aux) {
  return Formula::forall(aux, Formula::negation(Formula::atom(order, {z, aux})));
}

Formula succ_in(const std::string& order, const std::string& a, const std::string& b,
                const std::string& aux) {
  return Formula::conj(
      Formula::atom(order, {a, b}),
      Formula::negation(Formula::exists(
          aux, Formula::conj(Formula::atom(order, {a, aux}), Formula::atom(order, {aux, b})))));
}

Formula cell(TapeSym s, const std::string& row, const std::string& col) {
  return Formula::atom(kCellRel[static_cast<int>(s)], {row, col});
}

Formula head_at(const std::string& state, const std::string& row, const std::string& col) {
  return Formula::atom(head_rel(state), {row, col});
}

constexpr TapeSym kAllSyms[] = {TapeSym::Zero, TapeSym::One, TapeSym::Blank};

}  // namespace

Sentence input_word_sentence(std::string_view input) {
  if (input.empty()) {
    return Sentence(Formula::forall("y", Formula::atom("E", {"y"})));
  }
  int n = static_cast<int>(input.size());
  auto var = [](int i) { return "x" + std::to_string(i + 1); };
  std::vector<Formula> parts;
  parts.push_back(first_in("<", var(0), "w"));
  for (int i = 0; i + 1 < n; ++i) parts.push_back(succ_in("<", var(i), var(i + 1), "u"));
  for (int i = 0; i < n; ++i) {
    if (input[i] == '0') parts.push_back(Formula::atom("Z", {var(i)}));
  }
  for (int i = 0; i < n; ++i) {
    if (input[i] == '1') parts.push_back(Formula::atom("O", {var(i)}));
  }
  for (int i = 0; i < n; ++i) {
    if (input[i] != '0' && input[i] != '1') {
      throw std::invalid_argument("input must be a binary string");
    }
  }
  parts.push_back(Formula::forall(
      "y", Formula::implies(lt(var(n - 1), "y"), Formula::atom("E", {"y"}))));
  Formula body = conj_all(parts);
  for (int i = n - 1; i >= 0; --i) body = Formula::exists(var(i), body);
  return Sentence(body);
}

Sentence machine_run_sentence(const TmSpec& m) {
  std::vector<Formula> parts;

  // (a) the letters and "<" form a word
  parts.push_back(word_axioms(word_vocabulary(kGridLetters)).formula);

  // (b) <' is a strict total order
  parts.push_back(linear_order_axioms("<'"));

  // (c) every grid position holds exactly one cell content
  {
    std::vector<Formula> one;
    one.push_back(disj_all({cell(TapeSym::Zero, "r", "c"), cell(TapeSym::One, "r", "c"),
                            cell(TapeSym::Blank, "r", "c")}));
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        one.push_back(Formula::negation(
            Formula::conj(cell(kAllSyms[i], "r", "c"), cell(kAllSyms[j], "r", "c"))));
      }
    }
    parts.push_back(Formula::forall("r", Formula::forall("c", conj_all(one))));
  }

  // (d) every row has exactly one head atom
  {
    std::vector<Formula> any;
    for (const auto& q : m.states) any.push_back(head_at(q, "r", "c"));
    parts.push_back(Formula::forall("r", Formula::exists("c", disj_all(any))));

    std::vector<Formula> unique;
    for (std::size_t i = 0; i < m.states.size(); ++i) {
      for (std::size_t j = i; j < m.states.size(); ++j) {
        Formula both = Formula::conj(head_at(m.states[i], "r", "c"),
                                     head_at(m.states[j], "r", "d"));
        if (i == j) {
          unique.push_back(Formula::implies(both, Formula::eq("c", "d")));
        } else {
          unique.push_back(Formula::negation(both));
        }
      }
    }
    parts.push_back(
        Formula::forall("r", Formula::forall("c", Formula::forall("d", conj_all(unique)))));
  }

  // (e) the first row reads the tape off the letters
  parts.push_back(Formula::exists(
      "x",
      Formula::conj(first_in("<'", "x", "w"),
                    Formula::forall(
                        "y", conj_all({Formula::implies(Formula::atom("Z", {"y"}),
                                                        cell(TapeSym::Zero, "x", "y")),
                                       Formula::implies(Formula::atom("O", {"y"}),
                                                        cell(TapeSym::One, "x", "y")),
                                       Formula::implies(Formula::atom("E", {"y"}),
                                                        cell(TapeSym::Blank, "x", "y"))})))));

  // (f) the head starts at the first column of the first row
  parts.push_back(Formula::exists(
      "r", Formula::exists("c", conj_all({first_in("<'", "r", "w"), first_in("<", "c", "w"),
                                          head_at(m.start, "r", "c")}))));

  // (g) consecutive rows follow the transition table
  Formula succ_row = succ_in("<'", "r", "s", "u");
  for (const auto& q : m.states) {
    if (m.is_halting(q)) continue;
    for (TapeSym sym : kAllSyms) {
      const TmRule& rule = m.transitions.at({q, sym});
      Formula premise = conj_all({succ_row, head_at(q, "r", "c"), cell(sym, "r", "c")});
      Formula moved = rule.move == Move::Stay
                          ? head_at(rule.state, "s", "c")
                          : rule.move == Move::Right
                                ? Formula::exists(
                                      "d", Formula::conj(succ_in("<", "c", "d", "u"),
                                                         head_at(rule.state, "s", "d")))
                                : Formula::exists(
                                      "d", Formula::conj(succ_in("<", "d", "c", "u"),
                                                         head_at(rule.state, "s", "d")));
      Formula conclusion = Formula::conj(cell(rule.write, "s", "c"), moved);
      parts.push_back(Formula::forall(
          "r", Formula::forall("s", Formula::forall("c", Formula::implies(premise, conclusion)))));
    }
  }

  // cells away from a working head copy to the next row
  {
    std::vector<Formula> working;
    for (const auto& q : m.states) {
      if (!m.is_halting(q)) working.push_back(head_at(q, "r", "c"));
    }
    for (TapeSym sym : kAllSyms) {
      Formula premise = working.empty()
                            ? conj_all({succ_row, cell(sym, "r", "c")})
                            : conj_all({succ_row, Formula::negation(disj_all(working)),
                                        cell(sym, "r", "c")});
      parts.push_back(Formula::forall(
          "r", Formula::forall(
                   "s", Formula::forall("c", Formula::implies(premise, cell(sym, "s", "c"))))));
    }
  }

  // (h) a halting head stays put
  for (const auto& q : m.states) {
    if (!m.is_halting(q)) continue;
    parts.push_back(Formula::forall(
        "r", Formula::forall(
                 "s", Formula::forall("c", Formula::implies(
                                               Formula::conj(succ_row, head_at(q, "r", "c")),
                                               head_at(q, "s", "c"))))));
  }

  // (i) the last row has halted
  {
    std::vector<Formula> halted;
    for (const auto& q : m.states) {
      if (m.is_halting(q)) halted.push_back(head_at(q, "r", "c"));
    }
    parts.push_back(Formula::exists(
        "r", Formula::conj(last_in("<'", "r", "w"), Formula::exists("c", disj_all(halted)))));
  }

  return Sentence(conj_all(parts));
}

Sentence reduction_sentence(const TmSpec& m, std::string_view input) {
  return Sentence(
      Formula::conj(machine_run_sentence(m).formula, input_word_sentence(input).formula));
}

std::optional<int> minimum_grid_size(const TmSpec& m, std::string_view input, int max_steps) {
  auto sim = simulate(m, input, max_steps);
  if (!sim) return std::nullopt;
  return std::max({sim->steps + 1, sim->cells_used, 1});
}

RunTrace decode_run(const Structure& s, const TmSpec& m) {
  if (!eval(machine_run_sentence(m), s)) {
    throw NotAModelError("structure is not a model of the machine's run sentence");
  }
  auto order_positions = [&](const std::string& order) {
    const auto& rel = s.binary.at(order);
    std::vector<int> by_pos(s.size);
    for (int e = 0; e < s.size; ++e) {
      int pos = 0;
      for (int f = 0; f < s.size; ++f) {
        if (rel.count({f, e})) ++pos;
      }
      by_pos[pos] = e;
    }
    return by_pos;
  };
  std::vector<int> rows = order_positions("<'");
  std::vector<int> cols = order_positions("<");

  RunTrace trace;
  for (int r : rows) {
    TmConfig cfg;
    cfg.tape.reserve(s.size);
    for (int c : cols) {
      int found = -1;
      for (int k = 0; k < 3; ++k) {
        if (s.binary.at(kCellRel[k]).count({r, c})) {
          if (found >= 0) throw NotAModelError("ambiguous cell content in model");
          found = k;
        }
      }
      if (found < 0) throw NotAModelError("missing cell content in model");
      cfg.tape.push_back(static_cast<TapeSym>(found));
    }
    bool have_head = false;
    for (const auto& q : m.states) {
      const auto& rel = s.binary.at(head_rel(q));
      for (int ci = 0; ci < static_cast<int>(cols.size()); ++ci) {
        if (rel.count({r, cols[ci]})) {
          if (have_head) throw NotAModelError("ambiguous head position in model");
          have_head = true;
          cfg.state = q;
          cfg.head = ci;
        }
      }
    }
    if (!have_head) throw NotAModelError("row without a head in model");
    trace.configs.push_back(std::move(cfg));
  }
  while (trace.configs.size() >= 2 &&
         trace.configs.back() == trace.configs[trace.configs.size() - 2] &&
         m.is_halting(trace.configs.back().state)) {
    trace.configs.pop_back();
  }
  return trace;
}

bool same_run(const RunTrace& a, const RunTrace& b) {
  if (a.configs.size() != b.configs.size()) return false;
  for (std::size_t i = 0; i < a.configs.size(); ++i) {
    const TmConfig& x = a.configs[i];
    const TmConfig& y = b.configs[i];
    if (x.state != y.state || x.head != y.head) return false;
    std::size_t max_len = std::max(x.tape.size(), y.tape.size());
    for (std::size_t j = 0; j < max_len; ++j) {
      TapeSym sx = j < x.tape.size() ? x.tape[j] : TapeSym::Blank;
      TapeSym sy = j < y.tape.size() ? y.tape[j] : TapeSym::Blank;
      if (sx != sy) return false;
    }
  }
  return true;
}

std::string format_trace(const RunTrace& t) {
  std::ostringstream out;
  for (std::size_t i = 0; i < t.configs.size(); ++i) {
    const TmConfig& c = t.configs[i];
    out << "  [" << i << "] state " << c.state << " head " << c.head << " tape ";
    for (TapeSym s : c.tape) out << sym_char(s);
    out << "\n";
  }
  return out.str();
}

}  // namespace fowb
