#include "fowb/solver.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>
#include <tuple>

namespace fowb {

namespace {

// Literal during grounding: either a constant or a signed reference to a
// temporary variable. Atom temporaries are 1-based; auxiliary temporaries
// live above kAuxBase and are renumbered to follow the atoms at the end.
constexpr int kAuxBase = 1 << 24;

struct GLit {
  bool is_const = false;
  bool value = false;
  int lit = 0;
};

GLit make_const(bool b) { return GLit{true, b, 0}; }
GLit make_lit(int l) { return GLit{false, false, l}; }

GLit negate(GLit g) {
  if (g.is_const) return make_const(!g.value);
  return make_lit(-g.lit);
}

class Grounder {
 public:
  Grounder(int n, bool fix_order) : n_(n), fix_order_(fix_order) {}

  ClauseSet run(const Sentence& s) {
    std::map<std::string, int> env;
    GLit root = rec(s.formula, env);
    if (root.is_const) {
      if (!root.value) clauses_.push_back({});  // trivially unsatisfiable
    } else {
      clauses_.push_back({root.lit});
    }
    // renumber: atoms keep 1..A, auxiliary k becomes A + k
    int num_atoms = static_cast<int>(atom_list_.size());
    ClauseSet out;
    out.num_vars = num_atoms + aux_count_;
    out.atoms = std::move(atom_list_);
    out.clauses = std::move(clauses_);
    for (auto& clause : out.clauses) {
      for (auto& lit : clause) {
        int v = std::abs(lit);
        if (v >= kAuxBase) {
          int renumbered = num_atoms + (v - kAuxBase) + 1;
          lit = lit > 0 ? renumbered : -renumbered;
        }
      }
    }
    return out;
  }

 private:
  GLit rec(const Formula& f, std::map<std::string, int>& env) {
    switch (f.kind()) {
      case FormulaKind::True:
        return make_const(true);
      case FormulaKind::False:
        return make_const(false);
      case FormulaKind::Atom: {
        const auto& args = f.args();
        int a = element(args[0], env);
        int b = args.size() == 2 ? element(args[1], env) : -1;
        if (fix_order_ && f.rel() == "<") return make_const(a < b);
        return make_lit(atom_var(f.rel(), a, b));
      }
      case FormulaKind::Eq:
        return make_const(element(f.args()[0], env) == element(f.args()[1], env));
      case FormulaKind::Not:
        return negate(rec(f.child(), env));
      case FormulaKind::And:
        return and_of(rec(f.left(), env), rec(f.right(), env));
      case FormulaKind::Or:
        return or_of(rec(f.left(), env), rec(f.right(), env));
      case FormulaKind::Implies:
        return or_of(negate(rec(f.left(), env)), rec(f.right(), env));
      case FormulaKind::Exists:
      case FormulaKind::Forall: {
        bool universal = f.kind() == FormulaKind::Forall;
        auto old = env.find(f.var());
        bool had_old = old != env.end();
        int old_val = had_old ? old->second : 0;
        GLit acc = make_const(universal);
        for (int e = 0; e < n_; ++e) {
          env[f.var()] = e;
          GLit g = rec(f.child(), env);
          acc = universal ? and_of(acc, g) : or_of(acc, g);
        }
        if (had_old) {
          env[f.var()] = old_val;
        } else {
          env.erase(f.var());
        }
        return acc;
      }
    }
    throw std::logic_error("unreachable");
  }

  int element(const std::string& v, const std::map<std::string, int>& env) {
    auto it = env.find(v);
    if (it == env.end()) throw EvalError("unbound variable '" + v + "' while grounding");
    return it->second;
  }

  int atom_var(const std::string& rel, int a, int b) {
    auto key = std::make_tuple(rel, a, b);
    auto it = atom_ids_.find(key);
    if (it != atom_ids_.end()) return it->second;
    atom_list_.push_back(GroundAtom{rel, a, b});
    int id = static_cast<int>(atom_list_.size());
    atom_ids_.emplace(std::move(key), id);
    return id;
  }

  // One auxiliary per distinct ground subformula, defined by full
  // biconditional clauses so it can be shared across polarities.
  GLit and_of(GLit l, GLit r) {
    if (l.is_const) return l.value ? r : make_const(false);
    if (r.is_const) return r.value ? l : make_const(false);
    auto key = std::make_tuple(0, l.lit, r.lit);
    auto it = aux_cache_.find(key);
    if (it != aux_cache_.end()) return make_lit(it->second);
    int v = kAuxBase + aux_count_++;
    clauses_.push_back({-v, l.lit});
    clauses_.push_back({-v, r.lit});
    clauses_.push_back({v, -l.lit, -r.lit});
    aux_cache_.emplace(key, v);
    return make_lit(v);
  }

  GLit or_of(GLit l, GLit r) {
    if (l.is_const) return l.value ? make_const(true) : r;
    if (r.is_const) return r.value ? make_const(true) : l;
    auto key = std::make_tuple(1, l.lit, r.lit);
    auto it = aux_cache_.find(key);
    if (it != aux_cache_.end()) return make_lit(it->second);
    int v = kAuxBase + aux_count_++;
    clauses_.push_back({-v, l.lit, r.lit});
    clauses_.push_back({v, -l.lit});
    clauses_.push_back({v, -r.lit});
    aux_cache_.emplace(key, v);
    return make_lit(v);
  }

  int n_;
  bool fix_order_;
  std::map<std::tuple<std::string, int, int>, int> atom_ids_;
  std::vector<GroundAtom> atom_list_;
  std::map<std::tuple<int, int, int>, int> aux_cache_;
  int aux_count_ = 0;
  std::vector<std::vector<int>> clauses_;
};

}  // namespace

ClauseSet ground(const Sentence& s, int n, const GroundOptions& opts) {
  if (n < 1) throw std::invalid_argument("domain size must be at least 1");
  return Grounder(n, opts.fix_order).run(s);
}

namespace {

// Counter-based DPLL. For every clause we track how many literals are true
// and how many are unassigned; a clause with zero true and zero unassigned
// literals is a conflict, with exactly one unassigned literal a unit.
class Dpll {
 public:
  Dpll(const ClauseSet& cs, long long budget)
      : clauses_(cs.clauses), num_vars_(cs.num_vars), budget_(budget) {
    occ_.assign(2 * num_vars_ + 1, {});
    true_count_.assign(clauses_.size(), 0);
    free_count_.assign(clauses_.size(), 0);
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
      free_count_[ci] = static_cast<int>(clauses_[ci].size());
      for (int lit : clauses_[ci]) occ_[index_of(lit)].push_back(static_cast<int>(ci));
    }
    value_.assign(num_vars_ + 1, -1);
  }

  std::optional<std::vector<bool>> run() {
    for (const auto& clause : clauses_) {
      if (clause.empty()) return std::nullopt;
    }
    // top-level units
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
      if (clauses_[ci].size() == 1) pending_.push_back(clauses_[ci][0]);
    }
    if (!propagate()) return std::nullopt;
    for (;;) {
      int v = next_unassigned();
      if (v == 0) {
        std::vector<bool> model(num_vars_);
        for (int i = 1; i <= num_vars_; ++i) model[i - 1] = value_[i] == 1;
        return model;
      }
      decisions_.push_back({v, false, static_cast<int>(trail_.size())});
      pending_.push_back(-v);  // false first
      while (!propagate()) {
        if (!backtrack()) return std::nullopt;
      }
    }
  }

 private:
  struct Decision {
    int var;
    bool flipped;
    int trail_mark;
  };

  int index_of(int lit) const { return lit > 0 ? lit : num_vars_ - lit; }

  bool propagate() {
    while (!pending_.empty()) {
      int lit = pending_.back();
      pending_.pop_back();
      int v = std::abs(lit);
      int want = lit > 0 ? 1 : 0;
      if (value_[v] != -1) {
        if (value_[v] != want) return conflict();
        continue;
      }
      value_[v] = want;
      trail_.push_back(v);
      for (int ci : occ_[index_of(lit)]) ++true_count_[ci];
      for (int ci : occ_[index_of(lit)]) --free_count_[ci];
      // finish every counter update before reporting a conflict, so the
      // trail and the counters always agree when undo_to runs
      bool falsified = false;
      for (int ci : occ_[index_of(-lit)]) {
        --free_count_[ci];
        if (true_count_[ci] == 0) {
          if (free_count_[ci] == 0) {
            falsified = true;
          } else if (free_count_[ci] == 1) {
            for (int l : clauses_[ci]) {
              if (value_[std::abs(l)] == -1) {
                pending_.push_back(l);
                break;
              }
            }
          }
        }
      }
      if (falsified) return conflict();
    }
    return true;
  }

  bool conflict() {
    pending_.clear();
    if (++conflicts_ > budget_) {
      throw ResourceError("solver exceeded the conflict budget of " + std::to_string(budget_));
    }
    return false;
  }

  bool backtrack() {
    while (!decisions_.empty() && decisions_.back().flipped) {
      undo_to(decisions_.back().trail_mark);
      decisions_.pop_back();
    }
    if (decisions_.empty()) return false;
    Decision& d = decisions_.back();
    undo_to(d.trail_mark);
    d.flipped = true;
    pending_.push_back(d.var);
    return true;
  }

  void undo_to(int mark) {
    while (static_cast<int>(trail_.size()) > mark) {
      int v = trail_.back();
      trail_.pop_back();
      int lit = value_[v] == 1 ? v : -v;
      for (int ci : occ_[index_of(lit)]) --true_count_[ci];
      for (int ci : occ_[index_of(lit)]) ++free_count_[ci];
      for (int ci : occ_[index_of(-lit)]) ++free_count_[ci];
      value_[v] = -1;
    }
  }

  int next_unassigned() const {
    for (int v = 1; v <= num_vars_; ++v) {
      if (value_[v] == -1) return v;
    }
    return 0;
  }

  const std::vector<std::vector<int>>& clauses_;
  int num_vars_;
  long long budget_;
  long long conflicts_ = 0;
  std::vector<std::vector<int>> occ_;
  std::vector<int> true_count_;
  std::vector<int> free_count_;
  std::vector<int8_t> value_;
  std::vector<int> trail_;
  std::vector<int> pending_;
  std::vector<Decision> decisions_;
};

}  // namespace

std::optional<std::vector<bool>> solve_ground(const ClauseSet& c, const SolveOptions& opts) {
  return Dpll(c, opts.conflict_budget).run();
}

std::optional<Structure> find_model(const Sentence& s, int n, const Vocabulary& vocab,
                                    const FindOptions& opts) {
  ClauseSet cs = ground(s, n, GroundOptions{opts.fix_order});
  auto assignment = solve_ground(cs, SolveOptions{opts.conflict_budget});
  if (!assignment) return std::nullopt;
  Structure out;
  out.size = n;
  for (const auto& name : vocab.unary()) out.unary[name] = {};
  for (const auto& name : vocab.binary()) out.binary[name] = {};
  for (std::size_t i = 0; i < cs.atoms.size(); ++i) {
    if (!(*assignment)[i]) continue;
    const GroundAtom& a = cs.atoms[i];
    if (a.second < 0) {
      auto it = out.unary.find(a.rel);
      if (it == out.unary.end()) throw VocabularyError("atom '" + a.rel + "' outside vocabulary");
      it->second.insert(a.first);
    } else {
      auto it = out.binary.find(a.rel);
      if (it == out.binary.end()) throw VocabularyError("atom '" + a.rel + "' outside vocabulary");
      it->second.insert({a.first, a.second});
    }
  }
  if (opts.fix_order && out.binary.count("<")) {
    auto& less = out.binary["<"];
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) less.insert({i, j});
    }
  }
  return out;
}

std::optional<std::pair<int, Structure>> find_model_up_to(const Sentence& s, int max_n,
                                                          const Vocabulary& vocab,
                                                          const FindOptions& opts) {
  if (max_n < 1) throw std::invalid_argument("size bound must be at least 1");
  for (int n = 1; n <= max_n; ++n) {
    auto model = find_model(s, n, vocab, opts);
    if (model) return std::make_pair(n, std::move(*model));
  }
  return std::nullopt;
}

std::string to_dimacs(const ClauseSet& c) {
  std::ostringstream out;
  for (std::size_t i = 0; i < c.atoms.size(); ++i) {
    const GroundAtom& a = c.atoms[i];
    out << "c var " << i + 1 << " = " << a.rel << "(" << a.first;
    if (a.second >= 0) out << "," << a.second;
    out << ")\n";
  }
  out << "p cnf " << c.num_vars << " " << c.clauses.size() << "\n";
  for (const auto& clause : c.clauses) {
    for (int lit : clause) out << lit << " ";
    out << "0\n";
  }
  return out.str();
}

}  // namespace fowb
