#include "apartness_lab/prover.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace apartness_lab {

std::string print(const Sequent& sequent) {
  std::string out;
  for (std::size_t i = 0; i < sequent.antecedent.size(); ++i) {
    if (i > 0) out += ", ";
    out += print(sequent.antecedent[i]);
  }
  out += out.empty() ? "=> " : " => ";
  return out + print(sequent.succedent);
}

std::size_t Derivation::size() const {
  std::size_t total = 1;
  for (const auto& p : premises) total += p.size();
  return total;
}

namespace {

void write_derivation(const Derivation& d, int indent, std::ostringstream& out) {
  out << std::string(static_cast<std::size_t>(indent) * 2, ' ') << print(d.conclusion) << "   ["
      << d.rule << "]\n";
  for (const auto& p : d.premises) write_derivation(p, indent + 1, out);
}

struct SequentHash {
  std::size_t operator()(const Sequent& s) const {
    std::size_t h = s.succedent.hash();
    for (const auto& f : s.antecedent) h = h * 1000003u ^ f.hash();
    return h;
  }
};

using Kind = Formula::Kind;

bool is_kind(const Formula& f, Kind k) { return f.kind() == k; }

Sequent normalized(std::vector<Formula> antecedent, Formula succedent) {
  antecedent.erase(std::remove_if(antecedent.begin(), antecedent.end(),
                                  [](const Formula& f) { return is_kind(f, Kind::Top); }),
                   antecedent.end());
  std::sort(antecedent.begin(), antecedent.end());
  antecedent.erase(std::unique(antecedent.begin(), antecedent.end()), antecedent.end());
  return Sequent{std::move(antecedent), std::move(succedent)};
}

// The antecedent without position i, plus `extra`.
std::vector<Formula> replace_at(const std::vector<Formula>& antecedent, std::size_t i,
                                std::initializer_list<Formula> extra) {
  std::vector<Formula> out;
  out.reserve(antecedent.size() + extra.size());
  for (std::size_t j = 0; j < antecedent.size(); ++j) {
    if (j != i) out.push_back(antecedent[j]);
  }
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

class ProofSearch {
 public:
  bool prove(const Sequent& goal) {
    if (auto it = memo_.find(goal); it != memo_.end()) return it->second.provable;
    Entry entry = search(goal);
    const bool provable = entry.provable;
    memo_.emplace(goal, std::move(entry));
    return provable;
  }

  Derivation derivation(const Sequent& goal) const {
    const Entry& entry = memo_.at(goal);
    Derivation d{goal, entry.rule, {}};
    for (const auto& premise : entry.premises) d.premises.push_back(derivation(premise));
    return d;
  }

 private:
  struct Entry {
    bool provable = false;
    std::string rule;
    std::vector<Sequent> premises;
  };

  static Entry success(const char* rule, std::vector<Sequent> premises = {}) {
    return Entry{true, rule, std::move(premises)};
  }

  Entry all_of(const char* rule, std::vector<Sequent> premises) {
    for (const auto& p : premises) {
      if (!prove(p)) return Entry{};
    }
    return success(rule, std::move(premises));
  }

  Entry search(const Sequent& s) {
    const auto& gamma = s.antecedent;
    const Formula& goal = s.succedent;
    const auto has = [&](const Formula& f) { return std::binary_search(gamma.begin(), gamma.end(), f); };

    if (has(Formula::bottom())) return success("L-bot");
    if (is_kind(goal, Kind::Top)) return success("R-top");
    if (has(goal)) return success("Ax");

    // Invertible left rules: the first applicable formula decides the sequent.
    for (std::size_t i = 0; i < gamma.size(); ++i) {
      const Formula& f = gamma[i];
      if (is_kind(f, Kind::And)) {
        return all_of("L-and", {normalized(replace_at(gamma, i, {f.lhs(), f.rhs()}), goal)});
      }
      if (is_kind(f, Kind::Or)) {
        return all_of("L-or", {normalized(replace_at(gamma, i, {f.lhs()}), goal),
                               normalized(replace_at(gamma, i, {f.rhs()}), goal)});
      }
      if (!is_kind(f, Kind::Implies)) continue;
      const Formula& a = f.lhs();
      const Formula& d = f.rhs();
      switch (a.kind()) {
        case Kind::Atom:
          if (has(a)) return all_of("L-imp-atom", {normalized(replace_at(gamma, i, {d}), goal)});
          break;
        case Kind::Bottom:
          return all_of("L-imp-bot", {normalized(replace_at(gamma, i, {}), goal)});
        case Kind::Top:
          return all_of("L-imp-top", {normalized(replace_at(gamma, i, {d}), goal)});
        case Kind::And: {
          Formula curried = Formula::implies(a.lhs(), Formula::implies(a.rhs(), d));
          return all_of("L-imp-and", {normalized(replace_at(gamma, i, {curried}), goal)});
        }
        case Kind::Or:
          return all_of("L-imp-or", {normalized(replace_at(gamma, i, {Formula::implies(a.lhs(), d),
                                                                      Formula::implies(a.rhs(), d)}),
                                                goal)});
        case Kind::Implies: break;  // not invertible, tried below
      }
    }

    if (is_kind(goal, Kind::And)) {
      return all_of("R-and", {normalized(gamma, goal.lhs()), normalized(gamma, goal.rhs())});
    }
    if (is_kind(goal, Kind::Implies)) {
      std::vector<Formula> extended = gamma;
      extended.push_back(goal.lhs());
      return all_of("R-imp", {normalized(std::move(extended), goal.rhs())});
    }

    if (is_kind(goal, Kind::Or)) {
      Sequent left = normalized(gamma, goal.lhs());
      if (prove(left)) return success("R-or1", {left});
      Sequent right = normalized(gamma, goal.rhs());
      if (prove(right)) return success("R-or2", {right});
    }
    // (A -> B) -> D  :  from  B -> D, Gamma => A -> B  and  D, Gamma => goal.
    for (std::size_t i = 0; i < gamma.size(); ++i) {
      const Formula& f = gamma[i];
      if (!is_kind(f, Kind::Implies) || !is_kind(f.lhs(), Kind::Implies)) continue;
      const Formula& ab = f.lhs();
      const Formula& d = f.rhs();
      Sequent first = normalized(replace_at(gamma, i, {Formula::implies(ab.rhs(), d)}), ab);
      if (!prove(first)) continue;
      Sequent second = normalized(replace_at(gamma, i, {d}), goal);
      if (prove(second)) return success("L-imp-imp", {first, second});
    }
    return Entry{};
  }

  std::unordered_map<Sequent, Entry, SequentHash> memo_;
};

}  // namespace

std::string Derivation::to_text() const {
  std::ostringstream out;
  write_derivation(*this, 0, out);
  return out.str();
}

bool ipc_prove(const Formula& formula, Derivation* trace) {
  ProofSearch search;
  const Sequent root = normalized({}, formula);
  const bool provable = search.prove(root);
  if (provable && trace != nullptr) *trace = search.derivation(root);
  return provable;
}

// ---------------------------------------------------------------------------
// Kripke semantics

namespace {

// A formula flattened into distinct subformulas, children before parents, so a
// model is checked with one pass of mask operations.
class ForcingProgram {
 public:
  ForcingProgram(const Formula& formula, const std::vector<std::string>& atoms) {
    std::unordered_map<Formula, std::size_t, FormulaHash> slots;
    compile(formula, atoms, slots);
  }

  // `up[w]` is the set of worlds reachable from w; `valuation[a]` the truth set of atom a.
  std::uint32_t run(const std::vector<std::uint32_t>& up, const std::vector<std::uint32_t>& valuation,
                    std::vector<std::uint32_t>& scratch) const {
    const std::size_t n = up.size();
    const std::uint32_t all = n == 32 ? ~0u : (1u << n) - 1;
    scratch.resize(steps_.size());
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      const Step& s = steps_[i];
      switch (s.kind) {
        case Kind::Atom: scratch[i] = valuation[s.lhs]; break;
        case Kind::Bottom: scratch[i] = 0; break;
        case Kind::Top: scratch[i] = all; break;
        case Kind::And: scratch[i] = scratch[s.lhs] & scratch[s.rhs]; break;
        case Kind::Or: scratch[i] = scratch[s.lhs] | scratch[s.rhs]; break;
        case Kind::Implies: {
          const std::uint32_t bad = scratch[s.lhs] & ~scratch[s.rhs];
          std::uint32_t result = 0;
          for (std::size_t w = 0; w < n; ++w) {
            if ((up[w] & bad) == 0) result |= 1u << w;
          }
          scratch[i] = result;
          break;
        }
      }
    }
    return scratch.back();
  }

 private:
  struct Step {
    Kind kind;
    std::size_t lhs = 0;  // atom index for atoms
    std::size_t rhs = 0;
  };

  std::size_t compile(const Formula& f, const std::vector<std::string>& atoms,
                      std::unordered_map<Formula, std::size_t, FormulaHash>& slots) {
    if (auto it = slots.find(f); it != slots.end()) return it->second;
    Step step{f.kind()};
    if (f.is_atom()) {
      auto pos = std::find(atoms.begin(), atoms.end(), f.name());
      step.lhs = static_cast<std::size_t>(pos - atoms.begin());
    } else if (f.is_binary()) {
      step.lhs = compile(f.lhs(), atoms, slots);
      step.rhs = compile(f.rhs(), atoms, slots);
    }
    steps_.push_back(step);
    slots.emplace(f, steps_.size() - 1);
    return steps_.size() - 1;
  }

  std::vector<Step> steps_;
};

std::vector<std::uint32_t> up_sets(const Poset& order) {
  std::vector<std::uint32_t> up(order.size());
  for (std::size_t w = 0; w < order.size(); ++w) up[w] = order.up(w);
  return up;
}

// Rooted frames with exactly n worlds, root first: a fresh world below each poset
// of size n - 1.
std::vector<Poset> rooted_frames(std::size_t n) {
  std::vector<Poset> frames;
  for (const Poset& p : posets_of_size(n - 1)) {
    std::vector<std::uint32_t> up(n);
    up[0] = (n == 32 ? ~0u : (1u << n) - 1);
    for (std::size_t i = 0; i < p.size(); ++i) up[i + 1] = p.up(i) << 1;
    frames.push_back(Poset::from_up_masks(std::move(up)));
  }
  return frames;
}

std::vector<std::uint32_t> upsets(const Poset& order) {
  std::vector<std::uint32_t> out;
  const std::uint32_t limit = 1u << order.size();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    bool closed = true;
    for (std::size_t w = 0; w < order.size() && closed; ++w) {
      if ((mask >> w) & 1u) closed = (order.up(w) & ~mask) == 0;
    }
    if (closed) out.push_back(mask);
  }
  return out;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max()
                                                           : a + b;
}

void check_world_bound(std::size_t worlds) {
  if (worlds < 1 || worlds > kMaxKripkeWorlds) {
    throw std::invalid_argument("world bound must be between 1 and " +
                                std::to_string(kMaxKripkeWorlds));
  }
}

}  // namespace

KripkeModel::KripkeModel(Poset order, std::vector<std::string> atoms,
                         std::vector<std::uint32_t> valuation)
    : order_(std::move(order)), atoms_(std::move(atoms)), valuation_(std::move(valuation)) {
  if (order_.size() == 0 || !order_.is_rooted() || order_.up(0) != (1u << order_.size()) - 1) {
    throw std::invalid_argument("Kripke frame must be rooted at world 0");
  }
  if (valuation_.size() != atoms_.size()) {
    throw std::invalid_argument("one truth set per atom expected");
  }
  for (std::size_t a = 0; a < atoms_.size(); ++a) {
    for (std::size_t w = 0; w < order_.size(); ++w) {
      if (((valuation_[a] >> w) & 1u) && (order_.up(w) & ~valuation_[a]) != 0) {
        throw std::invalid_argument("truth set of '" + atoms_[a] + "' is not persistent");
      }
    }
  }
}

std::uint32_t KripkeModel::truth_set(const std::string& atom) const {
  auto it = std::find(atoms_.begin(), atoms_.end(), atom);
  return it == atoms_.end() ? 0 : valuation_[static_cast<std::size_t>(it - atoms_.begin())];
}

std::uint32_t KripkeModel::forcing_set(const Formula& formula) const {
  std::vector<std::string> names = atoms_;
  std::vector<std::uint32_t> values = valuation_;
  for (const auto& atom : free_atoms(formula)) {
    if (std::find(names.begin(), names.end(), atom) == names.end()) {
      names.push_back(atom);
      values.push_back(0);
    }
  }
  std::vector<std::uint32_t> scratch;
  return ForcingProgram(formula, names).run(up_sets(order_), values, scratch);
}

bool KripkeModel::forces(std::size_t world, const Formula& formula) const {
  return (forcing_set(formula) >> world) & 1u;
}

std::string KripkeModel::to_text() const {
  std::ostringstream out;
  out << "worlds: " << worlds() << " (root w0)\n";
  for (std::size_t w = 0; w < worlds(); ++w) {
    out << "  w" << w << ":";
    std::string successors;
    for (const auto& [lo, hi] : order_.covers()) {
      if (static_cast<std::size_t>(lo) == w) successors += " w" + std::to_string(hi);
    }
    out << " sees{" << (successors.empty() ? "" : successors.substr(1)) << "}";
    out << " forces{";
    bool first = true;
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
      if ((valuation_[a] >> w) & 1u) {
        out << (first ? "" : " ") << atoms_[a];
        first = false;
      }
    }
    out << "}\n";
  }
  return out.str();
}

std::string KripkeModel::to_dot() const {
  std::ostringstream out;
  out << "digraph kripke {\n  rankdir=BT;\n";
  for (std::size_t w = 0; w < worlds(); ++w) {
    std::string label = "w" + std::to_string(w);
    std::string true_atoms;
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
      if ((valuation_[a] >> w) & 1u) true_atoms += (true_atoms.empty() ? "" : ",") + atoms_[a];
    }
    if (!true_atoms.empty()) label += ": " + true_atoms;
    out << "  w" << w << " [label=\"" << label << "\"];\n";
  }
  for (const auto& [lo, hi] : order_.covers()) out << "  w" << lo << " -> w" << hi << ";\n";
  out << "}\n";
  return out.str();
}

std::uint64_t countermodel_search_cost(std::size_t worlds, std::size_t atoms) {
  check_world_bound(worlds);
  std::uint64_t total = 0;
  for (const Poset& frame : rooted_frames(worlds)) {
    std::uint64_t per_frame = 1;
    const std::uint64_t choices = upsets(frame).size();
    for (std::size_t a = 0; a < atoms; ++a) per_frame = saturating_mul(per_frame, choices);
    total = saturating_add(total, per_frame);
  }
  return total;
}

namespace {

std::optional<KripkeModel> search_frames(std::size_t worlds,
                                         const std::vector<std::string>& atoms,
                                         const ForcingProgram& program) {
  std::vector<std::uint32_t> scratch;
  for (const Poset& frame : rooted_frames(worlds)) {
    const std::vector<std::uint32_t> choices = upsets(frame);
    const std::vector<std::uint32_t> up = up_sets(frame);
    std::vector<std::size_t> digit(atoms.size(), 0);
    std::vector<std::uint32_t> valuation(atoms.size(), choices.front());
    for (;;) {
      if ((program.run(up, valuation, scratch) & 1u) == 0) {
        return KripkeModel(frame, atoms, valuation);
      }
      std::size_t a = 0;
      while (a < atoms.size() && ++digit[a] == choices.size()) {
        digit[a] = 0;
        valuation[a] = choices[0];
        ++a;
      }
      if (a == atoms.size()) break;
      valuation[a] = choices[digit[a]];
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<KripkeModel> kripke_countermodel(const Formula& formula, std::size_t max_worlds) {
  check_world_bound(max_worlds);
  const auto atom_set = free_atoms(formula);
  const std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  const ForcingProgram program(formula, atoms);
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    if (auto model = search_frames(n, atoms, program)) return model;
  }
  return std::nullopt;
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Valid: return "valid";
    case Outcome::Invalid: return "invalid";
    case Outcome::Undecided: return "undecided";
  }
  return "?";
}

Decision decide(const Formula& formula, std::size_t max_worlds) {
  check_world_bound(max_worlds);
  Decision decision;
  Derivation trace;
  const bool provable = ipc_prove(formula, &trace);

  const std::size_t atoms = free_atoms(formula).size();
  std::size_t bound = 1;
  std::uint64_t spent = countermodel_search_cost(1, atoms);
  while (bound < max_worlds) {
    const std::uint64_t next = saturating_add(spent, countermodel_search_cost(bound + 1, atoms));
    if (next > kCrossCheckBudget) break;
    spent = next;
    ++bound;
  }
  decision.countermodel = kripke_countermodel(formula, bound);
  decision.searched_worlds = decision.countermodel ? decision.countermodel->worlds() : bound;

  if (provable && decision.countermodel) {
    throw std::logic_error("prover and countermodel search disagree on '" + print(formula) + "'");
  }
  if (provable) {
    decision.outcome = Outcome::Valid;
    decision.derivation = std::move(trace);
  } else {
    decision.outcome = decision.countermodel ? Outcome::Invalid : Outcome::Undecided;
  }
  return decision;
}

bool CorpusReport::all_matched() const {
  return std::all_of(entries.begin(), entries.end(), [](const CorpusEntry& e) { return e.matched(); });
}

CorpusReport check_corpus(std::size_t max_worlds) {
  struct Item {
    const char* label;
    const char* text;
    Outcome expected;
  };
  static const Item kItems[] = {
      {"equal when both are false", "(~X & ~Y) -> (X <-> Y)", Outcome::Valid},
      {"candidate 2 cotransitive under weak excluded middle",
       "(~P | ~~P) & (~Q | ~~Q) & (~R | ~~R) & ~(P <-> Q) -> ~(P <-> R) | ~(R <-> Q)",
       Outcome::Valid},
      {"double negations bound the apartness",
       "~~P & ~~Q & (S <-> ~~Q) & (T <-> ~~~P) & (S -> T | U) -> U", Outcome::Valid},
      {"weak excluded middle is not provable", "~P | ~~P", Outcome::Invalid},
      {"excluded middle is not provable", "P | ~P", Outcome::Invalid},
      {"candidate 2 irreflexive", "~~(P <-> P)", Outcome::Valid},
      {"candidate 2 symmetric", "~(P <-> Q) -> ~(Q <-> P)", Outcome::Valid},
  };
  CorpusReport report;
  for (const Item& item : kItems) {
    const Formula f = parse(item.text);
    report.entries.push_back({item.label, f, item.expected, decide(f, max_worlds)});
  }
  return report;
}

}  // namespace apartness_lab
