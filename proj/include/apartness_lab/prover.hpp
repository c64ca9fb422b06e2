#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apartness_lab/formula.hpp"
#include "apartness_lab/poset.hpp"

namespace apartness_lab {

/// Gamma => C. Search normalizes the antecedent (sorted, duplicates and `top` removed).
struct Sequent {
  std::vector<Formula> antecedent;
  Formula succedent = Formula::top();

  friend bool operator==(const Sequent& a, const Sequent& b) {
    return a.succedent == b.succedent && a.antecedent == b.antecedent;
  }
};

std::string print(const Sequent& sequent);

/// One rule application: the conclusion and the derivations of its premises.
struct Derivation {
  Sequent conclusion;
  std::string rule;
  std::vector<Derivation> premises;

  std::size_t size() const;
  /// One line per rule application, premises indented under their conclusion.
  std::string to_text() const;
};

/// Decides intuitionistic provability of `formula` by backward search in the
/// contraction-free calculus G4ip: invertible rules are applied eagerly, the left
/// implication rule is split by the shape of the antecedent, and every backward
/// step shrinks a multiset measure, so the search terminates without loop checks.
/// On success and when `trace` is non-null, stores a derivation.
bool ipc_prove(const Formula& formula, Derivation* trace = nullptr);

/// A finite Kripke model. World 0 is the root; `order.leq(u, v)` reads "v is
/// reachable from u". Each atom is true on an upward-closed set of worlds.
class KripkeModel {
 public:
  KripkeModel(Poset order, std::vector<std::string> atoms, std::vector<std::uint32_t> valuation);

  std::size_t worlds() const { return order_.size(); }
  const Poset& order() const { return order_; }
  const std::vector<std::string>& atoms() const { return atoms_; }
  /// Worlds where `atom` holds; 0 for atoms the model does not mention.
  std::uint32_t truth_set(const std::string& atom) const;

  /// Worlds forcing `formula`.
  std::uint32_t forcing_set(const Formula& formula) const;
  bool forces(std::size_t world, const Formula& formula) const;

  /// World list with successors and true atoms, one world per line.
  std::string to_text() const;
  std::string to_dot() const;

 private:
  Poset order_;
  std::vector<std::string> atoms_;
  std::vector<std::uint32_t> valuation_;
};

inline constexpr std::size_t kDefaultMaxWorlds = 6;
inline constexpr std::size_t kMaxKripkeWorlds = 8;

/// Searches rooted frames with 1, 2, ..., max_worlds worlds, and all persistent
/// valuations of the atoms of `formula` on each, for a model whose root does not
/// force `formula`. Throws std::invalid_argument unless 1 <= max_worlds <= 8.
std::optional<KripkeModel> kripke_countermodel(const Formula& formula, std::size_t max_worlds);

/// Number of (frame, valuation) pairs the countermodel search visits on frames of
/// exactly `worlds` worlds when `formula` has `atoms` atoms.
std::uint64_t countermodel_search_cost(std::size_t worlds, std::size_t atoms);

enum class Outcome { Valid, Invalid, Undecided };
std::string to_string(Outcome outcome);

struct Decision {
  Outcome outcome = Outcome::Undecided;
  std::optional<Derivation> derivation;
  std::optional<KripkeModel> countermodel;
  /// Largest frame size the countermodel search reached; every smaller model was checked.
  std::size_t searched_worlds = 0;
};

/// Valuations the cross-check may visit when the prover already found a proof.
inline constexpr std::uint64_t kCrossCheckBudget = 2'000'000;

/// Runs both engines. A proof gives Valid; the countermodel search is then run as a
/// cross-check on as many worlds as fit kCrossCheckBudget (at least one). Without a
/// proof, a countermodel within `max_worlds` (again limited by the budget) gives
/// Invalid, and its absence gives Undecided. Throws std::logic_error if both
/// engines succeed, which would mean one of them is wrong.
Decision decide(const Formula& formula, std::size_t max_worlds = kDefaultMaxWorlds);

struct CorpusEntry {
  std::string label;
  Formula formula;
  Outcome expected;
  Decision decision;
  bool matched() const { return decision.outcome == expected; }
};

struct CorpusReport {
  std::vector<CorpusEntry> entries;
  bool all_matched() const;
};

/// The fixed list of in-logic derivations and non-derivations behind the
/// classification results, decided and compared with their expected outcomes.
CorpusReport check_corpus(std::size_t max_worlds = kDefaultMaxWorlds);

}  // namespace apartness_lab
