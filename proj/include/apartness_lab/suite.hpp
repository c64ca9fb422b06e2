#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "apartness_lab/apartness.hpp"
#include "apartness_lab/formula.hpp"
#include "apartness_lab/heyting.hpp"

namespace apartness_lab {

/// Every formula over `atoms`, bot and top with at most `max_depth` nested
/// connectives, each structurally distinct formula once. Grows doubly
/// exponentially; depth 2 over one atom already gives 2703 formulas.
std::vector<Formula> all_formulas(const std::vector<std::string>& atoms, int max_depth);

/// A random formula over `atoms` with depth at most `max_depth`. Leaves are mostly
/// atoms; negations appear as their own choice so that refutable and provable
/// formulas are both common.
Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& atoms, int max_depth);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
  double seconds = 0;
};

/// classify() over every algebra from posets with at most `max_poset_size`
/// elements, spread over `jobs` threads; reports keep enumeration order.
struct ClassificationSweep {
  std::vector<HeytingAlgebra> algebras;
  std::vector<std::size_t> poset_sizes;
  std::vector<ClassificationReport> reports;
  double seconds = 0;
};

ClassificationSweep sweep_classification(std::size_t max_poset_size, std::size_t clone_cap,
                                         unsigned jobs);

/// Runs classify on each algebra, `jobs` at a time, results in input order.
std::vector<ClassificationReport> classify_all(const std::vector<HeytingAlgebra>& algebras,
                                               std::size_t clone_cap, unsigned jobs);

/// candidate 1 is an apartness exactly on Boolean algebras (which = 1), candidate 2
/// exactly on algebras with weak excluded middle (which = 2).
CheckResult check_candidate_characterization(const std::vector<HeytingAlgebra>& algebras, int which);

/// Verdicts (a)-(e) pass for every non-trivial algebra from posets with at most
/// `strict_poset_size` elements; larger posets must pass unless the clone was
/// capped, in which case the apartness functions are recounted by the irreflexive
/// search and must agree with weak excluded middle.
CheckResult check_classification(const ClassificationSweep& sweep, std::size_t strict_poset_size,
                                 std::size_t clone_cap);
/// Reducts of every nontrivial apartness function in the sweep, plus the symbolic
/// reducts of candidate 2 and candidate 1.
CheckResult check_reducts(const ClassificationSweep& sweep);
CheckResult check_inequalities(const ClassificationSweep& sweep);

struct FreenessCounts {
  std::size_t formulas = 0;
  std::size_t comparisons = 0;
};

/// ipc_prove(a -> b) agrees with rn_leq on the normal forms for: every one-atom
/// formula of depth <= 2, `random_per_depth` random formulas of each depth 3 and 4,
/// each compared both ways with every lattice element of index <= 4 (whose terms
/// have depth <= 4), plus `random_pairs` random pairs among all of them.
CheckResult check_rn_freeness(std::size_t random_per_depth, std::size_t random_pairs,
                              std::uint64_t seed, FreenessCounts* counts = nullptr);

CheckResult check_prover_corpus(std::size_t max_worlds);

/// For `count` random formulas over three atoms of depth <= 5: a proof implies the
/// formula equals top in each algebra, countermodels refute at the root, and the
/// two engines never both succeed.
CheckResult check_cross_oracle(const std::vector<HeytingAlgebra>& algebras, std::size_t count,
                               std::uint64_t seed);

/// Parser round-trip on `count` random formulas of depth <= 7.
CheckResult check_parser_round_trip(std::size_t count, std::uint64_t seed);
/// rn_leq is a partial order on the truncation with indices <= max_index.
CheckResult check_rn_order(int max_index);
/// meet(a, c) <= b iff c <= implies(a, b) on the truncation with indices <= max_index.
CheckResult check_rn_adjunction(int max_index);
/// verify_axioms passes, boolean implies weak excluded middle, and ~~~x = ~x.
CheckResult check_heyting_axioms(const std::vector<HeytingAlgebra>& algebras);

}  // namespace apartness_lab
