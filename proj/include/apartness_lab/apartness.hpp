#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apartness_lab/clone.hpp"
#include "apartness_lab/formula.hpp"
#include "apartness_lab/heyting.hpp"
#include "apartness_lab/rn.hpp"

namespace apartness_lab {

/// (x & ~y) | (~x & y)
Formula candidate1_term();
/// ~(x <-> y)
Formula candidate2_term();
/// (~~x & ~y) | (~x & ~~y)
Formula double_negation_apartness_term();

/// f(a, b) = eval(h, term, {x := a, y := b}). Throws EvalError if `term` mentions
/// an atom other than x and y.
BinaryFunction term_function(const HeytingAlgebra& h, const Formula& term);
BinaryFunction candidate1(const HeytingAlgebra& h);
BinaryFunction candidate2(const HeytingAlgebra& h);

struct ApartnessReport {
  bool irreflexive = true;
  bool symmetric = true;
  bool cotransitive = true;
  bool trivial = true;
  bool tight = true;
  /// First failing tuple per axiom in lexicographic order (x), (x, y) or (x, y, z).
  std::vector<Element> irreflexive_witness;
  std::vector<Element> symmetric_witness;
  std::vector<Element> cotransitive_witness;
  std::vector<Element> nontrivial_witness;
  std::vector<Element> tight_witness;

  bool is_apartness() const { return irreflexive && symmetric && cotransitive; }
  bool is_nontrivial_apartness() const { return is_apartness() && !trivial; }
  bool is_tight_apartness() const { return is_apartness() && tight; }
};

/// Scans all pairs and triples for the apartness axioms
///   x # x = bot,  x # y = y # x,  x # y <= (x # z) | (z # y)
/// and records triviality (constantly bot) and tightness (~(x # y) & x <= y).
/// Throws std::invalid_argument if `f` does not match the size of `h`.
ApartnessReport check_apartness(const HeytingAlgebra& h, const BinaryFunction& f);

/// The binary term functions of `h` (see Clone), listing at most `cap` of them.
Clone binary_clone(const HeytingAlgebra& h, std::size_t cap = kDefaultCloneCap);

struct ReductReport {
  /// The section a |-> f(fixed, a).
  std::vector<Element> table;
  bool equals_negation = false;
  bool equals_identity = false;
  bool equals_double_negation = false;
  bool constant_bot = false;
  /// The least Rieger-Nishimura term whose one-variable function on h equals `table`,
  /// if the table is term-definable in one variable.
  std::optional<RNElement> smallest_rn;
};

ReductReport top_reduct(const HeytingAlgebra& h, const BinaryFunction& f);
ReductReport bottom_reduct(const HeytingAlgebra& h, const BinaryFunction& f);

/// The least element r of the Rieger-Nishimura lattice with r(a) = table[a] for all a,
/// or nullopt if no such term exists.
std::optional<RNElement> smallest_rn_term_for(const HeytingAlgebra& h,
                                              const std::vector<Element>& table);

enum class ReductSide { Top, Bottom };

/// The exact symbolic reduct: substitutes top (or bot) for x and normalizes the
/// remaining one-variable formula in the Rieger-Nishimura lattice.
RNElement reduct_rn(const Formula& term, ReductSide side);

struct InequalityReport {
  /// ~~x & ~~y <= x # ~y for all x, y.
  bool double_negation_bound = true;
  std::vector<Element> double_negation_bound_witness;
  /// x # ~~x = bot for all x.
  bool apart_from_double_negation = true;
  std::vector<Element> apart_from_double_negation_witness;
  bool all_passed() const { return double_negation_bound && apart_from_double_negation; }
};

InequalityReport verify_inequalities(const HeytingAlgebra& h, const BinaryFunction& f);

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct TheoremVerdict {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::string detail;

  friend bool operator==(const TheoremVerdict&, const TheoremVerdict&) = default;
};

/// Per nontrivial apartness function found in the clone.
struct ApartnessFinding {
  std::size_t clone_index = 0;
  std::string witness_term;
  bool tight = false;
  bool equals_candidate1 = false;
  bool equals_candidate2 = false;
  bool top_reduct_is_negation = false;
  bool bottom_reduct_is_identity = false;
  bool bottom_reduct_is_double_negation = false;
  std::string top_reduct_rn;     // smallest RN term, or "none"
  std::string bottom_reduct_rn;  // smallest RN term, or "none"
  bool inequalities_pass = false;

  friend bool operator==(const ApartnessFinding&, const ApartnessFinding&) = default;
};

struct ClassificationReport {
  std::string algebra_id;
  std::size_t algebra_size = 0;
  bool trivial_algebra = false;
  bool wlem = false;
  bool boolean = false;
  std::size_t clone_size = 0;
  bool capped = false;
  std::size_t apartness_functions = 0;
  std::size_t nontrivial_apartness_functions = 0;
  std::size_t tight_apartness_functions = 0;
  bool unique_equals_candidate2 = false;
  bool candidate1_is_apartness = false;
  bool candidate2_is_apartness = false;
  std::vector<ApartnessFinding> reduct_checks;
  std::vector<TheoremVerdict> theorem_verdicts;

  /// True when every verdict passed (none failed or inconclusive).
  bool all_passed() const;
  /// The first verdict that did not pass, if any.
  const TheoremVerdict* first_unpassed() const;

  friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

/// Apartness functions of a clone found without listing the whole clone: every
/// apartness function is irreflexive, hence lies below the function that is bot on
/// the diagonal and top elsewhere, and the members below it are few.
struct IrreflexiveSearch {
  std::size_t irreflexive_members = 0;
  bool capped = false;
  std::size_t apartness_functions = 0;
  std::size_t nontrivial_apartness_functions = 0;
  std::size_t tight_apartness_functions = 0;
  /// Every nontrivial apartness function found equals candidate 2.
  bool nontrivial_equal_candidate2 = true;
};

IrreflexiveSearch search_irreflexive_members(const HeytingAlgebra& h, const Clone& clone,
                                             std::size_t cap = kDefaultCloneCap);

/// Verdict names, in report order.
inline constexpr const char* kVerdictCharacterization = "characterization";
inline constexpr const char* kVerdictBoolean = "tight-implies-boolean";
inline constexpr const char* kVerdictUniqueness = "uniqueness";
inline constexpr const char* kVerdictReducts = "reducts";
inline constexpr const char* kVerdictInequalities = "inequalities";
inline constexpr const char* kVerdictCandidate1 = "candidate1-iff-boolean";
inline constexpr const char* kVerdictCandidate2 = "candidate2-iff-wlem";

/// Computes the clone, filters its apartness functions and records a verdict per
/// classification claim. A trivial algebra yields a report flagged `trivial_algebra`
/// with no verdicts. A capped clone turns the existence verdicts into Inconclusive.
ClassificationReport classify(const HeytingAlgebra& h, std::size_t cap = kDefaultCloneCap);

}  // namespace apartness_lab
