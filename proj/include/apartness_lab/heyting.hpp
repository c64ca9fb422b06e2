#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "apartness_lab/formula.hpp"
#include "apartness_lab/poset.hpp"

namespace apartness_lab {

/// Index of an element in a HeytingAlgebra's carrier.
using Element = std::uint8_t;

/// Valuation of atoms by element indices.
using Assignment = std::map<std::string, Element>;

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite Heyting algebra given by dense operation tables.
///
/// Instances built by `from_poset_downsets` satisfy every Heyting axiom.
/// `from_tables` only checks table shapes, so `verify_axioms` can report on
/// arbitrary (possibly broken) tables.
class HeytingAlgebra {
 public:
  static constexpr std::size_t kMaxSize = 255;

  static HeytingAlgebra from_tables(std::vector<std::string> names, std::vector<std::uint8_t> leq,
                                    std::vector<Element> meet, std::vector<Element> join,
                                    std::vector<Element> impl, Element bot, Element top);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Element a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }

  bool leq(Element a, Element b) const { return leq_[index(a, b)] != 0; }
  Element meet(Element a, Element b) const { return meet_[index(a, b)]; }
  Element join(Element a, Element b) const { return join_[index(a, b)]; }
  Element impl(Element a, Element b) const { return impl_[index(a, b)]; }
  Element neg(Element a) const { return impl(a, bot_); }
  Element bot() const { return bot_; }
  Element top() const { return top_; }
  bool is_trivial() const { return size() == 1; }

  std::span<const std::uint8_t> leq_table() const { return leq_; }
  std::span<const Element> meet_table() const { return meet_; }
  std::span<const Element> join_table() const { return join_; }
  std::span<const Element> impl_table() const { return impl_; }

  /// Free-form label, e.g. the enumeration id "P3.2".
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }
  /// The poset whose downsets form this algebra, when built that way.
  const std::optional<Poset>& source_poset() const { return source_; }

 private:
  friend HeytingAlgebra from_poset_downsets(const Poset& poset);
  HeytingAlgebra() = default;
  std::size_t index(Element a, Element b) const { return std::size_t{a} * size() + b; }

  std::vector<std::string> names_;
  std::vector<std::uint8_t> leq_;
  std::vector<Element> meet_, join_, impl_;
  Element bot_ = 0, top_ = 0;
  std::string label_;
  std::optional<Poset> source_;
};

/// The lattice of downward-closed subsets of `poset`, ordered by inclusion.
/// Elements are sorted by (cardinality, bitmask), so bot is 0 and top is last.
/// Throws std::invalid_argument if there would be more than 255 downsets.
HeytingAlgebra from_poset_downsets(const Poset& poset);

struct AxiomCheck {
  std::string name;
  bool passed = true;
  /// Elements of the first failing tuple, empty when passed.
  std::vector<Element> witness;
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_passed() const;
  const AxiomCheck* first_failure() const;
  const AxiomCheck& get(std::string_view name) const;
};

/// Checks the bounded-distributive-lattice laws, the order/operation agreement,
/// and that impl(a, b) is the largest c with meet(a, c) <= b.
AxiomReport verify_axioms(const HeytingAlgebra& h);

/// Structural interpretation of `formula`. Throws EvalError on an unbound atom.
Element eval(const HeytingAlgebra& h, const Formula& formula, const Assignment& assignment);

/// A formula compiled to postfix form over numbered atom slots, for repeated evaluation.
class CompiledTerm {
 public:
  /// Slots are assigned to `atoms` in order; other atoms raise EvalError.
  CompiledTerm(const Formula& formula, const std::vector<std::string>& atoms);
  Element eval(const HeytingAlgebra& h, std::span<const Element> values) const;

 private:
  enum class Op : std::uint8_t { Slot, Bot, Top, And, Or, Implies };
  struct Instr {
    Op op;
    std::uint8_t slot;
  };
  std::vector<Instr> code_;
  std::size_t max_stack_ = 0;
};

struct IdentityResult {
  bool holds = true;
  /// First assignment (in lexicographic order of atoms and elements) that separates the sides.
  std::optional<Assignment> counterexample;
  explicit operator bool() const { return holds; }
};

/// Whether lhs = rhs under all |h|^k assignments of the k atoms of the two terms.
IdentityResult holds_identity(const HeytingAlgebra& h, const Formula& lhs, const Formula& rhs);

/// x | ~x = top for all x. Also checks ~~x = x and throws std::logic_error if they disagree.
bool is_boolean(const HeytingAlgebra& h);
/// ~x | ~~x = top for all x.
bool satisfies_wlem(const HeytingAlgebra& h);

/// Whether a bijection preserving meet, join, impl, bot and top exists.
bool isomorphic(const HeytingAlgebra& a, const HeytingAlgebra& b);

/// Downset algebras of one representative poset per isomorphism class of
/// posets with 0..max_poset_size elements, in enumeration order. Labels are "P<n>.<k>".
/// No two results are isomorphic.
std::vector<HeytingAlgebra> enumerate_algebras(std::size_t max_poset_size);

/// Line-oriented text form of the tables; `parse_algebra` reads it back.
std::string export_algebra(const HeytingAlgebra& h);
HeytingAlgebra parse_algebra(std::string_view text);

}  // namespace apartness_lab
