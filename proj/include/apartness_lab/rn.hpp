#pragma once

#include <compare>
#include <string>
#include <vector>

#include "apartness_lab/formula.hpp"

namespace apartness_lab {

/// An element of the Rieger-Nishimura lattice, the free Heyting algebra on one
/// generator y. The finite elements are the terms
///
///   d_1 = y,           d_{n+1} = i_n | d_n,
///   i_1 = ~y,          i_{n+1} = i_n -> d_n,
///
/// plus bot (d_0 = i_0) and top (d_inf = i_inf), each with a single representation.
class RNElement {
 public:
  enum class Tag { Bot, D, I, Top };

  static RNElement bot() { return RNElement(Tag::Bot, 0); }
  static RNElement top() { return RNElement(Tag::Top, 0); }
  /// d_n; d_0 is bot.
  static RNElement d(int n);
  /// i_n; i_0 is bot.
  static RNElement i(int n);

  Tag tag() const { return tag_; }
  /// n for d_n and i_n, 0 for bot and top.
  int index() const { return index_; }
  bool is_finite_term() const { return tag_ == Tag::D || tag_ == Tag::I; }

  /// "bot", "top", "d_3", "i_2" (or "⊥", "⊤" when unicode is set).
  std::string to_string(bool unicode = false) const;

  friend bool operator==(const RNElement&, const RNElement&) = default;
  friend auto operator<=>(const RNElement&, const RNElement&) = default;

 private:
  RNElement(Tag tag, int index) : tag_(tag), index_(index) {}
  Tag tag_;
  int index_;
};

bool rn_leq(const RNElement& a, const RNElement& b);
RNElement rn_meet(const RNElement& a, const RNElement& b);
RNElement rn_join(const RNElement& a, const RNElement& b);
/// The largest c with rn_meet(a, c) <= b.
RNElement rn_implies(const RNElement& a, const RNElement& b);
RNElement rn_negation(const RNElement& a);

/// {bot, d_1..d_max, i_1..i_max, top}.
std::vector<RNElement> rn_truncation(int max_index);

/// Interprets a formula with at most one atom, sending the atom to d_1.
/// Throws std::invalid_argument when the formula has two or more atoms.
RNElement rn_eval_formula(const Formula& formula);

/// The defining term of `a` in the atom `atom`, expanded through the recurrences.
Formula rn_to_formula(const RNElement& a, const std::string& atom = "y");

/// Graphviz digraph of the covering relation of rn_truncation(max_index), edges
/// pointing upward.
std::string rn_hasse_dot(int max_index, bool unicode = true);

}  // namespace apartness_lab
