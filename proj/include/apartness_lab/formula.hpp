#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace apartness_lab {

/// Propositional formulas over the Heyting signature {bot, top, and, or, implies}.
///
/// Negation and the biconditional are not separate cases: `negation(p)` builds
/// `p -> bot` and `iff(p, q)` builds `(p -> q) & (q -> p)`. Values are immutable
/// and share structure, so copying a Formula is cheap.
class Formula {
 public:
  enum class Kind { Atom, Bottom, Top, And, Or, Implies };

  static Formula atom(std::string name);
  static Formula bottom();
  static Formula top();
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula negation(Formula operand);
  static Formula iff(Formula lhs, Formula rhs);

  Kind kind() const;
  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_binary() const {
    return kind() == Kind::And || kind() == Kind::Or || kind() == Kind::Implies;
  }
  /// Atom name; empty for every other kind.
  const std::string& name() const;
  const Formula& lhs() const;
  const Formula& rhs() const;

  /// Number of connective nodes on the longest root-to-leaf path (leaves have depth 0).
  int depth() const;
  std::size_t hash() const;

  /// True for `p -> bot`.
  bool is_negation() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  /// Total syntactic order (by kind, then name, then children). Used for sorting.
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make_binary(Kind kind, Formula lhs, Formula rhs);

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Kind kind;
  std::string name;
  std::optional<Formula> lhs;  // empty for leaves
  std::optional<Formula> rhs;
  int depth = 0;
  std::size_t hash = 0;
};

inline Formula::Kind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline int Formula::depth() const { return node_->depth; }
inline std::size_t Formula::hash() const { return node_->hash; }

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// Raised by `parse` with the byte offset at which parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses the ASCII concrete syntax:
///
///   atoms    [A-Za-z][A-Za-z0-9_]*  except the reserved words `bot` and `top`
///   unary    ~
///   binary   &  |  ->  <->   (tightest to loosest)
///
/// `->` associates to the right, `&` and `|` to the left; `<->` does not
/// associate, so chains must be parenthesized.
Formula parse(std::string_view text);

/// Renders with the fewest parentheses that `parse` needs to rebuild the same tree.
/// `p -> bot` prints as `~p`, and `(p -> q) & (q -> p)` prints as `p <-> q`.
std::string print(const Formula& formula);

bool is_valid_atom_name(std::string_view name);

/// Replaces every occurrence of atom `atom` in `formula` by `replacement`.
Formula substitute(const Formula& formula, const std::string& atom, const Formula& replacement);

/// `apart[P := lhs][Q := rhs]` as a simultaneous substitution. If `lhs`
/// mentions Q, the Q of `apart` is first renamed to a fresh atom so the second
/// step cannot rewrite the copy of `lhs`.
Formula apart_instantiate(const Formula& apart, const Formula& lhs, const Formula& rhs,
                          const std::string& first = "P", const std::string& second = "Q");

std::set<std::string> free_atoms(const Formula& formula);

/// An atom name not in `taken`, built from `stem`.
std::string fresh_atom(const std::set<std::string>& taken, const std::string& stem = "Z");

std::size_t formula_size(const Formula& formula);

}  // namespace apartness_lab
