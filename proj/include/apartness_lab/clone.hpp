#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "apartness_lab/formula.hpp"
#include "apartness_lab/heyting.hpp"

namespace apartness_lab {

/// A total table H x H -> H for an algebra with `size()` elements.
class BinaryFunction {
 public:
  BinaryFunction() = default;
  BinaryFunction(std::size_t size, std::vector<Element> table);
  static BinaryFunction constant(std::size_t size, Element value);

  std::size_t size() const { return size_; }
  Element at(Element x, Element y) const { return table_[std::size_t{x} * size_ + y]; }
  Element& at(Element x, Element y) { return table_[std::size_t{x} * size_ + y]; }
  const std::vector<Element>& table() const { return table_; }

  friend bool operator==(const BinaryFunction&, const BinaryFunction&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<Element> table_;
};

/// The two variables of binary terms.
inline constexpr const char* kFirstVar = "x";
inline constexpr const char* kSecondVar = "y";

inline constexpr std::size_t kDefaultCloneCap = 200000;

/// The binary term functions of a finite Heyting algebra h: the least set of
/// functions H x H -> H containing the projections x, y and the constants bot,
/// top, closed under pointwise meet, join and implication.
///
/// Functions are viewed as downsets of the poset Q = J(h) x H x H (J(h) the
/// join-irreducibles of h). The clone is a 0,1-sublattice of those downsets, so
/// it is the set of downsets of a coarser preorder on Q. The closure refines that
/// preorder until every implication between a principal and a co-principal
/// member is already a member; members are then listed by enumerating the downsets
/// of the quotient order. Each member carries a witness term built from the
/// implications that were added along the way.
class Clone {
 public:
  /// Throws std::invalid_argument if cap < 4 or h has more than 16 join-irreducibles.
  static Clone compute(const HeytingAlgebra& h, std::size_t cap = kDefaultCloneCap);

  Clone(Clone&&) noexcept;
  Clone& operator=(Clone&&) noexcept;
  ~Clone();

  /// Members in enumeration order (at most `cap` of them).
  const std::vector<BinaryFunction>& functions() const;
  std::size_t size() const { return functions().size(); }
  /// The clone has more members than the cap; `functions()` holds the first `cap`.
  bool capped() const;
  /// Join-irreducible members of the clone (points of the quotient order).
  std::size_t join_irreducibles() const;

  /// Membership test against the closed preorder; exact even when capped.
  bool contains(const BinaryFunction& f) const;
  std::optional<std::size_t> find(const BinaryFunction& f) const;

  struct Bounded {
    std::vector<BinaryFunction> functions;
    bool capped = false;
  };
  /// Members f with f <= ceiling pointwise, listed from the closed preorder and
  /// therefore complete regardless of the cap used for `functions()`.
  Bounded members_below(const BinaryFunction& ceiling, std::size_t cap) const;

  /// A term in x, y whose term function is functions()[k]. Subterms are shared,
  /// so the tree can be much larger than the memory it uses.
  Formula witness(std::size_t k) const;
  /// Evaluates witness(k) on h without expanding shared subterms.
  BinaryFunction evaluate_witness(std::size_t k) const;
  /// Node count of witness(k) as a tree, saturating at `limit`.
  std::size_t witness_tree_size(std::size_t k, std::size_t limit) const;

 private:
  struct Impl;
  explicit Clone(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

}  // namespace apartness_lab
