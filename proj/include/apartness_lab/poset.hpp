#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace apartness_lab {

/// A finite partial order on {0, ..., size-1}, at most 32 elements.
///
/// Stored as one bitmask per element: `up(i)` has bit j set iff i <= j.
class Poset {
 public:
  static constexpr std::size_t kMaxSize = 32;

  Poset() = default;

  /// Builds the reflexive-transitive closure of the strict pairs (i, j) meaning i < j.
  /// Throws std::invalid_argument on out-of-range indices or a cycle.
  static Poset from_relation(std::size_t size, const std::vector<std::pair<int, int>>& less_than);

  /// Validates that `up` describes a partial order (reflexive, antisymmetric, transitive).
  static Poset from_up_masks(std::vector<std::uint32_t> up);

  std::size_t size() const { return up_.size(); }
  bool leq(std::size_t i, std::size_t j) const { return (up_[i] >> j) & 1u; }
  std::uint32_t up(std::size_t i) const { return up_[i]; }
  std::uint32_t down(std::size_t j) const { return down_[j]; }

  /// Cover pairs (i, j): i < j with nothing strictly between.
  std::vector<std::pair<int, int>> covers() const;

  Poset dual() const;
  /// Relabels element i as perm[i].
  Poset permuted(const std::vector<int>& perm) const;

  /// Isomorphism-invariant code: the smallest strict-order adjacency encoding over all
  /// relabelings. Only for size <= 8.
  std::uint64_t canonical_code() const;
  /// The relabeling that realizes `canonical_code`.
  Poset canonical_form() const;

  /// True iff there is an element below every other (a Kripke frame root).
  bool is_rooted() const;

  friend bool operator==(const Poset& a, const Poset& b) { return a.up_ == b.up_; }

 private:
  explicit Poset(std::vector<std::uint32_t> up);
  std::uint64_t code_under(const std::vector<int>& perm) const;

  std::vector<std::uint32_t> up_;
  std::vector<std::uint32_t> down_;
};

/// One representative per isomorphism class of posets with exactly `size` elements,
/// each in canonical form, ordered by canonical code. Sizes 0..7, cached per size.
const std::vector<Poset>& posets_of_size(std::size_t size);

/// Reads the text format
///
///   elements: n
///   i < j
///   ...
///
/// Blank lines and `#` comments are ignored; the relation is transitively closed.
Poset parse_poset(std::string_view text);
Poset read_poset_file(const std::string& path);
std::string format_poset(const Poset& poset);

}  // namespace apartness_lab
