#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relcomm/algebra.hpp"

namespace relcomm {

using Pair = std::pair<Elem, Elem>;

/// Binary relation on {0..n-1} as a dense n x n bit matrix, one
/// 64-bit-word-aligned row per element.
class BinRel {
 public:
  BinRel() = default;
  explicit BinRel(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  static BinRel diagonal(std::size_t n);
  static BinRel full(std::size_t n);
  static BinRel from_pairs(std::size_t n, std::span<const Pair> pairs);

  std::size_t universe() const noexcept { return n_; }
  bool contains(Elem a, Elem b) const noexcept {
    return (bits_[a * words_ + b / 64] >> (b % 64)) & 1u;
  }
  void insert(Elem a, Elem b) noexcept { bits_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64); }
  void erase(Elem a, Elem b) noexcept { bits_[a * words_ + b / 64] &= ~(std::uint64_t{1} << (b % 64)); }

  std::span<const std::uint64_t> row(Elem a) const noexcept { return {bits_.data() + a * words_, words_}; }
  std::span<std::uint64_t> row(Elem a) noexcept { return {bits_.data() + a * words_, words_}; }
  std::size_t words_per_row() const noexcept { return words_; }

  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }
  /// Lexicographic order.
  std::vector<Pair> pairs() const;
  bool subset_of(const BinRel& o) const;
  /// Lexicographically least pair of *this not in `o`, if any.
  std::optional<Pair> first_outside(const BinRel& o) const;

  bool operator==(const BinRel&) const = default;
  /// Total order on relations of the same universe (by bit words).
  bool operator<(const BinRel& o) const { return bits_ < o.bits_; }

  /// "{(0,0),(1,1)}"
  std::string str() const;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace relcomm
