#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "relcomm/algebra.hpp"
#include "relcomm/term.hpp"

namespace relcomm {

struct Caps {
  std::size_t max_elements = 5'000'000;
  std::size_t max_rounds = std::numeric_limits<std::size_t>::max();
  /// Free algebras on k generators live in A^(n^k); wider tuples are refused.
  std::size_t max_tuple_width = 32;
  /// Entries allowed when materializing induced operation tables.
  std::size_t max_table_entries = std::size_t{1} << 24;
};

/// A^m. Tuples are element vectors; `encode`/`decode` give the base-n
/// integer form when n^m fits in 64 bits.
class TupleSpace {
 public:
  TupleSpace(const FiniteAlgebra& base, std::size_t exponent);

  const FiniteAlgebra& base() const noexcept { return *base_; }
  std::size_t exponent() const noexcept { return exponent_; }
  bool fits_word() const noexcept { return fits_word_; }
  std::uint64_t encode(std::span<const Elem> tuple) const;
  std::vector<Elem> decode(std::uint64_t code) const;

 private:
  const FiniteAlgebra* base_;
  std::size_t exponent_;
  bool fits_word_;
};

/// Flat store of distinct fixed-width tuples with an open-addressing index.
class TupleStore {
 public:
  explicit TupleStore(std::size_t width) : width_(width), slots_(16, kEmpty) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return count_; }
  std::span<const Elem> at(std::size_t i) const { return {data_.data() + i * width_, width_}; }
  std::optional<std::size_t> find(std::span<const Elem> t) const;
  /// Returns (index, inserted).
  std::pair<std::size_t, bool> insert(std::span<const Elem> t);

 private:
  static constexpr std::size_t kEmpty = std::numeric_limits<std::size_t>::max();
  std::size_t hash(std::span<const Elem> t) const noexcept;
  /// Slot holding `t`, or the empty slot where it would go.
  std::size_t probe(std::span<const Elem> t, std::size_t h) const noexcept;
  void grow();

  std::size_t width_;
  std::size_t count_ = 0;
  std::vector<Elem> data_;
  std::vector<std::size_t> slots_;
};

struct Closure {
  TupleStore elements;
  /// round_start[r] = index of the first element discovered in round r.
  std::vector<std::size_t> round_start;
  /// Present iff provenance was requested: terms over generator indices.
  std::optional<std::vector<Term>> provenance;
  /// True when a cap stopped the fixed point from being confirmed.
  bool capped = false;

  std::size_t size() const noexcept { return elements.size(); }
};

/// Least superset of `generators` closed under the coordinatewise
/// operations of space.base(). Semi-naive rounds: round r applies every
/// operation to argument tuples containing at least one element from round
/// r-1, so an element first found in round r has depth exactly r.
Closure close_subuniverse(const TupleSpace& space,
                          const std::vector<std::vector<Elem>>& generators, bool provenance,
                          const Caps& caps = {});

}  // namespace relcomm
