#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "relcomm/binrel.hpp"
#include "relcomm/closure.hpp"

namespace relcomm {

// Composition reads left to right: (a,c) in compose(r,s) iff a r b s c for some b.
BinRel compose(const BinRel& r, const BinRel& s);
BinRel converse(const BinRel& r);
BinRel intersect(const BinRel& r, const BinRel& s);
BinRel unite(const BinRel& r, const BinRel& s);
/// Transitive closure (reflexive pairs are not added).
BinRel star(const BinRel& r);
/// Congruence join, star(compose(a, b)).
BinRel join(const BinRel& a, const BinRel& b);

bool is_reflexive(const BinRel& r);
bool is_symmetric(const BinRel& r);
bool is_transitive(const BinRel& r);
bool is_compatible(const FiniteAlgebra& alg, const BinRel& r);

enum class RelKind { reflexive_compatible, tolerance, congruence, preorder };

const char* kind_name(RelKind k) noexcept;
RelKind parse_kind(std::string_view s);
/// Compatible, reflexive, plus the kind's extra closure properties.
bool satisfies_kind(const FiniteAlgebra& alg, const BinRel& r, RelKind kind);

/// Least relation of the given kind containing `seed`. Throws CapExceeded.
BinRel generated_relation(const FiniteAlgebra& alg, std::span<const Pair> seed, RelKind kind,
                          const Caps& caps = {});

struct EnumerationBudget {
  /// Exhaustive enumeration when n(n-1) <= this many off-diagonal bits.
  std::size_t exhaustive_bits = 20;
  std::size_t samples = 500;
  std::uint64_t seed = 0;
};

/// All relations of the kind (exhaustive, increasing bit mask order) or a
/// deduplicated pseudorandom sample of generated ones, diagonal first.
std::vector<BinRel> enumerate_relations(const FiniteAlgebra& alg, RelKind kind,
                                        const EnumerationBudget& budget = {});

}  // namespace relcomm
