#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "relcomm/binrel.hpp"
#include "relcomm/closure.hpp"

namespace relcomm {

/// A subset of A^4; (m11, m12, m21, m22) is the matrix with rows
/// (m11, m12) and (m21, m22).
class QuadSet {
 public:
  explicit QuadSet(std::size_t n);

  std::size_t universe() const noexcept { return n_; }
  std::size_t size() const noexcept { return count_; }
  bool contains(Elem a, Elem b, Elem c, Elem d) const noexcept { return bits_[index(a, b, c, d)]; }
  void insert(Elem a, Elem b, Elem c, Elem d);
  std::vector<std::array<Elem, 4>> elements() const;

  bool operator==(const QuadSet& o) const { return n_ == o.n_ && bits_ == o.bits_; }

 private:
  std::size_t index(Elem a, Elem b, Elem c, Elem d) const noexcept {
    return ((a * n_ + b) * n_ + c) * n_ + d;
  }
  std::size_t n_;
  std::size_t count_ = 0;
  std::vector<bool> bits_;
};

/// M(r, s): the subuniverse of A^4 generated by (a,a,b,b) for (a,b) in r
/// and (u,v,u,v) for (u,v) in s. The first relation runs down the columns,
/// the second along the rows. Throws CapExceeded.
QuadSet matrices(const FiniteAlgebra& alg, const BinRel& r, const BinRel& s,
                 const Caps& caps = {});

/// {(z,w) : (x,y,z,w) in m for some (x,y) in top}.
BinRel bottom_rows(const QuadSet& m, const BinRel& top);

/// [r,s|1]: transitive closure of the bottom rows under constant top rows.
BinRel commutator_one(const FiniteAlgebra& alg, const BinRel& r, const BinRel& s,
                      const Caps& caps = {});
/// Cg of the same bottom-row set.
BinRel commutator_cg(const FiniteAlgebra& alg, const BinRel& r, const BinRel& s,
                     const Caps& caps = {});

enum class KVariant { pure, seeded };
const char* k_variant_name(KVariant v) noexcept;
KVariant parse_k_variant(std::string_view s);

/// K(r,s;t). pure: star(bottom_rows(M(r,s), t)); seeded: star(t | bottom_rows(M(r,s), t)).
BinRel k_operator(const FiniteAlgebra& alg, const BinRel& r, const BinRel& s, const BinRel& t,
                  KVariant variant, const Caps& caps = {});
BinRel k_operator(const QuadSet& m, const BinRel& t, KVariant variant);

}  // namespace relcomm
