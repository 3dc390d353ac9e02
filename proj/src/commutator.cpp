#include "relcomm/commutator.hpp"

#include "relcomm/error.hpp"
#include "relcomm/relcalc.hpp"

namespace relcomm {

QuadSet::QuadSet(std::size_t n) : n_(n) {
  auto cells = checked_pow(n, 4, std::size_t{1} << 32);
  if (!cells) throw Error(Errc::invalid, "universe too large for a quadruple set");
  bits_.assign(*cells, false);
}

void QuadSet::insert(Elem a, Elem b, Elem c, Elem d) {
  auto i = index(a, b, c, d);
  if (!bits_[i]) {
    bits_[i] = true;
    ++count_;
  }
}

std::vector<std::array<Elem, 4>> QuadSet::elements() const {
  std::vector<std::array<Elem, 4>> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (!bits_[i]) continue;
    std::size_t r = i;
    std::array<Elem, 4> q{};
    for (std::size_t k = 4; k-- > 0;) {
      q[k] = static_cast<Elem>(r % n_);
      r /= n_;
    }
    out.push_back(q);
  }
  return out;
}

QuadSet matrices(const FiniteAlgebra& alg, const BinRel& r, const BinRel& s, const Caps& caps) {
  if (r.universe() != alg.size() || s.universe() != alg.size())
    throw Error(Errc::universe_mismatch, "relation universe differs from algebra size");
  std::vector<std::vector<Elem>> gens;
  for (auto [a, b] : r.pairs()) gens.push_back({a, a, b, b});
  for (auto [u, v] : s.pairs()) gens.push_back({u, v, u, v});
  Closure c = close_subuniverse(TupleSpace(alg, 4), gens, false, caps);
  if (c.capped) throw CapExceeded("matrix closure exceeded caps");
  QuadSet m(alg.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto q = c.elements.at(i);
    m.insert(q[0], q[1], q[2], q[3]);
  }
  return m;
}

BinRel bottom_rows(const QuadSet& m, const BinRel& top) {
  const std::size_t n = m.universe();
  if (top.universe() != n) throw Error(Errc::universe_mismatch, "relation universe mismatch");
  BinRel out(n);
  for (auto [x, y] : top.pairs())
    for (Elem z = 0; z < n; ++z)
      for (Elem w = 0; w < n; ++w)
        if (m.contains(x, y, z, w)) out.insert(z, w);
  return out;
}

BinRel commutator_one(const FiniteAlgebra& alg, const BinRel& r, const BinRel& s,
                      const Caps& caps) {
  return star(bottom_rows(matrices(alg, r, s, caps), BinRel::diagonal(alg.size())));
}

BinRel commutator_cg(const FiniteAlgebra& alg, const BinRel& r, const BinRel& s,
                     const Caps& caps) {
  auto pre = bottom_rows(matrices(alg, r, s, caps), BinRel::diagonal(alg.size())).pairs();
  return generated_relation(alg, pre, RelKind::congruence, caps);
}

const char* k_variant_name(KVariant v) noexcept { return v == KVariant::pure ? "pure" : "seeded"; }

KVariant parse_k_variant(std::string_view s) {
  if (s == "pure") return KVariant::pure;
  if (s == "seeded") return KVariant::seeded;
  throw Error(Errc::parse, "unknown K variant '" + std::string(s) + "'");
}

BinRel k_operator(const QuadSet& m, const BinRel& t, KVariant variant) {
  BinRel rows = bottom_rows(m, t);
  if (variant == KVariant::seeded) rows = unite(rows, t);
  return star(rows);
}

BinRel k_operator(const FiniteAlgebra& alg, const BinRel& r, const BinRel& s, const BinRel& t,
                  KVariant variant, const Caps& caps) {
  return k_operator(matrices(alg, r, s, caps), t, variant);
}

}  // namespace relcomm
