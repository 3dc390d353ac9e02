#include "relcomm/relcalc.hpp"

#include <random>
#include <set>

#include "relcomm/error.hpp"

namespace relcomm {

namespace {

void same_universe(const BinRel& r, const BinRel& s) {
  if (r.universe() != s.universe())
    throw Error(Errc::universe_mismatch, "relations over universes of size " +
                                             std::to_string(r.universe()) + " and " +
                                             std::to_string(s.universe()));
}

}  // namespace

BinRel compose(const BinRel& r, const BinRel& s) {
  same_universe(r, s);
  const std::size_t n = r.universe();
  BinRel out(n);
  for (Elem a = 0; a < n; ++a) {
    auto dst = out.row(a);
    for (Elem b = 0; b < n; ++b) {
      if (!r.contains(a, b)) continue;
      auto src = s.row(b);
      for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
    }
  }
  return out;
}

BinRel converse(const BinRel& r) {
  const std::size_t n = r.universe();
  BinRel out(n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (r.contains(a, b)) out.insert(b, a);
  return out;
}

BinRel intersect(const BinRel& r, const BinRel& s) {
  same_universe(r, s);
  BinRel out = r;
  for (Elem a = 0; a < r.universe(); ++a) {
    auto dst = out.row(a);
    auto src = s.row(a);
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] &= src[w];
  }
  return out;
}

BinRel unite(const BinRel& r, const BinRel& s) {
  same_universe(r, s);
  BinRel out = r;
  for (Elem a = 0; a < r.universe(); ++a) {
    auto dst = out.row(a);
    auto src = s.row(a);
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
  }
  return out;
}

BinRel star(const BinRel& r) {
  // Warshall over bit rows.
  const std::size_t n = r.universe();
  BinRel out = r;
  for (Elem k = 0; k < n; ++k) {
    auto via = out.row(k);
    std::vector<std::uint64_t> krow(via.begin(), via.end());
    for (Elem i = 0; i < n; ++i) {
      if (!out.contains(i, k)) continue;
      auto dst = out.row(i);
      for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= krow[w];
    }
  }
  return out;
}

BinRel join(const BinRel& a, const BinRel& b) { return star(compose(a, b)); }

bool is_reflexive(const BinRel& r) {
  for (Elem a = 0; a < r.universe(); ++a)
    if (!r.contains(a, a)) return false;
  return true;
}

bool is_symmetric(const BinRel& r) {
  for (Elem a = 0; a < r.universe(); ++a)
    for (Elem b = a + 1; b < r.universe(); ++b)
      if (r.contains(a, b) != r.contains(b, a)) return false;
  return true;
}

bool is_transitive(const BinRel& r) { return compose(r, r).subset_of(r); }

bool is_compatible(const FiniteAlgebra& alg, const BinRel& r) {
  if (r.universe() != alg.size())
    throw Error(Errc::universe_mismatch, "relation universe differs from algebra size");
  const auto pairs = r.pairs();
  for (std::size_t op = 0; op < alg.operations().size(); ++op) {
    const auto& o = alg.operation(op);
    const auto k = static_cast<std::size_t>(o.arity);
    auto st = alg.strides(op);
    if (k == 0) {
      if (!r.contains(o.table[0], o.table[0])) return false;
      continue;
    }
    if (pairs.empty()) continue;
    std::vector<std::size_t> idx(k, 0);
    for (;;) {
      std::size_t ia = 0, ib = 0;
      for (std::size_t i = 0; i < k; ++i) {
        ia += pairs[idx[i]].first * st[i];
        ib += pairs[idx[i]].second * st[i];
      }
      if (!r.contains(o.table[ia], o.table[ib])) return false;
      std::size_t p = k;
      while (p > 0 && ++idx[p - 1] == pairs.size()) idx[--p] = 0;
      if (p == 0) break;
    }
  }
  return true;
}

const char* kind_name(RelKind k) noexcept {
  switch (k) {
    case RelKind::reflexive_compatible: return "reflexive-compatible";
    case RelKind::tolerance: return "tolerance";
    case RelKind::congruence: return "congruence";
    case RelKind::preorder: return "preorder";
  }
  return "?";
}

RelKind parse_kind(std::string_view s) {
  if (s == "reflexive-compatible") return RelKind::reflexive_compatible;
  if (s == "tolerance") return RelKind::tolerance;
  if (s == "congruence") return RelKind::congruence;
  if (s == "preorder") return RelKind::preorder;
  throw Error(Errc::parse, "unknown relation kind '" + std::string(s) + "'");
}

namespace {

bool needs_symmetry(RelKind k) { return k == RelKind::tolerance || k == RelKind::congruence; }
bool needs_transitivity(RelKind k) { return k == RelKind::congruence || k == RelKind::preorder; }

}  // namespace

bool satisfies_kind(const FiniteAlgebra& alg, const BinRel& r, RelKind kind) {
  if (!is_reflexive(r)) return false;
  if (needs_symmetry(kind) && !is_symmetric(r)) return false;
  if (needs_transitivity(kind) && !is_transitive(r)) return false;
  return is_compatible(alg, r);
}

BinRel generated_relation(const FiniteAlgebra& alg, std::span<const Pair> seed, RelKind kind,
                          const Caps& caps) {
  const std::size_t n = alg.size();
  BinRel cur = unite(BinRel::from_pairs(n, seed), BinRel::diagonal(n));
  const TupleSpace square(alg, 2);
  for (;;) {
    std::vector<std::vector<Elem>> gens;
    for (auto [a, b] : cur.pairs()) gens.push_back({a, b});
    Closure c = close_subuniverse(square, gens, false, caps);
    if (c.capped) throw CapExceeded("compatible closure exceeded caps");
    BinRel closed(n);
    for (std::size_t i = 0; i < c.size(); ++i) closed.insert(c.elements.at(i)[0], c.elements.at(i)[1]);
    BinRel next = closed;
    if (needs_symmetry(kind)) next = unite(next, converse(next));
    if (needs_transitivity(kind)) next = star(next);
    if (next == closed) return next;
    cur = std::move(next);
  }
}

std::vector<BinRel> enumerate_relations(const FiniteAlgebra& alg, RelKind kind,
                                        const EnumerationBudget& budget) {
  const std::size_t n = alg.size();
  std::vector<Pair> off;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (a != b) off.emplace_back(a, b);

  std::vector<BinRel> out;
  if (off.size() <= budget.exhaustive_bits && off.size() < 63) {
    const std::uint64_t masks = std::uint64_t{1} << off.size();
    for (std::uint64_t m = 0; m < masks; ++m) {
      BinRel r = BinRel::diagonal(n);
      for (std::size_t i = 0; i < off.size(); ++i)
        if ((m >> i) & 1u) r.insert(off[i].first, off[i].second);
      if (needs_symmetry(kind) && !is_symmetric(r)) continue;
      if (needs_transitivity(kind) && !is_transitive(r)) continue;
      if (is_compatible(alg, r)) out.push_back(std::move(r));
    }
    return out;
  }

  std::set<BinRel> seen;
  auto keep = [&](BinRel r) {
    if (seen.insert(r).second) out.push_back(std::move(r));
  };
  keep(generated_relation(alg, {}, kind));
  std::mt19937_64 rng(budget.seed);
  for (std::size_t i = 0; i < budget.samples && !off.empty(); ++i) {
    std::vector<Pair> seed;
    const std::size_t count = 1 + rng() % 3;
    for (std::size_t j = 0; j < count; ++j) seed.push_back(off[rng() % off.size()]);
    keep(generated_relation(alg, seed, kind));
  }
  return out;
}

}  // namespace relcomm
