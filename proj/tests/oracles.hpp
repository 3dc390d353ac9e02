#pragma once

// Brute-force reference implementations used as test oracles. They share no
// code with the library beyond reading operation tables: everything is
// plain std::set arithmetic with naive fixed points.

#include <cstdint>
#include <cstddef>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "relcomm/algebra.hpp"
#include "relcomm/binrel.hpp"

namespace oracle {

using Tuple = std::vector<unsigned>;
using Rel = std::set<std::pair<unsigned, unsigned>>;

inline unsigned apply(const relcomm::Operation& o, std::size_t n, const std::vector<unsigned>& args) {
  std::size_t idx = 0;
  for (unsigned a : args) idx = idx * n + a;
  return o.table[idx];
}

// Closure of a set of tuples in A^m under coordinatewise operations, by
// repeatedly trying every argument combination until nothing new appears.
inline std::set<Tuple> closure(const relcomm::FiniteAlgebra& alg, std::set<Tuple> s, std::size_t m) {
  const std::size_t n = alg.size();
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Tuple> cur(s.begin(), s.end());
    for (const auto& o : alg.operations()) {
      const auto k = static_cast<std::size_t>(o.arity);
      std::vector<std::size_t> pick(k, 0);
      if (k > 0 && cur.empty()) continue;
      for (;;) {
        Tuple t(m);
        for (std::size_t c = 0; c < m; ++c) {
          std::vector<unsigned> args(k);
          for (std::size_t i = 0; i < k; ++i) args[i] = cur[pick[i]][c];
          t[c] = apply(o, n, args);
        }
        if (s.insert(t).second) grew = true;
        std::size_t i = k;
        while (i > 0 && ++pick[i - 1] == cur.size()) pick[--i] = 0;
        if (i == 0) break;
      }
    }
  }
  return s;
}

inline Rel to_rel(const relcomm::BinRel& r) {
  Rel out;
  for (auto [a, b] : r.pairs()) out.emplace(a, b);
  return out;
}

inline Rel diagonal(std::size_t n) {
  Rel d;
  for (unsigned a = 0; a < n; ++a) d.emplace(a, a);
  return d;
}

inline Rel compose(const Rel& r, const Rel& s) {
  Rel out;
  for (auto [a, b] : r)
    for (auto [c, d] : s)
      if (b == c) out.emplace(a, d);
  return out;
}

inline Rel converse(const Rel& r) {
  Rel out;
  for (auto [a, b] : r) out.emplace(b, a);
  return out;
}

inline Rel star(Rel r) {
  for (;;) {
    Rel next = r;
    for (auto p : compose(r, r)) next.insert(p);
    if (next == r) return r;
    r = std::move(next);
  }
}

inline bool compatible(const relcomm::FiniteAlgebra& alg, const Rel& r) {
  std::set<Tuple> s;
  for (auto [a, b] : r) s.insert({a, b});
  return closure(alg, s, 2) == s;
}

// Least relation containing seed and the diagonal closed under the given rules.
inline Rel generated(const relcomm::FiniteAlgebra& alg, const Rel& seed, bool symmetric, bool transitive) {
  Rel r = seed;
  for (auto p : diagonal(alg.size())) r.insert(p);
  for (;;) {
    std::set<Tuple> s;
    for (auto [a, b] : r) s.insert({a, b});
    Rel next;
    for (const auto& t : closure(alg, s, 2)) next.emplace(t[0], t[1]);
    if (symmetric)
      for (auto p : converse(next)) next.insert(p);
    if (transitive) next = star(next);
    if (next == r) return r;
    r = std::move(next);
  }
}

// M(R,S) as the closure of (a,a,b,b), (a,b) in R, and (u,v,u,v), (u,v) in S.
inline std::set<Tuple> matrices(const relcomm::FiniteAlgebra& alg, const Rel& r, const Rel& s) {
  std::set<Tuple> g;
  for (auto [a, b] : r) g.insert({a, a, b, b});
  for (auto [u, v] : s) g.insert({u, v, u, v});
  return closure(alg, g, 4);
}

inline Rel commutator_one(const relcomm::FiniteAlgebra& alg, const Rel& r, const Rel& s) {
  Rel rows;
  for (const auto& q : matrices(alg, r, s))
    if (q[0] == q[1]) rows.emplace(q[2], q[3]);
  return star(rows);
}

// Number of distinct k-ary term operations, by saturating depth levels:
// level d+1 adds every operation applied to functions found up to level d.
inline std::size_t term_operation_count(const relcomm::FiniteAlgebra& alg, std::size_t k) {
  const std::size_t n = alg.size();
  std::size_t rows = 1;
  for (std::size_t i = 0; i < k; ++i) rows *= n;
  std::set<Tuple> funcs;
  for (std::size_t v = 0; v < k; ++v) {
    Tuple f(rows);
    for (std::size_t a = 0; a < rows; ++a) {
      std::size_t rest = a;
      for (std::size_t j = k; j-- > v + 1;) rest /= n;
      f[a] = static_cast<unsigned>(rest % n);
    }
    funcs.insert(f);
  }
  for (;;) {
    std::vector<Tuple> cur(funcs.begin(), funcs.end());
    std::set<Tuple> next = funcs;
    for (const auto& o : alg.operations()) {
      const auto ar = static_cast<std::size_t>(o.arity);
      std::vector<std::size_t> pick(ar, 0);
      for (;;) {
        Tuple f(rows);
        for (std::size_t a = 0; a < rows; ++a) {
          std::vector<unsigned> args(ar);
          for (std::size_t i = 0; i < ar; ++i) args[i] = cur[pick[i]][a];
          f[a] = apply(o, n, args);
        }
        next.insert(f);
        std::size_t i = ar;
        while (i > 0 && ++pick[i - 1] == cur.size()) pick[--i] = 0;
        if (i == 0) break;
      }
    }
    if (next.size() == funcs.size()) return funcs.size();
    funcs = std::move(next);
  }
}

}  // namespace oracle
