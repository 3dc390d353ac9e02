#pragma once

#include <random>
#include <string>

#include "relcomm/algebra.hpp"
#include "relcomm/binrel.hpp"

namespace testdata {

inline relcomm::FiniteAlgebra set_algebra(std::size_t n) {
  return relcomm::FiniteAlgebra("set" + std::to_string(n), n, {});
}
inline relcomm::FiniteAlgebra s2() {
  return relcomm::FiniteAlgebra("S2", 2, {{"meet", 2, {0, 0, 0, 1}}});
}
inline relcomm::FiniteAlgebra z2() {
  return relcomm::FiniteAlgebra("Z2", 2, {{"plus", 2, {0, 1, 1, 0}}});
}
inline relcomm::FiniteAlgebra maj2() {
  return relcomm::FiniteAlgebra("Maj2", 2, {{"maj", 3, {0, 0, 0, 1, 0, 1, 1, 1}}});
}
inline relcomm::FiniteAlgebra l2() {
  return relcomm::FiniteAlgebra("L2", 2, {{"meet", 2, {0, 0, 0, 1}}, {"join", 2, {0, 1, 1, 1}}});
}
inline relcomm::FiniteAlgebra z3() {
  return relcomm::FiniteAlgebra("Z3", 3, {{"plus", 2, {0, 1, 2, 1, 2, 0, 2, 0, 1}}});
}
inline relcomm::FiniteAlgebra c3() {
  return relcomm::FiniteAlgebra("C3", 3, {{"min", 2, {0, 0, 0, 0, 1, 1, 0, 1, 2}}});
}
inline relcomm::FiniteAlgebra rand4a() {
  return relcomm::FiniteAlgebra("rand4a", 4,
                                {{"g", 2, {0, 1, 2, 0, 0, 1, 2, 3, 0, 1, 2, 3, 3, 3, 2, 3}}});
}
inline relcomm::FiniteAlgebra rand4b() {
  return relcomm::FiniteAlgebra("rand4b", 4, {{"u", 1, {2, 1, 3, 0}}});
}

inline relcomm::FiniteAlgebra minority2() {
  return relcomm::FiniteAlgebra("Minority2", 2, {{"m", 3, {0, 1, 1, 0, 1, 0, 0, 1}}});
}
inline relcomm::FiniteAlgebra impl2() {
  return relcomm::FiniteAlgebra("Impl2", 2, {{"imp", 2, {1, 1, 0, 1}}});
}

// Every 2-element test algebra.
inline std::vector<relcomm::FiniteAlgebra> two_element_algebras() {
  return {set_algebra(2), s2(), z2(), maj2(), l2(), minority2(), impl2()};
}

// Size-2 and size-3 test algebras.
inline std::vector<relcomm::FiniteAlgebra> small_algebras() {
  return {set_algebra(2), s2(), z2(), maj2(), l2(), set_algebra(3), z3(), c3()};
}

inline relcomm::BinRel random_relation(std::mt19937_64& rng, std::size_t n, double density = 0.35) {
  std::bernoulli_distribution coin(density);
  relcomm::BinRel r(n);
  for (relcomm::Elem a = 0; a < n; ++a)
    for (relcomm::Elem b = 0; b < n; ++b)
      if (coin(rng)) r.insert(a, b);
  return r;
}

inline relcomm::BinRel with_diagonal(relcomm::BinRel r) {
  for (relcomm::Elem a = 0; a < r.universe(); ++a) r.insert(a, a);
  return r;
}

}  // namespace testdata
