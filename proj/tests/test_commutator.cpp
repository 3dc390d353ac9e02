#include <gtest/gtest.h>

#include "common.hpp"
#include "oracles.hpp"
#include "relcomm/commutator.hpp"
#include "relcomm/error.hpp"
#include "relcomm/relcalc.hpp"

using namespace relcomm;

namespace {

std::set<oracle::Tuple> as_set(const QuadSet& q) {
  std::set<oracle::Tuple> s;
  for (auto e : q.elements()) s.insert({e[0], e[1], e[2], e[3]});
  return s;
}

BinRel rel(std::size_t n, std::vector<Pair> ps) {
  BinRel r = BinRel::from_pairs(n, ps);
  for (Elem a = 0; a < n; ++a) r.insert(a, a);
  return r;
}

std::vector<BinRel> rc(const FiniteAlgebra& a) { return enumerate_relations(a, RelKind::reflexive_compatible); }

}  // namespace

TEST(Matrices, SetAlgebraIsGeneratorsOnly) {
  auto a = testdata::set_algebra(3);
  BinRel r = rel(3, {{0, 1}}), s = rel(3, {{2, 0}, {1, 2}});
  std::set<oracle::Tuple> want;
  for (auto [x, y] : r.pairs()) want.insert({x, x, y, y});
  for (auto [u, v] : s.pairs()) want.insert({u, v, u, v});
  EXPECT_EQ(as_set(matrices(a, r, s)), want);
}

TEST(Matrices, Z2FullIsEvenParity) {
  auto q = matrices(testdata::z2(), BinRel::full(2), BinRel::full(2));
  EXPECT_EQ(q.size(), 8u);
  for (auto e : q.elements()) EXPECT_EQ((e[0] + e[1] + e[2] + e[3]) % 2, 0u);
}

TEST(Matrices, DiagonalGivesConstants) {
  for (const auto& a : testdata::small_algebras()) {
    auto q = matrices(a, BinRel::diagonal(a.size()), BinRel::diagonal(a.size()));
    EXPECT_EQ(q.size(), a.size());
    for (auto e : q.elements()) {
      EXPECT_EQ(e[0], e[1]);
      EXPECT_EQ(e[0], e[2]);
      EXPECT_EQ(e[0], e[3]);
    }
  }
}

TEST(Matrices, CapThrows) {
  Caps caps;
  caps.max_elements = 3;
  EXPECT_THROW(matrices(testdata::z2(), BinRel::full(2), BinRel::full(2), caps), CapExceeded);
}

TEST(CommutatorOne, GroundTruths) {
  auto set2 = testdata::set_algebra(2);
  for (const auto& r : rc(set2))
    for (const auto& s : rc(set2)) EXPECT_EQ(commutator_one(set2, r, s), BinRel::diagonal(2));
  EXPECT_EQ(commutator_one(testdata::z2(), BinRel::full(2), BinRel::full(2)), BinRel::diagonal(2));
  auto maj = testdata::maj2();
  EXPECT_EQ(commutator_one(maj, BinRel::full(2), BinRel::full(2)), BinRel::full(2));
  // maj((0,0,1,1), (0,1,0,1), (0,0,0,0)) = (0,0,0,1).
  EXPECT_TRUE(matrices(maj, BinRel::full(2), BinRel::full(2)).contains(0, 0, 0, 1));
}

TEST(CommutatorCg, Examples) {
  auto set2 = testdata::set_algebra(2);
  EXPECT_EQ(commutator_cg(set2, BinRel::full(2), BinRel::full(2)), BinRel::diagonal(2));
  EXPECT_EQ(commutator_cg(testdata::z2(), BinRel::full(2), BinRel::full(2)), BinRel::diagonal(2));
  for (const auto& a : testdata::small_algebras())
    for (const auto& r : rc(a))
      for (const auto& s : rc(a)) {
        BinRel c = commutator_one(a, r, s);
        EXPECT_EQ(commutator_cg(a, r, s), star(compose(c, converse(c))));
      }
}

TEST(KOperator, Examples) {
  for (const auto& a : testdata::small_algebras())
    for (const auto& r : rc(a))
      for (const auto& s : rc(a))
        EXPECT_EQ(k_operator(a, r, s, BinRel::diagonal(a.size()), KVariant::pure), commutator_one(a, r, s));

  auto set3 = testdata::set_algebra(3);
  for (const auto& r : rc(set3))
    for (const auto& s : rc(set3))
      for (const auto& t : {rel(3, {{0, 1}}), rel(3, {{1, 2}, {2, 1}}), BinRel::full(3)})
        EXPECT_EQ(k_operator(set3, r, s, t, KVariant::pure), star(unite(BinRel::diagonal(3), intersect(s, t))));

  auto s2 = testdata::s2();
  BinRel r = rel(2, {{0, 1}}), t = BinRel::full(2);
  for (KVariant v : {KVariant::pure, KVariant::seeded})
    EXPECT_EQ(converse(k_operator(s2, r, r, t, v)), k_operator(s2, r, converse(r), converse(t), v));
}

TEST(KOperator, VariantNames) {
  EXPECT_EQ(parse_k_variant("pure"), KVariant::pure);
  EXPECT_EQ(parse_k_variant(k_variant_name(KVariant::seeded)), KVariant::seeded);
  EXPECT_THROW(parse_k_variant("mixed"), Error);
}

TEST(CommutatorProperties, MatchOracleAndSymmetries) {
  for (const auto& a : testdata::small_algebras()) {
    const auto rs = rc(a);
    for (const auto& r : rs)
      for (const auto& s : rs) {
        auto q = matrices(a, r, s);
        auto oq = oracle::matrices(a, oracle::to_rel(r), oracle::to_rel(s));
        ASSERT_EQ(as_set(q), oq) << a.name();
        for (auto [x, y] : r.pairs()) EXPECT_TRUE(q.contains(x, x, y, y));
        for (auto [u, v] : s.pairs()) EXPECT_TRUE(q.contains(u, v, u, v));

        auto rows = matrices(a, converse(r), s);
        auto cols = matrices(a, r, converse(s));
        auto tr = matrices(a, s, r);
        const std::size_t n = a.size();
        for (Elem x = 0; x < n; ++x)
          for (Elem y = 0; y < n; ++y)
            for (Elem z = 0; z < n; ++z)
              for (Elem w = 0; w < n; ++w) {
                const bool in = q.contains(x, y, z, w);
                EXPECT_EQ(in, rows.contains(z, w, x, y));
                EXPECT_EQ(in, cols.contains(y, x, w, z));
                EXPECT_EQ(in, tr.contains(x, z, y, w));
              }

        BinRel c = commutator_one(a, r, s);
        EXPECT_EQ(oracle::to_rel(c), oracle::commutator_one(a, oracle::to_rel(r), oracle::to_rel(s)));
        EXPECT_TRUE(is_reflexive(c));
        EXPECT_TRUE(is_transitive(c));
        EXPECT_TRUE(is_compatible(a, c));
      }
  }
}

TEST(CommutatorProperties, RemarkLaws) {
  for (const auto& a : testdata::small_algebras()) {
    const auto d = BinRel::diagonal(a.size());
    const auto rs = rc(a);
    for (const auto& r : rs)
      for (const auto& s : rs) {
        EXPECT_EQ(converse(commutator_one(a, r, s)), commutator_one(a, r, converse(s)));
        EXPECT_EQ(commutator_cg(a, r, s),
                  star(compose(k_operator(a, r, s, d, KVariant::pure),
                               k_operator(a, r, converse(s), d, KVariant::pure))));
        for (const auto& t : rs)
          for (KVariant v : {KVariant::pure, KVariant::seeded})
            EXPECT_EQ(converse(k_operator(a, r, s, t, v)), k_operator(a, r, converse(s), converse(t), v));
      }
  }
}

TEST(CommutatorProperties, Monotone) {
  for (const auto& a : testdata::small_algebras()) {
    const auto rs = rc(a);
    const std::size_t k = rs.size();
    std::vector<QuadSet> m;
    std::vector<BinRel> c;
    for (const auto& r : rs)
      for (const auto& s : rs) {
        m.push_back(matrices(a, r, s));
        c.push_back(commutator_one(a, r, s));
      }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t i2 = 0; i2 < k; ++i2) {
        if (!rs[i].subset_of(rs[i2])) continue;
        for (std::size_t j = 0; j < k; ++j)
          for (std::size_t j2 = 0; j2 < k; ++j2) {
            if (!rs[j].subset_of(rs[j2])) continue;
            const auto& small = m[i * k + j];
            const auto& big = m[i2 * k + j2];
            for (auto e : small.elements()) ASSERT_TRUE(big.contains(e[0], e[1], e[2], e[3]));
            EXPECT_TRUE(c[i * k + j].subset_of(c[i2 * k + j2]));
          }
      }
  }
}
