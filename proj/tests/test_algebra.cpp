#include <gtest/gtest.h>

#include <random>
#include <set>

#include "common.hpp"
#include "oracles.hpp"
#include "relcomm/closure.hpp"
#include "relcomm/error.hpp"
#include "relcomm/term.hpp"

using namespace relcomm;

namespace {

Term V(int i) { return Term::variable(i); }
Term A(std::string op, std::vector<Term> c) { return Term::apply(std::move(op), std::move(c)); }

std::set<std::vector<unsigned>> as_set(const Closure& c) {
  std::set<std::vector<unsigned>> s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto t = c.elements.at(i);
    s.insert(std::vector<unsigned>(t.begin(), t.end()));
  }
  return s;
}

FiniteAlgebra random_algebra(std::mt19937_64& rng, std::size_t n) {
  std::vector<Operation> ops;
  std::uniform_int_distribution<int> arity(0, 2);
  std::uniform_int_distribution<Elem> elem(0, static_cast<Elem>(n - 1));
  const int count = 1 + static_cast<int>(rng() % 2);
  for (int i = 0; i < count; ++i) {
    Operation o{"op" + std::to_string(i), arity(rng), {}};
    std::size_t len = 1;
    for (int j = 0; j < o.arity; ++j) len *= n;
    for (std::size_t j = 0; j < len; ++j) o.table.push_back(elem(rng));
    ops.push_back(std::move(o));
  }
  return FiniteAlgebra("r", n, std::move(ops));
}

}  // namespace

TEST(ParseAlgebra, Semilattice) {
  auto a = parse_algebra(R"({"size":2,"operations":[{"name":"meet","arity":2,"table":[0,0,0,1]}]})");
  EXPECT_EQ(a.size(), 2u);
  ASSERT_EQ(a.operations().size(), 1u);
  EXPECT_EQ(a.operation(0).name, "meet");
  EXPECT_EQ(a.operation(0).table, (std::vector<Elem>{0, 0, 0, 1}));
}

TEST(ParseAlgebra, SetAlgebra) {
  auto a = parse_algebra(R"({"size":2,"operations":[]})");
  EXPECT_EQ(a.size(), 2u);
  EXPECT_TRUE(a.operations().empty());
}

TEST(ParseAlgebra, RejectsShortTable) {
  try {
    parse_algebra(R"({"size":2,"operations":[{"name":"meet","arity":2,"table":[0,0,0]}]})");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid);
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
  }
}

TEST(ParseAlgebra, RejectsOutOfRangeAndDuplicates) {
  EXPECT_THROW(parse_algebra(R"({"size":2,"operations":[{"name":"f","arity":1,"table":[0,2]}]})"), Error);
  EXPECT_THROW(parse_algebra(R"({"size":2,"operations":[{"name":"f","arity":1,"table":[0,4294967296]}]})"),
               Error);
  EXPECT_THROW(parse_algebra(R"({"size":2,"operations":[{"name":"f","arity":0,"table":[0]},
                                                     {"name":"f","arity":0,"table":[1]}]})"),
               Error);
  EXPECT_THROW(parse_algebra(R"({"size":0,"operations":[]})"), Error);
  EXPECT_THROW(parse_algebra("{not json"), Error);
}

TEST(ParseAlgebra, NullaryOperation) {
  auto a = parse_algebra(R"({"size":3,"operations":[{"name":"c","arity":0,"table":[2]}]})");
  EXPECT_EQ(a.apply(0, {}), 2u);
}

TEST(ParseAlgebra, RoundTripProperty) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto a = random_algebra(rng, 1 + rng() % 4);
    EXPECT_EQ(parse_algebra(serialize_algebra(a)), a);
  }
}

TEST(EvalTerm, Examples) {
  auto s2 = testdata::s2();
  std::vector<Elem> env{1, 0};
  EXPECT_EQ(eval_term(s2, A("meet", {V(0), V(1)}), env), 0u);
  std::vector<Elem> one{1};
  EXPECT_EQ(eval_term(s2, V(0), one), 1u);
  auto z2 = testdata::z2();
  // 1 + 1 = 0, then 0 + 1 = 1.
  std::vector<Elem> ones{1, 1, 1};
  EXPECT_EQ(eval_term(z2, A("plus", {A("plus", {V(0), V(1)}), V(2)}), ones), 1u);
}

TEST(EvalTerm, Errors) {
  auto s2 = testdata::s2();
  std::vector<Elem> env{0};
  try {
    eval_term(s2, A("join", {V(0), V(0)}), env);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unbound);
  }
  try {
    eval_term(s2, V(1), env);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unbound);
  }
  EXPECT_THROW(eval_term(s2, A("meet", {V(0)}), env), Error);
}

TEST(CheckIdentity, Examples) {
  EXPECT_TRUE(check_identity(testdata::s2(), A("meet", {V(0), V(1)}), A("meet", {V(1), V(0)}), 2).holds);

  auto v = check_identity(testdata::z2(), A("plus", {V(0), V(1)}), V(0), 2);
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.counterexample);
  EXPECT_EQ(*v.counterexample, (std::vector<Elem>{0, 1}));

  // maj(a,a,b) = a by the truth table: rows 000,001,110,111 give 0,0,1,1.
  EXPECT_TRUE(check_identity(testdata::maj2(), A("maj", {V(0), V(0), V(1)}), V(0), 2).holds);
}

TEST(CheckIdentity, SymmetricProperty) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    auto alg = random_algebra(rng, 2 + rng() % 2);
    auto pick = [&](int depth, auto&& self) -> Term {
      std::vector<std::size_t> usable;
      for (std::size_t o = 0; o < alg.operations().size(); ++o) usable.push_back(o);
      if (depth == 0 || rng() % 3 == 0) return V(static_cast<int>(rng() % 3));
      const auto& o = alg.operation(usable[rng() % usable.size()]);
      std::vector<Term> c;
      for (int j = 0; j < o.arity; ++j) c.push_back(self(depth - 1, self));
      return A(o.name, c);
    };
    Term l = pick(3, pick), r = pick(3, pick);
    EXPECT_EQ(check_identity(alg, l, r, 3).holds, check_identity(alg, r, l, 3).holds);
  }
}

TEST(Sexpr, RoundTripAndErrors) {
  auto names = variable_names(5);
  Term t = parse_sexpr("(maj x y (meet z w))", names);
  EXPECT_EQ(to_sexpr(t, names), "(maj x y (meet z w))");
  EXPECT_EQ(term_depth(t), 2u);
  EXPECT_EQ(max_variable(t), 3);
  EXPECT_THROW(parse_sexpr("(maj x y", names), Error);
  EXPECT_THROW(parse_sexpr("(maj x q)", names), Error);
  EXPECT_EQ(variable_names(7)[6], "v6");
}

TEST(TupleSpace, EncodeDecodeRoundTrip) {
  auto a = testdata::z3();
  TupleSpace sp(a, 5);
  ASSERT_TRUE(sp.fits_word());
  for (std::uint64_t code = 0; code < 243; ++code) EXPECT_EQ(sp.encode(sp.decode(code)), code);
  std::vector<Elem> t{2, 0, 1, 1, 2};
  EXPECT_EQ(sp.decode(sp.encode(t)), t);
}

TEST(Closure, SetAlgebraKeepsGenerators) {
  auto a = testdata::set_algebra(3);
  std::vector<std::vector<Elem>> g{{0, 1}, {2, 2}, {1, 0}};
  auto c = close_subuniverse(TupleSpace(a, 2), g, false);
  EXPECT_EQ(c.size(), 3u);
  EXPECT_FALSE(c.capped);
}

TEST(Closure, Z2LinearSpan) {
  auto a = testdata::z2();
  auto c = close_subuniverse(TupleSpace(a, 3), {{1, 1, 0}, {0, 1, 1}}, false);
  std::set<std::vector<unsigned>> want{{0, 0, 0}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
  EXPECT_EQ(as_set(c), want);
}

TEST(Closure, S2Universe) {
  auto a = testdata::s2();
  auto c = close_subuniverse(TupleSpace(a, 1), {{0}, {1}}, false);
  EXPECT_EQ(c.size(), 2u);
}

TEST(Closure, NullaryFiresOnce) {
  auto a = parse_algebra(R"({"size":3,"operations":[{"name":"c","arity":0,"table":[2]}]})");
  auto c = close_subuniverse(TupleSpace(a, 2), {}, true);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.elements.at(0)[0], 2u);
  EXPECT_EQ(to_sexpr((*c.provenance)[0], variable_names(1)), "(c)");
}

TEST(Closure, CapsAreReported) {
  auto a = testdata::z3();
  Caps caps;
  caps.max_elements = 3;
  auto c = close_subuniverse(TupleSpace(a, 2), {{1, 0}, {0, 1}}, false, caps);
  EXPECT_TRUE(c.capped);
  Caps rounds;
  rounds.max_rounds = 0;
  EXPECT_TRUE(close_subuniverse(TupleSpace(a, 2), {{1, 0}}, false, rounds).capped);
}

TEST(ClosureProperty, MatchesOracleIdempotentMonotone) {
  std::mt19937_64 rng(42);
  for (int iter = 0; iter < 150; ++iter) {
    const std::size_t n = 2 + rng() % 2, m = 1 + rng() % 3;
    auto alg = random_algebra(rng, n);
    std::vector<std::vector<Elem>> g, h;
    const std::size_t count = 1 + rng() % 3;
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<Elem> t(m);
      for (auto& x : t) x = static_cast<Elem>(rng() % n);
      g.push_back(t);
    }
    h = g;
    std::vector<Elem> extra(m);
    for (auto& x : extra) x = static_cast<Elem>(rng() % n);
    h.push_back(extra);

    auto c = close_subuniverse(TupleSpace(alg, m), g, true);
    std::set<oracle::Tuple> seed;
    for (const auto& t : g) seed.insert(oracle::Tuple(t.begin(), t.end()));
    EXPECT_EQ(as_set(c), oracle::closure(alg, seed, m));

    std::vector<std::vector<Elem>> again;
    for (std::size_t i = 0; i < c.size(); ++i) again.emplace_back(c.elements.at(i).begin(), c.elements.at(i).end());
    EXPECT_EQ(as_set(close_subuniverse(TupleSpace(alg, m), again, false)), as_set(c));

    auto big = as_set(close_subuniverse(TupleSpace(alg, m), h, false));
    for (const auto& t : as_set(c)) EXPECT_TRUE(big.count(t));

    // Provenance terms reproduce their elements coordinatewise; variable i
    // stands for the i-th generator as given.
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t col = 0; col < m; ++col) {
        std::vector<Elem> env;
        for (const auto& t : g) env.push_back(t[col]);
        EXPECT_EQ(eval_term(alg, (*c.provenance)[i], env), c.elements.at(i)[col]);
      }
    }
  }
}

TEST(ClosureProperty, DepthMatchesRound) {
  auto a = testdata::s2();
  auto c = close_subuniverse(TupleSpace(a, 3), {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}}, true);
  for (std::size_t r = 0; r + 1 < c.round_start.size(); ++r)
    for (std::size_t i = c.round_start[r]; i < c.round_start[r + 1]; ++i)
      EXPECT_EQ(term_depth((*c.provenance)[i]), r);
}
