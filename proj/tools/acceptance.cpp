// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "common.hpp"
#include "oracles.hpp"
#include "relcomm/commutator.hpp"
#include "relcomm/conditions.hpp"
#include "relcomm/error.hpp"
#include "relcomm/freealg.hpp"
#include "relcomm/relcalc.hpp"

using namespace relcomm;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

std::vector<FiniteAlgebra> all_test_algebras() {
  auto v = testdata::two_element_algebras();
  for (auto a : {testdata::set_algebra(1), testdata::set_algebra(3), testdata::z3(), testdata::c3(),
                 testdata::rand4a(), testdata::rand4b()})
    v.push_back(a);
  return v;
}

// Extraction needs F(3) inside A^(n^3); algebras past the default width cap are out of scope.
bool within_free_gate(const FiniteAlgebra& a) {
  return a.size() * a.size() * a.size() <= Caps{}.max_tuple_width;
}

void lemma_suite(Outcome& o) {
  struct Case {
    FiniteAlgebra alg;
    bool sampled;
  };
  std::vector<Case> cases{{testdata::set_algebra(2), false}, {testdata::s2(), false}, {testdata::z2(), false},
                          {testdata::maj2(), false},        {testdata::rand4a(), true}, {testdata::rand4b(), true}};
  bool pure_all = true, seeded_all = true;
  for (const auto& c : cases) {
    Strategy st;
    if (c.sampled) {
      st.tuple_limit = 0;
      st.tuple_samples = 250;
    } else {
      st.enumeration.exhaustive_bits = 1000;
      st.tuple_limit = std::size_t(-1);
    }
    auto d = lemma_differential(c.alg, st);
    pure_all = pure_all && d.pure_passes;
    seeded_all = seeded_all && d.seeded_passes;
    std::size_t instances = 0;
    for (const auto* reps : {&d.pure_reports, &d.seeded_reports})
      for (const auto& r : *reps) {
        instances += r.tested;
        if (c.sampled && r.tested < 200) o.fail(c.alg.name() + " " + r.condition + " tested only " + std::to_string(r.tested));
        if (r.capped) o.fail(c.alg.name() + " " + r.condition + " capped");
      }
    o.detail << c.alg.name() << "[" << instances << " instances, pure " << (d.pure_passes ? "ok" : "FAIL") << ", seeded "
             << (d.seeded_passes ? "ok" : "FAIL") << "] ";
  }
  if (!pure_all && !seeded_all) o.fail("no K variant passes on every algebra");
  o.detail << "passing variants:" << (pure_all ? " pure" : "") << (seeded_all ? " seeded" : "");
}

void remark_identities(Outcome& o) {
  std::size_t pairs = 0;
  for (const auto& a : testdata::small_algebras()) {
    const auto d = BinRel::diagonal(a.size());
    const auto rs = enumerate_relations(a, RelKind::reflexive_compatible);
    for (const auto& r : rs)
      for (const auto& s : rs) {
        ++pairs;
        const auto c = commutator_one(a, r, s);
        const auto cs = commutator_one(a, r, converse(s));
        const auto seed = c.pairs();
        const auto cg = generated_relation(a, seed, RelKind::congruence);
        if (converse(c) != cs) o.fail(a.name() + " converse law at R=" + r.str() + " S=" + s.str());
        if (cg != star(compose(c, converse(c)))) o.fail(a.name() + " Cg law at R=" + r.str() + " S=" + s.str());
        if (cg != star(compose(k_operator(a, r, s, d, KVariant::pure), k_operator(a, r, converse(s), d, KVariant::pure))))
          o.fail(a.name() + " K law at R=" + r.str() + " S=" + s.str());
      }
  }
  o.detail << pairs << " (R,S) pairs over " << testdata::small_algebras().size() << " algebras";
}

void commutator_truths(Outcome& o) {
  auto check = [&](const FiniteAlgebra& a, const BinRel& r, const BinRel& s, const BinRel& expected) {
    const auto got = commutator_one(a, r, s);
    if (got != expected) o.fail(a.name() + " [" + r.str() + "," + s.str() + "|1] = " + got.str());
    if (oracle::to_rel(got) != oracle::commutator_one(a, oracle::to_rel(r), oracle::to_rel(s)))
      o.fail(a.name() + " disagrees with the closure oracle");
  };
  check(testdata::z2(), BinRel::full(2), BinRel::full(2), BinRel::diagonal(2));
  check(testdata::maj2(), BinRel::full(2), BinRel::full(2), BinRel::full(2));
  auto set2 = testdata::set_algebra(2);
  auto rs = enumerate_relations(set2, RelKind::reflexive_compatible);
  for (const auto& r : rs)
    for (const auto& s : rs) check(set2, r, s, BinRel::diagonal(2));
  o.detail << "Z2, Maj2 and " << rs.size() * rs.size() << " set2 pairs";
}

void extraction_soundness(Outcome& o) {
  std::size_t chains = 0, refs = 0;
  for (const auto& a : all_test_algebras()) {
    if (!within_free_gate(a)) {
      o.detail << a.name() << " gated; ";
      continue;
    }
    for (bool tol : {false, true}) {
      auto r = tol ? extract_terms_x22(a, Caps{}) : extract_terms_x32(a, Caps{});
      const std::string tag = a.name() + (tol ? " x22" : " x32");
      switch (r.status) {
        case ExtractionResult::Status::chain:
          ++chains;
          if (!r.chain->verified || !verify_scheme(a, r.chain->scheme, r.chain->terms).all_hold)
            o.fail(tag + " unverified chain");
          break;
        case ExtractionResult::Status::refuted:
          ++refs;
          if (!verify_refutation(a, *r.refutation, Caps{})) o.fail(tag + " refutation does not re-verify");
          break;
        case ExtractionResult::Status::inconclusive:
          o.fail(tag + " inconclusive: " + r.reason);
          break;
      }
    }
  }
  for (auto a : {testdata::z2(), testdata::set_algebra(2)})
    if (extract_terms_x32(a).status != ExtractionResult::Status::refuted) o.fail(a.name() + " x32 not refuted");
  for (bool tol : {false, true}) {
    auto r = tol ? extract_terms_x22(testdata::set_algebra(1)) : extract_terms_x32(testdata::set_algebra(1));
    if (r.status != ExtractionResult::Status::chain || r.chain->n != 0 || !r.chain->verified)
      o.fail("singleton did not give a verified n=0 chain");
  }
  o.detail << chains << " chains, " << refs << " refutations";
}

void cross_direction(Outcome& o) {
  std::size_t algebras = 0, relations = 0;
  for (const auto& a : all_test_algebras()) {
    if (!within_free_gate(a)) continue;
    auto r = extract_terms_x32(a);
    if (r.status != ExtractionResult::Status::chain || !r.chain->verified) continue;
    ++algebras;
    Strategy st;
    st.enumeration.exhaustive_bits = 1000;
    st.tuple_limit = std::size_t(-1);
    auto rep = check_condition(a, resolve_conditions("x32.i", std::vector<int>{2})[0], st);
    if (rep.verdict != Verdict::holds_on_tested || rep.capped) o.fail(a.name() + " x32.i does not hold");
    for (const auto& rel : enumerate_relations(a, RelKind::reflexive_compatible, st.enumeration)) {
      ++relations;
      auto rp = replay_matrix_chain(a, *r.chain, rel);
      if (!rp.ok) o.fail(a.name() + " replay at R=" + rel.str() + ": " + rp.failure);
    }
  }
  if (algebras == 0) o.fail("no verified x32 chain to check");
  o.detail << algebras << " algebras with chains, " << relations << " relations replayed";
}

void free_counts(Outcome& o) {
  struct Case {
    FiniteAlgebra alg;
    std::size_t expected;
  };
  for (const auto& c : {Case{testdata::set_algebra(2), 3}, Case{testdata::s2(), 7}, Case{testdata::z2(), 8}}) {
    const auto got = free_algebra(c.alg, 3).size();
    const auto oracle_count = oracle::term_operation_count(c.alg, 3);
    o.detail << c.alg.name() << "=" << got << " ";
    if (got != c.expected || oracle_count != c.expected) o.fail(c.alg.name() + " count mismatch");
  }
}

void relcalc_laws(Outcome& o) {
  constexpr int kTrials = 1000;
  std::mt19937_64 rng(7);
  const auto algs = all_test_algebras();
  std::size_t checks = 0;
  auto law = [&](const char* name, const std::function<bool(const FiniteAlgebra&)>& holds) {
    for (int i = 0; i < kTrials; ++i) {
      const auto& a = algs[static_cast<std::size_t>(i) % algs.size()];
      ++checks;
      if (!holds(a)) {
        o.fail(std::string(name) + " on " + a.name());
        return;
      }
    }
  };
  auto rnd = [&](const FiniteAlgebra& a) { return testdata::random_relation(rng, a.size()); };
  auto rnd_compatible = [&](const FiniteAlgebra& a) {
    auto seed = testdata::random_relation(rng, a.size(), 0.2).pairs();
    return generated_relation(a, seed, RelKind::reflexive_compatible);
  };
  law("associativity", [&](const FiniteAlgebra& a) {
    auto r = rnd(a), s = rnd(a), t = rnd(a);
    return compose(compose(r, s), t) == compose(r, compose(s, t));
  });
  law("identity", [&](const FiniteAlgebra& a) {
    auto r = rnd(a);
    auto d = BinRel::diagonal(a.size());
    return compose(d, r) == r && compose(r, d) == r;
  });
  law("involution", [&](const FiniteAlgebra& a) {
    auto r = rnd(a);
    return converse(converse(r)) == r;
  });
  law("converse-of-compose", [&](const FiniteAlgebra& a) {
    auto r = rnd(a), s = rnd(a);
    return converse(compose(r, s)) == compose(converse(s), converse(r));
  });
  law("star idempotence", [&](const FiniteAlgebra& a) {
    auto r = rnd(a);
    return star(star(r)) == star(r) && oracle::to_rel(star(r)) == oracle::star(oracle::to_rel(r));
  });
  law("compatibility preservation", [&](const FiniteAlgebra& a) {
    auto r = rnd_compatible(a), s = rnd_compatible(a);
    return is_compatible(a, r) && oracle::compatible(a, oracle::to_rel(r)) && is_compatible(a, compose(r, s)) &&
           is_compatible(a, converse(r)) && is_compatible(a, intersect(r, s)) && is_compatible(a, star(r));
  });
  o.detail << checks << " randomized checks over " << algs.size() << " algebras";
}

void oracle_agreement(Outcome& o) {
  std::size_t compared = 0, found = 0;
  for (const auto& a : testdata::two_element_algebras()) {
    for (Scheme s : {Scheme::x32_vii, Scheme::x22_vii, Scheme::x32var_vii_prime}) {
      auto sr = search_terms(a, s, 4, 3);
      const std::string tag = a.name() + " " + scheme_id(s);
      if (sr.status == SearchResult::Status::inconclusive) {
        o.fail(tag + " search inconclusive");
        continue;
      }
      if (sr.status == SearchResult::Status::found) {
        ++found;
        if (!verify_scheme(a, s, sr.chain->terms).all_hold) o.fail(tag + " searched terms fail verify_scheme");
      }
      if (s == Scheme::x32var_vii_prime) continue;
      auto er = s == Scheme::x22_vii ? extract_terms_x22(a) : extract_terms_x32(a);
      if (er.status == ExtractionResult::Status::inconclusive) continue;
      ++compared;
      const bool ext_ok = er.status == ExtractionResult::Status::chain;
      const bool in_bounds = ext_ok && er.chain->n <= 4;
      if (sr.status == SearchResult::Status::found && !ext_ok) o.fail(tag + " search found, extraction refuted");
      if (!ext_ok && sr.status != SearchResult::Status::exhausted) o.fail(tag + " refuted but search not exhausted");
      if (in_bounds && sr.status != SearchResult::Status::found) {
        std::size_t depth = 0;
        for (const auto& t : er.chain->terms) depth = std::max(depth, term_depth(t));
        if (depth <= 3) o.fail(tag + " extraction chain within bounds but search exhausted");
      }
    }
  }
  o.detail << compared << " extract/search comparisons, " << found << " searched systems verified";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    void (*run)(Outcome&);
  };
  const Criterion criteria[] = {
      {1, "lemma suite", lemma_suite},
      {2, "remark identities", remark_identities},
      {3, "commutator ground truths", commutator_truths},
      {4, "extraction soundness", extraction_soundness},
      {5, "chain implies x32.i, matrix replay", cross_direction},
      {6, "free algebra counts", free_counts},
      {7, "relcalc laws", relcalc_laws},
      {8, "extract/search agreement", oracle_agreement},
  };
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d %s: %s (%.1fs) %s\n", c.id, o.pass ? "PASS" : "FAIL", c.title, secs,
                o.detail.str().c_str());
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
