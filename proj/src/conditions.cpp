#include "relcomm/conditions.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "relcomm/error.hpp"

namespace relcomm {

namespace {

constexpr RelKind kRc = RelKind::reflexive_compatible;
constexpr RelKind kTol = RelKind::tolerance;
constexpr RelKind kCong = RelKind::congruence;

const std::string_view kTheorems[] = {"x32", "x22", "x32var", "x1c"};

Condition make(std::string theorem, std::string base, std::vector<Quantifier> q,
               std::string_view lhs, std::string_view rhs, Shape shape = Shape::inclusion,
               std::optional<int> arity = std::nullopt) {
  Condition c;
  c.theorem = std::move(theorem);
  c.base_id = c.theorem + "." + base;
  c.id = arity ? c.base_id + "[n=" + std::to_string(*arity) + "]" : c.base_id;
  c.quantifiers = std::move(q);
  c.shape = shape;
  c.lhs = parse_relexpr(lhs);
  c.rhs = parse_relexpr(rhs);
  c.arity = arity;
  return c;
}

std::string rname(int i) { return "R" + std::to_string(i); }

std::string chain_product(int n) {
  std::string s = rname(1);
  for (int i = 2; i <= n; ++i) s += " ; " + rname(i);
  return s;
}

// T & (Rn- ; ( ... (T & (R2- ; (T & (R1- ; R1)) ; R2)) ... ) ; Rn)
std::string nested_chain(int n) {
  std::string s = "T & (R1- ; R1)";
  for (int i = 2; i <= n; ++i) s = "T & (" + rname(i) + "- ; (" + s + ") ; " + rname(i) + ")";
  return s;
}

std::vector<Quantifier> chain_quantifiers(int n, RelKind t_kind) {
  std::vector<Quantifier> q;
  for (int i = 1; i <= n; ++i) q.push_back({rname(i), kRc});
  q.push_back({"T", t_kind});
  return q;
}

Condition chain_condition(const std::string& theorem, int n, RelKind t_kind) {
  return make(theorem, "viii", chain_quantifiers(n, t_kind), "(" + chain_product(n) + ") & T",
              "(" + nested_chain(n) + ")*", Shape::inclusion, n);
}

std::vector<Condition> x32_catalog(std::span<const int> n_list) {
  const std::string t = "x32";
  std::vector<Condition> c;
  c.push_back(make(t, "i", {{"R", kRc}}, "R", "C1(R, R)"));
  c.push_back(make(t, "ia", {{"R", kRc}}, "R*", "C1(R, R)"));
  c.push_back(make(t, "ii", {{"R", kRc}, {"T", kRc}}, "R & T", "C1(R, T)"));
  c.push_back(make(t, "iii", {{"R1", kRc}, {"R2", kRc}, {"T", kRc}}, "(R1 ; R2) & T",
                   "(T & (R2- ; (T & (R1- ; R1)) ; R2))*"));
  c.push_back(make(t, "iv", {{"R1", kRc}, {"R2", kRc}, {"T", kRc}}, "R1 & (T ; R2)",
                   "(T & (R2 ; (T & (R1- ; R1)) ; R2-))* ; R2"));
  c.push_back(make(t, "v", {{"beta", kCong}, {"S", kTol}, {"T", kRc}}, "beta & (T ; S)",
                   "(T & (S ; (T & beta) ; S))* ; S"));
  c.push_back(make(t, "vi", {{"beta", kCong}, {"gamma", kCong}, {"T", kRc}},
                   "beta & (T ; gamma)", "(gamma ; (T & beta))*"));
  for (int n : n_list) c.push_back(chain_condition(t, n, kRc));
  return c;
}

std::vector<Condition> x22_catalog(std::span<const int> n_list) {
  const std::string t = "x22";
  std::vector<Condition> c;
  c.push_back(make(t, "i", {{"R", kRc}}, "R", "C1(R, R°)"));
  c.push_back(make(t, "ia", {{"R", kRc}}, "R*", "C1(R, R°)"));
  c.push_back(make(t, "ib", {{"R", kRc}}, "R-", "C1(R, R°)"));
  c.push_back(make(t, "ic", {{"R", kRc}}, "R°", "C1(R, R°)"));
  c.push_back(make(t, "id", {{"R", kRc}}, "Cg(R)", "C1(R, R°)", Shape::equality));
  c.push_back(make(t, "ii", {{"R", kRc}, {"T", kTol}}, "R & T", "C1(R, T)"));
  c.push_back(make(t, "iii", {{"R1", kRc}, {"R2", kRc}, {"T", kTol}}, "(R1 ; R2) & T",
                   "(T & (R2- ; (T & (R1- ; R1)) ; R2))*"));
  c.push_back(make(t, "iv", {{"R1", kRc}, {"R2", kRc}, {"T", kTol}}, "R1 & (T ; R2)",
                   "(T & (R2 ; (T & (R1- ; R1)) ; R2-))* ; R2"));
  c.push_back(make(t, "v", {{"beta", kCong}, {"T", kTol}, {"S", kTol}}, "beta & (T ; S)",
                   "(T & (S ; (T & beta) ; S))* ; S"));
  c.push_back(make(t, "vi", {{"beta", kCong}, {"gamma", kCong}, {"T", kTol}},
                   "beta & (T ; gamma)", "gamma v (T & beta)*"));
  for (int n : n_list) c.push_back(chain_condition(t, n, kTol));
  return c;
}

// The Cg variant: [-,-|1] becomes Cg([-,-|1]) in (i), (ia), (ii) and
// (-)* becomes Cg(-) in the remaining conditions.
std::vector<Condition> x32var_catalog(std::span<const int> n_list) {
  std::vector<Condition> c = x32_catalog(n_list);
  for (auto& cond : c) {
    cond.theorem = "x32var";
    cond.base_id = "x32var" + cond.base_id.substr(3);
    cond.id = "x32var" + cond.id.substr(3);
    auto suffix = cond.base_id.substr(cond.base_id.find('.') + 1);
    if (suffix == "i" || suffix == "ia" || suffix == "ii") {
      cond.rhs = replace_op(cond.rhs, RelExpr::Op::c1, RelExpr::Op::cgc1);
    } else {
      cond.rhs = replace_op(cond.rhs, RelExpr::Op::star, RelExpr::Op::cg);
      cond.lhs = replace_op(cond.lhs, RelExpr::Op::star, RelExpr::Op::cg);
    }
  }
  return c;
}

std::vector<Condition> x1c_catalog(std::span<const int> n_list) {
  const std::string t = "x1c";
  std::vector<Condition> c;
  for (int n : n_list) {
    c.push_back(make(t, "i", chain_quantifiers(n, kRc), "C1(" + chain_product(n) + ", T)",
                     "(" + nested_chain(n) + ")*", Shape::inclusion, n));
  }
  for (int n : n_list) {
    auto q = chain_quantifiers(n, kRc);
    q.push_back({"S", kRc});
    std::string rhs = "S";
    for (int i = 1; i <= n; ++i) rhs = "K(" + rname(i) + ", T; " + rhs + ")";
    c.push_back(make(t, "ii", std::move(q), "K(" + chain_product(n) + ", T; S)", rhs,
                     Shape::inclusion, n));
  }
  return c;
}

struct RelationPool {
  const FiniteAlgebra& alg;
  const EnumerationBudget& budget;
  std::map<RelKind, std::vector<BinRel>> lists;

  const std::vector<BinRel>& of(RelKind k) {
    auto it = lists.find(k);
    if (it == lists.end()) it = lists.emplace(k, enumerate_relations(alg, k, budget)).first;
    return it->second;
  }
};

// Visits binding tuples: all of them when the product is within the limit,
// otherwise `samples` distinct pseudorandom ones. The sample stream is a
// pure function of the seed, so larger budgets extend smaller ones.
template <class F>
void for_each_tuple(const std::vector<std::size_t>& sizes, const Strategy& s, F&& visit) {
  std::size_t total = 1;
  bool overflow = false;
  for (auto z : sizes) {
    if (z == 0) return;
    if (total > s.tuple_limit / z + 1) overflow = true;
    total *= z;
  }
  std::vector<std::size_t> idx(sizes.size(), 0);
  if (!overflow && total <= s.tuple_limit) {
    for (std::size_t i = 0; i < total; ++i) {
      std::size_t r = i;
      for (std::size_t p = sizes.size(); p-- > 0;) {
        idx[p] = r % sizes[p];
        r /= sizes[p];
      }
      visit(idx);
    }
    return;
  }
  std::mt19937_64 rng(s.enumeration.seed ^ 0x9e3779b97f4a7c15ull);
  std::set<std::vector<std::size_t>> seen;
  std::size_t attempts = 0;
  while (seen.size() < s.tuple_samples && attempts < 50 * s.tuple_samples + 100) {
    ++attempts;
    for (std::size_t p = 0; p < sizes.size(); ++p) idx[p] = rng() % sizes[p];
    if (seen.insert(idx).second) visit(idx);
  }
}

std::optional<Pair> violation(const Condition& c, const BinRel& lhs, const BinRel& rhs) {
  auto a = lhs.first_outside(rhs);
  if (c.shape == Shape::inclusion) return a;
  auto b = rhs.first_outside(lhs);
  if (a && b) return std::min(*a, *b);
  return a ? a : b;
}

Bindings bind(const Condition& c, RelationPool& pool, const std::vector<std::size_t>& idx) {
  Bindings b;
  for (std::size_t i = 0; i < c.quantifiers.size(); ++i)
    b.emplace(c.quantifiers[i].name, pool.of(c.quantifiers[i].kind)[idx[i]]);
  return b;
}

std::vector<std::size_t> pool_sizes(const Condition& c, RelationPool& pool) {
  std::vector<std::size_t> sizes;
  for (const auto& q : c.quantifiers) sizes.push_back(pool.of(q.kind).size());
  return sizes;
}

ConditionReport check_with(const FiniteAlgebra& alg, const Condition& cond, const Strategy& s,
                           RelationPool& pool) {
  ConditionReport rep;
  rep.condition = cond.id;
  rep.algebra = alg.name();
  rep.strategy = s.describe();
  RelEvaluator ev(alg, {s.k_variant, s.circ, s.caps});
  for_each_tuple(pool_sizes(cond, pool), s, [&](const std::vector<std::size_t>& idx) {
    Bindings b = bind(cond, pool, idx);
    std::optional<Pair> bad;
    try {
      BinRel lhs = ev.eval(cond.lhs, b);
      BinRel rhs = ev.eval(cond.rhs, b);
      bad = violation(cond, lhs, rhs);
    } catch (const CapExceeded&) {
      ++rep.capped;
      return;
    }
    ++rep.tested;
    if (!bad) return;
    ++rep.failures;
    if (rep.counterexamples.size() < s.max_counterexamples) {
      Counterexample cx;
      for (const auto& q : cond.quantifiers) cx.bindings.emplace_back(q.name, b.at(q.name));
      cx.witness = *bad;
      rep.counterexamples.push_back(std::move(cx));
    }
  });
  rep.verdict = rep.failures > 0 ? Verdict::fails : Verdict::holds_on_tested;
  return rep;
}

// Compares two conditions instance by instance: `map` turns a binding tuple
// of `source` into bindings for `target`; both sides must coincide exactly.
template <class Map>
Reduction compare_instances(const FiniteAlgebra& alg, const Strategy& s, RelationPool& pool,
                            const Condition& source, const Condition& target, Map&& map,
                            std::string description) {
  Reduction red{std::move(description), 0, 0};
  RelEvaluator ev(alg, {s.k_variant, s.circ, s.caps});
  for_each_tuple(pool_sizes(source, pool), s, [&](const std::vector<std::size_t>& idx) {
    Bindings b = bind(source, pool, idx);
    try {
      BinRel sl = ev.eval(source.lhs, b), sr = ev.eval(source.rhs, b);
      Bindings tb = map(b, ev);
      BinRel tl = ev.eval(target.lhs, tb), tr = ev.eval(target.rhs, tb);
      ++red.instances;
      if (sl != tl || sr != tr) ++red.mismatches;
    } catch (const CapExceeded&) {
    }
  });
  return red;
}

const Condition* find_in(const std::vector<Condition>& cat, std::string_view id) {
  for (const auto& c : cat)
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace

std::span<const std::string_view> theorem_ids() { return kTheorems; }

std::vector<Condition> catalog(std::string_view theorem, std::span<const int> n_list) {
  for (int n : n_list)
    if (n < 1) throw Error(Errc::invalid, "chain length n must be at least 1");
  if (theorem == "x32") return x32_catalog(n_list);
  if (theorem == "x22") return x22_catalog(n_list);
  if (theorem == "x32var") return x32var_catalog(n_list);
  if (theorem == "x1c") return x1c_catalog(n_list);
  throw Error(Errc::unknown_id, "unknown theorem '" + std::string(theorem) + "'");
}

std::vector<Condition> resolve_conditions(std::string_view id, std::span<const int> n_list) {
  auto dot = id.find('.');
  if (dot == std::string_view::npos)
    throw Error(Errc::unknown_id, "unknown condition '" + std::string(id) + "'");
  auto theorem = id.substr(0, dot);
  if (std::find(std::begin(kTheorems), std::end(kTheorems), theorem) == std::end(kTheorems))
    throw Error(Errc::unknown_id, "unknown condition '" + std::string(id) + "'");

  std::vector<int> ns(n_list.begin(), n_list.end());
  std::string_view base = id;
  if (auto br = id.find("[n="); br != std::string_view::npos) {
    if (id.back() != ']') throw Error(Errc::unknown_id, "malformed condition id '" + std::string(id) + "'");
    auto digits = id.substr(br + 3, id.size() - br - 4);
    int n = 0;
    for (char ch : digits) {
      if (ch < '0' || ch > '9' || n > 1000)
        throw Error(Errc::unknown_id, "malformed condition id '" + std::string(id) + "'");
      n = n * 10 + (ch - '0');
    }
    if (digits.empty() || n < 1)
      throw Error(Errc::unknown_id, "malformed condition id '" + std::string(id) + "'");
    ns = {n};
    base = id.substr(0, br);
  }
  std::vector<Condition> out;
  for (auto& c : catalog(theorem, ns))
    if (c.base_id == base && (base.size() == id.size() || c.arity)) out.push_back(std::move(c));
  if (out.empty()) throw Error(Errc::unknown_id, "unknown condition '" + std::string(id) + "'");
  return out;
}

std::string Strategy::describe() const {
  std::ostringstream os;
  os << "relations:exhaustive-bits<=" << enumeration.exhaustive_bits
     << ",samples=" << enumeration.samples << ",seed=" << enumeration.seed
     << ";tuples:exhaustive<=" << tuple_limit << ",samples=" << tuple_samples << ";n=[";
  for (std::size_t i = 0; i < n_list.size(); ++i) os << (i ? "," : "") << n_list[i];
  os << "];k-variant=" << k_variant_name(k_variant) << ";circ=" << circ_reading_name(circ)
     << ";max-elements=" << caps.max_elements;
  return os.str();
}

const char* verdict_name(Verdict v) noexcept {
  return v == Verdict::fails ? "fails" : "holds-on-tested";
}

ConditionReport check_condition(const FiniteAlgebra& alg, const Condition& cond,
                                const Strategy& strategy) {
  RelationPool pool{alg, strategy.enumeration, {}};
  return check_with(alg, cond, strategy, pool);
}

bool recheck_counterexample(const FiniteAlgebra& alg, const Condition& cond,
                            const Counterexample& cx, KVariant variant, const Caps& caps,
                            CircReading circ) {
  Bindings b;
  DeclaredKinds kinds;
  for (const auto& [name, rel] : cx.bindings) b.emplace(name, rel);
  for (const auto& q : cond.quantifiers) kinds.emplace(q.name, q.kind);
  EvalOptions opts{variant, circ, caps};
  BinRel lhs = eval_relexpr(alg, cond.lhs, b, opts, &kinds);
  BinRel rhs = eval_relexpr(alg, cond.rhs, b, opts, &kinds);
  auto [x, y] = cx.witness;
  if (cond.shape == Shape::inclusion) return lhs.contains(x, y) && !rhs.contains(x, y);
  return lhs.contains(x, y) != rhs.contains(x, y);
}

LemmaDifferential lemma_differential(const FiniteAlgebra& alg, const Strategy& strategy) {
  LemmaDifferential d;
  RelationPool pool{alg, strategy.enumeration, {}};
  auto conds = catalog("x1c", strategy.n_list);
  for (KVariant v : {KVariant::pure, KVariant::seeded}) {
    Strategy s = strategy;
    s.k_variant = v;
    auto& reps = v == KVariant::pure ? d.pure_reports : d.seeded_reports;
    for (const auto& c : conds) reps.push_back(check_with(alg, c, s, pool));
    bool ok = std::none_of(reps.begin(), reps.end(),
                           [](const auto& r) { return r.verdict == Verdict::fails; });
    (v == KVariant::pure ? d.pure_passes : d.seeded_passes) = ok;
  }
  return d;
}

bool SuiteReport::any_failed() const {
  return std::any_of(reports.begin(), reports.end(),
                     [](const auto& r) { return r.verdict == Verdict::fails; });
}

std::size_t SuiteReport::capped() const {
  std::size_t c = 0;
  for (const auto& r : reports) c += r.capped;
  return c;
}

bool SuiteReport::reductions_hold() const {
  return std::all_of(reductions.begin(), reductions.end(),
                     [](const auto& r) { return r.mismatches == 0; });
}

SuiteReport run_suite(const FiniteAlgebra& alg, std::string_view theorem,
                      const Strategy& strategy) {
  SuiteReport suite;
  suite.theorem = std::string(theorem);
  auto conds = catalog(theorem, strategy.n_list);
  RelationPool pool{alg, strategy.enumeration, {}};
  for (const auto& c : conds) suite.reports.push_back(check_with(alg, c, strategy, pool));

  if (theorem == "x1c") {
    suite.lemma = lemma_differential(alg, strategy);
    return suite;
  }

  const std::string t(theorem);
  // (ii) specialized to (i): T := R, or T := R° for the tolerance version.
  if (const Condition *ii = find_in(conds, t + ".ii"), *i = find_in(conds, t + ".i"); ii && i) {
    const bool tol = theorem == "x22";
    suite.reductions.push_back(compare_instances(
        alg, strategy, pool, *i, *ii,
        [&](const Bindings& b, RelEvaluator& ev) {
          Bindings out = b;
          out.insert_or_assign("T", tol ? ev.tolerance(b.at("R")) : b.at("R"));
          return out;
        },
        tol ? "(ii) with T := R° coincides with (i)" : "(ii) with T := R coincides with (i)"));
    // (ii)'s lhs is R & T, which is R here since R is contained in T.
  }
  // (viii) at n = 2 is (iii) verbatim.
  const Condition* iii = find_in(conds, t + ".iii");
  Condition viii2 = chain_condition(t, 2, theorem == "x22" ? kTol : kRc);
  if (theorem == "x32var") viii2 = x32var_catalog(std::vector<int>{2}).back();
  if (iii) {
    suite.reductions.push_back(compare_instances(
        alg, strategy, pool, viii2, *iii, [](const Bindings& b, RelEvaluator&) { return b; },
        "(viii) with n = 2 coincides with (iii)"));
  }
  // (viii) with the last relation set to the diagonal drops to n - 1.
  for (int n : strategy.n_list) {
    if (n < 3) continue;
    auto lower = theorem == "x32var" ? x32var_catalog(std::vector<int>{n - 1}).back()
                                     : chain_condition(t, n - 1, theorem == "x22" ? kTol : kRc);
    auto upper = theorem == "x32var" ? x32var_catalog(std::vector<int>{n}).back()
                                     : chain_condition(t, n, theorem == "x22" ? kTol : kRc);
    suite.reductions.push_back(compare_instances(
        alg, strategy, pool, lower, upper,
        [&](const Bindings& b, RelEvaluator&) {
          Bindings out = b;
          out.insert_or_assign(rname(n), BinRel::diagonal(alg.size()));
          return out;
        },
        "(viii) with n = " + std::to_string(n) + " and R" + std::to_string(n) +
            " := id coincides with n = " + std::to_string(n - 1)));
  }

  std::vector<std::string> holds, fails;
  for (const auto& r : suite.reports)
    (r.verdict == Verdict::fails ? fails : holds).push_back(r.condition);
  if (!holds.empty() && !fails.empty()) {
    std::string msg = "verdicts split on this algebra; fails:";
    for (const auto& f : fails) msg += " " + f;
    msg += "; holds-on-tested:";
    for (const auto& h : holds) msg += " " + h;
    suite.noteworthy.push_back(std::move(msg));
  }
  return suite;
}

}  // namespace relcomm
