#include "relcomm/freealg.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "relcomm/commutator.hpp"
#include "relcomm/conditions.hpp"
#include "relcomm/error.hpp"
#include "relcomm/relcalc.hpp"
#include "relcomm/relexpr.hpp"

namespace relcomm {

// ---------------------------------------------------------------------------
// Free algebras

std::size_t FreeAlgebra::depth(std::size_t i) const {
  const auto& rs = closure_.round_start;
  auto it = std::upper_bound(rs.begin(), rs.end(), i);
  return static_cast<std::size_t>(it - rs.begin()) - 1;
}

FreeAlgebra free_algebra(const FiniteAlgebra& alg, std::size_t k, const Caps& caps) {
  if (k == 0) throw Error(Errc::invalid, "free algebra needs at least one generator");
  const std::size_t n = alg.size();
  auto width = checked_pow(n, k, caps.max_tuple_width);
  if (!width)
    throw CapExceeded("free algebra on " + std::to_string(k) + " generators over a " +
                      std::to_string(n) + "-element algebra needs tuples wider than " +
                      std::to_string(caps.max_tuple_width));
  std::vector<std::vector<Elem>> proj(k, std::vector<Elem>(*width));
  for (std::size_t a = 0; a < *width; ++a) {
    std::size_t rest = a;
    for (std::size_t i = k; i-- > 0;) {
      proj[i][a] = static_cast<Elem>(rest % n);
      rest /= n;
    }
  }
  Closure c = close_subuniverse(TupleSpace(alg, *width), proj, true, caps);
  std::vector<std::size_t> gens;
  for (const auto& p : proj) gens.push_back(*c.elements.find(p));
  return FreeAlgebra(alg, std::move(c), std::move(gens));
}

FiniteAlgebra FreeAlgebra::induced_algebra(const Caps& caps) const {
  if (capped()) throw CapExceeded("free algebra is capped");
  const std::size_t N = size();
  const std::size_t width = closure_.elements.width();
  std::vector<Operation> ops;
  std::vector<Elem> result(width);
  for (std::size_t op = 0; op < base_.operations().size(); ++op) {
    const auto& o = base_.operation(op);
    const auto k = static_cast<std::size_t>(o.arity);
    auto entries = checked_pow(N, k, caps.max_table_entries);
    if (!entries)
      throw CapExceeded("induced table for '" + o.name + "' exceeds " +
                        std::to_string(caps.max_table_entries) + " entries");
    auto st = base_.strides(op);
    Operation induced{o.name, o.arity, std::vector<Elem>(*entries)};
    std::vector<std::size_t> args(k, 0);
    for (std::size_t idx = 0; idx < *entries; ++idx) {
      std::size_t rest = idx;
      for (std::size_t i = k; i-- > 0;) {
        args[i] = rest % N;
        rest /= N;
      }
      for (std::size_t c = 0; c < width; ++c) {
        std::size_t t = 0;
        for (std::size_t i = 0; i < k; ++i) t += element(args[i])[c] * st[i];
        result[c] = o.table[t];
      }
      auto hit = closure_.elements.find(result);
      if (!hit) throw Error(Errc::invalid, "free algebra is not closed");
      induced.table[idx] = static_cast<Elem>(*hit);
    }
    ops.push_back(std::move(induced));
  }
  return FiniteAlgebra("F(" + base_.name() + "," + std::to_string(generator_count()) + ")", N,
                       std::move(ops));
}

// ---------------------------------------------------------------------------
// Schemes

namespace {

using Pattern = std::vector<int>;  // argument slots as variables x=0, y=1, z=2

enum class Parity { any, even, odd };

bool parity_ok(Parity p, std::size_t i) {
  return p == Parity::any || (p == Parity::even) == (i % 2 == 0);
}

struct UnaryRule {
  Pattern lhs, rhs;  // f_i(lhs) = f_i(rhs)
  Parity parity;
};

struct LinkRule {
  Pattern prev, cur;  // f_{i-1}(prev) = f_i(cur)
  Parity parity;
};

struct SchemeSpec {
  std::size_t arity;
  Pattern start;  // x = f_0(start)
  Pattern end;    // f_n(end) = z
  std::vector<UnaryRule> unary;
  std::vector<LinkRule> links;
  bool even_n;
  // Slots giving t_{2i} and t_{2i+1} of the underlying chain.
  std::optional<std::pair<Pattern, Pattern>> chain_slots;
};

const SchemeSpec& spec(Scheme s) {
  static const SchemeSpec x32{4,
                              {0, 1, 2, 0},
                              {0, 1, 2, 1},
                              {{{0, 1, 0, 0}, {0, 1, 0, 1}, Parity::any}},
                              {{{0, 1, 1, 1}, {0, 1, 1, 0}, Parity::any}},
                              false,
                              std::make_pair(Pattern{0, 1, 2, 0}, Pattern{0, 1, 2, 1})};
  static const SchemeSpec x22{5,
                              {0, 1, 2, 0, 1},
                              {0, 1, 2, 1, 0},
                              {{{0, 1, 0, 0, 1}, {0, 1, 0, 1, 0}, Parity::any}},
                              {{{0, 1, 1, 1, 0}, {0, 1, 1, 0, 1}, Parity::any}},
                              false,
                              std::make_pair(Pattern{0, 1, 2, 0, 1}, Pattern{0, 1, 2, 1, 0})};
  // Four families, transcribed as stated, including the odd-index family
  // whose range starts at 0.
  static const SchemeSpec x32var{4,
                                 {0, 1, 2, 0},
                                 {0, 1, 2, 1},
                                 {{{0, 1, 0, 0}, {0, 1, 0, 1}, Parity::even},
                                  {{0, 1, 0, 1}, {0, 1, 0, 0}, Parity::odd}},
                                 {{{0, 1, 1, 1}, {0, 1, 1, 1}, Parity::odd},
                                  {{0, 1, 1, 0}, {0, 1, 1, 0}, Parity::even}},
                                 true,
                                 std::nullopt};
  switch (s) {
    case Scheme::x32_vii: return x32;
    case Scheme::x22_vii: return x22;
    case Scheme::x32var_vii_prime: return x32var;
  }
  return x32;
}

const char* kVars[] = {"x", "y", "z"};

std::string call_label(std::size_t i, const Pattern& p) {
  std::string s = "f_" + std::to_string(i) + "(";
  for (std::size_t j = 0; j < p.size(); ++j) s += std::string(j ? "," : "") + kVars[p[j]];
  return s + ")";
}

Term instantiate(const Term& f, const Pattern& p) {
  std::vector<Term> args;
  for (int v : p) args.push_back(Term::variable(v));
  return substitute(f, args);
}

}  // namespace

const char* scheme_id(Scheme s) noexcept {
  switch (s) {
    case Scheme::x32_vii: return "x32.vii";
    case Scheme::x22_vii: return "x22.vii";
    case Scheme::x32var_vii_prime: return "x32var.vii'";
  }
  return "?";
}

Scheme parse_scheme(std::string_view id) {
  if (id == "x32.vii" || id == "x32") return Scheme::x32_vii;
  if (id == "x22.vii" || id == "x22") return Scheme::x22_vii;
  if (id == "x32var.vii'" || id == "x32var.vii" || id == "x32var") return Scheme::x32var_vii_prime;
  throw Error(Errc::unknown_id, "unknown scheme '" + std::string(id) + "'");
}

std::size_t scheme_arity(Scheme s) noexcept { return spec(s).arity; }

std::vector<SchemeLine> scheme_identities(Scheme s, std::span<const Term> terms) {
  const SchemeSpec& sp = spec(s);
  if (terms.empty()) throw Error(Errc::arity, "a scheme needs at least one term");
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (max_variable(terms[i]) >= static_cast<int>(sp.arity))
      throw Error(Errc::arity, "term f_" + std::to_string(i) + " uses more than " +
                                   std::to_string(sp.arity) + " variables");
  const std::size_t n = terms.size() - 1;
  if (sp.even_n && n % 2 != 0)
    throw Error(Errc::invalid, std::string(scheme_id(s)) + " requires an even n, got " +
                                   std::to_string(n));
  std::vector<SchemeLine> lines;
  lines.push_back({"x=" + call_label(0, sp.start), Term::variable(0), instantiate(terms[0], sp.start)});
  lines.push_back({call_label(n, sp.end) + "=z", instantiate(terms[n], sp.end), Term::variable(2)});
  for (const auto& u : sp.unary)
    for (std::size_t i = 0; i <= n; ++i)
      if (parity_ok(u.parity, i))
        lines.push_back({call_label(i, u.lhs) + "=" + call_label(i, u.rhs),
                         instantiate(terms[i], u.lhs), instantiate(terms[i], u.rhs)});
  for (const auto& l : sp.links)
    for (std::size_t i = 1; i <= n; ++i)
      if (parity_ok(l.parity, i))
        lines.push_back({call_label(i - 1, l.prev) + "=" + call_label(i, l.cur),
                         instantiate(terms[i - 1], l.prev), instantiate(terms[i], l.cur)});
  return lines;
}

SchemeVerdict verify_scheme(const FiniteAlgebra& alg, Scheme s, std::span<const Term> terms) {
  SchemeVerdict v;
  v.all_hold = true;
  for (auto& line : scheme_identities(s, terms)) {
    auto iv = check_identity(alg, line.lhs, line.rhs, 3);
    v.all_hold = v.all_hold && iv.holds;
    v.lines.push_back({std::move(line.label), iv.holds, std::move(iv.counterexample)});
  }
  return v;
}

namespace {

std::vector<ChainLink> chain_from_terms(Scheme s, std::span<const Term> terms) {
  const SchemeSpec& sp = spec(s);
  std::vector<ChainLink> out;
  if (!sp.chain_slots) return out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    out.push_back({instantiate(terms[i], sp.chain_slots->first), i == 0 ? "start" : "gamma"});
    out.push_back({instantiate(terms[i], sp.chain_slots->second), "T&beta"});
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Extraction

WitnessedRelation witnessed_relation(const FreeAlgebra& f, const FiniteAlgebra& induced,
                                     bool symmetric, const Caps& caps) {
  const auto gx = static_cast<Elem>(f.generator(0));
  const auto gy = static_cast<Elem>(f.generator(1));
  std::vector<std::vector<Elem>> gens{{gx, gy}};
  if (symmetric) gens.push_back({gy, gx});
  for (Elem c = 0; c < f.size(); ++c) gens.push_back({c, c});

  Closure cl = close_subuniverse(TupleSpace(induced, 2), gens, true, caps);
  if (cl.capped) throw CapExceeded("relation closure in the free algebra exceeded caps");

  // Generator slots become the w (and u) variables; constants c become their terms.
  std::vector<Term> repl;
  repl.push_back(Term::variable(3));
  if (symmetric) repl.push_back(Term::variable(4));
  for (std::size_t c = 0; c < f.size(); ++c) repl.push_back(f.term(c));

  WitnessedRelation out{BinRel(f.size()), {}};
  for (std::size_t i = 0; i < cl.size(); ++i) {
    Pair p{cl.elements.at(i)[0], cl.elements.at(i)[1]};
    out.relation.insert(p.first, p.second);
    out.witness.emplace(p, substitute((*cl.provenance)[i], repl));
  }
  return out;
}

namespace {

ExtractionResult extract(const FiniteAlgebra& alg, const Caps& caps, bool tolerance) {
  const Scheme scheme = tolerance ? Scheme::x22_vii : Scheme::x32_vii;
  ExtractionResult res;
  try {
    FreeAlgebra F = free_algebra(alg, 3, caps);
    if (F.capped()) {
      res.reason = "free algebra F(x,y,z) exceeded " + std::to_string(caps.max_elements) + " elements";
      return res;
    }
    FiniteAlgebra FA = F.induced_algebra(caps);
    const auto gx = static_cast<Elem>(F.generator(0));
    const auto gy = static_cast<Elem>(F.generator(1));
    const auto gz = static_cast<Elem>(F.generator(2));
    const Pair xz{gx, gz}, yz{gy, gz};
    BinRel beta = generated_relation(FA, std::span<const Pair>(&xz, 1), RelKind::congruence, caps);
    BinRel gamma = generated_relation(FA, std::span<const Pair>(&yz, 1), RelKind::congruence, caps);
    WitnessedRelation T = witnessed_relation(F, FA, tolerance, caps);
    BinRel tb = intersect(T.relation, beta);

    // Shortest alternating path; phase 0 expects a T&beta step, phase 1 a gamma step.
    const std::size_t N = F.size();
    auto state = [N](Elem e, int phase) { return static_cast<std::size_t>(phase) * N + e; };
    std::vector<std::size_t> parent(2 * N, SIZE_MAX);
    std::deque<std::size_t> queue{state(gx, 0)};
    parent[state(gx, 0)] = state(gx, 0);
    const std::size_t goal = state(gz, 1);
    while (!queue.empty() && parent[goal] == SIZE_MAX) {
      std::size_t s = queue.front();
      queue.pop_front();
      const int phase = s >= N ? 1 : 0;
      const auto a = static_cast<Elem>(s % N);
      const BinRel& step = phase == 0 ? tb : gamma;
      for (Elem b = 0; b < N; ++b) {
        if (!step.contains(a, b)) continue;
        std::size_t t = state(b, 1 - phase);
        if (parent[t] != SIZE_MAX) continue;
        parent[t] = s;
        queue.push_back(t);
      }
    }

    const bool reachable =
        tolerance ? join(gamma, star(tb)).contains(gx, gz) : star(compose(tb, gamma)).contains(gx, gz);
    if (reachable != (parent[goal] != SIZE_MAX))
      throw std::logic_error("chain search disagrees with the relational closure");

    if (parent[goal] == SIZE_MAX) {
      Refutation ref;
      ref.scheme = scheme;
      ref.condition = tolerance ? "x22.vi" : "x32.vi";
      ref.free_size = N;
      ref.statement = tolerance ? "(x,z) in beta & (T ; gamma) but not in gamma v (T & beta)* in F(x,y,z)"
                                : "(x,z) in beta & (T ; gamma) but not in ((T & beta) ; gamma)* in F(x,y,z)";
      res.status = ExtractionResult::Status::refuted;
      res.refutation = std::move(ref);
      return res;
    }

    std::vector<Elem> path;
    for (std::size_t s = goal;; s = parent[s]) {
      path.push_back(static_cast<Elem>(s % N));
      if (parent[s] == s) break;
    }
    std::reverse(path.begin(), path.end());

    TermChain chain;
    chain.scheme = scheme;
    chain.n = (path.size() - 2) / 2;
    for (std::size_t j = 0; j < path.size(); ++j)
      chain.chain.push_back({F.term(path[j]), j == 0 ? "start" : (j % 2 ? "T&beta" : "gamma")});
    for (std::size_t i = 0; i <= chain.n; ++i)
      chain.terms.push_back(T.witness.at({path[2 * i], path[2 * i + 1]}));
    chain.verified = verify_scheme(alg, scheme, chain.terms).all_hold;
    if (tolerance)
      chain.note = "5-ary terms read off a tolerance-generated T with swapped witness slots";
    res.status = ExtractionResult::Status::chain;
    res.chain = std::move(chain);
  } catch (const CapExceeded& e) {
    res.status = ExtractionResult::Status::inconclusive;
    res.reason = e.what();
  }
  return res;
}

// p(x,y,z) -> p(x,y,x) (or p(x,y,y)) as a coordinate map on A^(n^3).
BinRel substitution_kernel(const FreeAlgebra& F, int replaced_by) {
  const std::size_t n = F.base().size();
  const std::size_t width = n * n * n;
  std::vector<std::size_t> src(width);
  for (std::size_t a = 0; a < width; ++a) {
    std::size_t x = a / (n * n), y = (a / n) % n;
    std::size_t z = replaced_by == 0 ? x : y;
    src[a] = (x * n + y) * n + z;
  }
  std::vector<std::vector<Elem>> image(F.size(), std::vector<Elem>(width));
  for (std::size_t e = 0; e < F.size(); ++e)
    for (std::size_t a = 0; a < width; ++a) image[e][a] = F.element(e)[src[a]];
  BinRel k(F.size());
  for (Elem p = 0; p < F.size(); ++p)
    for (Elem q = 0; q < F.size(); ++q)
      if (image[p] == image[q]) k.insert(p, q);
  return k;
}

}  // namespace

ExtractionResult extract_terms_x32(const FiniteAlgebra& alg, const Caps& caps) {
  return extract(alg, caps, false);
}

ExtractionResult extract_terms_x22(const FiniteAlgebra& alg, const Caps& caps) {
  return extract(alg, caps, true);
}

bool verify_refutation(const FiniteAlgebra& alg, const Refutation& ref, const Caps& caps) {
  FreeAlgebra F = free_algebra(alg, 3, caps);
  if (F.capped()) throw CapExceeded("free algebra is capped");
  FiniteAlgebra FA = F.induced_algebra(caps);
  const auto gx = static_cast<Elem>(F.generator(0));
  const auto gy = static_cast<Elem>(F.generator(1));
  const auto gz = static_cast<Elem>(F.generator(2));
  const Pair xy{gx, gy};
  const bool tol = ref.scheme == Scheme::x22_vii;
  Bindings b;
  b.emplace("beta", substitution_kernel(F, 0));
  b.emplace("gamma", substitution_kernel(F, 1));
  b.emplace("T", generated_relation(FA, std::span<const Pair>(&xy, 1),
                                    tol ? RelKind::tolerance : RelKind::reflexive_compatible, caps));
  auto conds = resolve_conditions(ref.condition, std::vector<int>{2});
  const Condition& c = conds.front();
  DeclaredKinds kinds;
  for (const auto& q : c.quantifiers) kinds.emplace(q.name, q.kind);
  EvalOptions opts{KVariant::pure, CircReading::generated_tolerance, caps};
  BinRel lhs = eval_relexpr(FA, c.lhs, b, opts, &kinds);
  BinRel rhs = eval_relexpr(FA, c.rhs, b, opts, &kinds);
  return lhs.contains(gx, gz) && !rhs.contains(gx, gz);
}

// ---------------------------------------------------------------------------
// Bounded search

SearchResult search_terms(const FiniteAlgebra& alg, Scheme s, std::size_t max_n,
                          std::size_t max_depth, const Caps& caps) {
  const SchemeSpec& sp = spec(s);
  SearchResult res;
  Caps c2 = caps;
  c2.max_rounds = max_depth;
  std::optional<FreeAlgebra> F;
  try {
    F.emplace(free_algebra(alg, sp.arity, c2));
  } catch (const CapExceeded& e) {
    res.status = SearchResult::Status::inconclusive;
    res.reason = e.what();
    return res;
  }
  if (F->size() > caps.max_elements) {
    res.status = SearchResult::Status::inconclusive;
    res.reason = "term operations exceed " + std::to_string(caps.max_elements);
    return res;
  }
  const std::size_t N = F->size();
  const std::size_t n = alg.size();
  const std::size_t rows = n * n * n;
  res.candidates = N;

  // Collect the distinct patterns used by the scheme and tabulate each
  // candidate under each of them on A^3.
  std::vector<Pattern> patterns;
  auto pid = [&](const Pattern& p) {
    auto it = std::find(patterns.begin(), patterns.end(), p);
    if (it != patterns.end()) return static_cast<std::size_t>(it - patterns.begin());
    patterns.push_back(p);
    return patterns.size() - 1;
  };
  const std::size_t p_start = pid(sp.start), p_end = pid(sp.end);
  std::vector<std::pair<std::size_t, std::size_t>> unary_ids;
  for (const auto& u : sp.unary) unary_ids.emplace_back(pid(u.lhs), pid(u.rhs));
  std::vector<std::pair<std::size_t, std::size_t>> link_ids;
  for (const auto& l : sp.links) link_ids.emplace_back(pid(l.prev), pid(l.cur));

  using Vec = std::vector<Elem>;
  std::vector<std::vector<Vec>> tab(patterns.size(), std::vector<Vec>(N, Vec(rows)));
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    for (std::size_t a = 0; a < rows; ++a) {
      const std::size_t v[3] = {a / (n * n), (a / n) % n, a % n};
      std::size_t idx = 0;
      for (int slot : patterns[p]) idx = idx * n + v[slot];
      for (std::size_t g = 0; g < N; ++g) tab[p][g][a] = F->element(g)[idx];
    }
  }
  Vec proj_x(rows), proj_z(rows);
  for (std::size_t a = 0; a < rows; ++a) {
    proj_x[a] = static_cast<Elem>(a / (n * n));
    proj_z[a] = static_cast<Elem>(a % n);
  }

  auto unary_ok = [&](std::size_t i, std::size_t g) {
    for (std::size_t r = 0; r < sp.unary.size(); ++r)
      if (parity_ok(sp.unary[r].parity, i) && tab[unary_ids[r].first][g] != tab[unary_ids[r].second][g])
        return false;
    return true;
  };
  auto key = [&](std::size_t i, std::size_t g, bool prev) {
    Vec k;
    for (std::size_t r = 0; r < sp.links.size(); ++r) {
      if (!parity_ok(sp.links[r].parity, i)) continue;
      const Vec& v = tab[prev ? link_ids[r].first : link_ids[r].second][g];
      k.insert(k.end(), v.begin(), v.end());
    }
    return k;
  };
  auto end_ok = [&](std::size_t g) { return tab[p_end][g] == proj_z; };

  std::vector<std::vector<std::size_t>> layers;
  std::optional<std::size_t> found_n;
  for (std::size_t i = 0; i <= max_n; ++i) {
    std::vector<std::size_t> layer;
    if (i == 0) {
      for (std::size_t g = 0; g < N; ++g)
        if (tab[p_start][g] == proj_x && unary_ok(0, g)) layer.push_back(g);
    } else {
      std::set<Vec> keys;
      for (auto f : layers.back()) keys.insert(key(i, f, true));
      for (std::size_t g = 0; g < N; ++g)
        if (unary_ok(i, g) && keys.count(key(i, g, false))) layer.push_back(g);
    }
    layers.push_back(std::move(layer));
    if (layers.back().empty()) break;
    if ((!sp.even_n || i % 2 == 0) &&
        std::any_of(layers.back().begin(), layers.back().end(), end_ok)) {
      found_n = i;
      break;
    }
  }
  if (!found_n) {
    res.status = SearchResult::Status::exhausted;
    return res;
  }

  // Keep only candidates that still reach an admissible f_n, then pick the
  // least index at every position.
  const std::size_t m = *found_n;
  std::vector<std::vector<std::size_t>> live(m + 1);
  for (auto g : layers[m])
    if (end_ok(g)) live[m].push_back(g);
  for (std::size_t i = m; i > 0; --i) {
    std::set<Vec> keys;
    for (auto g : live[i]) keys.insert(key(i, g, false));
    for (auto f : layers[i - 1])
      if (keys.count(key(i, f, true))) live[i - 1].push_back(f);
  }
  std::vector<std::size_t> pick{live[0].front()};
  for (std::size_t i = 1; i <= m; ++i) {
    Vec want = key(i, pick.back(), true);
    for (auto g : live[i])
      if (key(i, g, false) == want) {
        pick.push_back(g);
        break;
      }
  }

  TermChain chain;
  chain.scheme = s;
  chain.n = m;
  for (auto g : pick) chain.terms.push_back(F->term(g));
  chain.chain = chain_from_terms(s, chain.terms);
  chain.verified = verify_scheme(alg, s, chain.terms).all_hold;
  res.status = SearchResult::Status::found;
  res.chain = std::move(chain);
  return res;
}

// ---------------------------------------------------------------------------
// Matrix-chain replay

ReplayResult replay_matrix_chain(const FiniteAlgebra& alg, const TermChain& chain,
                                 const BinRel& r, const Caps& caps) {
  ReplayResult out;
  if (chain.scheme != Scheme::x32_vii) {
    out.ok = false;
    out.failure = "matrix replay applies to x32.vii chains only";
    return out;
  }
  QuadSet M = matrices(alg, r, r, caps);
  BinRel comm = star(bottom_rows(M, BinRel::diagonal(alg.size())));
  auto fail = [&](std::string msg) {
    out.ok = false;
    out.failure = std::move(msg);
    return out;
  };
  for (auto [x, y] : r.pairs()) {
    const std::string at = " at (x,y)=(" + std::to_string(x) + "," + std::to_string(y) + ")";
    Elem prev = x;
    for (std::size_t i = 0; i < chain.terms.size(); ++i) {
      const Term& f = chain.terms[i];
      auto ev = [&](Elem c, Elem d) {
        const Elem env[4] = {x, y, c, d};
        return eval_term(alg, f, env);
      };
      Elem m11 = ev(x, x), m12 = ev(x, y), m21 = ev(y, x), m22 = ev(y, y);
      if (!M.contains(m11, m12, m21, m22))
        return fail("matrix of f_" + std::to_string(i) + " not in M(R,R)" + at);
      if (m11 != m12) return fail("top row of f_" + std::to_string(i) + " not constant" + at);
      if (!comm.contains(m21, m22))
        return fail("bottom row of f_" + std::to_string(i) + " not in [R,R|1]" + at);
      if (m21 != prev) return fail("chain breaks before f_" + std::to_string(i) + at);
      prev = m22;
    }
    if (prev != y) return fail("chain does not end at y" + at);
  }
  return out;
}

}  // namespace relcomm
