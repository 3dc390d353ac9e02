#include "relcomm/relcomm.h"

#include <cstdlib>
#include <cstring>
#include <json.hpp>
#include <sstream>
#include <string>

#include "relcomm/commutator.hpp"
#include "relcomm/conditions.hpp"
#include "relcomm/error.hpp"
#include "relcomm/freealg.hpp"
#include "relcomm/relcalc.hpp"
#include "relcomm/report_io.hpp"

struct relcomm_algebra {
  relcomm::FiniteAlgebra alg;
};

struct relcomm_relation {
  relcomm::BinRel rel;
};

namespace {

using namespace relcomm;
using nlohmann::json;

thread_local std::string g_last_error;

relcomm_status fail(relcomm_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

relcomm_status map_errc(Errc e) {
  switch (e) {
    case Errc::parse: return RELCOMM_E_PARSE;
    case Errc::unknown_id: return RELCOMM_E_UNKNOWN_ID;
    default: return RELCOMM_E_INVALID;
  }
}

// Runs f and translates exceptions into status codes.
template <class F>
relcomm_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const Error& e) {
    return fail(map_errc(e.code()), e.what());
  } catch (const CapExceeded& e) {
    return fail(RELCOMM_E_CAPPED, e.what());
  } catch (const json::exception& e) {
    return fail(RELCOMM_E_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RELCOMM_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RELCOMM_E_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

Caps to_caps(const relcomm_caps* c) {
  Caps caps;
  if (!c) return caps;
  if (c->max_elements) caps.max_elements = c->max_elements;
  if (c->max_tuple_width) caps.max_tuple_width = c->max_tuple_width;
  if (c->max_table_entries) caps.max_table_entries = c->max_table_entries;
  return caps;
}

Strategy to_strategy(const relcomm_strategy* s) {
  Strategy out;
  if (!s) return out;
  out.enumeration.seed = s->seed;
  out.enumeration.exhaustive_bits = s->exhaustive_bits;
  out.enumeration.samples = s->relation_samples;
  out.tuple_limit = s->tuple_limit;
  out.tuple_samples = s->tuple_samples;
  if (s->n_count > RELCOMM_MAX_N_LIST) throw Error(Errc::invalid, "too many entries in n_list");
  out.n_list.assign(s->n_list, s->n_list + s->n_count);
  for (int n : out.n_list)
    if (n < 1) throw Error(Errc::invalid, "n must be positive, got " + std::to_string(n));
  if (s->k_variant != 0 && s->k_variant != 1) throw Error(Errc::invalid, "k_variant must be 0 or 1");
  out.k_variant = s->k_variant ? KVariant::seeded : KVariant::pure;
  if (s->circ != 0 && s->circ != 1) throw Error(Errc::invalid, "circ must be 0 or 1");
  out.circ = s->circ ? CircReading::symmetric_star : CircReading::generated_tolerance;
  out.max_counterexamples = s->max_counterexamples;
  out.caps = to_caps(&s->caps);
  return out;
}

bool null_args(std::initializer_list<const void*> ps) {
  for (auto p : ps)
    if (!p) return true;
  return false;
}

relcomm_status null_error() { return fail(RELCOMM_E_INVALID, "null argument"); }

BinRel parse_relation_literal(const FiniteAlgebra& alg, std::string_view text) {
  const std::size_t n = alg.size();
  if (text == "id" || text == "\"id\"") return BinRel::diagonal(n);
  if (text == "full" || text == "\"full\"") return BinRel::full(n);
  json j = json::parse(text);
  if (!j.is_object()) throw Error(Errc::parse, "relation literal must be a JSON object");
  std::vector<Pair> ps;
  for (const auto& p : j.at("pairs")) {
    if (!p.is_array() || p.size() != 2) throw Error(Errc::parse, "relation pairs must be [a,b]");
    auto a = p[0].get<long long>(), b = p[1].get<long long>();
    if (a < 0 || b < 0 || a >= static_cast<long long>(n) || b >= static_cast<long long>(n))
      throw Error(Errc::invalid, "pair (" + std::to_string(a) + "," + std::to_string(b) +
                                     ") outside universe of size " + std::to_string(n));
    ps.emplace_back(static_cast<Elem>(a), static_cast<Elem>(b));
  }
  const std::string close = j.value("close", std::string("none"));
  if (close == "none") return BinRel::from_pairs(n, ps);
  return generated_relation(alg, ps, parse_kind(close));
}

std::string algebra_info(const FiniteAlgebra& alg, relcomm_format fmt) {
  json ops = json::array();
  for (const auto& o : alg.operations()) ops.push_back({{"name", o.name}, {"arity", o.arity}});
  json counts = json::object();
  if (alg.size() <= 4)
    for (RelKind k : {RelKind::reflexive_compatible, RelKind::tolerance, RelKind::congruence})
      counts[kind_name(k)] = enumerate_relations(alg, k).size();
  if (fmt == RELCOMM_FORMAT_JSON)
    return json{{"name", alg.name()}, {"size", alg.size()}, {"operations", ops}, {"relations", counts}}
               .dump() + "\n";
  std::ostringstream os;
  os << "algebra " << (alg.name().empty() ? "(unnamed)" : alg.name()) << "  size " << alg.size() << '\n';
  for (const auto& o : alg.operations()) os << "  operation " << o.name << "/" << o.arity << '\n';
  for (const auto& [k, v] : counts.items()) os << "  " << k << " relations: " << v.get<std::size_t>() << '\n';
  return os.str();
}

std::string chain_out(const TermChain& c, relcomm_format fmt) {
  return fmt == RELCOMM_FORMAT_JSON ? chain_to_json(c) + "\n" : chain_to_text(c);
}

std::string status_doc(Scheme s, const char* status, std::size_t candidates, const std::string& reason,
                       relcomm_format fmt) {
  if (fmt == RELCOMM_FORMAT_JSON) {
    json j{{"scheme", scheme_id(s)}, {"status", status}, {"reason", reason}};
    if (candidates) j["candidates"] = candidates;
    return j.dump() + "\n";
  }
  std::string t = std::string(scheme_id(s)) + ": " + status;
  if (candidates) t += " (" + std::to_string(candidates) + " term operations searched)";
  if (!reason.empty()) t += ": " + reason;
  return t + "\n";
}

}  // namespace

extern "C" {

const char* relcomm_last_error(void) { return g_last_error.c_str(); }

const char* relcomm_version(void) { return "1.0.0"; }

void relcomm_string_free(char* s) { std::free(s); }

relcomm_status relcomm_algebra_parse(const char* text, relcomm_algebra** out) {
  if (null_args({text, out})) return null_error();
  return guarded([&] {
    *out = new relcomm_algebra{parse_algebra(text)};
    return RELCOMM_OK;
  });
}

void relcomm_algebra_free(relcomm_algebra* a) { delete a; }

size_t relcomm_algebra_size(const relcomm_algebra* a) { return a ? a->alg.size() : 0; }

relcomm_status relcomm_algebra_info(const relcomm_algebra* a, relcomm_format fmt, char** out) {
  if (null_args({a, out})) return null_error();
  return guarded([&] {
    *out = dup_string(algebra_info(a->alg, fmt));
    return RELCOMM_OK;
  });
}

relcomm_status relcomm_relation_parse(const relcomm_algebra* a, const char* literal,
                                      relcomm_relation** out) {
  if (null_args({a, literal, out})) return null_error();
  return guarded([&] {
    *out = new relcomm_relation{parse_relation_literal(a->alg, literal)};
    return RELCOMM_OK;
  });
}

void relcomm_relation_free(relcomm_relation* r) { delete r; }

relcomm_status relcomm_relation_to_string(const relcomm_relation* r, char** out) {
  if (null_args({r, out})) return null_error();
  return guarded([&] {
    *out = dup_string(r->rel.str());
    return RELCOMM_OK;
  });
}

int relcomm_relation_contains(const relcomm_relation* r, uint32_t a, uint32_t b) {
  if (!r || a >= r->rel.universe() || b >= r->rel.universe()) return 0;
  return r->rel.contains(a, b) ? 1 : 0;
}

void relcomm_caps_init(relcomm_caps* c) {
  if (!c) return;
  Caps d;
  c->max_elements = d.max_elements;
  c->max_tuple_width = d.max_tuple_width;
  c->max_table_entries = d.max_table_entries;
}

relcomm_status relcomm_commutator(const relcomm_algebra* a, const relcomm_relation* r,
                                  const relcomm_relation* s, relcomm_commutator_variant variant,
                                  const relcomm_caps* caps, size_t* m_size, relcomm_relation** out) {
  if (null_args({a, r, s, out})) return null_error();
  return guarded([&] {
    const auto& alg = a->alg;
    for (const BinRel* x : {&r->rel, &s->rel}) {
      if (x->universe() != alg.size())
        throw Error(Errc::universe_mismatch, "relation universe differs from the algebra");
      if (!is_reflexive(*x) || !is_compatible(alg, *x))
        throw Error(Errc::kind_violation, "commutator arguments must be reflexive compatible, got " +
                                              x->str());
    }
    Caps c = to_caps(caps);
    QuadSet m = matrices(alg, r->rel, s->rel, c);
    BinRel rows = bottom_rows(m, BinRel::diagonal(alg.size()));
    BinRel result = variant == RELCOMM_COMMUTATOR_CG
                        ? generated_relation(alg, rows.pairs(), RelKind::congruence, c)
                        : star(rows);
    if (m_size) *m_size = m.size();
    *out = new relcomm_relation{std::move(result)};
    return RELCOMM_OK;
  });
}

void relcomm_strategy_init(relcomm_strategy* s) {
  if (!s) return;
  Strategy d;
  s->seed = d.enumeration.seed;
  s->exhaustive_bits = d.enumeration.exhaustive_bits;
  s->relation_samples = d.enumeration.samples;
  s->tuple_limit = d.tuple_limit;
  s->tuple_samples = d.tuple_samples;
  std::memset(s->n_list, 0, sizeof s->n_list);
  s->n_count = d.n_list.size();
  for (std::size_t i = 0; i < d.n_list.size(); ++i) s->n_list[i] = d.n_list[i];
  s->k_variant = 0;
  s->circ = 0;
  s->max_counterexamples = d.max_counterexamples;
  relcomm_caps_init(&s->caps);
}

relcomm_status relcomm_check(const relcomm_algebra* a, const char* id, int is_suite,
                             const relcomm_strategy* strategy, relcomm_format fmt, char** out,
                             relcomm_check_summary* summary) {
  if (null_args({a, id, out})) return null_error();
  return guarded([&] {
    const Strategy st = to_strategy(strategy);
    const bool json_mode = fmt == RELCOMM_FORMAT_JSON;
    std::string text;
    relcomm_check_summary sum{0, 0, 0};
    auto emit = [&](const ConditionReport& r) {
      text += json_mode ? report_to_json(r) + "\n" : report_to_text(r);
      ++sum.conditions;
      sum.failed += r.verdict == Verdict::fails;
      sum.capped += r.capped;
    };
    if (is_suite) {
      SuiteReport s = run_suite(a->alg, id, st);
      for (const auto& r : s.reports) emit(r);
      if (!s.reductions_hold()) ++sum.failed;
      text += json_mode ? suite_summary_to_json(s) + "\n" : suite_summary_to_text(s);
    } else {
      for (const auto& c : resolve_conditions(id, st.n_list)) emit(check_condition(a->alg, c, st));
    }
    if (summary) *summary = sum;
    *out = dup_string(text);
    return RELCOMM_OK;
  });
}

relcomm_status relcomm_extract(const relcomm_algebra* a, const char* scheme, const relcomm_caps* caps,
                               relcomm_format fmt, char** out, relcomm_outcome* outcome) {
  if (null_args({a, scheme, out})) return null_error();
  return guarded([&] {
    Scheme s = parse_scheme(scheme);
    if (s == Scheme::x32var_vii_prime)
      throw Error(Errc::invalid, "extraction is provided for x32 and x22 only; use search for x32var");
    Caps c = to_caps(caps);
    ExtractionResult r = s == Scheme::x32_vii ? extract_terms_x32(a->alg, c) : extract_terms_x22(a->alg, c);
    relcomm_outcome o = RELCOMM_OUTCOME_INCONCLUSIVE;
    std::string text;
    switch (r.status) {
      case ExtractionResult::Status::chain:
        o = RELCOMM_OUTCOME_CHAIN;
        text = chain_out(*r.chain, fmt);
        break;
      case ExtractionResult::Status::refuted:
        o = RELCOMM_OUTCOME_REFUTED;
        text = fmt == RELCOMM_FORMAT_JSON ? refutation_to_json(*r.refutation) + "\n"
                                          : refutation_to_text(*r.refutation);
        break;
      case ExtractionResult::Status::inconclusive:
        text = status_doc(s, "inconclusive", 0, r.reason, fmt);
        break;
    }
    if (outcome) *outcome = o;
    *out = dup_string(text);
    return RELCOMM_OK;
  });
}

relcomm_status relcomm_verify(const relcomm_algebra* a, const char* scheme, const char* terms_json,
                              relcomm_format fmt, char** out, int* all_hold) {
  if (null_args({a, terms_json, out})) return null_error();
  return guarded([&] {
    TermsDocument doc = parse_terms_document(terms_json);
    std::optional<Scheme> s = doc.scheme;
    if (scheme) {
      Scheme given = parse_scheme(scheme);
      if (s && *s != given)
        throw Error(Errc::invalid, std::string("terms document is for ") + scheme_id(*s) +
                                       ", not " + scheme_id(given));
      s = given;
    }
    if (!s) throw Error(Errc::invalid, "no scheme given and the terms document names none");
    for (const auto& t : doc.terms) {
      // Resolve operation names and arities against the algebra before checking.
      std::vector<Elem> env(5, 0);
      if (max_variable(t) < 5) eval_term(a->alg, t, env);
    }
    SchemeVerdict v = verify_scheme(a->alg, *s, doc.terms);
    if (all_hold) *all_hold = v.all_hold ? 1 : 0;
    *out = dup_string(fmt == RELCOMM_FORMAT_JSON ? scheme_verdict_to_json(*s, v) + "\n"
                                                 : scheme_verdict_to_text(*s, v));
    return RELCOMM_OK;
  });
}

relcomm_status relcomm_search(const relcomm_algebra* a, const char* scheme, size_t max_n,
                              size_t max_depth, const relcomm_caps* caps, relcomm_format fmt,
                              char** out, relcomm_outcome* outcome) {
  if (null_args({a, scheme, out})) return null_error();
  return guarded([&] {
    Scheme s = parse_scheme(scheme);
    SearchResult r = search_terms(a->alg, s, max_n, max_depth, to_caps(caps));
    relcomm_outcome o = RELCOMM_OUTCOME_INCONCLUSIVE;
    std::string text;
    switch (r.status) {
      case SearchResult::Status::found:
        o = RELCOMM_OUTCOME_CHAIN;
        text = chain_out(*r.chain, fmt);
        break;
      case SearchResult::Status::exhausted:
        o = RELCOMM_OUTCOME_EXHAUSTED;
        text = status_doc(s, "exhausted", r.candidates,
                          "no system with n <= " + std::to_string(max_n) + " at depth <= " +
                              std::to_string(max_depth),
                          fmt);
        break;
      case SearchResult::Status::inconclusive:
        text = status_doc(s, "inconclusive", r.candidates, r.reason, fmt);
        break;
    }
    if (outcome) *outcome = o;
    *out = dup_string(text);
    return RELCOMM_OK;
  });
}

}  // extern "C"
