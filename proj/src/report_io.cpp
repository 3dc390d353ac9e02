#include "relcomm/report_io.hpp"

#include <json.hpp>
#include <sstream>

#include "relcomm/error.hpp"

namespace relcomm {

using nlohmann::json;

namespace {

const std::vector<std::string>& names5() {
  static const std::vector<std::string> v = variable_names(5);
  return v;
}

json pairs_json(const BinRel& r) {
  json a = json::array();
  for (auto [x, y] : r.pairs()) a.push_back({x, y});
  return a;
}

BinRel pairs_from_json(const json& a, std::size_t n) {
  std::vector<Pair> ps;
  for (const auto& p : a) ps.emplace_back(p.at(0).get<Elem>(), p.at(1).get<Elem>());
  return BinRel::from_pairs(n, ps);
}

template <class F>
auto parsing(std::string_view what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(Errc::parse, std::string(what) + ": " + e.what());
  }
}

json report_json(const ConditionReport& r) {
  json cx = json::array();
  std::size_t universe = 0;
  for (const auto& c : r.counterexamples) {
    json b = json::object();
    for (const auto& [name, rel] : c.bindings) {
      b[name] = pairs_json(rel);
      universe = rel.universe();
    }
    cx.push_back({{"bindings", b}, {"witness", {c.witness.first, c.witness.second}}});
  }
  json j{{"condition", r.condition},
         {"verdict", verdict_name(r.verdict)},
         {"tested", r.tested},
         {"counterexamples", cx},
         {"capped", r.capped},
         {"algebra", r.algebra},
         {"strategy", r.strategy},
         {"failures", r.failures}};
  if (universe) j["universe"] = universe;
  return j;
}

json chain_json(const TermChain& c) {
  json terms = json::array();
  for (const auto& t : c.terms) terms.push_back(to_sexpr(t, names5()));
  json chain = json::array();
  for (const auto& l : c.chain) chain.push_back({{"term", to_sexpr(l.term, names5())}, {"step", l.step}});
  json j{{"scheme", scheme_id(c.scheme)},
         {"n", c.n},
         {"terms", terms},
         {"verified", c.verified},
         {"chain", chain}};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

std::string assignment_text(std::span<const Elem> a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + ")";
}

}  // namespace

std::string report_to_json(const ConditionReport& r) { return report_json(r).dump(); }

ConditionReport report_from_json(std::string_view text) {
  return parsing("report", [&] {
    json j = json::parse(text);
    ConditionReport r;
    r.condition = j.at("condition").get<std::string>();
    const auto v = j.at("verdict").get<std::string>();
    if (v == "fails") r.verdict = Verdict::fails;
    else if (v == "holds-on-tested") r.verdict = Verdict::holds_on_tested;
    else throw Error(Errc::parse, "report: unknown verdict '" + v + "'");
    r.tested = j.at("tested").get<std::size_t>();
    r.capped = j.at("capped").get<std::size_t>();
    r.algebra = j.value("algebra", std::string());
    r.strategy = j.value("strategy", std::string());
    r.failures = j.value("failures", std::size_t{0});
    const std::size_t n = j.value("universe", std::size_t{0});
    for (const auto& c : j.at("counterexamples")) {
      Counterexample cx;
      for (const auto& [name, ps] : c.at("bindings").items()) {
        if (n == 0) throw Error(Errc::parse, "report: counterexamples need a universe size");
        cx.bindings.emplace_back(name, pairs_from_json(ps, n));
      }
      cx.witness = {c.at("witness").at(0).get<Elem>(), c.at("witness").at(1).get<Elem>()};
      r.counterexamples.push_back(std::move(cx));
    }
    return r;
  });
}

std::string suite_summary_to_json(const SuiteReport& s) {
  json red = json::array();
  for (const auto& r : s.reductions)
    red.push_back({{"description", r.description}, {"instances", r.instances}, {"mismatches", r.mismatches}});
  json j{{"suite", s.theorem},
         {"conditions", s.reports.size()},
         {"failed", s.any_failed()},
         {"capped", s.capped()},
         {"reductions", red},
         {"reductions_hold", s.reductions_hold()},
         {"noteworthy", s.noteworthy}};
  if (s.lemma)
    j["k_variants"] = {{"pure", s.lemma->pure_passes}, {"seeded", s.lemma->seeded_passes}};
  return j.dump();
}

std::string chain_to_json(const TermChain& c) { return chain_json(c).dump(); }

TermChain chain_from_json(std::string_view text) {
  return parsing("term chain", [&] {
    json j = json::parse(text);
    TermChain c;
    c.scheme = parse_scheme(j.at("scheme").get<std::string>());
    c.n = j.at("n").get<std::size_t>();
    for (const auto& t : j.at("terms")) c.terms.push_back(parse_sexpr(t.get<std::string>(), names5()));
    c.verified = j.at("verified").get<bool>();
    for (const auto& l : j.value("chain", json::array()))
      c.chain.push_back({parse_sexpr(l.at("term").get<std::string>(), names5()),
                         l.at("step").get<std::string>()});
    c.note = j.value("note", std::string());
    if (c.terms.size() != c.n + 1)
      throw Error(Errc::parse, "term chain: n does not match the number of terms");
    return c;
  });
}

std::string refutation_to_json(const Refutation& r) {
  return json{{"scheme", scheme_id(r.scheme)},
              {"refutes", r.condition},
              {"free_size", r.free_size},
              {"statement", r.statement}}
      .dump();
}

Refutation refutation_from_json(std::string_view text) {
  return parsing("refutation", [&] {
    json j = json::parse(text);
    Refutation r;
    r.scheme = parse_scheme(j.at("scheme").get<std::string>());
    r.condition = j.at("refutes").get<std::string>();
    r.free_size = j.at("free_size").get<std::size_t>();
    r.statement = j.value("statement", std::string());
    return r;
  });
}

TermsDocument parse_terms_document(std::string_view text) {
  return parsing("terms", [&] {
    json j = json::parse(text);
    TermsDocument d;
    const json* arr = &j;
    if (j.is_object()) {
      if (j.contains("scheme")) d.scheme = parse_scheme(j.at("scheme").get<std::string>());
      arr = &j.at("terms");
    }
    if (!arr->is_array()) throw Error(Errc::parse, "terms: expected an array of s-expressions");
    for (const auto& t : *arr) d.terms.push_back(parse_sexpr(t.get<std::string>(), names5()));
    return d;
  });
}

std::string scheme_verdict_to_json(Scheme s, const SchemeVerdict& v) {
  json lines = json::array();
  for (const auto& l : v.lines) {
    json e{{"identity", l.label}, {"holds", l.holds}};
    if (l.counterexample) e["at"] = *l.counterexample;
    lines.push_back(e);
  }
  return json{{"scheme", scheme_id(s)}, {"all_hold", v.all_hold}, {"lines", lines}}.dump();
}

std::string report_to_text(const ConditionReport& r) {
  std::ostringstream os;
  os << r.condition << "  " << verdict_name(r.verdict) << "  tested=" << r.tested
     << " failures=" << r.failures << " capped=" << r.capped << '\n';
  for (const auto& c : r.counterexamples) {
    os << "  counterexample";
    for (const auto& [name, rel] : c.bindings) os << ' ' << name << '=' << rel.str();
    os << " witness (" << c.witness.first << ',' << c.witness.second << ")\n";
  }
  return os.str();
}

std::string suite_summary_to_text(const SuiteReport& s) {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& r : s.reports) failed += r.verdict == Verdict::fails;
  os << "suite " << s.theorem << ": " << s.reports.size() << " conditions, " << failed
     << " failed, " << s.capped() << " capped instances\n";
  for (const auto& r : s.reductions)
    os << "  reduction " << r.description << ": " << r.instances << " instances, " << r.mismatches
       << " mismatches\n";
  for (const auto& n : s.noteworthy) os << "  noteworthy: " << n << '\n';
  if (s.lemma)
    os << "  K variants passing: pure=" << (s.lemma->pure_passes ? "yes" : "no")
       << " seeded=" << (s.lemma->seeded_passes ? "yes" : "no") << '\n';
  return os.str();
}

std::string chain_to_text(const TermChain& c) {
  std::ostringstream os;
  os << "scheme " << scheme_id(c.scheme) << "  n=" << c.n << "  "
     << (c.verified ? "verified" : "NOT verified") << '\n';
  for (std::size_t i = 0; i < c.terms.size(); ++i)
    os << "  f_" << i << " = " << to_sexpr(c.terms[i], names5()) << '\n';
  for (std::size_t j = 0; j < c.chain.size(); ++j)
    os << "  t_" << j << " = " << to_sexpr(c.chain[j].term, names5()) << "  [" << c.chain[j].step
       << "]\n";
  if (!c.note.empty()) os << "  note: " << c.note << '\n';
  return os.str();
}

std::string refutation_to_text(const Refutation& r) {
  return "refutation for " + std::string(scheme_id(r.scheme)) + ": " + r.statement + " (|F| = " +
         std::to_string(r.free_size) + "), so " + r.condition + " fails in V(A)\n";
}

std::string scheme_verdict_to_text(Scheme s, const SchemeVerdict& v) {
  std::ostringstream os;
  os << scheme_id(s) << ": " << (v.all_hold ? "all identities hold" : "some identities fail") << '\n';
  for (const auto& l : v.lines) {
    os << "  " << (l.holds ? "PASS " : "FAIL ") << l.label;
    if (l.counterexample) os << "  at (x,y,z)=" << assignment_text(*l.counterexample);
    os << '\n';
  }
  return os.str();
}

}  // namespace relcomm
