#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "relcomm/relcomm.h"

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kCapped = 3, kInternal = 4 };

struct Config {
  std::string algebra, suite, cond, scheme, terms, variant = "one", k_variant = "pure",
                                                   circ = "generated-tolerance", format = "text",
                                                   n_list = "2,3";
  std::vector<std::string> rels;
  std::size_t samples = 500, max_elements = 5'000'000, tuple_limit = 100'000, max_n = 4,
              max_depth = 3;
  std::uint64_t seed = 0;
};

struct AlgebraDeleter {
  void operator()(relcomm_algebra* a) const { relcomm_algebra_free(a); }
};
struct RelationDeleter {
  void operator()(relcomm_relation* r) const { relcomm_relation_free(r); }
};
using AlgebraPtr = std::unique_ptr<relcomm_algebra, AlgebraDeleter>;
using RelationPtr = std::unique_ptr<relcomm_relation, RelationDeleter>;

struct Failure {
  int code;
  std::string message;
};

int status_exit(relcomm_status s) {
  switch (s) {
    case RELCOMM_OK: return kOk;
    case RELCOMM_E_CAPPED: return kCapped;
    case RELCOMM_E_INTERNAL: return kInternal;
    default: return kUsage;
  }
}

void check(relcomm_status s) {
  if (s != RELCOMM_OK) throw Failure{status_exit(s), relcomm_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kUsage, "cannot read '" + path + "'"};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Takes ownership of a string returned by the library and prints it.
void print_owned(char* s) {
  std::fputs(s, stdout);
  relcomm_string_free(s);
}

relcomm_format format_of(const Config& c) {
  if (c.format == "json") return RELCOMM_FORMAT_JSON;
  if (c.format == "text") return RELCOMM_FORMAT_TEXT;
  throw Failure{kUsage, "--format must be text or json"};
}

AlgebraPtr load_algebra(const Config& c) {
  if (c.algebra.empty()) throw Failure{kUsage, "--algebra is required"};
  std::string text = read_file(c.algebra);
  relcomm_algebra* a = nullptr;
  check(relcomm_algebra_parse(text.c_str(), &a));
  return AlgebraPtr(a);
}

relcomm_caps caps_of(const Config& c) {
  relcomm_caps caps;
  relcomm_caps_init(&caps);
  caps.max_elements = c.max_elements;
  return caps;
}

std::vector<int> parse_n_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Failure{kUsage, "--n expects a comma-separated list of positive integers"};
    }
  }
  if (out.empty() || out.size() > RELCOMM_MAX_N_LIST)
    throw Failure{kUsage, "--n expects 1 to " + std::to_string(RELCOMM_MAX_N_LIST) + " values"};
  return out;
}

int cmd_info(const Config& c) {
  auto a = load_algebra(c);
  char* out = nullptr;
  check(relcomm_algebra_info(a.get(), format_of(c), &out));
  print_owned(out);
  return kOk;
}

int cmd_check(const Config& c) {
  if (c.suite.empty() == c.cond.empty()) throw Failure{kUsage, "give exactly one of --suite or --cond"};
  const relcomm_format fmt = format_of(c);
  auto a = load_algebra(c);
  relcomm_strategy st;
  relcomm_strategy_init(&st);
  st.seed = c.seed;
  st.relation_samples = c.samples;
  st.tuple_samples = c.samples;
  st.tuple_limit = c.tuple_limit;
  auto ns = parse_n_list(c.n_list);
  st.n_count = ns.size();
  for (std::size_t i = 0; i < ns.size(); ++i) st.n_list[i] = ns[i];
  if (c.k_variant == "pure") st.k_variant = 0;
  else if (c.k_variant == "seeded") st.k_variant = 1;
  else throw Failure{kUsage, "--k-variant must be pure or seeded"};
  if (c.circ == "generated-tolerance") st.circ = 0;
  else if (c.circ == "symmetric-star") st.circ = 1;
  else throw Failure{kUsage, "--circ must be generated-tolerance or symmetric-star"};
  st.caps = caps_of(c);

  const bool suite = !c.suite.empty();
  char* out = nullptr;
  relcomm_check_summary sum{};
  check(relcomm_check(a.get(), suite ? c.suite.c_str() : c.cond.c_str(), suite, &st, fmt, &out, &sum));
  print_owned(out);
  if (sum.failed) return kFailed;
  if (sum.capped) return kCapped;
  return kOk;
}

int cmd_commutator(const Config& c) {
  if (c.rels.size() != 2) throw Failure{kUsage, "commutator needs two --rel literals"};
  relcomm_commutator_variant v;
  if (c.variant == "one") v = RELCOMM_COMMUTATOR_ONE;
  else if (c.variant == "cg") v = RELCOMM_COMMUTATOR_CG;
  else throw Failure{kUsage, "--variant must be one or cg"};
  const relcomm_format fmt = format_of(c);
  auto a = load_algebra(c);
  std::vector<RelationPtr> rs;
  for (const auto& lit : c.rels) {
    relcomm_relation* r = nullptr;
    check(relcomm_relation_parse(a.get(), lit.c_str(), &r));
    rs.emplace_back(r);
  }
  relcomm_caps caps = caps_of(c);
  relcomm_relation* res = nullptr;
  std::size_t m = 0;
  check(relcomm_commutator(a.get(), rs[0].get(), rs[1].get(), v, &caps, &m, &res));
  RelationPtr result(res);
  char* str = nullptr;
  check(relcomm_relation_to_string(result.get(), &str));
  std::string rel = str;
  relcomm_string_free(str);
  if (fmt == RELCOMM_FORMAT_JSON) {
    std::string pairs = "[";
    const auto n = static_cast<std::uint32_t>(relcomm_algebra_size(a.get()));
    bool first = true;
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = 0; y < n; ++y)
        if (relcomm_relation_contains(result.get(), x, y)) {
          pairs += (first ? "[" : ",[") + std::to_string(x) + "," + std::to_string(y) + "]";
          first = false;
        }
    pairs += "]";
    std::printf("{\"variant\":\"%s\",\"m_size\":%zu,\"pairs\":%s}\n", c.variant.c_str(), m, pairs.c_str());
  } else {
    std::printf("|M(R,S)| = %zu\n%s\n", m, rel.c_str());
  }
  return kOk;
}

int outcome_exit(relcomm_outcome o) {
  switch (o) {
    case RELCOMM_OUTCOME_CHAIN:
    case RELCOMM_OUTCOME_REFUTED: return kOk;
    case RELCOMM_OUTCOME_EXHAUSTED: return kFailed;
    case RELCOMM_OUTCOME_INCONCLUSIVE: return kCapped;
  }
  return kInternal;
}

int cmd_extract(const Config& c) {
  if (c.scheme.empty()) throw Failure{kUsage, "--scheme is required"};
  const relcomm_format fmt = format_of(c);
  auto a = load_algebra(c);
  relcomm_caps caps = caps_of(c);
  char* out = nullptr;
  relcomm_outcome o{};
  check(relcomm_extract(a.get(), c.scheme.c_str(), &caps, fmt, &out, &o));
  print_owned(out);
  return outcome_exit(o);
}

int cmd_verify(const Config& c) {
  if (c.terms.empty()) throw Failure{kUsage, "--terms is required"};
  const relcomm_format fmt = format_of(c);
  auto a = load_algebra(c);
  std::string doc = read_file(c.terms);
  char* out = nullptr;
  int ok = 0;
  check(relcomm_verify(a.get(), c.scheme.empty() ? nullptr : c.scheme.c_str(), doc.c_str(), fmt, &out, &ok));
  print_owned(out);
  return ok ? kOk : kFailed;
}

int cmd_search(const Config& c) {
  if (c.scheme.empty()) throw Failure{kUsage, "--scheme is required"};
  const relcomm_format fmt = format_of(c);
  auto a = load_algebra(c);
  relcomm_caps caps = caps_of(c);
  char* out = nullptr;
  relcomm_outcome o{};
  check(relcomm_search(a.get(), c.scheme.c_str(), c.max_n, c.max_depth, &caps, fmt, &out, &o));
  print_owned(out);
  return outcome_exit(o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relational commutators, condition checking and Mal'cev term extraction on finite algebras"};
  app.require_subcommand(1);
  Config cfg;

  auto add_algebra = [&](CLI::App* s) {
    s->add_option("--algebra", cfg.algebra, "Algebra JSON file")->required();
  };
  auto add_format = [&](CLI::App* s) {
    s->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_caps = [&](CLI::App* s) {
    s->add_option("--max-elements", cfg.max_elements, "Closure element cap");
  };

  auto* info = app.add_subcommand("info", "Describe an algebra");
  add_algebra(info);
  add_format(info);

  auto* chk = app.add_subcommand("check", "Check a condition or a whole suite");
  add_algebra(chk);
  add_format(chk);
  add_caps(chk);
  chk->add_option("--suite", cfg.suite, "x32 | x22 | x32var | x1c");
  chk->add_option("--cond", cfg.cond, "Condition id, e.g. x32.iii or x32.viii[n=4]");
  chk->add_option("--n", cfg.n_list, "Comma-separated n values for the (viii) family");
  chk->add_option("--samples", cfg.samples, "Sampled relations / binding tuples");
  chk->add_option("--tuple-limit", cfg.tuple_limit, "Exhaustive binding tuples up to this count");
  chk->add_option("--seed", cfg.seed, "Sampling seed");
  chk->add_option("--k-variant", cfg.k_variant, "pure | seeded");
  chk->add_option("--circ", cfg.circ, "Reading of r°: generated-tolerance | symmetric-star");

  auto* comm = app.add_subcommand("commutator", "Compute [R,S|1] or its congruence variant");
  add_algebra(comm);
  add_format(comm);
  add_caps(comm);
  comm->add_option("--rel", cfg.rels, "Relation literal (give twice: R then S)");
  comm->add_option("--variant", cfg.variant, "one | cg");

  auto* ext = app.add_subcommand("extract", "Extract a term chain from the free algebra");
  add_algebra(ext);
  add_format(ext);
  add_caps(ext);
  ext->add_option("--scheme", cfg.scheme, "x32 | x22");

  auto* ver = app.add_subcommand("verify", "Verify a term system against a scheme");
  add_algebra(ver);
  add_format(ver);
  ver->add_option("--scheme", cfg.scheme, "x32.vii | x22.vii | x32var.vii'");
  ver->add_option("--terms", cfg.terms, "Term chain JSON or array of s-expressions");

  auto* srch = app.add_subcommand("search", "Bounded search for a term system");
  add_algebra(srch);
  add_format(srch);
  add_caps(srch);
  srch->add_option("--scheme", cfg.scheme, "x32.vii | x22.vii | x32var.vii'");
  srch->add_option("--max-n", cfg.max_n, "Largest n tried");
  srch->add_option("--max-depth", cfg.max_depth, "Term depth bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*info) return cmd_info(cfg);
    if (*chk) return cmd_check(cfg);
    if (*comm) return cmd_commutator(cfg);
    if (*ext) return cmd_extract(cfg);
    if (*ver) return cmd_verify(cfg);
    if (*srch) return cmd_search(cfg);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  }
  return kUsage;
}
