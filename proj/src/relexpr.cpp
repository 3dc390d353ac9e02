#include "relcomm/relexpr.hpp"

#include <cctype>

#include "relcomm/error.hpp"

namespace relcomm {

namespace {

enum class Tok { ident, lparen, rparen, comma, semi, amp, bar, minus, stargl, degree, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::ident, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (c == 0xC2 && i + 1 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0xB0) {
      out.push_back({Tok::degree, "°", i});
      i += 2;
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      case ',': k = Tok::comma; break;
      case ';': k = Tok::semi; break;
      case '&': k = Tok::amp; break;
      case '|': k = Tok::bar; break;
      case '-': k = Tok::minus; break;
      case '*': k = Tok::stargl; break;
      default:
        throw Error(Errc::parse, "syntax error at offset " + std::to_string(i) +
                                     ": unexpected character '" + std::string(1, s[i]) + "'");
    }
    out.push_back({k, std::string(1, s[i]), i});
    ++i;
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  RelExpr parse() {
    RelExpr e = union_level(false);
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool at_join() const { return peek().kind == Tok::ident && peek().text == "v"; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::parse, "syntax error at offset " + std::to_string(peek().pos) + ": " + msg);
  }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    ++pos_;
  }

  RelExpr union_level(bool no_semi) {
    RelExpr e = intersect_level(no_semi);
    while (peek().kind == Tok::bar || at_join()) {
      auto op = peek().kind == Tok::bar ? RelExpr::Op::unite : RelExpr::Op::join;
      ++pos_;
      e = RelExpr::binary(op, std::move(e), intersect_level(no_semi));
    }
    return e;
  }

  RelExpr intersect_level(bool no_semi) {
    RelExpr e = compose_level(no_semi);
    while (peek().kind == Tok::amp) {
      ++pos_;
      e = RelExpr::binary(RelExpr::Op::intersect, std::move(e), compose_level(no_semi));
    }
    return e;
  }

  RelExpr compose_level(bool no_semi) {
    RelExpr e = postfix_level();
    while (!no_semi && peek().kind == Tok::semi) {
      ++pos_;
      e = RelExpr::binary(RelExpr::Op::compose, std::move(e), postfix_level());
    }
    return e;
  }

  RelExpr postfix_level() {
    RelExpr e = primary();
    for (;;) {
      switch (peek().kind) {
        case Tok::minus: e = RelExpr::unary(RelExpr::Op::converse, std::move(e)); break;
        case Tok::stargl: e = RelExpr::unary(RelExpr::Op::star, std::move(e)); break;
        case Tok::degree: e = RelExpr::unary(RelExpr::Op::tolerance, std::move(e)); break;
        default: return e;
      }
      ++pos_;
    }
  }

  RelExpr primary() {
    const Token& t = peek();
    if (t.kind == Tok::lparen) {
      ++pos_;
      RelExpr e = union_level(false);
      expect(Tok::rparen, "')'");
      return e;
    }
    if (t.kind != Tok::ident) fail(t.kind == Tok::end ? "unexpected end of input"
                                                      : "unexpected '" + t.text + "'");
    std::string name = next().text;
    bool call = peek().kind == Tok::lparen;
    if (name == "id") return RelExpr::identity();
    if (name == "full") return RelExpr::full();
    if (name == "v") {
      --pos_;
      fail("'v' is the join operator and cannot name a relation");
    }
    if (call && name == "Cg") {
      ++pos_;
      RelExpr a = union_level(false);
      expect(Tok::rparen, "')'");
      return RelExpr::unary(RelExpr::Op::cg, std::move(a));
    }
    if (call && (name == "C1" || name == "CgC1")) {
      ++pos_;
      RelExpr a = union_level(false);
      expect(Tok::comma, "','");
      RelExpr b = union_level(false);
      expect(Tok::rparen, "')'");
      return RelExpr::binary(name == "C1" ? RelExpr::Op::c1 : RelExpr::Op::cgc1, std::move(a),
                             std::move(b));
    }
    if (call && name == "K") {
      ++pos_;
      RelExpr a = union_level(false);
      expect(Tok::comma, "','");
      RelExpr b = union_level(true);
      expect(Tok::semi, "';'");
      RelExpr c = union_level(false);
      expect(Tok::rparen, "')'");
      return RelExpr::k_op(std::move(a), std::move(b), std::move(c));
    }
    return RelExpr::variable(std::move(name));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

int precedence(RelExpr::Op op) {
  switch (op) {
    case RelExpr::Op::unite:
    case RelExpr::Op::join: return 1;
    case RelExpr::Op::intersect: return 2;
    case RelExpr::Op::compose: return 3;
    case RelExpr::Op::converse:
    case RelExpr::Op::star:
    case RelExpr::Op::tolerance: return 4;
    default: return 5;
  }
}

void print(const RelExpr& e, int ctx, bool no_semi, std::string& out) {
  using Op = RelExpr::Op;
  const int p = precedence(e.op);
  const bool paren = p < ctx || (no_semi && e.op == Op::compose);
  if (paren) {
    out += '(';
    no_semi = false;
  }
  switch (e.op) {
    case Op::var: out += e.name; break;
    case Op::identity: out += "id"; break;
    case Op::full: out += "full"; break;
    case Op::converse:
    case Op::star:
    case Op::tolerance:
      print(e.args[0], 4, no_semi, out);
      out += e.op == Op::converse ? "-" : e.op == Op::star ? "*" : "°";
      break;
    case Op::compose:
    case Op::intersect:
    case Op::unite:
    case Op::join: {
      const char* sym = e.op == Op::compose ? " ; " : e.op == Op::intersect ? " & "
                        : e.op == Op::unite ? " | " : " v ";
      print(e.args[0], p, no_semi, out);
      out += sym;
      print(e.args[1], p + 1, no_semi, out);
      break;
    }
    case Op::cg:
      out += "Cg(";
      print(e.args[0], 0, false, out);
      out += ')';
      break;
    case Op::c1:
    case Op::cgc1:
      out += e.op == Op::c1 ? "C1(" : "CgC1(";
      print(e.args[0], 0, false, out);
      out += ", ";
      print(e.args[1], 0, false, out);
      out += ')';
      break;
    case Op::k:
      out += "K(";
      print(e.args[0], 0, false, out);
      out += ", ";
      print(e.args[1], 0, true, out);
      out += "; ";
      print(e.args[2], 0, false, out);
      out += ')';
      break;
  }
  if (paren) out += ')';
}

}  // namespace

RelExpr parse_relexpr(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const RelExpr& e) {
  std::string out;
  print(e, 0, false, out);
  return out;
}

std::set<std::string> free_variables(const RelExpr& e) {
  std::set<std::string> out;
  auto rec = [&](auto&& self, const RelExpr& n) -> void {
    if (n.op == RelExpr::Op::var) out.insert(n.name);
    for (const auto& a : n.args) self(self, a);
  };
  rec(rec, e);
  return out;
}

RelExpr replace_op(const RelExpr& e, RelExpr::Op from, RelExpr::Op to) {
  RelExpr out = e;
  if (out.op == from) out.op = to;
  for (auto& a : out.args) a = replace_op(a, from, to);
  return out;
}

RelEvaluator::RelEvaluator(const FiniteAlgebra& alg, EvalOptions opts)
    : alg_(&alg), opts_(std::move(opts)) {}

const QuadSet& RelEvaluator::matrices(const BinRel& r, const BinRel& s) {
  auto key = std::make_pair(r, s);
  if (auto it = m_cache_.find(key); it != m_cache_.end()) return it->second;
  if (m_cache_.size() > 4096) m_cache_.clear();
  return m_cache_.emplace(std::move(key), relcomm::matrices(*alg_, r, s, opts_.caps)).first->second;
}

const BinRel& RelEvaluator::tolerance(const BinRel& r) {
  if (auto it = tol_cache_.find(r); it != tol_cache_.end()) return it->second;
  if (tol_cache_.size() > 4096) tol_cache_.clear();
  if (opts_.circ == CircReading::symmetric_star)
    return tol_cache_.emplace(r, star(unite(r, converse(r)))).first->second;
  auto pairs = r.pairs();
  return tol_cache_.emplace(r, generated_relation(*alg_, pairs, RelKind::tolerance, opts_.caps))
      .first->second;
}

const char* circ_reading_name(CircReading c) noexcept {
  return c == CircReading::symmetric_star ? "symmetric-star" : "generated-tolerance";
}

CircReading parse_circ_reading(std::string_view s) {
  if (s == "generated-tolerance" || s == "tolerance") return CircReading::generated_tolerance;
  if (s == "symmetric-star") return CircReading::symmetric_star;
  throw Error(Errc::invalid, "unknown reading of r°: '" + std::string(s) + "'");
}

BinRel RelEvaluator::eval(const RelExpr& e, const Bindings& b) {
  using Op = RelExpr::Op;
  const std::size_t n = alg_->size();
  switch (e.op) {
    case Op::var: {
      auto it = b.find(e.name);
      if (it == b.end()) throw Error(Errc::unbound, "unbound relation variable '" + e.name + "'");
      if (it->second.universe() != n)
        throw Error(Errc::universe_mismatch, "binding '" + e.name + "' has the wrong universe");
      return it->second;
    }
    case Op::identity: return BinRel::diagonal(n);
    case Op::full: return BinRel::full(n);
    case Op::converse: return converse(eval(e.args[0], b));
    case Op::star: return star(eval(e.args[0], b));
    case Op::tolerance: return tolerance(eval(e.args[0], b));
    case Op::compose: return compose(eval(e.args[0], b), eval(e.args[1], b));
    case Op::intersect: return intersect(eval(e.args[0], b), eval(e.args[1], b));
    case Op::unite: return unite(eval(e.args[0], b), eval(e.args[1], b));
    case Op::join: return join(eval(e.args[0], b), eval(e.args[1], b));
    case Op::cg: {
      auto pairs = eval(e.args[0], b).pairs();
      return generated_relation(*alg_, pairs, RelKind::congruence, opts_.caps);
    }
    case Op::c1:
    case Op::cgc1: {
      BinRel r = eval(e.args[0], b);
      BinRel s = eval(e.args[1], b);
      BinRel rows = bottom_rows(matrices(r, s), BinRel::diagonal(n));
      if (e.op == Op::c1) return star(rows);
      auto pairs = rows.pairs();
      return generated_relation(*alg_, pairs, RelKind::congruence, opts_.caps);
    }
    case Op::k: {
      BinRel r = eval(e.args[0], b);
      BinRel s = eval(e.args[1], b);
      BinRel t = eval(e.args[2], b);
      return k_operator(matrices(r, s), t, opts_.k_variant);
    }
  }
  throw Error(Errc::invalid, "malformed expression");
}

BinRel eval_relexpr(const FiniteAlgebra& alg, const RelExpr& e, const Bindings& b,
                    const EvalOptions& opts, const DeclaredKinds* declared) {
  if (declared) {
    for (const auto& [name, kind] : *declared) {
      auto it = b.find(name);
      if (it == b.end()) continue;
      if (!satisfies_kind(alg, it->second, kind))
        throw Error(Errc::kind_violation,
                    "binding '" + name + "' is not a " + kind_name(kind) + " relation");
    }
  }
  RelEvaluator ev(alg, opts);
  return ev.eval(e, b);
}

}  // namespace relcomm
