#include "relcomm/term.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "relcomm/error.hpp"

namespace relcomm {

Term Term::variable(int index) {
  if (index < 0) throw Error(Errc::invalid, "negative variable index");
  auto n = std::make_shared<Node>();
  n->var = index;
  return Term(std::move(n));
}

Term Term::apply(std::string op, std::vector<Term> children) {
  auto n = std::make_shared<Node>();
  n->op = std::move(op);
  n->children = std::move(children);
  return Term(std::move(n));
}

namespace {

template <class T, class F>
T memo_fold(const Term& root, F&& combine) {
  std::unordered_map<const void*, T> memo;
  auto rec = [&](auto&& self, const Term& t) -> T {
    if (auto it = memo.find(t.identity()); it != memo.end()) return it->second;
    std::vector<T> kids;
    kids.reserve(t.children().size());
    for (const auto& c : t.children()) kids.push_back(self(self, c));
    T v = combine(t, kids);
    memo.emplace(t.identity(), v);
    return v;
  };
  return rec(rec, root);
}

}  // namespace

std::size_t term_depth(const Term& t) {
  return memo_fold<std::size_t>(t, [](const Term& n, const std::vector<std::size_t>& kids) {
    if (n.is_variable()) return std::size_t{0};
    std::size_t d = 0;
    for (auto k : kids) d = std::max(d, k);
    return d + 1;
  });
}

int max_variable(const Term& t) {
  return memo_fold<int>(t, [](const Term& n, const std::vector<int>& kids) {
    int m = n.is_variable() ? n.variable_index() : -1;
    for (int k : kids) m = std::max(m, k);
    return m;
  });
}

std::size_t tree_size(const Term& t, std::size_t limit) {
  return memo_fold<std::size_t>(t, [limit](const Term&, const std::vector<std::size_t>& kids) {
    std::size_t s = 1;
    for (auto k : kids) s = (k >= limit - s) ? limit : s + k;
    return std::min(s, limit);
  });
}

namespace {

std::size_t resolve(const FiniteAlgebra& alg, const Term& t) {
  auto idx = alg.find(t.op());
  if (!idx) throw Error(Errc::unbound, "unresolved operation '" + t.op() + "'");
  if (static_cast<std::size_t>(alg.operation(*idx).arity) != t.children().size())
    throw Error(Errc::arity, "operation '" + t.op() + "' applied to " +
                                 std::to_string(t.children().size()) + " arguments, arity is " +
                                 std::to_string(alg.operation(*idx).arity));
  return *idx;
}

}  // namespace

Elem eval_term(const FiniteAlgebra& alg, const Term& t, std::span<const Elem> env) {
  std::unordered_map<const void*, Elem> memo;
  std::vector<Elem> args;
  auto rec = [&](auto&& self, const Term& n) -> Elem {
    if (auto it = memo.find(n.identity()); it != memo.end()) return it->second;
    Elem v;
    if (n.is_variable()) {
      if (static_cast<std::size_t>(n.variable_index()) >= env.size())
        throw Error(Errc::unbound, "no binding for variable " + std::to_string(n.variable_index()));
      v = env[static_cast<std::size_t>(n.variable_index())];
    } else {
      std::size_t op = resolve(alg, n);
      std::vector<Elem> a;
      a.reserve(n.children().size());
      for (const auto& c : n.children()) a.push_back(self(self, c));
      v = alg.apply(op, a);
    }
    memo.emplace(n.identity(), v);
    return v;
  };
  return rec(rec, t);
}

std::vector<Elem> eval_table(const FiniteAlgebra& alg, const Term& t, std::size_t varcount) {
  const std::size_t n = alg.size();
  auto rows_opt = checked_pow(n, varcount, std::size_t{1} << 28);
  if (!rows_opt) throw Error(Errc::invalid, "too many assignments to tabulate");
  const std::size_t rows = *rows_opt;

  std::unordered_map<const void*, std::vector<Elem>> memo;
  auto rec = [&](auto&& self, const Term& node) -> const std::vector<Elem>& {
    if (auto it = memo.find(node.identity()); it != memo.end()) return it->second;
    std::vector<Elem> out(rows);
    if (node.is_variable()) {
      auto v = static_cast<std::size_t>(node.variable_index());
      if (v >= varcount)
        throw Error(Errc::unbound, "variable " + std::to_string(v) + " outside the " +
                                       std::to_string(varcount) + " declared variables");
      std::size_t stride = *checked_pow(n, varcount - 1 - v);
      for (std::size_t a = 0; a < rows; ++a) out[a] = static_cast<Elem>((a / stride) % n);
    } else {
      std::size_t op = resolve(alg, node);
      const auto& table = alg.operation(op).table;
      auto st = alg.strides(op);
      std::vector<const std::vector<Elem>*> kids;
      for (const auto& c : node.children()) kids.push_back(&self(self, c));
      for (std::size_t a = 0; a < rows; ++a) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < kids.size(); ++i) idx += (*kids[i])[a] * st[i];
        out[a] = table[idx];
      }
    }
    return memo.emplace(node.identity(), std::move(out)).first->second;
  };
  return rec(rec, t);
}

Term substitute(const Term& t, std::span<const Term> replacement) {
  std::unordered_map<const void*, Term> memo;
  auto rec = [&](auto&& self, const Term& n) -> Term {
    if (auto it = memo.find(n.identity()); it != memo.end()) return it->second;
    Term out = n;
    if (n.is_variable()) {
      auto v = static_cast<std::size_t>(n.variable_index());
      if (v >= replacement.size())
        throw Error(Errc::unbound, "substitution has no image for variable " + std::to_string(v));
      out = replacement[v];
    } else {
      std::vector<Term> kids;
      kids.reserve(n.children().size());
      for (const auto& c : n.children()) kids.push_back(self(self, c));
      out = Term::apply(n.op(), std::move(kids));
    }
    memo.emplace(n.identity(), out);
    return out;
  };
  return rec(rec, t);
}

IdentityVerdict check_identity(const FiniteAlgebra& alg, const Term& lhs, const Term& rhs,
                               std::size_t varcount) {
  auto l = eval_table(alg, lhs, varcount);
  auto r = eval_table(alg, rhs, varcount);
  IdentityVerdict v;
  for (std::size_t a = 0; a < l.size(); ++a) {
    if (l[a] == r[a]) continue;
    v.holds = false;
    std::vector<Elem> env(varcount);
    std::size_t rest = a;
    for (std::size_t i = varcount; i-- > 0;) {
      env[i] = static_cast<Elem>(rest % alg.size());
      rest /= alg.size();
    }
    v.counterexample = std::move(env);
    break;
  }
  return v;
}

std::vector<std::string> variable_names(std::size_t count) {
  static const char* base[] = {"x", "y", "z", "w", "u"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(i < 5 ? std::string(base[i]) : "v" + std::to_string(i));
  return out;
}

std::string to_sexpr(const Term& t, std::span<const std::string> names) {
  std::string out;
  auto rec = [&](auto&& self, const Term& n) -> void {
    if (n.is_variable()) {
      auto v = static_cast<std::size_t>(n.variable_index());
      out += v < names.size() ? names[v] : "v" + std::to_string(v);
      return;
    }
    out += '(';
    out += n.op();
    for (const auto& c : n.children()) {
      out += ' ';
      self(self, c);
    }
    out += ')';
  };
  rec(rec, t);
  return out;
}

namespace {

class SexprParser {
 public:
  SexprParser(std::string_view text, std::span<const std::string> names)
      : text_(text), names_(names) {}

  Term parse() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::parse, "term syntax error at offset " + std::to_string(pos_) + ": " + msg);
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  std::string atom() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }
  Term term() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == '(') {
      ++pos_;
      std::string op = atom();
      std::vector<Term> kids;
      for (;;) {
        skip_ws();
        if (pos_ >= text_.size()) fail("unclosed '('");
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        kids.push_back(term());
      }
      return Term::apply(std::move(op), std::move(kids));
    }
    if (text_[pos_] == ')') fail("unexpected ')'");
    std::string name = atom();
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) fail("unknown variable '" + name + "'");
    return Term::variable(static_cast<int>(it - names_.begin()));
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_sexpr(std::string_view text, std::span<const std::string> names) {
  return SexprParser(text, names).parse();
}

}  // namespace relcomm
