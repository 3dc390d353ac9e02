#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "relcomm/binrel.hpp"
#include "relcomm/closure.hpp"
#include "relcomm/commutator.hpp"
#include "relcomm/relcalc.hpp"

namespace relcomm {

/// Relation expression tree.
///
/// Surface syntax, loosest to tightest binding:
///   a | b, a v b      union, congruence join (left associative)
///   a & b             intersection
///   a ; b             composition, a then b
///   a-  a*  a°        converse, transitive closure, generated tolerance
/// plus `id`, `full`, parentheses and the forms Cg(e), C1(e1, e2),
/// CgC1(e1, e2) and K(e1, e2; e3). Inside K the second argument may not
/// contain an unparenthesized `;`.
struct RelExpr {
  enum class Op {
    var, identity, full,
    converse, star, tolerance,
    compose, intersect, unite, join,
    cg, k, c1, cgc1,
  };

  Op op = Op::identity;
  std::string name;  // variables only
  std::vector<RelExpr> args;

  static RelExpr variable(std::string name) { return {Op::var, std::move(name), {}}; }
  static RelExpr identity() { return {Op::identity, {}, {}}; }
  static RelExpr full() { return {Op::full, {}, {}}; }
  static RelExpr unary(Op op, RelExpr a) { return {op, {}, {std::move(a)}}; }
  static RelExpr binary(Op op, RelExpr a, RelExpr b) { return {op, {}, {std::move(a), std::move(b)}}; }
  static RelExpr k_op(RelExpr r, RelExpr s, RelExpr t) {
    return {Op::k, {}, {std::move(r), std::move(s), std::move(t)}};
  }

  bool operator==(const RelExpr&) const = default;
};

RelExpr parse_relexpr(std::string_view text);
std::string to_string(const RelExpr& e);
std::set<std::string> free_variables(const RelExpr& e);

/// Replaces every node with op `from` by the same node with op `to`
/// (both must have the same arity).
RelExpr replace_op(const RelExpr& e, RelExpr::Op from, RelExpr::Op to);

using Bindings = std::map<std::string, BinRel, std::less<>>;
using DeclaredKinds = std::map<std::string, RelKind, std::less<>>;

/// How `r°` is realized: the tolerance generated by r, or star(r | r-).
enum class CircReading { generated_tolerance, symmetric_star };

const char* circ_reading_name(CircReading c) noexcept;
CircReading parse_circ_reading(std::string_view s);

struct EvalOptions {
  KVariant k_variant = KVariant::pure;
  CircReading circ = CircReading::generated_tolerance;
  Caps caps;
};

/// Evaluates expressions over one algebra, caching M(r,s) and generated
/// tolerances across calls. Not thread-safe; use one per thread.
class RelEvaluator {
 public:
  explicit RelEvaluator(const FiniteAlgebra& alg, EvalOptions opts = {});

  const FiniteAlgebra& algebra() const noexcept { return *alg_; }
  const EvalOptions& options() const noexcept { return opts_; }

  BinRel eval(const RelExpr& e, const Bindings& b);
  const QuadSet& matrices(const BinRel& r, const BinRel& s);
  const BinRel& tolerance(const BinRel& r);

 private:
  const FiniteAlgebra* alg_;
  EvalOptions opts_;
  std::map<std::pair<BinRel, BinRel>, QuadSet> m_cache_;
  std::map<BinRel, BinRel> tol_cache_;
};

/// One-shot evaluation. When `declared` is given, every bound relation must
/// satisfy its declared kind.
BinRel eval_relexpr(const FiniteAlgebra& alg, const RelExpr& e, const Bindings& b,
                    const EvalOptions& opts = {}, const DeclaredKinds* declared = nullptr);

}  // namespace relcomm
