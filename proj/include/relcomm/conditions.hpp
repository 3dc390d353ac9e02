#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relcomm/relexpr.hpp"

namespace relcomm {

struct Quantifier {
  std::string name;
  RelKind kind;
};

enum class Shape { inclusion, equality };

/// A numbered condition: for all bindings of the quantified relations,
/// lhs is included in (or equal to) rhs.
struct Condition {
  std::string id;       // e.g. "x32.iii", "x1c.ii[n=3]"
  std::string base_id;  // id without the arity suffix
  std::string theorem;  // x32 | x22 | x32var | x1c
  std::vector<Quantifier> quantifiers;
  Shape shape = Shape::inclusion;
  RelExpr lhs;
  RelExpr rhs;
  std::optional<int> arity;
};

std::span<const std::string_view> theorem_ids();
/// Every condition of a suite; arity families are expanded over n_list.
std::vector<Condition> catalog(std::string_view theorem, std::span<const int> n_list);
/// Resolves "x32.iii", "x32.viii" (expanded over n_list) or "x32.viii[n=4]".
/// Throws Error(unknown_id).
std::vector<Condition> resolve_conditions(std::string_view id, std::span<const int> n_list);

struct Strategy {
  EnumerationBudget enumeration;
  /// Binding tuples are enumerated exhaustively up to this many, sampled beyond.
  std::size_t tuple_limit = 100'000;
  std::size_t tuple_samples = 500;
  std::vector<int> n_list{2, 3};
  KVariant k_variant = KVariant::pure;
  CircReading circ = CircReading::generated_tolerance;
  Caps caps;
  std::size_t max_counterexamples = 10;

  std::string describe() const;
};

enum class Verdict { holds_on_tested, fails };
const char* verdict_name(Verdict v) noexcept;

struct Counterexample {
  std::vector<std::pair<std::string, BinRel>> bindings;
  Pair witness;
};

struct ConditionReport {
  std::string condition;
  std::string algebra;
  std::string strategy;
  Verdict verdict = Verdict::holds_on_tested;
  std::vector<Counterexample> counterexamples;  // at most max_counterexamples
  std::size_t tested = 0;
  std::size_t failures = 0;
  std::size_t capped = 0;
};

ConditionReport check_condition(const FiniteAlgebra& alg, const Condition& cond,
                                const Strategy& strategy);

/// Re-evaluates a counterexample from scratch: witness in lhs and not in rhs
/// (or in the symmetric difference, for equalities).
bool recheck_counterexample(const FiniteAlgebra& alg, const Condition& cond,
                            const Counterexample& cx, KVariant variant, const Caps& caps = {},
                            CircReading circ = CircReading::generated_tolerance);

struct LemmaDifferential {
  bool pure_passes = false;
  bool seeded_passes = false;
  std::vector<ConditionReport> pure_reports;
  std::vector<ConditionReport> seeded_reports;
};

/// Runs the x1c conditions under both K variants.
LemmaDifferential lemma_differential(const FiniteAlgebra& alg, const Strategy& strategy);

struct Reduction {
  std::string description;
  std::size_t instances = 0;
  std::size_t mismatches = 0;
};

struct SuiteReport {
  std::string theorem;
  std::vector<ConditionReport> reports;
  std::vector<Reduction> reductions;
  /// Verdict splits inside an equivalence family on this one algebra.
  std::vector<std::string> noteworthy;
  std::optional<LemmaDifferential> lemma;

  bool any_failed() const;
  std::size_t capped() const;
  bool reductions_hold() const;
};

SuiteReport run_suite(const FiniteAlgebra& alg, std::string_view theorem,
                      const Strategy& strategy);

}  // namespace relcomm
