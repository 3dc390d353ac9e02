#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relcomm/algebra.hpp"

namespace relcomm {

/// Immutable term tree over named operations and indexed variables.
/// Subterms are shared, so a Term is really a DAG; every traversal
/// below memoizes on node identity.
class Term {
 public:
  static Term variable(int index);
  static Term apply(std::string op, std::vector<Term> children);

  bool is_variable() const noexcept { return node_->var >= 0; }
  int variable_index() const noexcept { return node_->var; }
  const std::string& op() const noexcept { return node_->op; }
  std::span<const Term> children() const noexcept { return node_->children; }
  const void* identity() const noexcept { return node_.get(); }

 private:
  struct Node {
    int var = -1;
    std::string op;
    std::vector<Term> children;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Variables have depth 0; an application is one deeper than its deepest child.
std::size_t term_depth(const Term& t);
/// Largest variable index, -1 for ground terms.
int max_variable(const Term& t);
/// Number of nodes in the expanded tree, saturating at `limit`.
std::size_t tree_size(const Term& t, std::size_t limit = SIZE_MAX);

Elem eval_term(const FiniteAlgebra& alg, const Term& t, std::span<const Elem> env);

/// Values of `t` on all n^varcount assignments, assignment a = sum env_i n^(varcount-1-i).
std::vector<Elem> eval_table(const FiniteAlgebra& alg, const Term& t, std::size_t varcount);

/// Replaces variable i by replacement[i].
Term substitute(const Term& t, std::span<const Term> replacement);

struct IdentityVerdict {
  bool holds = true;
  /// Lexicographically least failing assignment.
  std::optional<std::vector<Elem>> counterexample;
};

IdentityVerdict check_identity(const FiniteAlgebra& alg, const Term& lhs, const Term& rhs,
                               std::size_t varcount);

/// x y z w u, then v5 v6 ...
std::vector<std::string> variable_names(std::size_t count);

std::string to_sexpr(const Term& t, std::span<const std::string> names);
Term parse_sexpr(std::string_view text, std::span<const std::string> names);

}  // namespace relcomm
