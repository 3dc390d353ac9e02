#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relcomm/binrel.hpp"
#include "relcomm/closure.hpp"
#include "relcomm/term.hpp"

namespace relcomm {

/// The free algebra of V(A) on k generators, realized as the subuniverse
/// of A^(n^k) generated by the k projections. Coordinate a of an element is
/// its value at the assignment with base-n digits a (first variable most
/// significant). Each element carries a term over variables 0..k-1.
class FreeAlgebra {
 public:
  const FiniteAlgebra& base() const noexcept { return base_; }
  std::size_t generator_count() const noexcept { return gens_.size(); }
  std::size_t size() const noexcept { return closure_.size(); }
  bool capped() const noexcept { return closure_.capped; }

  std::span<const Elem> element(std::size_t i) const { return closure_.elements.at(i); }
  const Term& term(std::size_t i) const { return (*closure_.provenance)[i]; }
  /// Element index of the i-th projection.
  std::size_t generator(std::size_t i) const { return gens_.at(i); }
  std::optional<std::size_t> find(std::span<const Elem> values) const {
    return closure_.elements.find(values);
  }
  /// Closure round in which element i was found, which is its least term depth.
  std::size_t depth(std::size_t i) const;

  /// F with its induced operation tables. Throws CapExceeded when a table
  /// would exceed caps.max_table_entries or F itself is capped.
  FiniteAlgebra induced_algebra(const Caps& caps = {}) const;

 private:
  friend FreeAlgebra free_algebra(const FiniteAlgebra&, std::size_t, const Caps&);
  FreeAlgebra(FiniteAlgebra base, Closure closure, std::vector<std::size_t> gens)
      : base_(std::move(base)), closure_(std::move(closure)), gens_(std::move(gens)) {}

  FiniteAlgebra base_;
  Closure closure_;
  std::vector<std::size_t> gens_;
};

/// Throws CapExceeded when n^k exceeds caps.max_tuple_width; an element cap
/// yields a FreeAlgebra with capped() set.
FreeAlgebra free_algebra(const FiniteAlgebra& alg, std::size_t k, const Caps& caps = {});

enum class Scheme { x32_vii, x22_vii, x32var_vii_prime };

const char* scheme_id(Scheme s) noexcept;  // "x32.vii", "x22.vii", "x32var.vii'"
Scheme parse_scheme(std::string_view id);  // also accepts "x32", "x22", "x32var"
std::size_t scheme_arity(Scheme s) noexcept;

struct SchemeLine {
  std::string label;
  Term lhs;
  Term rhs;
};

/// The identity list of a scheme instantiated with terms f_0..f_n, as
/// identities in the three variables x, y, z. Throws on wrong arity or,
/// for vii', odd n.
std::vector<SchemeLine> scheme_identities(Scheme s, std::span<const Term> terms);

struct LineVerdict {
  std::string label;
  bool holds = false;
  std::optional<std::vector<Elem>> counterexample;
};

struct SchemeVerdict {
  bool all_hold = false;
  std::vector<LineVerdict> lines;
};

SchemeVerdict verify_scheme(const FiniteAlgebra& alg, Scheme s, std::span<const Term> terms);

struct ChainLink {
  Term term;         // t_j(x, y, z)
  std::string step;  // relation linking t_{j-1} to t_j: "start", "T&beta" or "gamma"
};

struct TermChain {
  Scheme scheme = Scheme::x32_vii;
  std::size_t n = 0;
  std::vector<Term> terms;  // f_0..f_n
  bool verified = false;
  std::vector<ChainLink> chain;
  std::string note;
};

struct Refutation {
  Scheme scheme = Scheme::x32_vii;
  std::string condition;  // the relational condition refuted inside F
  std::size_t free_size = 0;
  std::string statement;
};

struct ExtractionResult {
  enum class Status { chain, refuted, inconclusive };
  Status status = Status::inconclusive;
  std::optional<TermChain> chain;
  std::optional<Refutation> refutation;
  std::string reason;
};

/// Builds F(x,y,z), beta = Cg(x,z), gamma = Cg(y,z) and T generated by (x,y)
/// with term witnesses, then reads f_i off a shortest alternating chain
/// x = t_0 (T&beta) t_1 gamma t_2 ... (T&beta) t_{2n+1} = z.
ExtractionResult extract_terms_x32(const FiniteAlgebra& alg, const Caps& caps = {});
/// As above with T the tolerance generated by (x,y) and 5-ary witnesses.
ExtractionResult extract_terms_x22(const FiniteAlgebra& alg, const Caps& caps = {});

/// Independent re-check of a refutation: recomputes beta and gamma as
/// substitution kernels, T without witnesses, and evaluates the refuted
/// condition's sides in F at the pair (x, z).
bool verify_refutation(const FiniteAlgebra& alg, const Refutation& ref, const Caps& caps = {});

/// Pairs of the relation generated by (x, y) in F(x,y,z), each with a term f
/// such that the pair is (f(x,y,z,x), f(x,y,z,y)) or, when symmetric, a
/// 5-ary f with pair (f(x,y,z,x,y), f(x,y,z,y,x)).
struct WitnessedRelation {
  BinRel relation;
  std::map<Pair, Term> witness;
};
WitnessedRelation witnessed_relation(const FreeAlgebra& f, const FiniteAlgebra& induced,
                                     bool symmetric, const Caps& caps = {});

struct SearchResult {
  enum class Status { found, exhausted, inconclusive };
  Status status = Status::exhausted;
  std::optional<TermChain> chain;
  std::size_t candidates = 0;
  std::string reason;
};

/// Bounded exhaustive search over the term operations of depth <= max_depth
/// in the free algebra on 4 (or 5) generators, for n <= max_n. Returns the
/// system with least n, then least candidate indices.
SearchResult search_terms(const FiniteAlgebra& alg, Scheme s, std::size_t max_n,
                          std::size_t max_depth, const Caps& caps = {});

struct ReplayResult {
  bool ok = true;
  std::string failure;
};

/// For every (x,y) in r: each matrix (f_i(x,y,x,x), f_i(x,y,x,y); f_i(x,y,y,x),
/// f_i(x,y,y,y)) lies in M(r,r) and the bottom rows chain x to y inside [r,r|1].
ReplayResult replay_matrix_chain(const FiniteAlgebra& alg, const TermChain& chain,
                                 const BinRel& r, const Caps& caps = {});

}  // namespace relcomm
