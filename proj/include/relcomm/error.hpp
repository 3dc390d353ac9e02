#pragma once

#include <stdexcept>
#include <string>

namespace relcomm {

enum class Errc {
  parse,              // malformed document or expression
  invalid,            // value violates a type invariant
  unbound,            // unresolved operation or variable name
  arity,              // arity / shape mismatch
  universe_mismatch,  // relations over different universes
  kind_violation,     // bound relation does not satisfy its declared kind
  unknown_id,         // unknown condition or scheme id
};

const char* errc_name(Errc e) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Raised when a closure exceeds its caps. Results depending on a capped
// closure are inconclusive and must never be reported as verdicts.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace relcomm
