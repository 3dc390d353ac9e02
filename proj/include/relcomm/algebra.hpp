#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace relcomm {

/// Universe element. Universes are always {0, ..., n-1}.
using Elem = std::uint32_t;

struct Operation {
  std::string name;
  int arity = 0;
  /// Row-major: index = sum args[i] * n^(arity-1-i).
  std::vector<Elem> table;

  bool operator==(const Operation&) const = default;
};

/// A finite algebra: universe size plus finitary operation tables.
/// The constructor validates every invariant and throws relcomm::Error.
class FiniteAlgebra {
 public:
  FiniteAlgebra(std::string name, std::size_t size, std::vector<Operation> operations);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return size_; }
  std::span<const Operation> operations() const noexcept { return ops_; }
  const Operation& operation(std::size_t i) const { return ops_.at(i); }
  std::optional<std::size_t> find(std::string_view op_name) const;

  Elem apply(std::size_t op, std::span<const Elem> args) const;

  /// strides(op)[i] = n^(arity-1-i)
  std::span<const std::size_t> strides(std::size_t op) const { return strides_.at(op); }

  bool operator==(const FiniteAlgebra& o) const {
    return name_ == o.name_ && size_ == o.size_ && ops_ == o.ops_;
  }

 private:
  std::string name_;
  std::size_t size_;
  std::vector<Operation> ops_;
  std::vector<std::vector<std::size_t>> strides_;
};

/// Parses the JSON algebra format
/// {"name": str?, "size": int, "operations": [{"name", "arity", "table"}]}.
FiniteAlgebra parse_algebra(std::string_view text);
std::string serialize_algebra(const FiniteAlgebra& alg);

/// n^k, or nullopt on overflow past `limit`.
std::optional<std::size_t> checked_pow(std::size_t n, std::size_t k,
                                       std::size_t limit = SIZE_MAX);

}  // namespace relcomm
