#include "relcomm/algebra.hpp"

#include <json.hpp>
#include <set>

#include "relcomm/error.hpp"

namespace relcomm {

const char* errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::parse: return "parse";
    case Errc::invalid: return "invalid";
    case Errc::unbound: return "unbound";
    case Errc::arity: return "arity";
    case Errc::universe_mismatch: return "universe_mismatch";
    case Errc::kind_violation: return "kind_violation";
    case Errc::unknown_id: return "unknown_id";
  }
  return "unknown";
}

std::optional<std::size_t> checked_pow(std::size_t n, std::size_t k, std::size_t limit) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (n != 0 && r > limit / n) return std::nullopt;
    r *= n;
  }
  if (r > limit) return std::nullopt;
  return r;
}

FiniteAlgebra::FiniteAlgebra(std::string name, std::size_t size, std::vector<Operation> operations)
    : name_(std::move(name)), size_(size), ops_(std::move(operations)) {
  if (size_ == 0) throw Error(Errc::invalid, "algebra size must be positive");
  std::set<std::string, std::less<>> names;
  for (const auto& op : ops_) {
    if (op.arity < 0) throw Error(Errc::invalid, "operation '" + op.name + "' has negative arity");
    if (!names.insert(op.name).second)
      throw Error(Errc::invalid, "duplicate operation name '" + op.name + "'");
    auto expected = checked_pow(size_, static_cast<std::size_t>(op.arity), std::size_t{1} << 32);
    if (!expected) throw Error(Errc::invalid, "operation '" + op.name + "' table too large");
    if (op.table.size() != *expected)
      throw Error(Errc::invalid, "operation '" + op.name + "': table length " +
                                     std::to_string(op.table.size()) + " != " +
                                     std::to_string(*expected));
    for (Elem e : op.table)
      if (e >= size_)
        throw Error(Errc::invalid, "operation '" + op.name + "': entry " + std::to_string(e) +
                                       " out of range");
    std::vector<std::size_t> st(static_cast<std::size_t>(op.arity));
    std::size_t s = 1;
    for (int i = op.arity - 1; i >= 0; --i) {
      st[static_cast<std::size_t>(i)] = s;
      s *= size_;
    }
    strides_.push_back(std::move(st));
  }
}

std::optional<std::size_t> FiniteAlgebra::find(std::string_view op_name) const {
  for (std::size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].name == op_name) return i;
  return std::nullopt;
}

Elem FiniteAlgebra::apply(std::size_t op, std::span<const Elem> args) const {
  const auto& o = ops_.at(op);
  if (args.size() != static_cast<std::size_t>(o.arity))
    throw Error(Errc::arity, "operation '" + o.name + "' expects " + std::to_string(o.arity) +
                                 " arguments");
  const auto& st = strides_[op];
  std::size_t idx = 0;
  for (std::size_t i = 0; i < args.size(); ++i) idx += args[i] * st[i];
  return o.table[idx];
}

FiniteAlgebra parse_algebra(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, std::string("malformed algebra document: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw Error(Errc::parse, "algebra document must be an object");
    std::string name = doc.value("name", std::string{});
    const auto& sz = doc.at("size");
    if (!sz.is_number_integer() || sz.get<long long>() <= 0)
      throw Error(Errc::parse, "'size' must be a positive integer");
    std::vector<Operation> ops;
    for (const auto& jo : doc.at("operations")) {
      Operation op;
      op.name = jo.at("name").get<std::string>();
      op.arity = jo.at("arity").get<int>();
      for (const auto& v : jo.at("table")) {
        if (!v.is_number_integer() || v.get<long long>() < 0 ||
            v.get<long long>() >= sz.get<long long>())
          throw Error(Errc::invalid, "operation '" + op.name + "': entry " + v.dump() +
                                         " out of range");
        op.table.push_back(static_cast<Elem>(v.get<long long>()));
      }
      ops.push_back(std::move(op));
    }
    return FiniteAlgebra(std::move(name), sz.get<std::size_t>(), std::move(ops));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, std::string("malformed algebra document: ") + e.what());
  }
}

std::string serialize_algebra(const FiniteAlgebra& alg) {
  nlohmann::json doc;
  doc["name"] = alg.name();
  doc["size"] = alg.size();
  doc["operations"] = nlohmann::json::array();
  for (const auto& op : alg.operations())
    doc["operations"].push_back({{"name", op.name}, {"arity", op.arity}, {"table", op.table}});
  return doc.dump();
}

}  // namespace relcomm
