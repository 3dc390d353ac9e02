#include "relcomm/binrel.hpp"

#include <bit>

#include "relcomm/error.hpp"

namespace relcomm {

BinRel BinRel::diagonal(std::size_t n) {
  BinRel r(n);
  for (Elem a = 0; a < n; ++a) r.insert(a, a);
  return r;
}

BinRel BinRel::full(std::size_t n) {
  BinRel r(n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) r.insert(a, b);
  return r;
}

BinRel BinRel::from_pairs(std::size_t n, std::span<const Pair> pairs) {
  BinRel r(n);
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n)
      throw Error(Errc::invalid, "pair (" + std::to_string(a) + "," + std::to_string(b) +
                                     ") outside universe of size " + std::to_string(n));
    r.insert(a, b);
  }
  return r;
}

std::size_t BinRel::count() const noexcept {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<Pair> BinRel::pairs() const {
  std::vector<Pair> out;
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = 0; b < n_; ++b)
      if (contains(a, b)) out.emplace_back(a, b);
  return out;
}

bool BinRel::subset_of(const BinRel& o) const {
  if (n_ != o.n_) throw Error(Errc::universe_mismatch, "relations over different universes");
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~o.bits_[i]) return false;
  return true;
}

std::optional<Pair> BinRel::first_outside(const BinRel& o) const {
  if (n_ != o.n_) throw Error(Errc::universe_mismatch, "relations over different universes");
  for (Elem a = 0; a < n_; ++a)
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t diff = bits_[a * words_ + w] & ~o.bits_[a * words_ + w];
      if (diff) return Pair{a, static_cast<Elem>(w * 64 + std::countr_zero(diff))};
    }
  return std::nullopt;
}

std::string BinRel::str() const {
  std::string s = "{";
  bool first = true;
  for (auto [a, b] : pairs()) {
    if (!first) s += ',';
    first = false;
    s += '(' + std::to_string(a) + ',' + std::to_string(b) + ')';
  }
  return s + '}';
}

}  // namespace relcomm
