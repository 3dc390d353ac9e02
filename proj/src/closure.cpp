#include "relcomm/closure.hpp"

#include <cstring>

#include "relcomm/error.hpp"

namespace relcomm {

TupleSpace::TupleSpace(const FiniteAlgebra& base, std::size_t exponent)
    : base_(&base), exponent_(exponent) {
  fits_word_ = checked_pow(base.size(), exponent, std::numeric_limits<std::uint64_t>::max())
                   .has_value();
}

std::uint64_t TupleSpace::encode(std::span<const Elem> tuple) const {
  if (!fits_word_) throw Error(Errc::invalid, "tuple space too large for word encoding");
  if (tuple.size() != exponent_) throw Error(Errc::arity, "tuple width mismatch");
  std::uint64_t code = 0;
  for (Elem e : tuple) {
    if (e >= base_->size()) throw Error(Errc::invalid, "tuple entry out of range");
    code = code * base_->size() + e;
  }
  return code;
}

std::vector<Elem> TupleSpace::decode(std::uint64_t code) const {
  if (!fits_word_) throw Error(Errc::invalid, "tuple space too large for word encoding");
  std::vector<Elem> t(exponent_);
  for (std::size_t i = exponent_; i-- > 0;) {
    t[i] = static_cast<Elem>(code % base_->size());
    code /= base_->size();
  }
  if (code != 0) throw Error(Errc::invalid, "code out of range");
  return t;
}

std::size_t TupleStore::hash(std::span<const Elem> t) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (Elem e : t) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 31));
}

std::size_t TupleStore::probe(std::span<const Elem> t, std::size_t h) const noexcept {
  const std::size_t mask = slots_.size() - 1;
  for (std::size_t s = h & mask;; s = (s + 1) & mask) {
    std::size_t idx = slots_[s];
    if (idx == kEmpty) return s;
    if (std::memcmp(data_.data() + idx * width_, t.data(), t.size_bytes()) == 0) return s;
  }
}

void TupleStore::grow() {
  std::vector<std::size_t> old(slots_.size() * 2, kEmpty);
  old.swap(slots_);
  for (std::size_t idx : old)
    if (idx != kEmpty) slots_[probe(at(idx), hash(at(idx)))] = idx;
}

std::optional<std::size_t> TupleStore::find(std::span<const Elem> t) const {
  if (t.size() != width_) return std::nullopt;
  std::size_t idx = slots_[probe(t, hash(t))];
  if (idx == kEmpty) return std::nullopt;
  return idx;
}

std::pair<std::size_t, bool> TupleStore::insert(std::span<const Elem> t) {
  if (t.size() != width_) throw Error(Errc::arity, "tuple width mismatch");
  std::size_t s = probe(t, hash(t));
  if (slots_[s] != kEmpty) return {slots_[s], false};
  data_.insert(data_.end(), t.begin(), t.end());
  slots_[s] = count_;
  ++count_;
  if (count_ * 2 > slots_.size()) grow();
  return {count_ - 1, true};
}

namespace {

// Enumerates argument index tuples over [0, end)^k in which at least one
// index falls in [begin, end). Each tuple is produced exactly once, grouped
// by the position of its first frontier argument.
template <class F>
void for_each_frontier_tuple(std::size_t k, std::size_t begin, std::size_t end, F&& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t first = 0; first < k; ++first) {
    if (begin == 0 && first > 0) break;  // nothing lies before the frontier
    auto lo = [&](std::size_t p) { return p == first ? begin : 0; };
    auto hi = [&](std::size_t p) { return p < first ? begin : end; };
    bool empty = false;
    for (std::size_t p = 0; p < k; ++p) {
      idx[p] = lo(p);
      if (lo(p) >= hi(p)) empty = true;
    }
    if (empty) continue;
    for (;;) {
      if (!visit(std::span<const std::size_t>(idx))) return;
      std::size_t p = k;
      while (p-- > 0) {
        if (++idx[p] < hi(p)) break;
        idx[p] = lo(p);
        if (p == 0) {
          p = k;  // exhausted
          break;
        }
      }
      if (p == k) break;
    }
  }
}

}  // namespace

Closure close_subuniverse(const TupleSpace& space,
                          const std::vector<std::vector<Elem>>& generators, bool provenance,
                          const Caps& caps) {
  const FiniteAlgebra& alg = space.base();
  const std::size_t m = space.exponent();
  Closure out{TupleStore(m), {0}, std::nullopt, false};
  if (provenance) out.provenance.emplace();

  for (std::size_t g = 0; g < generators.size(); ++g) {
    const auto& t = generators[g];
    if (t.size() != m) throw Error(Errc::arity, "generator width mismatch");
    for (Elem e : t)
      if (e >= alg.size()) throw Error(Errc::invalid, "generator entry out of range");
    if (out.elements.insert(t).second && provenance)
      out.provenance->push_back(Term::variable(static_cast<int>(g)));
    if (out.size() > caps.max_elements) {
      out.capped = true;
      return out;
    }
  }

  std::vector<Elem> result(m);
  std::size_t prev_begin = 0;
  std::size_t rounds = 0;
  for (;;) {
    const std::size_t prev_end = out.size();
    if (rounds >= caps.max_rounds) {
      out.capped = true;
      return out;
    }
    const std::size_t new_begin = out.size();
    for (std::size_t op = 0; op < alg.operations().size(); ++op) {
      const auto& o = alg.operation(op);
      const auto k = static_cast<std::size_t>(o.arity);
      auto st = alg.strides(op);
      if (k == 0) {
        if (rounds != 0) continue;
        std::fill(result.begin(), result.end(), o.table[0]);
        if (out.elements.insert(result).second && provenance)
          out.provenance->push_back(Term::apply(o.name, {}));
        continue;
      }
      bool stop = false;
      for_each_frontier_tuple(k, prev_begin, prev_end, [&](std::span<const std::size_t> args) {
        for (std::size_t c = 0; c < m; ++c) {
          std::size_t idx = 0;
          for (std::size_t i = 0; i < k; ++i) idx += out.elements.at(args[i])[c] * st[i];
          result[c] = o.table[idx];
        }
        if (out.elements.insert(result).second) {
          if (provenance) {
            std::vector<Term> kids;
            kids.reserve(k);
            for (auto a : args) kids.push_back((*out.provenance)[a]);
            out.provenance->push_back(Term::apply(o.name, std::move(kids)));
          }
          if (out.size() > caps.max_elements) {
            stop = true;
            return false;
          }
        }
        return true;
      });
      if (stop) {
        out.capped = true;
        return out;
      }
    }
    if (out.size() == new_begin) return out;  // fixed point
    out.round_start.push_back(new_begin);
    prev_begin = new_begin;
    ++rounds;
  }
}

}  // namespace relcomm
