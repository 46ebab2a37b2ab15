#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fhyper/bsgs.hpp"
#include "fhyper/errors.hpp"
#include "fhyper/perm.hpp"

namespace fhyper {

// Immutable handle to a permutation group: generators plus a stabilizer
// chain answering order and membership exactly.  Cheap to copy and safe to
// share across tasks.
class PermGroup {
 public:
  PermGroup() = default;

  static PermGroup build(uint32_t degree, std::vector<Permutation> gens,
                         const BuildOptions& opt = {}) {
    auto impl = std::make_shared<Impl>();
    impl->degree = degree;
    // Normalize: drop identities, deduplicate, keep first-seen order.
    for (auto& g : gens) {
      if (g.degree() != degree) throw DegreeMismatch(g.degree(), degree);
      if (g.is_identity()) continue;
      bool dup = false;
      for (const auto& h : impl->gens)
        if (h == g) {
          dup = true;
          break;
        }
      if (!dup) impl->gens.push_back(std::move(g));
    }
    impl->chain = StabilizerChain::build(degree, impl->gens, nullptr, opt);
    impl->order = impl->chain.order();
    if (degree >= 2 && impl->chain.levels().size() > 2u * degree - 3u)
      throw ContractViolation("stabilizer chain longer than 2n-3");
    PermGroup g;
    g.p_ = std::move(impl);
    return g;
  }

  static PermGroup trivial(uint32_t degree) { return build(degree, {}); }

  bool valid() const { return static_cast<bool>(p_); }
  uint32_t degree() const { return p_->degree; }
  uint64_t order() const { return p_->order; }
  bool is_trivial() const { return p_->order == 1; }
  const std::vector<Permutation>& generators() const { return p_->gens; }
  const StabilizerChain& chain() const { return p_->chain; }

  bool contains(const Permutation& g) const {
    if (g.degree() != p_->degree) throw DegreeMismatch(g.degree(), p_->degree);
    return p_->chain.contains(g);
  }

  // All elements, exactly once, as transversal products in a fixed order.
  std::vector<Permutation> elements(uint64_t bound) const {
    if (p_->order > bound)
      throw SizeBoundExceeded("enumerate_elements", p_->order, bound);
    std::vector<Permutation> out;
    out.reserve(p_->order);
    emit(p_->chain.levels().size(), Permutation(p_->degree), out);
    if (out.size() != p_->order)
      throw ContractViolation("element enumeration miscounted");
    return out;
  }

 private:
  struct Impl {
    uint32_t degree = 0;
    std::vector<Permutation> gens;
    StabilizerChain chain;
    uint64_t order = 1;
  };
  std::shared_ptr<const Impl> p_;

  // Emits acc-prefixed products over levels [0, level); elements come out as
  // t_{deep} * ... * t_{0} with each level's orbit walked in point order.
  void emit(size_t level, const Permutation& acc, std::vector<Permutation>& out) const {
    if (level == 0) {
      out.push_back(acc);
      return;
    }
    const auto& lv = p_->chain.levels()[level - 1];
    std::vector<size_t> idx(lv.orbit.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](size_t a, size_t b) { return lv.orbit[a] < lv.orbit[b]; });
    for (size_t i : idx) emit(level - 1, acc * lv.transversal[i], out);
  }
};

inline bool is_subgroup(const PermGroup& sub, const PermGroup& sup) {
  if (sub.degree() != sup.degree()) throw DegreeMismatch(sub.degree(), sup.degree());
  if (sup.order() % sub.order() != 0) return false;
  for (const auto& g : sub.generators())
    if (!sup.contains(g)) return false;
  return true;
}

inline bool same_subgroup(const PermGroup& a, const PermGroup& b) {
  return a.order() == b.order() && is_subgroup(a, b);
}

// True iff conjugating sub's generators by amb's generators stays in sub.
inline bool is_normalized_by(const PermGroup& sub, const PermGroup& amb) {
  for (const auto& g : amb.generators())
    for (const auto& s : sub.generators()) {
      if (!sub.contains(s.conjugated_by(g))) return false;
      if (!sub.contains(s.conjugated_by(g.inverse()))) return false;
    }
  return true;
}

inline PermGroup join(const PermGroup& a, const PermGroup& b) {
  std::vector<Permutation> gens = a.generators();
  for (const auto& g : b.generators()) gens.push_back(g);
  return PermGroup::build(a.degree(), std::move(gens));
}

inline PermGroup join_with(const PermGroup& a, const std::vector<Permutation>& extra) {
  std::vector<Permutation> gens = a.generators();
  for (const auto& g : extra) gens.push_back(g);
  return PermGroup::build(a.degree(), std::move(gens));
}

// Stable 64-bit invariant of the subgroup (degree, order, orbit partition).
// Equal subgroups hash equally regardless of the generating set; callers
// must confirm candidate hits with same_subgroup.
inline uint64_t subgroup_invariant_hash(const PermGroup& g) {
  uint32_t n = g.degree();
  std::vector<uint32_t> rep(n);
  for (uint32_t i = 0; i < n; ++i) rep[i] = i;
  // union-find over generator images
  std::function<uint32_t(uint32_t)> find = [&](uint32_t x) {
    while (rep[x] != x) x = rep[x] = rep[rep[x]];
    return x;
  };
  for (const auto& p : g.generators())
    for (uint32_t i = 0; i < n; ++i) {
      uint32_t a = find(i), b = find(p.apply(i));
      if (a != b) rep[std::max(a, b)] = std::min(a, b);
    }
  uint64_t h = 1469598103934665603ull;
  auto mix = [&](uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(n);
  mix(g.order());
  for (uint32_t i = 0; i < n; ++i) mix(find(i));
  return h;
}

}  // namespace fhyper
