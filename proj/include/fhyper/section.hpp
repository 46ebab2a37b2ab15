#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "fhyper/errors.hpp"
#include "fhyper/group.hpp"
#include "fhyper/primes.hpp"
#include "fhyper/workspace.hpp"

namespace fhyper {

// A quotient G/K given by its ambient group and normal kernel.  Elements are
// ambient permutations; equality is tested modulo the kernel.  Quotients
// never get their own permutation representation.
struct Section {
  PermGroup ambient;
  PermGroup kernel;

  static Section make(PermGroup g, PermGroup k) {
    if (g.degree() != k.degree()) throw DegreeMismatch(g.degree(), k.degree());
    if (!is_subgroup(k, g))
      throw ContractViolation("section kernel is not contained in the ambient group");
    for (const auto& a : g.generators())
      for (const auto& s : k.generators())
        if (!k.contains(s.conjugated_by(a)))
          throw ContractViolation("section kernel is not normal in the ambient group");
    if (g.order() % k.order() != 0)
      throw ContractViolation("kernel order does not divide ambient order");
    return Section{std::move(g), std::move(k)};
  }

  uint64_t order() const { return ambient.order() / kernel.order(); }
  uint32_t degree() const { return ambient.degree(); }
};

// Canonical representative of the coset K*x (= x*K, K normal): the element
// of the coset whose base-image tuple under K's chain is lexicographically
// minimal.  Depends only on the coset and K's chain.
inline Permutation canonical_coset_rep(const PermGroup& kernel, const Permutation& x) {
  Permutation rep = x;
  for (const auto& lv : kernel.chain().levels()) {
    size_t best = 0;
    Point best_img = rep.apply(lv.orbit[0]);
    for (size_t k = 1; k < lv.orbit.size(); ++k) {
      Point img = rep.apply(lv.orbit[k]);
      if (img < best_img) {
        best_img = img;
        best = k;
      }
    }
    rep = lv.transversal[best] * rep;
  }
  return rep;
}

inline std::vector<Point> coset_fingerprint(const PermGroup& kernel, const Permutation& x) {
  auto rep = canonical_coset_rep(kernel, x);
  return std::vector<Point>(rep.images().begin(), rep.images().end());
}

struct PointVecHash {
  size_t operator()(const std::vector<Point>& v) const {
    uint64_t h = 1469598103934665603ull;
    for (Point p : v) {
      h ^= p;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

// Order of the coset x*K in G/K: the least m with x^m in K.
inline uint64_t coset_order(const PermGroup& kernel, const Permutation& x) {
  for (uint64_t d : divisors_sorted(x.element_order()))
    if (kernel.contains(x.power(d))) return d;
  throw ContractViolation("coset order not found");  // unreachable
}

// All cosets of the section as canonical representatives, breadth-first from
// the identity coset with the ambient generators in order.  The result order
// is the library's canonical scan order for bounded section algorithms.
inline std::vector<Permutation> enumerate_cosets(const Section& s, uint64_t bound,
                                                 const char* who) {
  uint64_t total = s.order();
  if (total > bound) throw SizeBoundExceeded(who, total, bound);
  std::vector<Permutation> reps;
  reps.reserve(total);
  std::unordered_map<std::vector<Point>, size_t, PointVecHash> seen;
  Permutation id_rep = canonical_coset_rep(s.kernel, Permutation(s.degree()));
  seen.emplace(std::vector<Point>(id_rep.images().begin(), id_rep.images().end()), 0);
  reps.push_back(id_rep);
  for (size_t scan = 0; scan < reps.size(); ++scan) {
    for (const auto& g : s.ambient.generators()) {
      Permutation cand = canonical_coset_rep(s.kernel, reps[scan] * g);
      std::vector<Point> fp(cand.images().begin(), cand.images().end());
      if (seen.emplace(std::move(fp), reps.size()).second) reps.push_back(std::move(cand));
    }
  }
  if (reps.size() != total)
    throw ContractViolation("coset enumeration found " + std::to_string(reps.size()) +
                            " cosets, expected " + std::to_string(total));
  return reps;
}

// An ascending series of subgroups, each normal in the ambient group.
struct NormalSeries {
  PermGroup ambient;
  std::vector<PermGroup> terms;  // ascending; terms.front() is the anchor

  size_t factors() const { return terms.empty() ? 0 : terms.size() - 1; }
  uint64_t factor_order(size_t i) const {
    return terms[i + 1].order() / terms[i].order();
  }
};

using ChiefSeries = NormalSeries;

// One factor H/T of a chief series of G, carried with the ambient group and
// the context kernel K <= T the computation runs over.
struct ChiefFactor {
  PermGroup top;      // H
  PermGroup bottom;   // T
  PermGroup ambient;  // G
  PermGroup kernel;   // K

  uint64_t order() const { return top.order() / bottom.order(); }
  Section section() const { return Section{top, bottom}; }
};

}  // namespace fhyper
