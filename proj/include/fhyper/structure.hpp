#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "fhyper/errors.hpp"
#include "fhyper/group.hpp"
#include "fhyper/primes.hpp"
#include "fhyper/section.hpp"
#include "fhyper/workspace.hpp"

namespace fhyper {

// ---------------------------------------------------------------------------
// Closures and commutators
// ---------------------------------------------------------------------------

// Smallest subgroup containing `start` and `seeds` that is closed under
// conjugation by G's generators.  `start` must already be G-normal.
inline PermGroup normal_closure_over(const PermGroup& G, const PermGroup& start,
                                     const std::vector<Permutation>& seeds) {
  std::vector<Permutation> kept = start.generators();
  PermGroup N = start;
  std::deque<Permutation> queue(seeds.begin(), seeds.end());
  while (!queue.empty()) {
    Permutation x = std::move(queue.front());
    queue.pop_front();
    if (N.contains(x)) continue;
    kept.push_back(x);
    N = PermGroup::build(G.degree(), kept);
    for (const auto& g : G.generators()) queue.push_back(kept.back().conjugated_by(g));
  }
  return N;
}

inline PermGroup normal_closure(const PermGroup& G, const std::vector<Permutation>& seeds) {
  for (const auto& s : seeds)
    if (!G.contains(s))
      throw ContractViolation("normal closure seed lies outside the group");
  return normal_closure_over(G, PermGroup::trivial(G.degree()), seeds);
}

// [A, B]: generated by generator-pair commutators, closed under conjugation
// by <A, B>.
inline PermGroup commutator_subgroup(const PermGroup& A, const PermGroup& B,
                                     const PermGroup& ambient) {
  for (const auto& g : A.generators())
    if (!ambient.contains(g)) throw ContractViolation("commutator: A not in ambient");
  for (const auto& g : B.generators())
    if (!ambient.contains(g)) throw ContractViolation("commutator: B not in ambient");
  PermGroup J = join(A, B);
  std::vector<Permutation> seeds;
  for (const auto& a : A.generators())
    for (const auto& b : B.generators()) seeds.push_back(Permutation::commutator(a, b));
  return normal_closure_over(J, PermGroup::trivial(J.degree()), seeds);
}

// Limit of the derived series; the quotient by it is the largest soluble one.
inline PermGroup soluble_residual_group(const PermGroup& G) {
  PermGroup cur = G;
  uint32_t guard = 2 * G.degree() + 4;
  while (guard--) {
    PermGroup d = commutator_subgroup(cur, cur, cur);
    if (d.order() == cur.order()) return d;
    cur = d;
  }
  throw ContractViolation("derived series did not stabilize");
}

inline PermGroup soluble_residual(Workspace& ws, const PermGroup& G) {
  if (const auto* hit = ws.subgroup_cache.find("solres", {G})) return *hit;
  PermGroup r = soluble_residual_group(G);
  ws.subgroup_cache.put("solres", {G}, r);
  return r;
}

// (G/K)^S as a preimage.
inline PermGroup section_soluble_residual(Workspace& ws, const Section& s) {
  return join(soluble_residual(ws, s.ambient), s.kernel);
}

// ---------------------------------------------------------------------------
// Kernels of coset actions: centralizers of normal sections
// ---------------------------------------------------------------------------

namespace detail {

// Filters a generator stream down to a small generating set by keeping only
// elements that enlarge the group generated so far.
class ReducedClosure {
 public:
  explicit ReducedClosure(uint32_t degree)
      : group_(PermGroup::trivial(degree)) {}

  void add(const Permutation& g) {
    if (group_.contains(g)) return;
    kept_.push_back(g);
    group_ = PermGroup::build(group_.degree(), kept_);
  }

  const PermGroup& group() const { return group_; }
  const std::vector<Permutation>& generators() const { return kept_; }

 private:
  std::vector<Permutation> kept_;
  PermGroup group_;
};

}  // namespace detail

// Preimage of C_{G/A}(B/A) for A, B normal in G, A <= B: the kernel of G's
// conjugation action on the cosets of A in B.  Computed by iterated
// orbit-stabilizer over the coset points, no quotient representation.
inline PermGroup centralizer_of_section(Workspace& ws, const PermGroup& G,
                                        const PermGroup& A, const PermGroup& B) {
  if (const auto* hit = ws.subgroup_cache.find("centralizer", {G, A, B})) return *hit;
  auto cosets = enumerate_cosets(Section{B, A}, ws.bounds.element_bound,
                                 "centralizer_of_section");
  std::vector<Permutation> cur_gens = G.generators();
  PermGroup cur = G;
  auto act = [&](const Permutation& rep, const Permutation& g) {
    return canonical_coset_rep(A, rep.conjugated_by(g));
  };
  for (size_t j = 1; j < cosets.size() && !cur.is_trivial(); ++j) {
    // Orbit of coset j under cur, with transversal elements of cur.
    std::vector<Permutation> orbit{cosets[j]};
    std::vector<Permutation> trans{Permutation(G.degree())};
    std::unordered_map<std::vector<Point>, size_t, PointVecHash> where;
    where.emplace(std::vector<Point>(cosets[j].images().begin(), cosets[j].images().end()),
                  0);
    for (size_t scan = 0; scan < orbit.size(); ++scan) {
      for (const auto& g : cur_gens) {
        Permutation img = act(orbit[scan], g);
        std::vector<Point> fp(img.images().begin(), img.images().end());
        if (where.emplace(std::move(fp), orbit.size()).second) {
          orbit.push_back(std::move(img));
          trans.push_back(trans[scan] * g);
        }
      }
    }
    if (orbit.size() == 1) continue;
    // Schreier generators of the stabilizer of coset j in cur.
    detail::ReducedClosure stab(G.degree());
    for (size_t k = 0; k < orbit.size(); ++k) {
      for (const auto& g : cur_gens) {
        Permutation img = act(orbit[k], g);
        std::vector<Point> fp(img.images().begin(), img.images().end());
        size_t tk = where.at(fp);
        Permutation u = trans[k] * g * trans[tk].inverse();
        if (!u.is_identity()) stab.add(u);
      }
    }
    cur = stab.group();
    cur_gens = stab.generators();
  }
  PermGroup result = join(cur, A);
  if (!is_normalized_by(result, G))
    throw ContractViolation("centralizer of section is not normal");
  ws.subgroup_cache.put("centralizer", {G, A, B}, result);
  return result;
}

// Preimage of Z(G/A).
inline PermGroup center_of_section(Workspace& ws, const Section& s) {
  return centralizer_of_section(ws, s.ambient, s.kernel, s.ambient);
}

// ---------------------------------------------------------------------------
// O^pi and O_p of a section
// ---------------------------------------------------------------------------

// Set of primes, possibly "all".
struct PrimeSet {
  bool all = false;
  std::set<uint32_t> primes;

  static PrimeSet all_primes() { return PrimeSet{true, {}}; }
  static PrimeSet of(std::set<uint32_t> ps) { return PrimeSet{false, std::move(ps)}; }
  bool contains(uint32_t p) const { return all || primes.count(p) > 0; }
  bool pi_number(uint64_t m) const {
    if (all) return true;
    return is_pi_number(m, primes);
  }
  std::string text() const {
    if (all) return "all";
    std::string s;
    for (uint32_t p : primes) s += (s.empty() ? "" : ",") + std::to_string(p);
    return s;
  }
};

// Preimage of O^pi(G/K): the smallest normal subgroup of the section with
// pi-number index, i.e. the subgroup generated by all pi'-elements.  Grows a
// candidate by absorbing pi'-parts; generator pi-orders do not certify a
// pi-group, so the index is re-checked and, if needed, elements are hunted
// first among short generator words and then by bounded coset enumeration.
inline PermGroup pi_residual_of_section(Workspace& ws, const Section& s,
                                        const PrimeSet& pi) {
  if (!pi.all && pi.primes.empty())
    throw ContractViolation("pi_residual_of_section: empty prime set");
  std::string tag = "piresidual:" + pi.text();
  if (const auto* hit = ws.subgroup_cache.find(tag, {s.ambient, s.kernel})) return *hit;
  const PermGroup& G = s.ambient;
  PermGroup N = s.kernel;

  auto absorb = [&](const Permutation& x) -> bool {
    uint64_t m = coset_order(N, x);
    uint64_t a = pi.all ? m : pi_part(m, pi.primes);
    uint64_t b = m / a;
    if (b == 1) return false;
    Permutation y = x.power(crt_zero_one(a, b));
    N = normal_closure_over(G, N, {y});
    return true;
  };

  const auto& gens = G.generators();
  for (;;) {
    if (pi.pi_number(G.order() / N.order())) break;
    bool changed = false;
    for (const auto& g : gens)
      if (absorb(g)) {
        changed = true;
        break;
      }
    if (changed) continue;
    for (size_t i = 0; i < gens.size() && !changed; ++i)
      for (size_t j = 0; j < gens.size() && !changed; ++j)
        changed = absorb(gens[i] * gens[j]);
    if (changed) continue;
    for (size_t i = 0; i < gens.size() && !changed; ++i)
      for (size_t j = 0; j < gens.size() && !changed; ++j)
        for (size_t k = 0; k < gens.size() && !changed; ++k)
          changed = absorb(gens[i] * gens[j] * gens[k]);
    if (changed) continue;
    // Certified fallback: scan the section itself.
    auto reps = enumerate_cosets(Section{G, N}, ws.bounds.element_bound,
                                 "pi_residual_of_section");
    for (size_t j = 1; j < reps.size() && !changed; ++j) changed = absorb(reps[j]);
    if (!changed)
      throw ContractViolation("pi residual: no pi'-part found in a non-pi section");
  }
  if (!is_normalized_by(N, G))
    throw ContractViolation("pi residual is not normal");
  ws.subgroup_cache.put(tag, {s.ambient, s.kernel}, N);
  return N;
}

// Forward declaration; O_p walks a chief series of the section.
inline ChiefSeries chief_series(Workspace& ws, const PermGroup& G,
                                std::vector<PermGroup> through);

namespace detail {

inline PermGroup pcore_impl(Workspace& ws, const PermGroup& H, const PermGroup& K,
                            uint32_t p);

}  // namespace detail

// Preimage of O_p(G/K), the largest normal p-subgroup of the section.
inline PermGroup p_core_of_section(Workspace& ws, const Section& s, uint32_t p) {
  if (!is_prime(p)) throw ContractViolation("p_core_of_section: p is not prime");
  std::string tag = "pcore:" + std::to_string(p);
  if (const auto* hit = ws.subgroup_cache.find(tag, {s.ambient, s.kernel})) return *hit;
  PermGroup r = detail::pcore_impl(ws, s.ambient, s.kernel, p);
  if (prime_power_base(r.order() / s.kernel.order()) != p &&
      r.order() != s.kernel.order())
    throw ContractViolation("p-core is not a p-group");
  if (!is_normalized_by(r, s.ambient))
    throw ContractViolation("p-core is not normal");
  ws.subgroup_cache.put(tag, {s.ambient, s.kernel}, r);
  return r;
}

namespace detail {

inline PermGroup pcore_impl(Workspace& ws, const PermGroup& H, const PermGroup& K,
                            uint32_t p) {
  if (H.order() == K.order()) return K;
  ChiefSeries series = chief_series(ws, H, {K});
  // Normal p-subgroup prefix: O_p(H/K) is the preimage of O_p(H/cur).
  size_t i = 0;
  PermGroup cur = K;
  while (i < series.factors() && prime_power_base(series.factor_order(i)) == p) {
    cur = series.terms[i + 1];
    ++i;
  }
  if (i == series.factors()) return cur;
  const PermGroup& M = series.terms[i + 1];  // bottom factor of H/cur, not a p-group
  PermGroup C = centralizer_of_section(ws, H, cur, M);
  if (C.order() < H.order()) {
    // O_p(H/cur) intersects M/cur trivially, so it centralizes it.
    return pcore_impl(ws, C, cur, p);
  }
  // M/cur is central in H/cur, hence of prime order q != p.  Pull back
  // O_p(H/M) and split off the central q-part via coset q'-parts.
  uint64_t q64 = M.order() / cur.order();
  if (!is_prime(q64))
    throw ContractViolation("central chief factor of non-prime order");
  PermGroup X = pcore_impl(ws, H, M, p);
  std::vector<Permutation> parts;
  for (const auto& x : X.generators()) {
    uint64_t m = coset_order(cur, x);
    uint64_t a = pi_part(m, {static_cast<uint32_t>(q64)});
    uint64_t b = m / a;
    if (a == 1) {
      parts.push_back(x);
      continue;
    }
    parts.push_back(x.power(crt_zero_one(a, b)));
  }
  PermGroup P = join_with(cur, parts);
  uint64_t idx = P.order() / cur.order();
  if (idx != 1 && prime_power_base(idx) != p)
    throw ContractViolation("central split of p-core failed");
  return P;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Minimal normal subgroups and chief series
// ---------------------------------------------------------------------------

namespace detail {

// Sorted coset-fingerprint list of (N, bottom) filtered out of an ambient
// coset enumeration; a canonical, generator-independent identity for N used
// for tie-breaking.
inline std::vector<std::vector<Point>> subgroup_sort_key(
    const PermGroup& N, const std::vector<Permutation>& section_reps) {
  std::vector<std::vector<Point>> key;
  for (const auto& r : section_reps)
    if (N.contains(r)) key.emplace_back(r.images().begin(), r.images().end());
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace detail

// All inclusion-minimal subgroups N with bottom < N <= top that are normal in
// G, as preimages over bottom.  Exhausts normal closures of the nontrivial
// cosets; any minimal normal subgroup is the closure of each of its
// nontrivial elements, so exhaustion finds them all.  Output is sorted by
// order, then by a canonical element key.
inline std::vector<PermGroup> minimal_normal_subgroups_in(Workspace& ws,
                                                          const PermGroup& G,
                                                          const PermGroup& top,
                                                          const PermGroup& bottom) {
  if (const auto* hit = ws.minnorm_cache.find("minnorm", {G, top, bottom})) return *hit;
  std::vector<PermGroup> out;
  if (top.order() == bottom.order()) {
    ws.minnorm_cache.put("minnorm", {G, top, bottom}, out);
    return out;
  }
  auto reps = enumerate_cosets(Section{top, bottom}, ws.bounds.element_bound,
                               "minimal_normal_subgroups");
  std::vector<PermGroup> closures;
  for (size_t j = 1; j < reps.size(); ++j) {
    PermGroup N = normal_closure_over(G, bottom, {reps[j]});
    bool dup = false;
    for (const auto& c : closures)
      if (same_subgroup(c, N)) {
        dup = true;
        break;
      }
    if (!dup) closures.push_back(std::move(N));
  }
  for (const auto& c : closures) {
    bool minimal = true;
    for (const auto& d : closures)
      if (d.order() < c.order() && d.order() > bottom.order() && is_subgroup(d, c)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [&](const PermGroup& a, const PermGroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return detail::subgroup_sort_key(a, reps) < detail::subgroup_sort_key(b, reps);
  });
  ws.minnorm_cache.put("minnorm", {G, top, bottom}, out);
  return out;
}

inline std::vector<PermGroup> minimal_normal_subgroups(Workspace& ws, const Section& s) {
  return minimal_normal_subgroups_in(ws, s.ambient, s.ambient, s.kernel);
}

namespace detail {

inline void refine_layer(Workspace& ws, const PermGroup& G, const PermGroup& A,
                         const PermGroup& B, std::vector<PermGroup>& terms) {
  if (A.order() == B.order()) return;
  uint64_t size = B.order() / A.order();

  auto enumerate_refine = [&] {
    PermGroup cur = A;
    while (cur.order() < B.order()) {
      auto mins = minimal_normal_subgroups_in(ws, G, B, cur);
      if (mins.empty())
        throw ContractViolation("no minimal normal subgroup found in a proper layer");
      cur = mins.front();  // smallest order, then least canonical key
      terms.push_back(cur);
    }
  };

  if (size <= ws.bounds.refine_enum_limit) {
    enumerate_refine();
    return;
  }
  // Layer too large for direct refinement: insert provably G-normal
  // intermediaries first (derived subgroup, then p'-component or agemo).
  PermGroup D = join(A, commutator_subgroup(B, B, B));
  if (D.order() < B.order() && D.order() > A.order()) {
    refine_layer(ws, G, A, D, terms);
    refine_layer(ws, G, D, B, terms);
    return;
  }
  if (D.order() == A.order()) {
    auto fac = factorize(size);
    uint32_t p = fac.begin()->first;
    uint64_t pa = 1;
    for (uint32_t e = 0; e < fac.begin()->second; ++e) pa *= p;
    uint64_t exp = fac.size() > 1 ? pa : p;
    std::vector<Permutation> powers;
    for (const auto& b : B.generators()) powers.push_back(b.power(exp));
    PermGroup M = join_with(A, powers);
    if (M.order() > A.order() && M.order() < B.order()) {
      refine_layer(ws, G, A, M, terms);
      refine_layer(ws, G, M, B, terms);
      return;
    }
  }
  if (size <= ws.bounds.element_bound) {
    enumerate_refine();
    return;
  }
  throw SizeBoundExceeded("chief_series", size, ws.bounds.element_bound);
}

}  // namespace detail

// A chief series of G refining the given ascending list of normal subgroups,
// anchored at the first listed term.  Built bottom-up by repeatedly taking
// the tie-break-least minimal normal subgroup of the current quotient.
inline ChiefSeries chief_series(Workspace& ws, const PermGroup& G,
                                std::vector<PermGroup> through) {
  if (through.empty()) through.push_back(PermGroup::trivial(G.degree()));
  if (!same_subgroup(through.back(), G)) through.push_back(G);
  for (size_t i = 0; i + 1 < through.size(); ++i) {
    if (!is_subgroup(through[i], through[i + 1]))
      throw ContractViolation("chief series anchors are not ascending");
  }
  for (const auto& t : through)
    if (!is_normalized_by(t, G))
      throw ContractViolation("chief series anchor is not normal");

  std::vector<PermGroup> key{G};
  for (const auto& t : through) key.push_back(t);
  if (const auto* hit = ws.series_cache.find("chief", key)) {
    return ChiefSeries{G, *hit};
  }
  std::vector<PermGroup> terms{through.front()};
  for (size_t i = 0; i + 1 < through.size(); ++i) {
    if (through[i].order() == through[i + 1].order()) continue;
    detail::refine_layer(ws, G, through[i], through[i + 1], terms);
  }
  ChiefSeries s{G, terms};
  if (G.degree() >= 2 && s.factors() > 2u * G.degree() - 3u)
    throw ContractViolation("chief series longer than 2n-3");
  ws.series_cache.put("chief", key, terms);
  return s;
}

// ---------------------------------------------------------------------------
// Factor structure: simplicity test, composition unit, omega-1 layer
// ---------------------------------------------------------------------------

// True iff H/T is simple as an abstract group.
inline bool is_simple_factor(Workspace& ws, const ChiefFactor& f) {
  uint64_t ord = f.order();
  if (ord == 1) return false;
  if (uint32_t p = prime_power_base(ord)) return ord == p;
  // Non-abelian: simple iff the H-normal closure of every nontrivial coset
  // is the whole factor.
  auto reps = enumerate_cosets(Section{f.top, f.bottom}, ws.bounds.element_bound,
                               "is_simple_factor");
  for (size_t j = 1; j < reps.size(); ++j) {
    PermGroup N = normal_closure_over(f.top, f.bottom, {reps[j]});
    if (N.order() < f.top.order()) return false;
  }
  return true;
}

// Order of the simple group S with H/T isomorphic to S^k: the least order of
// an H-normal closure of a nontrivial coset.  Stops early once no smaller
// unit is arithmetically possible.
inline uint64_t chief_factor_unit_order(Workspace& ws, const ChiefFactor& f) {
  uint64_t ord = f.order();
  if (ord == 1) throw ContractViolation("trivial factor has no composition unit");
  if (uint32_t p = prime_power_base(ord)) return p;
  auto reps = enumerate_cosets(Section{f.top, f.bottom}, ws.bounds.element_bound,
                               "chief_factor_unit_order");
  auto is_power_of = [](uint64_t m, uint64_t d) {
    while (m % d == 0) m /= d;
    return m == 1;
  };
  uint64_t best = ord;
  for (size_t j = 1; j < reps.size(); ++j) {
    PermGroup N = normal_closure_over(f.top, f.bottom, {reps[j]});
    best = std::min(best, N.order() / f.bottom.order());
    // Candidate units are the d with best and ord both powers of d.
    size_t candidates = 0;
    for (uint64_t d = 2; d <= best; ++d)
      if (is_power_of(best, d) && is_power_of(ord, d)) ++candidates;
    if (candidates == 1) return best;
  }
  if (!is_power_of(ord, best))
    throw ContractViolation("factor order is not a power of its composition unit");
  return best;
}

// Preimage of Omega_1(Z(O_p(G/Z))) for a section (G, Z): the elements of
// order dividing p in the center of the p-core.
inline PermGroup omega1_center_pcore(Workspace& ws, const Section& s, uint32_t p) {
  PermGroup core = p_core_of_section(ws, s, p);
  PermGroup zc = center_of_section(ws, Section{core, s.kernel});
  auto reps = enumerate_cosets(Section{zc, s.kernel}, ws.bounds.element_bound,
                               "omega1_center_pcore");
  std::vector<Permutation> picks;
  for (size_t j = 1; j < reps.size(); ++j)
    if (s.kernel.contains(reps[j].power(p))) picks.push_back(reps[j]);
  PermGroup P = join_with(s.kernel, picks);
  uint64_t idx = P.order() / s.kernel.order();
  if (idx != 1 && prime_power_base(idx) != p)
    throw ContractViolation("omega-1 layer is not a p-group");
  return P;
}

}  // namespace fhyper
