#pragma once

#include <cassert>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <vector>

#include "fhyper/errors.hpp"
#include "fhyper/perm.hpp"

namespace fhyper {

struct BuildOptions {
  uint64_t seed = 0;
  bool randomized_boost = false;  // seeded pre-sifting of random words; the
                                  // deterministic closure below verifies it
};

// Base and strong generating set via incremental deterministic Schreier-Sims.
// Level i stores the fundamental orbit of base_i under the strong generators
// that fix base_0..base_{i-1} ("the view of level i"), with a transversal
// t_pt mapping base_i to pt.  Elements decompose as t_{r} * ... * t_{0}
// (deepest level applied first), which is what sift() peels off.
class StabilizerChain {
 public:
  struct Level {
    Point base;
    std::vector<Point> orbit;            // discovery order; orbit[0] == base
    std::vector<int32_t> where;          // point -> index into orbit, or -1
    std::vector<Permutation> transversal;
  };

  StabilizerChain() : degree_(0) {}

  static StabilizerChain build(uint32_t degree, const std::vector<Permutation>& gens,
                               const std::vector<uint32_t>* point_rank = nullptr,
                               const BuildOptions& opt = {}) {
    StabilizerChain c;
    c.degree_ = degree;
    if (point_rank) {
      if (point_rank->size() != degree)
        throw ContractViolation("point rank table has wrong size");
      c.rank_ = *point_rank;
    } else {
      c.rank_.resize(degree);
      for (uint32_t i = 0; i < degree; ++i) c.rank_[i] = i;
    }
    for (const auto& g : gens) {
      if (g.degree() != degree) throw DegreeMismatch(g.degree(), degree);
      c.insert(g);
    }
    if (opt.randomized_boost && !gens.empty()) {
      std::mt19937_64 rng(opt.seed);
      std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
      for (int w = 0; w < 8; ++w) {
        Permutation word(degree);
        for (int l = 0; l < 6; ++l) word = word * gens[pick(rng)];
        c.insert(word);
      }
    }
    c.complete();
    return c;
  }

  uint32_t degree() const { return degree_; }
  const std::vector<Level>& levels() const { return levels_; }

  uint64_t order() const {
    uint64_t o = 1;
    for (const auto& lv : levels_) o *= lv.orbit.size();
    return o;
  }

  // Strips x through the chain; identity residue means membership.
  Permutation sift(const Permutation& x) const {
    Permutation r = x;
    for (const auto& lv : levels_) {
      Point o = r.apply(lv.base);
      if (o == lv.base) continue;
      int32_t k = lv.where[o];
      if (k < 0) return r;
      r = r * lv.transversal[k].inverse();
    }
    return r;
  }

  bool contains(const Permutation& x) const {
    if (x.degree() != degree_) throw DegreeMismatch(x.degree(), degree_);
    return sift(x).is_identity();
  }

  // Inserts a new group element as a generator and re-closes the chain.
  void extend(const Permutation& g) {
    if (g.degree() != degree_) throw DegreeMismatch(g.degree(), degree_);
    insert(g);
    complete();
  }

 private:
  uint32_t degree_;
  std::vector<uint32_t> rank_;
  std::vector<Level> levels_;
  std::vector<Permutation> sgens_;
  std::vector<size_t> sgen_level_;  // deepest level whose view owns the gen
  // Pending Schreier pairs (orbit index, strong generator id) per level.
  std::vector<std::deque<std::pair<size_t, size_t>>> pending_;

  bool in_view(size_t gid, size_t level) const { return sgen_level_[gid] >= level; }

  void insert(const Permutation& g) {
    if (g.is_identity()) return;
    insert_below(0, g);
  }

  void try_reach(size_t level, size_t k, size_t gid) {
    Level& lv = levels_[level];
    Point q = sgens_[gid].apply(lv.orbit[k]);
    if (lv.where[q] >= 0) return;
    lv.where[q] = static_cast<int32_t>(lv.orbit.size());
    lv.orbit.push_back(q);
    lv.transversal.push_back(lv.transversal[k] * sgens_[gid]);
    size_t nk = lv.orbit.size() - 1;
    for (size_t g2 = 0; g2 < sgens_.size(); ++g2)
      if (in_view(g2, level)) pending_[level].push_back({nk, g2});
  }

  void extend_orbit(size_t level, size_t gid) {
    size_t old = levels_[level].orbit.size();
    for (size_t k = 0; k < old; ++k) try_reach(level, k, gid);
    for (size_t k = old; k < levels_[level].orbit.size(); ++k)
      for (size_t g2 = 0; g2 < sgens_.size(); ++g2)
        if (in_view(g2, level)) try_reach(level, k, g2);
  }

  void complete() {
    for (;;) {
      size_t i = levels_.size();
      while (i > 0 && pending_[i - 1].empty()) --i;
      if (i == 0) break;
      --i;  // deepest level with pending pairs
      auto [k, gid] = pending_[i].front();
      pending_[i].pop_front();
      const Level& lv = levels_[i];
      Point target = sgens_[gid].apply(lv.orbit[k]);
      assert(lv.where[target] >= 0);
      Permutation u =
          lv.transversal[k] * sgens_[gid] * lv.transversal[lv.where[target]].inverse();
      if (u.is_identity()) continue;
      insert_below(i + 1, u);
    }
  }

  // Like insert(), but the element is known to fix base_0..base_{from-1}.
  void insert_below(size_t from, Permutation r) {
    size_t stuck = levels_.size();
    for (size_t j = from; j < levels_.size(); ++j) {
      Point o = r.apply(levels_[j].base);
      if (o == levels_[j].base) continue;
      int32_t k = levels_[j].where[o];
      if (k < 0) {
        stuck = j;
        break;
      }
      r = r * levels_[j].transversal[k].inverse();
      if (r.is_identity()) return;
    }
    if (r.is_identity()) return;
    if (stuck == levels_.size()) {
      Point best = degree_;
      for (Point p = 0; p < degree_; ++p)
        if (r.apply(p) != p && (best == degree_ || rank_[p] < rank_[best])) best = p;
      assert(best < degree_);
      Level lv;
      lv.base = best;
      lv.orbit = {best};
      lv.where.assign(degree_, -1);
      lv.where[best] = 0;
      lv.transversal = {Permutation(degree_)};
      levels_.push_back(std::move(lv));
      pending_.emplace_back();
    }
    size_t gid = sgens_.size();
    sgens_.push_back(std::move(r));
    sgen_level_.push_back(stuck);
    for (size_t i = 0; i <= stuck; ++i) {
      for (size_t k = 0; k < levels_[i].orbit.size(); ++k) pending_[i].push_back({k, gid});
      extend_orbit(i, gid);
    }
  }
};

}  // namespace fhyper
