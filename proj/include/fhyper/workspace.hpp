#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "fhyper/group.hpp"

namespace fhyper {

struct Bounds {
  // Hard cap on bounded-exhaustive element/coset enumeration.
  uint64_t element_bound = uint64_t{1} << 20;
  // Cap for whole-subgroup-lattice style oracles.
  uint64_t tiny_cap = 512;
  // Below this size chief-series layers are refined by direct coset
  // enumeration; above it provably normal splits are inserted first.
  uint64_t refine_enum_limit = 4096;
};

// Cache keyed by a tuple of subgroups plus a short tag.  Hash hits are
// confirmed by exact subgroup equality, so different generating sets of the
// same subgroup share entries and collisions are harmless.
template <typename V>
class SubgroupCache {
 public:
  const V* find(const std::string& tag, const std::vector<PermGroup>& key) const {
    auto it = map_.find(hash_key(tag, key));
    if (it == map_.end()) return nullptr;
    for (const auto& e : it->second)
      if (matches(e.key, key)) return &e.value;
    return nullptr;
  }

  void put(const std::string& tag, const std::vector<PermGroup>& key, V value) {
    auto& bucket = map_[hash_key(tag, key)];
    for (auto& e : bucket)
      if (matches(e.key, key)) {
        e.value = std::move(value);
        return;
      }
    bucket.push_back({key, std::move(value)});
  }

  size_t size() const {
    size_t n = 0;
    for (auto& [h, b] : map_) n += b.size();
    return n;
  }

 private:
  struct Entry {
    std::vector<PermGroup> key;
    V value;
  };
  std::unordered_map<uint64_t, std::vector<Entry>> map_;

  static uint64_t hash_key(const std::string& tag, const std::vector<PermGroup>& key) {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&](uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    for (char c : tag) mix(static_cast<unsigned char>(c));
    for (const auto& g : key) mix(subgroup_invariant_hash(g));
    return h;
  }

  static bool matches(const std::vector<PermGroup>& a, const std::vector<PermGroup>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (!same_subgroup(a[i], b[i])) return false;
    return true;
  }
};

// Per-computation state: bound configuration, seed, and memo tables for the
// expensive structural subroutines.  One workspace per task; no sharing
// across concurrently running computations is required.
struct Workspace {
  Bounds bounds;
  uint64_t seed = 0;

  SubgroupCache<std::vector<PermGroup>> series_cache;    // chief series terms
  SubgroupCache<std::vector<PermGroup>> minnorm_cache;   // minimal normal subgroups
  SubgroupCache<PermGroup> subgroup_cache;               // residuals, cores, ...
  SubgroupCache<bool> flag_cache;                        // membership verdicts
};

}  // namespace fhyper
