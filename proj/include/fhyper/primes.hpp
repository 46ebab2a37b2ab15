#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "fhyper/errors.hpp"

namespace fhyper {

// Orders of permutation groups of degree n only involve primes <= n, so
// trial division is always cheap here.
inline std::map<uint32_t, uint32_t> factorize(uint64_t m) {
  std::map<uint32_t, uint32_t> out;
  for (uint64_t p = 2; p * p <= m; ++p) {
    while (m % p == 0) {
      ++out[static_cast<uint32_t>(p)];
      m /= p;
    }
  }
  if (m > 1) ++out[static_cast<uint32_t>(m)];
  return out;
}

inline std::set<uint32_t> prime_support(uint64_t m) {
  std::set<uint32_t> out;
  for (auto& [p, e] : factorize(m)) out.insert(p);
  return out;
}

inline bool is_prime(uint64_t m) {
  if (m < 2) return false;
  for (uint64_t p = 2; p * p <= m; ++p)
    if (m % p == 0) return false;
  return true;
}

// Returns p if m is a nontrivial power of the prime p, otherwise 0.
inline uint32_t prime_power_base(uint64_t m) {
  if (m < 2) return 0;
  auto f = factorize(m);
  return f.size() == 1 ? f.begin()->first : 0;
}

// Largest divisor of m supported on pi.
inline uint64_t pi_part(uint64_t m, const std::set<uint32_t>& pi) {
  uint64_t a = 1;
  for (auto& [p, e] : factorize(m))
    if (pi.count(p))
      for (uint32_t i = 0; i < e; ++i) a *= p;
  return a;
}

inline bool is_pi_number(uint64_t m, const std::set<uint32_t>& pi) {
  return pi_part(m, pi) == m;
}

inline std::vector<uint64_t> divisors_sorted(uint64_t m) {
  std::vector<uint64_t> ds{1};
  for (auto& [p, e] : factorize(m)) {
    size_t base = ds.size();
    uint64_t q = 1;
    for (uint32_t i = 0; i < e; ++i) {
      q *= p;
      for (size_t j = 0; j < base; ++j) ds.push_back(ds[j] * q);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

namespace detail {
inline int64_t egcd(int64_t a, int64_t b, int64_t& x, int64_t& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  int64_t x1, y1;
  int64_t g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}
}  // namespace detail

// Solves e == 0 (mod a), e == 1 (mod b) for coprime a, b; used to split an
// element of order a*b into commuting parts.
inline uint64_t crt_zero_one(uint64_t a, uint64_t b) {
  if (a == 1) return 1;
  if (b == 1) return 0;
  int64_t x, y;
  detail::egcd(static_cast<int64_t>(a % b), static_cast<int64_t>(b), x, y);
  // a*x == 1 (mod b)
  int64_t s = ((x % static_cast<int64_t>(b)) + static_cast<int64_t>(b)) %
              static_cast<int64_t>(b);
  return a * static_cast<uint64_t>(s);
}

}  // namespace fhyper
