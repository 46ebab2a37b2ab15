#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fhyper/errors.hpp"

namespace fhyper {

using FpVec = std::vector<uint32_t>;

// Dense row-major matrix over the prime field F_p, p < 2^16.
struct FpMat {
  uint32_t p = 2;
  size_t rows = 0, cols = 0;
  std::vector<uint32_t> a;

  FpMat() = default;
  FpMat(uint32_t p_, size_t r, size_t c) : p(p_), rows(r), cols(c), a(r * c, 0) {}

  uint32_t& at(size_t r, size_t c) { return a[r * cols + c]; }
  uint32_t at(size_t r, size_t c) const { return a[r * cols + c]; }

  static FpMat identity(uint32_t p, size_t n) {
    FpMat m(p, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static FpMat from_rows(uint32_t p, const std::vector<FpVec>& rows_in) {
    if (rows_in.empty()) return FpMat(p, 0, 0);
    FpMat m(p, rows_in.size(), rows_in[0].size());
    for (size_t r = 0; r < rows_in.size(); ++r)
      for (size_t c = 0; c < m.cols; ++c) m.at(r, c) = rows_in[r][c] % p;
    return m;
  }

  friend FpMat operator*(const FpMat& x, const FpMat& y) {
    if (x.cols != y.rows || x.p != y.p) throw ContractViolation("matrix shape mismatch");
    FpMat z(x.p, x.rows, y.cols);
    for (size_t i = 0; i < x.rows; ++i)
      for (size_t k = 0; k < x.cols; ++k) {
        uint64_t v = x.at(i, k);
        if (!v) continue;
        for (size_t j = 0; j < y.cols; ++j)
          z.at(i, j) = static_cast<uint32_t>((z.at(i, j) + v * y.at(k, j)) % x.p);
      }
    return z;
  }

  FpVec apply(const FpVec& v) const {
    if (v.size() != cols) throw ContractViolation("vector length mismatch");
    FpVec out(rows, 0);
    for (size_t i = 0; i < rows; ++i) {
      uint64_t s = 0;
      for (size_t j = 0; j < cols; ++j) s += uint64_t{at(i, j)} * v[j];
      out[i] = static_cast<uint32_t>(s % p);
    }
    return out;
  }

  friend bool operator==(const FpMat&, const FpMat&) = default;
};

namespace fplin {

inline uint32_t inv_mod(uint32_t x, uint32_t p) {
  // p is prime and small
  uint32_t r = 1;
  uint64_t base = x % p, e = p - 2;
  while (e) {
    if (e & 1) r = static_cast<uint32_t>(r * base % p);
    base = base * base % p;
    e >>= 1;
  }
  return r;
}

// In-place reduced row echelon form; returns the pivot column of each
// pivot row.
inline std::vector<size_t> rref(FpMat& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
    size_t sel = row;
    while (sel < m.rows && m.at(sel, col) == 0) ++sel;
    if (sel == m.rows) continue;
    for (size_t c = 0; c < m.cols; ++c) std::swap(m.at(sel, c), m.at(row, c));
    uint32_t inv = inv_mod(m.at(row, col), m.p);
    for (size_t c = 0; c < m.cols; ++c)
      m.at(row, c) = static_cast<uint32_t>(uint64_t{m.at(row, c)} * inv % m.p);
    for (size_t r = 0; r < m.rows; ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      uint64_t f = m.at(r, col);
      for (size_t c = 0; c < m.cols; ++c)
        m.at(r, c) = static_cast<uint32_t>(
            (m.at(r, c) + (m.p - 1) * f % m.p * m.at(row, c)) % m.p);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline size_t rank(FpMat m) { return rref(m).size(); }

// Solves M x = rhs; returns one solution or nothing.
inline std::optional<FpVec> solve(const FpMat& M, const FpVec& rhs) {
  FpMat aug(M.p, M.rows, M.cols + 1);
  for (size_t r = 0; r < M.rows; ++r) {
    for (size_t c = 0; c < M.cols; ++c) aug.at(r, c) = M.at(r, c);
    aug.at(r, M.cols) = rhs[r] % M.p;
  }
  auto pivots = rref(aug);
  FpVec x(M.cols, 0);
  for (size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == M.cols) return std::nullopt;  // 0 = nonzero row
    x[pivots[i]] = aug.at(i, M.cols);
  }
  return x;
}

// Basis (as rows) of the kernel {v : M v = 0}.
inline std::vector<FpVec> nullspace(FpMat M) {
  auto pivots = rref(M);
  std::vector<bool> is_pivot(M.cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<FpVec> basis;
  for (size_t free = 0; free < M.cols; ++free) {
    if (is_pivot[free]) continue;
    FpVec v(M.cols, 0);
    v[free] = 1;
    for (size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = (M.p - M.at(i, free)) % M.p;
    basis.push_back(std::move(v));
  }
  return basis;
}

// Do two row sets span the same subspace?
inline bool same_rowspace(uint32_t p, const std::vector<FpVec>& a,
                          const std::vector<FpVec>& b) {
  auto ra = FpMat::from_rows(p, a);
  auto rb = FpMat::from_rows(p, b);
  size_t na = rank(ra), nb = rank(rb);
  if (na != nb) return false;
  std::vector<FpVec> all = a;
  all.insert(all.end(), b.begin(), b.end());
  return rank(FpMat::from_rows(p, all)) == na;
}

inline bool in_rowspace(uint32_t p, const std::vector<FpVec>& basis, const FpVec& v) {
  auto m = FpMat::from_rows(p, basis);
  size_t r0 = rank(m);
  std::vector<FpVec> all = basis;
  all.push_back(v);
  return rank(FpMat::from_rows(p, all)) == r0;
}

}  // namespace fplin
}  // namespace fhyper
