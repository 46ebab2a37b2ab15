#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fhyper/linalg_fp.hpp"
#include "fhyper/section.hpp"
#include "fhyper/structure.hpp"
#include "fhyper/workspace.hpp"

namespace fhyper {

// An elementary abelian section P/Z seen as a vector space over F_p.  The
// table maps every coset (by canonical fingerprint) to its coordinates; the
// basis holds one representative per unit vector.
struct VectorModel {
  uint32_t p = 2;
  uint32_t dim = 0;
  Section section;  // (P, Z)
  std::vector<Permutation> basis;
  std::unordered_map<std::vector<Point>, FpVec, PointVecHash> table;
  std::vector<Permutation> rep_by_code;  // mixed-radix coords -> representative

  uint64_t code(const FpVec& v) const {
    uint64_t c = 0;
    for (size_t i = 0; i < v.size(); ++i) c = c * p + v[i];
    return c;
  }

  const FpVec& coords(const Permutation& x) const {
    auto fp = coset_fingerprint(section.kernel, x);
    auto it = table.find(fp);
    if (it == table.end())
      throw ContractViolation("coset escapes the coordinate table");
    return it->second;
  }

  const Permutation& representative(const FpVec& v) const { return rep_by_code[code(v)]; }
};

// Builds the coordinate table by breadth-first closure: each coset not yet
// in the span becomes a new basis vector and the table is extended by all
// linear combinations with it.
inline VectorModel coordinatize(Workspace& ws, const PermGroup& P, const PermGroup& Z,
                                uint32_t p) {
  if (!is_prime(p)) throw ContractViolation("coordinatize: p is not prime");
  Section s = Section::make(P, Z);
  auto reps = enumerate_cosets(s, ws.bounds.element_bound, "coordinatize");
  // Elementary abelian checks: orders divide p, generators commute mod Z.
  for (const auto& r : reps)
    if (!Z.contains(r.power(p)))
      throw NotElementaryAbelian("a coset has order exceeding " + std::to_string(p));
  for (const auto& a : P.generators())
    for (const auto& b : P.generators())
      if (!Z.contains(Permutation::commutator(a, b)))
        throw NotElementaryAbelian("commutators leave the kernel");

  VectorModel m;
  m.p = p;
  m.section = s;

  struct Entry {
    Permutation rep;
    FpVec coords;
  };
  std::vector<Entry> entries{{reps[0], FpVec{}}};
  m.table.emplace(coset_fingerprint(Z, reps[0]), FpVec{});
  for (const auto& r : reps) {
    if (m.table.count(coset_fingerprint(Z, r))) continue;
    // New basis vector: extend every known entry by r^j.
    m.basis.push_back(r);
    std::vector<Entry> snapshot = entries;
    for (auto& e : entries) e.coords.push_back(0);
    for (auto& [fp, v] : m.table) v.push_back(0);
    Permutation rj = r;
    for (uint32_t j = 1; j < p; ++j) {
      for (const auto& e : snapshot) {
        Entry ne;
        ne.rep = canonical_coset_rep(Z, e.rep * rj);
        ne.coords = e.coords;
        ne.coords.push_back(j);
        m.table.emplace(
            std::vector<Point>(ne.rep.images().begin(), ne.rep.images().end()),
            ne.coords);
        entries.push_back(std::move(ne));
      }
      rj = rj * r;
    }
  }
  m.dim = static_cast<uint32_t>(m.basis.size());
  if (m.table.size() != reps.size())
    throw ContractViolation("coordinate table is not total");
  m.rep_by_code.resize(entries.size(), Permutation(P.degree()));
  for (const auto& e : entries) m.rep_by_code[m.code(e.coords)] = e.rep;
  return m;
}

struct ActionMatrix {
  std::string label;
  FpMat mat;
};

// One matrix per generator of G: column i holds the coordinates of the
// conjugate of basis vector i.  A conjugate outside the table means P is not
// normalized by G, which is a caller contract violation.
inline std::vector<ActionMatrix> action_matrices(const VectorModel& m, const PermGroup& G) {
  std::vector<ActionMatrix> out;
  for (size_t gi = 0; gi < G.generators().size(); ++gi) {
    const auto& g = G.generators()[gi];
    FpMat a(m.p, m.dim, m.dim);
    for (uint32_t i = 0; i < m.dim; ++i) {
      FpVec col = m.coords(m.basis[i].conjugated_by(g));
      for (uint32_t r = 0; r < m.dim; ++r) a.at(r, i) = col[r];
    }
    if (fplin::rank(a) != m.dim)
      throw ContractViolation("action matrix is singular");
    out.push_back({"g" + std::to_string(gi), std::move(a)});
  }
  return out;
}

// G-invariant direct complement of the invariant subspace U, if one exists:
// solves for a projection onto U commuting with every action matrix and
// returns a basis of its kernel.  U and the result are row lists.
inline std::optional<std::vector<FpVec>> equivariant_complement(
    const VectorModel& m, const std::vector<ActionMatrix>& actions,
    const std::vector<FpVec>& u_basis) {
  const uint32_t p = m.p;
  const size_t d = m.dim;
  const size_t k = u_basis.size();
  for (const auto& act : actions)
    for (const auto& u : u_basis)
      if (!fplin::in_rowspace(p, u_basis, act.mat.apply(u)))
        throw ContractViolation("subspace is not invariant under the action");
  if (k == 0) {
    std::vector<FpVec> whole;
    for (size_t i = 0; i < d; ++i) {
      FpVec e(d, 0);
      e[i] = 1;
      whole.push_back(std::move(e));
    }
    return whole;
  }
  // Projection pi = B * Y with B the d x k matrix of U-basis columns and Y a
  // k x d unknown; the image is inside U by construction.  Constraints:
  // pi restricted to U is the identity, and pi commutes with every action.
  FpMat B(p, d, k);
  for (size_t j = 0; j < k; ++j)
    for (size_t i = 0; i < d; ++i) B.at(i, j) = u_basis[j][i] % p;

  auto unknown = [&](size_t r, size_t c) { return r * d + c; };
  std::vector<FpVec> eq_rows;
  FpVec rhs;
  // B Y u = u for each basis vector u.
  for (const auto& u : u_basis) {
    for (size_t i = 0; i < d; ++i) {
      FpVec row(k * d, 0);
      for (size_t r = 0; r < k; ++r)
        for (size_t c = 0; c < d; ++c)
          row[unknown(r, c)] =
              static_cast<uint32_t>((row[unknown(r, c)] + uint64_t{B.at(i, r)} * u[c]) % p);
      eq_rows.push_back(std::move(row));
      rhs.push_back(u[i] % p);
    }
  }
  // A (B Y) = (B Y) A for each action matrix A.
  for (const auto& act : actions) {
    FpMat AB = act.mat * B;
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) {
        FpVec row(k * d, 0);
        for (size_t r = 0; r < k; ++r) {
          row[unknown(r, j)] =
              static_cast<uint32_t>((row[unknown(r, j)] + AB.at(i, r)) % p);
          uint64_t f = B.at(i, r);
          if (f)
            for (size_t c = 0; c < d; ++c)
              row[unknown(r, c)] = static_cast<uint32_t>(
                  (row[unknown(r, c)] + (p - 1) * f % p * act.mat.at(c, j)) % p);
        }
        eq_rows.push_back(std::move(row));
        rhs.push_back(0);
      }
  }
  FpMat M = FpMat::from_rows(p, eq_rows);
  auto y = fplin::solve(M, rhs);
  if (!y) return std::nullopt;
  FpMat Y(p, k, d);
  for (size_t r = 0; r < k; ++r)
    for (size_t c = 0; c < d; ++c) Y.at(r, c) = (*y)[unknown(r, c)];
  FpMat pi = B * Y;
  auto w = fplin::nullspace(pi);
  // pi^2 = pi follows from the constraints; check the complement exactly.
  if (w.size() + k != d) throw ContractViolation("complement has wrong dimension");
  std::vector<FpVec> stacked = u_basis;
  stacked.insert(stacked.end(), w.begin(), w.end());
  if (fplin::rank(FpMat::from_rows(p, stacked)) != d)
    throw ContractViolation("complement does not span with the subspace");
  for (const auto& act : actions)
    for (const auto& v : w)
      if (!fplin::in_rowspace(p, w, act.mat.apply(v)))
        throw ContractViolation("complement is not invariant");
  return w;
}

// Preimage subgroup of a coordinate subspace, joined with the kernel.
inline PermGroup subspace_preimage(const VectorModel& m, const std::vector<FpVec>& basis) {
  std::vector<Permutation> picks;
  for (const auto& v : basis) picks.push_back(m.representative(v));
  return join_with(m.section.kernel, picks);
}

}  // namespace fhyper
