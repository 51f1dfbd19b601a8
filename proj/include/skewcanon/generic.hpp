#pragma once

// Closed-form generic canonical structures for bounded-rank skew-symmetric
// pencils and odd-grade skew-symmetric matrix polynomials, together with the
// orbit codimension counts.  Everything here is exact integer arithmetic.

#include <stdexcept>
#include <string>
#include <vector>

#include "skewcanon/blocks.hpp"
#include "skewcanon/canon.hpp"

namespace skewcanon {

// Generic skew pencil of size n with rank 2w: the singular blocks spread the
// w right (and w left) minimal indices as evenly as possible across the
// n - 2w M blocks.  Requires n >= 2 and 2 <= 2w <= n - 1.
inline SkewKcf generic_skew_pencil(int n, int w) {
  if (n < 2) throw std::invalid_argument("generic_skew_pencil needs n >= 2");
  if (w < 1 || 2 * w > n - 1)
    throw std::invalid_argument("generic_skew_pencil needs 2 <= 2w <= n-1; got n=" +
                                std::to_string(n) + ", w=" + std::to_string(w));
  const int parts = n - 2 * w;
  const int alpha = w / parts;
  const int s = w % parts;
  std::vector<SkewBlock> blocks;
  blocks.reserve(parts);
  for (int i = 0; i < s; ++i) blocks.push_back(SkewBlock::m_block(alpha + 1));
  for (int i = 0; i < parts - s; ++i) blocks.push_back(SkewBlock::m_block(alpha));
  return SkewKcf(std::move(blocks));
}

// Generic regular skew pencil of even size n: n/2 H_1 blocks with pairwise
// distinct eigenvalues.
inline SkewKcf generic_skew_regular(int n, const std::vector<Eigenvalue>& eigs) {
  if (n < 2 || n % 2) throw std::invalid_argument("generic_skew_regular needs even n >= 2");
  if (static_cast<int>(eigs.size()) != n / 2)
    throw std::invalid_argument("generic_skew_regular needs exactly n/2 eigenvalues");
  std::vector<SkewBlock> blocks;
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    if (eigs[i].is_infinite())
      throw std::invalid_argument("generic_skew_regular eigenvalues must be finite");
    for (std::size_t j = i + 1; j < eigs.size(); ++j)
      if (eigs[i] == eigs[j])
        throw std::invalid_argument("repeated eigenvalue " + eigs[i].to_string());
    blocks.push_back(SkewBlock::h_block(eigs[i], 1));
  }
  return SkewKcf(std::move(blocks));
}

// Generic p x q pencil of full normal rank min(p, q): only singular blocks of
// one kind, sizes as equal as possible.  Requires p != q.
inline Kcf generic_rect_full_rank(int p, int q) {
  if (p < 0 || q < 0) throw std::invalid_argument("generic_rect_full_rank needs nonnegative sizes");
  if (p == q)
    throw std::invalid_argument("generic_rect_full_rank needs p != q; square full-rank pencils are regular");
  const bool wide = p < q;
  const int lo = wide ? p : q, hi = wide ? q : p;
  const int parts = hi - lo;
  const int a = lo / parts, s = lo % parts;
  std::vector<KcfBlock> blocks;
  for (int i = 0; i < s; ++i)
    blocks.push_back(wide ? KcfBlock::right_singular(a + 1) : KcfBlock::left_singular(a + 1));
  for (int i = 0; i < parts - s; ++i)
    blocks.push_back(wide ? KcfBlock::right_singular(a) : KcfBlock::left_singular(a));
  return Kcf(std::move(blocks));
}

// Generic eigenstructure of an m x m skew polynomial of odd grade d and
// normal rank 2r: no elementary divisors, and m - 2r minimal indices on each
// side, as equal as possible, summing to r*d per side.
inline EigStruct generic_skew_poly(int m, int r, int d) {
  if (d < 1 || d % 2 == 0) throw std::invalid_argument("generic_skew_poly needs odd grade d >= 1");
  if (r < 1 || 2 * r > m - 1)
    throw std::invalid_argument("generic_skew_poly needs 2 <= 2r <= m-1; got m=" +
                                std::to_string(m) + ", r=" + std::to_string(r));
  const int parts = m - 2 * r;
  const int beta = (r * d) / parts;
  const int t = (r * d) % parts;
  EigStruct e;
  for (int i = 0; i < t; ++i) e.right.push_back(beta + 1);
  for (int i = 0; i < parts - t; ++i) e.right.push_back(beta);
  e.left = e.right;
  e.skew = true;
  e.normalize();
  return e;
}

// Orbit codimension of an M-only skew form (the congruence-orbit count):
// sum over unordered block pairs of 2*max(m_i, m_j) + (2 if m_i == m_j else 1).
inline long long codim_sum_formula(const SkewKcf& s) {
  std::vector<int> m;
  for (const auto& b : s.blocks()) {
    if (b.kind != SkewBlock::Kind::M)
      throw std::invalid_argument("codim_sum_formula applies to M-only forms; got " + b.to_string());
    m.push_back(b.size);
  }
  long long c = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      c += 2LL * std::max(m[i], m[j]) + (m[i] == m[j] ? 2 : 1);
  return c;
}

// Closed form of the same count for generic_skew_pencil(n, w).
inline long long codim_closed_form(int n, int w) {
  return static_cast<long long>(n - 2 * w - 1) * (n - w);
}

// Codimension of the generic rank-2r stratum of m x m skew polynomials of
// odd grade d, inside the skew polynomial space.
inline long long codim_poly(int m, int r, int d) {
  if (d < 1 || d % 2 == 0) throw std::invalid_argument("codim_poly needs odd grade d >= 1");
  return static_cast<long long>(m - 2 * r - 1) *
         (static_cast<long long>(m) * (d + 1) - 2 * r) / 2;
}

// Size and rank parameter of the shifted pencil structure carrying the
// generic rank-2r grade-d polynomial structure: n = m*d, 2w = m*(d-1) + 2r.
inline std::pair<int, int> pencil_params_of_poly(int m, int r, int d) {
  if (d < 1 || d % 2 == 0) throw std::invalid_argument("pencil_params_of_poly needs odd grade d >= 1");
  return {m * d, (m * (d - 1) + 2 * r) / 2};
}

// Kronecker structure of the companion-form pencil of an odd-grade skew
// polynomial with eigenstructure e: elementary divisors carry over, each
// minimal index shifts up by (d-1)/2 on both sides.
inline Kcf shifted_linearization_structure(const EigStruct& e, int d) {
  if (d < 1 || d % 2 == 0)
    throw std::invalid_argument("shifted_linearization_structure needs odd grade d >= 1");
  e.validate();
  if (!e.skew && e.left != e.right)
    throw std::invalid_argument("shifted_linearization_structure needs a skew eigenstructure");
  const int shift = (d - 1) / 2;
  std::vector<KcfBlock> blocks;
  for (const auto& [eig, deg] : e.finite) blocks.push_back(KcfBlock::regular(eig, deg));
  for (int deg : e.infinite) blocks.push_back(KcfBlock::regular(Eigenvalue::infinity(), deg));
  for (int k : e.right) blocks.push_back(KcfBlock::right_singular(k + shift));
  for (int k : e.left) blocks.push_back(KcfBlock::left_singular(k + shift));
  return Kcf(std::move(blocks));
}

}  // namespace skewcanon
