#pragma once

// Realization of canonical blocks as dense pencils and the symbolic
// conversions between block multisets and eigenstructure records.

#include <stdexcept>
#include <vector>

#include "skewcanon/blocks.hpp"
#include "skewcanon/pencil.hpp"

namespace skewcanon {

namespace detail {

// k x k Jordan block: mu on the diagonal, ones on the superdiagonal.
inline Matrix jordan(int k, cplx mu) {
  Matrix J = Matrix::Zero(k, k);
  for (int i = 0; i < k; ++i) J(i, i) = mu;
  for (int i = 0; i + 1 < k; ++i) J(i, i + 1) = 1.0;
  return J;
}
// k x (k+1), identity in the first k columns.
inline Matrix g_strip(int k) {
  Matrix G = Matrix::Zero(k, k + 1);
  for (int i = 0; i < k; ++i) G(i, i) = 1.0;
  return G;
}
// k x (k+1), identity in the last k columns.
inline Matrix f_strip(int k) {
  Matrix F = Matrix::Zero(k, k + 1);
  for (int i = 0; i < k; ++i) F(i, i + 1) = 1.0;
  return F;
}
// [[0, U], [-U^T, 0]] with U of shape r x c.
inline Matrix skew_wrap(const Matrix& U) {
  const Eigen::Index r = U.rows(), c = U.cols();
  Matrix S = Matrix::Zero(r + c, r + c);
  S.topRightCorner(r, c) = U;
  S.bottomLeftCorner(c, r) = -U.transpose();
  return S;
}

inline Pencil direct_sum(const std::vector<Pencil>& parts) {
  int r = 0, c = 0;
  for (const auto& p : parts) {
    r += p.rows();
    c += p.cols();
  }
  Matrix A = Matrix::Zero(r, c), B = Matrix::Zero(r, c);
  int i = 0, j = 0;
  for (const auto& p : parts) {
    A.block(i, j, p.rows(), p.cols()) = p.A;
    B.block(i, j, p.rows(), p.cols()) = p.B;
    i += p.rows();
    j += p.cols();
  }
  return Pencil(std::move(A), std::move(B));
}

}  // namespace detail

// Dense pencil of one Kronecker block.
inline Pencil build_block(const KcfBlock& b) {
  using detail::f_strip;
  using detail::g_strip;
  using detail::jordan;
  switch (b.kind) {
    case KcfBlock::Kind::E:
      if (b.eig.is_symbolic())
        throw std::invalid_argument("unrealizable symbolic eigenvalue " + b.eig.label());
      if (b.eig.is_infinite()) return Pencil(jordan(b.size, 0.0), Matrix::Identity(b.size, b.size));
      return Pencil(Matrix::Identity(b.size, b.size), jordan(b.size, b.eig.value()));
    case KcfBlock::Kind::L:
      return Pencil(g_strip(b.size), f_strip(b.size));
    case KcfBlock::Kind::LT:
      return Pencil(g_strip(b.size).transpose(), f_strip(b.size).transpose());
  }
  throw std::logic_error("unknown block kind");
}

// Dense pencil of one skew canonical block; exactly skew-symmetric.
inline Pencil build_block(const SkewBlock& b) {
  using detail::skew_wrap;
  switch (b.kind) {
    case SkewBlock::Kind::H:
      if (b.eig.is_symbolic())
        throw std::invalid_argument("unrealizable symbolic eigenvalue " + b.eig.label());
      return Pencil(skew_wrap(Matrix::Identity(b.size, b.size)),
                    skew_wrap(detail::jordan(b.size, b.eig.value())));
    case SkewBlock::Kind::K:
      return Pencil(skew_wrap(detail::jordan(b.size, 0.0)),
                    skew_wrap(Matrix::Identity(b.size, b.size)));
    case SkewBlock::Kind::M:
      return Pencil(skew_wrap(detail::g_strip(b.size)), skew_wrap(detail::f_strip(b.size)));
  }
  throw std::logic_error("unknown block kind");
}

// Direct sum of the blocks in canonical (sorted) order.
inline Pencil realize_kcf(const Kcf& k) {
  std::vector<Pencil> parts;
  parts.reserve(k.blocks().size());
  for (const auto& b : k.blocks()) parts.push_back(build_block(b));
  return detail::direct_sum(parts);
}

// Direct sum of the skew blocks in canonical (sorted) order; exactly skew.
inline Pencil realize_skew_kcf(const SkewKcf& s) {
  std::vector<Pencil> parts;
  parts.reserve(s.blocks().size());
  for (const auto& b : s.blocks()) parts.push_back(build_block(b));
  return detail::direct_sum(parts);
}

// Kronecker structure underlying a skew canonical form:
//   H_h(mu) -> E_h(mu) + E_h(mu),  K_k -> E_k(inf) + E_k(inf),  M_m -> L_m + LT_m.
inline Kcf skew_to_kcf(const SkewKcf& s) {
  std::vector<KcfBlock> out;
  out.reserve(2 * s.blocks().size());
  for (const auto& b : s.blocks()) {
    switch (b.kind) {
      case SkewBlock::Kind::H:
        out.push_back(KcfBlock::regular(b.eig, b.size));
        out.push_back(KcfBlock::regular(b.eig, b.size));
        break;
      case SkewBlock::Kind::K:
        out.push_back(KcfBlock::regular(Eigenvalue::infinity(), b.size));
        out.push_back(KcfBlock::regular(Eigenvalue::infinity(), b.size));
        break;
      case SkewBlock::Kind::M:
        out.push_back(KcfBlock::right_singular(b.size));
        out.push_back(KcfBlock::left_singular(b.size));
        break;
    }
  }
  return Kcf(std::move(out));
}

// Eigenstructure described by a Kronecker form.  Only grade 1 is meaningful:
// a KCF is a pencil canonical form, and minimal indices do not transfer to
// other grades unshifted.
inline EigStruct eigstruct_of_kcf(const Kcf& k, int grade = 1) {
  if (grade != 1)
    throw std::invalid_argument("a Kronecker form describes a grade-1 structure; got grade " +
                                std::to_string(grade));
  EigStruct e;
  for (const auto& b : k.blocks()) {
    switch (b.kind) {
      case KcfBlock::Kind::E:
        if (b.eig.is_infinite())
          e.infinite.push_back(b.size);
        else
          e.finite.emplace_back(b.eig, b.size);
        break;
      case KcfBlock::Kind::L:
        e.right.push_back(b.size);
        break;
      case KcfBlock::Kind::LT:
        e.left.push_back(b.size);
        break;
    }
  }
  e.normalize();
  // Flag structures that satisfy the skew pairing constraints.
  e.skew = true;
  try {
    e.validate();
  } catch (const std::invalid_argument&) {
    e.skew = false;
  }
  return e;
}

inline Kcf kcf_of_eigstruct(const EigStruct& e) {
  e.validate();
  std::vector<KcfBlock> blocks;
  for (const auto& [eig, deg] : e.finite) blocks.push_back(KcfBlock::regular(eig, deg));
  for (int d : e.infinite) blocks.push_back(KcfBlock::regular(Eigenvalue::infinity(), d));
  for (int k : e.right) blocks.push_back(KcfBlock::right_singular(k));
  for (int k : e.left) blocks.push_back(KcfBlock::left_singular(k));
  return Kcf(std::move(blocks));
}

// Degree-sum identity for a grade-d polynomial of normal rank r:
// total divisor degree + total minimal indices == d * r.
inline bool index_sum_check(const EigStruct& e, int grade, int rank) {
  return e.divisor_degree_sum() + e.index_sum() == grade * rank;
}

}  // namespace skewcanon
