#pragma once

// Skew-symmetric companion linearization for odd grade, its inverse, and the
// minimal-index shift relating a polynomial's structure to its
// linearization's.

#include <stdexcept>
#include <string>

#include "skewcanon/blocks.hpp"
#include "skewcanon/pencil.hpp"

namespace skewcanon {

struct GsylPencil {
  Pencil pencil;
  int m = 0;  // coefficient size
  int d = 0;  // grade of the linearized polynomial
};

// Block template, d odd, d x d blocks of size m x m.  With A(i,j)/B(i,j)
// denoting the blocks of the pencil lambda*A - B (1-based):
//   odd i:        A(i,i) = A_{d-i+1},  B(i,i) = -A_{d-i}
//   odd i,  i<d:  B(i,i+1) = I,  B(i+1,i) = -I
//   even i:       A(i,i+1) = -I, A(i+1,i) = I
// and every other block is zero.  Both A and B are skew whenever the
// coefficients are, and the pencil shares the elementary divisors of P while
// shifting every minimal index up by (d-1)/2.
inline GsylPencil linearize(const MatPoly& p) {
  if (p.rows() != p.cols())
    throw std::invalid_argument("linearize needs a square polynomial");
  if (!is_exactly_skew(p))
    throw std::invalid_argument("linearize needs exactly skew-symmetric coefficients");
  const int d = p.grade();
  if (d % 2 == 0)
    throw std::invalid_argument("no skew companion form for even grade " + std::to_string(d));
  const int m = p.rows();
  const int n = d * m;
  Matrix A = Matrix::Zero(n, n), B = Matrix::Zero(n, n);
  const Matrix id = Matrix::Identity(m, m);
  const auto at = [m](Matrix& M, int i, int j) {
    return M.block((i - 1) * m, (j - 1) * m, m, m);
  };
  for (int i = 1; i <= d; ++i) {
    if (i % 2 == 1) {
      at(A, i, i) = p.coeffs[d - i + 1];
      at(B, i, i) = -p.coeffs[d - i];
      if (i < d) {
        at(B, i, i + 1) = id;
        at(B, i + 1, i) = -id;
      }
    } else {
      at(A, i, i + 1) = -id;
      at(A, i + 1, i) = id;
    }
  }
  return GsylPencil{Pencil(std::move(A), std::move(B)), m, d};
}

namespace linearize_detail {
inline void require_gsyl(bool ok, int i, int j) {
  if (!ok)
    throw std::invalid_argument("not in GSYL form: block (" + std::to_string(i) + "," +
                                std::to_string(j) + ") deviates from the template");
}
}  // namespace linearize_detail

// Inverse of linearize: validates every block of the pencil against the
// template and reads the coefficients back.  Throws std::invalid_argument
// naming the first offending block.
inline MatPoly extract(const GsylPencil& g) {
  const int m = g.m, d = g.d;
  if (m < 1 || d < 1 || d % 2 == 0)
    throw std::invalid_argument("extract needs m >= 1 and odd d >= 1");
  if (g.pencil.rows() != d * m || g.pencil.cols() != d * m)
    throw std::invalid_argument("extract needs a " + std::to_string(d * m) + "x" +
                                std::to_string(d * m) + " pencil for m=" + std::to_string(m) +
                                ", d=" + std::to_string(d));
  const Matrix& A = g.pencil.A;
  const Matrix& B = g.pencil.B;
  const Matrix id = Matrix::Identity(m, m);
  const auto blk = [m](const Matrix& M, int i, int j) {
    return M.block((i - 1) * m, (j - 1) * m, m, m);
  };
  using linearize_detail::require_gsyl;

  std::vector<Matrix> coeffs(d + 1, Matrix::Zero(m, m));
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      const Matrix a = blk(A, i, j), b = blk(B, i, j);
      if (i == j) {
        if (i % 2 == 1) {
          require_gsyl(is_exactly_skew(a) && is_exactly_skew(b), i, j);
          coeffs[d - i + 1] = a;
          coeffs[d - i] = -b;
        } else {
          require_gsyl(a.isZero(0.0) && b.isZero(0.0), i, j);
        }
      } else if (j == i + 1) {
        if (i % 2 == 1)
          require_gsyl(a.isZero(0.0) && (b - id).isZero(0.0), i, j);
        else
          require_gsyl((a + id).isZero(0.0) && b.isZero(0.0), i, j);
      } else if (j == i - 1) {
        if (j % 2 == 1)
          require_gsyl(a.isZero(0.0) && (b + id).isZero(0.0), i, j);
        else
          require_gsyl((a - id).isZero(0.0) && b.isZero(0.0), i, j);
      } else {
        require_gsyl(a.isZero(0.0) && b.isZero(0.0), i, j);
      }
    }
  return MatPoly(std::move(coeffs));
}

// Structure of the companion linearization of a polynomial with the given
// eigenstructure and odd grade: elementary divisors carry over unchanged and
// every minimal index grows by (d-1)/2.
inline EigStruct predicted_indices(const EigStruct& e, int d) {
  if (d < 1 || d % 2 == 0)
    throw std::invalid_argument("predicted_indices needs odd d >= 1");
  e.validate();
  EigStruct out = e;
  const int shift = (d - 1) / 2;
  for (auto& r : out.right) r += shift;
  for (auto& l : out.left) l += shift;
  out.normalize();
  return out;
}

}  // namespace skewcanon
