#pragma once

// Dense pencil and matrix-polynomial value types.
//
// A Pencil stores the pair (A, B) of lambda*A - B.  A MatPoly stores
// coefficients A_0 .. A_d of P(lambda) = sum lambda^i A_i; rectangular
// coefficient matrices are allowed, skew-specific operations require square.

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "skewcanon/eigenvalue.hpp"

namespace skewcanon {

using Matrix = Eigen::MatrixXcd;

struct Pencil {
  Matrix A;  // lambda part
  Matrix B;  // constant part, pencil is lambda*A - B

  Pencil() = default;
  Pencil(Matrix a, Matrix b) : A(std::move(a)), B(std::move(b)) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
      throw std::invalid_argument("pencil parts must have equal shape");
  }

  int rows() const { return static_cast<int>(A.rows()); }
  int cols() const { return static_cast<int>(A.cols()); }

  Matrix eval(cplx lambda) const { return lambda * A - B; }
};

inline bool is_exactly_skew(const Matrix& M) {
  if (M.rows() != M.cols()) return false;
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j <= i; ++j)
      if (M(i, j) != -M(j, i)) return false;
  return true;
}

inline bool is_exactly_skew(const Pencil& p) {
  return is_exactly_skew(p.A) && is_exactly_skew(p.B);
}

struct MatPoly {
  std::vector<Matrix> coeffs;  // A_0 .. A_d

  MatPoly() = default;
  explicit MatPoly(std::vector<Matrix> c) : coeffs(std::move(c)) {
    if (coeffs.empty()) throw std::invalid_argument("matrix polynomial needs at least one coefficient");
    for (const auto& m : coeffs)
      if (m.rows() != coeffs.front().rows() || m.cols() != coeffs.front().cols())
        throw std::invalid_argument("matrix polynomial coefficients must share one shape");
  }

  int grade() const { return static_cast<int>(coeffs.size()) - 1; }
  int rows() const { return static_cast<int>(coeffs.front().rows()); }
  int cols() const { return static_cast<int>(coeffs.front().cols()); }

  Matrix eval(cplx lambda) const {
    Matrix v = Matrix::Zero(coeffs.front().rows(), coeffs.front().cols());
    for (std::size_t i = coeffs.size(); i-- > 0;) v = lambda * v + coeffs[i];
    return v;
  }

  MatPoly transposed() const {
    std::vector<Matrix> c;
    c.reserve(coeffs.size());
    for (const auto& m : coeffs) c.push_back(m.transpose());
    return MatPoly(std::move(c));
  }
};

inline bool is_exactly_skew(const MatPoly& p) {
  for (const auto& m : p.coeffs)
    if (!is_exactly_skew(m)) return false;
  return true;
}

inline MatPoly to_matpoly(const Pencil& p) { return MatPoly({-p.B, p.A}); }

inline Pencil to_pencil(const MatPoly& p) {
  if (p.grade() != 1) throw std::invalid_argument("only a grade-1 polynomial converts to a pencil");
  return Pencil(p.coeffs[1], -p.coeffs[0]);
}

// Frobenius distance on pencil pairs: sqrt(|A-C|_F^2 + |B-D|_F^2).
inline double distance(const Pencil& p, const Pencil& q) {
  if (p.rows() != q.rows() || p.cols() != q.cols())
    throw std::invalid_argument("distance needs equal shapes");
  return std::sqrt((p.A - q.A).squaredNorm() + (p.B - q.B).squaredNorm());
}

// Coefficient-wise Frobenius distance on matrix polynomials of equal grade.
inline double distance(const MatPoly& p, const MatPoly& q) {
  if (p.grade() != q.grade() || p.rows() != q.rows() || p.cols() != q.cols())
    throw std::invalid_argument("distance needs equal grade and shape");
  double s = 0.0;
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) s += (p.coeffs[i] - q.coeffs[i]).squaredNorm();
  return std::sqrt(s);
}

}  // namespace skewcanon
