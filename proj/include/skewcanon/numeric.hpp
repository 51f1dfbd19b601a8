#pragma once

// Tolerance-aware structure recovery from matrix polynomial coefficients:
// numeric rank with an audit trail, normal rank by random evaluation,
// minimal indices from convolution matrix nullities, and the codimension of
// a pencil's congruence orbit from the tangent map.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "skewcanon/pencil.hpp"

namespace skewcanon {

struct ToleranceModel {
  double rel_threshold = 1e-10;  // singular values below rel_threshold * sigma_max count as zero
  int probe_count = 7;           // evaluation points for the normal rank
  std::uint64_t seed = 0x5eed5eed5eed1234ull;  // probe generator seed
};

struct RankDecision {
  std::string context;
  int rank = 0;
  double sigma_max = 0.0;
  double sigma_r = 0.0;     // smallest singular value kept (0 when rank is 0)
  double sigma_next = 0.0;  // largest singular value dropped (0 when full rank)
  double gap = 0.0;         // sigma_r / sigma_next (0 when either edge is absent)
  bool low_confidence = false;
};

struct AuditTrail {
  std::vector<RankDecision> decisions;
  bool any_low_confidence() const {
    for (const auto& d : decisions)
      if (d.low_confidence) return true;
    return false;
  }
};

// Raised when the data is inconsistent with every rank interpretation the
// tolerance model allows; carries the decisions made up to that point.
class ToleranceError : public std::runtime_error {
 public:
  ToleranceError(const std::string& msg, AuditTrail audit)
      : std::runtime_error(msg), audit_(std::move(audit)) {}
  const AuditTrail& audit() const { return audit_; }

 private:
  AuditTrail audit_;
};

// SVD rank with the relative threshold; decisions within a factor 1e3 of the
// threshold boundary are flagged low confidence.
inline int numeric_rank(const Matrix& mat, const ToleranceModel& tol = {},
                        AuditTrail* audit = nullptr, const std::string& context = "") {
  RankDecision dec;
  dec.context = context;
  if (mat.rows() == 0 || mat.cols() == 0) {
    if (audit) audit->decisions.push_back(dec);
    return 0;
  }
  Eigen::VectorXd sv;
  if (std::min(mat.rows(), mat.cols()) <= 32) {
    sv = Eigen::JacobiSVD<Matrix>(mat).singularValues();
  } else {
    sv = Eigen::BDCSVD<Matrix>(mat).singularValues();
    // Eigen 3.4.0's divide-and-conquer SVD can emit NaNs or out-of-order
    // values on complex input; retry with the slow but dependable kernel.
    bool suspect = !sv.allFinite();
    for (Eigen::Index i = 1; !suspect && i < sv.size(); ++i)
      if (sv(i) > sv(i - 1)) suspect = true;
    if (suspect) sv = Eigen::JacobiSVD<Matrix>(mat).singularValues();
  }
  dec.sigma_max = sv.size() ? sv(0) : 0.0;
  const double cut = tol.rel_threshold * dec.sigma_max;
  int r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  dec.rank = r;
  if (dec.sigma_max > 0.0) {
    if (r > 0) dec.sigma_r = sv(r - 1);
    if (r < sv.size()) dec.sigma_next = sv(r);
    if (r > 0 && r < sv.size() && dec.sigma_next > 0.0) {
      dec.gap = dec.sigma_r / dec.sigma_next;
      dec.low_confidence = dec.gap < 1e3;
    }
  }
  if (audit) audit->decisions.push_back(dec);
  return dec.rank;
}

namespace numeric_detail {

// Deterministic across platforms: the standard library distributions are
// implementation-defined, so map raw mt19937_64 words to [0,1) directly.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::vector<cplx> probe_points(const ToleranceModel& tol) {
  std::mt19937_64 rng(tol.seed);
  std::vector<cplx> pts;
  pts.reserve(tol.probe_count);
  for (int i = 0; i < tol.probe_count; ++i) {
    const double r = 0.5 + 1.5 * unit_uniform(rng);
    const double theta = 6.283185307179586476925286766559 * unit_uniform(rng);
    pts.emplace_back(r * std::cos(theta), r * std::sin(theta));
  }
  return pts;
}

}  // namespace numeric_detail

// Rank of P(lambda) over the rational functions: the maximum of the numeric
// rank over random evaluation points in the annulus 0.5 <= |lambda| <= 2.
// A square exactly skew input with an odd rank verdict is impossible
// structurally and raises ToleranceError.
inline int normal_rank(const MatPoly& p, const ToleranceModel& tol = {},
                       AuditTrail* audit = nullptr) {
  AuditTrail local;
  AuditTrail& trail = audit ? *audit : local;
  int best = 0;
  int i = 0;
  for (const cplx& lam : numeric_detail::probe_points(tol)) {
    const int r = numeric_rank(p.eval(lam), tol, &trail,
                               "normal_rank probe " + std::to_string(i++));
    best = std::max(best, r);
  }
  if (p.rows() == p.cols() && is_exactly_skew(p) && best % 2 == 1)
    throw ToleranceError("odd rank " + std::to_string(best) + " for skew input", trail);
  return best;
}

inline int normal_rank(const Pencil& p, const ToleranceModel& tol = {},
                       AuditTrail* audit = nullptr) {
  return normal_rank(to_matpoly(p), tol, audit);
}

namespace numeric_detail {

// Convolution matrix C_k: block (i,j) = A_{i-j} for 0 <= i-j <= grade, of
// size ((d+k+1) rows) x ((k+1) cols) blocks.  A degree <= k polynomial
// vector in the right null space of P corresponds to a null vector of C_k.
inline Matrix convolution_matrix(const MatPoly& p, int k) {
  const int d = p.grade(), m = static_cast<int>(p.rows()), n = static_cast<int>(p.cols());
  Matrix c = Matrix::Zero(static_cast<Eigen::Index>(d + k + 1) * m,
                          static_cast<Eigen::Index>(k + 1) * n);
  for (int j = 0; j <= k; ++j)
    for (int i = 0; i <= d; ++i)
      c.block(static_cast<Eigen::Index>(i + j) * m, static_cast<Eigen::Index>(j) * n, m, n) =
          p.coeffs[i];
  return c;
}

}  // namespace numeric_detail

// Right minimal indices from the nullity sequence of the convolution
// matrices: nullity(C_k) = sum over eps_i <= k of (k+1-eps_i), so second
// differences count the indices equal to each degree.
inline std::vector<int> right_minimal_indices(const MatPoly& p, const ToleranceModel& tol = {},
                                              AuditTrail* audit = nullptr) {
  AuditTrail local;
  AuditTrail& trail = audit ? *audit : local;
  const int rho = normal_rank(p, tol, &trail);
  const int want = static_cast<int>(p.cols()) - rho;
  std::vector<int> eps;
  if (want == 0) return eps;

  const int d = p.grade();
  const int cap = d * rho + 1;
  int prev_nullity = 0, prev_count = 0;
  for (int k = 0; static_cast<int>(eps.size()) < want; ++k) {
    if (k > cap)
      throw ToleranceError(
          "minimal index recovery did not stabilize by degree " + std::to_string(cap) +
              "; the rank decisions are inconsistent with a polynomial null space",
          trail);
    const Matrix c = numeric_detail::convolution_matrix(p, k);
    const int rank_c =
        numeric_rank(c, tol, &trail, "convolution matrix C_" + std::to_string(k));
    const int nullity = static_cast<int>(c.cols()) - rank_c;
    const int count_le = nullity - prev_nullity;  // indices <= k
    const int count_eq = count_le - prev_count;   // indices == k
    if (count_eq < 0 || count_le < prev_count || count_le > want)
      throw ToleranceError("nonmonotone nullity sequence at degree " + std::to_string(k),
                           trail);
    for (int t = 0; t < count_eq; ++t) eps.push_back(k);
    prev_nullity = nullity;
    prev_count = count_le;
  }
  return eps;
}

inline std::vector<int> left_minimal_indices(const MatPoly& p, const ToleranceModel& tol = {},
                                             AuditTrail* audit = nullptr) {
  return right_minimal_indices(p.transposed(), tol, audit);
}

struct RecoveredStructure {
  int normal_rank = 0;
  std::vector<int> right;
  std::vector<int> left;
  int divisor_degree_sum = 0;  // d*rank - sum of all minimal indices
  AuditTrail audit;
};

// Full index recovery.  The elementary divisor degree sum comes from the
// index sum identity rather than from eigenvalue computations, so the three
// outputs are consistent by construction; inconsistent rank decisions
// surface as ToleranceError instead.
inline RecoveredStructure recover(const MatPoly& p, const ToleranceModel& tol = {}) {
  RecoveredStructure out;
  out.normal_rank = normal_rank(p, tol, &out.audit);
  out.right = right_minimal_indices(p, tol, &out.audit);
  out.left = left_minimal_indices(p, tol, &out.audit);
  long long sum = 0;
  for (int e : out.right) sum += e;
  for (int e : out.left) sum += e;
  const long long delta = static_cast<long long>(p.grade()) * out.normal_rank - sum;
  if (delta < 0)
    throw ToleranceError("minimal index sum exceeds grade times rank", out.audit);
  if (p.rows() == p.cols() && is_exactly_skew(p)) {
    if (out.right != out.left)
      throw ToleranceError("unequal left and right minimal indices for skew input", out.audit);
    if (delta % 2)
      throw ToleranceError("odd elementary divisor degree sum for skew input", out.audit);
  }
  out.divisor_degree_sum = static_cast<int>(delta);
  return out;
}

inline RecoveredStructure recover(const Pencil& p, const ToleranceModel& tol = {}) {
  return recover(to_matpoly(p), tol);
}

// Codimension of the congruence orbit of a skew pencil: the tangent space is
// the image of X -> (X^T A + A X, X^T B + B X), and only the strictly upper
// triangles of the two skew outputs carry information, giving an
// n(n-1) x n^2 tangent matrix.
inline int tangent_codim(const Pencil& p, const ToleranceModel& tol = {},
                         AuditTrail* audit = nullptr) {
  if (p.rows() != p.cols() || !is_exactly_skew(p))
    throw std::invalid_argument("tangent_codim needs an exactly skew square pencil");
  const int n = p.rows();
  Matrix t = Matrix::Zero(static_cast<Eigen::Index>(n) * (n - 1), static_cast<Eigen::Index>(n) * n);
  const auto fill = [&](const Matrix& coeff, Eigen::Index row0) {
    Eigen::Index row = row0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++row)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            cplx v = 0.0;
            if (b == i) v += coeff(a, j);
            if (b == j) v += coeff(i, a);
            if (v != 0.0) t(row, static_cast<Eigen::Index>(a) * n + b) = v;
          }
  };
  fill(p.A, 0);
  fill(p.B, static_cast<Eigen::Index>(n) * (n - 1) / 2);
  return n * (n - 1) - numeric_rank(t, tol, audit, "congruence tangent map");
}

}  // namespace skewcanon
