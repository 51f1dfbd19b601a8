#pragma once

// Deterministic sampling of skew pencils and polynomials of bounded normal
// rank, plus the Monte Carlo experiments tying sampled structures back to
// the predicted generic ones.

#include <Eigen/SVD>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "skewcanon/generic.hpp"
#include "skewcanon/linearize.hpp"
#include "skewcanon/numeric.hpp"
#include "skewcanon/pencil.hpp"

namespace skewcanon {

// Reproducible Gaussian source.  Distributions from <random> are
// implementation-defined, so the normal variates are produced by an explicit
// Box-Muller transform over raw mt19937_64 output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : rng_(seed) {}

  // Distinct stream for a numbered trial under one master seed.
  static std::uint64_t derive(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;          // [0,1)
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double ang = 6.283185307179586476925286766559 * u2;
    spare_ = mag * std::sin(ang);
    have_spare_ = true;
    return mag * std::cos(ang);
  }

  cplx complex_gaussian() {
    const double re = gaussian();
    return cplx(re, gaussian());
  }

  Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = complex_gaussian();
    return m;
  }

 private:
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

namespace sampling_detail {

// A well-conditioned random square transform; redraws the (measure-zero in
// theory, merely ill-conditioned in floats) bad cases.
inline Matrix conditioned_transform(int n, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix t = rng.gaussian_matrix(n, n);
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(t).singularValues();
    if (sv(0) > 0.0 && sv(sv.size() - 1) / sv(0) >= 1e-8) return t;
  }
  throw std::runtime_error("could not draw a well-conditioned transform");
}

inline void check_bounded_rank_args(const char* fn, int n, int w) {
  if (n < 2 || w < 1 || 2 * w > n - 1)
    throw std::invalid_argument(std::string(fn) + " needs n >= 2 and 1 <= w <= (n-1)/2; got n=" +
                                std::to_string(n) + ", w=" + std::to_string(w));
}

}  // namespace sampling_detail

// Random skew polynomial of size m and grade d whose normal rank is at most
// 2r.  Every coefficient is V_i - V_i^T with V_i = T1^T R_i T2, where T1/T2
// are the top r and bottom m-r rows of one shared transform T: the value
// P(lambda) then factors through the same r-dimensional spaces for every
// lambda, which caps the normal rank at 2r, while fresh R_i keep the
// coefficients independent.  The output is exactly skew entrywise.
inline MatPoly sample_bounded_rank_skew_poly(int m, int r, int d, Rng& rng) {
  sampling_detail::check_bounded_rank_args("sample_bounded_rank_skew_poly", m, r);
  if (d < 1) throw std::invalid_argument("sample_bounded_rank_skew_poly needs grade d >= 1");
  const Matrix t = sampling_detail::conditioned_transform(m, rng);
  const Matrix t1 = t.topRows(r);
  const Matrix t2 = t.bottomRows(m - r);
  std::vector<Matrix> coeffs;
  coeffs.reserve(d + 1);
  for (int i = 0; i <= d; ++i) {
    const Matrix v = t1.transpose() * (rng.gaussian_matrix(r, m - r) * t2);
    Matrix c(m, m);
    for (int a = 0; a < m; ++a) {
      c(a, a) = 0.0;
      for (int b = a + 1; b < m; ++b) {
        c(a, b) = v(a, b) - v(b, a);
        c(b, a) = -c(a, b);
      }
    }
    coeffs.push_back(std::move(c));
  }
  return MatPoly(std::move(coeffs));
}

inline Pencil sample_bounded_rank_skew_pencil(int n, int w, Rng& rng) {
  sampling_detail::check_bounded_rank_args("sample_bounded_rank_skew_pencil", n, w);
  return to_pencil(sample_bounded_rank_skew_poly(n, w, 1, rng));
}

struct MismatchRecord {
  int trial = -1;
  std::uint64_t seed = 0;
  std::string expected;
  std::string recovered;
};

struct ExperimentReport {
  std::string kind;  // "pencil", "poly", or "linearization"
  int n = 0, w = 0;  // pencil parameters (pencil kind)
  int m = 0, r = 0, d = 0;  // polynomial parameters (poly/linearization kinds)
  int trials = 0;
  int matches = 0;
  std::uint64_t master_seed = 0;
  int low_confidence_trials = 0;
  std::vector<MismatchRecord> mismatches;
};

namespace sampling_detail {

inline std::string indices_string(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

inline std::string structure_string(int rank, const std::vector<int>& right,
                                    const std::vector<int>& left, int delta) {
  return "rank=" + std::to_string(rank) + " right=" + indices_string(right) +
         " left=" + indices_string(left) + " delta=" + std::to_string(delta);
}

}  // namespace sampling_detail

// Samples bounded-rank skew pencils and checks how often the recovered
// structure equals the predicted generic one.
inline ExperimentReport genericity_experiment_pencil(int n, int w, int trials,
                                                     std::uint64_t master_seed,
                                                     const ToleranceModel& tol = {}) {
  ExperimentReport rep;
  rep.kind = "pencil";
  rep.n = n;
  rep.w = w;
  rep.trials = trials;
  rep.master_seed = master_seed;

  const SkewKcf expected_form = generic_skew_pencil(n, w);
  std::vector<int> expected_idx;
  for (const auto& b : expected_form.blocks()) expected_idx.push_back(b.size);
  std::sort(expected_idx.begin(), expected_idx.end());
  const std::string expected =
      sampling_detail::structure_string(2 * w, expected_idx, expected_idx, 0);

  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = Rng::derive(master_seed, t);
    Rng rng(seed);
    const Pencil p = sample_bounded_rank_skew_pencil(n, w, rng);
    std::string got;
    bool ok = false;
    try {
      const RecoveredStructure rec = recover(p, tol);
      if (rec.audit.any_low_confidence()) ++rep.low_confidence_trials;
      ok = rec.normal_rank == 2 * w && rec.right == expected_idx && rec.left == expected_idx &&
           rec.divisor_degree_sum == 0;
      if (!ok)
        got = sampling_detail::structure_string(rec.normal_rank, rec.right, rec.left,
                                                rec.divisor_degree_sum);
    } catch (const ToleranceError& e) {
      got = std::string("ToleranceError: ") + e.what();
    }
    if (ok)
      ++rep.matches;
    else
      rep.mismatches.push_back(MismatchRecord{t, seed, expected, got});
  }
  return rep;
}

// Same experiment at fixed odd grade d.
inline ExperimentReport genericity_experiment_poly(int m, int r, int d, int trials,
                                                   std::uint64_t master_seed,
                                                   const ToleranceModel& tol = {}) {
  ExperimentReport rep;
  rep.kind = "poly";
  rep.m = m;
  rep.r = r;
  rep.d = d;
  rep.trials = trials;
  rep.master_seed = master_seed;

  const EigStruct generic = generic_skew_poly(m, r, d);
  std::vector<int> expected_idx = generic.right;
  std::sort(expected_idx.begin(), expected_idx.end());
  const std::string expected =
      sampling_detail::structure_string(2 * r, expected_idx, expected_idx, 0);

  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = Rng::derive(master_seed, t);
    Rng rng(seed);
    const MatPoly p = sample_bounded_rank_skew_poly(m, r, d, rng);
    std::string got;
    bool ok = false;
    try {
      const RecoveredStructure rec = recover(p, tol);
      if (rec.audit.any_low_confidence()) ++rep.low_confidence_trials;
      ok = rec.normal_rank == 2 * r && rec.right == expected_idx && rec.left == expected_idx &&
           rec.divisor_degree_sum == 0;
      if (!ok)
        got = sampling_detail::structure_string(rec.normal_rank, rec.right, rec.left,
                                                rec.divisor_degree_sum);
    } catch (const ToleranceError& e) {
      got = std::string("ToleranceError: ") + e.what();
    }
    if (ok)
      ++rep.matches;
    else
      rep.mismatches.push_back(MismatchRecord{t, seed, expected, got});
  }
  return rep;
}

// Samples polynomials, linearizes them, and checks that (a) extract inverts
// linearize bit for bit and (b) the linearization's minimal indices are the
// polynomial's shifted up by (d-1)/2 on both sides.
inline ExperimentReport linearization_experiment(int m, int r, int d, int trials,
                                                 std::uint64_t master_seed,
                                                 const ToleranceModel& tol = {}) {
  if (d % 2 == 0) throw std::invalid_argument("linearization_experiment needs odd grade");
  ExperimentReport rep;
  rep.kind = "linearization";
  rep.m = m;
  rep.r = r;
  rep.d = d;
  rep.trials = trials;
  rep.master_seed = master_seed;
  const int shift = (d - 1) / 2;

  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = Rng::derive(master_seed, t);
    Rng rng(seed);
    const MatPoly p = sample_bounded_rank_skew_poly(m, r, d, rng);
    std::string expected, got;
    bool ok = false;
    try {
      const GsylPencil lin = linearize(p);
      if (distance(extract(lin), p) != 0.0) {
        got = "extract(linearize(p)) differs from p";
      } else {
        const RecoveredStructure rp = recover(p, tol);
        const RecoveredStructure rl = recover(lin.pencil, tol);
        if (rp.audit.any_low_confidence() || rl.audit.any_low_confidence())
          ++rep.low_confidence_trials;
        std::vector<int> shifted_r = rp.right, shifted_l = rp.left;
        for (int& e : shifted_r) e += shift;
        for (int& e : shifted_l) e += shift;
        expected = sampling_detail::structure_string(
            static_cast<int>(m) * d - (m - rp.normal_rank), shifted_r, shifted_l,
            rp.divisor_degree_sum);
        ok = rl.right == shifted_r && rl.left == shifted_l &&
             rl.normal_rank == m * d - (m - rp.normal_rank);
        if (!ok)
          got = sampling_detail::structure_string(rl.normal_rank, rl.right, rl.left,
                                                  rl.divisor_degree_sum);
      }
    } catch (const ToleranceError& e) {
      got = std::string("ToleranceError: ") + e.what();
    }
    if (ok)
      ++rep.matches;
    else
      rep.mismatches.push_back(MismatchRecord{t, seed, expected, got});
  }
  return rep;
}

}  // namespace skewcanon
