#include <random>

#include <skewcanon/canon.hpp>
#include <skewcanon/generic.hpp>
#include <skewcanon/numeric.hpp>

#include "doctest.h"
#include "rank_oracle.hpp"

using namespace skewcanon;

namespace {
MatPoly as_poly(const Pencil& p) { return to_matpoly(p); }

Eigen::VectorXcd random_cvec(int n, std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(u(g), u(g));
  return v;
}
}  // namespace

TEST_CASE("tolerance model defaults are pinned") {
  const ToleranceModel tol;
  CHECK(tol.rel_threshold == 1e-10);
  CHECK(tol.probe_count == 7);
  CHECK(tol.seed == 0x5eed5eed5eed1234ull);
}

TEST_CASE("numeric rank agrees with exact elimination on canonical forms") {
  // generic bounded rank pencils at integer evaluation points
  for (int n = 2; n <= 10; ++n)
    for (int w = 1; 2 * w <= n - 1; ++w) {
      const Pencil p = realize_skew_kcf(generic_skew_pencil(n, w));
      const Matrix at3 = p.eval(3.0);
      CHECK(rank_oracle::exact_rank(at3) == 2 * w);
      CHECK(numeric_rank(at3) == 2 * w);
      CHECK(normal_rank(p) == 2 * w);
    }

  // a regular block drops rank by one exactly at its eigenvalue
  for (int k = 1; k <= 6; ++k) {
    const Pencil p = realize_kcf(Kcf({KcfBlock::regular(Eigenvalue::finite(2.0), k)}));
    CHECK(rank_oracle::exact_rank(p.eval(2.0)) == k - 1);
    CHECK(numeric_rank(p.eval(2.0)) == k - 1);
    CHECK(rank_oracle::exact_rank(p.eval(5.0)) == k);
    CHECK(normal_rank(p) == k);
  }

  // rational and complex eigenvalues, scaled to integers for the oracle
  const Pencil pr = realize_kcf(Kcf({KcfBlock::regular(Eigenvalue::finite(-0.75), 2)}));
  CHECK(rank_oracle::exact_rank(pr.eval(-0.75), 4.0) == 1);
  CHECK(numeric_rank(pr.eval(-0.75)) == 1);
  const Pencil pc = realize_kcf(Kcf({KcfBlock::regular(Eigenvalue::finite(1.5, -2.25), 3)}));
  CHECK(rank_oracle::exact_rank(pc.eval(cplx(1.5, -2.25)), 4.0) == 2);
  CHECK(numeric_rank(pc.eval(cplx(1.5, -2.25))) == 2);

  // the M pencil has full even rank away from no point: rank 2m everywhere
  const Pencil m2 = build_block(SkewBlock::m_block(2));
  CHECK(rank_oracle::exact_rank(m2.eval(1.0)) == 4);
  CHECK(rank_oracle::exact_rank(m2.eval(cplx(0.0, 1.0))) == 4);
  CHECK(normal_rank(m2) == 4);

  // infinite eigenvalue: rank drop happens in the leading coefficient
  const Pencil pinf = realize_kcf(Kcf({KcfBlock::regular(Eigenvalue::infinity(), 2)}));
  CHECK(rank_oracle::exact_rank(pinf.A) == 1);
  CHECK(normal_rank(pinf) == 2);
}

TEST_CASE("eigenvalues of a regular skew realization") {
  // independent cross-check through a dense eigensolver
  const SkewKcf s = generic_skew_regular(4, {Eigenvalue::finite(3.0), Eigenvalue::finite(5.0)});
  const Pencil p = realize_skew_kcf(s);
  Eigen::ComplexEigenSolver<Matrix> es(p.A.fullPivLu().solve(p.B));
  std::vector<double> eigs;
  for (int i = 0; i < es.eigenvalues().size(); ++i) eigs.push_back(es.eigenvalues()(i).real());
  std::sort(eigs.begin(), eigs.end());
  REQUIRE(eigs.size() == 4);
  CHECK(eigs[0] == doctest::Approx(3.0));
  CHECK(eigs[1] == doctest::Approx(3.0));
  CHECK(eigs[2] == doctest::Approx(5.0));
  CHECK(eigs[3] == doctest::Approx(5.0));
}

TEST_CASE("normal rank of explicit polynomials") {
  // diag(lambda^2, 1): full rank away from zero
  std::vector<Matrix> coeffs(3, Matrix::Zero(2, 2));
  coeffs[0](1, 1) = 1.0;
  coeffs[2](0, 0) = 1.0;
  CHECK(normal_rank(MatPoly(std::move(coeffs))) == 2);

  // zero polynomial
  std::vector<Matrix> zc(2, Matrix::Zero(3, 3));
  CHECK(normal_rank(MatPoly(std::move(zc))) == 0);
}

TEST_CASE("minimal index recovery") {
  auto right = [](const Kcf& k) { return right_minimal_indices(as_poly(realize_kcf(k))); };
  auto left = [](const Kcf& k) { return left_minimal_indices(as_poly(realize_kcf(k))); };

  CHECK(right(Kcf({KcfBlock::right_singular(1)})) == std::vector<int>{1});
  CHECK(right(Kcf({KcfBlock::right_singular(0)})) == std::vector<int>{0});
  CHECK(right(Kcf({KcfBlock::right_singular(0), KcfBlock::right_singular(2)})) ==
        std::vector<int>{0, 2});
  CHECK(left(Kcf({KcfBlock::left_singular(2)})) == std::vector<int>{2});
  const Kcf mixed({KcfBlock::right_singular(1), KcfBlock::regular(Eigenvalue::finite(2.0), 2),
                   KcfBlock::left_singular(0)});
  CHECK(right(mixed) == std::vector<int>{1});
  CHECK(left(mixed) == std::vector<int>{0});
  CHECK(right(Kcf({KcfBlock::regular(Eigenvalue::finite(2.0), 3)})).empty());
}

TEST_CASE("full structure recovery on canonical forms") {
  const RecoveredStructure a = recover(realize_skew_kcf(
      SkewKcf({SkewBlock::m_block(1), SkewBlock::m_block(0)})));
  CHECK(a.normal_rank == 2);
  CHECK(a.right == std::vector<int>{0, 1});
  CHECK(a.left == std::vector<int>{0, 1});
  CHECK(a.divisor_degree_sum == 0);

  const RecoveredStructure b = recover(realize_skew_kcf(SkewKcf(
      {SkewBlock::h_block(Eigenvalue::finite(2.0), 1), SkewBlock::m_block(0), SkewBlock::m_block(0)})));
  CHECK(b.normal_rank == 2);
  CHECK(b.right == std::vector<int>{0, 0});
  CHECK(b.left == std::vector<int>{0, 0});
  CHECK(b.divisor_degree_sum == 2);

  const RecoveredStructure c = recover(realize_kcf(Kcf({KcfBlock::regular(Eigenvalue::finite(2.0), 3)})));
  CHECK(c.normal_rank == 3);
  CHECK(c.right.empty());
  CHECK(c.left.empty());
  CHECK(c.divisor_degree_sum == 3);

  const RecoveredStructure d = recover(realize_kcf(Kcf({KcfBlock::right_singular(0)})));
  CHECK(d.normal_rank == 0);
  CHECK(d.right == std::vector<int>{0});
  CHECK(d.left.empty());
  CHECK(d.divisor_degree_sum == 0);

  const RecoveredStructure z = recover(Pencil(Matrix::Zero(3, 3), Matrix::Zero(3, 3)));
  CHECK(z.normal_rank == 0);
  CHECK(z.right == std::vector<int>{0, 0, 0});
  CHECK(z.left == std::vector<int>{0, 0, 0});

  CHECK_FALSE(a.audit.decisions.empty());

  // the audit trail records well separated decisions on exact data
  for (const auto& rs : {a, b, c})
    CHECK_FALSE(rs.audit.any_low_confidence());
}

TEST_CASE("ambiguous singular values raise a tolerance error") {
  // Exactly skew matrices have paired singular values, so a cut that lands
  // inside a computed pair produces an odd rank verdict, which the skew gate
  // rejects.  Rounding splits the pairs by an ulp or two for most inputs;
  // scan a few seeds for one where it does.
  bool triggered = false;
  for (unsigned seed = 0; seed < 16 && !triggered; ++seed) {
    std::mt19937_64 g(0x10af5u + seed);
    Matrix a = Matrix::Zero(4, 4);
    for (int rep = 0; rep < 2; ++rep) {
      const Eigen::VectorXcd x = random_cvec(4, g), y = random_cvec(4, g);
      a += x * y.transpose() - y * x.transpose();
    }
    REQUIRE(is_exactly_skew(a));
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(a).singularValues();
    REQUIRE(sv.size() == 4);

    ToleranceModel tol;
    if (sv(0) > sv(1))
      tol.rel_threshold = (sv(0) + sv(1)) / (2.0 * sv(0));
    else if (sv(2) > sv(3))
      tol.rel_threshold = (sv(2) + sv(3)) / (2.0 * sv(0));
    else
      continue;

    triggered = true;
    const MatPoly constant({a});
    CHECK_THROWS_AS(normal_rank(constant, tol), ToleranceError);
    try {
      normal_rank(constant, tol);
    } catch (const ToleranceError& e) {
      CHECK(std::string(e.what()).find("odd rank") != std::string::npos);
      CHECK_FALSE(e.audit().decisions.empty());
      CHECK(e.audit().any_low_confidence());
    }
  }
  CHECK(triggered);
}

TEST_CASE("tangent space codimension") {
  auto at = [](int n, int w) { return tangent_codim(realize_skew_kcf(generic_skew_pencil(n, w))); };
  CHECK(at(4, 1) == 3);
  CHECK(at(5, 2) == 0);
  CHECK(at(6, 2) == 4);
  CHECK(at(10, 3) == 21);
  for (int n = 2; n <= 8; ++n)
    for (int w = 1; 2 * w <= n - 1; ++w) CHECK(at(n, w) == codim_closed_form(n, w));

  CHECK_THROWS_AS(tangent_codim(Pencil(Matrix::Identity(2, 2), Matrix::Zero(2, 2))),
                  std::invalid_argument);
  CHECK_THROWS_AS(tangent_codim(Pencil(Matrix::Zero(2, 3), Matrix::Zero(2, 3))),
                  std::invalid_argument);
}
