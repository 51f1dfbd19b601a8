#include <random>

#include <skewcanon/linearize.hpp>
#include <skewcanon/numeric.hpp>

#include "doctest.h"

using namespace skewcanon;

namespace {
Matrix skew2(double c) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = c;
  m(1, 0) = -c;
  return m;
}

MatPoly random_skew_poly(int m, int d, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Matrix> coeffs;
  for (int k = 0; k <= d; ++k) {
    Matrix x(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) x(i, j) = cplx(u(gen), u(gen));
    Matrix c = Matrix::Zero(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        c(i, j) = x(i, j) - x(j, i);
        c(j, i) = -c(i, j);
      }
    coeffs.push_back(std::move(c));
  }
  return MatPoly(std::move(coeffs));
}

bool same(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).isZero(0.0);
}
}  // namespace

TEST_CASE("grade one linearization is the pencil itself") {
  const MatPoly p({skew2(1.5), skew2(-0.75)});
  const GsylPencil g = linearize(p);
  CHECK(g.m == 2);
  CHECK(g.d == 1);
  CHECK(same(g.pencil.A, p.coeffs[1]));
  CHECK(same(g.pencil.B, -p.coeffs[0]));
}

TEST_CASE("grade three template layout") {
  const Matrix a0 = skew2(0.25), a1 = skew2(3.0), a2 = skew2(-2.0), a3 = skew2(1.5);
  const MatPoly p({a0, a1, a2, a3});
  const GsylPencil g = linearize(p);
  REQUIRE(g.pencil.rows() == 6);
  REQUIRE(g.pencil.cols() == 6);
  CHECK(is_exactly_skew(g.pencil));

  const Matrix id = Matrix::Identity(2, 2);
  Matrix ea = Matrix::Zero(6, 6), eb = Matrix::Zero(6, 6);
  ea.block(0, 0, 2, 2) = a3;
  ea.block(2, 4, 2, 2) = -id;
  ea.block(4, 2, 2, 2) = id;
  ea.block(4, 4, 2, 2) = a1;
  eb.block(0, 0, 2, 2) = -a2;
  eb.block(0, 2, 2, 2) = id;
  eb.block(2, 0, 2, 2) = -id;
  eb.block(4, 4, 2, 2) = -a0;
  CHECK(same(g.pencil.A, ea));
  CHECK(same(g.pencil.B, eb));
}

TEST_CASE("round trip is exact") {
  for (const auto& [m, d] : std::vector<std::pair<int, int>>{{2, 3}, {3, 5}, {1, 7}, {4, 1}}) {
    const MatPoly p = random_skew_poly(m, d, 91u + m * 10 + d);
    const GsylPencil g = linearize(p);
    CHECK(is_exactly_skew(g.pencil));
    const MatPoly back = extract(g);
    REQUIRE(back.coeffs.size() == p.coeffs.size());
    for (std::size_t k = 0; k < p.coeffs.size(); ++k) CHECK(same(back.coeffs[k], p.coeffs[k]));
    CHECK(distance(back, p) == 0.0);
  }
}

TEST_CASE("linearization preserves distances") {
  const MatPoly p = random_skew_poly(3, 3, 11u);
  const MatPoly q = random_skew_poly(3, 3, 12u);
  const double dp = distance(p, q);
  const double dl = distance(linearize(p).pencil, linearize(q).pencil);
  CHECK(dl == doctest::Approx(dp).epsilon(1e-12));
}

TEST_CASE("input validation") {
  // even grade has no skew companion form
  const MatPoly even({skew2(1.0), skew2(2.0), skew2(3.0)});
  CHECK_THROWS_WITH_AS(linearize(even), "no skew companion form for even grade 2",
                       std::invalid_argument);

  // non-skew coefficients are rejected
  Matrix bad = skew2(1.0);
  bad(0, 0) = 1.0;
  CHECK_THROWS_AS(linearize(MatPoly({bad, skew2(2.0)})), std::invalid_argument);

  // rectangular polynomials are rejected
  std::vector<Matrix> rectc{Matrix::Zero(2, 3), Matrix::Zero(2, 3)};
  CHECK_THROWS_AS(linearize(MatPoly(std::move(rectc))), std::invalid_argument);
}

TEST_CASE("extract rejects perturbed pencils") {
  const MatPoly p = random_skew_poly(2, 3, 5u);
  GsylPencil g = linearize(p);

  GsylPencil off_template = g;
  off_template.pencil.A(0, 2) += 1e-3;  // block (1,2) of the lambda part must vanish
  try {
    extract(off_template);
    FAIL("expected a template violation");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("not in GSYL form") != std::string::npos);
    CHECK(std::string(e.what()).find("(1,2)") != std::string::npos);
  }

  GsylPencil wrong_identity = g;
  wrong_identity.pencil.B(0, 2) *= 2.0;  // block (1,2) of the constant part must be I
  CHECK_THROWS_AS(extract(wrong_identity), std::invalid_argument);

  GsylPencil bad_shape = g;
  bad_shape.m = 3;
  CHECK_THROWS_AS(extract(bad_shape), std::invalid_argument);
}

TEST_CASE("index shift between polynomial and linearization") {
  EigStruct e;
  e.right = {1, 2};
  e.left = {1, 2};
  e.finite.emplace_back(Eigenvalue::finite(2.0), 1);
  e.finite.emplace_back(Eigenvalue::finite(2.0), 1);
  e.skew = true;

  const EigStruct shifted = predicted_indices(e, 3);
  CHECK(shifted.right == std::vector<int>{2, 3});
  CHECK(shifted.left == std::vector<int>{2, 3});
  CHECK(shifted.finite == e.finite);
  CHECK(shifted.skew);

  // grade 1 shifts by nothing
  CHECK(predicted_indices(e, 1) == e);
  CHECK_THROWS_AS(predicted_indices(e, 4), std::invalid_argument);
}
