#include <skewcanon/canon.hpp>
#include <skewcanon/generic.hpp>

#include "doctest.h"

using namespace skewcanon;

namespace {
SkewKcf m_form(std::initializer_list<int> sizes) {
  std::vector<SkewBlock> v;
  for (int s : sizes) v.push_back(SkewBlock::m_block(s));
  return SkewKcf(std::move(v));
}
Kcf rect(std::initializer_list<int> right, std::initializer_list<int> left) {
  std::vector<KcfBlock> v;
  for (int s : right) v.push_back(KcfBlock::right_singular(s));
  for (int s : left) v.push_back(KcfBlock::left_singular(s));
  return Kcf(std::move(v));
}
}  // namespace

TEST_CASE("generic bounded rank skew pencils") {
  CHECK(generic_skew_pencil(10, 3) == m_form({1, 1, 1, 0}));
  CHECK(generic_skew_pencil(8, 2) == m_form({1, 1, 0, 0}));
  CHECK(generic_skew_pencil(6, 2) == m_form({1, 1}));
  CHECK(generic_skew_pencil(5, 2) == m_form({2}));
  CHECK(generic_skew_pencil(4, 1) == m_form({1, 0}));
  CHECK(generic_skew_pencil(3, 1) == m_form({1}));

  for (int n = 2; n <= 14; ++n)
    for (int w = 1; 2 * w <= n - 1; ++w) {
      const SkewKcf s = generic_skew_pencil(n, w);
      CHECK(s.dim() == n);
      CHECK(s.rank() == 2 * w);
      // only M blocks, sizes within one of each other
      int lo = 1 << 20, hi = -1;
      for (const auto& b : s.blocks()) {
        CHECK(b.kind == SkewBlock::Kind::M);
        lo = std::min(lo, b.size);
        hi = std::max(hi, b.size);
      }
      CHECK(hi - lo <= 1);
    }

  CHECK_THROWS_AS(generic_skew_pencil(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(generic_skew_pencil(4, 0), std::invalid_argument);
  CHECK_THROWS_AS(generic_skew_pencil(1, 0), std::invalid_argument);
}

TEST_CASE("generic regular skew pencils") {
  const std::vector<Eigenvalue> eigs{Eigenvalue::finite(1.0), Eigenvalue::finite(2.0)};
  const SkewKcf s = generic_skew_regular(4, eigs);
  CHECK(s == SkewKcf({SkewBlock::h_block(Eigenvalue::finite(1.0), 1),
                      SkewBlock::h_block(Eigenvalue::finite(2.0), 1)}));
  CHECK_THROWS_AS(generic_skew_regular(3, eigs), std::invalid_argument);
  CHECK_THROWS_AS(generic_skew_regular(4, {Eigenvalue::finite(1.0), Eigenvalue::finite(1.0)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(generic_skew_regular(4, {Eigenvalue::finite(1.0), Eigenvalue::infinity()}),
                  std::invalid_argument);
}

TEST_CASE("generic rectangular full rank pencils") {
  CHECK(generic_rect_full_rank(2, 4) == rect({1, 1}, {}));
  CHECK(generic_rect_full_rank(3, 4) == rect({3}, {}));
  CHECK(generic_rect_full_rank(2, 5) == rect({0, 1, 1}, {}));
  CHECK(generic_rect_full_rank(4, 2) == rect({}, {1, 1}));
  CHECK(generic_rect_full_rank(5, 2) == rect({}, {0, 1, 1}));
  CHECK_THROWS_AS(generic_rect_full_rank(3, 3), std::invalid_argument);

  for (int p = 0; p <= 6; ++p)
    for (int q = 0; q <= 6; ++q) {
      if (p == q) continue;
      const Kcf k = generic_rect_full_rank(p, q);
      CHECK(k.rows() == p);
      CHECK(k.cols() == q);
      CHECK(k.rank() == std::min(p, q));
    }
}

TEST_CASE("generic bounded rank skew polynomials") {
  auto indices = [](const EigStruct& e) { return e.right; };

  EigStruct e = generic_skew_poly(4, 1, 3);
  CHECK(indices(e) == std::vector<int>{1, 2});
  CHECK(e.left == e.right);
  CHECK(e.finite.empty());
  CHECK(e.infinite.empty());
  CHECK(e.skew);

  CHECK(indices(generic_skew_poly(3, 1, 3)) == std::vector<int>{3});
  CHECK(indices(generic_skew_poly(5, 1, 3)) == std::vector<int>{1, 1, 1});
  CHECK(indices(generic_skew_poly(5, 2, 3)) == std::vector<int>{6});
  CHECK(indices(generic_skew_poly(4, 1, 5)) == std::vector<int>{2, 3});
  CHECK(indices(generic_skew_poly(4, 1, 1)) == std::vector<int>{0, 1});

  CHECK_THROWS_AS(generic_skew_poly(4, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(generic_skew_poly(4, 2, 3), std::invalid_argument);

  // index sum identity: sum of minimal indices == d * r for these structures
  for (int m = 3; m <= 9; ++m)
    for (int r = 1; 2 * r <= m - 1; ++r)
      for (int d : {1, 3, 5, 7}) {
        const EigStruct g = generic_skew_poly(m, r, d);
        CHECK(index_sum_check(g, d, 2 * r));
        CHECK(static_cast<int>(g.right.size()) == m - 2 * r);
      }
}

TEST_CASE("codimension formulas agree") {
  CHECK(codim_sum_formula(m_form({1, 1})) == 4);
  CHECK(codim_sum_formula(m_form({1, 1, 1, 0})) == 21);
  CHECK(codim_sum_formula(m_form({0, 0})) == 2);
  CHECK(codim_closed_form(10, 3) == 21);
  CHECK(codim_closed_form(6, 2) == 4);
  CHECK(codim_closed_form(5, 2) == 0);

  for (int n = 2; n <= 24; ++n)
    for (int w = 1; 2 * w <= n - 1; ++w)
      CHECK(codim_sum_formula(generic_skew_pencil(n, w)) == codim_closed_form(n, w));

  CHECK_THROWS_AS(codim_sum_formula(SkewKcf({SkewBlock::k_block(1), SkewBlock::m_block(0)})),
                  std::invalid_argument);
}

TEST_CASE("polynomial codimension") {
  CHECK(codim_poly(4, 1, 3) == 7);
  CHECK(codim_poly(3, 1, 3) == 0);
  CHECK(codim_poly(5, 1, 3) == 18);
  CHECK(codim_poly(5, 2, 3) == 0);
  CHECK(codim_poly(4, 1, 1) == 3);
  // grade 1 reduces to the pencil count
  for (int m = 3; m <= 12; ++m)
    for (int r = 1; 2 * r <= m - 1; ++r) CHECK(codim_poly(m, r, 1) == codim_closed_form(m, r));
}

TEST_CASE("polynomial to pencil parameter map") {
  CHECK(pencil_params_of_poly(4, 1, 3) == std::pair<int, int>{12, 5});
  CHECK(pencil_params_of_poly(3, 1, 5) == std::pair<int, int>{15, 7});
  CHECK(pencil_params_of_poly(5, 2, 1) == std::pair<int, int>{5, 2});

  for (int m = 3; m <= 10; ++m)
    for (int r = 1; 2 * r <= m - 1; ++r)
      for (int d : {1, 3, 5, 7, 9}) {
        const auto [n, w] = pencil_params_of_poly(m, r, d);
        CHECK(n == m * d);
        CHECK(2 * w == m * (d - 1) + 2 * r);
        // the pencil parameters stay inside the bounded rank regime
        CHECK(2 <= 2 * w);
        CHECK(2 * w <= n - 1);
      }
}

TEST_CASE("shifted structure of the generic polynomial matches the generic pencil") {
  for (int m = 3; m <= 9; ++m)
    for (int r = 1; 2 * r <= m - 1; ++r)
      for (int d : {1, 3, 5}) {
        const auto [n, w] = pencil_params_of_poly(m, r, d);
        const Kcf lifted = shifted_linearization_structure(generic_skew_poly(m, r, d), d);
        CHECK(lifted == skew_to_kcf(generic_skew_pencil(n, w)));
      }
  // spot value: m=3, r=1, d=5 lifts the single index 5 to 7
  const Kcf k = shifted_linearization_structure(generic_skew_poly(3, 1, 5), 5);
  CHECK(k == Kcf({KcfBlock::right_singular(7), KcfBlock::left_singular(7)}));
}
