#include <skewcanon/numeric.hpp>
#include <skewcanon/sampling.hpp>

#include "doctest.h"

using namespace skewcanon;

TEST_CASE("derived streams are deterministic and distinct") {
  const std::uint64_t master = 0x5eedc0de5eedc0deull;
  CHECK(Rng::derive(master, 0) == Rng::derive(master, 0));
  CHECK(Rng::derive(master, 0) != Rng::derive(master, 1));
  CHECK(Rng::derive(master, 1) != Rng::derive(master + 1, 1));

  Rng a(42), b(42), c(43);
  bool all_equal = true, any_equal_to_c = false;
  for (int i = 0; i < 100; ++i) {
    const double va = a.gaussian(), vb = b.gaussian(), vc = c.gaussian();
    all_equal = all_equal && va == vb;
    any_equal_to_c = any_equal_to_c || va == vc;
  }
  CHECK(all_equal);
  CHECK_FALSE(any_equal_to_c);
}

TEST_CASE("gaussian source has sane moments") {
  Rng rng(7);
  const int count = 20000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < count; ++i) {
    const double x = rng.gaussian();
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / count;
  const double var = sumsq / count - mean * mean;
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("bounded rank samples are exactly skew with the intended rank") {
  Rng rng(Rng::derive(0xfeedbeefull, 3));
  const MatPoly p = sample_bounded_rank_skew_poly(6, 2, 3, rng);
  CHECK(p.rows() == 6);
  CHECK(p.grade() == 3);
  CHECK(is_exactly_skew(p));
  CHECK(normal_rank(p) == 4);

  Rng rng2(Rng::derive(0xfeedbeefull, 4));
  const Pencil q = sample_bounded_rank_skew_pencil(7, 2, rng2);
  CHECK(is_exactly_skew(q));
  CHECK(normal_rank(q) == 4);
  const RecoveredStructure rs = recover(q);
  CHECK(rs.right == rs.left);
  CHECK(rs.right.size() == 3);

  CHECK_THROWS_AS(sample_bounded_rank_skew_poly(4, 2, 3, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_bounded_rank_skew_poly(4, 1, 0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_bounded_rank_skew_pencil(2, 1, rng), std::invalid_argument);
}

TEST_CASE("sampling is reproducible from the seed") {
  Rng a(991), b(991), c(992);
  const MatPoly pa = sample_bounded_rank_skew_poly(5, 1, 3, a);
  const MatPoly pb = sample_bounded_rank_skew_poly(5, 1, 3, b);
  const MatPoly pc = sample_bounded_rank_skew_poly(5, 1, 3, c);
  CHECK(distance(pa, pb) == 0.0);
  CHECK(distance(pa, pc) != 0.0);
}

TEST_CASE("genericity experiments match on every trial") {
  const ExperimentReport rp = genericity_experiment_pencil(5, 2, 20, 0x00cafe01ull);
  CHECK(rp.kind == "pencil");
  CHECK(rp.n == 5);
  CHECK(rp.w == 2);
  CHECK(rp.trials == 20);
  CHECK(rp.matches == 20);
  CHECK(rp.master_seed == 0x00cafe01ull);
  CHECK(rp.mismatches.empty());

  const ExperimentReport rq = genericity_experiment_poly(3, 1, 3, 10, 0x00cafe02ull);
  CHECK(rq.kind == "poly");
  CHECK(rq.m == 3);
  CHECK(rq.matches == 10);
  CHECK(rq.mismatches.empty());

  const ExperimentReport rl = linearization_experiment(3, 1, 3, 8, 0x00cafe03ull);
  CHECK(rl.kind == "linearization");
  CHECK(rl.matches == 8);
  CHECK(rl.mismatches.empty());

  // experiments are reproducible as a whole
  const ExperimentReport rp2 = genericity_experiment_pencil(5, 2, 20, 0x00cafe01ull);
  CHECK(rp2.matches == rp.matches);
  CHECK(rp2.low_confidence_trials == rp.low_confidence_trials);
}
