#pragma once

// End-to-end acceptance checks exercising the toolkit across modules.  Every
// tolerance and seed is pinned here or in the ToleranceModel defaults; each
// criterion reports one pass/fail verdict with a short diagnostic.

#include <chrono>
#include <ostream>
#include <string>
#include <vector>

#include "skewcanon/canon.hpp"
#include "skewcanon/closure.hpp"
#include "skewcanon/generic.hpp"
#include "skewcanon/linearize.hpp"
#include "skewcanon/numeric.hpp"
#include "skewcanon/sampling.hpp"

namespace skewcanon {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace acceptance_detail {

constexpr std::uint64_t kMasterSeedPencil = 0xacce97ed00000001ull;
constexpr std::uint64_t kMasterSeedPoly = 0xacce97ed00000002ull;
constexpr std::uint64_t kMasterSeedLinearize = 0xacce97ed00000003ull;

template <typename F>
CriterionResult timed(int id, const std::string& name, F&& body) {
  CriterionResult res;
  res.id = id;
  res.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(res);
  } catch (const std::exception& e) {
    res.pass = false;
    res.detail = std::string("exception: ") + e.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace acceptance_detail

// 1: the predicted generic stratum dominates every stratum of its rank
// range, and no other stratum dominates everything.
inline CriterionResult criterion_most_generic_dominates() {
  using acceptance_detail::timed;
  return timed(1, "generic stratum dominates all bounded-rank strata (n=3..12)",
               [](CriterionResult& res) {
    int strata_checked = 0, certificates = 0;
    for (int n = 3; n <= 12; ++n)
      for (int w = 1; 2 * w <= n - 1; ++w) {
        const SkewKcf gen = generic_skew_pencil(n, w);
        const auto strata = enumerate_skew_kcfs(n, 2 * w, 3);
        for (const auto& x : strata) {
          ++strata_checked;
          const DominanceResult fwd = skew_dominates(gen, x);
          if (!fwd.dominates) {
            res.detail = "generic form " + gen.to_string() + " fails to dominate " +
                         x.to_string() + " at n=" + std::to_string(n) +
                         ", w=" + std::to_string(w);
            return;
          }
          if (!verify_paired_certificate(gen, x, fwd.certificate)) {
            res.detail = "certificate replay failed for " + x.to_string() + " -> " +
                         gen.to_string();
            return;
          }
          ++certificates;
          if (!(x == gen) && skew_dominates(x, gen).dominates) {
            res.detail = "non-generic stratum " + x.to_string() + " dominates " +
                         gen.to_string() + " at n=" + std::to_string(n) +
                         ", w=" + std::to_string(w);
            return;
          }
        }
      }
    res.pass = true;
    res.detail = std::to_string(strata_checked) + " strata checked, " +
                 std::to_string(certificates) + " certificates verified";
  });
}

// 2: block-pair codimension sum equals the closed form on the generic
// stratum.
inline CriterionResult criterion_codimension_closed_form() {
  using acceptance_detail::timed;
  return timed(2, "generic stratum codimension matches closed form (n<=60)",
               [](CriterionResult& res) {
    int cases = 0;
    for (int n = 2; n <= 60; ++n)
      for (int w = 1; 2 * w <= n - 1; ++w) {
        const long long sum = codim_sum_formula(generic_skew_pencil(n, w));
        const long long closed = codim_closed_form(n, w);
        if (sum != closed) {
          res.detail = "mismatch at n=" + std::to_string(n) + ", w=" + std::to_string(w) +
                       ": sum formula " + std::to_string(sum) + ", closed form " +
                       std::to_string(closed);
          return;
        }
        ++cases;
      }
    res.pass = true;
    res.detail = std::to_string(cases) + " (n,w) pairs agree exactly";
  });
}

// 3: polynomial-level generic structure is consistent with the pencil-level
// one under the parameter correspondence and the index shift.
inline CriterionResult criterion_poly_pencil_consistency() {
  using acceptance_detail::timed;
  return timed(3, "polynomial and pencil generic structures correspond (m<=20, d<=9)",
               [](CriterionResult& res) {
    int cases = 0;
    for (int m = 3; m <= 20; ++m)
      for (int r = 1; 2 * r <= m - 1; ++r)
        for (int d = 1; d <= 9; d += 2) {
          const auto [n, w] = pencil_params_of_poly(m, r, d);
          const int alpha = w / (n - 2 * w), s = w % (n - 2 * w);
          const int beta = r * d / (m - 2 * r), t = r * d % (m - 2 * r);
          if (alpha != beta + (d - 1) / 2 || s != t) {
            res.detail = "index parameters disagree at m=" + std::to_string(m) +
                         ", r=" + std::to_string(r) + ", d=" + std::to_string(d);
            return;
          }
          if (codim_poly(m, r, d) != codim_closed_form(n, w)) {
            res.detail = "codimension formulas disagree at m=" + std::to_string(m) +
                         ", r=" + std::to_string(r) + ", d=" + std::to_string(d);
            return;
          }
          const Kcf shifted = shifted_linearization_structure(generic_skew_poly(m, r, d), d);
          const Kcf pencil_level = skew_to_kcf(generic_skew_pencil(n, w));
          if (!(shifted == pencil_level)) {
            res.detail = "shifted generic polynomial structure differs from the generic "
                         "pencil structure at m=" + std::to_string(m) +
                         ", r=" + std::to_string(r) + ", d=" + std::to_string(d);
            return;
          }
          ++cases;
        }
    res.pass = true;
    res.detail = std::to_string(cases) + " (m,r,d) triples agree";
  });
}

// 4: numeric recovery reproduces the exact structure of every canonical
// block realization and every generic pencil realization.
inline CriterionResult criterion_recovery_on_canonical_forms() {
  using acceptance_detail::timed;
  return timed(4, "structure recovery is exact on canonical realizations",
               [](CriterionResult& res) {
    struct Case {
      std::string name;
      Pencil pencil;
      int rank;
      std::vector<int> right, left;
      int delta;
    };
    std::vector<Case> cases;
    const std::vector<Eigenvalue> mus = {
        Eigenvalue::finite(2.0), Eigenvalue::finite(-0.75), Eigenvalue::finite(1.5, -2.25),
        Eigenvalue::infinity()};
    for (int k = 1; k <= 6; ++k)
      for (const auto& mu : mus)
        cases.push_back({"E" + std::to_string(k) + "(" + mu.to_string() + ")",
                         realize_kcf(Kcf({KcfBlock::regular(mu, k)})), k, {}, {}, k});
    for (int k = 0; k <= 6; ++k) {
      cases.push_back({"L" + std::to_string(k),
                       realize_kcf(Kcf({KcfBlock::right_singular(k)})), k, {k}, {}, 0});
      cases.push_back({"LT" + std::to_string(k),
                       realize_kcf(Kcf({KcfBlock::left_singular(k)})), k, {}, {k}, 0});
    }
    for (int h = 1; h <= 6; ++h)
      cases.push_back({"H" + std::to_string(h),
                       realize_skew_kcf(SkewKcf({SkewBlock::h_block(Eigenvalue::finite(3.0), h)})),
                       2 * h, {}, {}, 2 * h});
    for (int k = 1; k <= 6; ++k)
      cases.push_back({"K" + std::to_string(k),
                       realize_skew_kcf(SkewKcf({SkewBlock::k_block(k)})), 2 * k, {}, {}, 2 * k});
    for (int m = 0; m <= 6; ++m)
      cases.push_back({"M" + std::to_string(m),
                       realize_skew_kcf(SkewKcf({SkewBlock::m_block(m)})), 2 * m, {m}, {m}, 0});
    for (int n = 2; n <= 10; ++n)
      for (int w = 1; 2 * w <= n - 1; ++w) {
        const SkewKcf gen = generic_skew_pencil(n, w);
        std::vector<int> idx;
        for (const auto& b : gen.blocks()) idx.push_back(b.size);
        std::sort(idx.begin(), idx.end());
        cases.push_back({"generic(" + std::to_string(n) + "," + std::to_string(w) + ")",
                         realize_skew_kcf(gen), 2 * w, idx, idx, 0});
      }

    int checked = 0;
    for (const auto& c : cases) {
      RecoveredStructure rec;
      try {
        rec = recover(c.pencil);
      } catch (const ToleranceError& e) {
        res.detail = c.name + ": " + e.what();
        return;
      }
      if (rec.normal_rank != c.rank || rec.right != c.right || rec.left != c.left ||
          rec.divisor_degree_sum != c.delta) {
        res.detail = c.name + ": recovered rank " + std::to_string(rec.normal_rank) +
                     ", expected " + std::to_string(c.rank);
        return;
      }
      ++checked;
    }
    res.pass = true;
    res.detail = std::to_string(checked) + " realizations recovered exactly";
  });
}

// 5: the congruence tangent map reproduces the closed-form codimension.
inline CriterionResult criterion_tangent_codimension() {
  using acceptance_detail::timed;
  return timed(5, "tangent map codimension matches closed form (n<=10)",
               [](CriterionResult& res) {
    int cases = 0;
    for (int n = 2; n <= 10; ++n)
      for (int w = 1; 2 * w <= n - 1; ++w) {
        const Pencil p = realize_skew_kcf(generic_skew_pencil(n, w));
        const int numeric = tangent_codim(p);
        const long long closed = codim_closed_form(n, w);
        if (numeric != closed) {
          res.detail = "n=" + std::to_string(n) + ", w=" + std::to_string(w) + ": tangent map " +
                       std::to_string(numeric) + ", closed form " + std::to_string(closed);
          return;
        }
        ++cases;
      }
    res.pass = true;
    res.detail = std::to_string(cases) + " orbit codimensions agree";
  });
}

// 6: sampled bounded-rank pencils recover the generic structure.
inline CriterionResult criterion_monte_carlo_pencil() {
  using acceptance_detail::timed;
  return timed(6, "sampled pencils hit the generic structure (>=99/100)",
               [](CriterionResult& res) {
    const std::vector<std::pair<int, int>> configs = {{4, 1}, {5, 2}, {8, 2}, {10, 3}};
    std::string detail;
    for (const auto& [n, w] : configs) {
      const auto t0 = std::chrono::steady_clock::now();
      const ExperimentReport rep =
          genericity_experiment_pencil(n, w, 100, acceptance_detail::kMasterSeedPencil);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (!detail.empty()) detail += "; ";
      detail += "(" + std::to_string(n) + "," + std::to_string(w) + "): " +
                std::to_string(rep.matches) + "/100";
      if (rep.matches < 99) {
        res.detail = detail + " below threshold 99";
        return;
      }
      if (secs >= 60.0) {
        res.detail = detail + " took " + std::to_string(secs) + "s (limit 60s)";
        return;
      }
    }
    res.pass = true;
    res.detail = detail;
  });
}

// 7: sampled bounded-rank polynomials recover the generic structure with no
// elementary divisors.
inline CriterionResult criterion_monte_carlo_poly() {
  using acceptance_detail::timed;
  return timed(7, "sampled polynomials hit the generic structure (>=99/100)",
               [](CriterionResult& res) {
    const std::vector<std::tuple<int, int, int>> configs = {
        {4, 1, 3}, {3, 1, 3}, {5, 1, 3}, {5, 2, 3}, {4, 1, 5}};
    std::string detail;
    for (const auto& [m, r, d] : configs) {
      const ExperimentReport rep =
          genericity_experiment_poly(m, r, d, 100, acceptance_detail::kMasterSeedPoly);
      if (!detail.empty()) detail += "; ";
      detail += "(" + std::to_string(m) + "," + std::to_string(r) + "," + std::to_string(d) +
                "): " + std::to_string(rep.matches) + "/100";
      if (rep.matches < 99) {
        res.detail = detail + " below threshold 99";
        return;
      }
    }
    res.pass = true;
    res.detail = detail;
  });
}

// 8: linearization shifts minimal indices by (d-1)/2 and extract inverts it
// exactly.
inline CriterionResult criterion_linearization() {
  using acceptance_detail::timed;
  return timed(8, "linearization shifts indices and round-trips (>=49/50)",
               [](CriterionResult& res) {
    const std::vector<std::tuple<int, int, int>> configs = {{4, 1, 3}, {3, 1, 5}};
    std::string detail;
    for (const auto& [m, r, d] : configs) {
      const ExperimentReport rep =
          linearization_experiment(m, r, d, 50, acceptance_detail::kMasterSeedLinearize);
      for (const auto& mis : rep.mismatches)
        if (mis.recovered == "extract(linearize(p)) differs from p") {
          res.detail = "round-trip failure at (" + std::to_string(m) + "," + std::to_string(r) +
                       "," + std::to_string(d) + ") trial " + std::to_string(mis.trial);
          return;
        }
      if (!detail.empty()) detail += "; ";
      detail += "(" + std::to_string(m) + "," + std::to_string(r) + "," + std::to_string(d) +
                "): " + std::to_string(rep.matches) + "/50";
      if (rep.matches < 49) {
        res.detail = detail + " below threshold 49";
        return;
      }
    }
    res.pass = true;
    res.detail = detail;
  });
}

inline std::vector<CriterionResult> run_acceptance(std::ostream& out) {
  std::vector<CriterionResult> results;
  const auto run = [&](CriterionResult r) {
    char line[64];
    std::snprintf(line, sizeof line, "%6.1fs", r.seconds);
    out << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.id << " (" << line << "): "
        << r.name << " -- " << r.detail << "\n";
    out.flush();
    results.push_back(std::move(r));
  };
  run(criterion_most_generic_dominates());
  run(criterion_codimension_closed_form());
  run(criterion_poly_pencil_consistency());
  run(criterion_recovery_on_canonical_forms());
  run(criterion_tangent_codimension());
  run(criterion_monte_carlo_pencil());
  run(criterion_monte_carlo_poly());
  run(criterion_linearization());
  return results;
}

}  // namespace skewcanon
