// Command line interface to the skewcanon toolkit.
//
// Exit codes: 0 on success (dominance holds, structures match), 1 on a
// negative verdict (not dominated, experiment mismatches, tolerance
// inconsistency), 2 on usage or input errors.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "skewcanon/skewcanon.hpp"

namespace {

using namespace skewcanon;

struct GlobalOpts {
  double tol = ToleranceModel{}.rel_threshold;
  std::uint64_t seed = 0x5eedc0de5eedc0deull;
  int trials = 100;
  std::string format;  // "json", "text", or "dot"; commands pick a default
  std::string out_path;
  int eig_budget = -1;
  int depth_cap = -1;

  ToleranceModel tolerance() const {
    ToleranceModel t;
    t.rel_threshold = tol;
    return t;
  }
  DominanceOptions dominance() const {
    DominanceOptions d;
    d.eig_budget = eig_budget;
    d.depth_cap = depth_cap;
    return d;
  }
};

void write_output(const GlobalOpts& g, const std::string& text) {
  if (g.out_path.empty() || g.out_path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(g.out_path);
  if (!f) throw std::invalid_argument("cannot open output file '" + g.out_path + "'");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

json read_json_file(const std::string& path) {
  if (path == "-") return json::parse(std::cin);
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open input file '" + path + "'");
  return json::parse(f);
}

std::string matrix_text(const Matrix& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

std::string pencil_text(const Pencil& p) {
  return "A =\n" + matrix_text(p.A) + "\nB =\n" + matrix_text(p.B) + "\n(pencil lambda*A - B)";
}

std::string certificate_text(const ClosureCertificate& cert) {
  std::string s;
  for (const auto& step : cert.steps) {
    s += "rule " + std::to_string(step.rule) + ": ";
    for (std::size_t i = 0; i < step.consumed.size(); ++i)
      s += (i ? ", " : "") + step.consumed[i].to_string();
    s += " -> ";
    for (std::size_t i = 0; i < step.produced.size(); ++i)
      s += (i ? ", " : "") + step.produced[i].to_string();
    s += "\n";
  }
  for (const auto& [from, to] : cert.label_map) s += "rename " + from + " -> " + to + "\n";
  return s;
}

std::string report_text(const ExperimentReport& rep) {
  std::string s = rep.kind + " experiment: " + std::to_string(rep.matches) + "/" +
                  std::to_string(rep.trials) + " trials matched";
  if (rep.low_confidence_trials)
    s += " (" + std::to_string(rep.low_confidence_trials) + " low-confidence)";
  s += "\n";
  for (const auto& m : rep.mismatches) {
    s += "  trial " + std::to_string(m.trial) + " (seed " + std::to_string(m.seed) + ")";
    if (!m.expected.empty()) s += "\n    expected  " + m.expected;
    s += "\n    recovered " + m.recovered + "\n";
  }
  return s;
}

Eigenvalue eig_from_flags(bool has_re, double re, double im, bool inf, const std::string& label) {
  if (inf) return Eigenvalue::infinity();
  if (!label.empty()) return Eigenvalue::symbolic(label);
  if (has_re) return Eigenvalue::finite(re, im);
  throw std::invalid_argument("this block needs an eigenvalue: pass --re/--im, --inf, or --label");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skew-symmetric matrix pencil and polynomial canonical structures"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--tol", g.tol, "relative rank threshold")->envname("SKEWCANON_TOL");
  app.add_option("--seed", g.seed, "master seed for experiments")->envname("SKEWCANON_SEED");
  app.add_option("--trials", g.trials, "Monte Carlo trials")->envname("SKEWCANON_TRIALS");
  app.add_option("--format", g.format, "output format: json, text, or dot")
      ->envname("SKEWCANON_FORMAT");
  app.add_option("--out", g.out_path, "output file (default stdout)")->envname("SKEWCANON_OUT");
  app.add_option("--eig-budget", g.eig_budget, "fresh eigenvalue budget for closure searches")
      ->envname("SKEWCANON_EIG_BUDGET");
  app.add_option("--depth-cap", g.depth_cap, "rule application cap for closure searches")
      ->envname("SKEWCANON_DEPTH_CAP");

  const auto fmt = [&](const char* dflt) { return g.format.empty() ? dflt : g.format.c_str(); };
  int exit_code = 0;

  // block TYPE SIZE [eigenvalue flags]
  auto* c_block = app.add_subcommand("block", "realize one canonical block as a pencil");
  std::string blk_type;
  int blk_size = 0;
  double blk_re = 0.0, blk_im = 0.0;
  bool blk_inf = false;
  std::string blk_label;
  c_block->add_option("type", blk_type, "E, L, LT, H, K, or M")->required();
  c_block->add_option("size", blk_size, "block size parameter")->required();
  auto* blk_re_opt = c_block->add_option("--re", blk_re, "eigenvalue real part");
  c_block->add_option("--im", blk_im, "eigenvalue imaginary part");
  c_block->add_flag("--inf", blk_inf, "eigenvalue at infinity");
  c_block->add_option("--label", blk_label, "symbolic eigenvalue label");
  c_block->callback([&] {
    Pencil p = [&] {
      if (blk_type == "E")
        return realize_kcf(Kcf({KcfBlock::regular(
            eig_from_flags(blk_re_opt->count() > 0, blk_re, blk_im, blk_inf, blk_label),
            blk_size)}));
      if (blk_type == "L") return realize_kcf(Kcf({KcfBlock::right_singular(blk_size)}));
      if (blk_type == "LT") return realize_kcf(Kcf({KcfBlock::left_singular(blk_size)}));
      if (blk_type == "H")
        return realize_skew_kcf(SkewKcf({SkewBlock::h_block(
            eig_from_flags(blk_re_opt->count() > 0, blk_re, blk_im, false, blk_label),
            blk_size)}));
      if (blk_type == "K") return realize_skew_kcf(SkewKcf({SkewBlock::k_block(blk_size)}));
      if (blk_type == "M") return realize_skew_kcf(SkewKcf({SkewBlock::m_block(blk_size)}));
      throw std::invalid_argument("unknown block type '" + blk_type + "'");
    }();
    write_output(g, std::string(fmt("json")) == "json" ? to_json(p).dump(2) : pencil_text(p));
  });

  // realize FORM.json [--kcf]
  auto* c_realize = app.add_subcommand("realize", "realize a canonical form as a pencil");
  std::string realize_path;
  bool realize_kcf_flag = false;
  c_realize->add_option("form", realize_path, "canonical form JSON (skew by default)")->required();
  c_realize->add_flag("--kcf", realize_kcf_flag, "input is a general Kronecker form");
  c_realize->callback([&] {
    const json j = read_json_file(realize_path);
    const Pencil p =
        realize_kcf_flag ? realize_kcf(kcf_from_json(j)) : realize_skew_kcf(skew_kcf_from_json(j));
    write_output(g, std::string(fmt("json")) == "json" ? to_json(p).dump(2) : pencil_text(p));
  });

  // generic-pencil N W
  auto* c_genp = app.add_subcommand("generic-pencil", "generic skew pencil of bounded rank");
  int gp_n = 0, gp_w = 0;
  c_genp->add_option("n", gp_n, "pencil size")->required();
  c_genp->add_option("w", gp_w, "half the normal rank")->required();
  c_genp->callback([&] {
    const SkewKcf form = generic_skew_pencil(gp_n, gp_w);
    if (std::string(fmt("json")) == "json") {
      json j;
      j["form"] = to_json(form);
      j["codim"] = codim_closed_form(gp_n, gp_w);
      write_output(g, j.dump(2));
    } else {
      write_output(g, form.to_string() + "\ncodimension " +
                          std::to_string(codim_closed_form(gp_n, gp_w)));
    }
  });

  // generic-poly M R D
  auto* c_genq = app.add_subcommand("generic-poly", "generic skew polynomial structure");
  int gq_m = 0, gq_r = 0, gq_d = 0;
  c_genq->add_option("m", gq_m, "matrix size")->required();
  c_genq->add_option("r", gq_r, "half the normal rank")->required();
  c_genq->add_option("d", gq_d, "odd grade")->required();
  c_genq->callback([&] {
    const EigStruct e = generic_skew_poly(gq_m, gq_r, gq_d);
    if (std::string(fmt("json")) == "json") {
      json j;
      j["structure"] = to_json(e);
      j["codim"] = codim_poly(gq_m, gq_r, gq_d);
      write_output(g, j.dump(2));
    } else {
      std::string s = "right indices:";
      for (int x : e.right) s += " " + std::to_string(x);
      s += "\nleft indices:";
      for (int x : e.left) s += " " + std::to_string(x);
      s += "\ncodimension " + std::to_string(codim_poly(gq_m, gq_r, gq_d));
      write_output(g, s);
    }
  });

  // codim {pencil N W | poly M R D | sum FORM.json}
  auto* c_codim = app.add_subcommand("codim", "orbit codimension formulas");
  c_codim->require_subcommand(1);
  auto* c_codim_pencil = c_codim->add_subcommand("pencil", "closed form for the generic pencil");
  int cp_n = 0, cp_w = 0;
  c_codim_pencil->add_option("n", cp_n)->required();
  c_codim_pencil->add_option("w", cp_w)->required();
  c_codim_pencil->callback([&] {
    generic_skew_pencil(cp_n, cp_w);  // validate the parameter range
    write_output(g, std::to_string(codim_closed_form(cp_n, cp_w)));
  });
  auto* c_codim_poly = c_codim->add_subcommand("poly", "closed form for the generic polynomial");
  int cq_m = 0, cq_r = 0, cq_d = 0;
  c_codim_poly->add_option("m", cq_m)->required();
  c_codim_poly->add_option("r", cq_r)->required();
  c_codim_poly->add_option("d", cq_d)->required();
  c_codim_poly->callback([&] { write_output(g, std::to_string(codim_poly(cq_m, cq_r, cq_d))); });
  auto* c_codim_sum = c_codim->add_subcommand("sum", "pairwise sum formula for a singular form");
  std::string codim_sum_path;
  c_codim_sum->add_option("form", codim_sum_path, "skew canonical form JSON")->required();
  c_codim_sum->callback([&] {
    write_output(g, std::to_string(codim_sum_formula(skew_kcf_from_json(read_json_file(codim_sum_path)))));
  });

  // closure-check TARGET.json SOURCE.json [--kcf]
  auto* c_closure = app.add_subcommand(
      "closure-check", "does the source structure lie in the target orbit closure");
  std::string cc_target, cc_source;
  bool cc_kcf = false;
  c_closure->add_option("target", cc_target, "target canonical form JSON")->required();
  c_closure->add_option("source", cc_source, "source canonical form JSON")->required();
  c_closure->add_flag("--kcf", cc_kcf, "general Kronecker forms instead of skew forms");
  c_closure->callback([&] {
    const json tj = read_json_file(cc_target), sj = read_json_file(cc_source);
    DominanceResult res;
    if (cc_kcf)
      res = dominates(kcf_from_json(tj), kcf_from_json(sj), g.dominance());
    else
      res = skew_dominates(skew_kcf_from_json(tj), skew_kcf_from_json(sj), g.dominance());
    if (std::string(fmt("json")) == "json") {
      json j;
      j["dominates"] = res.dominates;
      j["capped"] = res.capped;
      j["states_explored"] = res.states_explored;
      if (res.dominates) j["certificate"] = to_json(res.certificate);
      write_output(g, j.dump(2));
    } else {
      std::string s = res.dominates ? "dominates: yes\n" + certificate_text(res.certificate)
                                    : std::string("dominates: no") +
                                          (res.capped ? " (search capped)" : "");
      write_output(g, s);
    }
    if (!res.dominates) exit_code = 1;
  });

  // enumerate N MAXRANK [--labels L]
  auto* c_enum = app.add_subcommand("enumerate", "all skew canonical forms of bounded rank");
  int en_n = 0, en_rank = 0, en_labels = 3;
  c_enum->add_option("n", en_n, "size")->required();
  c_enum->add_option("maxrank", en_rank, "rank bound (even)")->required();
  c_enum->add_option("--labels", en_labels, "distinct eigenvalue labels available");
  c_enum->callback([&] {
    const auto strata = enumerate_skew_kcfs(en_n, en_rank, en_labels);
    if (std::string(fmt("json")) == "json") {
      json j = json::array();
      for (const auto& s : strata) j.push_back(to_json(s));
      write_output(g, j.dump(2));
    } else {
      std::string s;
      for (const auto& st : strata) s += st.to_string() + "\n";
      s += std::to_string(strata.size()) + " strata";
      write_output(g, s);
    }
  });

  // strata-dag N MAXRANK [--labels L]
  auto* c_dag = app.add_subcommand("strata-dag", "dominance DAG over bounded-rank strata");
  int dg_n = 0, dg_rank = 0, dg_labels = 3;
  c_dag->add_option("n", dg_n, "size")->required();
  c_dag->add_option("maxrank", dg_rank, "rank bound (even)")->required();
  c_dag->add_option("--labels", dg_labels, "distinct eigenvalue labels available");
  c_dag->callback([&] {
    const auto strata = enumerate_skew_kcfs(dg_n, dg_rank, dg_labels);
    const auto edges = dominance_edges(strata, g.dominance());
    if (std::string(fmt("dot")) == "json") {
      json j;
      j["strata"] = json::array();
      for (const auto& s : strata) j["strata"].push_back(to_json(s));
      j["edges"] = json::array();
      for (const auto& [a, b] : edges) j["edges"].push_back(json::array({a, b}));
      write_output(g, j.dump(2));
    } else {
      write_output(g, strata_dot(strata, edges));
    }
  });

  // linearize POLY.json
  auto* c_lin = app.add_subcommand("linearize", "companion linearization of a skew polynomial");
  std::string lin_path;
  c_lin->add_option("poly", lin_path, "matrix polynomial JSON")->required();
  c_lin->callback([&] {
    const GsylPencil lin = linearize(matpoly_from_json(read_json_file(lin_path)));
    if (std::string(fmt("json")) == "json") {
      json j;
      j["m"] = lin.m;
      j["d"] = lin.d;
      j["pencil"] = to_json(lin.pencil);
      write_output(g, j.dump(2));
    } else {
      write_output(g, pencil_text(lin.pencil));
    }
  });

  // analyze POLY.json
  auto* c_analyze = app.add_subcommand("analyze", "recover the structure of a polynomial");
  std::string an_path;
  c_analyze->add_option("poly", an_path, "matrix polynomial JSON")->required();
  c_analyze->callback([&] {
    const MatPoly p = matpoly_from_json(read_json_file(an_path));
    const RecoveredStructure rec = recover(p, g.tolerance());
    if (std::string(fmt("json")) == "json") {
      write_output(g, to_json(rec).dump(2));
    } else {
      std::string s = "normal rank " + std::to_string(rec.normal_rank) + "\nright indices:";
      for (int e : rec.right) s += " " + std::to_string(e);
      s += "\nleft indices:";
      for (int e : rec.left) s += " " + std::to_string(e);
      s += "\nelementary divisor degree sum " + std::to_string(rec.divisor_degree_sum);
      if (rec.audit.any_low_confidence()) s += "\nwarning: low-confidence rank decisions";
      write_output(g, s);
    }
  });

  // experiment {pencil N W | poly M R D | linearization M R D}
  auto* c_exp = app.add_subcommand("experiment", "Monte Carlo genericity experiments");
  c_exp->require_subcommand(1);
  int ex_n = 0, ex_w = 0, ex_m = 0, ex_r = 0, ex_d = 0;
  auto* c_exp_pencil = c_exp->add_subcommand("pencil", "bounded-rank pencil genericity");
  c_exp_pencil->add_option("n", ex_n)->required();
  c_exp_pencil->add_option("w", ex_w)->required();
  auto* c_exp_poly = c_exp->add_subcommand("poly", "bounded-rank polynomial genericity");
  c_exp_poly->add_option("m", ex_m)->required();
  c_exp_poly->add_option("r", ex_r)->required();
  c_exp_poly->add_option("d", ex_d)->required();
  auto* c_exp_lin = c_exp->add_subcommand("linearization", "index shift under linearization");
  c_exp_lin->add_option("m", ex_m)->required();
  c_exp_lin->add_option("r", ex_r)->required();
  c_exp_lin->add_option("d", ex_d)->required();
  const auto run_experiment = [&](const ExperimentReport& rep) {
    write_output(g, std::string(fmt("json")) == "json" ? to_json(rep).dump(2) : report_text(rep));
    if (rep.matches != rep.trials) exit_code = 1;
  };
  c_exp_pencil->callback([&] {
    run_experiment(genericity_experiment_pencil(ex_n, ex_w, g.trials, g.seed, g.tolerance()));
  });
  c_exp_poly->callback([&] {
    run_experiment(genericity_experiment_poly(ex_m, ex_r, ex_d, g.trials, g.seed, g.tolerance()));
  });
  c_exp_lin->callback([&] {
    run_experiment(linearization_experiment(ex_m, ex_r, ex_d, g.trials, g.seed, g.tolerance()));
  });

  // verify
  auto* c_verify = app.add_subcommand("verify", "run the acceptance criteria");
  c_verify->callback([&] {
    const auto results = run_acceptance(std::cout);
    for (const auto& r : results)
      if (!r.pass) ++exit_code;
  });

  // global options (--format, --seed, ...) may appear after the subcommand
  const std::function<void(CLI::App*)> allow_globals_anywhere = [&](CLI::App* cmd) {
    for (CLI::App* sub : cmd->get_subcommands(nullptr)) {
      sub->fallthrough();
      allow_globals_anywhere(sub);
    }
  };
  allow_globals_anywhere(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return 2;
  } catch (const ToleranceError& e) {
    std::cerr << "tolerance inconsistency: " << e.what() << "\n";
    for (const auto& d : e.audit().decisions)
      if (d.low_confidence)
        std::cerr << "  low confidence: " << d.context << " rank " << d.rank << " gap " << d.gap
                  << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
