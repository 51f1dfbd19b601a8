#pragma once

// JSON (de)serialization for the toolkit's structures and DOT export for
// stratification graphs.  Numbers round-trip exactly: doubles are emitted
// with shortest-roundtrip formatting and seeds fit the unsigned 64-bit JSON
// integer range.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "skewcanon/blocks.hpp"
#include "skewcanon/closure.hpp"
#include "skewcanon/numeric.hpp"
#include "skewcanon/pencil.hpp"
#include "skewcanon/sampling.hpp"

namespace skewcanon {

using nlohmann::json;

namespace io_detail {

inline void put_eig(json& j, const Eigenvalue& e) {
  if (e.is_symbolic()) {
    j["label"] = e.label();
  } else if (e.is_infinite()) {
    j["inf"] = true;
  } else {
    j["re"] = e.value().real();
    j["im"] = e.value().imag();
  }
}

inline Eigenvalue get_eig(const json& j) {
  if (j.contains("label")) return Eigenvalue::symbolic(j.at("label").get<std::string>());
  if (j.value("inf", false)) return Eigenvalue::infinity();
  return Eigenvalue::finite(j.at("re").get<double>(), j.value("im", 0.0));
}

inline std::vector<int> sizes_descending(std::vector<int> v) {
  std::sort(v.rbegin(), v.rend());
  return v;
}

}  // namespace io_detail

// ---- eigenstructures -------------------------------------------------------

inline json to_json(const EigStruct& src) {
  EigStruct e = src;
  e.normalize();
  json j;
  j["finite"] = json::array();
  // group divisor degrees per eigenvalue
  std::vector<std::pair<Eigenvalue, std::vector<int>>> grouped;
  for (const auto& [eig, deg] : e.finite) {
    if (grouped.empty() || !(grouped.back().first == eig))
      grouped.emplace_back(eig, std::vector<int>{});
    grouped.back().second.push_back(deg);
  }
  for (auto& [eig, degs] : grouped) {
    json g;
    io_detail::put_eig(g, eig);
    std::sort(degs.begin(), degs.end());
    g["degrees"] = degs;
    j["finite"].push_back(std::move(g));
  }
  j["infinite"] = e.infinite;
  j["right"] = e.right;
  j["left"] = e.left;
  if (e.skew) j["skew"] = true;
  return j;
}

inline EigStruct eigstruct_from_json(const json& j) {
  EigStruct e;
  for (const auto& g : j.value("finite", json::array())) {
    const Eigenvalue eig = io_detail::get_eig(g);
    if (eig.is_infinite())
      throw std::invalid_argument("finite eigenvalue list cannot contain infinity");
    for (const auto& d : g.at("degrees")) e.finite.emplace_back(eig, d.get<int>());
  }
  e.infinite = j.value("infinite", std::vector<int>{});
  e.right = j.value("right", std::vector<int>{});
  e.left = j.value("left", std::vector<int>{});
  e.skew = j.value("skew", false);
  e.normalize();
  e.validate();
  return e;
}

// ---- canonical forms -------------------------------------------------------

inline json to_json(const SkewKcf& s) {
  json j;
  j["H"] = json::array();
  std::vector<int> ks, ms;
  for (const auto& b : s.blocks()) {
    switch (b.kind) {
      case SkewBlock::Kind::H: {
        json g;
        io_detail::put_eig(g, b.eig);
        g["h"] = b.size;
        j["H"].push_back(std::move(g));
        break;
      }
      case SkewBlock::Kind::K: ks.push_back(b.size); break;
      case SkewBlock::Kind::M: ms.push_back(b.size); break;
    }
  }
  j["K"] = io_detail::sizes_descending(ks);
  j["M"] = io_detail::sizes_descending(ms);
  return j;
}

inline SkewKcf skew_kcf_from_json(const json& j) {
  std::vector<SkewBlock> blocks;
  for (const auto& g : j.value("H", json::array()))
    blocks.push_back(SkewBlock::h_block(io_detail::get_eig(g), g.at("h").get<int>()));
  for (const auto& k : j.value("K", json::array()))
    blocks.push_back(SkewBlock::k_block(k.get<int>()));
  for (const auto& m : j.value("M", json::array()))
    blocks.push_back(SkewBlock::m_block(m.get<int>()));
  return SkewKcf(std::move(blocks));
}

inline json to_json(const Kcf& k) {
  json j;
  j["E"] = json::array();
  std::vector<int> ls, lts;
  for (const auto& b : k.blocks()) {
    switch (b.kind) {
      case KcfBlock::Kind::E: {
        json g;
        io_detail::put_eig(g, b.eig);
        g["k"] = b.size;
        j["E"].push_back(std::move(g));
        break;
      }
      case KcfBlock::Kind::L: ls.push_back(b.size); break;
      case KcfBlock::Kind::LT: lts.push_back(b.size); break;
    }
  }
  j["L"] = io_detail::sizes_descending(ls);
  j["LT"] = io_detail::sizes_descending(lts);
  return j;
}

inline Kcf kcf_from_json(const json& j) {
  std::vector<KcfBlock> blocks;
  for (const auto& g : j.value("E", json::array()))
    blocks.push_back(KcfBlock::regular(io_detail::get_eig(g), g.at("k").get<int>()));
  for (const auto& l : j.value("L", json::array()))
    blocks.push_back(KcfBlock::right_singular(l.get<int>()));
  for (const auto& l : j.value("LT", json::array()))
    blocks.push_back(KcfBlock::left_singular(l.get<int>()));
  return Kcf(std::move(blocks));
}

// ---- matrices, pencils, polynomials ----------------------------------------

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    throw std::invalid_argument("matrix JSON needs " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j.at(i);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw std::invalid_argument("matrix JSON row " + std::to_string(i) + " needs " +
                                  std::to_string(cols) + " entries");
    for (Eigen::Index k = 0; k < cols; ++k) {
      const auto& ent = row.at(k);
      if (ent.is_array()) {
        if (ent.size() != 2)
          throw std::invalid_argument("matrix entries are [re,im] pairs or plain numbers");
        m(i, k) = cplx(ent.at(0).get<double>(), ent.at(1).get<double>());
      } else {
        m(i, k) = cplx(ent.get<double>(), 0.0);
      }
    }
  }
  return m;
}

inline json to_json(const MatPoly& p) {
  json j;
  j["m"] = p.rows();
  if (p.cols() != p.rows()) j["n"] = p.cols();
  j["d"] = p.grade();
  j["coeffs"] = json::array();
  for (const auto& c : p.coeffs) j["coeffs"].push_back(matrix_to_json(c));
  return j;
}

inline MatPoly matpoly_from_json(const json& j) {
  const auto rows = j.at("m").get<Eigen::Index>();
  const auto cols = j.contains("n") ? j.at("n").get<Eigen::Index>() : rows;
  const int d = j.at("d").get<int>();
  const auto& cj = j.at("coeffs");
  if (!cj.is_array() || static_cast<int>(cj.size()) != d + 1)
    throw std::invalid_argument("coeffs must list the d+1 coefficients A_0..A_d");
  std::vector<Matrix> coeffs;
  for (const auto& c : cj) coeffs.push_back(matrix_from_json(c, rows, cols));
  return MatPoly(std::move(coeffs));
}

inline json to_json(const Pencil& p) {
  json j;
  j["rows"] = p.rows();
  j["cols"] = p.cols();
  j["A"] = matrix_to_json(p.A);
  j["B"] = matrix_to_json(p.B);
  return j;
}

inline Pencil pencil_from_json(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  return Pencil(matrix_from_json(j.at("A"), rows, cols),
                matrix_from_json(j.at("B"), rows, cols));
}

// ---- certificates ----------------------------------------------------------

inline json block_to_json(const KcfBlock& b) {
  json j;
  switch (b.kind) {
    case KcfBlock::Kind::E:
      j["type"] = "E";
      io_detail::put_eig(j, b.eig);
      break;
    case KcfBlock::Kind::L: j["type"] = "L"; break;
    case KcfBlock::Kind::LT: j["type"] = "LT"; break;
  }
  j["k"] = b.size;
  return j;
}

inline KcfBlock block_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  const int k = j.at("k").get<int>();
  if (type == "E") return KcfBlock::regular(io_detail::get_eig(j), k);
  if (type == "L") return KcfBlock::right_singular(k);
  if (type == "LT") return KcfBlock::left_singular(k);
  throw std::invalid_argument("unknown block type '" + type + "'");
}

inline json to_json(const ClosureCertificate& c) {
  json j;
  j["steps"] = json::array();
  for (const auto& s : c.steps) {
    json step;
    step["rule"] = s.rule;
    step["consumed"] = json::array();
    for (const auto& b : s.consumed) step["consumed"].push_back(block_to_json(b));
    step["produced"] = json::array();
    for (const auto& b : s.produced) step["produced"].push_back(block_to_json(b));
    j["steps"].push_back(std::move(step));
  }
  j["label_map"] = json::array();
  for (const auto& [from, to] : c.label_map) j["label_map"].push_back(json::array({from, to}));
  return j;
}

inline ClosureCertificate certificate_from_json(const json& j) {
  ClosureCertificate c;
  for (const auto& step : j.value("steps", json::array())) {
    RuleApplication app;
    app.rule = step.at("rule").get<int>();
    for (const auto& b : step.value("consumed", json::array()))
      app.consumed.push_back(block_from_json(b));
    for (const auto& b : step.value("produced", json::array()))
      app.produced.push_back(block_from_json(b));
    c.steps.push_back(std::move(app));
  }
  for (const auto& pr : j.value("label_map", json::array()))
    c.label_map.emplace_back(pr.at(0).get<std::string>(), pr.at(1).get<std::string>());
  return c;
}

// ---- recovery and experiments ----------------------------------------------

inline json to_json(const RankDecision& d) {
  json j;
  j["context"] = d.context;
  j["rank"] = d.rank;
  j["sigma_max"] = d.sigma_max;
  j["sigma_r"] = d.sigma_r;
  j["sigma_next"] = d.sigma_next;
  j["gap"] = d.gap;
  j["low_confidence"] = d.low_confidence;
  return j;
}

inline json to_json(const AuditTrail& a) {
  json j = json::array();
  for (const auto& d : a.decisions) j.push_back(to_json(d));
  return j;
}

inline json to_json(const RecoveredStructure& r) {
  json j;
  j["normal_rank"] = r.normal_rank;
  j["right"] = r.right;
  j["left"] = r.left;
  j["divisor_degree_sum"] = r.divisor_degree_sum;
  j["audit"] = to_json(r.audit);
  return j;
}

inline json to_json(const ExperimentReport& r) {
  json j;
  j["kind"] = r.kind;
  json params;
  if (r.kind == "pencil") {
    params["n"] = r.n;
    params["w"] = r.w;
  } else {
    params["m"] = r.m;
    params["r"] = r.r;
    params["d"] = r.d;
  }
  j["params"] = std::move(params);
  j["trials"] = r.trials;
  j["matches"] = r.matches;
  j["master_seed"] = r.master_seed;
  j["low_confidence_trials"] = r.low_confidence_trials;
  j["mismatches"] = json::array();
  for (const auto& m : r.mismatches) {
    json rec;
    rec["trial"] = m.trial;
    rec["seed"] = m.seed;
    rec["expected"] = m.expected;
    rec["recovered"] = m.recovered;
    j["mismatches"].push_back(std::move(rec));
  }
  return j;
}

// ---- DOT export ------------------------------------------------------------

inline std::string strata_dot(const std::vector<SkewKcf>& strata,
                              const std::vector<std::pair<int, int>>& edges) {
  std::string out = "digraph strata {\n  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < strata.size(); ++i) {
    std::string label = strata[i].to_string();
    std::string escaped;
    for (char ch : label) {
      if (ch == '"' || ch == '\\') escaped += '\\';
      escaped += ch;
    }
    out += "  s" + std::to_string(i) + " [label=\"" + escaped +
           "\\nrank " + std::to_string(strata[i].rank()) + "\"];\n";
  }
  for (const auto& [from, to] : edges)
    out += "  s" + std::to_string(from) + " -> s" + std::to_string(to) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace skewcanon
