#pragma once

// Degeneration rules on Kronecker structures, dominance searches with
// replayable certificates, and enumeration of skew canonical forms of
// bounded rank.
//
// The six rules transform a canonical structure into a strictly more generic
// one (the less generic structure lies in the closure of the more generic
// orbit).  dominates(target, source) therefore searches forward from source:
// it succeeds when a chain of rule applications rewrites source into target.
//
//   1: L_{j-1} + L_{k+1}    ->  L_j + L_k            (1 <= j <= k)
//   2: LT_{j-1} + LT_{k+1}  ->  LT_j + LT_k          (1 <= j <= k)
//   3: L_j + E_{k+1}(mu)    ->  L_{j+1} + E_k(mu)    (j,k >= 0; E_0 vanishes)
//   4: LT_j + E_{k+1}(mu)   ->  LT_{j+1} + E_k(mu)   (j,k >= 0; E_0 vanishes)
//   5: E_j(mu) + E_k(mu)    ->  E_{j-1}(mu) + E_{k+1}(mu)   (1 <= j <= k)
//   6: L_p + LT_q           ->  sum of E_{k_i}(mu_i) (sum k_i = p+q+1,
//                                mu_i pairwise distinct)
// Rules 1-5 preserve rank; rule 6 raises it by exactly one.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "skewcanon/blocks.hpp"
#include "skewcanon/canon.hpp"

namespace skewcanon {

struct RuleApplication {
  int rule = 0;  // 1..6
  std::vector<KcfBlock> consumed;
  std::vector<KcfBlock> produced;
};

// Convenience builders; arguments name the consumed blocks.
inline RuleApplication make_rule12(int rule, int a, int b) {
  RuleApplication r;
  r.rule = rule;
  auto mk = rule == 1 ? KcfBlock::right_singular : KcfBlock::left_singular;
  r.consumed = {mk(a), mk(b)};
  r.produced = {mk(a + 1), mk(b - 1)};
  return r;
}
inline RuleApplication make_rule34(int rule, int j, const Eigenvalue& mu, int c) {
  RuleApplication r;
  r.rule = rule;
  auto mk = rule == 3 ? KcfBlock::right_singular : KcfBlock::left_singular;
  r.consumed = {mk(j), KcfBlock::regular(mu, c)};
  r.produced = {mk(j + 1)};
  if (c > 1) r.produced.push_back(KcfBlock::regular(mu, c - 1));
  return r;
}
inline RuleApplication make_rule5(const Eigenvalue& mu, int x, int y) {
  RuleApplication r;
  r.rule = 5;
  r.consumed = {KcfBlock::regular(mu, x), KcfBlock::regular(mu, y)};
  if (x > 1) r.produced.push_back(KcfBlock::regular(mu, x - 1));
  r.produced.push_back(KcfBlock::regular(mu, y + 1));
  return r;
}
inline RuleApplication make_rule6(int p, int q,
                                  const std::vector<std::pair<Eigenvalue, int>>& parts) {
  RuleApplication r;
  r.rule = 6;
  r.consumed = {KcfBlock::right_singular(p), KcfBlock::left_singular(q)};
  for (const auto& [mu, k] : parts) r.produced.push_back(KcfBlock::regular(mu, k));
  return r;
}

namespace closure_detail {
inline void require_rule(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument("rule not applicable: " + msg);
}
}  // namespace closure_detail

// Validates the application against the rule templates and returns the
// rewritten structure.  Throws std::invalid_argument when the application is
// malformed or its consumed blocks are not present.
inline Kcf apply_rule(const Kcf& k, const RuleApplication& app) {
  using closure_detail::require_rule;
  std::vector<KcfBlock> cons = app.consumed, prod = app.produced;
  std::sort(cons.begin(), cons.end());
  std::sort(prod.begin(), prod.end());
  for (const auto& b : prod) {
    require_rule(b.kind != KcfBlock::Kind::E || b.size >= 1,
                 "produced regular block needs size >= 1");
    require_rule(b.size >= 0, "bad produced block size");
  }

  const auto kind_count = [](const std::vector<KcfBlock>& v, KcfBlock::Kind kk) {
    return std::count_if(v.begin(), v.end(), [&](const KcfBlock& b) { return b.kind == kk; });
  };

  switch (app.rule) {
    case 1:
    case 2: {
      const auto kk = app.rule == 1 ? KcfBlock::Kind::L : KcfBlock::Kind::LT;
      require_rule(cons.size() == 2 && cons[0].kind == kk && cons[1].kind == kk,
                   "rules 1/2 consume two singular blocks of one kind");
      const int a = cons[0].size, b = cons[1].size;
      require_rule(b - a >= 2, "rules 1/2 need sizes j-1 and k+1 with 1 <= j <= k");
      auto mk = app.rule == 1 ? KcfBlock::right_singular : KcfBlock::left_singular;
      std::vector<KcfBlock> expect = {mk(a + 1), mk(b - 1)};
      std::sort(expect.begin(), expect.end());
      require_rule(prod == expect, "rules 1/2 produce sizes j and k");
      break;
    }
    case 3:
    case 4: {
      const auto kk = app.rule == 3 ? KcfBlock::Kind::L : KcfBlock::Kind::LT;
      require_rule(cons.size() == 2 && kind_count(cons, kk) == 1 &&
                       kind_count(cons, KcfBlock::Kind::E) == 1,
                   "rules 3/4 consume one singular and one regular block");
      const auto& sing = cons[0].kind == kk ? cons[0] : cons[1];
      const auto& reg = cons[0].kind == KcfBlock::Kind::E ? cons[0] : cons[1];
      auto mk = app.rule == 3 ? KcfBlock::right_singular : KcfBlock::left_singular;
      std::vector<KcfBlock> expect = {mk(sing.size + 1)};
      if (reg.size > 1) expect.push_back(KcfBlock::regular(reg.eig, reg.size - 1));
      std::sort(expect.begin(), expect.end());
      require_rule(prod == expect, "rules 3/4 grow the singular block and shrink the regular one");
      break;
    }
    case 5: {
      require_rule(cons.size() == 2 && kind_count(cons, KcfBlock::Kind::E) == 2,
                   "rule 5 consumes two regular blocks");
      require_rule(cons[0].eig == cons[1].eig, "rule 5 needs one shared eigenvalue");
      const int x = cons[0].size, y = cons[1].size;
      require_rule(x >= 1, "rule 5 needs sizes >= 1");
      std::vector<KcfBlock> expect;
      if (x > 1) expect.push_back(KcfBlock::regular(cons[0].eig, x - 1));
      expect.push_back(KcfBlock::regular(cons[0].eig, y + 1));
      std::sort(expect.begin(), expect.end());
      require_rule(prod == expect, "rule 5 moves one unit from the smaller to the larger block");
      break;
    }
    case 6: {
      require_rule(cons.size() == 2 && kind_count(cons, KcfBlock::Kind::L) == 1 &&
                       kind_count(cons, KcfBlock::Kind::LT) == 1,
                   "rule 6 consumes one right and one left singular block");
      const int p = cons[0].kind == KcfBlock::Kind::L ? cons[0].size : cons[1].size;
      const int q = cons[0].kind == KcfBlock::Kind::LT ? cons[0].size : cons[1].size;
      require_rule(!prod.empty() &&
                       kind_count(prod, KcfBlock::Kind::E) == static_cast<long>(prod.size()),
                   "rule 6 produces regular blocks only");
      int total = 0;
      for (const auto& b : prod) total += b.size;
      require_rule(total == p + q + 1, "rule 6 degrees must sum to p+q+1");
      for (std::size_t i = 0; i < prod.size(); ++i)
        for (std::size_t j = i + 1; j < prod.size(); ++j)
          require_rule(!(prod[i].eig == prod[j].eig),
                       "rule 6 eigenvalues must be pairwise distinct");
      break;
    }
    default:
      require_rule(false, "unknown rule id " + std::to_string(app.rule));
  }

  std::vector<KcfBlock> rest = k.blocks();
  for (const auto& c : app.consumed) {
    auto it = std::find(rest.begin(), rest.end(), c);
    closure_detail::require_rule(it != rest.end(), "block " + c.to_string() + " not present");
    rest.erase(it);
  }
  rest.insert(rest.end(), app.produced.begin(), app.produced.end());
  return Kcf(std::move(rest));
}

struct ClosureCertificate {
  std::vector<RuleApplication> steps;
  // Renaming from the labels reached by the replay to the target's labels.
  // Numeric eigenvalues always match exactly; only symbolic placeholder
  // labels can differ by name.
  std::vector<std::pair<std::string, std::string>> label_map;
};

struct DominanceOptions {
  int eig_budget = -1;  // fresh labels usable by rule 6; default n+1
  int depth_cap = -1;   // max rule applications on a path; default 4n
};

struct DominanceResult {
  bool dominates = false;
  ClosureCertificate certificate;  // meaningful when dominates is true
  bool capped = false;             // a cap pruned the search before exhaustion
  std::size_t states_explored = 0;
};

inline Kcf replay_certificate(const Kcf& source, const ClosureCertificate& cert) {
  Kcf cur = source;
  for (const auto& step : cert.steps) cur = apply_rule(cur, step);
  if (cert.label_map.empty()) return cur;
  std::map<std::string, std::string> ren(cert.label_map.begin(), cert.label_map.end());
  std::vector<KcfBlock> blocks = cur.blocks();
  for (auto& b : blocks)
    if (b.kind == KcfBlock::Kind::E && b.eig.is_symbolic()) {
      auto it = ren.find(b.eig.label());
      if (it != ren.end()) b.eig = Eigenvalue::symbolic(it->second);
    }
  return Kcf(std::move(blocks));
}

inline bool verify_certificate(const Kcf& target, const Kcf& source,
                               const ClosureCertificate& cert) {
  try {
    return replay_certificate(source, cert) == target;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Search internals
// ---------------------------------------------------------------------------

namespace closure_detail {

inline std::string eig_tag(const Eigenvalue& e) {
  if (e.is_infinite()) return "i";
  if (e.is_symbolic()) return "s" + e.label();
  std::uint64_t re, im;
  const double rv = e.value().real(), iv = e.value().imag();
  std::memcpy(&re, &rv, 8);
  std::memcpy(&im, &iv, 8);
  char buf[36];
  std::snprintf(buf, sizeof buf, "f%016llx%016llx", static_cast<unsigned long long>(re),
                static_cast<unsigned long long>(im));
  return buf;
}

struct RegEntry {
  Eigenvalue eig;
  std::vector<int> degs;  // sorted ascending
  int total() const {
    int t = 0;
    for (int d : degs) t += d;
    return t;
  }
};

// Search state shared by the two levels.  KCF level: eps = right singular
// sizes, eta = left singular sizes, reg = regular degrees per eigenvalue.
// Skew level: eps = M sizes, eta unused, reg = H degrees per eigenvalue with
// infinity standing for the K blocks.
struct GenState {
  std::vector<int> eps;
  std::vector<int> eta;
  std::vector<RegEntry> reg;

  void normalize() {
    std::sort(eps.begin(), eps.end());
    std::sort(eta.begin(), eta.end());
    for (auto& e : reg) std::sort(e.degs.begin(), e.degs.end());
    std::sort(reg.begin(), reg.end(),
              [](const RegEntry& a, const RegEntry& b) { return a.eig < b.eig; });
  }
};

inline void append_ints(std::string& s, const std::vector<int>& v) {
  for (int x : v) {
    s += std::to_string(x);
    s += ',';
  }
  s += ';';
}

// Canonical key: symbolic labels are interchangeable placeholders, so the
// symbolic part of the key lists only the (sorted) degree lists.
inline std::string canonical_key(const GenState& s) {
  std::string key = "e";
  append_ints(key, s.eps);
  key += "t";
  append_ints(key, s.eta);
  std::vector<std::string> named, sym;
  for (const auto& e : s.reg) {
    if (e.degs.empty()) continue;
    std::string piece;
    append_ints(piece, e.degs);
    if (e.eig.is_symbolic())
      sym.push_back(std::move(piece));
    else
      named.push_back(eig_tag(e.eig) + ":" + piece);
  }
  std::sort(named.begin(), named.end());
  std::sort(sym.begin(), sym.end());
  key += "r";
  for (auto& p : named) key += p;
  key += "y";
  for (auto& p : sym) key += p;
  return key;
}

// One move at either level.
//   kind 1: balance two eps values (a, b)        [KCF rule 1 / skew M balance]
//   kind 2: balance two eta values (a, b)        [KCF rule 2]
//   kind 3: grow eps value a, shrink (mu, b)     [KCF rule 3 / skew M-vs-H/K]
//   kind 4: grow eta value a, shrink (mu, b)     [KCF rule 4]
//   kind 5: rebalance (a, b) inside mu           [KCF rule 5 / skew H/K pair]
//   kind 6: split; KCF consumes eps a + eta b, skew consumes eps a + eps b
struct GenMove {
  int kind = 0;
  int a = 0, b = 0;
  Eigenvalue mu;
  std::vector<std::pair<Eigenvalue, int>> parts;
};

inline void erase_value(std::vector<int>& v, int x) { v.erase(std::find(v.begin(), v.end(), x)); }

inline RegEntry* find_reg(GenState& s, const Eigenvalue& e) {
  for (auto& r : s.reg)
    if (r.eig == e) return &r;
  return nullptr;
}

inline GenState apply_gen_move(const GenState& s, const GenMove& m, bool paired) {
  GenState t = s;
  switch (m.kind) {
    case 1:
      erase_value(t.eps, m.a);
      erase_value(t.eps, m.b);
      t.eps.push_back(m.a + 1);
      t.eps.push_back(m.b - 1);
      break;
    case 2:
      erase_value(t.eta, m.a);
      erase_value(t.eta, m.b);
      t.eta.push_back(m.a + 1);
      t.eta.push_back(m.b - 1);
      break;
    case 3:
    case 4: {
      auto& side = m.kind == 3 ? t.eps : t.eta;
      erase_value(side, m.a);
      side.push_back(m.a + 1);
      RegEntry* r = find_reg(t, m.mu);
      erase_value(r->degs, m.b);
      if (m.b > 1) r->degs.push_back(m.b - 1);
      break;
    }
    case 5: {
      RegEntry* r = find_reg(t, m.mu);
      erase_value(r->degs, m.a);
      erase_value(r->degs, m.b);
      if (m.a > 1) r->degs.push_back(m.a - 1);
      r->degs.push_back(m.b + 1);
      break;
    }
    case 6: {
      erase_value(t.eps, m.a);
      if (paired)
        erase_value(t.eps, m.b);
      else
        erase_value(t.eta, m.b);
      for (const auto& [mu, k] : m.parts) {
        RegEntry* r = find_reg(t, mu);
        if (!r) {
          t.reg.push_back(RegEntry{mu, {}});
          r = &t.reg.back();
        }
        r->degs.push_back(k);
      }
      break;
    }
  }
  t.reg.erase(
      std::remove_if(t.reg.begin(), t.reg.end(), [](const RegEntry& r) { return r.degs.empty(); }),
      t.reg.end());
  t.normalize();
  return t;
}

struct TargetInfo {
  GenState state;
  std::string key;
  int rank = 0;  // sum of all sizes (block rank units at the KCF level,
                 // half-rank units at the skew level)
  int n_eps = 0, n_eta = 0;
  long long sum_eps = 0, sum_eta = 0;
  std::map<std::string, int> named_deg;  // eig_tag -> total degree (numeric/inf)
  long long sym_deg = 0;
  std::vector<Eigenvalue> rule6_labels;  // target eigenvalues usable as split parts
  bool regular_free = true;
  std::vector<int> eps_desc, eta_desc;
};

inline int state_rank(const GenState& s) {
  int r = 0;
  for (int x : s.eps) r += x;
  for (int x : s.eta) r += x;
  for (const auto& e : s.reg) r += e.total();
  return r;
}

inline TargetInfo make_target_info(const GenState& t) {
  TargetInfo ti;
  ti.state = t;
  ti.key = canonical_key(t);
  ti.rank = state_rank(t);
  ti.n_eps = static_cast<int>(t.eps.size());
  ti.n_eta = static_cast<int>(t.eta.size());
  for (int x : t.eps) ti.sum_eps += x;
  for (int x : t.eta) ti.sum_eta += x;
  for (const auto& e : t.reg) {
    ti.regular_free = false;
    if (e.eig.is_symbolic())
      ti.sym_deg += e.total();
    else
      ti.named_deg[eig_tag(e.eig)] += e.total();
    ti.rule6_labels.push_back(e.eig);
  }
  ti.eps_desc.assign(t.eps.rbegin(), t.eps.rend());
  ti.eta_desc.assign(t.eta.rbegin(), t.eta.rend());
  return ti;
}

// max over prefixes of (state sum - target sum) on descending lists of equal
// length and total; a lower bound on the balancing moves still needed.
inline int prefix_gap(const std::vector<int>& state_sorted_asc,
                      const std::vector<int>& target_desc) {
  int gap = 0;
  long long ps = 0, pt = 0;
  const std::size_t n = target_desc.size();
  for (std::size_t i = 0; i < n; ++i) {
    ps += state_sorted_asc[n - 1 - i];
    pt += target_desc[i];
    gap = std::max<int>(gap, static_cast<int>(ps - pt));
  }
  return gap;
}

// true when the descending prefixes of state dominate those of target
// (equal lengths and totals assumed): exactly reachability by balancing.
inline bool majorizes(const std::vector<int>& state_sorted_asc,
                      const std::vector<int>& target_desc) {
  long long ps = 0, pt = 0;
  const std::size_t n = target_desc.size();
  for (std::size_t i = 0; i < n; ++i) {
    ps += state_sorted_asc[n - 1 - i];
    pt += target_desc[i];
    if (ps < pt) return false;
  }
  return true;
}

// Admissible lower bound on the number of moves still needed.
inline int heuristic(const GenState& s, const TargetInfo& ti) {
  const int rank = state_rank(s);
  int h = ti.rank - rank;  // each split raises the state rank sum by one
  long long sym = 0;
  for (const auto& e : s.reg) {
    if (e.eig.is_symbolic()) {
      sym += e.total();
    } else {
      auto it = ti.named_deg.find(eig_tag(e.eig));
      const int want = it == ti.named_deg.end() ? 0 : it->second;
      h += std::max(0, e.total() - want);
    }
  }
  h += static_cast<int>(std::max<long long>(0, sym - ti.sym_deg));
  if (rank == ti.rank && s.reg.empty() && ti.regular_free) {
    h += prefix_gap(s.eps, ti.eps_desc);
    if (!ti.eta_desc.empty()) h += prefix_gap(s.eta, ti.eta_desc);
  }
  return h;
}

// Safe pruning: false when the target is provably unreachable from s.
inline bool viable(const GenState& s, const TargetInfo& ti, bool paired) {
  const int rank = state_rank(s);
  if (rank > ti.rank) return false;
  // every split consumes one eps + one eta element (KCF) or two eps elements
  // (skew) while raising the rank sum by one
  const int drop = paired ? 2 : 1;
  if (static_cast<int>(s.eps.size()) - ti.n_eps != drop * (ti.rank - rank)) return false;
  if (!paired && static_cast<int>(s.eta.size()) - ti.n_eta != ti.rank - rank) return false;
  if (rank == ti.rank) {
    // only degree-shrinking and balancing moves remain
    long long se = 0, st = 0, sym = 0;
    for (int x : s.eps) se += x;
    for (int x : s.eta) st += x;
    if (se > ti.sum_eps || st > ti.sum_eta) return false;
    std::map<std::string, int> have;
    for (const auto& e : s.reg) {
      if (e.eig.is_symbolic())
        sym += e.total();
      else
        have[eig_tag(e.eig)] += e.total();
    }
    if (sym < ti.sym_deg) return false;
    for (const auto& [tag, want] : ti.named_deg) {
      auto it = have.find(tag);
      if (it == have.end() || it->second < want) return false;
    }
    if (s.reg.empty()) {
      if (!ti.regular_free) return false;
      if (!majorizes(s.eps, ti.eps_desc)) return false;
      if (!paired && !majorizes(s.eta, ti.eta_desc)) return false;
    }
  }
  return true;
}

inline std::vector<int> unique_values(const std::vector<int>& sorted) {
  std::vector<int> u;
  for (int x : sorted)
    if (u.empty() || u.back() != x) u.push_back(x);
  return u;
}

// Enumerates split part assignments: one optional part per pool eigenvalue
// plus at most one consolidated fresh part.  Content that ends up on labels
// matching nothing in the target must be annihilated degree unit by degree
// unit no matter how it is split across labels and blocks (rebalancing
// inside a label never touches the singular part), so consolidating it onto
// a single fresh label keeps the search complete.  Sets *suppressed when an
// assignment needed a fresh label none was available for.
inline void for_each_rule6_parts(
    int total, const std::vector<Eigenvalue>& labels, const Eigenvalue* fresh, bool* suppressed,
    const std::function<void(std::vector<std::pair<Eigenvalue, int>>&)>& emit) {
  std::vector<std::pair<Eigenvalue, int>> parts;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == labels.size()) {
      if (left == 0 && !parts.empty()) {
        emit(parts);
      } else if (left > 0) {
        if (fresh) {
          parts.emplace_back(*fresh, left);
          emit(parts);
          parts.pop_back();
        } else {
          *suppressed = true;
        }
      }
      return;
    }
    rec(i + 1, left);
    for (int c = 1; c <= left; ++c) {
      parts.emplace_back(labels[i], c);
      rec(i + 1, left - c);
      parts.pop_back();
    }
  };
  rec(0, total);
}

// Move generation shared by both levels.
template <typename Emit>
inline void for_each_move(const GenState& s, const TargetInfo& ti, bool paired, int budget,
                          bool& budget_hit, Emit&& emit) {
  const auto eps_vals = unique_values(s.eps);
  const auto eta_vals = unique_values(s.eta);

  for (std::size_t i = 0; i < eps_vals.size(); ++i)
    for (std::size_t j = i; j < eps_vals.size(); ++j)
      if (eps_vals[j] - eps_vals[i] >= 2) {
        GenMove m;
        m.kind = 1;
        m.a = eps_vals[i];
        m.b = eps_vals[j];
        emit(m);
      }
  if (!paired)
    for (std::size_t i = 0; i < eta_vals.size(); ++i)
      for (std::size_t j = i; j < eta_vals.size(); ++j)
        if (eta_vals[j] - eta_vals[i] >= 2) {
          GenMove m;
          m.kind = 2;
          m.a = eta_vals[i];
          m.b = eta_vals[j];
          emit(m);
        }

  for (const auto& e : s.reg) {
    const auto degs = unique_values(e.degs);
    for (int c : degs) {
      for (int j : eps_vals) {
        GenMove m;
        m.kind = 3;
        m.a = j;
        m.b = c;
        m.mu = e.eig;
        emit(m);
      }
      if (!paired)
        for (int j : eta_vals) {
          GenMove m;
          m.kind = 4;
          m.a = j;
          m.b = c;
          m.mu = e.eig;
          emit(m);
        }
    }
    for (std::size_t i = 0; i < degs.size(); ++i)
      for (std::size_t j = i; j < degs.size(); ++j) {
        if (i == j && std::count(e.degs.begin(), e.degs.end(), degs[i]) < 2) continue;
        GenMove m;
        m.kind = 5;
        m.a = degs[i];
        m.b = degs[j];
        m.mu = e.eig;
        emit(m);
      }
  }

  // splits: parts may land on any target eigenvalue, on any symbolic label
  // live in the state (so accumulated content can biject onto a target
  // label), or on one consolidated fresh label
  std::vector<Eigenvalue> pool = ti.rule6_labels;
  std::set<std::string> live;
  for (const auto& e : s.reg) {
    if (!e.eig.is_symbolic()) continue;
    live.insert(e.eig.label());
    bool dup = false;
    for (const auto& p : pool)
      if (p == e.eig) {
        dup = true;
        break;
      }
    if (!dup) pool.push_back(e.eig);
  }
  Eigenvalue fresh;
  bool have_fresh = false;
  for (int i = 1; i <= budget && !have_fresh; ++i) {
    const std::string name = "#f" + std::to_string(i);
    if (!live.count(name)) {
      fresh = Eigenvalue::symbolic(name);
      have_fresh = true;
    }
  }

  const auto split = [&](int a, int b) {
    GenMove m;
    m.kind = 6;
    m.a = a;
    m.b = b;
    for_each_rule6_parts(a + b + 1, pool, have_fresh ? &fresh : nullptr, &budget_hit,
                         [&](std::vector<std::pair<Eigenvalue, int>>& parts) {
                           m.parts = parts;
                           emit(m);
                         });
  };
  if (!paired) {
    for (int p : eps_vals)
      for (int q : eta_vals) split(p, q);
  } else {
    for (std::size_t i = 0; i < eps_vals.size(); ++i)
      for (std::size_t j = i; j < eps_vals.size(); ++j) {
        if (i == j && std::count(s.eps.begin(), s.eps.end(), eps_vals[i]) < 2) continue;
        split(eps_vals[i], eps_vals[j]);
      }
  }
}

struct SearchNode {
  GenState state;
  int parent = -1;
  GenMove move;
  int g = 0;
};

struct GenSearchResult {
  bool found = false;
  std::vector<GenMove> moves;
  GenState final_state;
  bool capped = false;
  std::size_t explored = 0;
};

inline GenSearchResult astar(const GenState& source, const GenState& target, bool paired,
                             int budget, int depth_cap) {
  GenSearchResult res;
  const TargetInfo ti = make_target_info(target);

  const std::string skey = canonical_key(source);
  if (skey == ti.key) {
    res.found = true;
    res.final_state = source;
    return res;
  }
  if (!viable(source, ti, paired)) return res;

  std::vector<SearchNode> arena;
  std::unordered_map<std::string, int> visited;
  using PqItem = std::tuple<int, int, int>;  // f, -g (prefer deeper on ties), node
  std::priority_queue<PqItem, std::vector<PqItem>, std::greater<PqItem>> pq;

  arena.push_back(SearchNode{source, -1, GenMove{}, 0});
  visited.emplace(skey, 0);
  pq.emplace(heuristic(source, ti), 0, 0);

  while (!pq.empty() && !res.found) {
    const int idx = std::get<2>(pq.top());
    pq.pop();
    const GenState cur = arena[idx].state;
    const int g = arena[idx].g;
    ++res.explored;

    bool budget_hit = false;
    for_each_move(cur, ti, paired, budget, budget_hit, [&](const GenMove& m) {
      if (res.found) return;
      GenState nxt = apply_gen_move(cur, m, paired);
      if (!viable(nxt, ti, paired)) return;
      const int ng = g + 1;
      const int h = heuristic(nxt, ti);
      if (ng + h > depth_cap) {
        res.capped = true;
        return;
      }
      std::string key = canonical_key(nxt);
      auto [it, inserted] = visited.try_emplace(key, static_cast<int>(arena.size()));
      if (!inserted) return;
      arena.push_back(SearchNode{std::move(nxt), idx, m, ng});
      if (key == ti.key) {
        std::vector<GenMove> moves;
        int at = static_cast<int>(arena.size()) - 1;
        res.final_state = arena[at].state;
        while (arena[at].parent >= 0) {
          moves.push_back(arena[at].move);
          at = arena[at].parent;
        }
        std::reverse(moves.begin(), moves.end());
        res.found = true;
        res.moves = std::move(moves);
      } else {
        pq.emplace(ng + h, -ng, static_cast<int>(arena.size()) - 1);
      }
    });
    if (budget_hit) res.capped = true;
  }
  return res;
}

inline GenState gen_state_of_kcf(const Kcf& k) {
  GenState s;
  for (const auto& b : k.blocks()) {
    switch (b.kind) {
      case KcfBlock::Kind::L: s.eps.push_back(b.size); break;
      case KcfBlock::Kind::LT: s.eta.push_back(b.size); break;
      case KcfBlock::Kind::E: {
        RegEntry* r = find_reg(s, b.eig);
        if (!r) {
          s.reg.push_back(RegEntry{b.eig, {}});
          r = &s.reg.back();
        }
        r->degs.push_back(b.size);
        break;
      }
    }
  }
  s.normalize();
  return s;
}

inline GenState gen_state_of_skew(const SkewKcf& sk) {
  GenState g;
  for (const auto& b : sk.blocks()) {
    switch (b.kind) {
      case SkewBlock::Kind::M: g.eps.push_back(b.size); break;
      case SkewBlock::Kind::K:
      case SkewBlock::Kind::H: {
        const Eigenvalue eig = b.kind == SkewBlock::Kind::K ? Eigenvalue::infinity() : b.eig;
        RegEntry* r = find_reg(g, eig);
        if (!r) {
          g.reg.push_back(RegEntry{eig, {}});
          r = &g.reg.back();
        }
        r->degs.push_back(b.size);
        break;
      }
    }
  }
  g.normalize();
  return g;
}

// Label renaming from a reached state onto the target: symbolic entries pair
// up by identical degree lists.
inline std::vector<std::pair<std::string, std::string>> label_bijection(const GenState& reached,
                                                                        const GenState& target) {
  std::vector<std::pair<std::vector<int>, std::string>> a, b;
  for (const auto& e : reached.reg)
    if (e.eig.is_symbolic()) a.emplace_back(e.degs, e.eig.label());
  for (const auto& e : target.reg)
    if (e.eig.is_symbolic()) b.emplace_back(e.degs, e.eig.label());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (a[i].second != b[i].second) out.emplace_back(a[i].second, b[i].second);
  return out;
}

}  // namespace closure_detail

// Orbit-closure containment: does target dominate source, i.e. does source
// lie in the closure of target's orbit?  Searches forward from source for a
// chain of rule applications rewriting it into target.  Symbolic eigenvalue
// labels are placeholders matching up to bijection; the certificate's
// label_map records the final renaming.
inline DominanceResult dominates(const Kcf& target, const Kcf& source, DominanceOptions opts = {}) {
  using namespace closure_detail;
  if (target.rows() != source.rows() || target.cols() != source.cols())
    throw std::invalid_argument(
        "dominates needs equal pencil sizes; target is " + std::to_string(target.rows()) + "x" +
        std::to_string(target.cols()) + ", source is " + std::to_string(source.rows()) + "x" +
        std::to_string(source.cols()));
  const int n = std::max(target.rows(), target.cols());
  const int budget = opts.eig_budget >= 0 ? opts.eig_budget : n + 1;
  const int cap = opts.depth_cap >= 0 ? opts.depth_cap : 4 * n;

  GenSearchResult r =
      astar(gen_state_of_kcf(source), gen_state_of_kcf(target), /*paired=*/false, budget, cap);
  DominanceResult out;
  out.capped = r.capped;
  out.states_explored = r.explored;
  if (!r.found) return out;
  out.dominates = true;
  for (const auto& m : r.moves) {
    switch (m.kind) {
      case 1:
      case 2: out.certificate.steps.push_back(make_rule12(m.kind, m.a, m.b)); break;
      case 3:
      case 4: out.certificate.steps.push_back(make_rule34(m.kind, m.a, m.mu, m.b)); break;
      case 5: out.certificate.steps.push_back(make_rule5(m.mu, m.a, m.b)); break;
      case 6: out.certificate.steps.push_back(make_rule6(m.a, m.b, m.parts)); break;
    }
  }
  out.certificate.label_map = label_bijection(r.final_state, gen_state_of_kcf(target));
  return out;
}

// Paired-rule dominance for skew forms.  The search runs over skew canonical
// forms directly (each move is a pair of mirrored rule applications); the
// returned certificate lists the flattened KCF steps, consecutive pairs
// mirroring each other on the L/LT sides.
inline DominanceResult skew_dominates(const SkewKcf& target, const SkewKcf& source,
                                      DominanceOptions opts = {}) {
  using namespace closure_detail;
  if (target.dim() != source.dim())
    throw std::invalid_argument("skew_dominates needs equal sizes; target is " +
                                std::to_string(target.dim()) + ", source is " +
                                std::to_string(source.dim()));
  const int n = target.dim();
  const int budget = opts.eig_budget >= 0 ? opts.eig_budget : n + 1;
  const int cap = (opts.depth_cap >= 0 ? opts.depth_cap : 4 * n) / 2;

  GenSearchResult r =
      astar(gen_state_of_skew(source), gen_state_of_skew(target), /*paired=*/true, budget, cap);
  DominanceResult out;
  out.capped = r.capped;
  out.states_explored = r.explored;
  if (!r.found) return out;
  out.dominates = true;
  for (const auto& m : r.moves) {
    switch (m.kind) {
      case 1:  // M balance = rules 1+2
        out.certificate.steps.push_back(make_rule12(1, m.a, m.b));
        out.certificate.steps.push_back(make_rule12(2, m.a, m.b));
        break;
      case 3:  // M vs H/K trade = rules 3+4
        out.certificate.steps.push_back(make_rule34(3, m.a, m.mu, m.b));
        out.certificate.steps.push_back(make_rule34(4, m.a, m.mu, m.b));
        break;
      case 5:  // H/H or K/K rebalance = rule 5 twice
        out.certificate.steps.push_back(make_rule5(m.mu, m.a, m.b));
        out.certificate.steps.push_back(make_rule5(m.mu, m.a, m.b));
        break;
      case 6:  // M+M split = rule 6 on the mirrored singular pairs
        out.certificate.steps.push_back(make_rule6(m.a, m.b, m.parts));
        out.certificate.steps.push_back(make_rule6(m.b, m.a, m.parts));
        break;
    }
  }
  out.certificate.label_map = label_bijection(r.final_state, gen_state_of_skew(target));
  return out;
}

// Checks that a certificate consists of consecutive mirrored pairs (the skew
// pairing) and that its replay rewrites source into target.
inline bool verify_paired_certificate(const SkewKcf& target, const SkewKcf& source,
                                      const ClosureCertificate& cert) {
  if (cert.steps.size() % 2) return false;
  const auto sorted = [](std::vector<KcfBlock> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto flip = [](const std::vector<KcfBlock>& v) {
    std::vector<KcfBlock> out;
    for (const auto& b : v) {
      switch (b.kind) {
        case KcfBlock::Kind::L: out.push_back(KcfBlock::left_singular(b.size)); break;
        case KcfBlock::Kind::LT: out.push_back(KcfBlock::right_singular(b.size)); break;
        case KcfBlock::Kind::E: out.push_back(b); break;
      }
    }
    return out;
  };
  for (std::size_t i = 0; i + 1 < cert.steps.size(); i += 2) {
    const auto& s1 = cert.steps[i];
    const auto& s2 = cert.steps[i + 1];
    const bool rule_pair_ok = (s1.rule == 1 && s2.rule == 2) || (s1.rule == 3 && s2.rule == 4) ||
                              (s1.rule == 5 && s2.rule == 5) || (s1.rule == 6 && s2.rule == 6);
    if (!rule_pair_ok) return false;
    if (sorted(flip(s1.consumed)) != sorted(s2.consumed)) return false;
    if (sorted(flip(s1.produced)) != sorted(s2.produced)) return false;
  }
  return verify_certificate(skew_to_kcf(target), skew_to_kcf(source), cert);
}

// ---------------------------------------------------------------------------
// Enumeration of skew canonical forms
// ---------------------------------------------------------------------------

namespace closure_detail {

inline std::string enum_label(int idx, int width) {
  std::string num = std::to_string(idx);
  while (static_cast<int>(num.size()) < width) num.insert(num.begin(), '0');
  return "mu" + num;
}

}  // namespace closure_detail

// All skew canonical forms of size n with rank <= max_rank, using at most
// max_distinct_eigs distinct (symbolic) finite eigenvalues.  Each form is
// canonical up to label permutation: labels are mu1, mu2, ... in order of
// first use in the sorted block list.
inline std::vector<SkewKcf> enumerate_skew_kcfs(int n, int max_rank, int max_distinct_eigs) {
  if (n < 1) throw std::invalid_argument("enumerate_skew_kcfs needs n >= 1");
  if (max_rank < 0 || max_rank % 2)
    throw std::invalid_argument("enumerate_skew_kcfs needs an even max_rank >= 0");
  if (max_rank > n - 1) throw std::invalid_argument("enumerate_skew_kcfs needs max_rank <= n-1");
  if (max_distinct_eigs < 0)
    throw std::invalid_argument("enumerate_skew_kcfs needs max_distinct_eigs >= 0");

  const int label_width = static_cast<int>(std::to_string(std::max(1, max_distinct_eigs)).size());
  std::vector<SkewKcf> out;
  std::vector<int> msizes, ksizes;

  const auto emit_form = [&](const std::vector<std::vector<int>>& hgroups) {
    std::vector<SkewBlock> blocks;
    for (int m : msizes) blocks.push_back(SkewBlock::m_block(m));
    for (int k : ksizes) blocks.push_back(SkewBlock::k_block(k));
    for (std::size_t gi = 0; gi < hgroups.size(); ++gi)
      for (int h : hgroups[gi])
        blocks.push_back(SkewBlock::h_block(Eigenvalue::symbolic("#g" + std::to_string(gi)), h));
    SkewKcf form(std::move(blocks));
    // rename group labels to mu1, mu2, ... in first-use order
    std::map<std::string, std::string> rename;
    int next = 1;
    for (const auto& b : form.blocks())
      if (b.kind == SkewBlock::Kind::H && !rename.count(b.eig.label()))
        rename[b.eig.label()] = closure_detail::enum_label(next++, label_width);
    std::vector<SkewBlock> renamed;
    for (const auto& b : form.blocks())
      renamed.push_back(
          b.kind == SkewBlock::Kind::H
              ? SkewBlock::h_block(Eigenvalue::symbolic(rename.at(b.eig.label())), b.size)
              : b);
    out.push_back(SkewKcf(std::move(renamed)));
  };

  // groupings of a multiset of H sizes into at most max_distinct_eigs
  // unordered nonempty groups (one group = one eigenvalue)
  const auto emit_h_groupings = [&](const std::vector<int>& hsizes) {
    if (hsizes.empty()) {
      emit_form({});
      return;
    }
    std::set<std::vector<std::vector<int>>> groupings;
    std::vector<std::vector<int>> groups;
    std::function<void(std::size_t)> assign = [&](std::size_t i) {
      if (i == hsizes.size()) {
        auto canon = groups;
        for (auto& g : canon) std::sort(g.begin(), g.end());
        std::sort(canon.begin(), canon.end());
        groupings.insert(canon);
        return;
      }
      // index loop: the recursion appends to groups, so references would dangle
      for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        groups[gi].push_back(hsizes[i]);
        assign(i + 1);
        groups[gi].pop_back();
      }
      if (static_cast<int>(groups.size()) < max_distinct_eigs) {
        groups.push_back({hsizes[i]});
        assign(i + 1);
        groups.pop_back();
      }
    };
    assign(0);
    for (const auto& g : groupings) emit_form(g);
  };

  // H multiset: partitions of h_half into parts >= 1
  const auto fill_h = [&](int h_half) {
    if (h_half == 0) {
      emit_h_groupings({});
      return;
    }
    if (max_distinct_eigs == 0) return;
    std::vector<int> cur;
    std::function<void(int, int)> part_h = [&](int left, int maxpart) {
      if (left == 0) {
        emit_h_groupings(cur);
        return;
      }
      for (int p = std::min(left, maxpart); p >= 1; --p) {
        cur.push_back(p);
        part_h(left - p, p);
        cur.pop_back();
      }
    };
    part_h(h_half, h_half);
  };

  // split the even remainder between K content and H content
  const auto fill_hk = [&](int even_remainder) {
    const int half = even_remainder / 2;
    std::function<void(int, int)> part_k = [&](int left, int maxpart) {
      fill_h(left);
      for (int p = std::min(left, maxpart); p >= 1; --p) {
        ksizes.push_back(p);
        part_k(left - p, p);
        ksizes.pop_back();
      }
    };
    part_k(half, half);
  };

  // M multisets (nonincreasing sizes); rank = n - #M
  std::function<void(int, int)> choose_m = [&](int used, int maxm) {
    const int remainder = n - used;
    const int mcount = static_cast<int>(msizes.size());
    if (remainder % 2 == 0 && n - mcount <= max_rank) fill_hk(remainder);
    for (int m = std::min(maxm, (remainder - 1) / 2); m >= 0; --m) {
      msizes.push_back(m);
      choose_m(used + 2 * m + 1, m);
      msizes.pop_back();
    }
  };
  choose_m(0, n);

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Directed dominance relation among strata: an edge i -> j means stratum i
// dominates stratum j.  With transitive_reduce, keeps only covering edges.
inline std::vector<std::pair<int, int>> dominance_edges(const std::vector<SkewKcf>& strata,
                                                        DominanceOptions opts = {},
                                                        bool transitive_reduce = true) {
  const int n = static_cast<int>(strata.size());
  std::vector<std::vector<bool>> dom(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && skew_dominates(strata[i], strata[j], opts).dominates) dom[i][j] = true;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!dom[i][j]) continue;
      if (transitive_reduce) {
        bool via = false;
        for (int k = 0; k < n && !via; ++k) via = k != i && k != j && dom[i][k] && dom[k][j];
        if (via) continue;
      }
      edges.emplace_back(i, j);
    }
  return edges;
}

}  // namespace skewcanon
