#pragma once

// Exhaustive reference for the degeneration reachability question, kept
// deliberately independent of the production search: plain breadth-first
// exploration over raw rule applications, no heuristics, no pruning beyond
// a depth cap and a visited set.  Slow, but trustworthy on small inputs.

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <skewcanon/closure.hpp>

namespace closure_oracle {

using skewcanon::Eigenvalue;
using skewcanon::Kcf;
using skewcanon::KcfBlock;
using skewcanon::RuleApplication;

inline std::string tag_of(const Eigenvalue& e) {
  if (e.is_infinite()) return "inf";
  if (e.is_symbolic()) return "sym:" + e.label();
  unsigned long long re = 0, im = 0;
  const double rv = e.value().real(), iv = e.value().imag();
  std::memcpy(&re, &rv, 8);
  std::memcpy(&im, &iv, 8);
  char buf[64];
  std::snprintf(buf, sizeof buf, "num:%llx:%llx", re, im);
  return buf;
}

// Canonical key up to renaming of symbolic labels: symbolic eigenvalues are
// identified only by their sorted degree lists.
inline std::string key_of(const Kcf& k) {
  std::vector<int> l, lt;
  std::map<std::string, std::vector<int>> named;
  std::map<std::string, std::vector<int>> sym;
  for (const auto& b : k.blocks()) {
    if (b.kind == KcfBlock::Kind::L)
      l.push_back(b.size);
    else if (b.kind == KcfBlock::Kind::LT)
      lt.push_back(b.size);
    else if (b.eig.is_symbolic())
      sym[b.eig.label()].push_back(b.size);
    else
      named[tag_of(b.eig)].push_back(b.size);
  }
  std::sort(l.begin(), l.end());
  std::sort(lt.begin(), lt.end());
  auto ints = [](const std::vector<int>& v) {
    std::string s;
    for (int x : v) s += std::to_string(x) + ",";
    return s;
  };
  std::string key = "L:" + ints(l) + ";T:" + ints(lt) + ";";
  for (auto& [t, degs] : named) {
    std::sort(degs.begin(), degs.end());
    key += t + "=" + ints(degs) + ";";
  }
  std::vector<std::string> symkeys;
  for (auto& [t, degs] : sym) {
    std::sort(degs.begin(), degs.end());
    symkeys.push_back(ints(degs));
  }
  std::sort(symkeys.begin(), symkeys.end());
  key += "S:";
  for (auto& s : symkeys) key += s + "|";
  return key;
}

inline void collect_moves(const Kcf& state, const std::vector<Eigenvalue>& pool,
                          std::vector<RuleApplication>& out) {
  std::set<int> l, lt;
  std::map<Eigenvalue, std::vector<int>> reg;
  for (const auto& b : state.blocks()) {
    if (b.kind == KcfBlock::Kind::L)
      l.insert(b.size);
    else if (b.kind == KcfBlock::Kind::LT)
      lt.insert(b.size);
    else
      reg[b.eig].push_back(b.size);
  }

  for (int a : l)
    for (int b : l)
      if (b >= a + 2) out.push_back(skewcanon::make_rule12(1, a, b));
  for (int a : lt)
    for (int b : lt)
      if (b >= a + 2) out.push_back(skewcanon::make_rule12(2, a, b));

  for (const auto& [mu, degs] : reg) {
    std::set<int> uniq(degs.begin(), degs.end());
    for (int c : uniq) {
      for (int j : l) out.push_back(skewcanon::make_rule34(3, j, mu, c));
      for (int j : lt) out.push_back(skewcanon::make_rule34(4, j, mu, c));
    }
    for (int x : uniq)
      for (int y : uniq) {
        if (x > y) continue;
        if (x == y && std::count(degs.begin(), degs.end(), x) < 2) continue;
        out.push_back(skewcanon::make_rule5(mu, x, y));
      }
  }

  // rule 6: all partitions of p+q+1, all injective eigenvalue assignments
  for (int p : l)
    for (int q : lt) {
      const int total = p + q + 1;
      std::vector<int> parts;
      std::set<std::string> emitted;
      std::function<void(int, int)> partitions = [&](int left, int maxpart) {
        if (left == 0) {
          // assign distinct pool eigenvalues to parts
          std::vector<int> idx;
          std::vector<bool> used(pool.size(), false);
          std::function<void(std::size_t)> assign = [&](std::size_t pi) {
            if (pi == parts.size()) {
              std::vector<std::pair<Eigenvalue, int>> ps;
              std::vector<std::string> canon;
              for (std::size_t t = 0; t < parts.size(); ++t) {
                ps.emplace_back(pool[idx[t]], parts[t]);
                canon.push_back(tag_of(pool[idx[t]]) + "^" + std::to_string(parts[t]));
              }
              std::sort(canon.begin(), canon.end());
              std::string ck;
              for (auto& c : canon) ck += c + "&";
              if (emitted.insert(ck).second)
                out.push_back(skewcanon::make_rule6(p, q, ps));
              return;
            }
            for (std::size_t e = 0; e < pool.size(); ++e) {
              if (used[e]) continue;
              used[e] = true;
              idx.push_back(static_cast<int>(e));
              assign(pi + 1);
              idx.pop_back();
              used[e] = false;
            }
          };
          if (parts.size() <= pool.size()) assign(0);
          return;
        }
        for (int c = std::min(left, maxpart); c >= 1; --c) {
          parts.push_back(c);
          partitions(left - c, c);
          parts.pop_back();
        }
      };
      partitions(total, total);
    }
}

inline bool oracle_dominates(const Kcf& target, const Kcf& source,
                             int depth_cap = -1, int fresh_labels = -1) {
  if (target.rows() != source.rows() || target.cols() != source.cols()) return false;
  const int n = std::max(source.rows(), source.cols());
  if (depth_cap < 0) depth_cap = 4 * std::max(1, n);
  if (fresh_labels < 0) fresh_labels = n + 1;

  std::vector<Eigenvalue> base;
  std::set<std::string> base_tags;
  for (const auto& b : target.blocks())
    if (b.kind == KcfBlock::Kind::E && base_tags.insert(tag_of(b.eig)).second)
      base.push_back(b.eig);

  const std::string goal = key_of(target);
  std::set<std::string> seen;
  std::deque<std::pair<Kcf, int>> queue;
  if (key_of(source) == goal) return true;
  seen.insert(key_of(source));
  queue.emplace_back(source, 0);

  while (!queue.empty()) {
    auto [cur, d] = queue.front();
    queue.pop_front();
    if (d == depth_cap) continue;

    std::vector<Eigenvalue> pool = base;
    std::set<std::string> tags = base_tags;
    std::set<std::string> live_labels;
    for (const auto& b : cur.blocks()) {
      if (b.kind != KcfBlock::Kind::E) continue;
      if (b.eig.is_symbolic()) live_labels.insert(b.eig.label());
      if (tags.insert(tag_of(b.eig)).second) pool.push_back(b.eig);
    }
    for (int f = 1, added = 0; added < fresh_labels && f <= fresh_labels + 64; ++f) {
      const std::string lab = "#o" + std::to_string(f);
      if (live_labels.count(lab)) continue;
      Eigenvalue e = Eigenvalue::symbolic(lab);
      if (tags.insert(tag_of(e)).second) {
        pool.push_back(e);
        ++added;
      }
    }

    std::vector<RuleApplication> moves;
    collect_moves(cur, pool, moves);
    for (const auto& m : moves) {
      Kcf nxt = skewcanon::apply_rule(cur, m);
      auto key = key_of(nxt);
      if (!seen.insert(key).second) continue;
      if (key == goal) return true;
      queue.emplace_back(std::move(nxt), d + 1);
    }
  }
  return false;
}

}  // namespace closure_oracle
