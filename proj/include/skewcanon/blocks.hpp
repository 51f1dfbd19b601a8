#pragma once

// Symbolic canonical-structure types: Kronecker blocks and their multisets
// (Kcf), the skew-symmetric canonical blocks and their multisets (SkewKcf),
// and the eigenstructure record (EigStruct).
//
// Kronecker blocks of a pencil lambda*A - B:
//   E_k(mu)  k x k      regular block for finite mu (lambda*I_k - J_k(mu))
//   E_k(inf) k x k      regular block at infinity   (lambda*J_k(0) - I_k)
//   L_k      k x (k+1)  right singular block, k >= 0
//   LT_k     (k+1) x k  left singular block, k >= 0
//
// Skew-symmetric canonical blocks (congruence):
//   H_h(mu)  2h x 2h      pair of regular blocks at finite mu, h >= 1
//   K_k      2k x 2k      pair of regular blocks at infinity, k >= 1
//   M_m      (2m+1)x(2m+1) pair L_m + LT_m, m >= 0 (M_0 is the 1x1 zero)

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "skewcanon/eigenvalue.hpp"

namespace skewcanon {

struct KcfBlock {
  enum class Kind : std::uint8_t { E, L, LT };

  Kind kind = Kind::L;
  int size = 0;  // k in E_k / L_k / LT_k
  Eigenvalue eig;  // meaningful for E only

  static KcfBlock regular(Eigenvalue mu, int k) {
    if (k < 1) throw std::invalid_argument("regular block needs size >= 1");
    KcfBlock b;
    b.kind = Kind::E;
    b.size = k;
    b.eig = std::move(mu);
    return b;
  }
  static KcfBlock right_singular(int k) {
    if (k < 0) throw std::invalid_argument("singular block needs size >= 0");
    KcfBlock b;
    b.kind = Kind::L;
    b.size = k;
    return b;
  }
  static KcfBlock left_singular(int k) {
    if (k < 0) throw std::invalid_argument("singular block needs size >= 0");
    KcfBlock b;
    b.kind = Kind::LT;
    b.size = k;
    return b;
  }

  int rows() const { return kind == Kind::LT ? size + 1 : size; }
  int cols() const { return kind == Kind::L ? size + 1 : size; }
  int rank() const { return size; }

  friend bool operator==(const KcfBlock& a, const KcfBlock& b) {
    return a.kind == b.kind && a.size == b.size && (a.kind != Kind::E || a.eig == b.eig);
  }
  friend bool operator!=(const KcfBlock& a, const KcfBlock& b) { return !(a == b); }
  friend bool operator<(const KcfBlock& a, const KcfBlock& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    if (a.size != b.size) return a.size < b.size;
    if (a.kind != Kind::E) return false;
    return a.eig < b.eig;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::E: return "E" + std::to_string(size) + "(" + eig.to_string() + ")";
      case Kind::L: return "L" + std::to_string(size);
      case Kind::LT: return "LT" + std::to_string(size);
    }
    return "?";
  }
};

// Multiset of Kronecker blocks, kept in canonical sorted order.
class Kcf {
 public:
  Kcf() = default;
  explicit Kcf(std::vector<KcfBlock> blocks) : blocks_(std::move(blocks)) {
    std::sort(blocks_.begin(), blocks_.end());
  }

  const std::vector<KcfBlock>& blocks() const { return blocks_; }
  bool empty() const { return blocks_.empty(); }

  int rows() const {
    int r = 0;
    for (const auto& b : blocks_) r += b.rows();
    return r;
  }
  int cols() const {
    int c = 0;
    for (const auto& b : blocks_) c += b.cols();
    return c;
  }
  int rank() const {
    int r = 0;
    for (const auto& b : blocks_) r += b.rank();
    return r;
  }

  std::vector<int> right_minimal_indices() const {
    std::vector<int> v;
    for (const auto& b : blocks_)
      if (b.kind == KcfBlock::Kind::L) v.push_back(b.size);
    std::sort(v.begin(), v.end());
    return v;
  }
  std::vector<int> left_minimal_indices() const {
    std::vector<int> v;
    for (const auto& b : blocks_)
      if (b.kind == KcfBlock::Kind::LT) v.push_back(b.size);
    std::sort(v.begin(), v.end());
    return v;
  }

  // Regular degree lists grouped by eigenvalue (exact eigenvalue identity).
  std::map<Eigenvalue, std::vector<int>> regular_part() const {
    std::map<Eigenvalue, std::vector<int>> m;
    for (const auto& b : blocks_)
      if (b.kind == KcfBlock::Kind::E) m[b.eig].push_back(b.size);
    for (auto& [eig, degs] : m) std::sort(degs.begin(), degs.end());
    return m;
  }

  friend bool operator==(const Kcf& a, const Kcf& b) { return a.blocks_ == b.blocks_; }
  friend bool operator!=(const Kcf& a, const Kcf& b) { return !(a == b); }
  friend bool operator<(const Kcf& a, const Kcf& b) { return a.blocks_ < b.blocks_; }

  std::string to_string() const {
    if (blocks_.empty()) return "{}";
    std::string s = "{";
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (i) s += ", ";
      s += blocks_[i].to_string();
    }
    return s + "}";
  }

 private:
  std::vector<KcfBlock> blocks_;
};

struct SkewBlock {
  enum class Kind : std::uint8_t { H, K, M };

  Kind kind = Kind::M;
  int size = 0;  // h / k / m
  Eigenvalue eig;  // meaningful for H only; must be finite or symbolic

  static SkewBlock h_block(Eigenvalue mu, int h) {
    if (h < 1) throw std::invalid_argument("H block needs size >= 1");
    if (mu.is_infinite())
      throw std::invalid_argument("H block eigenvalue must be finite; use a K block for infinity");
    SkewBlock b;
    b.kind = Kind::H;
    b.size = h;
    b.eig = std::move(mu);
    return b;
  }
  static SkewBlock k_block(int k) {
    if (k < 1) throw std::invalid_argument("K block needs size >= 1");
    SkewBlock b;
    b.kind = Kind::K;
    b.size = k;
    return b;
  }
  static SkewBlock m_block(int m) {
    if (m < 0) throw std::invalid_argument("M block needs size >= 0");
    SkewBlock b;
    b.kind = Kind::M;
    b.size = m;
    return b;
  }

  int dim() const { return kind == Kind::M ? 2 * size + 1 : 2 * size; }
  int rank() const { return 2 * size; }

  friend bool operator==(const SkewBlock& a, const SkewBlock& b) {
    return a.kind == b.kind && a.size == b.size && (a.kind != Kind::H || a.eig == b.eig);
  }
  friend bool operator!=(const SkewBlock& a, const SkewBlock& b) { return !(a == b); }
  friend bool operator<(const SkewBlock& a, const SkewBlock& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    if (a.size != b.size) return a.size < b.size;
    if (a.kind != Kind::H) return false;
    return a.eig < b.eig;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::H: return "H" + std::to_string(size) + "(" + eig.to_string() + ")";
      case Kind::K: return "K" + std::to_string(size);
      case Kind::M: return "M" + std::to_string(size);
    }
    return "?";
  }
};

// Multiset of skew canonical blocks, kept in canonical sorted order.
class SkewKcf {
 public:
  SkewKcf() = default;
  explicit SkewKcf(std::vector<SkewBlock> blocks) : blocks_(std::move(blocks)) {
    std::sort(blocks_.begin(), blocks_.end());
  }

  const std::vector<SkewBlock>& blocks() const { return blocks_; }
  bool empty() const { return blocks_.empty(); }

  int dim() const {
    int n = 0;
    for (const auto& b : blocks_) n += b.dim();
    return n;
  }
  // rank = dim - (number of M blocks); always even.
  int rank() const {
    int r = 0;
    for (const auto& b : blocks_) r += b.rank();
    return r;
  }
  int num_m_blocks() const {
    int c = 0;
    for (const auto& b : blocks_) c += (b.kind == SkewBlock::Kind::M);
    return c;
  }

  friend bool operator==(const SkewKcf& a, const SkewKcf& b) { return a.blocks_ == b.blocks_; }
  friend bool operator!=(const SkewKcf& a, const SkewKcf& b) { return !(a == b); }
  friend bool operator<(const SkewKcf& a, const SkewKcf& b) { return a.blocks_ < b.blocks_; }

  std::string to_string() const {
    if (blocks_.empty()) return "{}";
    std::string s = "{";
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (i) s += ", ";
      s += blocks_[i].to_string();
    }
    return s + "}";
  }

 private:
  std::vector<SkewBlock> blocks_;
};

// Eigenstructure of a (possibly rectangular) matrix polynomial: elementary
// divisor degrees grouped by eigenvalue plus minimal index lists.
struct EigStruct {
  // (eigenvalue, degree) with degree >= 1; eigenvalue finite or symbolic.
  std::vector<std::pair<Eigenvalue, int>> finite;
  std::vector<int> infinite;  // degrees >= 1
  std::vector<int> right;     // nondecreasing
  std::vector<int> left;      // nondecreasing
  bool skew = false;

  void normalize() {
    std::sort(finite.begin(), finite.end(), [](const auto& a, const auto& b) {
      if (a.first < b.first) return true;
      if (b.first < a.first) return false;
      return a.second < b.second;
    });
    std::sort(infinite.begin(), infinite.end());
    std::sort(right.begin(), right.end());
    std::sort(left.begin(), left.end());
  }

  // Checks internal consistency; for skew structures left/right lists agree
  // and every elementary divisor has even multiplicity.
  void validate() const {
    for (const auto& [eig, deg] : finite) {
      if (deg < 1) throw std::invalid_argument("elementary divisor degree must be >= 1");
      if (eig.is_infinite()) throw std::invalid_argument("infinite divisors belong in the infinite list");
    }
    for (int d : infinite)
      if (d < 1) throw std::invalid_argument("elementary divisor degree must be >= 1");
    for (int e : right)
      if (e < 0) throw std::invalid_argument("minimal indices must be >= 0");
    for (int e : left)
      if (e < 0) throw std::invalid_argument("minimal indices must be >= 0");
    if (skew) {
      if (right != left) throw std::invalid_argument("skew eigenstructure needs matching left/right minimal indices");
      std::map<std::pair<std::string, int>, int> mult;
      for (const auto& [eig, deg] : finite) ++mult[{eig.to_string(), deg}];
      for (int d : infinite) ++mult[{"inf", d}];
      for (const auto& [key, c] : mult)
        if (c % 2) throw std::invalid_argument("skew eigenstructure needs even divisor multiplicities");
    }
  }

  int divisor_degree_sum() const {
    int s = std::accumulate(infinite.begin(), infinite.end(), 0);
    for (const auto& [eig, deg] : finite) s += deg;
    return s;
  }
  int index_sum() const {
    return std::accumulate(right.begin(), right.end(), 0) +
           std::accumulate(left.begin(), left.end(), 0);
  }

  friend bool operator==(const EigStruct& a, const EigStruct& b) {
    return a.finite == b.finite && a.infinite == b.infinite && a.right == b.right &&
           a.left == b.left && a.skew == b.skew;
  }
};

}  // namespace skewcanon
