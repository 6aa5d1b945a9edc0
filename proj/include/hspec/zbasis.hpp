#pragma once

// Canonical basis of Z: squares c_l^2 (p = 2 only) and commutators z_{m,n}, m > n,
// ordered by weight (2l resp. m+n), then squares before commutators, then m.

#include <optional>
#include <string>
#include <vector>

#include "hspec/fplin.hpp"

namespace hspec {

struct BasisIndex {
  enum Kind : std::uint8_t { CSq, Com };
  Kind kind;
  int m;  // l for CSq
  int n;  // 0 for CSq

  static BasisIndex csq(int l) { return {CSq, l, 0}; }
  static BasisIndex com(int m, int n) { return {Com, m, n}; }
  int weight() const { return kind == CSq ? 2 * m : m + n; }
  int max_index() const { return m; }
  std::string str() const;
  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

struct SignedIndex {
  BasisIndex index;
  int sign;
};

/// z_{m,n} in canonical form; nullopt for the identity (m == n).
std::optional<SignedIndex> canon_z(int p, int m, int n);

/// One symbol of a formal Z-word: z_{m,n}^coef or (c_l^2)^coef.
struct ZTerm {
  BasisIndex::Kind kind;
  int m;
  int n;
  long long coef;
};

class ZBasis {
 public:
  ZBasis(int p, int window);

  int p() const { return p_; }
  int window() const { return w_; }
  std::size_t size() const { return index_.size(); }

  const BasisIndex& index(Ordinal o) const { return index_[o]; }
  const std::vector<BasisIndex>& indices() const { return index_; }
  /// Ordinal of c_l^2; requires p == 2 and 1 <= l <= W.
  Ordinal csq(int l) const { return csq_ord_[l]; }
  /// Ordinal of z_{m,n}; requires W >= m > n >= 1.
  Ordinal com(int m, int n) const { return com_ord_[static_cast<std::size_t>(m) * (w_ + 1) + n]; }
  std::optional<Ordinal> ordinal(const BasisIndex& b) const;
  bool in_window(const BasisIndex& b) const { return b.m <= w_; }
  /// First ordinal of the given weight (size() if beyond).
  Ordinal weight_start(int wt) const;

 private:
  int p_;
  int w_;
  std::vector<BasisIndex> index_;
  std::vector<Ordinal> csq_ord_;
  std::vector<Ordinal> com_ord_;
  std::vector<Ordinal> weight_start_;
};

std::vector<BasisIndex> enumerate_window(int p, int window);
std::size_t window_dim(int p, int window);

/// Canonicalizes every symbol, drops those outside the window and accumulates mod p.
SparseVec project_window(const ZBasis& zb, const std::vector<ZTerm>& word);

/// Re-expresses v (over `from`) in the basis `to`, dropping out-of-window indices.
SparseVec rebase(const SparseVec& v, const ZBasis& from, const ZBasis& to);

}  // namespace hspec
