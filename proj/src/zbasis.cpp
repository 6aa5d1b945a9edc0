#include "hspec/zbasis.hpp"

#include <stdexcept>

namespace hspec {

std::string BasisIndex::str() const {
  if (kind == CSq) return "c" + std::to_string(m) + "^2";
  return "z(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

std::optional<SignedIndex> canon_z(int p, int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("nonpositive commutator index");
  if (m == n) return std::nullopt;
  if (m > n) return SignedIndex{BasisIndex::com(m, n), 1};
  return SignedIndex{BasisIndex::com(n, m), p == 2 ? 1 : -1};
}

ZBasis::ZBasis(int p, int window) : p_(p), w_(window) {
  if (window < 1) throw std::invalid_argument("window must be positive");
  csq_ord_.assign(static_cast<std::size_t>(w_) + 1, 0);
  com_ord_.assign(static_cast<std::size_t>(w_ + 1) * (w_ + 1), 0);
  weight_start_.assign(static_cast<std::size_t>(2 * w_) + 2, 0);
  for (int wt = 0; wt <= 2 * w_ + 1; ++wt) {
    weight_start_[wt] = static_cast<Ordinal>(index_.size());
    if (p_ == 2 && wt % 2 == 0 && wt >= 2 && wt / 2 <= w_) {
      csq_ord_[wt / 2] = static_cast<Ordinal>(index_.size());
      index_.push_back(BasisIndex::csq(wt / 2));
    }
    for (int m = wt / 2 + 1; m <= std::min(w_, wt - 1); ++m) {
      int n = wt - m;
      com_ord_[static_cast<std::size_t>(m) * (w_ + 1) + n] = static_cast<Ordinal>(index_.size());
      index_.push_back(BasisIndex::com(m, n));
    }
  }
}

Ordinal ZBasis::weight_start(int wt) const {
  if (wt < 0) return 0;
  if (wt >= static_cast<int>(weight_start_.size())) return static_cast<Ordinal>(index_.size());
  return weight_start_[wt];
}

std::optional<Ordinal> ZBasis::ordinal(const BasisIndex& b) const {
  if (!in_window(b) || b.m < 1) return std::nullopt;
  if (b.kind == BasisIndex::CSq) {
    if (p_ != 2) return std::nullopt;
    return csq(b.m);
  }
  if (b.n < 1 || b.n >= b.m) return std::nullopt;
  return com(b.m, b.n);
}

std::vector<BasisIndex> enumerate_window(int p, int window) { return ZBasis(p, window).indices(); }

std::size_t window_dim(int p, int window) {
  std::size_t w = static_cast<std::size_t>(window);
  return w * (w - 1) / 2 + (p == 2 ? w : 0);
}

SparseVec project_window(const ZBasis& zb, const std::vector<ZTerm>& word) {
  FieldP f(zb.p());
  std::vector<std::pair<Ordinal, long long>> terms;
  for (const auto& t : word) {
    if (t.kind == BasisIndex::CSq) {
      if (t.m < 1) throw std::invalid_argument("nonpositive square index");
      if (zb.p() != 2 || t.m > zb.window()) continue;  // c^p = 1 for odd p
      terms.emplace_back(zb.csq(t.m), t.coef);
    } else {
      auto c = canon_z(zb.p(), t.m, t.n);
      if (!c || !zb.in_window(c->index)) continue;
      terms.emplace_back(zb.com(c->index.m, c->index.n), c->sign * t.coef);
    }
  }
  return SparseVec::from_terms(f, std::move(terms));
}

SparseVec rebase(const SparseVec& v, const ZBasis& from, const ZBasis& to) {
  FieldP f(to.p());
  std::vector<std::pair<Ordinal, long long>> terms;
  for (const auto& e : v.entries()) {
    auto o = to.ordinal(from.index(e.index));
    if (o) terms.emplace_back(*o, e.coef);
  }
  return SparseVec::from_terms(f, std::move(terms));
}

}  // namespace hspec
