#pragma once

// Symbolic arithmetic in the pro-p group generated by x and y = c_1, modulo the
// window congruence <c_i : i > W> * Z_{>W}.
//
// Elements are kept in the normal form x^e * c_1^{a_1} ... c_W^{a_W} * z, with
// z in Z. Commutators follow [a,b] = a^-1 b^-1 a b and c_{i+1} = [c_i, x].

#include <string>
#include <vector>

#include "hspec/fplin.hpp"
#include "hspec/zbasis.hpp"

namespace hspec {

struct GElement {
  long long xexp = 0;
  SparseVec h;  // ordinal i-1 holds the exponent of c_i
  SparseVec z;  // over ZBasis ordinals

  bool is_identity() const { return xexp == 0 && h.empty() && z.empty(); }
  bool in_h() const { return xexp == 0; }
  bool in_z() const { return xexp == 0 && h.empty(); }
  friend bool operator==(const GElement& a, const GElement& b) {
    return a.xexp == b.xexp && a.h == b.h && a.z == b.z;
  }
};

class WindowOverflow : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class GCtx {
 public:
  GCtx(int p, int window);

  int p() const { return field_.p(); }
  int window() const { return zb_.window(); }
  const FieldP& field() const { return field_; }
  const ZBasis& zb() const { return zb_; }
  /// x^period acts trivially on the window quotient.
  long long period() const { return period_; }

  GElement identity() const;
  GElement x(long long e = 1) const;
  GElement y() const { return c(1); }
  GElement c(int i) const;
  GElement zgen(int m, int n) const;
  GElement csq(int l) const;
  GElement from_z(SparseVec z) const;
  GElement from_h(SparseVec h) const;

  GElement mul(const GElement& a, const GElement& b) const;
  GElement inv(const GElement& a) const;
  GElement commutator(const GElement& a, const GElement& b) const;
  GElement power(const GElement& a, long long e) const;
  /// [a_1, ..., a_r], left-normed.
  GElement commutator(const std::vector<GElement>& args) const;
  /// [h, x, ..., x] with r copies of x.
  GElement left_normed(const GElement& h, long long r) const;

  /// Conjugation by x^e of an element of H (given as image and Z-part).
  void conj_h(const SparseVec& a, const SparseVec& z, long long e, SparseVec& a_out, SparseVec& z_out) const;
  /// Conjugation by x^e restricted to Z.
  SparseVec z_conj(const SparseVec& z, long long e) const;
  /// [z, x^e, ..., x^e] with r copies of x^e.
  SparseVec z_bracket(const SparseVec& z, long long e, long long r) const;

  /// Z-part of the product of two H-elements with images a, b.
  SparseVec beta(const SparseVec& a, const SparseVec& b) const;
  /// [u, v] for H-elements with images a, b.
  SparseVec alt(const SparseVec& a, const SparseVec& b) const;
  /// u^p for an H-element with image a (only nonzero for p = 2).
  SparseVec hpow_p(const SparseVec& a) const;

  SparseVec zvec(std::vector<std::pair<Ordinal, long long>> terms) const {
    return SparseVec::from_terms(field_, std::move(terms));
  }
  /// Z-vector from (m, n, coef) commutator symbols, canonicalized and windowed.
  SparseVec zword(const std::vector<ZTerm>& t) const { return project_window(zb_, t); }

 private:
  void phi_step(std::size_t k, const SparseVec& a, const SparseVec& z, SparseVec& a_out, SparseVec& z_out) const;
  SparseVec z_phi_step(std::size_t k, const SparseVec& z) const;
  void push_gamma(std::vector<std::pair<Ordinal, long long>>& out, int i, int j, long long coef) const;
  void push_com(std::vector<std::pair<Ordinal, long long>>& out, int m, int n, long long coef) const;

  FieldP field_;
  ZBasis zb_;
  long long period_ = 1;
  std::vector<long long> qpow_;                 // p^k
  std::vector<std::vector<ZTerm>> zeta_;        // Z-part of the x^{p^k}-conjugate of c_1
};

/// Projection from a larger window to a smaller one (same p).
GElement project(const GElement& g, const GCtx& from, const GCtx& to);

/// w_{i,j,k}; throws WindowOverflow if an index exceeds the window when strict.
SparseVec w_ijk(const GCtx& ctx, int i, int j, int k, bool strict = true);
/// The Z-element with (xh)^{p^k} = x^{p^k} [h, x, ..., x] d_k(h).
SparseVec d_k(const GCtx& ctx, const GElement& h, int k);
SparseVec tilde_w(const GCtx& ctx, int i, int j, int k, bool strict = true);
/// With strict = false the depth precondition on h is not enforced.
SparseVec tilde_d(const GCtx& ctx, const GElement& h, int k, bool strict = true);

std::string to_string(const GCtx& ctx, const GElement& g);

}  // namespace hspec
