#include "hspec/gsymb.hpp"

#include <sstream>

namespace hspec {

namespace {
using Terms = std::vector<std::pair<Ordinal, long long>>;
}

void GCtx::push_gamma(Terms& out, int i, int j, long long coef) const {
  if (coef == 0 || i > window()) return;
  if (i > j)
    out.emplace_back(zb_.com(i, j), coef);
  else if (i == j && p() == 2)
    out.emplace_back(zb_.csq(i), coef);
}

void GCtx::push_com(Terms& out, int m, int n, long long coef) const {
  if (coef == 0 || m == n || std::max(m, n) > window()) return;
  if (m > n)
    out.emplace_back(zb_.com(m, n), coef);
  else
    out.emplace_back(zb_.com(n, m), -coef);
}

GCtx::GCtx(int p, int window) : field_(p), zb_(p, window) {
  qpow_.push_back(1);
  zeta_.emplace_back();
  const long long cap = 4LL * p * window + p;
  for (std::size_t k = 0;; ++k) {
    if (qpow_[k] >= window && zeta_[k].empty()) {
      period_ = qpow_[k];
      qpow_.pop_back();
      zeta_.pop_back();
      break;
    }
    if (qpow_[k] > cap) throw std::logic_error("x-action period not found");
    SparseVec a = SparseVec::unit(field_, 0), z(p);
    for (int t = 0; t < p; ++t) {
      SparseVec a2, z2;
      phi_step(k, a, z, a2, z2);
      a = std::move(a2);
      z = std::move(z2);
    }
    std::vector<ZTerm> zt;
    for (const auto& e : z.entries()) {
      const auto& b = zb_.index(e.index);
      zt.push_back({b.kind, b.m, b.n, e.coef});
    }
    qpow_.push_back(qpow_[k] * p);
    zeta_.push_back(std::move(zt));
  }
}

SparseVec GCtx::z_phi_step(std::size_t k, const SparseVec& z) const {
  const int q = static_cast<int>(qpow_[k]);
  Terms out;
  out.reserve(z.size() * 4);
  for (const auto& e : z.entries()) {
    const auto& b = zb_.index(e.index);
    if (b.kind == BasisIndex::CSq) {
      push_gamma(out, b.m, b.m, e.coef);
      push_gamma(out, b.m + q, b.m + q, e.coef);
      push_gamma(out, b.m + q, b.m, e.coef);
    } else {
      push_com(out, b.m, b.n, e.coef);
      push_com(out, b.m, b.n + q, e.coef);
      push_com(out, b.m + q, b.n, e.coef);
      push_com(out, b.m + q, b.n + q, e.coef);
    }
  }
  return zvec(std::move(out));
}

void GCtx::phi_step(std::size_t k, const SparseVec& a, const SparseVec& z, SparseVec& a_out,
                    SparseVec& z_out) const {
  const int q = static_cast<int>(qpow_[k]);
  const int w = window();
  Terms img, out;
  SparseVec zz = z_phi_step(k, z);
  for (const auto& e : zz.entries()) out.emplace_back(e.index, e.coef);
  const auto& ea = a.entries();
  for (std::size_t s = 0; s < ea.size(); ++s) {
    const int i = static_cast<int>(ea[s].index) + 1;
    const long long ai = ea[s].coef;
    img.emplace_back(i - 1, ai);
    if (i + q <= w) img.emplace_back(i - 1 + q, ai);
    for (const auto& t : zeta_[k]) {
      if (t.m + i - 1 > w) continue;
      if (t.kind == BasisIndex::CSq)
        out.emplace_back(zb_.csq(t.m + i - 1), ai * t.coef);
      else
        out.emplace_back(zb_.com(t.m + i - 1, t.n + i - 1), ai * t.coef);
    }
    long long c2 = ai * (ai - 1) / 2;
    if (c2 % p()) {
      push_gamma(out, i, i, c2);
      push_gamma(out, i + q, i, c2);
      push_gamma(out, i + q, i + q, c2);
    }
    for (std::size_t s2 = s + 1; s2 < ea.size(); ++s2) {
      const int i2 = static_cast<int>(ea[s2].index) + 1;
      if (i2 > i + q) break;
      push_gamma(out, i + q, i2, ai * ea[s2].coef);
    }
  }
  a_out = SparseVec::from_terms(field_, std::move(img));
  z_out = zvec(std::move(out));
}

void GCtx::conj_h(const SparseVec& a, const SparseVec& z, long long e, SparseVec& a_out, SparseVec& z_out) const {
  long long r = ((e % period_) + period_) % period_;
  a_out = a;
  z_out = z;
  for (std::size_t k = 0; r > 0 && k < qpow_.size(); ++k, r /= p()) {
    for (long long t = 0; t < r % p(); ++t) {
      SparseVec a2, z2;
      phi_step(k, a_out, z_out, a2, z2);
      a_out = std::move(a2);
      z_out = std::move(z2);
    }
  }
}

SparseVec GCtx::z_conj(const SparseVec& z, long long e) const {
  long long r = ((e % period_) + period_) % period_;
  SparseVec out = z;
  for (std::size_t k = 0; r > 0 && k < qpow_.size(); ++k, r /= p())
    for (long long t = 0; t < r % p(); ++t) out = z_phi_step(k, out);
  return out;
}

SparseVec GCtx::z_bracket(const SparseVec& z, long long e, long long r) const {
  SparseVec out = z;
  for (long long t = 0; t < r && !out.empty(); ++t) out = vec_axpy(field_, z_conj(out, e), field_.neg(1), out);
  return out;
}

SparseVec GCtx::beta(const SparseVec& a, const SparseVec& b) const {
  Terms out;
  for (const auto& ea : a.entries())
    for (const auto& eb : b.entries()) {
      if (eb.index > ea.index) break;
      push_gamma(out, static_cast<int>(ea.index) + 1, static_cast<int>(eb.index) + 1,
                 static_cast<long long>(ea.coef) * eb.coef);
    }
  return zvec(std::move(out));
}

SparseVec GCtx::alt(const SparseVec& a, const SparseVec& b) const {
  Terms out;
  for (const auto& ea : a.entries())
    for (const auto& eb : b.entries())
      push_com(out, static_cast<int>(ea.index) + 1, static_cast<int>(eb.index) + 1,
               static_cast<long long>(ea.coef) * eb.coef);
  return zvec(std::move(out));
}

SparseVec GCtx::hpow_p(const SparseVec& a) const {
  if (p() != 2) return SparseVec(p());
  return beta(a, a);
}

GElement GCtx::identity() const { return {0, SparseVec(p()), SparseVec(p())}; }

GElement GCtx::x(long long e) const {
  GElement g = identity();
  g.xexp = e;
  return g;
}

GElement GCtx::c(int i) const {
  if (i < 1) throw std::invalid_argument("c-index must be positive");
  GElement g = identity();
  if (i <= window()) g.h = SparseVec::unit(field_, static_cast<Ordinal>(i - 1));
  return g;
}

GElement GCtx::zgen(int m, int n) const { return from_z(zword({{BasisIndex::Com, m, n, 1}})); }

GElement GCtx::csq(int l) const {
  if (p() != 2) return power(c(l), 2);
  return from_z(zword({{BasisIndex::CSq, l, 0, 1}}));
}

GElement GCtx::from_z(SparseVec z) const {
  GElement g = identity();
  g.z = std::move(z);
  return g;
}

GElement GCtx::from_h(SparseVec h) const {
  GElement g = identity();
  g.h = std::move(h);
  return g;
}

GElement GCtx::mul(const GElement& a, const GElement& b) const {
  SparseVec ha, za;
  conj_h(a.h, a.z, b.xexp, ha, za);
  GElement out;
  out.xexp = a.xexp + b.xexp;
  out.z = vec_add(field_, vec_add(field_, za, b.z), beta(ha, b.h));
  out.h = vec_add(field_, ha, b.h);
  return out;
}

GElement GCtx::inv(const GElement& g) const {
  SparseVec ah = vec_scale(field_, g.h, field_.neg(1));
  SparseVec zh = vec_axpy(field_, beta(g.h, g.h), field_.neg(1), g.z);
  GElement out;
  out.xexp = -g.xexp;
  conj_h(ah, zh, -g.xexp, out.h, out.z);
  return out;
}

GElement GCtx::commutator(const GElement& a, const GElement& b) const {
  return mul(mul(inv(a), inv(b)), mul(a, b));
}

GElement GCtx::commutator(const std::vector<GElement>& args) const {
  if (args.empty()) return identity();
  GElement acc = args[0];
  for (std::size_t i = 1; i < args.size(); ++i) acc = commutator(acc, args[i]);
  return acc;
}

GElement GCtx::power(const GElement& a, long long e) const {
  GElement base = e < 0 ? inv(a) : a;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  GElement acc = identity();
  while (n) {
    if (n & 1) acc = mul(acc, base);
    n >>= 1;
    if (n) base = mul(base, base);
  }
  return acc;
}

GElement GCtx::left_normed(const GElement& h, long long r) const {
  if (h.in_z()) return from_z(z_bracket(h.z, 1, r));
  if (!h.in_h()) {
    GElement acc = h;
    GElement xx = x();
    for (long long t = 0; t < r; ++t) acc = commutator(acc, xx);
    return acc;
  }
  GElement acc = h;
  for (long long t = 0; t < r; ++t) {
    GElement conj;
    conj_h(acc.h, acc.z, 1, conj.h, conj.z);
    acc = mul(inv(acc), conj);
  }
  return acc;
}

GElement project(const GElement& g, const GCtx& from, const GCtx& to) {
  if (from.p() != to.p()) throw FieldError("field mismatch");
  GElement out;
  out.xexp = g.xexp;
  std::vector<Entry> h;
  for (const auto& e : g.h.entries())
    if (static_cast<int>(e.index) < to.window()) h.push_back(e);
  out.h = SparseVec::from_sorted(to.p(), std::move(h));
  out.z = rebase(g.z, from.zb(), to.zb());
  return out;
}

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

SparseVec horner_w(const GCtx& ctx, int i, int j, long long len, bool strict) {
  if (i < 1 || j < 1) throw std::invalid_argument("indices must be positive");
  if (strict && i + len > ctx.window()) throw WindowOverflow("w element exceeds window");
  SparseVec acc(ctx.p());
  for (long long s = 1; s <= len; ++s) {
    acc = ctx.z_bracket(acc, 1, 1);
    acc = vec_add(ctx.field(), acc,
                  ctx.zword({{BasisIndex::Com, static_cast<int>(i + s), static_cast<int>(j + s - 1), 1}}));
  }
  return acc;
}

}  // namespace

SparseVec w_ijk(const GCtx& ctx, int i, int j, int k, bool strict) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  return horner_w(ctx, i, j, ipow(ctx.p(), k) - 1, strict);
}

SparseVec tilde_w(const GCtx& ctx, int i, int j, int k, bool strict) {
  if (ctx.p() == 2) throw std::invalid_argument("tilde family needs odd p");
  long long q1 = ipow(ctx.p(), k - 1);
  if (k < 1 || i < q1 || j < q1) throw std::invalid_argument("indices below p^(k-1)");
  return horner_w(ctx, i, j, ipow(ctx.p(), k) - q1, strict);
}

SparseVec d_k(const GCtx& ctx, const GElement& h, int k) {
  if (!h.in_h()) throw std::invalid_argument("d_k needs an element of H");
  long long q = ipow(ctx.p(), k);
  GElement pw = ctx.power(ctx.mul(ctx.x(), h), q);
  GElement lead = ctx.mul(ctx.x(q), ctx.left_normed(h, q - 1));
  GElement d = ctx.mul(ctx.inv(lead), pw);
  if (!d.in_z()) throw std::logic_error("d_k quotient left Z");
  return d.z;
}

SparseVec tilde_d(const GCtx& ctx, const GElement& h, int k, bool strict) {
  if (ctx.p() == 2) throw std::invalid_argument("tilde family needs odd p");
  if (!h.in_h()) throw std::invalid_argument("tilde_d needs an element of H");
  long long q1 = ipow(ctx.p(), k - 1), q = q1 * ctx.p();
  if (strict && !h.h.empty() && h.h.leading() + 1 < q1) throw std::invalid_argument("element not deep enough");
  for (const auto& e : h.z.entries())
    if (strict && ctx.zb().index(e.index).weight() < q1) throw std::invalid_argument("element not deep enough");
  GElement pw = ctx.power(ctx.mul(ctx.x(q1), h), ctx.p());
  GElement lead = ctx.mul(ctx.x(q), ctx.left_normed(h, q - q1));
  GElement d = ctx.mul(ctx.inv(lead), pw);
  if (!d.in_z()) throw std::logic_error("tilde_d quotient left Z");
  return d.z;
}

std::string to_string(const GCtx& ctx, const GElement& g) {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " * ";
    first = false;
  };
  if (g.xexp) {
    sep();
    os << "x";
    if (g.xexp != 1) os << "^" << g.xexp;
  }
  for (const auto& e : g.h.entries()) {
    sep();
    os << "c" << e.index + 1;
    if (e.coef != 1) os << "^" << int(e.coef);
  }
  for (const auto& e : g.z.entries()) {
    sep();
    const auto& b = ctx.zb().index(e.index);
    if (b.kind == BasisIndex::CSq)
      os << "(c" << b.m << "^2)";
    else
      os << "z(" << b.m << "," << b.n << ")";
    if (e.coef != 1) os << "^" << int(e.coef);
  }
  if (first) os << "1";
  return os.str();
}

}  // namespace hspec
