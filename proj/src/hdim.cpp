#include "hspec/hdim.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>

namespace hspec {

namespace {

int valuation(int p, long long v) {
  int a = 0;
  while (v % p == 0) {
    v /= p;
    ++a;
  }
  return a;
}

long long mod_inverse(long long u, long long m) {
  long long a = ((u % m) + m) % m, b = m, x0 = 1, x1 = 0;
  while (b) {
    long long t = a / b;
    std::tie(a, b) = std::make_pair(b, a - t * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - t * x1);
  }
  if (a != 1) throw std::invalid_argument("x-exponent unit is not invertible");
  return ((x0 % m) + m) % m;
}

SparseVec truncate(const SparseVec& v, int window) {
  std::vector<Entry> out;
  for (const auto& e : v.entries())
    if (static_cast<int>(e.index) < window) out.push_back(e);
  return SparseVec::from_sorted(v.p(), std::move(out));
}

SparseVec shift(const SparseVec& v, long long by, int window) {
  std::vector<Entry> out;
  for (const auto& e : v.entries())
    if (static_cast<long long>(e.index) + by < window) out.push_back({static_cast<Ordinal>(e.index + by), e.coef});
  return SparseVec::from_sorted(v.p(), std::move(out));
}

GElement bracket_xgen(const GCtx& ctx, GElement h, const GElement& xgen, long long times) {
  for (long long i = 0; i < times; ++i) h = ctx.commutator(h, xgen);
  return h;
}

}  // namespace

Rational FgSubgroup::predicted() const {
  if (finite) return Rational(0);
  Rational q2 = Rational(q()) * q();
  return Rational(d() * d()) / q2;
}

FgSubgroup normalize(const GCtx& ctx, const std::vector<GElement>& gens) {
  const int p = ctx.p();
  const int W = ctx.window();
  FgSubgroup k;
  k.p = p;
  k.window = W;

  std::vector<GElement> xs, hs;
  for (const auto& g : gens) (g.xexp != 0 ? xs : hs).push_back(g);

  if (xs.empty()) {
    k.finite = true;
    k.log.push_back("all generators lie in H; the subgroup is finite");
    for (auto& h : hs)
      if (!h.h.empty()) k.hs.push_back(h);
    std::sort(k.hs.begin(), k.hs.end(), [](const GElement& a, const GElement& b) { return a.h.leading() < b.h.leading(); });
    for (auto& h : k.hs) k.depths.push_back(static_cast<int>(h.h.leading()) + 1);
    return k;
  }

  auto best = std::min_element(xs.begin(), xs.end(), [&](const GElement& a, const GElement& b) {
    return valuation(p, a.xexp) < valuation(p, b.xexp);
  });
  GElement g0 = *best;
  xs.erase(best);
  const int alpha = valuation(p, g0.xexp);
  const long long pa = int_pow(p, alpha);
  const long long u = g0.xexp / pa;

  // g0^M = x^{M xexp} exactly once M is a p-power multiple of the period.
  long long M = 1;
  GElement gm = g0;
  while (!(gm.h.empty() && gm.z.empty()) || M < ctx.period()) {
    gm = ctx.power(gm, p);
    M *= p;
  }
  GElement xgen = ctx.power(g0, mod_inverse(u, M));
  xgen.xexp = pa;
  k.l = alpha;
  k.xgen = xgen;
  if (u != 1) k.log.push_back("x-generator rescaled by the p-adic inverse of " + std::to_string(u));

  for (auto& g : xs) {
    GElement h = ctx.mul(g, ctx.power(xgen, -(g.xexp / pa)));
    k.log.push_back("x-generator " + to_string(ctx, g) + " traded for an H-generator");
    hs.push_back(std::move(h));
  }

  // Module echelon over F_p[[s]], s = [., xgen], acting on images as a shift by q.
  const long long q = k.q();
  const long long cap = 4 * q;
  std::map<long long, GElement> rep;  // residue of leading ordinal mod q
  const FieldP& f = ctx.field();
  for (std::size_t next = 0; next < hs.size(); ++next) {
    GElement a = hs[next];
    for (long long steps = 0;; ++steps) {
      if (a.h.empty()) {
        if (!a.z.empty()) k.log.push_back("generator absorbed into Z and dropped");
        break;
      }
      long long i = a.h.leading();
      auto it = rep.find(i % q);
      if (it == rep.end()) {
        Coef c = f.inv(a.h.entries().front().coef);
        if (c != 1) a = ctx.power(a, c);
        rep.emplace(i % q, std::move(a));
        break;
      }
      if (steps >= cap) {
        k.log.push_back("cancellation stopped after " + std::to_string(cap) + " steps at depth " + std::to_string(i + 1) +
                        "; leftover dropped");
        break;
      }
      long long j = it->second.h.leading();
      if (j > i) {
        Coef c = f.inv(a.h.entries().front().coef);
        if (c != 1) a = ctx.power(a, c);
        std::swap(a, it->second);
        continue;
      }
      GElement b = bracket_xgen(ctx, it->second, xgen, (i - j) / q);
      Coef c = a.h.entries().front().coef;
      a = ctx.mul(a, ctx.power(b, -static_cast<long long>(c)));
    }
  }
  for (auto& [r, h] : rep) k.hs.push_back(std::move(h));
  std::sort(k.hs.begin(), k.hs.end(), [](const GElement& a, const GElement& b) { return a.h.leading() < b.h.leading(); });
  for (auto& h : k.hs) k.depths.push_back(static_cast<int>(h.h.leading()) + 1);
  if (!k.depths.empty() && k.depths.back() > q)
    k.log.push_back("deepest generator has depth " + std::to_string(k.depths.back()) + " > p^l");
  return k;
}

FgSubgroup witness(const GCtx& ctx, int l, int d) {
  FgSubgroup k;
  k.p = ctx.p();
  k.window = ctx.window();
  k.l = l;
  if (d > k.q()) throw std::invalid_argument("witness needs d <= p^l");
  k.xgen = ctx.x(k.q());
  for (int i = 1; i <= d; ++i) {
    k.hs.push_back(ctx.c(i));
    k.depths.push_back(i);
  }
  return k;
}

std::vector<int> star_indices(const GCtx& ctx, const FgSubgroup& k) {
  std::vector<int> out;
  if (k.finite) {
    for (int i : k.depths)
      if (i <= ctx.window()) out.push_back(i);
    return out;
  }
  const long long q = k.q();
  for (int i : k.depths)
    for (long long j = i; j <= ctx.window(); j += q) out.push_back(static_cast<int>(j));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SparseVec> star_images(const GCtx& ctx, const FgSubgroup& k) {
  const int W = ctx.window();
  std::vector<SparseVec> star(W);
  for (int j = 1; j <= W; ++j) star[j - 1] = SparseVec::unit(ctx.field(), j - 1);
  if (k.finite) {
    for (std::size_t n = 0; n < k.hs.size(); ++n)
      if (k.depths[n] <= W) star[k.depths[n] - 1] = truncate(k.hs[n].h, W);
    return star;
  }
  const long long q = k.q();
  for (std::size_t n = 0; n < k.hs.size(); ++n) {
    SparseVec base = truncate(k.hs[n].h, W);
    for (long long j = k.depths[n], m = 0; j <= W; j += q, m += q) star[j - 1] = shift(base, m, W);
  }
  return star;
}

std::vector<SparseVec> k_cap_z(const GCtx& ctx, const FgSubgroup& k) {
  auto star = star_images(ctx, k);
  auto idx = star_indices(ctx, k);
  std::vector<SparseVec> out;
  auto push = [&](SparseVec v) {
    if (!v.empty()) out.push_back(std::move(v));
  };
  if (ctx.p() == 2)
    for (int j : idx) push(ctx.hpow_p(star[j - 1]));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < a; ++b) push(ctx.alt(star[idx[a] - 1], star[idx[b] - 1]));
  return out;
}

SparseVec z_star(const GCtx& ctx, const std::vector<SparseVec>& star, int a, int b) {
  return ctx.alt(star[a - 1], star[b - 1]);
}

namespace {

template <class Fn>
void for_block(int W, long long q, int r, int s, Fn fn) {
  for (long long i = 1; i <= q; ++i) {
    long long a = i + r * q;
    if (a > W) break;
    for (long long j = 1; j <= q; ++j) {
      long long b = j + s * q;
      if (b >= a) break;
      fn(static_cast<int>(a), static_cast<int>(b));
    }
  }
}

}  // namespace

std::vector<SparseVec> blocks(const GCtx& ctx, const FgSubgroup& k, int r, int s) {
  if (s > r) throw std::invalid_argument("blocks need s <= r");
  auto star = star_images(ctx, k);
  std::vector<SparseVec> out;
  for_block(ctx.window(), k.finite ? 1 : k.q(), r, s, [&](int a, int b) {
    auto v = z_star(ctx, star, a, b);
    if (!v.empty()) out.push_back(std::move(v));
  });
  return out;
}

int horizon_window(SeriesId s, int p, int horizon) {
  int w = 1;
  for (int k = 1; k <= horizon; ++k) w = std::max(w, default_window(s, p, k));
  return w;
}

namespace {

EchelonSpan delta_span(const GCtx& ctx, const FgSubgroup& k, const SeriesLevel& lv) {
  const int W = ctx.window();
  const long long q = k.finite ? 1 : k.q();
  const FieldP& f = ctx.field();
  auto star = star_images(ctx, k);
  EchelonSpan delta(f, ctx.zb().size());
  const int nb = static_cast<int>((W + q - 1) / q);
  for (int r = 0; r < nb; ++r)
    for (int s = 0; s <= r; ++s) {
      bool meets = false;
      for_block(W, q, r, s, [&](int a, int b) {
        if (!meets && lv.span.contains(SparseVec::unit(f, ctx.zb().com(a, b)))) meets = true;
      });
      if (!meets) continue;
      for_block(W, q, r, s, [&](int a, int b) { delta.insert(z_star(ctx, star, a, b)); });
    }
  if (ctx.p() == 2)
    for (int j = std::max(1, lv.m_k); j <= W; ++j) delta.insert(ctx.hpow_p(star[j - 1]));
  for (const auto& g : lv.gens)
    if (g.size() > 1) delta.insert(g);
  return delta;
}

}  // namespace

DensityReport density_sequence(const FgSubgroup& k, SeriesId s, int horizon, const DensityOptions& opt) {
  DensityReport rep;
  rep.series = s;
  rep.mode = opt.mode;
  rep.p = k.p;
  rep.l = k.l;
  rep.d = k.d();
  rep.finite = k.finite;
  rep.predicted = k.predicted();
  std::unique_ptr<ZBasis> base_zb;
  if (!opt.extra_z.empty()) base_zb = std::make_unique<ZBasis>(k.p, k.window);
  for (int lvl = 1; lvl <= horizon; ++lvl) {
    const int W = default_window(s, k.p, lvl);
    if (W > window_budget()) throw BudgetExceeded("level " + std::to_string(lvl) + " needs window " + std::to_string(W));
    if (W > k.window)
      throw BudgetExceeded("level " + std::to_string(lvl) + " needs window " + std::to_string(W) +
                           " beyond the normalization window " + std::to_string(k.window));
    GCtx ctx(k.p, W);
    SeriesLevel lv = series_level(ctx, s, lvl);
    auto kz = k_cap_z(ctx, k);
    if (!opt.extra_z.empty()) {
      std::vector<SparseVec> extra;
      for (const auto& z : opt.extra_z) extra.push_back(rebase(z, *base_zb, ctx.zb()));
      for (auto& v : z_normal_closure(ctx, extra)) kz.push_back(std::move(v));
    }
    DensityPoint pt{lvl, W, 0, 0, Rational(0), lv.n_k};
    if (opt.mode == DensityMode::Raw) {
      pt.denominator = static_cast<long long>(lv.codim());
      pt.numerator = static_cast<long long>(quotient_dim_inplace(kz, lv.span));
    } else {
      EchelonSpan delta = delta_span(ctx, k, lv);
      pt.denominator = static_cast<long long>(delta.ambient_dim() - delta.dim());
      pt.numerator = static_cast<long long>(quotient_dim_inplace(kz, delta));
    }
    if (pt.denominator == 0) continue;
    pt.ratio = Rational(pt.numerator, pt.denominator);
    rep.points.push_back(std::move(pt));
  }
  const std::size_t n = rep.points.size();
  if (n == 0) return rep;
  const std::size_t tail_n = std::max<std::size_t>(1, (n + 3) / 4);
  Rational sum(0);
  rep.tail_min = rep.tail_max = rep.points[n - tail_n].ratio;
  for (std::size_t i = n - tail_n; i < n; ++i) {
    const Rational& r = rep.points[i].ratio;
    sum += r;
    rep.tail_min = std::min(rep.tail_min, r);
    rep.tail_max = std::max(rep.tail_max, r);
  }
  rep.tail = sum / static_cast<long long>(tail_n);
  rep.abs_gap = abs(rep.tail - rep.predicted);
  rep.gap_monotone_tail = true;
  for (std::size_t i = n >= 3 ? n - 2 : 1; i < n; ++i)
    if (abs(rep.points[i].ratio - rep.predicted) > abs(rep.points[i - 1].ratio - rep.predicted))
      rep.gap_monotone_tail = false;
  return rep;
}

double default_tolerance(SeriesId s) { return s == SeriesId::L || s == SeriesId::D ? 0.02 : 0.1; }

int default_horizon(SeriesId s, int p) {
  if (s == SeriesId::L || s == SeriesId::D) return 60;
  if (s == SeriesId::I && p != 2) return 4;
  return 7;
}

SpectrumReport spectrum_scan(int p, int l_max, SeriesId s, int horizon, double tolerance, DensityMode mode) {
  SpectrumReport rep{p, s, mode, horizon, tolerance, {}, {}};
  GCtx base(p, horizon_window(s, p, horizon));
  std::set<Rational> achieved;
  for (int l = 0; l <= l_max; ++l) {
    const long long q = int_pow(p, l);
    for (int d = 0; d <= q; ++d) {
      FgSubgroup k = witness(base, l, d);
      DensityReport dr = density_sequence(k, s, horizon, {mode, {}});
      SpectrumEntry e{l, d, dr.predicted, dr.tail, dr.abs_gap, to_double(dr.abs_gap) <= tolerance};
      if (e.achieved) achieved.insert(e.predicted);
      rep.entries.push_back(std::move(e));
    }
  }
  rep.achieved.assign(achieved.begin(), achieved.end());
  return rep;
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace hspec
