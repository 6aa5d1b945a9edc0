#include <gtest/gtest.h>

#include <random>

#include "hspec/gfin.hpp"
#include "hspec/hdim.hpp"
#include "support.hpp"

using namespace hspec;

namespace {

std::size_t span_dim(const GCtx& ctx, const std::vector<SparseVec>& gens) {
  EchelonSpan s(ctx.field(), ctx.zb().size());
  for (auto& g : gens) s.insert(g);
  return s.dim();
}

double gap(const DensityReport& r) { return to_double(r.abs_gap); }

}  // namespace

TEST(Normalize, XAndY) {
  GCtx ctx(2, 16);
  auto k = normalize(ctx, {ctx.x(), ctx.y()});
  EXPECT_FALSE(k.finite);
  EXPECT_EQ(k.l, 0);
  ASSERT_EQ(k.d(), 1);
  EXPECT_EQ(k.depths[0], 1);
}

TEST(Normalize, CombinesXGenerators) {
  GCtx ctx(2, 16);
  GElement x2y = ctx.mul(ctx.x(2), ctx.y());
  auto k = normalize(ctx, {ctx.x(4), x2y});
  EXPECT_EQ(k.l, 1);
  EXPECT_EQ(k.xgen.h, ctx.y().h);
  ASSERT_EQ(k.d(), 1);
  EXPECT_GE(k.depths[0], 2);

  FinCtx fin(2, 3);
  Embedding emb(ctx, fin);
  auto raw = close_subgroup(fin, {emb(ctx.x(4)), emb(x2y)});
  auto norm = close_subgroup(fin, {emb(k.xgen), emb(k.hs[0])});
  EXPECT_TRUE(raw == norm);
}

TEST(Normalize, UnitExponentAndRedundantGenerators) {
  GCtx ctx(3, 20);
  std::mt19937_64 rng(7);
  GElement g = ctx.mul(ctx.x(2), ctx.c(2));
  GElement h = ctx.mul(ctx.c(1), ctx.c(4));
  auto k = normalize(ctx, {g, h, ctx.commutator(h, g), ctx.mul(h, h)});
  EXPECT_EQ(k.l, 0);
  EXPECT_EQ(k.xgen.xexp, 1);
  ASSERT_EQ(k.d(), 1);
  EXPECT_EQ(k.depths[0], 1);

  FinCtx fin(3, 2);
  GCtx sym(3, 2 * fin.q());
  Embedding emb(sym, fin);
  auto gs = project(g, ctx, sym), hs = project(h, ctx, sym);
  auto ks = normalize(sym, {gs, hs});
  auto raw = close_subgroup(fin, {emb(gs), emb(hs)});
  auto norm = close_subgroup(fin, {emb(ks.xgen), emb(ks.hs[0])});
  // Generators absorbed into Z are dropped, so only the H-image is guaranteed.
  EXPECT_EQ(raw.h_rank(), norm.h_rank());
  EXPECT_EQ(raw.x_valuation(), norm.x_valuation());
  EXPECT_TRUE(norm.subset_of(raw));
}

TEST(Normalize, DepthsDistinctModQ) {
  GCtx ctx(2, 32);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    std::vector<GElement> gens{ctx.mul(ctx.x(4 * (1 + 2 * static_cast<long long>(rng() % 3))), hspec::testing::random_h_element(ctx, rng))};
    for (int i = 0; i < 3; ++i) gens.push_back(hspec::testing::random_h_element(ctx, rng));
    auto k = normalize(ctx, gens);
    EXPECT_EQ(k.l, 2);
    std::set<long long> res;
    for (int i : k.depths) EXPECT_TRUE(res.insert(i % 4).second);
    for (std::size_t n = 0; n < k.hs.size(); ++n) EXPECT_EQ(k.hs[n].h.entries().front().coef, 1);
  }
}

TEST(Normalize, FiniteMarker) {
  GCtx ctx(2, horizon_window(SeriesId::L, 2, 20));
  auto k = normalize(ctx, {ctx.y(), ctx.c(2)});
  EXPECT_TRUE(k.finite);
  EXPECT_EQ(k.predicted(), 0);
  auto r = density_sequence(k, SeriesId::L, 20);
  EXPECT_LT(to_double(r.points.back().ratio), 0.05);
  for (std::size_t i = 5; i < r.points.size(); ++i) EXPECT_LE(r.points[i].ratio, r.points[i - 1].ratio);
}

TEST(KCapZ, Examples) {
  GCtx ctx(2, 12);
  EXPECT_TRUE(k_cap_z(ctx, normalize(ctx, {ctx.x()})).empty());
  EXPECT_EQ(span_dim(ctx, k_cap_z(ctx, normalize(ctx, {ctx.x(), ctx.y()}))), ctx.zb().size());

  auto k = normalize(ctx, {ctx.x(2), ctx.y()});
  EXPECT_EQ(star_indices(ctx, k), (std::vector<int>{1, 3, 5, 7, 9, 11}));
  EchelonSpan s(ctx.field(), ctx.zb().size());
  for (auto& v : k_cap_z(ctx, k)) s.insert(v);
  EXPECT_EQ(s.dim(), 6u + 15u);
  for (auto piv : s.pivots()) {
    auto b = ctx.zb().index(piv);
    EXPECT_EQ(b.m % 2, 1) << b.str();
    if (b.kind == BasisIndex::Com) EXPECT_EQ(b.n % 2, 1) << b.str();
  }
}

TEST(Blocks, Counts) {
  GCtx ctx(2, 16);
  for (int d : {1, 2}) {
    auto k = witness(ctx, 1, d);
    auto kz = k_cap_z(ctx, k);
    for (int r = 1; r < 8; ++r)
      for (int s = 0; s < r; ++s) {
        auto b = blocks(ctx, k, r, s);
        EchelonSpan bs(ctx.field(), ctx.zb().size());
        for (auto& v : b) bs.insert(v);
        ASSERT_EQ(bs.dim(), 4u);
        EXPECT_EQ(span_dim(ctx, kz) - quotient_dim(kz, bs), static_cast<std::size_t>(d * d)) << r << " " << s;
      }
    auto diag = blocks(ctx, k, 2, 2);
    EXPECT_LT(span_dim(ctx, diag), 4u);
  }
}

TEST(Density, WholeGroupIsOne) {
  for (SeriesId s : {SeriesId::L, SeriesId::D, SeriesId::M, SeriesId::F}) {
    int h = s == SeriesId::L || s == SeriesId::D ? 12 : 4;
    GCtx ctx(2, horizon_window(s, 2, h));
    auto r = density_sequence(normalize(ctx, {ctx.x(), ctx.y()}), s, h);
    for (auto& pt : r.points) EXPECT_EQ(pt.ratio, 1) << series_name(s) << " " << pt.k;
  }
}

TEST(Density, PredictedValues) {
  GCtx ctx(2, horizon_window(SeriesId::L, 2, 60));
  const DensityOptions delta{DensityMode::Delta, {}};
  auto ka = normalize(ctx, {ctx.x(2), ctx.y()});
  auto a = density_sequence(ka, SeriesId::L, 60);
  EXPECT_EQ(a.predicted, Rational(1, 4));
  EXPECT_LE(gap(a), 0.03);
  EXPECT_LE(gap(density_sequence(ka, SeriesId::L, 60, delta)), 0.02);
  auto kb = normalize(ctx, {ctx.x(4), ctx.y(), ctx.c(2), ctx.c(3)});
  auto b = density_sequence(kb, SeriesId::D, 60);
  EXPECT_EQ(b.predicted, Rational(9, 16));
  EXPECT_LE(gap(b), 0.03);
  EXPECT_LE(gap(density_sequence(kb, SeriesId::D, 60, delta)), 0.02);
  for (auto& pt : b.points) {
    EXPECT_GE(pt.ratio, 0);
    EXPECT_LE(pt.ratio, 1);
  }
}

TEST(Density, DeltaAgreesWithRaw) {
  GCtx ctx(2, horizon_window(SeriesId::L, 2, 30));
  auto k = witness(ctx, 1, 1);
  for (SeriesId s : {SeriesId::L, SeriesId::D}) {
    auto raw = density_sequence(k, s, 30);
    auto del = density_sequence(k, s, 30, {DensityMode::Delta, {}});
    EXPECT_LE(to_double(abs(raw.tail - del.tail)), 0.05) << series_name(s);
  }
}

TEST(Density, ZGeneratorStability) {
  GCtx ctx(2, horizon_window(SeriesId::L, 2, 30));
  std::mt19937_64 rng(3);
  auto k = witness(ctx, 1, 1);
  auto raw = density_sequence(k, SeriesId::L, 30);
  DensityOptions opt;
  for (int i = 0; i < 3; ++i) opt.extra_z.push_back(SparseVec::unit(ctx.field(), static_cast<Ordinal>(rng() % ctx.zb().size())));
  auto more = density_sequence(k, SeriesId::L, 30, opt);
  for (std::size_t i = 0; i < raw.points.size(); ++i) EXPECT_GE(more.points[i].ratio, raw.points[i].ratio);
  EXPECT_LE(to_double(abs(more.tail - raw.tail)), 0.05);
}

TEST(Density, OverBudget) {
  GCtx ctx(2, 20);
  EXPECT_THROW(density_sequence(witness(ctx, 1, 1), SeriesId::M, 6), BudgetExceeded);
}

TEST(Spectrum, SmallScan) {
  auto r = spectrum_scan(2, 1, SeriesId::L, 40, 0.03);
  std::vector<Rational> want{Rational(0), Rational(1, 4), Rational(1)};
  EXPECT_EQ(r.achieved, want);
}

TEST(FiniteLevel, IndexBound) {
  FinCtx fin(2, 3);
  GCtx sym(2, 2 * fin.q());
  Embedding emb(sym, fin);
  auto P = lower_p(fin);
  for (auto gens : {std::vector<GElement>{sym.x(2), sym.y()},
                    std::vector<GElement>{sym.x(4), sym.mul(sym.x(2), sym.y())},
                    std::vector<GElement>{sym.x(4), sym.y(), sym.c(2)}}) {
    auto k = normalize(sym, gens);
    std::vector<FinElement> fg;
    for (auto& g : gens) fg.push_back(emb(g));
    auto K = close_subgroup(fin, fg);
    for (std::size_t i = 1; i + 1 < P.size(); ++i) {
      auto KS = product(K, P[i]);
      EchelonSpan both = K.zspan();
      for (auto& r : P[i].zspan().reduced()) both.insert(r);
      long long lhs = static_cast<long long>(KS.z_rank()) - static_cast<long long>(both.dim());
      int n_i = series_level(sym, SeriesId::L, static_cast<int>(i)).n_k;
      EXPECT_GE(lhs, 0);
      EXPECT_LE(lhs, (2 * k.d() + 2) * n_i + 1) << i;
    }
  }
}
