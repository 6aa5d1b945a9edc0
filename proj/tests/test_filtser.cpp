#include <gtest/gtest.h>

#include "hspec/filtser.hpp"
#include "hspec/gfin.hpp"

using namespace hspec;

namespace {

std::size_t span_dim(const GCtx& ctx, const std::vector<SparseVec>& gens) {
  EchelonSpan s(ctx.field(), ctx.zb().size());
  for (auto& g : gens) s.insert(g);
  return s.dim();
}

std::vector<SparseVec> concat(std::vector<SparseVec> a, const std::vector<SparseVec>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Span of the images in Z_k against the Z-layer of an oracle subgroup. The
// images always lie in the oracle; equality is expected when the kernel of the
// quotient map lies in the level.
::testing::AssertionResult same_image(const GCtx& sym, const FinCtx& fin, const std::vector<SparseVec>& gens,
                                      const InducedSequence& oracle, bool exact = true) {
  Embedding emb(sym, fin);
  EchelonSpan img(fin.field(), fin.zb().size());
  for (auto& g : gens) {
    FinElement e = emb(sym.from_z(g));
    if (!e.in_z()) return ::testing::AssertionFailure() << "image left Z";
    if (!oracle.zspan().contains(e.z)) return ::testing::AssertionFailure() << "image outside oracle";
    img.insert(e.z);
  }
  if (exact && img.dim() != oracle.z_rank())
    return ::testing::AssertionFailure() << "image dim " << img.dim() << " vs oracle " << oracle.z_rank();
  return ::testing::AssertionSuccess();
}

}  // namespace

TEST(FiltSer, GammaFormula) {
  GCtx ctx(2, 50);
  for (int i = 2; i <= 40; ++i) {
    std::size_t codim = ctx.zb().size() - span_dim(ctx, gamma_cap_Z(ctx, i));
    std::size_t want = i % 2 ? (i * i - 1) / 4 : i * i / 4;
    EXPECT_EQ(codim, want) << i;
  }
}

TEST(FiltSer, NamedExamples) {
  GCtx ctx(2, 12);
  for (auto& v : named_subgroup(ctx, Named::Theta, 2)) {
    auto b = ctx.zb().index(v.leading());
    EXPECT_TRUE((b.m >= 2 && b.n >= 2) || b.m >= 4);
  }
  EXPECT_EQ(named_subgroup(ctx, Named::Theta, 2).size(), 64u);
  for (auto& v : named_subgroup(ctx, Named::Zr, 3)) EXPECT_GE(ctx.zb().index(v.leading()).n, 3);
  EXPECT_THROW(named_subgroup(ctx, Named::LambdaT, 2), std::invalid_argument);
  GCtx c3(3, 12);
  EXPECT_THROW(named_subgroup(c3, Named::Psi, 2), std::invalid_argument);
}

TEST(FiltSer, FrattiniRanks) {
  const std::size_t want[] = {0, 0, 0, 1, 7};
  for (int k = 2; k <= 4; ++k) {
    GCtx ctx(2, default_window(SeriesId::F, 2, k));
    auto theta = named_subgroup(ctx, Named::Theta, k);
    auto lam = named_subgroup(ctx, Named::Lambda, k);
    EXPECT_EQ(span_dim(ctx, concat(lam, theta)) - span_dim(ctx, theta), want[k]) << k;
    EXPECT_LE(span_dim(ctx, named_subgroup(ctx, Named::Psi, k)), (1u << (k - 1)) - 1) << k;
  }
}

TEST(FiltSer, LowerSeriesMarkers) {
  for (int k = 1; k <= 10; ++k) {
    GCtx ctx(2, default_window(SeriesId::L, 2, k));
    auto lv = series_level(ctx, SeriesId::L, k);
    EXPECT_EQ(lv.m_k, k);
    EXPECT_EQ(lv.n_k, k + 1);
    EXPECT_EQ(lv.alpha_k, k);
    auto dv = series_level(ctx, SeriesId::D, k);
    EXPECT_EQ(dv.n_k, k + 1);
    EXPECT_EQ(dv.m_k, (k + 2) / 2);
  }
  GCtx c(2, 16);
  EXPECT_EQ(series_level(c, SeriesId::D, 3).alpha_k, 2);
  EXPECT_EQ(series_level(c, SeriesId::D, 4).alpha_k, 3);
}

TEST(FiltSer, NaturalSeriesMarkers) {
  for (int k = 1; k <= 4; ++k) {
    GCtx ctx(2, default_window(SeriesId::M, 2, k));
    auto lv = series_level(ctx, SeriesId::M, k);
    EXPECT_EQ(lv.n_k, 1 << (k + 1));
    EXPECT_EQ(lv.m_k, (1 << k) + 1);
    auto pv = series_level(ctx, SeriesId::P, k);
    EXPECT_LE(pv.n_k, 1 << (k + 1));
    auto fv = series_level(GCtx(2, default_window(SeriesId::F, 2, k)), SeriesId::F, k);
    EXPECT_LE(fv.n_k, (1 << k) + (1 << (k - 1)) - 1 + (k == 1 ? 2 : 0)) << k;
  }
}

TEST(FiltSer, Nesting) {
  for (int p : {2, 3}) {
    for (SeriesId s : kAllSeries) {
      int kmax = p == 2 ? 4 : 2;
      for (int k = 1; k < kmax; ++k) {
        int w = std::max(default_window(s, p, k), default_window(s, p, k + 1));
        GCtx ctx(p, w);
        auto a = series_level(ctx, s, k), b = series_level(ctx, s, k + 1);
        for (auto& g : b.gens) ASSERT_TRUE(a.span.contains(g)) << series_name(s) << " p=" << p << " k=" << k;
      }
    }
  }
}

TEST(FiltSer, PowerFiniteFormIsLkQk) {
  for (int k = 1; k <= 3; ++k) {
    GCtx ctx(2, default_window(SeriesId::P, 2, k));
    auto lv = series_level(ctx, SeriesId::P, k);
    auto full = concat(named_subgroup(ctx, Named::L, k), named_subgroup(ctx, Named::Q, k));
    EchelonSpan s(ctx.field(), ctx.zb().size());
    for (auto& g : full) s.insert(g);
    EXPECT_EQ(s.dim(), lv.dim()) << k;
    for (auto& g : full) EXPECT_TRUE(lv.span.contains(g));
  }
}

TEST(FiltSer, PowerOverNaturalBound) {
  for (int k = 1; k <= 5; ++k) {
    GCtx ctx(2, default_window(SeriesId::P, 2, k));
    auto pv = series_level(ctx, SeriesId::P, k), mv = series_level(ctx, SeriesId::M, k);
    EXPECT_LE(pv.dim() - mv.dim(), static_cast<std::size_t>((1 << (k + 1)) + (1 << (k - 1))));
  }
}

TEST(FiltSer, OracleLowerAndDimension) {
  for (int kf = 1; kf <= 3; ++kf) {
    FinCtx fin(2, kf);
    GCtx sym(2, 2 * fin.q());
    auto P = lower_p(fin);
    auto J = jennings(fin);
    for (std::size_t k = 1; k + 1 < P.size(); ++k)
      EXPECT_TRUE(same_image(sym, fin, series_level(sym, SeriesId::L, static_cast<int>(k)).gens, P[k], k <= static_cast<std::size_t>(kf))) << kf << " " << k;
    for (std::size_t k = 1; k + 1 < J.size(); ++k)
      EXPECT_TRUE(same_image(sym, fin, series_level(sym, SeriesId::D, static_cast<int>(k)).gens, J[k])) << kf << " " << k;
  }
}

TEST(FiltSer, OracleOddLowerAndDimension) {
  for (int kf = 1; kf <= 2; ++kf) {
    FinCtx fin(3, kf);
    GCtx sym(3, 2 * fin.q());
    auto P = lower_p(fin);
    auto J = jennings(fin);
    for (std::size_t k = 1; k + 1 < P.size(); ++k)
      EXPECT_TRUE(same_image(sym, fin, series_level(sym, SeriesId::L, static_cast<int>(k)).gens, P[k], k <= static_cast<std::size_t>(kf))) << kf << " " << k;
    for (std::size_t k = 1; k + 1 < J.size(); ++k)
      EXPECT_TRUE(same_image(sym, fin, series_level(sym, SeriesId::D, static_cast<int>(k)).gens, J[k])) << kf << " " << k;
  }
}

TEST(FiltSer, OracleFrattini) {
  for (int kf = 2; kf <= 4; ++kf) {
    FinCtx fin(2, kf);
    GCtx sym(2, 2 * fin.q());
    auto F = frattini(fin);
    for (int k = 1; k < kf && k < static_cast<int>(F.size()); ++k)
      EXPECT_TRUE(same_image(sym, fin, series_level(sym, SeriesId::F, k).gens, F[k])) << kf << " " << k;
  }
}

TEST(FiltSer, OracleIteratedPowerSandwich) {
  for (int kf = 1; kf <= 2; ++kf) {
    FinCtx fin(3, kf);
    GCtx sym(3, 2 * fin.q());
    Embedding emb(sym, fin);
    auto I = iterated_power(fin);
    for (int k = 1; k <= std::min(kf, 2) && k < static_cast<int>(I.size()); ++k) {
      auto lower = series_level(sym, SeriesId::I, k);
      EXPECT_TRUE(same_image(sym, fin, lower.gens, I[k], false)) << kf << " " << k;
      auto upper = concat(concat(lower.gens, named_subgroup(sym, Named::LT, k)), named_subgroup(sym, Named::PsiT, k));
      EchelonSpan img(fin.field(), fin.zb().size());
      for (auto& g : upper) img.insert(emb(sym.from_z(g)).z);
      // c_j with j > q lies in the level and maps into Z_k.
      for (int j = fin.q() + 1; j <= sym.window(); ++j) {
        FinElement cj = emb(sym.c(j));
        ASSERT_TRUE(cj.in_z());
        img.insert(cj.z);
      }
      for (auto& r : I[k].zspan().reduced()) EXPECT_TRUE(img.contains(r)) << kf << " " << k;
    }
  }
}
