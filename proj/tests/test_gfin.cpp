#include <gtest/gtest.h>

#include <set>

#include "hspec/gfin.hpp"
#include "support.hpp"

using namespace hspec;

namespace {

// Breadth-first enumeration of the group generated by x and y.
std::size_t enumerate_order(const FinCtx& c) {
  auto key = [](const FinElement& g) {
    std::vector<int> k{static_cast<int>(g.e), -1};
    for (auto& e : g.b.entries()) k.insert(k.end(), {static_cast<int>(e.index), e.coef});
    k.push_back(-2);
    for (auto& e : g.z.entries()) k.insert(k.end(), {static_cast<int>(e.index), e.coef});
    return k;
  };
  std::set<std::vector<int>> seen{key(c.identity())};
  std::vector<FinElement> frontier{c.identity()};
  while (!frontier.empty()) {
    std::vector<FinElement> next;
    for (auto& g : frontier)
      for (auto& s : {c.x(), c.y()}) {
        auto h = c.mul(g, s);
        if (seen.insert(key(h)).second) next.push_back(h);
      }
    frontier = std::move(next);
  }
  return seen.size();
}

int ceil_log2(int n) {
  int l = 0;
  while ((1 << l) < n) ++l;
  return l;
}

}  // namespace

TEST(GFin, OrderByEnumeration) {
  EXPECT_EQ(enumerate_order(FinCtx(2, 1)), 64u);
  EXPECT_EQ(enumerate_order(FinCtx(3, 1)), 2187u);  // 3^(1 + 3 + 3)
}

TEST(GFin, OrderByRank) {
  EXPECT_EQ(whole_group(FinCtx(2, 1)).log_order(), 6);
  EXPECT_EQ(whole_group(FinCtx(2, 2)).log_order(), 16);
  EXPECT_EQ(whole_group(FinCtx(2, 3)).log_order(), 47);
  EXPECT_EQ(whole_group(FinCtx(3, 1)).log_order(), 7);
  EXPECT_EQ(whole_group(FinCtx(3, 2)).log_order(), 2 + 9 + 36);
  EXPECT_EQ(FinCtx(3, 2).log_order(), 47);
}

TEST(GFin, Guard) {
  EXPECT_THROW(FinCtx(2, 7), GuardExceeded);
  EXPECT_THROW(FinCtx(3, 5), GuardExceeded);
  EXPECT_NO_THROW(FinCtx(5, 2));
}

TEST(GFin, SmallSubgroups) {
  for (auto [p, k] : {std::pair{2, 2}, {2, 3}, {3, 1}, {3, 2}}) {
    FinCtx c(p, k);
    EXPECT_TRUE(c.pow(c.x(), c.q()).is_identity());
    EXPECT_EQ(close_subgroup(c, {c.x()}).log_order(), k);
    EXPECT_EQ(close_subgroup(c, {c.y()}).log_order(), p == 2 ? 2 : 1);
    EXPECT_EQ(close_subgroup(c, {c.x(), c.y()}).log_order(), c.log_order());
  }
}

TEST(GFin, ZCentralInH) {
  std::mt19937_64 rng(31);
  for (auto [p, k] : {std::pair{2, 2}, {3, 1}}) {
    FinCtx c(p, k);
    auto g = whole_group(c);
    for (int t = 0; t < 200; ++t) {
      FinElement h = c.identity();
      for (int j = 0; j < c.q(); ++j) h = c.mul(h, c.pow(c.b(j), rng() % 4));
      FinElement z = c.comm(c.b(rng() % c.q()), c.b(rng() % c.q()));
      EXPECT_TRUE(c.comm(h, z).is_identity());
      EXPECT_TRUE(c.pow(z, p).is_identity());
      EXPECT_TRUE(c.pow(h, p == 2 ? 4 : p).is_identity());
    }
  }
}

TEST(GFin, EmbeddingBasics) {
  GCtx sym(2, 8);
  FinCtx fin(2, 2);
  Embedding emb(sym, fin);
  EXPECT_EQ(emb(sym.y()), fin.b(0));
  FinElement c2 = emb(sym.c(2));
  EXPECT_EQ(c2.b, SparseVec::from_terms(fin.field(), {{0, 1}, {1, 1}}));
  GCtx sym3(3, 6);
  FinCtx fin3(3, 1);
  Embedding emb3(sym3, fin3);
  EXPECT_EQ(emb3(sym3.c(2)).b, SparseVec::from_terms(fin3.field(), {{0, -1}, {1, 1}}));
}

TEST(GFin, EmbeddingIsHomomorphism) {
  std::mt19937_64 rng(32);
  for (auto [p, k] : {std::pair{2, 2}, {2, 3}, {3, 1}, {3, 2}}) {
    FinCtx fin(p, k);
    GCtx sym(p, 2 * fin.q());
    Embedding emb(sym, fin);
    for (int t = 0; t < 200; ++t) {
      auto a = hspec::testing::random_element(sym, rng, 20);
      auto b = hspec::testing::random_element(sym, rng, 20);
      ASSERT_EQ(emb(sym.mul(a, b)), fin.mul(emb(a), emb(b)));
    }
  }
}

TEST(GFin, SeriesLengths) {
  FinCtx c1(2, 1), c2(2, 2);
  EXPECT_EQ(lower_central(c1).size() - 1, 3u);
  EXPECT_EQ(lower_central(c2).size() - 1, 7u);
  EXPECT_EQ(lower_p(c2).size() - 1, 7u);
  EXPECT_EQ(jennings(c2).size() - 1, 8u);
}

// P_i = <x^{2^i}, c_i^2> gamma_{i+1} and D_i = <x^{2^{l(i+1)}}> gamma_{ceil((i+1)/2)}^2 gamma_{i+1}
TEST(GFin, ClosedFormsMatchIterative) {
  std::mt19937_64 rng(33);
  for (int k = 1; k <= 3; ++k) {
    FinCtx fin(2, k);
    GCtx sym(2, 2 * fin.q());
    Embedding emb(sym, fin);
    auto gam = lower_central(fin);
    auto P = lower_p(fin);
    auto J = jennings(fin);
    auto gamma = [&](std::size_t i) { return i - 1 < gam.size() ? gam[i - 1] : InducedSequence(fin); };
    for (std::size_t i = 1; i < P.size() + 2; ++i) {
      auto closed = gamma(i + 1);
      closed.add({fin.x(1LL << std::min<std::size_t>(i, 40)), emb(sym.csq(static_cast<int>(i)))});
      closed.normalize_under({fin.x(), fin.y()});
      auto iter = i < P.size() ? P[i] : InducedSequence(fin);
      EXPECT_EQ(closed, iter) << "P k=" << k << " i=" << i;
    }
    for (std::size_t i = 1; i < J.size() + 2; ++i) {
      auto closed = product(power_subgroup(gamma((i + 2) / 2), rng), gamma(i + 1));
      closed.add({fin.x(1LL << ceil_log2(static_cast<int>(i + 1)))});
      closed.normalize_under({fin.x(), fin.y()});
      auto iter = i < J.size() ? J[i] : InducedSequence(fin);
      EXPECT_EQ(closed, iter) << "D k=" << k << " i=" << i;
    }
  }
}
