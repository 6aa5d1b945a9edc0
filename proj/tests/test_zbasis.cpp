#include <gtest/gtest.h>

#include "hspec/zbasis.hpp"

using namespace hspec;

TEST(CanonZ, Examples) {
  auto a = canon_z(3, 3, 5);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->index, BasisIndex::com(5, 3));
  EXPECT_EQ(a->sign, -1);
  EXPECT_FALSE(canon_z(3, 4, 4));
  auto b = canon_z(2, 5, 3);
  EXPECT_EQ(b->index, BasisIndex::com(5, 3));
  EXPECT_EQ(b->sign, 1);
  EXPECT_EQ(canon_z(2, 3, 5)->sign, 1);
  EXPECT_THROW(canon_z(2, 0, 1), std::invalid_argument);
}

TEST(Enumerate, Counts) {
  EXPECT_EQ(enumerate_window(2, 3).size(), 6u);
  EXPECT_EQ(enumerate_window(3, 3).size(), 3u);
  auto w2 = enumerate_window(2, 2);
  ASSERT_EQ(w2.size(), 3u);
  EXPECT_EQ(w2[0], BasisIndex::csq(1));
  EXPECT_EQ(w2[1], BasisIndex::com(2, 1));
  EXPECT_EQ(w2[2], BasisIndex::csq(2));
  for (int p : {2, 3})
    for (int w = 2; w < 40; ++w) EXPECT_EQ(enumerate_window(p, w).size(), window_dim(p, w));
}

TEST(Enumerate, WeightMajorOrder) {
  ZBasis zb(2, 30);
  for (Ordinal o = 1; o < zb.size(); ++o) {
    const auto& a = zb.index(o - 1);
    const auto& b = zb.index(o);
    ASSERT_LE(a.weight(), b.weight());
    if (a.weight() == b.weight()) {
      EXPECT_FALSE(b.kind == BasisIndex::CSq);
      if (a.kind == BasisIndex::Com) EXPECT_LT(a.m, b.m);
    }
  }
  for (Ordinal o = 0; o < zb.size(); ++o) EXPECT_EQ(*zb.ordinal(zb.index(o)), o);
  for (int wt = 2; wt <= 60; ++wt) {
    Ordinal s = zb.weight_start(wt);
    if (s < zb.size()) EXPECT_GE(zb.index(s).weight(), wt);
    if (s > 0) EXPECT_LT(zb.index(s - 1).weight(), wt);
  }
}

TEST(ProjectWindow, Examples) {
  ZBasis zb2(2, 8), zb3(3, 8);
  using K = BasisIndex;
  for (const ZBasis* zb : {&zb2, &zb3})
    EXPECT_TRUE(project_window(*zb, {{K::Com, 4, 1, 1}, {K::Com, 1, 4, 1}}).empty());
  EXPECT_TRUE(project_window(zb2, {{K::Com, 9, 1, 1}}).empty());
  EXPECT_TRUE(project_window(zb2, {{K::CSq, 3, 0, 1}, {K::CSq, 3, 0, 1}}).empty());
  auto v = project_window(zb3, {{K::Com, 2, 5, 1}, {K::Com, 5, 2, 2}, {K::Com, 5, 2, 2}});
  EXPECT_TRUE(v.empty());
  auto u = project_window(zb3, {{K::Com, 2, 5, 1}});
  EXPECT_EQ(u.coef(zb3.com(5, 2)), 2);
}

TEST(Rebase, DropsOutOfWindow) {
  ZBasis big(2, 10), small(2, 6);
  FieldP f(2);
  auto v = SparseVec::from_terms(f, {{big.com(9, 2), 1}, {big.com(5, 2), 1}, {big.csq(6), 1}});
  auto r = rebase(v, big, small);
  EXPECT_EQ(r, SparseVec::from_terms(f, {{small.com(5, 2), 1}, {small.csq(6), 1}}));
}
