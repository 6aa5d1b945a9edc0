#include <gtest/gtest.h>

#include "hspec/appverify.hpp"
#include "hspec/filtser.hpp"

using namespace hspec;

TEST(Grid, ThreeTwo) {
  auto r = check_partition(3, 2);
  EXPECT_EQ(r.total, 27u);
  EXPECT_EQ(r.covered, 27u);
  EXPECT_TRUE(r.ok());
  for (auto& c : grid_decompose(3, 2))
    if (c.kind == GridCell::Corner && c.i == 1 && c.j == 2) EXPECT_TRUE(c.members.empty());
}

TEST(Grid, Partitions) {
  for (auto [p, k] : {std::pair{3, 3}, {5, 2}, {5, 3}, {7, 2}}) EXPECT_TRUE(check_partition(p, k).ok()) << p << " " << k;
  EXPECT_THROW(grid_decompose(2, 2), std::invalid_argument);
}

TEST(ThetaPush, Identity) {
  for (auto [p, k] : {std::pair{3, 2}, {3, 3}, {5, 2}}) {
    auto r = verify_theta_push(p, k);
    EXPECT_TRUE(r.equal) << p << " " << k;
    EXPECT_TRUE(r.reduced_set_equal) << p << " " << k;
    EXPECT_TRUE(r.ladder_monotone) << p << " " << k;
    EXPECT_EQ(r.ladder_dims.size(), static_cast<std::size_t>(p - 1));
    EXPECT_EQ(r.lambda_rank + r.rank_deficit, r.lambda_printed);
  }
}

TEST(ThetaPush, MatchesFiltrationBuilder) {
  auto r = verify_theta_push(3, 2);
  GCtx ctx(3, r.window);
  EchelonSpan s(ctx.field(), ctx.zb().size());
  for (auto& v : named_subgroup(ctx, Named::ThetaT, 2)) s.insert(v);
  EXPECT_EQ(s.dim(), r.theta_dim);
  for (auto& v : named_subgroup(ctx, Named::LambdaT, 2)) s.insert(v);
  EXPECT_EQ(s.dim(), r.lambda_dim);
}

TEST(Binomial, Expansion) {
  EXPECT_TRUE(verify_binomial_expansion(3, 2, 4, 1).match);
  EXPECT_TRUE(verify_binomial_expansion(3, 2, 3, 2).match);
  for (auto [p, k] : {std::pair{3, 2}, {3, 3}, {5, 2}}) {
    int q1 = static_cast<int>(int_pow(p, k - 1));
    for (int m = q1; m < q1 * p; ++m)
      for (int n = 1; n < m; ++n) EXPECT_TRUE(verify_binomial_expansion(p, k, m, n).match) << p << k << " " << m << "," << n;
  }
  auto r = verify_binomial_expansion(3, 2, 4, 1);
  EXPECT_FALSE(r.exact.empty());
}

TEST(Binomial, SignRule) {
  for (int p : {3, 5, 7, 11, 13}) EXPECT_TRUE(binomial_sign_rule(p)) << p;
  EXPECT_EQ(binomial(6, 3), 20);
}
