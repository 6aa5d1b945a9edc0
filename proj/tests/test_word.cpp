#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "hspec/word.hpp"

using namespace hspec;

namespace {

GElement eval(const GCtx& ctx, const char* s) { return evaluate(ctx, parse_word(s)); }

std::size_t error_offset(const char* s) {
  try {
    parse_word_list(s);
  } catch (const ParseError& e) {
    return e.offset();
  }
  return std::string::npos;
}

}  // namespace

TEST(Word, Examples) {
  GCtx ctx(2, 12);
  EXPECT_EQ(eval(ctx, "[y,x,x]"), ctx.c(3));
  GElement g = eval(ctx, "x^2*y");
  EXPECT_EQ(g.xexp, 2);
  EXPECT_EQ(g.h, ctx.c(1).h);
  EXPECT_TRUE(g.z.empty());
  EXPECT_EQ(eval(ctx, "[c2,c1]"), ctx.zgen(2, 1));
  EXPECT_EQ(eval(ctx, "z(2,1)"), ctx.zgen(2, 1));
  EXPECT_EQ(eval(ctx, "z(1,2)"), ctx.zgen(2, 1));
  EXPECT_TRUE(eval(ctx, "1").is_identity());
  EXPECT_TRUE(eval(ctx, "x^4 * x^-4").is_identity());
}

TEST(Word, LeftNormed) {
  GCtx ctx(3, 10);
  EXPECT_EQ(eval(ctx, "[c3, x, y]"), eval(ctx, "[[c3, x], y]"));
  EXPECT_EQ(eval(ctx, "[y,x]"), ctx.c(2));
  EXPECT_EQ(eval(ctx, "(x*y)^3"), ctx.power(ctx.mul(ctx.x(), ctx.y()), 3));
}

TEST(Word, Whitespace) {
  EXPECT_EQ(parse_word(" [ y , x ] ^ -2 * c 4 "), parse_word("[y,x]^-2*c4"));
}

TEST(Word, Errors) {
  EXPECT_EQ(error_offset("x*"), 2u);
  EXPECT_EQ(error_offset("x^"), 2u);
  EXPECT_EQ(error_offset("x*q"), 2u);
  EXPECT_EQ(error_offset("[y]"), 2u);
  EXPECT_EQ(error_offset("[y,x"), 4u);
  EXPECT_EQ(error_offset("c0"), 1u);
  EXPECT_EQ(error_offset("y; z(3,3)"), 3u);
  EXPECT_EQ(error_offset("x;;y"), 2u);
  EXPECT_EQ(error_offset(""), 0u);
  EXPECT_EQ(error_offset("x)"), 1u);
  EXPECT_EQ(error_offset("x; y"), std::string::npos);
}

TEST(Word, List) {
  auto ws = parse_word_list("x^2; y ;c3");
  ASSERT_EQ(ws.size(), 3u);
  EXPECT_EQ(ws[2], parse_word("c3"));
  EXPECT_EQ(ws[2].children[0].offset, 8u);
}

TEST(Word, RoundTrip) {
  for (const char* s : {"x", "[y,x,x]", "x^2*y", "(x*y)^-3*[c2,(x*c1)^2,z(4,1)]", "((x))", "[x*y,x^2]^2", "1*x"}) {
    WordNode w = parse_word(s);
    EXPECT_EQ(parse_word(to_string(w)), w) << s << " -> " << to_string(w);
  }
  std::mt19937_64 rng(7);
  const char* atoms[] = {"x", "y", "c3", "z(5,2)", "1"};
  std::function<std::string(int)> gen = [&](int depth) -> std::string {
    int n = 1 + static_cast<int>(rng() % 3);
    std::string s;
    for (int t = 0; t < n; ++t) {
      if (t) s += "*";
      int kind = depth > 0 ? static_cast<int>(rng() % 3) : 0;
      if (kind == 0) s += atoms[rng() % 5];
      else if (kind == 1) s += "(" + gen(depth - 1) + ")";
      else s += "[" + gen(depth - 1) + "," + gen(depth - 1) + "]";
      if (rng() % 2) s += "^" + std::to_string(static_cast<int>(rng() % 7) - 3);
    }
    return s;
  };
  GCtx ctx(2, 10);
  for (int i = 0; i < 200; ++i) {
    std::string s = gen(2);
    WordNode w = parse_word(s);
    EXPECT_EQ(parse_word(to_string(w)), w) << s;
    EXPECT_EQ(evaluate(ctx, parse_word(to_string(w))), evaluate(ctx, w)) << s;
  }
}
