#pragma once

// Random elements of the window quotient.

#include <random>

#include "hspec/gsymb.hpp"

namespace hspec::sampling {

inline SparseVec random_h(const GCtx& ctx, std::mt19937_64& rng, int max_index, double density = 0.3) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<std::pair<Ordinal, long long>> t;
  for (int i = 1; i <= std::min(max_index, ctx.window()); ++i)
    if (u(rng) < density) t.emplace_back(i - 1, 1 + static_cast<long long>(rng() % (ctx.p() - 1)));
  return SparseVec::from_terms(ctx.field(), t);
}

inline SparseVec random_z(const GCtx& ctx, std::mt19937_64& rng, int nterms) {
  std::vector<std::pair<Ordinal, long long>> t;
  for (int s = 0; s < nterms; ++s)
    t.emplace_back(static_cast<Ordinal>(rng() % ctx.zb().size()), 1 + static_cast<long long>(rng() % ctx.p()));
  return SparseVec::from_terms(ctx.field(), t);
}

inline GElement random_element(const GCtx& ctx, std::mt19937_64& rng, int max_x = 6) {
  GElement g;
  g.xexp = static_cast<long long>(rng() % (2 * max_x + 1)) - max_x;
  g.h = random_h(ctx, rng, ctx.window());
  g.z = random_z(ctx, rng, 4);
  return g;
}

inline GElement random_h_element(const GCtx& ctx, std::mt19937_64& rng) {
  GElement g = random_element(ctx, rng);
  g.xexp = 0;
  return g;
}

}  // namespace hspec::sampling
