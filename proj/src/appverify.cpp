#include "hspec/appverify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hspec/filtser.hpp"

namespace hspec {

namespace {

void require_odd(int p, int k) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("odd prime required");
  if (k < 1) throw std::invalid_argument("k must be positive");
}

SparseVec com(const GCtx& ctx, int m, int n) { return ctx.zword({{BasisIndex::Com, m, n, 1}}); }

SparseVec push(const GCtx& ctx, const SparseVec& z, long long q1) { return ctx.z_bracket(z, q1, ctx.p() - 1); }

EchelonSpan theta_span(const GCtx& ctx, long long q) {
  EchelonSpan s(ctx.field(), ctx.zb().size());
  for (long long m = q; m <= ctx.window(); ++m)
    for (int n = 1; n < m; ++n) s.insert(com(ctx, static_cast<int>(m), n));
  return s;
}

const GridCell* find_cell(const std::vector<GridCell>& cells, GridCell::Kind kind, int i, int j) {
  for (const auto& c : cells)
    if (c.kind == kind && c.i == i && c.j == j) return &c;
  return nullptr;
}

}  // namespace

long long binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  long long b = 1;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

std::string GridCell::name() const {
  switch (kind) {
    case Square: return "Z_{" + std::to_string(i) + "," + std::to_string(j) + "}";
    case Triangle: return "V_" + std::to_string(i);
    case Upper: return "U_{" + std::to_string(i) + ",1}";
    case Corner: return "W_{" + std::to_string(i) + "," + std::to_string(j) + "}";
  }
  return {};
}

std::vector<GridCell> grid_decompose(int p, int k) {
  require_odd(p, k);
  const int q1 = static_cast<int>(int_pow(p, k - 1));
  std::vector<GridCell> cells;
  for (int i = 1; i <= p - 1; ++i)
    for (int j = 1; j <= i; ++j) {
      GridCell c{GridCell::Square, i, j, {}};
      for (int m = i * q1; m < (i + 1) * q1; ++m)
        for (int n = std::max(1, (j - 1) * q1); n < j * q1; ++n) c.members.emplace_back(m, n);
      cells.push_back(std::move(c));
    }
  for (int i = 1; i <= p - 1; ++i) {
    GridCell c{GridCell::Triangle, i, 0, {}};
    for (int m = i * q1; m < (i + 1) * q1; ++m)
      for (int n = i * q1; n < m; ++n) c.members.emplace_back(m, n);
    cells.push_back(std::move(c));
  }
  for (int i = 1; i <= p - 1; ++i) {
    GridCell c{GridCell::Upper, i, 1, {}};
    for (int m = i * q1; m < (i + 1) * q1; ++m)
      for (int n = std::max(1, m - i * q1); n < q1; ++n) c.members.emplace_back(m, n);
    cells.push_back(std::move(c));
  }
  for (int i = 1; i <= p - 1; ++i)
    for (int j = 2; j <= p - 1; ++j) {
      GridCell c{GridCell::Corner, i, j, {}};
      if (i >= j) c.members.emplace_back(i * q1, (j - 1) * q1);
      cells.push_back(std::move(c));
    }
  return cells;
}

PartitionReport check_partition(int p, int k) {
  const int q1 = static_cast<int>(int_pow(p, k - 1)), q = q1 * p;
  auto cells = grid_decompose(p, k);
  PartitionReport r;
  std::set<std::pair<int, int>> all;
  for (int m = q1; m < q; ++m)
    for (int n = 1; n < m; ++n) all.emplace(m, n);
  r.total = all.size();

  std::map<std::pair<int, int>, int> hits;
  r.cardinalities = true;
  const std::size_t sq = static_cast<std::size_t>(q1) * q1;
  for (const auto& c : cells) {
    if (c.kind == GridCell::Square) {
      std::size_t want = c.j > 1 ? sq : sq - q1;
      if (c.members.size() != want) r.cardinalities = false;
    } else if (c.kind == GridCell::Triangle) {
      if (c.members.size() != static_cast<std::size_t>(binomial(q1, 2))) r.cardinalities = false;
    } else {
      continue;
    }
    r.covered += c.members.size();
    for (const auto& mn : c.members) ++hits[mn];
  }
  r.disjoint = std::all_of(hits.begin(), hits.end(), [](const auto& h) { return h.second == 1; });
  r.covering = hits.size() == all.size() &&
               std::all_of(hits.begin(), hits.end(), [&](const auto& h) { return all.count(h.first) == 1; });

  r.subcells = true;
  for (const auto& c : cells) {
    if (c.kind != GridCell::Upper && c.kind != GridCell::Corner) continue;
    const GridCell* parent = find_cell(cells, GridCell::Square, c.i, c.j);
    for (const auto& mn : c.members)
      if (!parent || std::find(parent->members.begin(), parent->members.end(), mn) == parent->members.end())
        r.subcells = false;
  }
  return r;
}

ThetaPushReport verify_theta_push(int p, int k) {
  require_odd(p, k);
  if (k < 2) throw std::invalid_argument("theta push needs k >= 2");
  const long long q1 = int_pow(p, k - 1), q = q1 * p;
  if (q > window_budget()) throw BudgetExceeded("window " + std::to_string(q) + " exceeds budget");
  GCtx ctx(p, static_cast<int>(q));
  ThetaPushReport r;
  r.p = p;
  r.k = k;
  r.window = ctx.window();

  EchelonSpan theta = theta_span(ctx, q);
  r.theta_dim = theta.dim();

  EchelonSpan pushed = theta;
  for (long long m = q1; m < q; ++m)
    for (int n = 1; n < m; ++n) pushed.insert(push(ctx, com(ctx, static_cast<int>(m), n), q1));
  r.pushed_dim = pushed.dim();

  EchelonSpan lambda = theta;
  for (long long m = q1; m < q; ++m)
    for (long long n = std::max<long long>(1, m - (m / q1) * q1); n < q1; ++n) {
      ++r.lambda_printed;
      lambda.insert(push(ctx, com(ctx, static_cast<int>(m), static_cast<int>(n)), q1));
    }
  for (long long a = 2; a <= p - 2; ++a) {
    ++r.lambda_printed;
    lambda.insert(push(ctx, com(ctx, static_cast<int>(a * q1), static_cast<int>(q1)), q1));
  }
  r.lambda_dim = lambda.dim();
  r.lambda_rank = r.lambda_dim - r.theta_dim;
  r.rank_deficit = r.lambda_printed - r.lambda_rank;

  auto contains_all = [](const EchelonSpan& big, const EchelonSpan& small) {
    for (std::size_t i = 0; i < small.dim(); ++i)
      if (!big.contains(small.row(i))) return false;
    return true;
  };
  r.equal = r.pushed_dim == r.lambda_dim && contains_all(pushed, lambda);

  auto cells = grid_decompose(p, k);
  auto push_cell = [&](EchelonSpan& s, GridCell::Kind kind, int i, int j) {
    if (const GridCell* c = find_cell(cells, kind, i, j))
      for (const auto& [m, n] : c->members) s.insert(push(ctx, com(ctx, m, n), q1));
  };
  EchelonSpan reduced = theta;
  for (int i = 1; i <= p - 1; ++i) push_cell(reduced, GridCell::Upper, i, 1);
  for (int i = 2; i <= p - 2; ++i) push_cell(reduced, GridCell::Corner, i, 2);
  r.reduced_set_equal = reduced.dim() == r.pushed_dim && contains_all(pushed, reduced);

  EchelonSpan ladder = theta;
  r.ladder_dims.push_back(ladder.dim());
  r.ladder_monotone = true;
  for (int tau = 1; tau <= p - 2; ++tau) {
    EchelonSpan prev = ladder;
    push_cell(ladder, GridCell::Upper, p - tau, 1);
    if (p - tau - 1 >= 2) push_cell(ladder, GridCell::Corner, p - tau - 1, 2);
    if (!contains_all(ladder, prev)) r.ladder_monotone = false;
    if (!contains_all(pushed, ladder)) r.ladder_monotone = false;
    r.ladder_dims.push_back(ladder.dim());
  }
  return r;
}

BinomialReport verify_binomial_expansion(int p, int k, int m, int n) {
  require_odd(p, k);
  const long long q1 = int_pow(p, k - 1), q = q1 * p;
  if (m < q1 || n < 1 || n >= m) throw std::invalid_argument("need m >= p^{k-1} and 1 <= n < m");
  GCtx ctx(p, static_cast<int>(std::max<long long>(q, m)));
  EchelonSpan theta = theta_span(ctx, q);
  std::vector<ZTerm> word;
  for (int s = 1; s <= p - 1; ++s)
    for (int t = 1; t <= s; ++t)
      word.push_back({BasisIndex::Com, static_cast<int>(m + (p - 1 - t) * q1), static_cast<int>(n + (p - 1 - s + t) * q1),
                      binomial(p - 1, s) * binomial(s, t)});
  BinomialReport r{p, k, m, n, theta.residue(push(ctx, com(ctx, m, n), q1)), theta.residue(ctx.zword(word)), false};
  r.match = theta.residue(vec_axpy(ctx.field(), r.exact, ctx.field().neg(1), r.displayed)).empty();
  return r;
}

bool binomial_sign_rule(int p) {
  for (int s = 0; s <= p - 1; ++s) {
    long long b = binomial(p - 1, s) % p;
    long long want = s % 2 ? p - 1 : 1;
    if (b != want) return false;
  }
  return true;
}

}  // namespace hspec
