#include "hspec/filtser.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace hspec {

long long int_pow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

namespace {

constexpr int kDefaultBudget = 2400;

// [i]_p = (p^i - 1)/(p - 1)
long long bracket_p(int p, int i) { return (int_pow(p, i) - 1) / (p - 1); }

int ceil_log(int p, long long n) {
  int l = 0;
  while (int_pow(p, l) < n) ++l;
  return l;
}

SparseVec com(const GCtx& ctx, int m, int n) { return ctx.zword({{BasisIndex::Com, m, n, 1}}); }
SparseVec sq(const GCtx& ctx, int l) { return ctx.zword({{BasisIndex::CSq, l, 0, 1}}); }

void push_nonzero(std::vector<SparseVec>& out, SparseVec v) {
  if (!v.empty()) out.push_back(std::move(v));
}

// [z, x^{e_1}, x^{e_2}, ...]
SparseVec chain(const GCtx& ctx, SparseVec z, const std::vector<long long>& es) {
  for (long long e : es) {
    if (z.empty()) break;
    z = ctx.z_bracket(z, e, 1);
  }
  return z;
}

// x^{p^a}, x^{p^{a+1}}, ..., x^{p^{b-1}}
std::vector<long long> pow_steps(int p, int a, int b) {
  std::vector<long long> es;
  for (int i = a; i < b; ++i) es.push_back(int_pow(p, i));
  return es;
}

// All z_{m,n} with m > n satisfying pred, windowed.
template <class Pred>
std::vector<SparseVec> coms_where(const GCtx& ctx, Pred pred) {
  std::vector<SparseVec> out;
  const int w = ctx.window();
  for (int m = 2; m <= w; ++m)
    for (int n = 1; n < m; ++n)
      if (pred(m, n)) out.push_back(com(ctx, m, n));
  return out;
}

void require_parity(const GCtx& ctx, bool odd) {
  if ((ctx.p() != 2) != odd) throw std::invalid_argument(odd ? "subgroup defined for odd p only" : "subgroup defined for p = 2 only");
}

std::vector<SparseVec> q_k(const GCtx& ctx, int k) {
  require_parity(ctx, false);
  std::vector<SparseVec> out;
  for (long long l = std::max(1LL, int_pow(2, k - 1)); l <= ctx.window(); ++l) out.push_back(sq(ctx, static_cast<int>(l)));
  return out;
}

std::vector<SparseVec> l_k(const GCtx& ctx, int k) {
  const int w = ctx.window();
  const long long q = int_pow(ctx.p(), k);
  std::vector<SparseVec> gens = coms_where(ctx, [&](int m, int) { return m >= q; });
  for (int i = 1; i <= w; ++i)
    for (int j = 1; j <= w; ++j) push_nonzero(gens, w_ijk(ctx, i, j, k, false));
  if (ctx.p() != 2) push_nonzero(gens, d_k(ctx, ctx.y(), k));
  return z_normal_closure(ctx, gens);
}

std::vector<SparseVec> theta_k(const GCtx& ctx, int k) {
  if (ctx.p() == 2) {
    const long long a = int_pow(2, k - 1), b = int_pow(2, k);
    return coms_where(ctx, [&](int m, int n) { return (m >= a && n >= a) || m >= b; });
  }
  const long long a = 1 + bracket_p(ctx.p(), k - 1), b = 1 + bracket_p(ctx.p(), k);
  return coms_where(ctx, [&](int m, int n) { return (m >= a && n >= a) || m >= b; });
}

std::vector<SparseVec> lambda_k(const GCtx& ctx, int k) {
  std::vector<SparseVec> out;
  const int w = ctx.window();
  const int p = ctx.p();
  for (int l = 2; l <= k - 1; ++l) {
    auto es = pow_steps(p, l, k);
    int lo = p == 2 ? static_cast<int>(int_pow(2, l - 1)) : static_cast<int>(1 + bracket_p(p, l));
    int hi = p == 2 ? static_cast<int>(std::min<long long>(int_pow(2, l), w + 1)) : w + 1;
    for (int m = lo + 1; m < hi; ++m)
      for (int n = lo; n < m; ++n) push_nonzero(out, chain(ctx, com(ctx, m, n), es));
  }
  return out;
}

std::vector<SparseVec> psi_k(const GCtx& ctx, int k) {
  require_parity(ctx, false);
  std::vector<SparseVec> out;
  for (int l = 2; l <= k; ++l) {
    auto es = pow_steps(2, l, k);
    const long long h = int_pow(2, l - 1);
    for (long long j = h / 2; j <= h - 1 && j + h <= ctx.window(); ++j)
      push_nonzero(out, chain(ctx, com(ctx, static_cast<int>(j + h), static_cast<int>(j)), es));
  }
  return out;
}

std::vector<SparseVec> theta_tilde(const GCtx& ctx, int k) {
  const long long q = int_pow(ctx.p(), k);
  return coms_where(ctx, [&](int m, int) { return m >= q; });
}

std::vector<long long> tilde_steps(int p, int k) { return std::vector<long long>(p - 1, int_pow(p, k - 1)); }

std::vector<SparseVec> lambda_tilde(const GCtx& ctx, int k) {
  const int p = ctx.p();
  const long long q1 = int_pow(p, k - 1), q = q1 * p;
  auto es = tilde_steps(p, k);
  std::vector<SparseVec> out;
  for (long long m = q1; m < q && m <= ctx.window(); ++m) {
    for (long long n = m - (m / q1) * q1; n < q1; ++n)
      if (n >= 1) push_nonzero(out, chain(ctx, com(ctx, static_cast<int>(m), static_cast<int>(n)), es));
  }
  for (long long a = 2; a <= p - 2; ++a)
    if (a * q1 <= ctx.window())
      push_nonzero(out, chain(ctx, com(ctx, static_cast<int>(a * q1), static_cast<int>(q1)), es));
  return out;
}

std::vector<SparseVec> l_tilde(const GCtx& ctx, int k) {
  const int w = ctx.window();
  const long long q1 = int_pow(ctx.p(), k - 1);
  std::vector<SparseVec> gens;
  for (long long i = q1; i <= w; ++i)
    for (long long j = q1; j <= w; ++j)
      push_nonzero(gens, tilde_w(ctx, static_cast<int>(i), static_cast<int>(j), k, false));
  if (q1 <= w) push_nonzero(gens, tilde_d(ctx, ctx.c(static_cast<int>(q1)), k));
  return z_normal_closure(ctx, gens);
}

// Omega~_k (base = Lambda~) and Psi~_k (base = L~) share one recursion.
std::vector<SparseVec> pushed_family(const GCtx& ctx, int k, bool omega) {
  auto base = [&](int j) { return omega ? lambda_tilde(ctx, j) : l_tilde(ctx, j); };
  std::vector<SparseVec> cur = base(1);
  for (int j = 2; j <= k; ++j) {
    std::vector<SparseVec> src = cur;
    for (auto& v : base(j - 1)) src.push_back(std::move(v));
    if (j == 2) src.resize(cur.size());  // Omega~_1 = Lambda~_1 already covers the union
    auto es = tilde_steps(ctx.p(), j);
    std::vector<SparseVec> next;
    EchelonSpan seen(ctx.field(), ctx.zb().size());
    for (const auto& z : src) {
      auto r = chain(ctx, z, es);
      if (!seen.insert(r).empty()) next.push_back(std::move(r));
    }
    cur = std::move(next);
  }
  return cur;
}

std::vector<SparseVec> m_cap_z(const GCtx& ctx, int k) {
  const long long q = int_pow(ctx.p(), k);
  auto out = coms_where(ctx, [&](int m, int) { return m > q; });
  if (ctx.p() == 2)
    for (long long l = q + 1; l <= ctx.window(); ++l) out.push_back(sq(ctx, static_cast<int>(l)));
  return out;
}

std::vector<SparseVec> p_finite_form(const GCtx& ctx, int k) {
  const long long q = int_pow(2, k), h = q / 2;
  const int w = ctx.window();
  std::vector<SparseVec> out = m_cap_z(ctx, k);
  for (long long i = 1; i <= h && i <= w; ++i) push_nonzero(out, w_ijk(ctx, static_cast<int>(i), static_cast<int>(i), k, false));
  for (long long j = 1; j <= h - 1 && j + 1 <= w; ++j)
    push_nonzero(out, ctx.z_bracket(com(ctx, static_cast<int>(j + 1), static_cast<int>(j)), 1, q - 1));
  for (long long n = 1; n <= q - 1 && q <= w; ++n) push_nonzero(out, com(ctx, static_cast<int>(q), static_cast<int>(n)));
  for (long long l = h; l <= q && l <= w; ++l) push_nonzero(out, sq(ctx, static_cast<int>(l)));
  return out;
}

int level_of(const BasisIndex& b) { return b.kind == BasisIndex::CSq ? b.m : b.m + b.n; }

int h_threshold(SeriesId s, int p, int k) {
  switch (s) {
    case SeriesId::L:
    case SeriesId::D:
      return k + 1;
    case SeriesId::M:
      return static_cast<int>(int_pow(p, k) + 1);
    case SeriesId::P:
      return static_cast<int>(p == 2 ? int_pow(2, k) : int_pow(p, k) + 1);
    case SeriesId::F:
      return static_cast<int>(p == 2 ? int_pow(2, k) : 1 + bracket_p(p, k));
    case SeriesId::I:
      return static_cast<int>(p == 2 ? int_pow(2, k) : int_pow(p, k));
  }
  return 0;
}

}  // namespace

const char* series_name(SeriesId s) {
  switch (s) {
    case SeriesId::L: return "L";
    case SeriesId::D: return "D";
    case SeriesId::M: return "M";
    case SeriesId::P: return "P";
    case SeriesId::I: return "I";
    case SeriesId::F: return "F";
  }
  return "?";
}

std::optional<SeriesId> parse_series(std::string_view s) {
  for (SeriesId id : kAllSeries)
    if (s == series_name(id)) return id;
  return std::nullopt;
}

std::optional<Named> parse_named(std::string_view s) {
  static const std::pair<const char*, Named> names[] = {
      {"Q", Named::Q},           {"L", Named::L},           {"Theta", Named::Theta},   {"Lambda", Named::Lambda},
      {"Psi", Named::Psi},       {"ThetaT", Named::ThetaT}, {"LambdaT", Named::LambdaT}, {"OmegaT", Named::OmegaT},
      {"PsiT", Named::PsiT},     {"LT", Named::LT},         {"Zr", Named::Zr}};
  for (auto& [n, v] : names)
    if (s == n) return v;
  return std::nullopt;
}

int window_budget() {
  if (const char* env = std::getenv("HSPEC_WINDOW_BUDGET")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return kDefaultBudget;
}

int min_window(SeriesId s, int p, int k) {
  if (p == 2 && s == SeriesId::I) s = SeriesId::F;
  switch (s) {
    case SeriesId::L:
    case SeriesId::D:
      return std::max(1, k - 1);
    case SeriesId::M:
      return static_cast<int>(int_pow(p, k));
    case SeriesId::P:
      return static_cast<int>(int_pow(p, k));
    case SeriesId::F:
      return static_cast<int>(p == 2 ? int_pow(2, k) - 1 : bracket_p(p, k));
    case SeriesId::I:
      return static_cast<int>(int_pow(p, k) - 1);
  }
  return 1;
}

int default_window(SeriesId s, int p, int k) {
  if (p == 2 && s == SeriesId::I) s = SeriesId::F;
  long long w = 0;
  switch (s) {
    case SeriesId::L:
    case SeriesId::D:
      w = 2LL * k + 8;
      break;
    case SeriesId::M:
    case SeriesId::P:
      w = p == 2 ? int_pow(2, k + 1) + 2 : int_pow(p, k) + 2;
      break;
    case SeriesId::F:
      w = p == 2 ? int_pow(2, k) + int_pow(2, k - 1) + 2 : bracket_p(p, k) + 2;
      break;
    case SeriesId::I:
      w = 2 * int_pow(p, k - 1) * (p - 1) + int_pow(p, k);
      break;
  }
  return static_cast<int>(std::max<long long>(w, min_window(s, p, k)));
}

std::vector<SparseVec> gamma_cap_Z(const GCtx& ctx, int i) {
  if (i < 2) throw std::invalid_argument("gamma_cap_Z needs i >= 2");
  std::vector<SparseVec> out;
  for (Ordinal o = 0; o < ctx.zb().size(); ++o) {
    const auto& b = ctx.zb().index(o);
    if (b.kind == BasisIndex::CSq ? b.m >= i : b.m + b.n >= i) out.push_back(SparseVec::unit(ctx.field(), o));
  }
  return out;
}

std::vector<SparseVec> z_normal_closure(const GCtx& ctx, const std::vector<SparseVec>& gens) {
  EchelonSpan span(ctx.field(), ctx.zb().size());
  std::vector<SparseVec> basis;
  std::vector<SparseVec> queue(gens.rbegin(), gens.rend());
  while (!queue.empty()) {
    SparseVec v = std::move(queue.back());
    queue.pop_back();
    SparseVec r = span.insert(v);
    if (r.empty()) continue;
    queue.push_back(ctx.z_bracket(r, 1, 1));
    basis.push_back(std::move(r));
  }
  return basis;
}

std::vector<SparseVec> named_subgroup(const GCtx& ctx, Named name, int k) {
  if (k < 1) throw std::invalid_argument("level must be positive");
  switch (name) {
    case Named::Q: return q_k(ctx, k);
    case Named::L: return l_k(ctx, k);
    case Named::Theta: return theta_k(ctx, k);
    case Named::Lambda: return lambda_k(ctx, k);
    case Named::Psi: return psi_k(ctx, k);
    case Named::ThetaT: require_parity(ctx, true); return theta_tilde(ctx, k);
    case Named::LambdaT: require_parity(ctx, true); return lambda_tilde(ctx, k);
    case Named::OmegaT: require_parity(ctx, true); return pushed_family(ctx, k, true);
    case Named::PsiT: require_parity(ctx, true); return pushed_family(ctx, k, false);
    case Named::LT: require_parity(ctx, true); return l_tilde(ctx, k);
    case Named::Zr: return coms_where(ctx, [&](int, int n) { return n >= k; });
  }
  throw std::invalid_argument("unknown subgroup");
}

SeriesLevel series_level(const GCtx& ctx, SeriesId s, int k) {
  const int p = ctx.p();
  if (k < 1) throw std::invalid_argument("level must be positive");
  if (ctx.window() > window_budget()) throw BudgetExceeded("window " + std::to_string(ctx.window()) + " exceeds budget");
  if (ctx.window() < min_window(s, p, k))
    throw std::invalid_argument("window too small for " + std::string(series_name(s)) + " level " + std::to_string(k));
  SeriesId eff = (p == 2 && s == SeriesId::I) ? SeriesId::F : s;
  std::vector<SparseVec> gens;
  switch (eff) {
    case SeriesId::L:
      gens = gamma_cap_Z(ctx, k + 1);
      if (p == 2 && k <= ctx.window()) gens.push_back(sq(ctx, k));
      break;
    case SeriesId::D:
      gens = gamma_cap_Z(ctx, k + 1);
      if (p == 2)
        for (int l = (k + 2) / 2; l <= std::min(k, ctx.window()); ++l) gens.push_back(sq(ctx, l));
      break;
    case SeriesId::M:
      gens = m_cap_z(ctx, k);
      break;
    case SeriesId::P:
      gens = p == 2 ? p_finite_form(ctx, k) : m_cap_z(ctx, k);
      break;
    case SeriesId::F:
      if (p == 2) {
        gens = q_k(ctx, k);
        for (auto* part : {&psi_k, &lambda_k, &theta_k})
          for (auto& v : (*part)(ctx, k)) gens.push_back(std::move(v));
      } else {
        gens = lambda_k(ctx, k);
        for (auto& v : theta_k(ctx, k)) gens.push_back(std::move(v));
      }
      break;
    case SeriesId::I:
      gens = theta_tilde(ctx, k);
      for (auto& v : lambda_tilde(ctx, k)) gens.push_back(std::move(v));
      for (auto& v : pushed_family(ctx, k, true)) gens.push_back(std::move(v));
      break;
  }
  SeriesLevel lv{s, k, p, ctx.window(), std::move(gens), EchelonSpan(ctx.field(), ctx.zb().size())};
  for (const auto& g : lv.gens) lv.span.insert(g);

  // Z-threshold: one more than the largest level of a basis element outside S_k.
  int zthr = 2;
  std::vector<Ordinal> order(ctx.zb().size());
  for (Ordinal o = 0; o < order.size(); ++o) order[o] = o;
  std::sort(order.begin(), order.end(), [&](Ordinal a, Ordinal b) {
    return level_of(ctx.zb().index(a)) > level_of(ctx.zb().index(b));
  });
  for (Ordinal o : order)
    if (!lv.span.contains(SparseVec::unit(ctx.field(), o))) {
      zthr = level_of(ctx.zb().index(o)) + 1;
      break;
    }
  lv.n_k = std::max(zthr, h_threshold(eff, p, k));
  lv.alpha_k = eff == SeriesId::D ? ceil_log(p, k + 1) : k;
  if (p == 2) {
    lv.m_k = ctx.window() + 1;
    for (int j = 1; j <= ctx.window(); ++j)
      if (lv.span.contains(sq(ctx, j))) {
        lv.m_k = j;
        break;
      }
  }
  return lv;
}

}  // namespace hspec
