#include "hspec/suites.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <tuple>
#include <stdexcept>

#include "hspec/appverify.hpp"
#include "hspec/filtser.hpp"
#include "hspec/gfin.hpp"
#include "hspec/gsymb.hpp"
#include "hspec/hdim.hpp"
#include "hspec/sampling.hpp"

namespace hspec {

bool SuiteReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::vector<const CheckResult*> SuiteReport::for_criterion(int c) const {
  std::vector<const CheckResult*> out;
  for (const auto& ch : checks)
    if (ch.criterion == c) out.push_back(&ch);
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

EchelonSpan span_of(const GCtx& ctx, const std::vector<SparseVec>& gens) {
  EchelonSpan s(ctx.field(), ctx.zb().size());
  for (const auto& g : gens) s.insert(g);
  return s;
}

std::vector<SparseVec> concat(std::vector<SparseVec> a, const std::vector<SparseVec>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Counts failures of a predicate over a run of instances.
class Tally {
 public:
  Tally(std::string name, int criterion) : t0_(Clock::now()) { r_.name = std::move(name), r_.criterion = criterion; }
  void check(bool ok, const std::string& what = {}) {
    ++r_.instances;
    if (!ok) {
      ++r_.failures;
      if (first_.empty()) first_ = what;
    }
  }
  CheckResult done(std::string detail = {}) {
    r_.pass = r_.failures == 0 && r_.instances > 0;
    if (!first_.empty()) detail += (detail.empty() ? "" : "; ") + std::string("first failure: ") + first_;
    r_.detail = std::move(detail);
    r_.seconds = std::chrono::duration<double>(Clock::now() - t0_).count();
    return r_;
  }

 private:
  CheckResult r_;
  std::string first_;
  Clock::time_point t0_;
};

CheckResult single(std::string name, int criterion, bool ok, std::string detail) {
  Tally t(std::move(name), criterion);
  t.check(ok, ok ? "" : detail);
  return t.done(ok ? detail : "");
}

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << v;
  return os.str();
}

// Z-layer of the embedded images against an oracle subgroup of G_k.
bool same_image(const GCtx& sym, const FinCtx& fin, const std::vector<SparseVec>& gens, const InducedSequence& oracle,
                bool exact) {
  Embedding emb(sym, fin);
  EchelonSpan img(fin.field(), fin.zb().size());
  for (const auto& g : gens) {
    FinElement e = emb(sym.from_z(g));
    if (!e.in_z() || !oracle.zspan().contains(e.z)) return false;
    img.insert(e.z);
  }
  return !exact || img.dim() == oracle.z_rank();
}

// Breadth-first enumeration of the group generated by x and y.
std::vector<FinElement> enumerate_elements(const FinCtx& c) {
  auto key = [](const FinElement& g) {
    std::vector<int> k{static_cast<int>(g.e), -1};
    for (const auto& e : g.b.entries()) k.insert(k.end(), {static_cast<int>(e.index), e.coef});
    k.push_back(-2);
    for (const auto& e : g.z.entries()) k.insert(k.end(), {static_cast<int>(e.index), e.coef});
    return k;
  };
  std::set<std::vector<int>> seen{key(c.identity())};
  std::vector<FinElement> all{c.identity()}, frontier{c.identity()};
  while (!frontier.empty()) {
    std::vector<FinElement> next;
    for (const auto& g : frontier)
      for (const auto& s : {c.x(), c.y()}) {
        auto h = c.mul(g, s);
        if (seen.insert(key(h)).second) next.push_back(h);
      }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return all;
}

}  // namespace

SuiteReport run_oracle_suite(const SuiteConfig& cfg) {
  auto t0 = Clock::now();
  SuiteReport rep{"oracle", {}, 0};

  {
    Tally t("quotient orders log2|G_k| = k + 2^{2k-1} + 2^{k+1} - 2^{k-1}", 1);
    for (int k = 1; k <= 3; ++k) {
      long long want = k + (1LL << (2 * k - 1)) + (1LL << (k + 1)) - (1LL << (k - 1));
      long long got = whole_group(FinCtx(2, k)).log_order();
      t.check(got == want, "k=" + std::to_string(k) + " got " + std::to_string(got));
    }
    t.check(enumerate_elements(FinCtx(2, 1)).size() == 64, "k=1 enumeration");
    rep.checks.push_back(t.done("6, 16, 47"));
  }
  {
    Tally t("nilpotency class 2^{k+1} - 1", 1);
    for (int k = 1; k <= 2; ++k) {
      auto lc = lower_central(FinCtx(2, k));
      t.check(static_cast<long long>(lc.size()) - 1 == (1LL << (k + 1)) - 1, "k=" + std::to_string(k));
    }
    rep.checks.push_back(t.done("3, 7"));
  }
  {
    FinCtx c2(2, 2);
    auto lp = lower_p(c2).size() - 1, dj = jennings(c2).size() - 1;
    rep.checks.push_back(single("lower 2-series and dimension series lengths at k = 2", 1, lp == 7 && dj == 8,
                                std::to_string(lp) + ", " + std::to_string(dj)));
  }
  {
    std::mt19937_64 rng(cfg.seed);
    Tally t("embedding is multiplicative", 6);
    for (auto [p, k] : {std::pair{2, 2}, {2, 3}, {3, 1}, {3, 2}}) {
      FinCtx fin(p, k);
      GCtx sym(p, 2 * fin.q());
      Embedding emb(sym, fin);
      for (int s = 0; s < cfg.embedding_samples; ++s) {
        auto a = sampling::random_element(sym, rng, 20), b = sampling::random_element(sym, rng, 20);
        t.check(emb(sym.mul(a, b)) == fin.mul(emb(a), emb(b)), "p=" + std::to_string(p) + " k=" + std::to_string(k));
      }
    }
    rep.checks.push_back(t.done("(2,2), (2,3), (3,1), (3,2)"));
  }
  {
    Tally t("L and D levels against iterated lower-p and dimension series", 0);
    for (auto [p, kmax] : {std::pair{2, 3}, {3, 2}}) {
      for (int kf = 1; kf <= kmax; ++kf) {
        FinCtx fin(p, kf);
        GCtx sym(p, 2 * fin.q());
        auto P = lower_p(fin);
        auto J = jennings(fin, cfg.seed);
        for (std::size_t k = 1; k + 1 < P.size(); ++k)
          t.check(same_image(sym, fin, series_level(sym, SeriesId::L, static_cast<int>(k)).gens, P[k],
                             k <= static_cast<std::size_t>(kf)),
                  "L p=" + std::to_string(p) + " kf=" + std::to_string(kf) + " k=" + std::to_string(k));
        for (std::size_t k = 1; k + 1 < J.size(); ++k)
          t.check(same_image(sym, fin, series_level(sym, SeriesId::D, static_cast<int>(k)).gens, J[k], true),
                  "D p=" + std::to_string(p) + " kf=" + std::to_string(kf) + " k=" + std::to_string(k));
      }
    }
    rep.checks.push_back(t.done());
  }
  rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

SuiteReport run_identity_suite(const SuiteConfig& cfg) {
  auto t0 = Clock::now();
  SuiteReport rep{"identities", {}, 0};
  std::mt19937_64 rng(cfg.seed + 1);
  const int N = cfg.instances;
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); };

  {
    Tally t("[z_{m,n}, x^{p^k}] = z_{m+q,n} z_{m,n+q} z_{m+q,n+q}", 3);
    for (int p : {2, 3}) {
      const int w = 40;
      GCtx ctx(p, w);
      for (long long q = 1; q < w; q *= p)
        for (int m = 2; m + q <= w; ++m)
          for (int n = 1; n < m; ++n) {
            auto got = ctx.z_bracket(ctx.zgen(m, n).z, q, 1);
            auto want = ctx.zword({{BasisIndex::Com, static_cast<int>(m + q), n, 1},
                                   {BasisIndex::Com, m, static_cast<int>(n + q), 1},
                                   {BasisIndex::Com, static_cast<int>(m + q), static_cast<int>(n + q), 1}});
            t.check(got == want, "p=" + std::to_string(p) + " m=" + std::to_string(m) + " n=" + std::to_string(n));
          }
    }
    rep.checks.push_back(t.done("all in-window triples, p = 2, 3, W = 40"));
  }
  {
    Tally t("split: [c_i c_j, x, (p^k - 1)] = [c_i, ...][c_j, ...] w_{i,j,k}", 3);
    for (int p : {2, 3}) {
      const int w = 40;
      GCtx ctx(p, w);
      const int kmax = p == 2 ? 4 : 3;
      for (int s = 0; s < N; ++s) {
        int k = pick(1, kmax);
        long long q = int_pow(p, k);
        int i = pick(1, static_cast<int>(w - q - 1)), j = pick(1, static_cast<int>(w - q - 1));
        auto lhs = ctx.left_normed(ctx.mul(ctx.c(i), ctx.c(j)), q - 1);
        auto rhs = ctx.mul(ctx.mul(ctx.left_normed(ctx.c(i), q - 1), ctx.left_normed(ctx.c(j), q - 1)),
                           ctx.from_z(w_ijk(ctx, i, j, k, false)));
        t.check(lhs == rhs, "p=" + std::to_string(p) + " i=" + std::to_string(i) + " j=" + std::to_string(j) +
                                " k=" + std::to_string(k));
      }
    }
    rep.checks.push_back(t.done());
  }
  {
    const int w = 48;
    GCtx ctx(2, w);
    Tally rule("[w_{i,j,k}, x] = w_{i+1,j,k} w_{i,j+1,k} w_{i+1,j+1,k}", 3);
    Tally unit("w_{i,i+1,k} = 1", 3);
    for (int s = 0; s < N; ++s) {
      int k = pick(1, 4);
      int q = 1 << k;
      int i = pick(1, w - q - 1), j = pick(1, w - q - 1);
      auto lhs = ctx.z_bracket(w_ijk(ctx, i, j, k), 1, 1);
      auto rhs = vec_add(ctx.field(), vec_add(ctx.field(), w_ijk(ctx, i + 1, j, k), w_ijk(ctx, i, j + 1, k)),
                         w_ijk(ctx, i + 1, j + 1, k));
      rule.check(lhs == rhs, std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k));
      int a = pick(1, w - q - 1);
      unit.check(w_ijk(ctx, a, a + 1, k).empty(), std::to_string(a) + "," + std::to_string(k));
    }
    rep.checks.push_back(rule.done());
    rep.checks.push_back(unit.done());
  }
  {
    Tally ti("L_k (i): [z, x, (2^k - 1)] in L_k Q_k", 3);
    Tally tii("L_k (ii): [h1 h2, x, ...] = [h1, x, ...][h2, x, ...] mod L_k", 3);
    Tally tiii("L_k (iii): d_k(h1 h2) = d_k(h1) d_k(h2) mod L_k", 3);
    for (int k = 1; k <= 4; ++k) {
      GCtx ctx(2, default_window(SeriesId::P, 2, k));
      auto lk = span_of(ctx, named_subgroup(ctx, Named::L, k));
      auto lq = span_of(ctx, concat(named_subgroup(ctx, Named::L, k), named_subgroup(ctx, Named::Q, k)));
      const long long r = (1LL << k) - 1;
      const std::string ks = "k=" + std::to_string(k);
      for (int s = 0; s < N / 4 + (k <= N % 4 ? 1 : 0); ++s) {
        auto z = sampling::random_z(ctx, rng, 6);
        ti.check(lq.contains(ctx.z_bracket(z, 1, r)), ks);

        auto h1 = sampling::random_h_element(ctx, rng), h2 = sampling::random_h_element(ctx, rng);
        auto lhs = ctx.left_normed(ctx.mul(h1, h2), r);
        auto rhs = ctx.mul(ctx.left_normed(h1, r), ctx.left_normed(h2, r));
        auto diff = ctx.mul(ctx.inv(rhs), lhs);
        tii.check(diff.in_z() && lk.contains(diff.z), ks);

        auto dd = vec_axpy(ctx.field(), d_k(ctx, ctx.mul(h1, h2), k), ctx.field().neg(1),
                           vec_add(ctx.field(), d_k(ctx, h1, k), d_k(ctx, h2, k)));
        tiii.check(lk.contains(dd), ks);
      }
    }
    rep.checks.push_back(ti.done("k = 1..4"));
    rep.checks.push_back(tii.done("k = 1..4"));
    rep.checks.push_back(tiii.done("k = 1..4"));
  }
  {
    Tally t("odd L_k (iii): d_k(h) in L_k", 3);
    for (int p : {3, 5}) {
      const int kmax = p == 3 ? 3 : 2;
      for (int k = 1; k <= kmax; ++k) {
        GCtx ctx(p, default_window(SeriesId::P, p, k));
        auto lk = span_of(ctx, named_subgroup(ctx, Named::L, k));
        int share = N / (p == 3 ? 3 : 2) + 1;
        if (p == 5) share = N / 4 + 1;
        for (int s = 0; s < share; ++s) {
          auto h = sampling::random_h_element(ctx, rng);
          t.check(lk.contains(d_k(ctx, h, k)), "p=" + std::to_string(p) + " k=" + std::to_string(k));
        }
      }
    }
    rep.checks.push_back(t.done("p = 3 (k <= 3), p = 5 (k <= 2)"));
  }
  rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

SuiteReport run_filtration_suite(const SuiteConfig& cfg) {
  auto t0 = Clock::now();
  SuiteReport rep{"filtrations", {}, 0};

  {
    GCtx ctx(2, 50);
    Tally t("log2|Z : gamma_i cap Z| = floor(i^2 / 4)", 2);
    for (int i = 2; i <= 40; ++i) {
      std::size_t codim = ctx.zb().size() - span_of(ctx, gamma_cap_Z(ctx, i)).dim();
      std::size_t want = i % 2 ? (i * i - 1) / 4 : i * i / 4;
      t.check(codim == want, "i=" + std::to_string(i));
    }
    rep.checks.push_back(t.done("2 <= i <= 40, W = 50"));
  }

  std::mt19937_64 rng(cfg.seed + 2);
  for (int k = 1; k <= 4; ++k) {
    GCtx ctx(2, default_window(SeriesId::P, 2, k));
    const int W = ctx.window();
    const long long q = 1LL << k;
    const auto lq_gens = concat(named_subgroup(ctx, Named::L, k), named_subgroup(ctx, Named::Q, k));
    const auto lq = span_of(ctx, lq_gens);
    const auto lk = span_of(ctx, named_subgroup(ctx, Named::L, k));
    const std::string ks = " (k=" + std::to_string(k) + ")";

    std::map<int, GElement> vcache;
    auto v = [&](int m) -> const GElement& {
      auto it = vcache.find(m);
      if (it == vcache.end()) {
        GElement g = ctx.mul(ctx.x(-q), ctx.power(ctx.mul(ctx.x(), ctx.c(static_cast<int>(m - q + 1))), q));
        it = vcache.emplace(m, std::move(g)).first;
      }
      return it->second;
    };

    EchelonSpan found(ctx.field(), ctx.zb().size());
    Tally wit("G^{2^k} cap Z contains L_k Q_k: proof witnesses" + ks, 4);
    for (int m = static_cast<int>(q); m <= W; ++m) {
      const GElement& vm = v(m);
      wit.check(vm.h == ctx.c(m).h, "v_" + std::to_string(m) + " image");
      for (int n = 1; n < m; ++n) {
        GElement c = ctx.commutator(vm, ctx.c(n));
        wit.check(c == ctx.zgen(m, n), "[v_m, c_n] m=" + std::to_string(m));
        found.insert(c.z);
      }
      GElement sq = ctx.power(vm, 2);
      wit.check(sq.in_z(), "v_m^2");
      found.insert(sq.z);
    }
    for (int i = 1; i + q - 1 <= W; ++i) {
      GElement ci2 = ctx.power(ctx.c(i), 2);
      GElement lhs = ctx.mul(ctx.x(-q), ctx.power(ctx.mul(ctx.x(), ci2), q));
      GElement rhs = ctx.mul(ctx.csq(static_cast<int>(q + i - 1)), ctx.from_z(w_ijk(ctx, i, i, k, false)));
      wit.check(lhs == rhs, "(x c_i^2)^{2^k} i=" + std::to_string(i));
      found.insert(lhs.z);
    }
    {
      std::vector<SparseVec> seeds;
      for (int i = 1; i <= W; ++i) seeds.push_back(w_ijk(ctx, i, i, k, false));
      for (int m = static_cast<int>(q); m <= W; ++m)
        for (int n = 1; n < m; ++n) seeds.push_back(ctx.zgen(m, n).z);
      auto closure = span_of(ctx, z_normal_closure(ctx, seeds));
      wit.check(closure.dim() == lk.dim() && [&] {
        for (auto& g : closure.reduced())
          if (!lk.contains(g)) return false;
        return true;
      }(), "normal closure of w_{i,i,k} and z_{m,n} differs from L_k");
    }
    rep.checks.push_back(wit.done());

    Tally samp("G^{2^k} cap Z inside L_k Q_k: sampled products of 2^k-th powers" + ks, 4);
    for (int s = 0; s < cfg.instances; ++s) {
      GElement g = ctx.identity();
      int factors = 1 + static_cast<int>(rng() % 3);
      for (int f = 0; f < factors; ++f) {
        GElement b = sampling::random_h_element(ctx, rng);
        b.xexp = static_cast<long long>(rng() % 13) - 6;
        GElement pw = ctx.power(b, q);
        g = ctx.mul(g, rng() % 2 ? pw : ctx.inv(pw));
      }
      if (g.xexp % q != 0) {
        samp.check(false, "x-exponent not divisible by 2^k");
        continue;
      }
      g.xexp = 0;
      bool shallow = false;
      while (!g.h.empty()) {
        int m = static_cast<int>(g.h.leading()) + 1;
        if (m < q) {
          shallow = true;
          break;
        }
        g = ctx.mul(g, ctx.inv(v(m)));
      }
      samp.check(!shallow && lq.contains(g.z), shallow ? "H-image below depth 2^k" : "Z-element outside L_k Q_k");
      if (!shallow) found.insert(g.z);
    }
    rep.checks.push_back(samp.done(std::to_string(cfg.instances) + " samples"));

    Tally cover("normal closure of witnesses and samples covers L_k Q_k" + ks, 4);
    const auto reached = span_of(ctx, z_normal_closure(ctx, found.reduced()));
    std::string missed;
    for (const auto& g : lq_gens) {
      bool ok = reached.contains(g);
      cover.check(ok);
      if (!ok && g.size() == 1) missed += (missed.empty() ? "" : " ") + ctx.zb().index(g.leading()).str();
    }
    rep.checks.push_back(cover.done("dim " + std::to_string(lq.dim()) + ", reached " + std::to_string(reached.dim()) +
                                    (missed.empty() ? "" : ", missed " + missed)));
  }

  {
    FinCtx fin(2, 2);
    GCtx sym(2, 2 * fin.q());
    Embedding emb(sym, fin);
    std::vector<FinElement> powers;
    for (const auto& g : enumerate_elements(fin)) powers.push_back(fin.pow(g, 4));
    auto g4 = close_subgroup(fin, powers);
    std::string in;
    for (int l = 1; l <= sym.window(); ++l)
      if (g4.contains(emb(sym.csq(l)))) in += (in.empty() ? "" : " ") + std::to_string(l);
    rep.checks.push_back(single("squares c_l^2 inside G_2^4 by exhaustive enumeration", 0, in == "3 4 5 6 7 8",
                                "log2|G_2^4| = " + std::to_string(g4.log_order()) + ", l in {" + in + "}"));
  }
  {
    const std::size_t want[] = {0, 0, 0, 1, 7};
    Tally t("log2|Lambda_k Theta_k : Theta_k| = 0, 1, 7 and rank Psi_k <= 2^{k-1} - 1", 5);
    std::string got;
    for (int k = 2; k <= 4; ++k) {
      GCtx ctx(2, default_window(SeriesId::F, 2, k));
      auto theta = named_subgroup(ctx, Named::Theta, k);
      std::size_t r = span_of(ctx, concat(named_subgroup(ctx, Named::Lambda, k), theta)).dim() - span_of(ctx, theta).dim();
      got += (got.empty() ? "" : ", ") + std::to_string(r);
      t.check(r == want[k], "k=" + std::to_string(k));
      t.check(span_of(ctx, named_subgroup(ctx, Named::Psi, k)).dim() <= (1u << (k - 1)) - 1, "Psi k=" + std::to_string(k));
    }
    rep.checks.push_back(t.done(got));
  }
  {
    Tally t("explicit Frattini terms against the iterated Frattini series", 5);
    for (int kf = 2; kf <= 4; ++kf) {
      FinCtx fin(2, kf);
      GCtx sym(2, 2 * fin.q());
      auto F = frattini(fin);
      for (int k = 1; k < kf && k < static_cast<int>(F.size()) && k <= 3; ++k)
        t.check(same_image(sym, fin, series_level(sym, SeriesId::F, k).gens, F[k], true),
                "kf=" + std::to_string(kf) + " k=" + std::to_string(k));
    }
    rep.checks.push_back(t.done("k <= 3"));
  }
  rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

SuiteReport run_appendix_suite(const SuiteConfig&) {
  auto t0 = Clock::now();
  SuiteReport rep{"appendix", {}, 0};
  for (auto [p, k] : {std::pair{3, 2}, {3, 3}, {5, 2}}) {
    const std::string pk = "(" + std::to_string(p) + "," + std::to_string(k) + ")";
    auto r = verify_theta_push(p, k);
    std::string ladder;
    for (auto d : r.ladder_dims) ladder += (ladder.empty() ? "" : "<=") + std::to_string(d);
    rep.checks.push_back(single("theta push " + pk, 9, r.ok(),
                                "dim " + std::to_string(r.pushed_dim) + " vs " + std::to_string(r.lambda_dim) +
                                    ", Lambda~ generators " + std::to_string(r.lambda_printed) + ", rank " +
                                    std::to_string(r.lambda_rank) + ", deficit " + std::to_string(r.rank_deficit) +
                                    ", ladder " + ladder));
    auto part = check_partition(p, k);
    rep.checks.push_back(single("grid partition " + pk, 9, part.ok(),
                                "|Z| = " + std::to_string(part.total) + ", covered " + std::to_string(part.covered)));
    Tally t("binomial expansion " + pk, 0);
    long long q1 = int_pow(p, k - 1);
    for (long long m = q1; m < q1 * p; ++m)
      for (int n = 1; n < m; ++n)
        t.check(verify_binomial_expansion(p, k, static_cast<int>(m), n).match,
                "m=" + std::to_string(m) + " n=" + std::to_string(n));
    rep.checks.push_back(t.done());
  }
  {
    Tally t("C(p-1, s) = (-1)^s mod p", 0);
    for (int p : {3, 5, 7, 11, 13}) t.check(binomial_sign_rule(p), "p=" + std::to_string(p));
    rep.checks.push_back(t.done("p <= 13"));
  }
  rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

namespace {

struct Witness {
  int p, l, d;
};

std::string wname(const Witness& w) { return "(" + std::to_string(w.l) + "," + std::to_string(w.d) + ")"; }

// Density runs are shared between criteria 7 and 10.
class DensityCache {
 public:
  const DensityReport& get(const Witness& w, SeriesId s, int horizon, DensityMode mode) {
    auto key = std::make_tuple(w.p, w.l, w.d, static_cast<int>(s), horizon, static_cast<int>(mode));
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    GCtx& base = ctx(w.p, horizon_window(s, w.p, horizon));
    return cache_.emplace(key, density_sequence(witness(base, w.l, w.d), s, horizon, {mode, {}})).first->second;
  }
  GCtx& ctx(int p, int w) {
    auto key = std::make_pair(p, w);
    auto it = ctxs_.find(key);
    if (it == ctxs_.end()) it = ctxs_.emplace(key, std::make_unique<GCtx>(p, w)).first;
    return *it->second;
  }

 private:
  std::map<std::tuple<int, int, int, int, int, int>, DensityReport> cache_;
  std::map<std::pair<int, int>, std::unique_ptr<GCtx>> ctxs_;
};

bool is_ld(SeriesId s) { return s == SeriesId::L || s == SeriesId::D; }

}  // namespace

SuiteReport run_convergence_suite(const SuiteConfig& cfg) {
  auto t0 = Clock::now();
  SuiteReport rep{"convergence", {}, 0};
  DensityCache cache;
  const std::vector<Witness> w2{{2, 0, 1}, {2, 1, 0}, {2, 1, 1}, {2, 2, 1}, {2, 2, 2}, {2, 2, 3}};
  const std::vector<Witness> w3{{3, 1, 1}, {3, 1, 2}};

  struct Run {
    Witness w;
    SeriesId s;
    int horizon;
  };
  std::vector<Run> runs;
  for (const auto& w : w2)
    for (SeriesId s : {SeriesId::L, SeriesId::D, SeriesId::M, SeriesId::P, SeriesId::F})
      runs.push_back({w, s, default_horizon(s, 2)});
  for (const auto& w : w3)
    for (SeriesId s : {SeriesId::L, SeriesId::D, SeriesId::M, SeriesId::I}) runs.push_back({w, s, default_horizon(s, 3)});

  for (const auto& r : runs) {
    const double tol = default_tolerance(r.s);
    const DensityMode mode = is_ld(r.s) ? DensityMode::Delta : DensityMode::Raw;
    const auto& rep7 = cache.get(r.w, r.s, r.horizon, mode);
    bool ok = to_double(rep7.abs_gap) <= tol && (is_ld(r.s) || rep7.gap_monotone_tail);
    std::string detail = "tail " + fmt(to_double(rep7.tail)) + " predicted " + to_string(rep7.predicted) + " gap " +
                         fmt(to_double(rep7.abs_gap)) + " tol " + fmt(tol, 2) + " horizon " + std::to_string(r.horizon);
    if (is_ld(r.s)) {
      const auto& raw = cache.get(r.w, r.s, r.horizon, DensityMode::Raw);
      detail += " (delta; raw gap " + fmt(to_double(raw.abs_gap)) + ")";
    } else {
      detail += rep7.gap_monotone_tail ? " monotone" : " not monotone";
    }
    rep.checks.push_back(single(std::string("density p=") + std::to_string(r.w.p) + " " + wname(r.w) + " " +
                                    series_name(r.s),
                                7, ok, detail));
  }

  for (auto [p, lmax] : {std::pair{2, 2}, {3, 1}}) {
    auto sr = spectrum_scan(p, lmax, SeriesId::L, default_horizon(SeriesId::L, p), default_tolerance(SeriesId::L));
    std::set<Rational> want;
    for (int l = 0; l <= lmax; ++l) {
      long long q = int_pow(p, l);
      for (long long d = 0; d <= q; ++d) want.insert(Rational(d * d) / (q * q));
    }
    std::string got;
    for (const auto& r : sr.achieved) got += (got.empty() ? "" : ", ") + to_string(r);
    rep.checks.push_back(single("spectrum p=" + std::to_string(p) + " l_max=" + std::to_string(lmax), 8,
                                std::vector<Rational>(want.begin(), want.end()) == sr.achieved, "{" + got + "}"));
  }

  std::mt19937_64 rng(cfg.seed + 3);
  for (const auto& r : runs) {
    if (r.s == SeriesId::P || r.s == SeriesId::F || r.s == SeriesId::I) continue;
    const double tol = default_tolerance(r.s);
    const auto& raw = cache.get(r.w, r.s, r.horizon, DensityMode::Raw);
    const auto& del = cache.get(r.w, r.s, r.horizon, DensityMode::Delta);
    double shift = to_double(abs(raw.tail - del.tail));
    rep.checks.push_back(single("raw vs delta p=" + std::to_string(r.w.p) + " " + wname(r.w) + " " + series_name(r.s),
                                10, shift <= tol, "shift " + fmt(shift) + " tol " + fmt(tol, 2)));

    const DensityMode mode = is_ld(r.s) ? DensityMode::Delta : DensityMode::Raw;
    GCtx& base = cache.ctx(r.w.p, horizon_window(r.s, r.w.p, r.horizon));
    DensityOptions opt{mode, {}};
    int nz = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < nz; ++i)
      opt.extra_z.push_back(SparseVec::unit(base.field(), static_cast<Ordinal>(rng() % base.zb().size())));
    auto more = density_sequence(witness(base, r.w.l, r.w.d), r.s, r.horizon, opt);
    const auto& ref = cache.get(r.w, r.s, r.horizon, mode);
    double zshift = to_double(abs(more.tail - ref.tail));
    rep.checks.push_back(single("Z-generators p=" + std::to_string(r.w.p) + " " + wname(r.w) + " " + series_name(r.s),
                                10, zshift <= tol,
                                std::to_string(nz) + " added, shift " + fmt(zshift) + " tol " + fmt(tol, 2)));
  }
  rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"oracle", "identities", "filtrations", "appendix", "convergence"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "oracle") return run_oracle_suite(cfg);
  if (name == "identities") return run_identity_suite(cfg);
  if (name == "filtrations") return run_filtration_suite(cfg);
  if (name == "appendix") return run_appendix_suite(cfg);
  if (name == "convergence") return run_convergence_suite(cfg);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace hspec
