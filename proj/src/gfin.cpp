#include "hspec/gfin.hpp"

#include <numeric>
#include <tuple>

namespace hspec {

namespace {

using Terms = std::vector<std::pair<Ordinal, long long>>;

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int valuation(long long v, int p) {
  int k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

long long inverse_mod(long long a, long long m) {
  if (m == 1) return 0;
  long long g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
  long long b = a1;
  while (b) {
    long long t = g / b;
    std::tie(g, b) = std::make_pair(b, g - t * b);
    std::tie(x, x1) = std::make_pair(x1, x - t * x1);
  }
  if (g != 1) throw std::logic_error("not a unit");
  return ((x % m) + m) % m;
}

}  // namespace

FinCtx::FinCtx(int p, int k) : field_(p), k_(k), q_(static_cast<int>(ipow(p, k))), zb_(p, 1) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (window_dim(p, q_) > kZGuard) throw GuardExceeded("Z_k dimension exceeds oracle guard");
  zb_ = ZBasis(p, q_);
}

FinElement FinCtx::identity() const { return {0, SparseVec(p()), SparseVec(p())}; }

FinElement FinCtx::x(long long e) const {
  FinElement g = identity();
  g.e = ((e % q_) + q_) % q_;
  return g;
}

FinElement FinCtx::b(int j) const {
  FinElement g = identity();
  g.b = SparseVec::unit(field_, static_cast<Ordinal>(((j % q_) + q_) % q_));
  return g;
}

SparseVec FinCtx::beta(const SparseVec& a, const SparseVec& b) const {
  Terms out;
  for (const auto& ea : a.entries())
    for (const auto& eb : b.entries()) {
      if (eb.index > ea.index) break;
      long long c = static_cast<long long>(ea.coef) * eb.coef;
      if (eb.index < ea.index)
        out.emplace_back(zb_.com(ea.index + 1, eb.index + 1), c);
      else if (p() == 2)
        out.emplace_back(zb_.csq(ea.index + 1), c);
    }
  return SparseVec::from_terms(field_, std::move(out));
}

void FinCtx::conj(const SparseVec& b, const SparseVec& z, long long e, SparseVec& b_out, SparseVec& z_out) const {
  const int s = static_cast<int>(((e % q_) + q_) % q_);
  if (s == 0) {
    b_out = b;
    z_out = z;
    return;
  }
  auto sh = [&](int j) { return (j + s) % q_; };
  std::vector<Entry> hi, lo;
  for (const auto& en : b.entries()) {
    int j = sh(static_cast<int>(en.index));
    (j >= s ? hi : lo).push_back({static_cast<Ordinal>(j), en.coef});
  }
  SparseVec va = SparseVec::from_sorted(p(), hi), vb = SparseVec::from_sorted(p(), lo);
  Terms out;
  for (const auto& en : z.entries()) {
    const auto& bi = zb_.index(en.index);
    if (bi.kind == BasisIndex::CSq) {
      out.emplace_back(zb_.csq(sh(bi.m - 1) + 1), en.coef);
    } else {
      int m = sh(bi.m - 1) + 1, n = sh(bi.n - 1) + 1;
      if (m > n)
        out.emplace_back(zb_.com(m, n), en.coef);
      else
        out.emplace_back(zb_.com(n, m), -static_cast<long long>(en.coef));
    }
  }
  z_out = vec_add(field_, SparseVec::from_terms(field_, std::move(out)), beta(va, vb));
  b_out = vec_add(field_, va, vb);
}

FinElement FinCtx::mul(const FinElement& a, const FinElement& b) const {
  FinElement out;
  SparseVec ha, za;
  conj(a.b, a.z, b.e, ha, za);
  out.e = (a.e + b.e) % q_;
  out.z = vec_add(field_, vec_add(field_, za, b.z), beta(ha, b.b));
  out.b = vec_add(field_, ha, b.b);
  return out;
}

FinElement FinCtx::inv(const FinElement& g) const {
  SparseVec ah = vec_scale(field_, g.b, field_.neg(1));
  SparseVec zh = vec_axpy(field_, beta(g.b, g.b), field_.neg(1), g.z);
  FinElement out;
  out.e = (q_ - g.e) % q_;
  conj(ah, zh, out.e, out.b, out.z);
  return out;
}

FinElement FinCtx::comm(const FinElement& a, const FinElement& b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

FinElement FinCtx::pow(const FinElement& a, long long e) const {
  FinElement base = e < 0 ? inv(a) : a;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  FinElement acc = identity();
  while (n) {
    if (n & 1) acc = mul(acc, base);
    n >>= 1;
    if (n) base = mul(base, base);
  }
  return acc;
}

Embedding::Embedding(const GCtx& sym, const FinCtx& fin) : sym_(sym), fin_(fin) {
  if (sym.p() != fin.p()) throw FieldError("field mismatch");
  c_.push_back(fin.y());
  for (int i = 2; i <= sym.window(); ++i) c_.push_back(fin.comm(c_.back(), fin.x()));
  for (const auto& bi : sym.zb().indices()) {
    if (bi.kind == BasisIndex::CSq)
      zimg_.push_back(fin.mul(c(bi.m), c(bi.m)));
    else
      zimg_.push_back(fin.comm(c(bi.m), c(bi.n)));
  }
}

FinElement Embedding::operator()(const GElement& g) const {
  FinElement out = fin_.x(g.xexp);
  for (const auto& e : g.h.entries()) out = fin_.mul(out, fin_.pow(c(static_cast<int>(e.index) + 1), e.coef));
  for (const auto& e : g.z.entries()) out = fin_.mul(out, fin_.pow(zimg_[e.index], e.coef));
  return out;
}

InducedSequence::InducedSequence(const FinCtx& ctx)
    : ctx_(&ctx), hpiv_(static_cast<std::size_t>(ctx.q()), -1), zspan_(ctx.field(), ctx.zb().size()) {}

FinElement InducedSequence::sift(FinElement g) const {
  const FinCtx& c = *ctx_;
  if (g.e != 0) {
    if (!xgen_) return g;
    long long step = ipow(c.p(), xval_);
    if (g.e % step) return g;
    g = c.mul(g, c.pow(*xgen_, -(g.e / step)));
  }
  while (!g.b.empty()) {
    Ordinal j = g.b.leading();
    int r = hpiv_[j];
    if (r < 0) return g;
    g = c.mul(g, c.pow(hrows_[r], -static_cast<long long>(g.b.entries().front().coef)));
  }
  g.z = zspan_.residue(g.z);
  return g;
}

void InducedSequence::enqueue_relations(const FinElement& g, std::vector<FinElement>& queue) const {
  const FinCtx& c = *ctx_;
  if (g.e != 0) {
    queue.push_back(c.pow(g, c.q() / ipow(c.p(), xval_)));
    for (const auto& h : hrows_) queue.push_back(c.comm(h, g));
    for (std::size_t r = 0; r < zspan_.dim(); ++r) {
      FinElement z = c.identity();
      z.z = zspan_.row(r);
      queue.push_back(c.comm(z, g));
    }
    return;
  }
  if (xgen_) queue.push_back(c.comm(g, *xgen_));
  if (!g.b.empty()) {
    queue.push_back(c.pow(g, c.p()));
    for (const auto& h : hrows_)
      if (!(h == g)) queue.push_back(c.comm(h, g));
  }
}

bool InducedSequence::insert_residue(FinElement r, std::vector<FinElement>& queue) {
  const FinCtx& c = *ctx_;
  if (r.is_identity()) return false;
  if (r.e != 0) {
    int v = valuation(r.e, c.p());
    long long m = c.q() / ipow(c.p(), v);
    long long u = r.e / ipow(c.p(), v);
    r = c.pow(r, inverse_mod(u, m));
    if (xgen_) queue.push_back(*xgen_);
    xgen_ = r;
    xval_ = v;
    enqueue_relations(r, queue);
  } else if (!r.b.empty()) {
    Coef lead = r.b.entries().front().coef;
    r = c.pow(r, c.field().inv(lead));
    hpiv_[r.b.leading()] = static_cast<int>(hrows_.size());
    hrows_.push_back(r);
    enqueue_relations(r, queue);
  } else {
    zspan_.insert(r.z);
    enqueue_relations(r, queue);
  }
  return true;
}

void InducedSequence::add(const std::vector<FinElement>& gens) {
  std::vector<FinElement> queue(gens.rbegin(), gens.rend());
  while (!queue.empty()) {
    FinElement g = std::move(queue.back());
    queue.pop_back();
    insert_residue(sift(std::move(g)), queue);
  }
}

std::vector<FinElement> InducedSequence::elements() const {
  std::vector<FinElement> out;
  if (xgen_) out.push_back(*xgen_);
  out.insert(out.end(), hrows_.begin(), hrows_.end());
  for (std::size_t r = 0; r < zspan_.dim(); ++r) {
    FinElement z = ctx_->identity();
    z.z = zspan_.row(r);
    out.push_back(z);
  }
  return out;
}

void InducedSequence::normalize_under(const std::vector<FinElement>& conj) {
  for (bool changed = true; changed;) {
    changed = false;
    long long before = log_order();
    std::vector<FinElement> gens;
    for (const auto& e : elements())
      for (const auto& g : conj) gens.push_back(ctx_->comm(e, g));
    add(gens);
    changed = log_order() != before;
  }
}

long long InducedSequence::log_order() const {
  return (xgen_ ? ctx_->k() - xval_ : 0) + static_cast<long long>(hrows_.size() + zspan_.dim());
}

int InducedSequence::x_valuation() const { return xgen_ ? xval_ : ctx_->k(); }

bool InducedSequence::subset_of(const InducedSequence& o) const {
  for (const auto& e : elements())
    if (!o.contains(e)) return false;
  return true;
}

bool InducedSequence::operator==(const InducedSequence& o) const {
  return log_order() == o.log_order() && subset_of(o);
}

InducedSequence close_subgroup(const FinCtx& ctx, const std::vector<FinElement>& gens) {
  InducedSequence s(ctx);
  s.add(gens);
  return s;
}

InducedSequence normal_closure(const FinCtx& ctx, const std::vector<FinElement>& gens) {
  InducedSequence s = close_subgroup(ctx, gens);
  s.normalize_under({ctx.x(), ctx.y()});
  return s;
}

InducedSequence whole_group(const FinCtx& ctx) { return close_subgroup(ctx, {ctx.x(), ctx.y()}); }

InducedSequence commutator_subgroup(const InducedSequence& a, const InducedSequence& b) {
  const FinCtx& c = a.ctx();
  std::vector<FinElement> gens;
  auto ea = a.elements(), eb = b.elements();
  for (const auto& u : ea)
    for (const auto& v : eb) {
      if (u.in_z() && v.in_h()) continue;
      if (v.in_z() && u.in_h()) continue;
      gens.push_back(c.comm(u, v));
    }
  return normal_closure(c, gens);
}

InducedSequence product(const InducedSequence& a, const InducedSequence& b) {
  InducedSequence s = a;
  s.add(b.elements());
  return s;
}

namespace {

FinElement random_member(const InducedSequence& a, std::mt19937_64& rng) {
  const FinCtx& c = a.ctx();
  FinElement g = c.identity();
  for (const auto& e : a.elements()) {
    long long range = e.in_h() ? c.p() : c.q();
    g = c.mul(g, c.pow(e, static_cast<long long>(rng() % range)));
  }
  return g;
}

// Normal closure of generator p-th powers; exact modulo [A, A].
InducedSequence generator_powers(const InducedSequence& a) {
  const FinCtx& c = a.ctx();
  std::vector<FinElement> gens;
  for (const auto& e : a.elements()) gens.push_back(c.pow(e, c.p()));
  return normal_closure(c, gens);
}

InducedSequence with_group_commutators(const InducedSequence& a, InducedSequence base) {
  const FinCtx& c = a.ctx();
  std::vector<FinElement> gens;
  for (const auto& e : a.elements()) {
    gens.push_back(c.comm(e, c.x()));
    gens.push_back(c.comm(e, c.y()));
  }
  base.add(gens);
  base.normalize_under({c.x(), c.y()});
  return base;
}

InducedSequence frattini_of(const InducedSequence& a) {
  return product(generator_powers(a), commutator_subgroup(a, a));
}

}  // namespace

InducedSequence power_subgroup(const InducedSequence& a, std::mt19937_64& rng) {
  if (a.ctx().p() == 2) return frattini_of(a);
  const FinCtx& c = a.ctx();
  InducedSequence s = generator_powers(a);
  for (int stable = 0; stable < 40;) {
    long long before = s.log_order();
    s.add({c.pow(random_member(a, rng), c.p())});
    s.normalize_under({c.x(), c.y()});
    stable = s.log_order() == before ? stable + 1 : 0;
  }
  return s;
}

std::vector<InducedSequence> lower_central(const FinCtx& ctx) {
  std::vector<InducedSequence> out{whole_group(ctx)};
  while (!out.back().is_trivial()) out.push_back(with_group_commutators(out.back(), InducedSequence(ctx)));
  return out;
}

std::vector<InducedSequence> lower_p(const FinCtx& ctx) {
  std::vector<InducedSequence> out{whole_group(ctx)};
  while (!out.back().is_trivial()) out.push_back(with_group_commutators(out.back(), generator_powers(out.back())));
  return out;
}

std::vector<InducedSequence> jennings(const FinCtx& ctx, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<InducedSequence> out{whole_group(ctx)};
  std::vector<std::optional<InducedSequence>> powers;
  for (std::size_t n = 2; !out.back().is_trivial(); ++n) {
    std::size_t src = (n + ctx.p() - 1) / ctx.p();  // J_src, stored at src - 1
    if (powers.size() < src) powers.resize(src);
    if (!powers[src - 1]) powers[src - 1] = power_subgroup(out[src - 1], rng);
    out.push_back(with_group_commutators(out.back(), *powers[src - 1]));
  }
  return out;
}

std::vector<InducedSequence> frattini(const FinCtx& ctx) {
  std::vector<InducedSequence> out{whole_group(ctx)};
  while (!out.back().is_trivial()) out.push_back(frattini_of(out.back()));
  return out;
}

std::vector<InducedSequence> iterated_power(const FinCtx& ctx, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<InducedSequence> out{whole_group(ctx)};
  while (!out.back().is_trivial()) out.push_back(power_subgroup(out.back(), rng));
  return out;
}

}  // namespace hspec
