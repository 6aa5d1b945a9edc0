#include "hspec/fplin.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>

namespace hspec {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldP::FieldP(int p) : p_(p) {
  if (p >= 256 || !is_prime(p)) throw FieldError("not a supported prime: " + std::to_string(p));
  inverse_.assign(static_cast<std::size_t>(p), 0);
  for (int a = 1; a < p; ++a)
    for (int b = 1; b < p; ++b)
      if ((a * b) % p == 1) {
        inverse_[a] = static_cast<Coef>(b);
        break;
      }
}

Coef FieldP::inv(Coef a) const {
  if (a % p_ == 0) throw FieldError("inverse of zero");
  return inverse_[a % p_];
}

SparseVec SparseVec::from_terms(const FieldP& f, std::vector<std::pair<Ordinal, long long>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec v(f.p());
  std::size_t i = 0;
  while (i < terms.size()) {
    Ordinal idx = terms[i].first;
    long long acc = 0;
    for (; i < terms.size() && terms[i].first == idx; ++i) acc = (acc + terms[i].second % f.p()) % f.p();
    Coef c = f.reduce(acc);
    if (c) v.entries_.push_back({idx, c});
  }
  return v;
}

SparseVec SparseVec::from_sorted(int p, std::vector<Entry> entries) {
  SparseVec v(p);
  v.entries_ = std::move(entries);
  return v;
}

Coef SparseVec::coef(Ordinal i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, Ordinal k) { return e.index < k; });
  return (it != entries_.end() && it->index == i) ? it->coef : 0;
}

static void check_field(const FieldP& f, const SparseVec& v) {
  if (!v.empty() && v.p() != f.p()) throw FieldError("field mismatch");
}

SparseVec vec_axpy(const FieldP& f, const SparseVec& a, Coef c, const SparseVec& b) {
  check_field(f, a);
  check_field(f, b);
  c = static_cast<Coef>(c % f.p());
  std::vector<Entry> out;
  out.reserve(a.size() + b.size());
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  std::size_t i = 0, j = 0;
  while (i < ea.size() || j < eb.size()) {
    if (j == eb.size() || (i < ea.size() && ea[i].index < eb[j].index)) {
      out.push_back(ea[i++]);
    } else if (i == ea.size() || eb[j].index < ea[i].index) {
      Coef v = f.mul(c, eb[j].coef);
      if (v) out.push_back({eb[j].index, v});
      ++j;
    } else {
      Coef v = f.add(ea[i].coef, f.mul(c, eb[j].coef));
      if (v) out.push_back({ea[i].index, v});
      ++i;
      ++j;
    }
  }
  return SparseVec::from_sorted(f.p(), std::move(out));
}

SparseVec vec_add(const FieldP& f, const SparseVec& a, const SparseVec& b) { return vec_axpy(f, a, 1, b); }

SparseVec vec_scale(const FieldP& f, const SparseVec& a, Coef c) {
  return vec_axpy(f, SparseVec(f.p()), c, a);
}

EchelonSpan::EchelonSpan(const FieldP& f, std::size_t ambient_dim)
    : field_(f), pivot_row_(ambient_dim, -1) {}

namespace {

struct Scratch {
  std::vector<Coef> acc;
  std::vector<Ordinal> heap;  // min-heap, may hold duplicates
};

thread_local Scratch scratch;

}  // namespace

SparseVec EchelonSpan::reduce(const SparseVec& v, bool store) {
  check_field(field_, v);
  const int p = field_.p();
  for (const auto& e : v.entries())
    if (e.index >= pivot_row_.size()) throw std::out_of_range("ordinal beyond ambient dimension");
  if (v.empty()) return SparseVec(p);

  // Fast path: leading term is free, nothing to reduce.
  Ordinal lead = v.leading();
  SparseVec res(p);
  if (pivot_row_[lead] < 0) {
    res = v;
  } else {
    auto& acc = scratch.acc;
    auto& heap = scratch.heap;
    if (acc.size() < pivot_row_.size()) acc.resize(pivot_row_.size(), 0);
    heap.clear();
    std::greater<Ordinal> cmp;
    for (const auto& e : v.entries()) {
      acc[e.index] = e.coef;
      heap.push_back(e.index);
    }
    std::make_heap(heap.begin(), heap.end(), cmp);
    bool found = false;
    while (!heap.empty()) {
      std::pop_heap(heap.begin(), heap.end(), cmp);
      Ordinal i = heap.back();
      heap.pop_back();
      Coef c = acc[i];
      if (!c) continue;
      std::int32_t r = pivot_row_[i];
      if (r < 0) {
        heap.push_back(i);
        std::push_heap(heap.begin(), heap.end(), cmp);
        found = true;
        break;
      }
      acc[i] = 0;
      Coef m = field_.neg(c);
      for (std::size_t t = row_start_[r] + 1; t < row_start_[r + 1]; ++t) {
        Ordinal k = idx_[t];
        if (!acc[k]) {
          heap.push_back(k);
          std::push_heap(heap.begin(), heap.end(), cmp);
        }
        acc[k] = static_cast<Coef>((acc[k] + m * coef_[t]) % p);
      }
    }
    std::vector<Entry> out;
    if (found) {
      std::sort(heap.begin(), heap.end());
      heap.erase(std::unique(heap.begin(), heap.end()), heap.end());
      for (Ordinal k : heap)
        if (acc[k]) out.push_back({k, acc[k]});
    }
    for (Ordinal k : heap) acc[k] = 0;
    res = SparseVec::from_sorted(p, std::move(out));
  }
  if (res.empty() || !store) return res;

  Coef s = field_.inv(res.entries().front().coef);
  Ordinal piv = res.leading();
  pivot_row_[piv] = static_cast<std::int32_t>(row_pivot_.size());
  row_pivot_.push_back(piv);
  for (const auto& e : res.entries()) {
    idx_.push_back(e.index);
    coef_.push_back(field_.mul(e.coef, s));
  }
  row_start_.push_back(idx_.size());
  return res;
}

SparseVec EchelonSpan::insert(const SparseVec& v) { return reduce(v, true); }

SparseVec EchelonSpan::residue(const SparseVec& v) const {
  return const_cast<EchelonSpan*>(this)->reduce(v, false);
}

std::vector<Ordinal> EchelonSpan::pivots() const {
  std::vector<Ordinal> out = row_pivot_;
  std::sort(out.begin(), out.end());
  return out;
}

SparseVec EchelonSpan::row(std::size_t r) const {
  std::vector<Entry> out;
  for (std::size_t t = row_start_.at(r); t < row_start_.at(r + 1); ++t) out.push_back({idx_[t], coef_[t]});
  return SparseVec::from_sorted(field_.p(), std::move(out));
}

std::vector<SparseVec> EchelonSpan::reduced() const {
  std::vector<std::size_t> order(dim());
  for (std::size_t r = 0; r < order.size(); ++r) order[r] = r;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return row_pivot_[a] < row_pivot_[b]; });
  std::vector<SparseVec> rows;
  for (auto r : order) rows.push_back(row(r));
  // Back substitution from the last pivot upward.
  for (std::size_t a = rows.size(); a-- > 0;) {
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      Coef c = rows[a].coef(rows[b].leading());
      if (c) rows[a] = vec_axpy(field_, rows[a], field_.neg(c), rows[b]);
    }
  }
  return rows;
}

std::size_t quotient_dim_inplace(std::span<const SparseVec> a, EchelonSpan& s) {
  std::size_t before = s.dim();
  for (const auto& v : a) s.insert(v);
  return s.dim() - before;
}

std::size_t quotient_dim(std::span<const SparseVec> a, const EchelonSpan& s) {
  EchelonSpan copy = s;
  return quotient_dim_inplace(a, copy);
}

}  // namespace hspec
