#pragma once

// Exact linear algebra over the prime field F_p on vectors indexed by opaque,
// totally ordered ordinals.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hspec {

using Ordinal = std::uint32_t;
using Coef = std::uint8_t;

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The prime field F_p, p < 256.
class FieldP {
 public:
  explicit FieldP(int p);

  int p() const { return p_; }
  Coef add(Coef a, Coef b) const { return static_cast<Coef>((a + b) % p_); }
  Coef sub(Coef a, Coef b) const { return static_cast<Coef>((a + p_ - b) % p_); }
  Coef mul(Coef a, Coef b) const { return static_cast<Coef>((a * b) % p_); }
  Coef neg(Coef a) const { return static_cast<Coef>((p_ - a) % p_); }
  Coef inv(Coef a) const;
  /// Reduces an arbitrary integer into [0, p).
  Coef reduce(long long v) const {
    long long r = v % p_;
    return static_cast<Coef>(r < 0 ? r + p_ : r);
  }

  friend bool operator==(const FieldP& a, const FieldP& b) { return a.p_ == b.p_; }

 private:
  int p_;
  std::vector<Coef> inverse_;
};

bool is_prime(long long n);

struct Entry {
  Ordinal index;
  Coef coef;
  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sparse F_p vector: strictly increasing indices, no stored zeros.
class SparseVec {
 public:
  SparseVec() = default;
  explicit SparseVec(int p) : p_(p) {}

  /// Builds a vector from unsorted (index, coefficient) terms, accumulating
  /// repeated indices mod p and dropping zeros.
  static SparseVec from_terms(const FieldP& f, std::vector<std::pair<Ordinal, long long>> terms);
  static SparseVec unit(const FieldP& f, Ordinal i) { return from_sorted(f.p(), {{i, 1}}); }
  /// Caller guarantees strictly increasing indices and nonzero coefficients.
  static SparseVec from_sorted(int p, std::vector<Entry> entries);

  int p() const { return p_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  Coef coef(Ordinal i) const;
  /// Smallest index with a nonzero coefficient; requires !empty().
  Ordinal leading() const { return entries_.front().index; }

  friend bool operator==(const SparseVec& a, const SparseVec& b) {
    return a.entries_ == b.entries_ && (a.entries_.empty() || a.p_ == b.p_);
  }

 private:
  int p_ = 0;
  std::vector<Entry> entries_;
};

SparseVec vec_add(const FieldP& f, const SparseVec& a, const SparseVec& b);
SparseVec vec_scale(const FieldP& f, const SparseVec& a, Coef c);
/// a + c*b
SparseVec vec_axpy(const FieldP& f, const SparseVec& a, Coef c, const SparseVec& b);

/// Row-echelon basis of a subspace of F_p^n.
///
/// Rows are kept in semi-echelon form: each row has leading coefficient 1 at its
/// pivot, pivots are distinct, and every other entry of a row lies strictly to the
/// right of its pivot. This is enough for dimension and membership; reduced()
/// produces the fully reduced form on demand.
class EchelonSpan {
 public:
  EchelonSpan(const FieldP& f, std::size_t ambient_dim);

  const FieldP& field() const { return field_; }
  std::size_t ambient_dim() const { return pivot_row_.size(); }
  std::size_t dim() const { return row_pivot_.size(); }

  /// Reduces v and, if the residue is nonzero, adds it as a new row.
  /// Returns the residue (empty iff v was already in the span).
  SparseVec insert(const SparseVec& v);
  bool insert_if_new(const SparseVec& v) { return !insert(v).empty(); }
  SparseVec residue(const SparseVec& v) const;
  bool contains(const SparseVec& v) const { return residue(v).empty(); }

  std::vector<Ordinal> pivots() const;  // ascending
  SparseVec row(std::size_t r) const;
  /// Rows in reduced row-echelon form ordered by pivot.
  std::vector<SparseVec> reduced() const;

 private:
  SparseVec reduce(const SparseVec& v, bool store);

  FieldP field_;
  std::vector<std::int32_t> pivot_row_;  // ordinal -> row, or -1
  std::vector<Ordinal> row_pivot_;
  std::vector<std::size_t> row_start_{0};
  std::vector<Ordinal> idx_;
  std::vector<Coef> coef_;
};

/// dim(span(a) + s) - dim(s).
std::size_t quotient_dim(std::span<const SparseVec> a, const EchelonSpan& s);
/// Same, extending s in place (avoids copying large spans).
std::size_t quotient_dim_inplace(std::span<const SparseVec> a, EchelonSpan& s);

}  // namespace hspec
