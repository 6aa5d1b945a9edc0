#pragma once

// The finite quotients G_k (p = 2) and their odd-p analogues, in wreath
// coordinates: x_k of order q = p^k acting on H_k, the free class-2 group of
// exponent p (exponent 4 when p = 2) on b_0, ..., b_{q-1}, b_j = y^{x^j}.

#include <optional>
#include <random>
#include <vector>

#include "hspec/fplin.hpp"
#include "hspec/gsymb.hpp"
#include "hspec/zbasis.hpp"

namespace hspec {

struct FinElement {
  long long e = 0;  // in [0, q)
  SparseVec b;      // ordinal j holds the exponent of b_j
  SparseVec z;      // over FinCtx::zb(): CSq(j+1) = b_j^2, Com(i+1,j+1) = [b_i,b_j] for i > j

  bool is_identity() const { return e == 0 && b.empty() && z.empty(); }
  bool in_h() const { return e == 0; }
  bool in_z() const { return e == 0 && b.empty(); }
  friend bool operator==(const FinElement& a, const FinElement& b) {
    return a.e == b.e && a.b == b.b && a.z == b.z;
  }
};

class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FinCtx {
 public:
  static constexpr std::size_t kZGuard = 5000;

  FinCtx(int p, int k);

  int p() const { return field_.p(); }
  int k() const { return k_; }
  int q() const { return q_; }
  const FieldP& field() const { return field_; }
  const ZBasis& zb() const { return zb_; }
  /// log_p |G_k| from the construction.
  long long log_order() const { return k_ + q_ + static_cast<long long>(zb_.size()); }

  FinElement identity() const;
  FinElement x(long long e = 1) const;
  FinElement b(int j) const;
  FinElement y() const { return b(0); }

  FinElement mul(const FinElement& a, const FinElement& b) const;
  FinElement inv(const FinElement& a) const;
  FinElement comm(const FinElement& a, const FinElement& b) const;
  FinElement pow(const FinElement& a, long long e) const;
  /// x^-e h x^e for h in H_k.
  void conj(const SparseVec& b, const SparseVec& z, long long e, SparseVec& b_out, SparseVec& z_out) const;

 private:
  SparseVec beta(const SparseVec& a, const SparseVec& b) const;

  FieldP field_;
  int k_;
  int q_;
  ZBasis zb_;
};

/// The canonical map from a window quotient onto G_k. It is a homomorphism as
/// soon as the window is at least the nilpotency class of G_k; 2p^k suffices.
class Embedding {
 public:
  Embedding(const GCtx& sym, const FinCtx& fin);
  FinElement operator()(const GElement& g) const;
  const FinElement& c(int i) const { return c_.at(i - 1); }

 private:
  const GCtx& sym_;
  const FinCtx& fin_;
  std::vector<FinElement> c_;
  std::vector<FinElement> zimg_;  // image of each ZBasis ordinal of sym
};

/// Induced generating sequence of a subgroup of G_k, built by three-layer sifting.
class InducedSequence {
 public:
  explicit InducedSequence(const FinCtx& ctx);

  const FinCtx& ctx() const { return *ctx_; }
  /// Sifts g through the layers; returns the residue (identity iff member).
  FinElement sift(FinElement g) const;
  bool contains(const FinElement& g) const { return sift(g).is_identity(); }
  long long log_order() const;
  bool is_trivial() const { return log_order() == 0; }
  std::size_t z_rank() const { return zspan_.dim(); }
  std::size_t h_rank() const { return hrows_.size(); }
  /// x-valuation of the subgroup image in <x_k>, or k if trivial there.
  int x_valuation() const;
  std::vector<FinElement> elements() const;  // layer generators
  const EchelonSpan& zspan() const { return zspan_; }

  /// Adds generators and closes under products.
  void add(const std::vector<FinElement>& gens);
  /// Adds conjugates by the given elements until stable (normal closure).
  void normalize_under(const std::vector<FinElement>& conj);

  bool operator==(const InducedSequence& o) const;
  bool subset_of(const InducedSequence& o) const;

 private:
  bool insert_residue(FinElement r, std::vector<FinElement>& queue);
  void enqueue_relations(const FinElement& g, std::vector<FinElement>& queue) const;

  const FinCtx* ctx_;
  std::optional<FinElement> xgen_;
  int xval_ = 0;
  std::vector<FinElement> hrows_;            // unit leading coefficient at hpiv_
  std::vector<int> hpiv_;                    // b-index -> row or -1
  EchelonSpan zspan_;
};

InducedSequence close_subgroup(const FinCtx& ctx, const std::vector<FinElement>& gens);
InducedSequence normal_closure(const FinCtx& ctx, const std::vector<FinElement>& gens);
InducedSequence whole_group(const FinCtx& ctx);
/// [A, B] for normal subgroups A, B (as normal subgroup of G_k).
InducedSequence commutator_subgroup(const InducedSequence& a, const InducedSequence& b);
/// <a^p : a in A> for normal A; exact for p = 2 (equals Phi(A)), sampled for odd p.
InducedSequence power_subgroup(const InducedSequence& a, std::mt19937_64& rng);
InducedSequence product(const InducedSequence& a, const InducedSequence& b);

std::vector<InducedSequence> lower_central(const FinCtx& ctx);   // [0] = G
std::vector<InducedSequence> lower_p(const FinCtx& ctx);         // [0] = G, term i+1 = P^p[P,G]
/// Jennings series J_1 = G, J_n = [J_{n-1}, G] J_{ceil(n/p)}^p; returned with [0] = J_1.
std::vector<InducedSequence> jennings(const FinCtx& ctx, std::uint64_t seed = 1);
std::vector<InducedSequence> frattini(const FinCtx& ctx);        // [0] = G
/// Iterated p-power series I_0 = G, I_{i+1} = I_i^p.
std::vector<InducedSequence> iterated_power(const FinCtx& ctx, std::uint64_t seed = 1);

}  // namespace hspec
