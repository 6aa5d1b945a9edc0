#pragma once

// Checks of the odd-p combinatorial identity
//   [Theta~_{k-1}, x^{p^{k-1}}, (p-1)] Theta~_k = Lambda~_k Theta~_k
// and of the grid decomposition used to prove it.

#include <string>
#include <utility>
#include <vector>

#include "hspec/fplin.hpp"
#include "hspec/gsymb.hpp"

namespace hspec {

struct GridCell {
  enum Kind { Square, Triangle, Upper, Corner };
  Kind kind;
  int i;
  int j;  // 0 for triangles
  std::vector<std::pair<int, int>> members;  // (m, n)

  std::string name() const;
};

/// Z_{i,j}, V_i, U_{i,1} and W_{i,j} for odd p; members are z_{m,n} with
/// p^{k-1} <= m < p^k and 1 <= n < m.
std::vector<GridCell> grid_decompose(int p, int k);

struct PartitionReport {
  std::size_t total = 0;     // |Z| from the definition
  std::size_t covered = 0;   // sum of square and triangle sizes
  bool disjoint = false;
  bool covering = false;
  bool cardinalities = false;  // |Z_{i,j}| and |V_i| closed forms
  bool subcells = false;       // U_{i,1} in Z_{i,1}, W_{i,j} in Z_{i,j}
  bool ok() const { return disjoint && covering && cardinalities && subcells; }
};

PartitionReport check_partition(int p, int k);

struct ThetaPushReport {
  int p = 0;
  int k = 0;
  int window = 0;
  std::size_t theta_dim = 0;
  std::size_t pushed_dim = 0;  // pushed Theta~_{k-1} times Theta~_k
  std::size_t lambda_dim = 0;  // Lambda~_k Theta~_k
  bool equal = false;
  std::size_t lambda_printed = 0;  // printed generators of Lambda~_k
  std::size_t lambda_rank = 0;     // their rank modulo Theta~_k
  std::size_t rank_deficit = 0;
  bool reduced_set_equal = false;  // pushes of the U- and W-cells suffice
  std::vector<std::size_t> ladder_dims;  // Theta~_{k,tau}, tau = 0..p-2
  bool ladder_monotone = false;
  bool ok() const { return equal && reduced_set_equal && ladder_monotone; }
};

/// Requires odd p and k >= 2; throws BudgetExceeded beyond the window budget.
ThetaPushReport verify_theta_push(int p, int k);

struct BinomialReport {
  int p, k, m, n;
  SparseVec exact;      // [z_{m,n}, x^{p^{k-1}}, (p-1)] mod Theta~_k
  SparseVec displayed;  // the binomial product mod Theta~_k
  bool match = false;
};

BinomialReport verify_binomial_expansion(int p, int k, int m, int n);

/// C(p-1, s) = (-1)^s mod p for 0 <= s <= p-1.
bool binomial_sign_rule(int p);

long long binomial(int n, int r);

}  // namespace hspec
