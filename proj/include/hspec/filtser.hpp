#pragma once

// Filtration series of the pro-p group, intersected with Z, as generator lists
// over the ZBasis of a window quotient.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hspec/fplin.hpp"
#include "hspec/gsymb.hpp"

namespace hspec {

enum class SeriesId { L, D, M, P, I, F };

const char* series_name(SeriesId s);
std::optional<SeriesId> parse_series(std::string_view s);
inline constexpr SeriesId kAllSeries[] = {SeriesId::L, SeriesId::D, SeriesId::M,
                                          SeriesId::P, SeriesId::I, SeriesId::F};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest window any level may use; HSPEC_WINDOW_BUDGET overrides the default.
int window_budget();

/// Default window for level k. Every basis element beyond it lies in S_k.
int default_window(SeriesId s, int p, int k);
/// Smallest window W with Z_{>W} inside S_k.
int min_window(SeriesId s, int p, int k);

/// gamma_i(G) cap Z, windowed.
std::vector<SparseVec> gamma_cap_Z(const GCtx& ctx, int i);

enum class Named { Q, L, Theta, Lambda, Psi, ThetaT, LambdaT, OmegaT, PsiT, LT, Zr };

std::optional<Named> parse_named(std::string_view s);
/// Generators of a named subgroup of Z at level k (for Zr, k is r).
std::vector<SparseVec> named_subgroup(const GCtx& ctx, Named name, int k);

/// Basis of the smallest x-invariant subspace containing gens.
std::vector<SparseVec> z_normal_closure(const GCtx& ctx, const std::vector<SparseVec>& gens);

struct SeriesLevel {
  SeriesId series;
  int k;
  int p;
  int window;
  std::vector<SparseVec> gens;
  EchelonSpan span;
  int n_k = 0;      // min i with gamma_i(G) <= S_k
  int alpha_k = 0;  // min i with x^{p^i} in S_k
  int m_k = 0;      // min j with c_j^2 in S_k; 0 for odd p

  std::size_t dim() const { return span.dim(); }
  std::size_t codim() const { return span.ambient_dim() - span.dim(); }
};

/// S_k cap Z in the window of ctx. For odd p the P-levels are the M-levels and
/// the I-levels are Theta~ Lambda~ Omega~.
SeriesLevel series_level(const GCtx& ctx, SeriesId s, int k);

long long int_pow(long long b, int e);

}  // namespace hspec
