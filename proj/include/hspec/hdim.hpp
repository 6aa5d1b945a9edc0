#pragma once

// Finitely generated subgroups K = <x^{p^l} h, h_1, ..., h_d> and the densities
// log|K_Z S_k : S_k| / log|Z : S_k| along a filtration series.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "hspec/filtser.hpp"
#include "hspec/gsymb.hpp"

namespace hspec {

using Rational = boost::multiprecision::cpp_rational;

struct FgSubgroup {
  int p = 2;
  int window = 0;              // window the normalization ran in
  bool finite = false;         // no generator outside H
  int l = 0;
  GElement xgen;               // x^{p^l} h
  std::vector<GElement> hs;    // h_1, ..., h_d by increasing depth
  std::vector<int> depths;     // i_n: h_n in gamma_{i_n} Z minus gamma_{i_n + 1} Z
  std::vector<std::string> log;

  int d() const { return static_cast<int>(hs.size()); }
  long long q() const { return int_pow(p, l); }
  /// d^2 / p^{2l}, or 0 for a finite subgroup.
  Rational predicted() const;
};

/// Normalizes generators given in ctx. Each in-window generator is cancelled
/// until it is new in its depth class mod p^l or leaves the window.
FgSubgroup normalize(const GCtx& ctx, const std::vector<GElement>& gens);

/// Witness <x^{p^l}, c_1, ..., c_d>.
FgSubgroup witness(const GCtx& ctx, int l, int d);

/// Star images: ordinal j - 1 maps to the image of c*_j in the window of ctx.
std::vector<SparseVec> star_images(const GCtx& ctx, const FgSubgroup& k);
/// Indices j in I (c*_j = h_{n,m}) up to the window of ctx.
std::vector<int> star_indices(const GCtx& ctx, const FgSubgroup& k);

/// Generators of K cap Z = K_Z in the window of ctx.
std::vector<SparseVec> k_cap_z(const GCtx& ctx, const FgSubgroup& k);

/// z*_{a,b} = [c*_a, c*_b].
SparseVec z_star(const GCtx& ctx, const std::vector<SparseVec>& star, int a, int b);
/// B_{r,s}: z*_{i + rq, j + sq} for 1 <= i, j <= q, restricted to a > b and the window.
std::vector<SparseVec> blocks(const GCtx& ctx, const FgSubgroup& k, int r, int s);

enum class DensityMode { Raw, Delta };

struct DensityPoint {
  int k;
  int window;
  long long numerator;
  long long denominator;
  Rational ratio;
  int n_k;
};

struct DensityReport {
  SeriesId series;
  DensityMode mode;
  int p;
  int l;
  int d;
  bool finite;
  std::vector<DensityPoint> points;
  Rational tail;  // mean over the last quartile
  Rational tail_min, tail_max;
  Rational predicted;
  Rational abs_gap;
  /// |ratio - predicted| is non-increasing over the last three levels.
  bool gap_monotone_tail = false;
};

/// Extra Z-generators folded into K_Z before each level (used for stability checks).
struct DensityOptions {
  DensityMode mode = DensityMode::Raw;
  std::vector<SparseVec> extra_z;  // over the ZBasis of the normalization window
};

/// Densities for k = 1..horizon, skipping levels with S_k cap Z = Z. Levels whose window exceeds the
/// normalization window throw BudgetExceeded.
DensityReport density_sequence(const FgSubgroup& k, SeriesId s, int horizon, const DensityOptions& opt = {});

/// Window needed to run density_sequence up to the horizon.
int horizon_window(SeriesId s, int p, int horizon);

struct SpectrumEntry {
  int l;
  int d;
  Rational predicted;
  Rational tail;
  Rational abs_gap;
  bool achieved;
};

struct SpectrumReport {
  int p;
  SeriesId series;
  DensityMode mode;
  int horizon;
  double tolerance;
  std::vector<SpectrumEntry> entries;
  std::vector<Rational> achieved;  // sorted, distinct
};

SpectrumReport spectrum_scan(int p, int l_max, SeriesId s, int horizon, double tolerance,
                             DensityMode mode = DensityMode::Delta);

/// Acceptance tolerance for a series: 0.02 for L and D, 0.1 otherwise.
double default_tolerance(SeriesId s);
/// Default horizon: 60 for L and D; 7 for M, P, F; 7 for I at p = 2 and 4 for odd p.
int default_horizon(SeriesId s, int p);

std::string to_string(const Rational& r);
double to_double(const Rational& r);

}  // namespace hspec
