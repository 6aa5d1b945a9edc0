#pragma once

// Batches of exact checks shared by the acceptance runner and `hspec verify`.

#include <cstdint>
#include <string>
#include <vector>

namespace hspec {

struct CheckResult {
  std::string name;
  int criterion = 0;  // 0 when not tied to a numbered criterion
  bool pass = false;
  long long instances = 0;
  long long failures = 0;
  std::string detail;
  double seconds = 0;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0;

  bool pass() const;
  /// Checks tagged with the given criterion.
  std::vector<const CheckResult*> for_criterion(int c) const;
};

struct SuiteConfig {
  std::uint64_t seed = 1;
  int instances = 1000;            // random instances per identity
  int embedding_samples = 10000;   // per (p, k)
};

/// Quotient structure, embedding homomorphism and series oracles (criteria 1, 6).
SuiteReport run_oracle_suite(const SuiteConfig& cfg);
/// Commutator identities and the L_k identities (criterion 3).
SuiteReport run_identity_suite(const SuiteConfig& cfg);
/// gamma formula, power subgroups and Frattini terms (criteria 2, 4, 5).
SuiteReport run_filtration_suite(const SuiteConfig& cfg);
/// Odd-p theta push identity (criterion 9).
SuiteReport run_appendix_suite(const SuiteConfig& cfg);
/// Density convergence, spectra and stability (criteria 7, 8, 10).
SuiteReport run_convergence_suite(const SuiteConfig& cfg);

/// Names: oracle, identities, filtrations, appendix, convergence.
const std::vector<std::string>& suite_names();
/// Throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace hspec
