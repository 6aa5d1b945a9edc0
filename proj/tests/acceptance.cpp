// Runs every check suite and prints one line per acceptance criterion.
// With --strict the exit status is nonzero when any criterion fails.

#include <cstdio>
#include <cstring>
#include <map>
#include <string>
#include <vector>

#include "hspec/suites.hpp"

namespace {

const std::map<int, const char*> kTitles{
    {1, "quotient orders, class and series lengths"},
    {2, "gamma_i cap Z formula"},
    {3, "commutator identities and L_k properties"},
    {4, "G^{2^k} cap Z = L_k Q_k"},
    {5, "Frattini ranks and explicit terms"},
    {6, "embedding homomorphism"},
    {7, "density convergence"},
    {8, "spectrum scans"},
    {9, "odd-p theta push identity"},
    {10, "stability under Z-generators and density mode"},
};

}  // namespace

int main(int argc, char** argv) {
  bool verbose = false, strict = false;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "-v") || !std::strcmp(argv[i], "--verbose")) verbose = true;
    if (!std::strcmp(argv[i], "--strict")) strict = true;
  }

  hspec::SuiteConfig cfg;
  std::vector<hspec::SuiteReport> reports;
  for (const auto& name : hspec::suite_names()) {
    reports.push_back(hspec::run_suite(name, cfg));
    if (verbose) std::printf("# suite %s: %.2f s\n", name.c_str(), reports.back().seconds);
  }

  bool all = true;
  for (const auto& [c, title] : kTitles) {
    std::vector<const hspec::CheckResult*> checks;
    for (const auto& r : reports)
      for (const auto* ch : r.for_criterion(c)) checks.push_back(ch);
    bool pass = !checks.empty();
    long long inst = 0;
    const hspec::CheckResult* bad = nullptr;
    for (const auto* ch : checks) {
      inst += ch->instances;
      if (!ch->pass) {
        pass = false;
        if (!bad) bad = ch;
      }
    }
    all = all && pass;
    std::printf("CRITERION %d: %s  %s (%zu checks, %lld instances)", c, pass ? "PASS" : "FAIL", title, checks.size(),
                inst);
    if (bad) std::printf("  [%s: %s]", bad->name.c_str(), bad->detail.c_str());
    std::printf("\n");
    if (verbose)
      for (const auto* ch : checks) {
        if (ch->seconds > 0.005)
          std::printf("    %s %s: %s [%.2f s]\n", ch->pass ? "ok  " : "FAIL", ch->name.c_str(), ch->detail.c_str(),
                      ch->seconds);
        else
          std::printf("    %s %s: %s\n", ch->pass ? "ok  " : "FAIL", ch->name.c_str(), ch->detail.c_str());
      }
  }
  for (const auto& r : reports)
    for (const auto& ch : r.checks)
      if (ch.criterion == 0 && !ch.pass) {
        all = false;
        std::printf("SUPPORTING CHECK FAILED: %s: %s\n", ch.name.c_str(), ch.detail.c_str());
      }
  std::printf("SUMMARY: %s\n", all ? "all criteria pass" : "some criteria fail");
  return strict && !all ? 1 : 0;
}
