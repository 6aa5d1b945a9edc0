// hspec: quotient data, filtration levels, densities and check suites from the command line.
//
// Exit codes: 0 ok, 1 usage, 2 word parse error, 3 budget exceeded, 4 verification failure.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hspec/filtser.hpp"
#include "hspec/gfin.hpp"
#include "hspec/hdim.hpp"
#include "hspec/suites.hpp"
#include "hspec/word.hpp"

using json = nlohmann::ordered_json;
using namespace hspec;

namespace {

constexpr const char* kSchema = "hspec-report/1";
constexpr const char* kCsvHeader = "series,k,window,numerator,denominator,ratio_num,ratio_den,ratio_dec";

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kBudget = 3, kVerify = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json rational(const Rational& r) {
  return {{"num", boost::multiprecision::numerator(r).str()},
          {"den", boost::multiprecision::denominator(r).str()},
          {"dec", to_double(r)}};
}

const char* mode_name(DensityMode m) { return m == DensityMode::Raw ? "raw" : "delta"; }

SeriesId series_arg(const std::string& s) {
  auto id = parse_series(s);
  if (!id) throw UsageError("unknown series '" + s + "' (expected L, D, M, P, I or F)");
  return *id;
}

DensityMode mode_arg(const std::string& s) {
  if (s == "raw") return DensityMode::Raw;
  if (s == "delta") return DensityMode::Delta;
  throw UsageError("unknown mode '" + s + "' (expected raw or delta)");
}

void check_prime(int p) {
  if (!is_prime(p)) throw UsageError("p must be prime");
}

// Writes to a file, or to stdout for "" and "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

json envelope(const std::string& command, json config) {
  config["window_budget"] = window_budget();
  return {{"schema", kSchema}, {"command", command}, {"config", std::move(config)}};
}

std::string csv_points(const DensityReport& r) {
  std::ostringstream os;
  os.precision(12);
  os << kCsvHeader << "\n";
  for (const auto& pt : r.points) {
    os << series_name(r.series) << "," << pt.k << "," << pt.window << "," << pt.numerator << "," << pt.denominator
       << "," << boost::multiprecision::numerator(pt.ratio) << "," << boost::multiprecision::denominator(pt.ratio)
       << "," << to_double(pt.ratio) << "\n";
  }
  return os.str();
}

json density_json(const DensityReport& r) {
  json pts = json::array();
  for (const auto& pt : r.points)
    pts.push_back({{"k", pt.k},
                   {"window", pt.window},
                   {"numerator", pt.numerator},
                   {"denominator", pt.denominator},
                   {"ratio", rational(pt.ratio)},
                   {"n_k", pt.n_k}});
  return {{"series", series_name(r.series)},
          {"mode", mode_name(r.mode)},
          {"p", r.p},
          {"l", r.l},
          {"d", r.d},
          {"finite", r.finite},
          {"predicted", rational(r.predicted)},
          {"tail", rational(r.tail)},
          {"tail_min", rational(r.tail_min)},
          {"tail_max", rational(r.tail_max)},
          {"abs_gap", rational(r.abs_gap)},
          {"gap_monotone_tail", r.gap_monotone_tail},
          {"points", std::move(pts)}};
}

int cmd_quotient_info(int p, int k, const std::string& out) {
  check_prime(p);
  if (k < 1) throw UsageError("k must be positive");
  FinCtx fin(p, k);
  auto len = [](const std::vector<InducedSequence>& s) { return static_cast<long long>(s.size()) - 1; };
  json j = envelope("quotient-info", {{"p", p}, {"k", k}});
  j["result"] = {{"log_order", fin.log_order()},
                 {"z_rank", fin.zb().size()},
                 {"class", len(lower_central(fin))},
                 {"lower_p_length", len(lower_p(fin))},
                 {"dimension_length", len(jennings(fin))},
                 {"frattini_length", len(frattini(fin))}};
  emit(out, j.dump(2) + "\n");
  return kOk;
}

int cmd_series(int p, const std::string& s, int max_level, const std::string& out) {
  check_prime(p);
  SeriesId id = series_arg(s);
  if (max_level < 1) throw UsageError("max-level must be positive");
  std::ostringstream os;
  os << "series,k,window,dim,codim,n_k,alpha_k,m_k\n";
  for (int k = 1; k <= max_level; ++k) {
    int w = default_window(id, p, k);
    if (w > window_budget()) throw BudgetExceeded("level " + std::to_string(k) + " needs window " + std::to_string(w));
    GCtx ctx(p, w);
    SeriesLevel lv = series_level(ctx, id, k);
    os << series_name(id) << "," << k << "," << w << "," << lv.dim() << "," << lv.codim() << "," << lv.n_k << ","
       << lv.alpha_k << "," << lv.m_k << "\n";
  }
  emit(out, os.str());
  return kOk;
}

struct HdimArgs {
  int p = 2;
  std::string series = "L";
  std::string gens;
  std::optional<int> horizon;
  std::string mode;  // delta for L and D, raw otherwise
  std::optional<int> window;
  std::optional<double> tolerance;
  std::string json_out;
  std::string csv_out;
};

int cmd_hdim(const HdimArgs& a) {
  check_prime(a.p);
  SeriesId id = series_arg(a.series);
  DensityMode mode = a.mode.empty() ? (id == SeriesId::L || id == SeriesId::D ? DensityMode::Delta : DensityMode::Raw)
                                     : mode_arg(a.mode);
  int horizon = a.horizon.value_or(default_horizon(id, a.p));
  if (horizon < 1) throw UsageError("horizon must be positive");
  double tol = a.tolerance.value_or(default_tolerance(id));
  auto words = parse_word_list(a.gens);
  int w = a.window.value_or(horizon_window(id, a.p, horizon));
  if (w > window_budget()) throw BudgetExceeded("window " + std::to_string(w) + " exceeds budget");
  GCtx ctx(a.p, w);
  std::vector<GElement> gens;
  json printed = json::array();
  for (const auto& wd : words) {
    gens.push_back(evaluate(ctx, wd));
    printed.push_back(to_string(wd));
  }
  FgSubgroup k = normalize(ctx, gens);
  DensityReport r = density_sequence(k, id, horizon, {mode, {}});

  json j = envelope("hdim", {{"p", a.p},
                             {"series", series_name(id)},
                             {"gens", printed},
                             {"horizon", horizon},
                             {"mode", mode_name(mode)},
                             {"window", w},
                             {"tolerance", tol}});
  json norm = {{"l", k.l}, {"d", k.d()}, {"finite", k.finite}, {"xgen", to_string(ctx, k.xgen)}};
  json hs = json::array();
  for (std::size_t i = 0; i < k.hs.size(); ++i) hs.push_back({{"h", to_string(ctx, k.hs[i])}, {"depth", k.depths[i]}});
  norm["hs"] = std::move(hs);
  norm["log"] = k.log;
  j["normalized"] = std::move(norm);
  j["result"] = density_json(r);
  j["result"]["within_tolerance"] = to_double(r.abs_gap) <= tol;
  emit(a.json_out, j.dump(2) + "\n");
  if (!a.csv_out.empty()) emit(a.csv_out, csv_points(r));
  return kOk;
}

int cmd_spectrum(int p, int lmax, const std::string& s, std::optional<int> horizon_opt, const std::string& m,
                 std::optional<double> tol_opt, const std::string& out) {
  check_prime(p);
  SeriesId id = series_arg(s);
  DensityMode mode = mode_arg(m);
  if (lmax < 0 || lmax > 3) throw UsageError("lmax must be between 0 and 3");
  int horizon = horizon_opt.value_or(default_horizon(id, p));
  double tol = tol_opt.value_or(default_tolerance(id));
  SpectrumReport r = spectrum_scan(p, lmax, id, horizon, tol, mode);
  json j = envelope("spectrum", {{"p", p},
                                 {"lmax", lmax},
                                 {"series", series_name(id)},
                                 {"horizon", horizon},
                                 {"mode", mode_name(mode)},
                                 {"tolerance", tol}});
  json achieved = json::array(), entries = json::array();
  for (const auto& v : r.achieved) achieved.push_back(rational(v));
  for (const auto& e : r.entries)
    entries.push_back({{"l", e.l},
                       {"d", e.d},
                       {"witness", "x^" + std::to_string(int_pow(p, e.l)) + (e.d ? "; c1..c" + std::to_string(e.d) : "")},
                       {"predicted", rational(e.predicted)},
                       {"tail", rational(e.tail)},
                       {"abs_gap", rational(e.abs_gap)},
                       {"achieved", e.achieved}});
  j["result"] = {{"achieved", std::move(achieved)}, {"entries", std::move(entries)}};
  emit(out, j.dump(2) + "\n");
  return kOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int instances, const std::string& out) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = suite_names();
  } else {
    const auto& known = suite_names();
    if (std::find(known.begin(), known.end(), suite) == known.end()) throw UsageError("unknown suite '" + suite + "'");
    names.push_back(suite);
  }
  SuiteConfig cfg;
  cfg.seed = seed;
  cfg.instances = instances;
  json j = envelope("verify", {{"suite", suite}, {"seed", seed}, {"instances", instances}});
  json suites = json::array();
  bool pass = true;
  for (const auto& n : names) {
    SuiteReport r = run_suite(n, cfg);
    json checks = json::array();
    for (const auto& c : r.checks)
      checks.push_back({{"name", c.name},
                        {"criterion", c.criterion},
                        {"pass", c.pass},
                        {"instances", c.instances},
                        {"failures", c.failures},
                        {"detail", c.detail}});
    suites.push_back({{"suite", n}, {"pass", r.pass()}, {"seconds", r.seconds}, {"checks", std::move(checks)}});
    pass = pass && r.pass();
  }
  j["result"] = {{"pass", pass}, {"suites", std::move(suites)}};
  emit(out, j.dump(2) + "\n");
  return pass ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finitely generated Hausdorff spectra: finite quotients, filtrations and densities"};
  app.require_subcommand(1);
  std::optional<int> budget;
  app.add_option("--window-budget", budget, "Largest window a computation may use (default: $HSPEC_WINDOW_BUDGET)")
      ->check(CLI::PositiveNumber);

  int p = 2, k = 1;
  std::string out;

  auto* qi = app.add_subcommand("quotient-info", "Order, class and series lengths of the finite quotient G_k");
  qi->add_option("--p", p, "Prime")->required();
  qi->add_option("--k", k, "Level")->required();
  qi->add_option("--out", out, "JSON output file (default stdout)");

  std::string series = "L";
  int max_level = 1;
  auto* se = app.add_subcommand("series", "Per-level dimensions and markers of a filtration, as CSV");
  se->add_option("--p", p, "Prime")->required();
  se->add_option("--series", series, "L, D, M, P, I or F")->required();
  se->add_option("--max-level", max_level, "Last level")->required();
  se->add_option("--out", out, "CSV output file (default stdout)");

  HdimArgs ha;
  auto* hd = app.add_subcommand("hdim", "Density sequence of a finitely generated subgroup");
  hd->add_option("--p", ha.p, "Prime")->required();
  hd->add_option("--series", ha.series, "L, D, M, P, I or F")->required();
  hd->add_option("--gens", ha.gens, "Generators separated by ';', e.g. \"x^2; y\"")->required();
  hd->add_option("--horizon", ha.horizon, "Number of levels");
  hd->add_option("--mode", ha.mode, "raw or delta (default: delta for L and D, raw otherwise)");
  hd->add_option("--window", ha.window, "Normalization window (default: enough for the horizon)");
  hd->add_option("--tolerance", ha.tolerance, "Gap tolerance reported as within_tolerance");
  hd->add_option("--json", ha.json_out, "JSON output file (default stdout)");
  hd->add_option("--csv", ha.csv_out, "CSV file for the density points ('-' for stdout)");

  int lmax = 1;
  std::string sp_series = "L", sp_mode = "delta";
  std::optional<int> sp_horizon;
  std::optional<double> sp_tol;
  auto* sp = app.add_subcommand("spectrum", "Densities of the witnesses <x^{p^l}, c_1, ..., c_d>");
  sp->add_option("--p", p, "Prime")->required();
  sp->add_option("--lmax", lmax, "Largest l")->required();
  sp->add_option("--series", sp_series, "Series")->capture_default_str();
  sp->add_option("--horizon", sp_horizon, "Number of levels");
  sp->add_option("--mode", sp_mode, "raw or delta")->capture_default_str();
  sp->add_option("--tolerance", sp_tol, "Gap tolerance for an achieved value");
  sp->add_option("--out", out, "JSON output file (default stdout)");

  std::string suite;
  std::uint64_t seed = 1;
  int instances = 1000;
  auto* ve = app.add_subcommand("verify", "Run a check suite");
  ve->add_option("--suite", suite, "oracle, identities, filtrations, appendix, convergence or all")->required();
  ve->add_option("--seed", seed, "Seed for randomized checks")->capture_default_str();
  ve->add_option("--instances", instances, "Random instances per identity")->capture_default_str()->check(
      CLI::PositiveNumber);
  ve->add_option("--out", out, "JSON output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  if (budget) setenv("HSPEC_WINDOW_BUDGET", std::to_string(*budget).c_str(), 1);

  try {
    if (*qi) return cmd_quotient_info(p, k, out);
    if (*se) return cmd_series(p, series, max_level, out);
    if (*hd) return cmd_hdim(ha);
    if (*sp) return cmd_spectrum(p, lmax, sp_series, sp_horizon, sp_mode, sp_tol, out);
    if (*ve) return cmd_verify(suite, seed, instances, out);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const GuardExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const WindowOverflow& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
