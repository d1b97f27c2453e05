// Command-line front end: verification scans, proof-curve emission,
// sharpness tables, randomized falsification, the named example battery,
// and one-off PMF checks. Data goes to stdout (or --output), logs to
// stderr. Exit codes: 0 = pass, 1 = a mathematical assertion failed,
// 2 = usage or IO error.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "logconcave/errors.hpp"
#include "logconcave/numeric.hpp"
#include "logconcave/pmf.hpp"
#include "logconcave/proof_curves.hpp"
#include "logconcave/search.hpp"
#include "logconcave/trunc_geom.hpp"

namespace {

using namespace logconcave;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

// Writes to --output when given, stdout otherwise.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

SupportedPmf load_pmf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open pmf file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidPmfError(std::string("pmf json: parse error: ") + e.what());
  }
  return pmf_from_json(j);
}

int cmd_verify_grid(const GridScanConfig& config, const std::string& output) {
  const auto rows = scan_grid(config);
  OutputTarget out(output);
  write_grid_csv(out.stream(), rows);
  const GridRow* worst = &rows.front();
  bool all_pass = true;
  for (const auto& row : rows) {
    if (row.margin < worst->margin) worst = &row;
    all_pass = all_pass && row.pass;
  }
  std::cerr << "verify-grid: " << rows.size() << " rows, min margin "
            << format_real(worst->margin) << " at n=" << worst->n
            << " p=" << format_real(worst->p) << '\n';
  return all_pass ? kExitPass : kExitViolation;
}

int cmd_curve(const std::string& curve, int n, double x_min, double x_max,
              int points, const std::string& format, const std::string& output) {
  CurveId id;
  if (curve == "g")
    id = CurveId::g;
  else if (curve == "h")
    id = CurveId::h;
  else if (curve == "k")
    id = CurveId::k;
  else if (curve == "phi")
    id = CurveId::phi_n;
  else
    throw Error("unknown curve: " + curve);
  if (id == CurveId::phi_n && n < 1)
    throw Error("--curve phi requires --n >= 1");
  const auto samples = sample_curve(id, x_min, x_max, points, n);
  OutputTarget out(output);
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : samples)
      arr.push_back({{"curve_id", curve_id_name(s.curve)},
                     {"x", s.x},
                     {"value", s.value}});
    out.stream() << arr.dump() << '\n';
  } else {
    out.stream() << "curve_id,x,value\n";
    for (const auto& s : samples)
      out.stream() << curve_id_name(s.curve) << ',' << format_real(s.x) << ','
                   << format_real(s.value) << '\n';
  }
  return kExitPass;
}

int cmd_sharpness(std::vector<std::int64_t> n_list, double lambda,
                  const std::string& format, const std::string& output) {
  if (n_list.empty()) throw Error("--n-list must not be empty");
  std::sort(n_list.begin(), n_list.end());
  const double limit = 1.0 - kInvE;
  struct Row {
    std::int64_t n;
    double value;
    double gap;
  };
  std::vector<Row> rows;
  for (std::int64_t n : n_list) {
    const double value = remark3_limit_curve(n, lambda);
    rows.push_back({n, value, limit - value});
  }
  OutputTarget out(output);
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
      arr.push_back({{"curve_id", curve_id_name(CurveId::remark3)},
                     {"x", static_cast<double>(r.n)},
                     {"value", r.value}});
    out.stream() << arr.dump() << '\n';
  } else {
    out.stream() << "n,value,gap\n";
    for (const auto& r : rows)
      out.stream() << r.n << ',' << format_real(r.value) << ','
                   << format_real(r.gap) << '\n';
  }
  bool ok = true;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].gap < rows[i - 1].gap)) ok = false;
  const double final_bound =
      1.5 / std::log(static_cast<double>(rows.back().n));
  if (!(rows.back().gap < final_bound)) ok = false;
  std::cerr << "sharpness: final gap " << format_real(rows.back().gap)
            << " (bound " << format_real(final_bound) << ") at n=" << rows.back().n
            << (ok ? ", monotone" : ", MONOTONICITY OR BOUND VIOLATED") << '\n';
  return ok ? kExitPass : kExitViolation;
}

int cmd_search(const SearchConfig& config, const std::string& output) {
  const auto violations = falsify_feige(config);
  OutputTarget out(output);
  for (const auto& v : violations)
    out.stream() << violation_to_json(v).dump() << '\n';
  std::cerr << "search: rng=" << kRngAlgorithm << " seed=" << config.seed
            << " trials=" << config.trials << " violations=" << violations.size()
            << '\n';
  return violations.empty() ? kExitPass : kExitViolation;
}

int cmd_examples(const std::string& output) {
  OutputTarget out(output);
  std::ostream& os = out.stream();
  for (int n : {1, 2, 5, 10, 20, 30}) {
    const double prob = feige_iid_example(n);
    os << "iid n=" << n << ": P(X < E[X]+1) = " << format_real(prob)
       << "  (closed form (1 - 1/(n+1))^n, decreasing toward 1/e)\n";
  }
  const FeigeReport teicher = teicher_counterexample();
  const SupportedPmf teicher_pmf(0, {1.0, 5.0, 12.5});
  const double teicher_le =
      prob_below(teicher_pmf, std::floor(teicher.mean) + 1.0);
  os << "teicher: truncated Poisson(5) on {0,1,2}: mean = "
     << format_real(teicher.mean) << ", P(X <= E[X]) = " << format_real(teicher_le)
     << " < 1/e, strict check prob = " << format_real(teicher.prob) << "\n";
  const FeigeReport corollary = corollary_half_counterexample();
  os << "corollary: geometric on {1..8} with mean 6: P(X <= 6) = "
     << format_real(corollary.prob) << "  (below 1/2, above 1/e)\n";
  const FeigeReport two_point = two_point_example(100, 0.98);
  os << "two-point: P(X=0)=0.02, P(X=100)=0.98: P(X < E[X]+1) = "
     << format_real(two_point.prob) << " < 1/e  (gap support, not log-concave)\n";
  return kExitPass;
}

int cmd_convolve(const std::string& path_a, const std::string& path_b,
                 const std::string& output) {
  const SupportedPmf result = convolve(load_pmf(path_a), load_pmf(path_b));
  OutputTarget out(output);
  out.stream() << pmf_to_json(result).dump() << '\n';
  return kExitPass;
}

int cmd_check_file(const std::string& path, double tol,
                   const std::string& output) {
  const SupportedPmf pmf = load_pmf(path);
  const FeigeReport report = feige_check(pmf, tol);
  nlohmann::json j = report_to_json(report);
  j["log_concave"] = is_log_concave(pmf, tol);
  OutputTarget out(output);
  out.stream() << j.dump() << '\n';
  return report.satisfied ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Small-deviation bound P(X < E[X]+1) >= 1/e for discrete log-concave "
      "distributions: verification scans, proof curves, counterexamples."};
  app.require_subcommand(1);
  std::string output;

  // verify-grid
  GridScanConfig grid;
  auto* verify = app.add_subcommand(
      "verify-grid", "Check the bound over the truncated geometric family");
  verify->add_option("--n-max", grid.n_max, "Largest support length")
      ->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--p-min", grid.p_min, "Smallest ratio parameter")
      ->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--p-max", grid.p_max, "Largest ratio parameter")
      ->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--p-points", grid.p_points, "Grid points in p")
      ->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--tol", grid.tol, "Margin tolerance")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  verify->add_option("--output", output, "Write CSV here instead of stdout");
  // Test-only failure-path hook, hidden from help.
  verify->add_option("--corrupt-closed-form", grid.corrupt_prob_delta)
      ->group("");

  // curve
  std::string curve_name;
  int phi_order = 0;
  double x_min = 1e-2;
  double x_max = 1e2;
  int points = 200;
  std::string format = "csv";
  auto* curve = app.add_subcommand("curve", "Emit proof-curve samples");
  curve->add_option("--curve", curve_name, "One of g, h, k, phi")
      ->required()->check(CLI::IsMember({"g", "h", "k", "phi"}));
  curve->add_option("--n", phi_order, "Order for phi");
  curve->add_option("--x-min", x_min)->check(CLI::PositiveNumber)
      ->capture_default_str();
  curve->add_option("--x-max", x_max)->check(CLI::PositiveNumber)
      ->capture_default_str();
  curve->add_option("--points", points)->check(CLI::PositiveNumber)
      ->capture_default_str();
  curve->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  curve->add_option("--output", output, "Write here instead of stdout");

  // sharpness
  std::vector<std::int64_t> n_list = {1000, 10000, 100000, 1000000, 10000000};
  double lambda = 0.0;
  auto* sharp = app.add_subcommand(
      "sharpness", "Convergence of the extremal family toward 1 - 1/e");
  sharp->add_option("--n-list", n_list, "Support lengths")
      ->delimiter(',')->expected(1, -1);
  sharp->add_option("--lambda", lambda, "Tail offset")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  sharp->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sharp->add_option("--output", output, "Write here instead of stdout");

  // search
  SearchConfig search_config;
  auto* search = app.add_subcommand(
      "search", "Randomized falsification over log-concave PMFs");
  search->add_option("--trials", search_config.trials, "Random PMFs to draw")
      ->check(CLI::PositiveNumber)->capture_default_str();
  search->add_option("--seed", search_config.seed, "RNG seed")
      ->capture_default_str();
  search->add_option("--max-support", search_config.max_support,
                     "Largest support length")
      ->check(CLI::PositiveNumber)->capture_default_str();
  search->add_option("--scale", search_config.log_weight_scale,
                     "Amplitude of the random concave log-weights")
      ->check(CLI::PositiveNumber)->capture_default_str();
  search->add_option("--output", output, "Violations (JSON lines) go here");

  // examples
  auto* examples = app.add_subcommand(
      "examples", "Run the named example and counterexample battery");
  examples->add_option("--output", output, "Write here instead of stdout");

  // convolve
  std::string pmf_a;
  std::string pmf_b;
  auto* conv = app.add_subcommand("convolve", "Convolve two PMF JSON files");
  conv->add_option("--pmf-a", pmf_a, "First PMF file")->required();
  conv->add_option("--pmf-b", pmf_b, "Second PMF file")->required();
  conv->add_option("--output", output, "Write here instead of stdout");

  // check-file
  std::string pmf_path;
  double check_tol = 1e-9;
  auto* check = app.add_subcommand("check-file",
                                   "Run the deviation check on a PMF file");
  check->add_option("--pmf", pmf_path, "PMF JSON file")->required();
  check->add_option("--tol", check_tol, "Report tolerance")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  check->add_option("--output", output, "Write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;  // help/version exit clean
  }

  try {
    if (verify->parsed()) return cmd_verify_grid(grid, output);
    if (curve->parsed())
      return cmd_curve(curve_name, phi_order, x_min, x_max, points, format,
                       output);
    if (sharp->parsed()) return cmd_sharpness(n_list, lambda, format, output);
    if (search->parsed()) return cmd_search(search_config, output);
    if (examples->parsed()) return cmd_examples(output);
    if (conv->parsed()) return cmd_convolve(pmf_a, pmf_b, output);
    if (check->parsed()) return cmd_check_file(pmf_path, check_tol, output);
  } catch (const CheckFailedError& e) {
    std::cerr << "assertion failed: " << e.what() << '\n';
    return kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
