// Acceptance suite: one line per criterion, wall-clock timed, exit code 0
// only if every criterion passes. Criterion 8 drives the CLI binary, whose
// path must be passed as argv[1].

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "logconcave/errors.hpp"
#include "logconcave/numeric.hpp"
#include "logconcave/parallel.hpp"
#include "logconcave/pmf.hpp"
#include "logconcave/proof_curves.hpp"
#include "logconcave/rng.hpp"
#include "logconcave/search.hpp"
#include "logconcave/trunc_geom.hpp"
#include "oracles.hpp"

using namespace logconcave;

namespace {

std::string g_cli_path;

struct Failures {
  std::vector<std::string> messages;
  int checks = 0;

  void require(bool ok, const std::string& message) {
    ++checks;
    if (!ok && messages.size() < 8) messages.push_back(message);
  }
};

double rel_diff(double a, double b) {
  const double scale = std::fmax(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

std::string fmt(double v) { return format_real(v); }

// --- criterion 1: closed forms vs brute force over the family grid -------

void criterion_extremal_grid(Failures& f) {
  std::vector<double> ps = log_spaced(1e-2, 1e2, 60);
  ps.push_back(1.0);  // uniform branch
  for (std::int64_t n = 1; n <= 200; ++n) {
    for (double p : ps) {
      const TruncGeom tg{1, n, p};
      const double prob = feige_prob_closed_form(tg);
      f.require(prob >= kInvE - 1e-12,
                "closed-form prob " + fmt(prob) + " below 1/e at n=" +
                    std::to_string(n) + " p=" + fmt(p));
      const SupportedPmf pmf = materialize(tg);
      const FeigeReport report = feige_check(pmf);
      f.require(rel_diff(prob, report.prob) <= 1e-10,
                "closed vs materialized prob mismatch at n=" +
                    std::to_string(n) + " p=" + fmt(p) + ": " + fmt(prob) +
                    " vs " + fmt(report.prob));
      f.require(rel_diff(mean_closed_form(tg), report.mean) <= 1e-10,
                "closed vs materialized mean mismatch at n=" +
                    std::to_string(n) + " p=" + fmt(p));
    }
  }
}

// --- criterion 2: scalar inequality chain ---------------------------------

void criterion_inequality_chain(Failures& f) {
  std::vector<double> xs;
  for (double x : log_spaced(1e-6, 1e6, 500))
    if (std::fabs(x - 1.0) >= 1e-6) xs.push_back(x);
  for (double x : xs) {
    f.require(curve_g(x) >= kInvE - 1e-9, "g(" + fmt(x) + ") below 1/e");
    f.require(curve_h(x) >= 1.0 - 1e-12, "h(" + fmt(x) + ") below 1");
    f.require(curve_k(x) >= -1e-12, "k(" + fmt(x) + ") below 0");
    double prev = phi_n(x, 1);
    for (int n = 2; n <= 100; ++n) {
      const double cur = phi_n(x, n);
      if (!(prev >= cur - 1e-9)) {
        f.require(false, "phi not monotone in n at x=" + fmt(x) +
                             " n=" + std::to_string(n));
        break;
      }
      ++f.checks;
      prev = cur;
    }
    f.require(prev >= curve_g(x) - 1e-9,
              "phi_100 fell below g at x=" + fmt(x));
  }
  f.require(std::fabs(curve_g(1e8) - kInvE) < 2e-2,
            "g(1e8) not within 2e-2 of 1/e: " + fmt(curve_g(1e8)));
}

// --- criterion 3: sharpness ------------------------------------------------

void criterion_sharpness(Failures& f) {
  const double limit = 1.0 - kInvE;
  double prev_gap = 1e300;
  for (std::int64_t n : {1000, 10000, 100000, 1000000, 10000000}) {
    const double value = remark3_limit_curve(n, 0.0);
    const double gap = limit - value;
    f.require(gap > 0.0 && gap < 1.5 / std::log(static_cast<double>(n)),
              "sharpness gap " + fmt(gap) + " out of range at n=" +
                  std::to_string(n));
    f.require(gap < prev_gap, "sharpness gap not shrinking at n=" +
                                  std::to_string(n));
    prev_gap = gap;
  }
  for (std::int64_t n : {2, 5, 10, 100, 1000, 10000}) {
    const TruncGeom tg = remark3_family(n);
    const SupportedPmf pmf = materialize(tg);
    const double mu = mean_closed_form(tg);
    for (double t : {1.0, 2.0, 5.0}) {
      const auto [lo, hi] = tail_bracket(tg, t);
      const double exact = 1.0 - prob_below(pmf, mu + t);
      f.require(lo <= exact + 1e-9 && exact <= hi + 1e-9,
                "tail bracket [" + fmt(lo) + ", " + fmt(hi) +
                    "] misses exact " + fmt(exact) + " at n=" +
                    std::to_string(n) + " t=" + fmt(t));
    }
  }
}

// --- criterion 4: counterexample battery -----------------------------------

void criterion_battery(Failures& f) {
  try {
    // Teicher: P(X <= E[X]) = 12/37 < 1/e, strictly, with visible slack.
    const SupportedPmf teicher(0, {1.0, 5.0, 12.5});
    const double p_le = prob_below(teicher, 2.0);  // atoms 0 and 1
    f.require(std::fabs(p_le - 12.0 / 37) <= 1e-12,
              "teicher P(X <= E[X]) != 12/37: " + fmt(p_le));
    f.require(p_le < kInvE - 1e-3, "teicher slack below 1/e too small");
    f.require(teicher_counterexample().satisfied,
              "teicher strict check must still pass");

    // Solved geometric family with integer mean 6.
    const double p_star = solve_p_for_mean(1, 8, 6.0);
    const SupportedPmf family = materialize(TruncGeom{1, 8, p_star});
    f.require(std::fabs(mean(family) - 6.0) < 1e-10,
              "solved family mean not 6: " + fmt(mean(family)));
    const FeigeReport corollary = corollary_half_counterexample();
    f.require(corollary.prob < 0.5 - 1e-3, "P(X <= 6) not below 1/2");
    f.require(corollary.prob >= kInvE + 1e-3, "P(X <= 6) not above 1/e");

    // Two-point gap distribution.
    const FeigeReport two_point = two_point_example(100, 0.98);
    f.require(std::fabs(two_point.prob - 0.02) <= 1e-12,
              "two-point prob != 0.02: " + fmt(two_point.prob));
    f.require(two_point.prob < kInvE - 1e-3, "two-point slack too small");
    std::vector<double> w(101, 0.0);
    w.front() = 0.02;
    w.back() = 0.98;
    f.require(!is_log_concave(SupportedPmf(0, std::move(w))),
              "two-point pmf must not be log-concave");
  } catch (const std::exception& e) {
    f.require(false, std::string("battery threw: ") + e.what());
  }
}

// --- criterion 5: i.i.d. example -------------------------------------------

void criterion_iid(Failures& f) {
  double prev = 1.0;
  double last = 1.0;
  for (int n = 1; n <= 30; ++n) {
    const double prob = feige_iid_example(n);  // throws beyond 1e-12 mismatch
    const double closed = std::pow(1.0 - 1.0 / (n + 1), n);
    f.require(std::fabs(prob - closed) <= 1e-12,
              "iid closed-form mismatch at n=" + std::to_string(n));
    f.require(prob < prev, "iid sequence not decreasing at n=" + std::to_string(n));
    prev = prob;
    last = prob;
  }
  f.require(std::fabs(last - kInvE) < 2e-2,
            "iid value at n=30 not within 2e-2 of 1/e: " + fmt(last));
}

// --- criterion 6: randomized property suite --------------------------------

void criterion_property_suite(Failures& f) {
  constexpr std::uint64_t kTrials = 100000;
  constexpr std::uint64_t kSeed = 20260811;
  std::vector<std::uint8_t> generator_ok(kTrials, 0);
  std::vector<std::uint8_t> feige_ok(kTrials, 0);
  parallel_for(kTrials, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      SplitMix64 rng(SplitMix64::stream_seed(kSeed, i));
      const SupportedPmf pmf = random_log_concave(rng, 50, 1.0);
      generator_ok[i] = is_log_concave(pmf, 1e-9) ? 1 : 0;
      feige_ok[i] = feige_check(pmf, 1e-9).satisfied ? 1 : 0;
    }
  });
  std::size_t bad_gen = 0;
  std::size_t bad_feige = 0;
  for (std::uint64_t i = 0; i < kTrials; ++i) {
    if (!generator_ok[i]) ++bad_gen;
    if (!feige_ok[i]) ++bad_feige;
  }
  f.require(bad_gen == 0, std::to_string(bad_gen) +
                              " generator outputs failed log-concavity");
  f.require(bad_feige == 0,
            std::to_string(bad_feige) + " random PMFs violated the bound");

  constexpr std::uint64_t kPairs = 10000;
  std::vector<std::uint8_t> closure_ok(kPairs, 0);
  parallel_for(kPairs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      SplitMix64 rng(SplitMix64::stream_seed(kSeed ^ 0xabcdef, i));
      const SupportedPmf a = random_log_concave(rng, 50, 1.0);
      const SupportedPmf b = random_log_concave(rng, 50, 1.0);
      closure_ok[i] = is_log_concave(convolve(a, b), 1e-9) ? 1 : 0;
    }
  });
  std::size_t bad_closure = 0;
  for (std::uint64_t i = 0; i < kPairs; ++i)
    if (!closure_ok[i]) ++bad_closure;
  f.require(bad_closure == 0,
            std::to_string(bad_closure) + " convolutions failed log-concavity");

  // The harness itself, convolution mixes included.
  SearchConfig config;
  config.trials = kTrials;
  config.max_support = 50;
  config.seed = kSeed;
  const auto violations = falsify_feige(config);
  f.require(violations.empty(), std::to_string(violations.size()) +
                                    " falsification violations reported");

  // Monte Carlo cross-checks on 20 seeded sum-of-PMF cases.
  for (std::uint64_t case_id = 0; case_id < 20; ++case_id) {
    SplitMix64 rng(SplitMix64::stream_seed(kSeed ^ 0x5eed, case_id));
    const std::uint64_t count = 2 + rng.next_below(3);
    std::vector<SupportedPmf> pmfs;
    SupportedPmf sum = random_log_concave(rng, 12, 1.0);
    pmfs.push_back(sum);
    for (std::uint64_t c = 1; c < count; ++c) {
      pmfs.push_back(random_log_concave(rng, 12, 1.0));
      sum = convolve(sum, pmfs.back());
    }
    const double exact = prob_below(sum, snap_to_integer(mean(sum)) + 1.0);
    constexpr std::uint64_t kSamples = 100000;
    const double estimate = monte_carlo_check(pmfs, kSamples, case_id + 1);
    const double se =
        std::sqrt(exact * (1.0 - exact) / static_cast<double>(kSamples));
    f.require(std::fabs(estimate - exact) <= 4.0 * se + 1e-9,
              "monte carlo case " + std::to_string(case_id) + ": estimate " +
                  fmt(estimate) + " vs exact " + fmt(exact) + " (se " +
                  fmt(se) + ")");
  }
}

// --- criterion 7: discretization bridge ------------------------------------

void criterion_bridge(Failures& f) {
  const std::vector<std::int64_t> ns = {100, 1000, 10000};
  const std::vector<std::pair<std::string, std::function<double(double)>>> fs = {
      {"constant", [](double) { return 1.0; }},
      {"exp(-3t)", [](double t) { return std::exp(-3.0 * t); }},
      {"exp(-10(t-1/2)^2)",
       [](double t) { return std::exp(-10.0 * (t - 0.5) * (t - 0.5)); }}};
  for (const auto& [name, density] : fs) {
    const auto values = grunbaum_bridge(density, ns);
    const double quad = oracles::continuous_stats(density).prob_at_most_mean;
    double prev_err = 1e300;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      f.require(values[i] >= kInvE - 1e-9,
                name + ": bridge value below 1/e at n=" + std::to_string(ns[i]));
      const double err = std::fabs(values[i] - quad);
      f.require(err < prev_err,
                name + ": bridge error not shrinking at n=" + std::to_string(ns[i]));
      prev_err = err;
      if (name == "constant")
        f.require(std::fabs(values[i] - 0.5) <= 2.0 / static_cast<double>(ns[i]),
                  "uniform bridge value " + fmt(values[i]) +
                      " not within 2/n of 1/2 at n=" + std::to_string(ns[i]));
    }
  }
}

// --- criterion 8: CLI contract ---------------------------------------------

int run_cli(const std::string& args) {
  const std::string cmd = g_cli_path + " " + args;
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void criterion_cli(Failures& f) {
  if (g_cli_path.empty()) {
    f.require(false, "CLI path not supplied (pass it as argv[1])");
    return;
  }
  const std::string dir = "acceptance_cli_tmp";
  std::system(("mkdir -p " + dir).c_str());

  f.require(run_cli("verify-grid --output " + dir + "/grid_a.csv 2>/dev/null") == 0,
            "verify-grid with defaults must exit 0");
  f.require(run_cli("verify-grid --corrupt-closed-form -0.05 --output " + dir +
                    "/grid_corrupt.csv 2>/dev/null") == 1,
            "verify-grid with a corrupted closed form must exit 1");

  // Malformed PMF file: weight sum far from 1.
  {
    std::ofstream bad(dir + "/bad_pmf.json");
    bad << "{\"offset\": 0, \"weights\": [0.25, 0.25]}\n";
  }
  f.require(run_cli("check-file --pmf " + dir + "/bad_pmf.json 2>" + dir +
                    "/bad_pmf.err >/dev/null") == 2,
            "check-file on a malformed pmf must exit 2");
  const std::string err_text = slurp(dir + "/bad_pmf.err");
  f.require(err_text.find("weight sum") != std::string::npos,
            "check-file error must name the normalization invariant");

  {
    std::ofstream good(dir + "/point_mass.json");
    good << "{\"offset\": 5, \"weights\": [1.0]}\n";
  }
  f.require(run_cli("check-file --pmf " + dir + "/point_mass.json --output " +
                    dir + "/point_mass.out 2>/dev/null") == 0,
            "check-file on a point mass must exit 0");

  // Byte-identical reruns with identical flags and seeds.
  f.require(run_cli("verify-grid --output " + dir + "/grid_b.csv 2>/dev/null") == 0,
            "verify-grid rerun must exit 0");
  f.require(slurp(dir + "/grid_a.csv") == slurp(dir + "/grid_b.csv") &&
                !slurp(dir + "/grid_a.csv").empty(),
            "verify-grid outputs must be byte-identical across runs");
  f.require(run_cli("search --trials 3000 --seed 99 --output " + dir +
                    "/search_a.jsonl 2>/dev/null") == 0,
            "search with log-concave inputs must exit 0");
  f.require(run_cli("search --trials 3000 --seed 99 --output " + dir +
                    "/search_b.jsonl 2>/dev/null") == 0,
            "search rerun must exit 0");
  f.require(slurp(dir + "/search_a.jsonl") == slurp(dir + "/search_b.jsonl"),
            "search outputs must be byte-identical for identical seeds");
  f.require(slurp(dir + "/search_a.jsonl").empty(),
            "search violation file must be empty on success");
  // Output must not depend on the worker count.
  f.require(std::system(("LOGCONCAVE_THREADS=1 " + g_cli_path +
                         " verify-grid --output " + dir +
                         "/grid_single.csv 2>/dev/null")
                            .c_str()) == 0 &&
                slurp(dir + "/grid_single.csv") == slurp(dir + "/grid_a.csv"),
            "verify-grid output must be identical with LOGCONCAVE_THREADS=1");

  // Usage errors.
  f.require(run_cli("verify-grid --p-points 0 2>/dev/null >/dev/null") == 2,
            "verify-grid --p-points 0 must exit 2");
  f.require(run_cli("curve --curve phi 2>/dev/null >/dev/null") == 2,
            "curve phi without --n must exit 2");
  f.require(run_cli("curve --curve q 2>/dev/null >/dev/null") == 2,
            "unknown curve must exit 2");
  f.require(run_cli("verify-grid --no-such-flag 2>/dev/null >/dev/null") == 2,
            "unknown flag must exit 2");
  f.require(run_cli("2>/dev/null >/dev/null") == 2,
            "missing subcommand must exit 2");

  // Round trip: a PMF emitted by convolve is accepted by check-file.
  {
    std::ofstream bern(dir + "/bern.json");
    bern << "{\"offset\": 0, \"weights\": [0.5, 0.5]}\n";
  }
  f.require(run_cli("convolve --pmf-a " + dir + "/bern.json --pmf-b " + dir +
                    "/bern.json --output " + dir + "/binom.json 2>/dev/null") == 0,
            "convolve must exit 0");
  f.require(run_cli("check-file --pmf " + dir + "/binom.json 2>/dev/null >/dev/null") == 0,
            "check-file must accept a convolve-emitted pmf");

  f.require(run_cli("examples 2>/dev/null >/dev/null") == 0,
            "examples battery must exit 0");
  f.require(run_cli("sharpness 2>/dev/null >/dev/null") == 0,
            "sharpness with defaults must exit 0");
  f.require(run_cli("verify-grid --n-max 1 2>/dev/null >/dev/null") == 0,
            "verify-grid --n-max 1 must exit 0");
  f.require(run_cli("sharpness --n-list 2 2>/dev/null >/dev/null") == 0,
            "sharpness with a single-entry n-list must exit 0");
}

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<void(Failures&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];

  const std::vector<Criterion> criteria = {
      {"1. extremal-family grid: closed form >= 1/e and matches brute force",
       10.0, criterion_extremal_grid},
      {"2. inequality chain: g, h, k, phi monotone in n", 5.0,
       criterion_inequality_chain},
      {"3. sharpness: limit gap shrinks, tail brackets enclose", 10.0,
       criterion_sharpness},
      {"4. counterexample battery: strict inequalities with slack", 1.0,
       criterion_battery},
      {"5. iid example: convolution equals closed form", 5.0, criterion_iid},
      {"6. property suite: 1e5 PMFs, 1e4 convolutions, Monte Carlo", 60.0,
       criterion_property_suite},
      {"7. discretization bridge: converges, never below 1/e", 10.0,
       criterion_bridge},
      {"8. CLI contract: exit codes and byte-identical output", 60.0,
       criterion_cli},
  };

  int failed = 0;
  for (const auto& criterion : criteria) {
    Failures f;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(f);
    } catch (const std::exception& e) {
      f.require(false, std::string("threw: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (elapsed >= criterion.budget_seconds)
      f.require(false, "runtime " + std::to_string(elapsed) +
                           " s exceeded budget " +
                           std::to_string(criterion.budget_seconds) + " s");
    const bool pass = f.messages.empty();
    std::printf("[%s] %s (%d checks, %.2f s)\n", pass ? "PASS" : "FAIL",
                criterion.name.c_str(), f.checks, elapsed);
    for (const auto& m : f.messages) std::printf("       - %s\n", m.c_str());
    if (!pass) ++failed;
  }
  if (failed == 0) {
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", failed);
  return 1;
}
