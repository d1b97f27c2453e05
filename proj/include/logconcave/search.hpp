#ifndef LOGCONCAVE_SEARCH_HPP
#define LOGCONCAVE_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "logconcave/pmf.hpp"
#include "logconcave/rng.hpp"

namespace logconcave {

/// Randomized falsification setup. Identical seeds produce identical
/// generated sequences (splitmix64, see rng.hpp).
struct SearchConfig {
  std::uint64_t trials = 10000;
  std::int64_t max_support = 200;
  std::uint64_t seed = 1;
  double log_weight_scale = 1.0;
};

/// A PMF whose report violated the bound beyond tolerance. The theorem
/// says this list stays empty for log-concave inputs; any entry is a
/// numerics bug, reproducible from `seed`.
struct Violation {
  SupportedPmf pmf;
  FeigeReport report;
  std::string generator_tag;
  std::uint64_t seed = 0;
};

nlohmann::json violation_to_json(const Violation& v);

/// Draw a log-concave PMF: concave log-weights on a random contiguous
/// support (length <= max_support, offset in [-50, 50]) built from a
/// random initial slope and non-positive second differences, with an
/// exact-zero second difference mixed in 10% of the time so geometric-like
/// boundary shapes occur. Output always passes is_log_concave.
SupportedPmf random_log_concave(SplitMix64& rng, std::int64_t max_support,
                                double log_weight_scale);

/// Single draw from the seed in `config`.
SupportedPmf random_log_concave(const SearchConfig& config);

/// Run feige_check over `trials` random log-concave PMFs plus
/// `trials / 10` random convolutions of up to 10 of them. Returns every
/// violation (expected: none). Trials are independent streams merged in
/// seed order, so results are deterministic under parallel execution.
std::vector<Violation> falsify_feige(const SearchConfig& config);

/// The i.i.d. two-point family P(X_i = n+1) = 1/(n+1), P(X_i = 0) =
/// n/(n+1): the n-fold convolution has P(X < E[X]+1) = (1 - 1/(n+1))^n,
/// which decreases to 1/e. Computes the probability by convolution,
/// checks it against the closed form to 1e-12 (CheckFailedError on
/// mismatch), and returns it.
double feige_iid_example(int n);

/// Poisson(5) truncated to {0,1,2}: log-concave, P(X <= E[X]) = 12/37 <
/// 1/e, yet P(X < E[X]+1) = 1. Shows the non-strict variant needs an
/// integer mean. Returns the feige_check report; throws CheckFailedError
/// if any of the three assertions fails.
FeigeReport teicher_counterexample();

/// Geometric family on {1, ..., 8} with p solved so E[X] = 6:
/// P(X <= 6) < 1/2 while still >= 1/e — the integer-mean bound cannot be
/// improved to 1/2. Returns the integer_mean_check report.
FeigeReport corollary_half_counterexample();

/// The gap-support pair P(X=0) = 1-p, P(X=m): not log-concave for m >= 2
/// (asserted), and for p close to 1 with pm + 1 <= m the deviation
/// probability is 1 - p, far below 1/e. Shows the bound genuinely needs
/// log-concavity. Returns the (typically unsatisfied) feige_check report.
FeigeReport two_point_example(std::int64_t m, double p);

/// Density discretization P(X_n = k) = f(k/n) / sum_j f(j/n) on
/// {1, ..., n}. Throws NonPositiveDensityError if any sampled value is
/// not positive.
SupportedPmf discretize_density(const std::function<double(double)>& f,
                                std::int64_t n);

/// P(X_n <= E[X_n] + 1) for each n: the discrete bound applied along the
/// discretization recovers the continuous bound P(X <= E[X]) >= 1/e in
/// the limit.
std::vector<double> grunbaum_bridge(const std::function<double(double)>& f,
                                    const std::vector<std::int64_t>& n_list);

/// Empirical P(X < E[X] + 1) for X the sum of independent draws, using
/// the exact mean from the convolution. samples >= 1000.
double monte_carlo_check(const std::vector<SupportedPmf>& pmfs,
                         std::uint64_t samples, std::uint64_t seed);

}  // namespace logconcave

#endif  // LOGCONCAVE_SEARCH_HPP
