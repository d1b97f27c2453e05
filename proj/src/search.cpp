#include "logconcave/search.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "logconcave/errors.hpp"
#include "logconcave/numeric.hpp"
#include "logconcave/parallel.hpp"
#include "logconcave/trunc_geom.hpp"

namespace logconcave {

namespace {

constexpr std::int64_t kConvolutionBudget = 10'000'000;
constexpr double kCheckTol = 1e-9;
constexpr double kBatterySlack = 1e-3;  // the strict inequalities hold with
                                        // at least this margin

void validate(const SearchConfig& config) {
  if (config.trials < 1) throw Error("SearchConfig: require trials >= 1");
  if (config.max_support < 1)
    throw Error("SearchConfig: require max_support >= 1");
  if (!(config.log_weight_scale > 0.0))
    throw Error("SearchConfig: require log_weight_scale > 0");
}

// P(X <= t) over integer atoms = P(X < floor(t) + 1), with the threshold
// snapped first so a t that is an integer up to rounding keeps its atom.
double prob_at_most(const SupportedPmf& pmf, double t) {
  return prob_below(pmf, std::floor(snap_to_integer(t)) + 1.0);
}

void battery_require(bool ok, const char* what) {
  if (!ok) throw CheckFailedError(std::string("example battery: ") + what);
}

}  // namespace

nlohmann::json violation_to_json(const Violation& v) {
  return nlohmann::json{{"seed", v.seed},
                        {"generator_tag", v.generator_tag},
                        {"pmf", pmf_to_json(v.pmf)},
                        {"mean", v.report.mean},
                        {"prob", v.report.prob},
                        {"margin", v.report.margin}};
}

SupportedPmf random_log_concave(SplitMix64& rng, std::int64_t max_support,
                                double log_weight_scale) {
  const std::int64_t len =
      1 + static_cast<std::int64_t>(rng.next_below(
              static_cast<std::uint64_t>(max_support)));
  const std::int64_t offset =
      -50 + static_cast<std::int64_t>(rng.next_below(101));
  const double s = log_weight_scale;
  std::vector<double> log_w(static_cast<std::size_t>(len));
  double level = 0.0;
  double slope = rng.next_uniform(-s, s);
  double max_level = 0.0;
  log_w[0] = 0.0;
  for (std::size_t k = 1; k < log_w.size(); ++k) {
    level += slope;
    log_w[k] = level;
    if (level > max_level) max_level = level;
    // Non-positive second difference keeps the log-weights concave; an
    // exact zero 10% of the time lands on the geometric boundary case.
    const double dd = rng.next_double() < 0.1 ? 0.0 : -(rng.next_double() * s);
    slope += dd;
  }
  std::vector<double> w(log_w.size());
  for (std::size_t k = 0; k < w.size(); ++k)
    w[k] = std::exp(log_w[k] - max_level);
  return SupportedPmf(offset, std::move(w));
}

SupportedPmf random_log_concave(const SearchConfig& config) {
  validate(config);
  SplitMix64 rng(config.seed);
  return random_log_concave(rng, config.max_support, config.log_weight_scale);
}

std::vector<Violation> falsify_feige(const SearchConfig& config) {
  validate(config);
  const std::uint64_t single_trials = config.trials;
  const std::uint64_t mix_trials = config.trials / 10;
  const std::uint64_t total = single_trials + mix_trials;
  std::vector<std::optional<Violation>> slots(total);

  parallel_for(total, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint64_t trial_seed =
          SplitMix64::stream_seed(config.seed, static_cast<std::uint64_t>(i));
      SplitMix64 rng(trial_seed);
      if (i < single_trials) {
        const SupportedPmf pmf =
            random_log_concave(rng, config.max_support, config.log_weight_scale);
        const FeigeReport report = feige_check(pmf, kCheckTol);
        if (!report.satisfied)
          slots[i] = Violation{pmf, report, "single", trial_seed};
      } else {
        // Sum of up to 10 independent log-concave draws is log-concave;
        // the bound must survive convolution too.
        const std::uint64_t count = 2 + rng.next_below(9);
        SupportedPmf sum =
            random_log_concave(rng, config.max_support, config.log_weight_scale);
        for (std::uint64_t c = 1; c < count; ++c) {
          const SupportedPmf next = random_log_concave(
              rng, config.max_support, config.log_weight_scale);
          if (static_cast<std::int64_t>(sum.size() + next.size()) - 1 >
              kConvolutionBudget)
            throw SupportTooLargeError(
                "falsify_feige: convolution exceeds the 1e7-entry budget");
          sum = convolve(sum, next);
        }
        const FeigeReport report = feige_check(sum, kCheckTol);
        if (!report.satisfied)
          slots[i] = Violation{sum, report, "convolution-mix", trial_seed};
      }
    }
  });

  std::vector<Violation> violations;
  for (auto& slot : slots)
    if (slot.has_value()) violations.push_back(std::move(*slot));
  return violations;
}

double feige_iid_example(int n) {
  if (n < 1) throw Error("feige_iid_example: require n >= 1");
  const std::int64_t atom = static_cast<std::int64_t>(n) + 1;
  if (static_cast<std::int64_t>(n) * atom > kConvolutionBudget)
    throw SupportTooLargeError(
        "feige_iid_example: n(n+1) exceeds the convolution budget");
  const double p_hit = 1.0 / static_cast<double>(n + 1);
  std::vector<double> w(static_cast<std::size_t>(atom) + 1, 0.0);
  w.front() = 1.0 - p_hit;
  w.back() = p_hit;
  const SupportedPmf base(0, std::move(w));
  SupportedPmf sum = base;
  for (int i = 1; i < n; ++i) sum = convolve(sum, base);
  const FeigeReport report = feige_check(sum, kCheckTol);
  const double closed =
      std::exp(static_cast<double>(n) * std::log1p(-p_hit));
  if (std::fabs(report.prob - closed) > 1e-12) {
    std::ostringstream os;
    os << "feige_iid_example: convolution probability " << report.prob
       << " disagrees with closed form " << closed;
    throw CheckFailedError(os.str());
  }
  return report.prob;
}

FeigeReport teicher_counterexample() {
  // Poisson(5) weights 5^k/k! for k = 0, 1, 2.
  const SupportedPmf pmf(0, {1.0, 5.0, 12.5});
  battery_require(is_log_concave(pmf, kCheckTol),
                  "truncated Poisson(5) must be log-concave");
  const double mu = mean(pmf);  // 60/37
  const double p_le = prob_at_most(pmf, mu);
  battery_require(p_le < kInvE - kBatterySlack,
                  "truncated Poisson(5): P(X <= E[X]) must fall below 1/e");
  const FeigeReport report = feige_check(pmf, kCheckTol);
  battery_require(report.satisfied,
                  "truncated Poisson(5): strict +1 threshold must still pass");
  return report;
}

FeigeReport corollary_half_counterexample() {
  const double p_star = solve_p_for_mean(1, 8, 6.0);
  const SupportedPmf pmf = materialize(TruncGeom{1, 8, p_star});
  battery_require(std::fabs(mean(pmf) - 6.0) <= 1e-10,
                  "geometric {1..8}: solved mean must equal 6 to 1e-10");
  const FeigeReport report = integer_mean_check(pmf, kCheckTol);
  battery_require(report.prob < 0.5 - kBatterySlack,
                  "geometric {1..8} with mean 6: P(X <= 6) must fall below 1/2");
  battery_require(report.prob >= kInvE - 1e-12,
                  "geometric {1..8} with mean 6: P(X <= 6) must stay >= 1/e");
  return report;
}

FeigeReport two_point_example(std::int64_t m, double p) {
  if (m < 2) throw Error("two_point_example: require m >= 2");
  if (m > kConvolutionBudget)
    throw SupportTooLargeError("two_point_example: m exceeds the support budget");
  if (!(p > 0.0) || !(p < 1.0))
    throw Error("two_point_example: require p in (0, 1)");
  std::vector<double> w(static_cast<std::size_t>(m) + 1, 0.0);
  w.front() = 1.0 - p;
  w.back() = p;
  const SupportedPmf pmf(0, std::move(w));
  battery_require(!is_log_concave(pmf, kCheckTol),
                  "two-point pmf with a gap must not be log-concave");
  return feige_check(pmf, kCheckTol);
}

SupportedPmf discretize_density(const std::function<double(double)>& f,
                                std::int64_t n) {
  if (n < 1) throw Error("discretize_density: require n >= 1");
  std::vector<double> w(static_cast<std::size_t>(n));
  for (std::int64_t k = 1; k <= n; ++k) {
    const double v = f(static_cast<double>(k) / static_cast<double>(n));
    if (!std::isfinite(v))
      throw Error("discretize_density: density produced a non-finite value");
    if (!(v > 0.0)) {
      std::ostringstream os;
      os << "discretize_density: f(" << k << "/" << n << ") = " << v
         << " is not positive";
      throw NonPositiveDensityError(os.str());
    }
    w[static_cast<std::size_t>(k - 1)] = v;
  }
  return SupportedPmf(1, std::move(w));
}

std::vector<double> grunbaum_bridge(const std::function<double(double)>& f,
                                    const std::vector<std::int64_t>& n_list) {
  std::vector<double> values;
  values.reserve(n_list.size());
  for (std::int64_t n : n_list) {
    const SupportedPmf pmf = discretize_density(f, n);
    values.push_back(prob_at_most(pmf, mean(pmf) + 1.0));
  }
  return values;
}

double monte_carlo_check(const std::vector<SupportedPmf>& pmfs,
                         std::uint64_t samples, std::uint64_t seed) {
  if (pmfs.empty()) throw Error("monte_carlo_check: require at least one pmf");
  if (samples < 1000) throw Error("monte_carlo_check: require samples >= 1000");

  SupportedPmf sum = pmfs.front();
  for (std::size_t i = 1; i < pmfs.size(); ++i) {
    if (static_cast<std::int64_t>(sum.size() + pmfs[i].size()) - 1 >
        kConvolutionBudget)
      throw SupportTooLargeError(
          "monte_carlo_check: convolution exceeds the 1e7-entry budget");
    sum = convolve(sum, pmfs[i]);
  }
  const double threshold = snap_to_integer(mean(sum)) + 1.0;

  // Inverse-CDF tables, one per summand.
  std::vector<std::vector<double>> cdfs;
  cdfs.reserve(pmfs.size());
  for (const auto& pmf : pmfs) {
    std::vector<double> cdf(pmf.size());
    KahanSum acc;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
      acc.add(pmf.weights()[k]);
      cdf[k] = acc.value();
    }
    cdf.back() = 1.0;  // guard against roundoff at the top
    cdfs.push_back(std::move(cdf));
  }

  SplitMix64 rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < pmfs.size(); ++i) {
      const double u = rng.next_double();
      const auto it = std::upper_bound(cdfs[i].begin(), cdfs[i].end(), u);
      const std::size_t idx = std::min(
          static_cast<std::size_t>(it - cdfs[i].begin()), cdfs[i].size() - 1);
      total += pmfs[i].offset() + static_cast<std::int64_t>(idx);
    }
    if (static_cast<double>(total) < threshold) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace logconcave
