#ifndef LOGCONCAVE_TRUNC_GEOM_HPP
#define LOGCONCAVE_TRUNC_GEOM_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "logconcave/pmf.hpp"

namespace logconcave {

/// The log-affine (truncated geometric) family: p(k) = C * p^k on
/// {m, ..., n}. These are the extreme points of the constrained
/// log-concave laws, so verifying the small-deviation bound on this family
/// verifies it for the whole class.
///
/// Closed forms below are stated for the canonical support {1, ..., n~}
/// with n~ = n - m + 1; general m is the canonical family translated by
/// m - 1, which leaves the deviation probability unchanged.
struct TruncGeom {
  std::int64_t m = 1;
  std::int64_t n = 1;
  double p = 1.0;
};

/// Support length n - m + 1. Throws Error unless m <= n and p > 0.
std::int64_t canonical_length(const TruncGeom& tg);

/// Normalizing constant C for the canonical family: (1-p)/(p(1-p^n~)) for
/// p != 1, 1/n~ for p = 1 (within 1e-14). Switches to log-space once p^n~
/// would overflow.
double normalizer(const TruncGeom& tg);

/// E[X]. Canonical value 1/(1-p) - n~ p^n~/(1-p^n~) for p != 1 and
/// (n~+1)/2 for p = 1, evaluated through a decomposition into two scalar
/// functions with removable singularities, so it is accurate uniformly in
/// (p, n~) — including p near 1, p > 1 with p^n~ overflowing, and the
/// near-uniform long-support regime.
double mean_closed_form(const TruncGeom& tg);

/// P(X < E[X] + 1) = (1 - p^ceil(mu))/(1 - p^n~) for p != 1,
/// ceil(mu)/n~ for p = 1, with the same integer snapping as feige_check.
/// Exponent differences are taken in log-space so p^n~ never overflows.
double feige_prob_closed_form(const TruncGeom& tg);

/// Materialize as a SupportedPmf. Weights are assembled in log-space
/// (k log p - logsumexp), valid for p as extreme as 1e±300 and supports up
/// to max_length. Throws SupportTooLargeError beyond max_length.
SupportedPmf materialize(const TruncGeom& tg,
                         std::int64_t max_length = 1'000'000);

/// Solve for the p giving mean_closed_form == target on {m, ..., n}.
/// The mean is strictly increasing in p, from m (p -> 0) to n (p -> inf);
/// bisection on a doubling bracket, refined until the bracket is exhausted
/// at double resolution. Throws TargetOutOfRangeError unless
/// target lies in the open interval (m, n). Returns 1 at the midpoint.
double solve_p_for_mean(std::int64_t m, std::int64_t n, double target);

/// The sharpness family: {1, ..., n} with p = n^(1/n), whose deviation
/// probability approaches the 1/e bound as n grows. Requires n >= 2.
TruncGeom remark3_family(std::int64_t n);

/// Two-sided bracket for the upper tail P(X >= E[X] + t) of the sharpness
/// family, t >= 1: returns (lower, upper) with
///   lower = (n - n^((E+t)/n))/(n-1),  upper = (n - n^((E+t-1)/n))/(n-1).
/// Throws FamilyMismatchError unless tg is remark3_family(n).
std::pair<double, double> tail_bracket(const TruncGeom& tg, double t);

/// Exhaustive verification grid over the canonical family.
struct GridScanConfig {
  std::int64_t n_max = 200;
  double p_min = 1e-2;
  double p_max = 1e2;
  int p_points = 60;
  double tol = 1e-12;
  // Test-only hook: added to every closed-form probability so the failure
  // path of the scan can be exercised. Zero in normal operation.
  double corrupt_prob_delta = 0.0;
};

struct GridRow {
  std::int64_t n = 1;
  double p = 1.0;
  double mean = 0.0;
  double ceil_mean = 0.0;
  double prob = 0.0;
  double margin = 0.0;
  bool pass = false;
};

/// Log-spaced grid of `points` values from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, int points);

/// Scan rows ordered by (n, p); deterministic under parallel execution.
std::vector<GridRow> scan_grid(const GridScanConfig& config);

/// CSV schema: n,p,mean,ceil_mean,prob,margin,pass — reals at 17
/// significant digits.
void write_grid_csv(std::ostream& os, std::span<const GridRow> rows);

}  // namespace logconcave

#endif  // LOGCONCAVE_TRUNC_GEOM_HPP
