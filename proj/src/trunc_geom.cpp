#include "logconcave/trunc_geom.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "logconcave/errors.hpp"
#include "logconcave/numeric.hpp"
#include "logconcave/parallel.hpp"

namespace logconcave {

namespace {

constexpr double kUniformBand = 1e-14;  // |p - 1| below this: uniform branch

void validate(const TruncGeom& tg) {
  if (tg.m > tg.n)
    throw Error("TruncGeom: require m <= n");
  if (!(tg.p > 0.0) || !std::isfinite(tg.p))
    throw Error("TruncGeom: require finite p > 0");
}

// Canonical mean on {1, ..., len}. Decomposition:
//   E[X] = [1/log p - 1/(p-1)] + len * [1/(1 - p^-len) - 1/(len log p)]
// which equals 1/(1-p) - len p^len/(1-p^len) for every p != 1 and extends
// continuously through p = 1. Both bracketed terms are gap functions with
// removable singularities, evaluated by inv_log_gap / inv_expm1_gap.
double canonical_mean(std::int64_t len, double p) {
  if (std::fabs(p - 1.0) < kUniformBand)
    return 0.5 * static_cast<double>(len + 1);
  const double u = std::log(p);
  return inv_log_gap(u, p - 1.0) +
         static_cast<double>(len) * inv_expm1_gap(static_cast<double>(len) * u);
}

// ceil of the snapped canonical mean, clamped into {1, ..., len}.
std::int64_t ceil_mean_index(std::int64_t len, double mu) {
  double c = std::ceil(snap_to_integer(mu));
  if (c < 1.0) c = 1.0;
  if (c > static_cast<double>(len)) c = static_cast<double>(len);
  return static_cast<std::int64_t>(c);
}

// (1 - p^c)/(1 - p^len) for 1 <= c <= len, safe against p^len overflow.
double geometric_head_ratio(std::int64_t c, std::int64_t len, double p) {
  const double u = std::log(p);
  const double cd = static_cast<double>(c);
  const double ld = static_cast<double>(len);
  if (u > 0.0) {
    // Divide through by p^len: p^(c-len) * (1 - p^-c)/(1 - p^-len).
    return std::exp((cd - ld) * u) * std::expm1(-cd * u) / std::expm1(-ld * u);
  }
  return std::expm1(cd * u) / std::expm1(ld * u);
}

}  // namespace

std::int64_t canonical_length(const TruncGeom& tg) {
  validate(tg);
  return tg.n - tg.m + 1;
}

double normalizer(const TruncGeom& tg) {
  const std::int64_t len = canonical_length(tg);
  const double p = tg.p;
  if (std::fabs(p - 1.0) < kUniformBand) return 1.0 / static_cast<double>(len);
  const double u = std::log(p);
  const double a = static_cast<double>(len) * u;
  if (a > 700.0) {
    // p^len overflows; log C = log(p-1) - log p - log(p^len - 1).
    const double log_pn_minus_1 = a + std::log1p(-std::exp(-a));
    return std::exp(std::log(p - 1.0) - u - log_pn_minus_1);
  }
  const double one_minus_pn =
      std::fabs(a) < 0.5 ? -std::expm1(a) : 1.0 - std::pow(p, static_cast<double>(len));
  return (1.0 - p) / (p * one_minus_pn);
}

double mean_closed_form(const TruncGeom& tg) {
  const std::int64_t len = canonical_length(tg);
  return canonical_mean(len, tg.p) + static_cast<double>(tg.m - 1);
}

double feige_prob_closed_form(const TruncGeom& tg) {
  const std::int64_t len = canonical_length(tg);
  const double p = tg.p;
  const double mu = canonical_mean(len, p);
  const std::int64_t c = ceil_mean_index(len, mu);
  if (std::fabs(p - 1.0) < kUniformBand)
    return static_cast<double>(c) / static_cast<double>(len);
  return geometric_head_ratio(c, len, p);
}

SupportedPmf materialize(const TruncGeom& tg, std::int64_t max_length) {
  const std::int64_t len = canonical_length(tg);
  if (len > max_length) {
    std::ostringstream os;
    os << "materialize: support length " << len << " exceeds limit "
       << max_length;
    throw SupportTooLargeError(os.str());
  }
  const double u = std::log(tg.p);
  std::vector<double> log_w(static_cast<std::size_t>(len));
  for (std::int64_t i = 0; i < len; ++i)
    log_w[static_cast<std::size_t>(i)] = static_cast<double>(i) * u;
  const double lse = log_sum_exp(log_w);
  std::vector<double> w(log_w.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(log_w[i] - lse);
  return SupportedPmf(tg.m, std::move(w));
}

double solve_p_for_mean(std::int64_t m, std::int64_t n, double target) {
  if (m >= n) throw Error("solve_p_for_mean: require m < n");
  if (!(target > static_cast<double>(m)) || !(target < static_cast<double>(n))) {
    std::ostringstream os;
    os << "solve_p_for_mean: target " << target << " outside the open interval ("
       << m << ", " << n << ")";
    throw TargetOutOfRangeError(os.str());
  }
  const std::int64_t len = n - m + 1;
  const double t = target - static_cast<double>(m - 1);  // canonical target
  const double midpoint = 0.5 * static_cast<double>(len + 1);
  if (t == midpoint) return 1.0;

  // Bracket by doubling away from 1; the canonical mean is strictly
  // increasing in p with range (1, len).
  double lo;
  double hi;
  if (t < midpoint) {
    hi = 1.0;
    lo = 0.5;
    while (canonical_mean(len, lo) > t && lo > 1e-280) lo *= 0.5;
  } else {
    lo = 1.0;
    hi = 2.0;
    while (canonical_mean(len, hi) < t && hi < 1e280) hi *= 2.0;
  }
  // Bisect until the bracket collapses at double resolution; the mean is
  // monotone, so this lands within a few ulps of the root.
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (canonical_mean(len, mid) < t)
      lo = mid;
    else
      hi = mid;
  }
  const double p = 0.5 * (lo + hi);
  if (std::fabs(canonical_mean(len, p) - t) >=
      1e-12 * static_cast<double>(n - m)) {
    std::ostringstream os;
    os << "solve_p_for_mean: no double-precision p reaches mean " << target
       << " on {" << m << ", ..., " << n << "}";
    throw TargetOutOfRangeError(os.str());
  }
  return p;
}

TruncGeom remark3_family(std::int64_t n) {
  if (n < 2) throw Error("remark3_family: require n >= 2");
  const double nd = static_cast<double>(n);
  return TruncGeom{1, n, std::exp(std::log(nd) / nd)};
}

std::pair<double, double> tail_bracket(const TruncGeom& tg, double t) {
  validate(tg);
  if (tg.m != 1 || tg.n < 2)
    throw FamilyMismatchError("tail_bracket: family must be {1, ..., n} with n >= 2");
  const double nd = static_cast<double>(tg.n);
  const double p_expected = std::exp(std::log(nd) / nd);
  if (std::fabs(tg.p - p_expected) > 1e-9 * p_expected)
    throw FamilyMismatchError("tail_bracket: p must equal n^(1/n)");
  if (!(t >= 1.0)) throw Error("tail_bracket: require t >= 1");
  const double mu = mean_closed_form(tg);
  const double log_n = std::log(nd);
  const double lower = (nd - std::exp((mu + t) / nd * log_n)) / (nd - 1.0);
  const double upper = (nd - std::exp((mu + t - 1.0) / nd * log_n)) / (nd - 1.0);
  // The raw expressions track the head-sum formula, which stops describing
  // the tail once E[X] + t leaves the support (the exact tail is then 0 and
  // both expressions go negative). Clamping to [0, 1] keeps the enclosure
  // valid for every t >= 1.
  const auto clamp01 = [](double v) { return std::fmin(std::fmax(v, 0.0), 1.0); };
  return {clamp01(lower), clamp01(upper)};
}

std::vector<double> log_spaced(double lo, double hi, int points) {
  if (points < 1) throw Error("log_spaced: require points >= 1");
  if (!(lo > 0.0) || !(hi >= lo))
    throw Error("log_spaced: require 0 < lo <= hi");
  std::vector<double> xs(static_cast<std::size_t>(points));
  if (points == 1) {
    xs[0] = lo;
    return xs;
  }
  const double llo = std::log(lo);
  const double step = (std::log(hi) - llo) / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i)
    xs[static_cast<std::size_t>(i)] = std::exp(llo + step * static_cast<double>(i));
  // Pin the endpoints against rounding drift.
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

std::vector<GridRow> scan_grid(const GridScanConfig& config) {
  if (config.n_max < 1) throw Error("scan_grid: require n_max >= 1");
  if (config.tol < 0.0) throw Error("scan_grid: require tol >= 0");
  const std::vector<double> ps =
      log_spaced(config.p_min, config.p_max, config.p_points);
  const std::size_t per_n = ps.size();
  std::vector<GridRow> rows(static_cast<std::size_t>(config.n_max) * per_n);
  parallel_for(static_cast<std::size_t>(config.n_max),
               [&](std::size_t begin, std::size_t end) {
                 for (std::size_t ni = begin; ni < end; ++ni) {
                   const std::int64_t n = static_cast<std::int64_t>(ni) + 1;
                   for (std::size_t pi = 0; pi < per_n; ++pi) {
                     const TruncGeom tg{1, n, ps[pi]};
                     GridRow& row = rows[ni * per_n + pi];
                     row.n = n;
                     row.p = ps[pi];
                     row.mean = mean_closed_form(tg);
                     row.ceil_mean = std::ceil(snap_to_integer(row.mean));
                     row.prob =
                         feige_prob_closed_form(tg) + config.corrupt_prob_delta;
                     row.margin = row.prob - kInvE;
                     row.pass = row.margin >= -config.tol;
                   }
                 }
               });
  return rows;
}

void write_grid_csv(std::ostream& os, std::span<const GridRow> rows) {
  os << "n,p,mean,ceil_mean,prob,margin,pass\n";
  for (const GridRow& r : rows) {
    os << r.n << ',' << format_real(r.p) << ',' << format_real(r.mean) << ','
       << format_real(r.ceil_mean) << ',' << format_real(r.prob) << ','
       << format_real(r.margin) << ',' << (r.pass ? 1 : 0) << '\n';
  }
}

}  // namespace logconcave
