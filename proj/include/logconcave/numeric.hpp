#ifndef LOGCONCAVE_NUMERIC_HPP
#define LOGCONCAVE_NUMERIC_HPP

#include <charconv>
#include <cmath>
#include <span>
#include <string>

namespace logconcave {

inline constexpr double kInvE = 0.36787944117144232;  // exp(-1)

// Kahan-compensated accumulator. Additions must happen in a fixed order
// (ascending index everywhere in this library) so sums are deterministic.
struct KahanSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double value) {
    const double y = value - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }

  double value() const { return sum; }
};

inline double kahan_total(std::span<const double> values) {
  KahanSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

// log(sum_i exp(a[i])), guarded against overflow by shifting by the max.
inline double log_sum_exp(std::span<const double> args) {
  double max_arg = -std::numeric_limits<double>::infinity();
  for (double a : args)
    if (a > max_arg) max_arg = a;
  if (!std::isfinite(max_arg)) return max_arg;
  KahanSum acc;
  for (double a : args) acc.add(std::exp(a - max_arg));
  return max_arg + std::log(acc.value());
}

// 1/u - 1/d for u = log(1+d), with the removable singularity at d = 0
// filled in (limit 1/2). Series coefficients are the Gregory coefficients.
// The caller supplies u at full precision (log(x) when 1+d = x is the
// primary quantity — recomputing it as log1p(d) would lose the low bits of
// x once |d| rounds). Accepts d in [-1, inf); d = -1, u = -inf gives the
// limit value 1.
inline double inv_log_gap(double u, double d) {
  const double ad = std::fabs(d);
  if (ad < 1e-3) {
    return 0.5 - d / 12.0 + d * d / 24.0 - 19.0 * d * d * d / 720.0 +
           3.0 * d * d * d * d / 160.0;
  }
  // (d - u)/(d*u) cancels accurately for mid-sized d; for large |d| the
  // two-term form has no cancellation and tolerates u = -inf at d = -1.
  if (ad <= 0.5) return (d - u) / (d * u);
  return 1.0 / u - 1.0 / d;
}

inline double inv_log1p_gap(double d) { return inv_log_gap(std::log1p(d), d); }

// 1/(1 - exp(-s)) - 1/s with the removable singularity at s = 0 filled in
// (limit 1/2). Series coefficients come from the Bernoulli numbers.
inline double inv_expm1_gap(double s) {
  if (std::fabs(s) < 1e-3) {
    const double s2 = s * s;
    return 0.5 + s / 12.0 - s * s2 / 720.0 + s * s2 * s2 / 30240.0;
  }
  return -1.0 / std::expm1(-s) - 1.0 / s;
}

// Snap x to the nearest integer when it is within 1e-12 relative distance.
// Thresholds of the form ceil(mean) are discontinuous at integers and the
// named constructions target exact integer means that floating point
// perturbs, so every threshold computation routes through this.
inline double snap_to_integer(double x) {
  const double r = std::nearbyint(x);
  if (std::fabs(x - r) < 1e-12 * std::fmax(1.0, std::fabs(x))) return r;
  return x;
}

// 17 significant digits, '.' decimal separator, no locale dependence.
inline std::string format_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace logconcave

#endif  // LOGCONCAVE_NUMERIC_HPP
