#ifndef LOGCONCAVE_PROOF_CURVES_HPP
#define LOGCONCAVE_PROOF_CURVES_HPP

#include <cstdint>
#include <vector>

namespace logconcave {

// The scalar chain behind the 1/e bound, in the substitution x = p^n:
//   phi_n(x, n) >= phi_{n+1}(x, n+1) >= g(x) >= 1/e,
// with g' <= 0 reduced to h >= 1 and h' sign control reduced to k >= 0.

enum class CurveId { phi_n, g, h, k, remark3 };

const char* curve_id_name(CurveId id);

struct CurveSample {
  double x = 0.0;
  double value = 0.0;
  CurveId curve = CurveId::g;
};

/// Finite-n deviation curve
///   phi_n(x, n) = (1 - x^e)/(1 - x),  e = 1/(n(1 - x^(1/n))) - x/(1 - x),
/// the deviation probability of the length-n geometric family with the
/// ceiling relaxed away (exponent e equals mean/n at p = x^(1/n)).
/// Throws DomainError for x <= 0 or x = 1; requires n >= 1.
double phi_n(double x, int n);

/// Limit curve g(x) = (1 - x^e)/(1 - x) with e = -1/log(x) - x/(1-x).
/// g >= 1/e everywhere on (0,1) and (1,inf); g(x) -> 1/e as x -> inf.
/// Throws DomainError at x <= 0 and x = 1.
double curve_g(double x);

/// h(x) = x^(x/(x-1)) log(x) / (e (x-1)) >= 1, with minimum 1 at the
/// removable singularity x = 1. h >= 1 forces g' <= 0 for x > 1.
/// Throws DomainError at x <= 0 and x = 1.
double curve_h(double x);

/// k(x) = (x-1)^2 - x log(x)^2 >= 0 on (0, inf), zero only at x = 1;
/// controls the sign of h'. Throws DomainError for x <= 0.
double curve_k(double x);

/// d/dt[t(1 - x^(1/t))] written as 1 - y + y log y with y = x^(1/t);
/// non-negative for all x, t > 0, which makes phi_n non-increasing in n.
double t_monotone_witness(double x, double t);

/// Sharpness quantity (n - n^((E+lambda)/n))/(n-1) for the family
/// p = n^(1/n) on {1, ..., n}; increases to 1 - 1/e as n grows.
/// Requires n >= 2 and lambda >= 0.
double remark3_limit_curve(std::int64_t n, double lambda);

/// Log-spaced samples of one curve on [x_min, x_max]. Curves with a
/// removable singularity at 1 (g, h, phi_n) skip the exclusion zone
/// |x - 1| < 1e-6. n_for_phi is required for CurveId::phi_n.
std::vector<CurveSample> sample_curve(CurveId id, double x_min, double x_max,
                                      int points, int n_for_phi = 0);

}  // namespace logconcave

#endif  // LOGCONCAVE_PROOF_CURVES_HPP
