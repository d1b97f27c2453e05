#include "logconcave/proof_curves.hpp"

#include <cmath>

#include "logconcave/errors.hpp"
#include "logconcave/numeric.hpp"
#include "logconcave/trunc_geom.hpp"

namespace logconcave {

namespace {

constexpr double kExclusionZone = 1e-6;  // |x - 1| skipped when sampling

void require_positive_not_one(double x, const char* where) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(where) + ": require finite x > 0");
  }
  if (x == 1.0) {
    throw DomainError(std::string(where) +
                      ": x = 1 is a removable singularity, evaluate nearby");
  }
}

}  // namespace

const char* curve_id_name(CurveId id) {
  switch (id) {
    case CurveId::phi_n:
      return "phi_n";
    case CurveId::g:
      return "g";
    case CurveId::h:
      return "h";
    case CurveId::k:
      return "k";
    case CurveId::remark3:
      return "remark3";
  }
  return "unknown";
}

double phi_n(double x, int n) {
  require_positive_not_one(x, "phi_n");
  if (n < 1) throw DomainError("phi_n: require n >= 1");
  const double u = std::log(x);
  const double nd = static_cast<double>(n);
  // Exponent = mean/n of the canonical geometric family at p = x^(1/n):
  //   1/(n(1 - x^(1/n))) - x/(1 - x)
  // assembled from the two gap functions so the 1/(1-p) cancellation near
  // x = 1 never happens in floating point.
  const double p_minus_1 = std::expm1(u / nd);
  const double mu = inv_log_gap(u / nd, p_minus_1) + nd * inv_expm1_gap(u);
  const double e = mu / nd;
  // (1 - x^e)/(1 - x) = expm1(e log x)/(x - 1)
  return std::expm1(e * u) / (x - 1.0);
}

double curve_g(double x) {
  require_positive_not_one(x, "g");
  const double u = std::log(x);
  // Exponent -1/log(x) - x/(1-x) = 1 - (1/log(x) - 1/(x-1)).
  const double e = 1.0 - inv_log_gap(u, x - 1.0);
  return std::expm1(e * u) / (x - 1.0);
}

double curve_h(double x) {
  require_positive_not_one(x, "h");
  const double u = std::log(x);
  const double r = u / (x - 1.0);  // -> 1 at x -> 1
  // x^(x/(x-1)) log(x)/(e(x-1)) = exp(x r - 1) * r
  return std::exp(x * r - 1.0) * r;
}

double curve_k(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("k: require finite x > 0");
  const double u = std::log(x);
  return (x - 1.0) * (x - 1.0) - x * u * u;
}

double t_monotone_witness(double x, double t) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("t_monotone_witness: require finite x > 0");
  if (!(t > 0.0)) throw DomainError("t_monotone_witness: require t > 0");
  const double u = std::log(x) / t;  // log y with y = x^(1/t)
  // 1 - y + y log y = u e^u - expm1(u); vanishes quadratically at u = 0.
  return u * std::exp(u) - std::expm1(u);
}

double remark3_limit_curve(std::int64_t n, double lambda) {
  if (n < 2) throw Error("remark3_limit_curve: require n >= 2");
  if (!(lambda >= 0.0)) throw Error("remark3_limit_curve: require lambda >= 0");
  const double nd = static_cast<double>(n);
  const double mu = mean_closed_form(remark3_family(n));
  const double log_n = std::log(nd);
  return (nd - std::exp((mu + lambda) / nd * log_n)) / (nd - 1.0);
}

std::vector<CurveSample> sample_curve(CurveId id, double x_min, double x_max,
                                      int points, int n_for_phi) {
  if (id == CurveId::remark3)
    throw Error("sample_curve: remark3 is sampled over n, not x");
  if (id == CurveId::phi_n && n_for_phi < 1)
    throw Error("sample_curve: phi_n requires n >= 1");
  const bool singular_at_one = id != CurveId::k;
  std::vector<CurveSample> samples;
  samples.reserve(static_cast<std::size_t>(points));
  for (double x : log_spaced(x_min, x_max, points)) {
    if (singular_at_one && std::fabs(x - 1.0) < kExclusionZone) continue;
    CurveSample s;
    s.x = x;
    s.curve = id;
    switch (id) {
      case CurveId::phi_n:
        s.value = phi_n(x, n_for_phi);
        break;
      case CurveId::g:
        s.value = curve_g(x);
        break;
      case CurveId::h:
        s.value = curve_h(x);
        break;
      case CurveId::k:
        s.value = curve_k(x);
        break;
      case CurveId::remark3:
        break;
    }
    samples.push_back(s);
  }
  return samples;
}

}  // namespace logconcave
