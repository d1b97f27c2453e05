#include "logconcave/pmf.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "logconcave/errors.hpp"
#include "logconcave/numeric.hpp"

namespace logconcave {

namespace {

// Normalization is skipped when the total is already this close to 1, so
// feeding a PMF its own weights back reproduces it bit for bit.
bool needs_normalization(double total, std::size_t len) {
  return std::fabs(total - 1.0) > 1e-15 * static_cast<double>(len);
}

}  // namespace

SupportedPmf::SupportedPmf(std::int64_t offset, std::vector<double> weights)
    : offset_(offset), weights_(std::move(weights)) {
  if (weights_.empty())
    throw InvalidPmfError("pmf invariant violated: weights length must be >= 1");
  for (double& w : weights_) {
    if (!std::isfinite(w))
      throw InvalidPmfError("pmf invariant violated: weights must be finite");
    if (w < 0.0)
      throw InvalidPmfError("pmf invariant violated: weights must be non-negative");
    // Subnormal weights carry too few mantissa bits for the log-space
    // log-concavity comparisons; flush them to an exact zero. For concave
    // log-weights the flushed region is always a prefix/suffix, which the
    // trim below removes.
    if (w < std::numeric_limits<double>::min()) w = 0.0;
  }
  // Trim zero boundaries so offset/size describe the true support.
  std::size_t first = 0;
  while (first < weights_.size() && weights_[first] == 0.0) ++first;
  if (first == weights_.size())
    throw InvalidPmfError("pmf invariant violated: total mass must be positive");
  std::size_t last = weights_.size() - 1;
  while (weights_[last] == 0.0) --last;
  if (first > 0 || last + 1 < weights_.size()) {
    weights_.assign(weights_.begin() + static_cast<std::ptrdiff_t>(first),
                    weights_.begin() + static_cast<std::ptrdiff_t>(last + 1));
    offset_ += static_cast<std::int64_t>(first);
  }
  const double total = kahan_total(weights_);
  if (!(total > 0.0) || !std::isfinite(total))
    throw InvalidPmfError("pmf invariant violated: total mass must be positive and finite");
  if (needs_normalization(total, weights_.size()))
    for (double& w : weights_) w /= total;
}

SupportedPmf::SupportedPmf(already_normalized_t, std::int64_t offset,
                           std::vector<double> weights)
    : offset_(offset), weights_(std::move(weights)) {}

SupportedPmf SupportedPmf::point_mass(std::int64_t at) {
  return SupportedPmf(at, {1.0});
}

double SupportedPmf::at(std::int64_t k) const {
  if (k < offset_ || k > support_max()) return 0.0;
  return weights_[static_cast<std::size_t>(k - offset_)];
}

bool is_log_concave(const SupportedPmf& pmf, double tol) {
  const auto& w = pmf.weights();
  const std::size_t n = w.size();
  if (n <= 2) return true;  // no interior point: vacuously log-concave
  // Contiguous support: boundary weights are positive by construction, so
  // any zero is an interior gap.
  for (std::size_t k = 1; k + 1 < n; ++k)
    if (w[k] == 0.0) return false;
  // Multiplicative slack (1 - tol) becomes an additive slack in log space.
  const double slack = -std::log1p(-tol);
  double prev = std::log(w[0]);
  double cur = std::log(w[1]);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double next = std::log(w[k + 1]);
    if (2.0 * cur + slack < prev + next) return false;
    prev = cur;
    cur = next;
  }
  return true;
}

double mean(const SupportedPmf& pmf) {
  const auto& w = pmf.weights();
  KahanSum num;
  KahanSum den;
  for (std::size_t k = 0; k < w.size(); ++k) {
    num.add(static_cast<double>(pmf.offset() + static_cast<std::int64_t>(k)) * w[k]);
    den.add(w[k]);
  }
  return num.value() / den.value();
}

double prob_below(const SupportedPmf& pmf, double t) {
  const auto& w = pmf.weights();
  KahanSum acc;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (static_cast<double>(pmf.offset() + static_cast<std::int64_t>(k)) >= t) break;
    acc.add(w[k]);
  }
  return acc.value();
}

FeigeReport feige_check(const SupportedPmf& pmf, double tol) {
  FeigeReport report;
  report.mean = snap_to_integer(mean(pmf));
  report.threshold = report.mean + 1.0;
  report.prob = prob_below(pmf, report.threshold);
  report.margin = report.prob - kInvE;
  report.satisfied = report.margin >= -tol;
  return report;
}

FeigeReport integer_mean_check(const SupportedPmf& pmf, double tol) {
  const double mu = mean(pmf);
  const double rounded = std::nearbyint(mu);
  if (std::fabs(mu - rounded) > tol) {
    std::ostringstream os;
    os << "integer_mean_check: mean " << mu << " is not within " << tol
       << " of an integer";
    throw MeanNotIntegerError(os.str());
  }
  FeigeReport report;
  report.mean = rounded;
  report.threshold = rounded + 1.0;
  // P(X <= r) over integer atoms equals P(X < r + 1).
  report.prob = prob_below(pmf, rounded + 1.0);
  report.margin = report.prob - kInvE;
  report.satisfied = report.prob >= kInvE - tol;
  return report;
}

SupportedPmf convolve(const SupportedPmf& a, const SupportedPmf& b) {
  const auto& wa = a.weights();
  const auto& wb = b.weights();
  std::vector<double> out(wa.size() + wb.size() - 1, 0.0);
  for (std::size_t j = 0; j < out.size(); ++j) {
    const std::size_t i_lo = j >= wb.size() ? j - wb.size() + 1 : 0;
    const std::size_t i_hi = std::min(j, wa.size() - 1);
    KahanSum acc;
    for (std::size_t i = i_lo; i <= i_hi; ++i) acc.add(wa[i] * wb[j - i]);
    out[j] = acc.value();
  }
  return SupportedPmf(a.offset() + b.offset(), std::move(out));
}

SupportedPmf shift(const SupportedPmf& pmf, std::int64_t d) {
  return SupportedPmf(SupportedPmf::already_normalized_t{}, pmf.offset() + d,
                      pmf.weights());
}

nlohmann::json pmf_to_json(const SupportedPmf& pmf) {
  return nlohmann::json{{"offset", pmf.offset()}, {"weights", pmf.weights()}};
}

SupportedPmf pmf_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("offset") || !j.contains("weights"))
    throw InvalidPmfError(
        "pmf json: expected an object with \"offset\" and \"weights\"");
  if (!j["offset"].is_number_integer())
    throw InvalidPmfError("pmf json: \"offset\" must be an integer");
  if (!j["weights"].is_array() || j["weights"].empty())
    throw InvalidPmfError(
        "pmf invariant violated: weights must be a non-empty array");
  std::vector<double> weights;
  weights.reserve(j["weights"].size());
  for (const auto& v : j["weights"]) {
    if (!v.is_number())
      throw InvalidPmfError("pmf json: weights must be numbers");
    weights.push_back(v.get<double>());
  }
  for (double w : weights)
    if (!std::isfinite(w) || w < 0.0)
      throw InvalidPmfError(
          "pmf invariant violated: weights must be finite and non-negative");
  const double total = kahan_total(weights);
  if (std::fabs(total - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "pmf invariant violated: weight sum must be within 1e-9 of 1 (got "
       << format_real(total) << ")";
    throw InvalidPmfError(os.str());
  }
  return SupportedPmf(j["offset"].get<std::int64_t>(), std::move(weights));
}

nlohmann::json report_to_json(const FeigeReport& report) {
  return nlohmann::json{{"mean", report.mean},
                        {"threshold", report.threshold},
                        {"prob", report.prob},
                        {"margin", report.margin},
                        {"satisfied", report.satisfied}};
}

}  // namespace logconcave
