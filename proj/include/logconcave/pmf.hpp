#ifndef LOGCONCAVE_PMF_HPP
#define LOGCONCAVE_PMF_HPP

#include <cstdint>
#include <vector>

#include <json.hpp>

namespace logconcave {

/// A finitely supported probability mass function on the integers, stored
/// as the smallest support point plus a dense weight vector.
///
/// Construction validates (finite, non-negative, positive total mass),
/// strips leading/trailing zero weights so offset/size always describe the
/// true support, and normalizes the total mass to 1. Interior zero weights
/// are representable — they encode gap-support distributions, which
/// is_log_concave reports as not log-concave.
///
/// Values are immutable; all operations are pure functions, freely
/// shareable across threads.
class SupportedPmf {
 public:
  /// Throws InvalidPmfError naming the violated invariant.
  SupportedPmf(std::int64_t offset, std::vector<double> weights);

  static SupportedPmf point_mass(std::int64_t at);

  std::int64_t offset() const { return offset_; }
  std::int64_t support_max() const {
    return offset_ + static_cast<std::int64_t>(weights_.size()) - 1;
  }
  std::size_t size() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }

  /// P(X = k); zero outside the stored range.
  double at(std::int64_t k) const;

  bool operator==(const SupportedPmf& other) const = default;

 private:
  struct already_normalized_t {};
  SupportedPmf(already_normalized_t, std::int64_t offset,
               std::vector<double> weights);

  friend SupportedPmf shift(const SupportedPmf&, std::int64_t);

  std::int64_t offset_;
  std::vector<double> weights_;
};

/// The quantities of the small-deviation check P(X < E[X] + 1) >= 1/e.
struct FeigeReport {
  double mean = 0.0;
  double threshold = 0.0;  // mean + 1
  double prob = 0.0;       // probability below the threshold
  double margin = 0.0;     // prob - 1/e
  bool satisfied = false;  // margin >= -tol
};

/// True iff weights[k]^2 >= weights[k-1]*weights[k+1]*(1 - tol) at every
/// interior index and the support has no gaps. The comparison runs on
/// log-weights (2 log w[k] >= log w[k-1] + log w[k+1] - tol') so long
/// supports with tiny weights do not underflow.
bool is_log_concave(const SupportedPmf& pmf, double tol = 1e-9);

/// Expectation; compensated summation in ascending index order.
double mean(const SupportedPmf& pmf);

/// P(X < t), strictly below; compensated summation in ascending order.
double prob_below(const SupportedPmf& pmf, double t);

/// Evaluates P(X < E[X] + 1) against the 1/e bound. Means within 1e-12
/// relative of an integer are snapped to it before thresholding.
FeigeReport feige_check(const SupportedPmf& pmf, double tol = 1e-9);

/// Integer-mean variant: P(X <= E[X]) >= 1/e. Throws MeanNotIntegerError
/// when the mean is farther than tol from an integer.
FeigeReport integer_mean_check(const SupportedPmf& pmf, double tol = 1e-9);

/// PMF of X + Y for independent X ~ a, Y ~ b (full discrete convolution,
/// renormalized). Result length is a.size() + b.size() - 1 before trimming.
SupportedPmf convolve(const SupportedPmf& a, const SupportedPmf& b);

/// Translate the support by d. P(X < E[X] + 1) is translation invariant.
SupportedPmf shift(const SupportedPmf& pmf, std::int64_t d);

/// JSON form: {"offset": int, "weights": [real, ...]} with round-trip
/// fidelity on the weights.
nlohmann::json pmf_to_json(const SupportedPmf& pmf);

/// Parses and validates; throws InvalidPmfError naming the failing
/// invariant (shape, non-negativity, normalization within 1e-9).
SupportedPmf pmf_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const FeigeReport& report);

}  // namespace logconcave

#endif  // LOGCONCAVE_PMF_HPP
