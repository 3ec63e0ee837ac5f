#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fquake {

struct Histogram {
  std::vector<double> edges;    // bins + 1 geometric edges
  std::vector<double> density;  // count / (bin width * sample count)
  std::vector<std::size_t> counts;
  std::size_t samples = 0;

  double center(std::size_t bin) const;  // geometric centre
};

/// Log-spaced bins from min to max. All-equal input gives one bin spanning a
/// single bin width above the common value.
Histogram log_binned_histogram(std::span<const double> values,
                               double bins_per_decade = 5.0);

enum class FitModel { PowerLaw, Exponential };

const char* to_string(FitModel m) noexcept;

struct DistributionFit {
  FitModel model = FitModel::PowerLaw;
  /// Power law: signed exponent of p(x) ~ x^exponent (MLE).
  /// Exponential: decay rate lambda of p(x) ~ exp(-lambda (x - x_min)).
  double parameter = 0.0;
  /// Power law only: least-squares slope of the log-binned tail density.
  double binned_slope = 0.0;
  double x_min = 0.0;
  std::size_t n_tail = 0;
  double log_likelihood = 0.0;
  std::string method;
};

inline constexpr std::size_t kMinFitSamples = 50;

/// Continuous MLE on the values >= x_min:
///   exponent = -(1 + n / sum ln(x_i / x_min)).
DistributionFit fit_power_law(std::span<const double> values, double x_min,
                              std::size_t min_samples = kMinFitSamples);

/// Shifted-exponential MLE on the values >= x_min: rate = 1 / mean(x - x_min).
DistributionFit fit_exponential(std::span<const double> values, double x_min,
                                std::size_t min_samples = kMinFitSamples);

struct ModelComparison {
  FitModel preferred = FitModel::PowerLaw;
  double log_likelihood_ratio = 0.0;  // LL(power law) - LL(exponential)
  /// Vuong statistic: ratio / (sqrt(n) * std of pointwise log-ratios).
  double normalized_ratio = 0.0;
  bool low_confidence = false;  // tail has fewer than kMinFitSamples values
  DistributionFit power_law;
  DistributionFit exponential;
};

/// Fits both models on the same tail and prefers the higher likelihood.
/// Works down to two tail values, flagging anything below kMinFitSamples.
ModelComparison compare_models(std::span<const double> values, double x_min);

}  // namespace fquake
