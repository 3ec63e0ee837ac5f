#include "fquake/fitstats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fquake/dma.hpp"

namespace fquake {

double Histogram::center(std::size_t bin) const {
  return std::sqrt(edges[bin] * edges[bin + 1]);
}

const char* to_string(FitModel m) noexcept {
  return m == FitModel::PowerLaw ? "powerlaw" : "exponential";
}

Histogram log_binned_histogram(std::span<const double> values,
                               double bins_per_decade) {
  if (values.empty()) throw std::invalid_argument("histogram of an empty sample");
  if (!(bins_per_decade > 0.0)) {
    throw std::invalid_argument("bins per decade must be positive");
  }
  double lo = values.front();
  double hi = values.front();
  for (const double x : values) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument("log-binned histogram needs positive values");
    }
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  const double ratio = std::pow(10.0, 1.0 / bins_per_decade);
  std::size_t bins = 1;
  if (hi > lo) {
    bins = static_cast<std::size_t>(
        std::ceil(std::log10(hi / lo) * bins_per_decade - 1e-9));
    bins = std::max<std::size_t>(bins, 1);
  }
  Histogram h;
  h.samples = values.size();
  h.edges.resize(bins + 1);
  h.edges[0] = lo;
  for (std::size_t b = 1; b <= bins; ++b) h.edges[b] = lo * std::pow(ratio, static_cast<double>(b));
  // The top edge is the maximum itself when the span is not a whole number of bins.
  if (hi > lo) h.edges[bins] = std::max(h.edges[bins], hi);
  h.counts.assign(bins, 0);
  const double log_ratio = std::log(ratio);
  for (const double x : values) {
    auto b = static_cast<std::size_t>(std::floor(std::log(x / lo) / log_ratio));
    b = std::min(b, bins - 1);
    // Guard against rounding at interior edges.
    while (b > 0 && x < h.edges[b]) --b;
    while (b + 1 < bins && x >= h.edges[b + 1]) ++b;
    ++h.counts[b];
  }
  h.density.resize(bins);
  const auto n = static_cast<double>(values.size());
  for (std::size_t b = 0; b < bins; ++b) {
    h.density[b] = static_cast<double>(h.counts[b]) / ((h.edges[b + 1] - h.edges[b]) * n);
  }
  return h;
}

namespace {

std::vector<double> tail_of(std::span<const double> values, double x_min,
                            std::size_t min_samples, const char* what) {
  if (!(x_min > 0.0) || !std::isfinite(x_min)) {
    throw std::invalid_argument(std::string(what) + ": x_min must be positive");
  }
  std::vector<double> tail;
  for (const double x : values) {
    if (x >= x_min) tail.push_back(x);
  }
  if (tail.size() < std::max<std::size_t>(min_samples, 2)) {
    throw std::invalid_argument(std::string(what) + ": " +
                                std::to_string(tail.size()) +
                                " samples at or above x_min, need " +
                                std::to_string(std::max<std::size_t>(min_samples, 2)));
  }
  return tail;
}

}  // namespace

DistributionFit fit_power_law(std::span<const double> values, double x_min,
                              std::size_t min_samples) {
  const auto tail = tail_of(values, x_min, min_samples, "power-law fit");
  double sum_log = 0.0;
  for (const double x : tail) sum_log += std::log(x / x_min);
  if (!(sum_log > 0.0)) {
    throw std::invalid_argument("power-law fit: all tail samples equal x_min");
  }
  const auto n = static_cast<double>(tail.size());
  const double a = 1.0 + n / sum_log;  // p(x) = (a-1)/x_min (x/x_min)^-a
  DistributionFit fit;
  fit.model = FitModel::PowerLaw;
  fit.parameter = -a;
  fit.x_min = x_min;
  fit.n_tail = tail.size();
  fit.log_likelihood = n * std::log((a - 1.0) / x_min) - a * sum_log;
  fit.method = "mle-continuous";

  // Binned analogue of a straight-line fit on a log-log plot.
  const auto h = log_binned_histogram(tail, 5.0);
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t b = 0; b < h.density.size(); ++b) {
    if (h.counts[b] == 0) continue;
    lx.push_back(std::log(h.center(b)));
    ly.push_back(std::log(h.density[b]));
  }
  fit.binned_slope = lx.size() >= 2 ? fit_line(lx, ly).slope : 0.0;
  return fit;
}

DistributionFit fit_exponential(std::span<const double> values, double x_min,
                                std::size_t min_samples) {
  const auto tail = tail_of(values, x_min, min_samples, "exponential fit");
  double excess = 0.0;
  for (const double x : tail) excess += x - x_min;
  if (!(excess > 0.0)) {
    throw std::invalid_argument("exponential fit: all tail samples equal x_min");
  }
  const auto n = static_cast<double>(tail.size());
  const double rate = n / excess;
  DistributionFit fit;
  fit.model = FitModel::Exponential;
  fit.parameter = rate;
  fit.x_min = x_min;
  fit.n_tail = tail.size();
  fit.log_likelihood = n * std::log(rate) - rate * excess;
  fit.method = "mle-continuous";
  return fit;
}

ModelComparison compare_models(std::span<const double> values, double x_min) {
  ModelComparison out;
  out.power_law = fit_power_law(values, x_min, 2);
  out.exponential = fit_exponential(values, x_min, 2);
  out.log_likelihood_ratio = out.power_law.log_likelihood - out.exponential.log_likelihood;
  out.preferred = out.log_likelihood_ratio >= 0.0 ? FitModel::PowerLaw : FitModel::Exponential;
  out.low_confidence = out.power_law.n_tail < kMinFitSamples;

  const double a = -out.power_law.parameter;
  const double rate = out.exponential.parameter;
  std::vector<double> pointwise;
  for (const double x : values) {
    if (x < x_min) continue;
    const double lp = std::log((a - 1.0) / x_min) - a * std::log(x / x_min);
    const double le = std::log(rate) - rate * (x - x_min);
    pointwise.push_back(lp - le);
  }
  double mean = 0.0;
  for (const double d : pointwise) mean += d;
  mean /= static_cast<double>(pointwise.size());
  double var = 0.0;
  for (const double d : pointwise) var += (d - mean) * (d - mean);
  var /= static_cast<double>(pointwise.size());
  const double denom = std::sqrt(static_cast<double>(pointwise.size()) * var);
  out.normalized_ratio = denom > 0.0 ? out.log_likelihood_ratio / denom : 0.0;
  return out;
}

}  // namespace fquake
