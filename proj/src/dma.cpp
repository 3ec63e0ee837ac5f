#include "fquake/dma.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fquake/parallel.hpp"

namespace fquake {

double dma_sigma(std::span<const double> values, std::size_t n) {
  const std::size_t t = values.size();
  if (n < 2 || n > t / 2) {
    throw std::invalid_argument("DMA window " + std::to_string(n) +
                                " outside [2, " + std::to_string(t / 2) + "]");
  }
  // Centre on the first value: sigma is shift-invariant and the running
  // window sum stays small, which keeps the residuals accurate.
  const double origin = values[0];
  double window_sum = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) window_sum += values[k] - origin;

  double sum_sq = 0.0;
  for (std::size_t j = n - 1; j < t; ++j) {
    window_sum += values[j] - origin;
    if (j >= n) window_sum -= values[j - n] - origin;
    const double residual = (values[j] - origin) - window_sum / static_cast<double>(n);
    sum_sq += residual * residual;
  }
  return std::sqrt(sum_sq / static_cast<double>(t - n + 1));
}

double dma_sigma(const IndexSeries& series, std::size_t n) {
  return dma_sigma(series.values(), n);
}

std::vector<std::size_t> dma_grid(std::size_t length, const DmaGrid& grid) {
  const std::size_t hi = grid.n_max == 0 ? length / 2 : std::min(grid.n_max, length / 2);
  const std::size_t lo = std::max<std::size_t>(grid.n_min, 2);
  if (grid.points_per_decade == 0) {
    throw std::invalid_argument("grid needs at least one point per decade");
  }
  std::vector<std::size_t> out;
  if (hi < lo) return out;
  const double step = 1.0 / static_cast<double>(grid.points_per_decade);
  const double top = std::log10(static_cast<double>(hi));
  for (std::size_t i = 0;; ++i) {
    const double e = std::log10(static_cast<double>(lo)) + step * static_cast<double>(i);
    if (e > top + 1e-12) break;
    const auto n = static_cast<std::size_t>(std::llround(std::pow(10.0, e)));
    if (n >= lo && n <= hi && (out.empty() || n > out.back())) out.push_back(n);
  }
  if (out.back() != hi) out.push_back(hi);
  return out;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("line fit needs >= 2 paired points");
  }
  const auto m = static_cast<double>(x.size());
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("line fit needs distinct x values");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / m);
  return fit;
}

HurstProfile hurst_global(std::span<const double> values, const DmaGrid& grid) {
  if (values.size() < 8) {
    throw std::invalid_argument("Hurst estimation needs at least 8 values");
  }
  HurstProfile out;
  out.n = dma_grid(values.size(), grid);
  if (out.n.size() < 5) {
    throw std::invalid_argument("DMA grid has " + std::to_string(out.n.size()) +
                                " points; need at least 5");
  }
  std::vector<double> log_n;
  std::vector<double> log_sigma;
  out.sigma.reserve(out.n.size());
  for (const std::size_t n : out.n) {
    const double s = dma_sigma(values, n);
    out.sigma.push_back(s);
    if (s > 0.0) {
      log_n.push_back(std::log(static_cast<double>(n)));
      log_sigma.push_back(std::log(s));
    }
  }
  if (log_n.size() < 3) {
    throw std::invalid_argument("fewer than 3 grid points with nonzero sigma");
  }
  const auto fit = fit_line(log_n, log_sigma);
  out.hurst = fit.slope;
  out.intercept = fit.intercept;
  out.residual = fit.rms_residual;
  out.fitted_points = log_n.size();
  return out;
}

HurstProfile hurst_global(const IndexSeries& series, const DmaGrid& grid) {
  return hurst_global(series.values(), grid);
}

SlidingHurst hurst_sliding(const IndexSeries& series, std::size_t window,
                           std::size_t step, const DmaGrid& grid,
                           unsigned workers) {
  const std::size_t t = series.size();
  if (window > t) {
    throw std::invalid_argument("sliding window " + std::to_string(window) +
                                " exceeds series length " + std::to_string(t));
  }
  if (step == 0) throw std::invalid_argument("sliding step must be >= 1");
  SlidingHurst out;
  out.window = window;
  out.step = step;
  for (std::size_t j = 0; j + window <= t; j += step) out.day.push_back(j);
  out.hurst.resize(out.day.size());
  const auto values = series.values();
  parallel_for(out.day.size(), workers, [&](std::size_t i) {
    out.hurst[i] = hurst_global(values.subspan(out.day[i], window), grid).hurst;
  });
  return out;
}

}  // namespace fquake
