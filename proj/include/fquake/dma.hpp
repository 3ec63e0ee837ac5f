#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fquake/series.hpp"

namespace fquake {

/// Geometric grid of moving-average window sizes in [n_min, n_max].
/// n_max == 0 means T/2.
struct DmaGrid {
  std::size_t points_per_decade = 24;
  std::size_t n_min = 2;
  std::size_t n_max = 0;
};

struct HurstProfile {
  std::vector<std::size_t> n;
  std::vector<double> sigma;
  double hurst = 0.0;      // slope of log sigma vs log n
  double intercept = 0.0;  // natural-log intercept
  double residual = 0.0;   // RMS of the log-log fit residuals
  std::size_t fitted_points = 0;
};

struct SlidingHurst {
  std::vector<std::size_t> day;  // first day of each window
  std::vector<double> hurst;
  std::size_t window = 0;
  std::size_t step = 0;
};

/// Residual standard deviation of the series around its backward moving
/// average of width n:
///
///   sigma(n) = sqrt( mean_{j=n-1..T-1} (F_j - (1/n) sum_{k<n} F_{j-k})^2 )
///
/// The mean runs over the T-n+1 positions where a full window exists.
/// Requires 2 <= n <= T/2.
double dma_sigma(std::span<const double> values, std::size_t n);
double dma_sigma(const IndexSeries& series, std::size_t n);

/// Integer window sizes of the geometric grid for a series of length T.
std::vector<std::size_t> dma_grid(std::size_t length, const DmaGrid& grid = {});

/// sigma_DMA over the grid and the unweighted least-squares slope of
/// log sigma against log n. Zero-sigma points are left out of the fit.
HurstProfile hurst_global(std::span<const double> values,
                          const DmaGrid& grid = {});
HurstProfile hurst_global(const IndexSeries& series, const DmaGrid& grid = {});

/// hurst_global on every slice [j, j + window) for j = 0, step, 2*step, ...
/// up to T - window. Slices are evaluated on `workers` threads (0 = one per
/// hardware thread); output is ordered by j.
SlidingHurst hurst_sliding(const IndexSeries& series, std::size_t window,
                           std::size_t step, const DmaGrid& grid = {},
                           unsigned workers = 1);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

/// Ordinary least squares y = slope * x + intercept. Needs two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace fquake
