#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace fquake {

/// Daily closing values of an index. Immutable after construction.
///
/// Invariants (checked by the constructor, std::invalid_argument on failure):
/// at least two values, every value finite and > 0, and if dates are given
/// there is one per value and they are strictly increasing.
class IndexSeries {
 public:
  explicit IndexSeries(std::vector<double> values,
                       std::vector<std::string> dates = {},
                       std::string label = {});

  std::span<const double> values() const noexcept { return values_; }
  const std::vector<std::string>& dates() const noexcept { return dates_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t j) const noexcept { return values_[j]; }

 private:
  std::vector<double> values_;
  std::vector<std::string> dates_;
  std::string label_;
};

struct ReturnsSeries {
  std::vector<double> values;  // r_j = (F_{j+1} - F_j) / F_j
  std::string label;
};

struct VolatilityProfile {
  std::size_t window_size = 0;     // T_w, days
  std::vector<double> volatility;  // one per window
};

/// Column selector for CSV ingestion: zero-based index or header name.
using ColumnRef = std::variant<std::size_t, std::string>;

struct CsvColumns {
  ColumnRef value = std::size_t{0};
  std::optional<ColumnRef> date;
};

/// Read a series from a comma-separated file. A header row is optional and
/// detected when the value column of the first row is not numeric. Errors name
/// the 1-based line of the offending row.
IndexSeries load_series(const std::filesystem::path& path,
                        const CsvColumns& columns = {});

ReturnsSeries returns(const IndexSeries& series);

/// Population std of returns inside each of `windows` consecutive windows of
/// floor(T / windows) days. Only returns whose two endpoints lie in the same
/// window are used; trailing remainder days are dropped.
VolatilityProfile window_volatility(const IndexSeries& series,
                                    std::size_t windows);

enum class SynthModel { Gbm, GaussianWalk };

struct SynthParams {
  double start = 1000.0;
  double drift = 0.0;  // mu: log-drift for gbm, additive drift for the walk
  double sigma = 0.01; // log-return std for gbm, step std for the walk
};

/// Deterministic synthetic series of `days` values.
///   gbm:  F_{j+1} = F_j * exp(mu + sigma * z_j)
///   walk: F_{j+1} = F_j + mu + sigma * z_j (must stay positive)
IndexSeries synth_series(SynthModel model, std::size_t days,
                         const SynthParams& params, std::uint64_t seed);

SynthModel parse_synth_model(const std::string& name);
std::string to_string(SynthModel model);

/// Population mean and standard deviation.
struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};
MeanStd mean_std(std::span<const double> xs);

}  // namespace fquake
