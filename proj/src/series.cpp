#include "fquake/series.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "fquake/rng.hpp"
#include "fquake/text.hpp"

namespace fquake {

IndexSeries::IndexSeries(std::vector<double> values,
                         std::vector<std::string> dates, std::string label)
    : values_(std::move(values)),
      dates_(std::move(dates)),
      label_(std::move(label)) {
  if (values_.size() < 2) {
    throw std::invalid_argument("index series needs at least 2 values, got " +
                                std::to_string(values_.size()));
  }
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_[j]) || values_[j] <= 0.0) {
      throw std::invalid_argument("index value at position " +
                                  std::to_string(j) + " is not positive");
    }
  }
  if (!dates_.empty()) {
    if (dates_.size() != values_.size()) {
      throw std::invalid_argument("dates and values differ in length");
    }
    // ISO-8601 day labels order lexicographically.
    for (std::size_t j = 1; j < dates_.size(); ++j) {
      if (!(dates_[j - 1] < dates_[j])) {
        throw std::invalid_argument("dates not strictly increasing at " +
                                    dates_[j]);
      }
    }
  }
}

namespace {

std::optional<std::size_t> resolve_column(const ColumnRef& ref,
                                          const std::vector<std::string>& header) {
  if (const auto* index = std::get_if<std::size_t>(&ref)) return *index;
  const auto& name = std::get<std::string>(ref);
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (trim(header[c]) == name) return c;
  }
  return std::nullopt;
}

}  // namespace

IndexSeries load_series(const std::filesystem::path& path,
                        const CsvColumns& columns) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  std::vector<double> values;
  std::vector<std::string> dates;
  std::optional<std::size_t> value_col;
  std::optional<std::size_t> date_col;
  bool first = true;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);

    if (first) {
      first = false;
      const bool by_name =
          std::holds_alternative<std::string>(columns.value) ||
          (columns.date && std::holds_alternative<std::string>(*columns.date));
      bool header = by_name;
      if (!header) {
        const auto c = std::get<std::size_t>(columns.value);
        header = c < fields.size() && !parse_double(fields[c]).has_value();
      }
      if (header) {
        value_col = resolve_column(columns.value, fields);
        if (!value_col) {
          throw std::runtime_error(path.string() + ": no column named '" +
                                   std::get<std::string>(columns.value) + "'");
        }
        if (columns.date) {
          date_col = resolve_column(*columns.date, fields);
          if (!date_col) {
            throw std::runtime_error(path.string() + ": date column not found");
          }
        }
        continue;
      }
      value_col = std::get<std::size_t>(columns.value);
      if (columns.date) date_col = std::get<std::size_t>(*columns.date);
    }

    const auto where = path.string() + ":" + std::to_string(line_no);
    if (*value_col >= fields.size()) {
      throw std::runtime_error(where + ": missing value column");
    }
    const auto value = parse_double(fields[*value_col]);
    if (!value) {
      throw std::runtime_error(where + ": non-numeric value '" +
                               trim(fields[*value_col]) + "'");
    }
    if (!(*value > 0.0) || !std::isfinite(*value)) {
      throw std::runtime_error(where + ": non-positive value '" +
                               trim(fields[*value_col]) + "'");
    }
    values.push_back(*value);
    if (date_col) {
      if (*date_col >= fields.size()) {
        throw std::runtime_error(where + ": missing date column");
      }
      dates.push_back(trim(fields[*date_col]));
    }
  }
  if (values.size() < 2) {
    throw std::runtime_error(path.string() + ": fewer than 2 data rows");
  }
  return IndexSeries(std::move(values), std::move(dates),
                     path.filename().string());
}

ReturnsSeries returns(const IndexSeries& series) {
  const auto f = series.values();
  ReturnsSeries out;
  out.label = series.label();
  out.values.reserve(f.size() - 1);
  for (std::size_t j = 0; j + 1 < f.size(); ++j) {
    out.values.push_back((f[j + 1] - f[j]) / f[j]);
  }
  return out;
}

MeanStd mean_std(std::span<const double> xs) {
  MeanStd out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.std = std::sqrt(ss / static_cast<double>(xs.size()));
  return out;
}

VolatilityProfile window_volatility(const IndexSeries& series,
                                    std::size_t windows) {
  if (windows == 0) throw std::invalid_argument("window count must be >= 1");
  const std::size_t window_size = series.size() / windows;
  if (window_size < 2) {
    throw std::invalid_argument("too many windows (" + std::to_string(windows) +
                                ") for a series of " +
                                std::to_string(series.size()) + " days");
  }
  const auto r = returns(series).values;
  VolatilityProfile out;
  out.window_size = window_size;
  out.volatility.reserve(windows);
  for (std::size_t w = 0; w < windows; ++w) {
    const std::size_t begin = w * window_size;
    const std::span<const double> inside(r.data() + begin, window_size - 1);
    out.volatility.push_back(mean_std(inside).std);
  }
  return out;
}

IndexSeries synth_series(SynthModel model, std::size_t days,
                         const SynthParams& params, std::uint64_t seed) {
  if (days < 2) throw std::invalid_argument("synthetic series needs >= 2 days");
  if (!(params.sigma >= 0.0) || !std::isfinite(params.sigma)) {
    throw std::invalid_argument("sigma must be finite and >= 0");
  }
  if (!(params.start > 0.0) || !std::isfinite(params.start)) {
    throw std::invalid_argument("start price must be positive");
  }
  if (!std::isfinite(params.drift)) {
    throw std::invalid_argument("drift must be finite");
  }
  Rng rng(seed);
  std::vector<double> f;
  f.reserve(days);
  f.push_back(params.start);
  for (std::size_t j = 1; j < days; ++j) {
    const double z = rng.normal();
    double next = 0.0;
    if (model == SynthModel::Gbm) {
      next = f.back() * std::exp(params.drift + params.sigma * z);
    } else {
      next = f.back() + params.drift + params.sigma * z;
    }
    if (!(next > 0.0) || !std::isfinite(next)) {
      throw std::invalid_argument(
          "synthetic walk left the positive domain at day " +
          std::to_string(j) + "; raise the start price");
    }
    f.push_back(next);
  }
  return IndexSeries(std::move(f), {}, "synth-" + to_string(model));
}

SynthModel parse_synth_model(const std::string& name) {
  if (name == "gbm") return SynthModel::Gbm;
  if (name == "walk" || name == "iid-gaussian-walk") return SynthModel::GaussianWalk;
  throw std::invalid_argument("unknown synthetic model '" + name + "'");
}

std::string to_string(SynthModel model) {
  return model == SynthModel::Gbm ? "gbm" : "walk";
}

}  // namespace fquake
