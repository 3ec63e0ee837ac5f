#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <type_traits>
#include <vector>

#include "json.hpp"

#include "fquake/experiment.hpp"
#include "fquake/fitstats.hpp"
#include "fquake/text.hpp"

namespace fquake {

using Json = nlohmann::ordered_json;

/// Comma-separated table built in memory. Doubles use the shortest
/// round-trip representation so files are reproducible byte for byte.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  template <typename... Cells>
  CsvTable& row(const Cells&... cells) {
    if (sizeof...(cells) != columns_) throw_width(sizeof...(cells));
    std::size_t i = 0;
    ((text_ += (i++ ? "," : ""), text_ += cell(cells)), ...);
    text_ += '\n';
    return *this;
  }

  const std::string& str() const noexcept { return text_; }

 private:
  template <typename T>
  static std::string cell(const T& v) {
    if constexpr (std::is_floating_point_v<T>) {
      return format_double(static_cast<double>(v));
    } else if constexpr (std::is_integral_v<T>) {
      return std::to_string(v);
    } else {
      return std::string(v);
    }
  }
  [[noreturn]] void throw_width(std::size_t got) const;

  std::size_t columns_;
  std::string text_;
};

/// Files of one command, written together once the command has succeeded.
class OutputSet {
 public:
  void add(const std::string& name, std::string content);
  void add(const std::string& name, const CsvTable& table);
  void add(const std::string& name, const Json& json);
  std::vector<std::string> names() const;
  /// Creates dir if needed; returns the written paths.
  std::vector<std::filesystem::path> write(const std::filesystem::path& dir) const;

 private:
  std::map<std::string, std::string> files_;
};

std::string dump_json(const Json& json);

CsvTable histogram_table(const Histogram& h);
CsvTable quake_table(const std::vector<QuakeRecord>& quakes);
CsvTable wealth_table(const Network& net, const SimulationResult& result);
CsvTable edge_table(const Network& net);
Json network_json(const Network& net);
Json fit_json(const DistributionFit& fit);
Json comparison_json(const ModelComparison& cmp);
Json wealth_json(const WealthSummary& w);

/// FNV-1a of a file's bytes, as 16 hex digits.
std::string file_digest(const std::filesystem::path& path);

}  // namespace fquake
