#include "fquake/report.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <stdexcept>

namespace fquake {

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

void CsvTable::throw_width(std::size_t got) const {
  throw std::logic_error("csv row has " + std::to_string(got) + " cells, header has " +
                         std::to_string(columns_));
}

void OutputSet::add(const std::string& name, std::string content) {
  if (!files_.emplace(name, std::move(content)).second) {
    throw std::logic_error("output file listed twice: " + name);
  }
}

void OutputSet::add(const std::string& name, const CsvTable& table) {
  add(name, table.str());
}

void OutputSet::add(const std::string& name, const Json& json) {
  add(name, dump_json(json));
}

std::vector<std::string> OutputSet::names() const {
  std::vector<std::string> out;
  for (const auto& [name, content] : files_) out.push_back(name);
  return out;
}

std::vector<std::filesystem::path> OutputSet::write(const std::filesystem::path& dir) const {
  std::vector<std::filesystem::path> written;
  for (const auto& [name, content] : files_) {
    const auto path = dir / name;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for " + path.string());
    written.push_back(path);
  }
  return written;
}

std::string dump_json(const Json& json) { return json.dump(2) + "\n"; }

CsvTable histogram_table(const Histogram& h) {
  CsvTable t({"bin_center", "density"});
  for (std::size_t b = 0; b < h.density.size(); ++b) t.row(h.center(b), h.density[b]);
  return t;
}

CsvTable quake_table(const std::vector<QuakeRecord>& quakes) {
  CsvTable t({"ordinal", "day", "prediction", "size_signed", "topples"});
  for (const auto& q : quakes) {
    t.row(q.ordinal, q.day, to_string(q.prediction), q.size_signed, q.topples);
  }
  return t;
}

CsvTable wealth_table(const Network& net, const SimulationResult& result) {
  CsvTable t({"agent", "kind", "degree", "capital", "bets"});
  for (std::size_t i = 0; i < result.kinds.size(); ++i) {
    t.row(i, to_string(result.kinds[i]), net.degree(static_cast<NodeId>(i)),
          result.ledger.capital(i), result.ledger.bets(i));
  }
  return t;
}

CsvTable edge_table(const Network& net) {
  CsvTable t({"u", "v"});
  for (const auto& [u, v] : net.edges()) t.row(u, v);
  return t;
}

Json network_json(const Network& net) {
  const auto& p = net.params();
  Json j;
  j["topology"] = to_string(p.topology);
  j["nodes"] = net.size();
  j["edges"] = net.edge_count();
  j["mean_degree"] = net.mean_degree();
  j["seed"] = p.seed;
  if (p.topology == Topology::SmallWorld2D) {
    j["side"] = p.side;
    j["rewire_p"] = p.rewire_p;
    j["rewired"] = p.rewired;
  } else {
    j["links"] = p.links;
  }
  Json hist = Json::array();
  for (const auto& [k, count] : net.degree_histogram()) hist.push_back({k, count});
  j["degree_histogram"] = hist;
  return j;
}

Json fit_json(const DistributionFit& fit) {
  Json j;
  j["model"] = to_string(fit.model);
  j[fit.model == FitModel::PowerLaw ? "exponent" : "rate"] = fit.parameter;
  if (fit.model == FitModel::PowerLaw) j["binned_slope"] = fit.binned_slope;
  j["x_min"] = fit.x_min;
  j["n_tail"] = fit.n_tail;
  j["log_likelihood"] = fit.log_likelihood;
  j["method"] = fit.method;
  return j;
}

Json comparison_json(const ModelComparison& cmp) {
  Json j;
  j["preferred"] = to_string(cmp.preferred);
  j["log_likelihood_ratio"] = cmp.log_likelihood_ratio;
  j["normalized_ratio"] = cmp.normalized_ratio;
  j["low_confidence"] = cmp.low_confidence;
  j["power_law"] = fit_json(cmp.power_law);
  j["exponential"] = fit_json(cmp.exponential);
  return j;
}

Json wealth_json(const WealthSummary& w) {
  Json j;
  j["count"] = w.count;
  j["mean"] = w.mean;
  j["min"] = w.min;
  j["max"] = w.max;
  j["fraction_below_initial"] = w.fraction_below_initial;
  j["fraction_above_10000"] = w.fraction_above_10000;
  return j;
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
    h ^= static_cast<unsigned char>(*it);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fquake
