#pragma once

// Scenario configuration, per-run metrics, parameter sweeps and CSV output.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <type_traits>
#include <vector>

#include "teds/simulation.hpp"

namespace teds {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ScenarioConfig {
  int rows = 10;
  int cols = 10;
  double spacing_m = 150.0;
  double range_m = 250.0;
  int flow_count = 10;
  double rate_pps = 4.0;
  int max_packets = 300;
  int payload_bytes = 512;
  double sim_time_s = 300.0;
  double trust_interval_s = 20.0;
  double grace_period_s = kDefaultGracePeriod;
  int ewma_n = 2;
  int blackhole_count = 0;
  double p_loss = 0.0;
  std::uint64_t seed = 1;
  bool teds_enabled = true;

  // Not part of the file format.
  double flow_start_min_s = 30.0;
  double flow_start_max_s = 200.0;

  /// Throws ConfigError naming the first offending field.
  void validate() const {
    if (rows < 1) throw ConfigError("rows", "must be at least 1");
    if (cols < 3) throw ConfigError("cols", "must be at least 3 (sources, interior, destinations)");
    if (!(spacing_m > 0.0)) throw ConfigError("spacing_m", "must be positive");
    if (!(range_m > 0.0)) throw ConfigError("range_m", "must be positive");
    if (flow_count < 0) throw ConfigError("flow_count", "must be non-negative");
    if (!(rate_pps > 0.0)) throw ConfigError("rate_pps", "must be positive");
    if (max_packets < 0) throw ConfigError("max_packets", "must be non-negative");
    if (payload_bytes < 0) throw ConfigError("payload_bytes", "must be non-negative");
    if (!(sim_time_s > 0.0)) throw ConfigError("sim_time_s", "must be positive");
    if (!(trust_interval_s > 0.0)) throw ConfigError("trust_interval_s", "must be positive");
    if (!(grace_period_s > 0.0)) throw ConfigError("grace_period_s", "must be positive");
    if (ewma_n < 1) throw ConfigError("ewma_n", "must be at least 1");
    const int interior = rows * (cols - 2);
    if (blackhole_count < 0 || blackhole_count > interior) {
      throw ConfigError("blackhole_count", "must lie in [0, " + std::to_string(interior) + "]");
    }
    if (!(p_loss >= 0.0 && p_loss <= 1.0)) throw ConfigError("p_loss", "must lie in [0, 1]");
  }
};

namespace detail {

inline std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto r = std::from_chars(first, last, value);
  if (r.ec != std::errc() || r.ptr != last) throw ConfigError(key, "cannot parse '" + text + "'");
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) throw ConfigError(key, "must be finite");
  }
  return value;
}

inline bool parse_flag(const std::string& key, const std::string& text) {
  if (text == "on" || text == "true" || text == "1" || text == "yes") return true;
  if (text == "off" || text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(key, "expected on/off, got '" + text + "'");
}

}  // namespace detail

/// Assigns one field by name. Unknown keys are an error.
inline void set_config_field(ScenarioConfig& c, const std::string& key, const std::string& value) {
  using detail::parse_number;
  if (key == "rows") c.rows = parse_number<int>(key, value);
  else if (key == "cols") c.cols = parse_number<int>(key, value);
  else if (key == "spacing_m") c.spacing_m = parse_number<double>(key, value);
  else if (key == "range_m") c.range_m = parse_number<double>(key, value);
  else if (key == "flow_count") c.flow_count = parse_number<int>(key, value);
  else if (key == "rate_pps") c.rate_pps = parse_number<double>(key, value);
  else if (key == "max_packets") c.max_packets = parse_number<int>(key, value);
  else if (key == "payload_bytes") c.payload_bytes = parse_number<int>(key, value);
  else if (key == "sim_time_s") c.sim_time_s = parse_number<double>(key, value);
  else if (key == "trust_interval_s") c.trust_interval_s = parse_number<double>(key, value);
  else if (key == "grace_period_s") c.grace_period_s = parse_number<double>(key, value);
  else if (key == "ewma_n") c.ewma_n = parse_number<int>(key, value);
  else if (key == "blackhole_count") c.blackhole_count = parse_number<int>(key, value);
  else if (key == "p_loss") c.p_loss = parse_number<double>(key, value);
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "teds_enabled") c.teds_enabled = detail::parse_flag(key, value);
  else throw ConfigError(key, "unknown field");
}

/// Flat `key = value` lines; `#` starts a comment. Values not mentioned keep
/// the values already in `base`.
inline ScenarioConfig parse_config(std::istream& in, ScenarioConfig base = {}) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError(key, "missing value");
    set_config_field(base, key, value);
  }
  return base;
}

inline ScenarioConfig load_config(const std::string& path, ScenarioConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  return parse_config(in, base);
}

/// Builds the topology, flows and adversary set for `config`. Each random
/// concern draws from its own stream of the config seed, so the same seed
/// yields the same flows whatever the adversary count.
inline Scenario build_scenario(const ScenarioConfig& config) {
  config.validate();
  Scenario sc;
  sc.seed = config.seed;
  sc.topology = build_grid_topology(config.rows, config.cols, config.spacing_m, config.range_m);

  FlowGenerationParams fp;
  fp.flow_count = config.flow_count;
  fp.start_min = config.flow_start_min_s;
  fp.start_max = config.flow_start_max_s;
  fp.rate_pps = config.rate_pps;
  fp.max_packets = config.max_packets;
  fp.payload_bytes = config.payload_bytes;
  RngStream endpoints(config.seed, RngConcern::Endpoints);
  RngStream starts(config.seed, RngConcern::FlowStarts);
  sc.flows = generate_flows(sc.topology, fp, endpoints, starts);
  // A flow between the same pair twice is allowed; a node is never its own peer
  // since sources and destinations come from opposite columns.

  RngStream adv(config.seed, RngConcern::Adversaries);
  sc.adversaries = place_adversaries(sc.topology, config.blackhole_count, adv);

  sc.params.horizon = config.sim_time_s;
  sc.params.p_loss = config.p_loss;
  sc.params.trust_interval = config.trust_interval_s;
  sc.params.grace_period = config.grace_period_s;
  sc.params.ewma_samples = config.ewma_n;
  sc.params.teds_enabled = config.teds_enabled;
  return sc;
}

// ---------------------------------------------------------------------------
// Metrics

struct MetricsReport {
  double pdr = 0.0;
  std::uint64_t data_generated = 0;
  std::uint64_t data_delivered = 0;
  std::uint64_t control_total = 0;
  std::uint64_t control_routing = 0;
  std::uint64_t control_trust = 0;
  std::optional<double> normalized_overhead;  // empty when nothing was delivered
  std::vector<FlowResult> flows;
  std::set<NodeId> blacklist_final;  // union over honest nodes
  std::map<NodeId, std::optional<SimTime>> first_detection_time_s;  // per adversary
  SimulationResult raw;
};

inline MetricsReport make_report(SimulationResult r) {
  MetricsReport m;
  m.data_generated = r.data_generated;
  m.data_delivered = r.data_delivered;
  m.pdr = r.data_generated == 0 ? 0.0 : static_cast<double>(r.data_delivered) / static_cast<double>(r.data_generated);
  m.control_routing = r.control_routing;
  m.control_trust = r.control_trust;
  m.control_total = r.control_total();
  if (r.data_delivered > 0) {
    m.normalized_overhead = static_cast<double>(m.control_total) / static_cast<double>(r.data_delivered);
  }
  m.flows = r.flows;
  for (const auto& [node, list] : r.final_blacklists) m.blacklist_final.insert(list.begin(), list.end());
  for (NodeId a : r.adversaries) {
    auto it = r.first_detection.find(a);
    m.first_detection_time_s[a] = it == r.first_detection.end() ? std::nullopt : std::optional<SimTime>(it->second);
  }
  m.raw = std::move(r);
  return m;
}

inline MetricsReport run_scenario(const ScenarioConfig& config, bool record_trace = false) {
  Scenario sc = build_scenario(config);
  sc.params.record_trace = record_trace;
  return make_report(simulate(std::move(sc)));
}

// ---------------------------------------------------------------------------
// Sweeps

struct RunRecord {
  std::string scheme;
  int blackhole_count = 0;
  double trust_interval_s = 0.0;
  int replication = 0;
  std::uint64_t seed = 0;
  std::uint64_t data_generated = 0;
  std::uint64_t data_delivered = 0;
  double pdr = 0.0;
  std::uint64_t control_routing = 0;
  std::uint64_t control_trust = 0;
  std::optional<double> overhead;
};

struct AggregateRow {
  std::string scheme;
  int blackhole_count = 0;
  double trust_interval_s = 0.0;
  int replications = 0;
  double pdr_mean = 0.0;
  double pdr_sd = 0.0;
  std::optional<double> overhead_mean;  // over runs that delivered something
  std::optional<double> overhead_sd;
  double control_routing_mean = 0.0;
  double control_trust_mean = 0.0;
  std::uint64_t seed_base = 0;
  int overhead_defined = 0;  // runs contributing to the overhead columns

  double control_total_mean() const { return control_routing_mean + control_trust_mean; }
};

struct SweepOptions {
  int replications = 10;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SweepResult {
  std::vector<AggregateRow> rows;
  std::vector<RunRecord> runs;  // same order as rows, replications ascending

  const AggregateRow& find(const std::string& scheme, int count, double interval) const {
    for (const auto& r : rows) {
      if (r.scheme == scheme && r.blackhole_count == count && r.trust_interval_s == interval) return r;
    }
    throw std::out_of_range("no sweep row for " + scheme);
  }
};

inline std::string scheme_name(bool teds) { return teds ? "TEDS" : "AODV"; }

/// Mean and sample standard deviation; sd is 0 for a single value.
inline std::pair<double, double> mean_sd(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

inline AggregateRow aggregate(const std::vector<RunRecord>& runs, std::uint64_t seed_base) {
  if (runs.empty()) throw std::invalid_argument("aggregate: no runs");
  AggregateRow row;
  row.scheme = runs.front().scheme;
  row.blackhole_count = runs.front().blackhole_count;
  row.trust_interval_s = runs.front().trust_interval_s;
  row.replications = static_cast<int>(runs.size());
  row.seed_base = seed_base;
  std::vector<double> pdr, ovh, routing, trust;
  for (const auto& r : runs) {
    pdr.push_back(r.pdr);
    if (r.overhead) ovh.push_back(*r.overhead);
    routing.push_back(static_cast<double>(r.control_routing));
    trust.push_back(static_cast<double>(r.control_trust));
  }
  std::tie(row.pdr_mean, row.pdr_sd) = mean_sd(pdr);
  row.overhead_defined = static_cast<int>(ovh.size());
  if (!ovh.empty()) {
    auto [m, s] = mean_sd(ovh);
    row.overhead_mean = m;
    row.overhead_sd = s;
  }
  row.control_routing_mean = mean_sd(routing).first;
  row.control_trust_mean = mean_sd(trust).first;
  return row;
}

namespace detail {

struct Cell {
  ScenarioConfig config;  // seed holds the seed base
};

/// Runs every (cell, replication) pair, possibly in parallel, then folds
/// each cell in order.
inline SweepResult run_cells(const std::vector<Cell>& cells, const SweepOptions& opt) {
  if (opt.replications < 1) throw std::invalid_argument("replications must be at least 1");
  for (const auto& c : cells) c.config.validate();
  const std::size_t reps = static_cast<std::size_t>(opt.replications);
  const std::size_t total = cells.size() * reps;
  std::vector<RunRecord> records(total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      try {
        const Cell& cell = cells[job / reps];
        const int r = static_cast<int>(job % reps);
        ScenarioConfig cfg = cell.config;
        cfg.seed = cell.config.seed + static_cast<std::uint64_t>(r);
        const MetricsReport m = run_scenario(cfg);
        RunRecord& rec = records[job];
        rec.scheme = scheme_name(cfg.teds_enabled);
        rec.blackhole_count = cfg.blackhole_count;
        rec.trust_interval_s = cfg.trust_interval_s;
        rec.replication = r;
        rec.seed = cfg.seed;
        rec.data_generated = m.data_generated;
        rec.data_delivered = m.data_delivered;
        rec.pdr = m.pdr;
        rec.control_routing = m.control_routing;
        rec.control_trust = m.control_trust;
        rec.overhead = m.normalized_overhead;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned n = opt.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opt.threads;
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(total, 1)));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  SweepResult out;
  out.runs = records;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<RunRecord> cell_runs(records.begin() + static_cast<std::ptrdiff_t>(c * reps),
                                     records.begin() + static_cast<std::ptrdiff_t>((c + 1) * reps));
    out.rows.push_back(aggregate(cell_runs, cells[c].config.seed));
  }
  return out;
}

}  // namespace detail

inline const std::vector<int> kDefaultBlackholeCounts{0, 2, 4, 6, 8, 10, 12, 14, 16};
inline const std::vector<double> kDefaultTrustIntervals{10, 20, 30, 40, 50, 60};

/// For each count, a TEDS row then an AODV row; both arms use the same seeds.
inline SweepResult sweep_blackhole(const ScenarioConfig& base, const std::vector<int>& counts,
                                   const SweepOptions& opt) {
  std::vector<detail::Cell> cells;
  for (int count : counts) {
    for (bool teds : {true, false}) {
      ScenarioConfig c = base;
      c.blackhole_count = count;
      c.teds_enabled = teds;
      cells.push_back({c});
    }
  }
  return detail::run_cells(cells, opt);
}

/// One TEDS row per interval. The caller sets the adversary count.
inline SweepResult sweep_trust_interval(const ScenarioConfig& base, const std::vector<double>& intervals,
                                        const SweepOptions& opt) {
  std::vector<detail::Cell> cells;
  for (double interval : intervals) {
    ScenarioConfig c = base;
    c.trust_interval_s = interval;
    c.teds_enabled = true;
    cells.push_back({c});
  }
  return detail::run_cells(cells, opt);
}

// ---------------------------------------------------------------------------
// CSV

inline std::string format_g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline constexpr const char* kUndefined = "NA";

inline const char* kAggregateHeader =
    "scheme,blackhole_count,trust_interval_s,replications,pdr_mean,pdr_sd,overhead_mean,overhead_sd,"
    "control_routing_mean,control_trust_mean,seed_base";

inline const char* kPerRunHeader =
    "scheme,blackhole_count,trust_interval_s,replication,seed,data_generated,data_delivered,pdr,"
    "control_routing,control_trust,overhead";

inline void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << kAggregateHeader << '\n';
  for (const auto& r : rows) {
    out << r.scheme << ',' << r.blackhole_count << ',' << format_g6(r.trust_interval_s) << ',' << r.replications << ','
        << format_g6(r.pdr_mean) << ',' << format_g6(r.pdr_sd) << ','
        << (r.overhead_mean ? format_g6(*r.overhead_mean) : kUndefined) << ','
        << (r.overhead_sd ? format_g6(*r.overhead_sd) : kUndefined) << ',' << format_g6(r.control_routing_mean) << ','
        << format_g6(r.control_trust_mean) << ',' << r.seed_base << '\n';
  }
}

/// Full precision so that aggregates can be recomputed exactly.
inline void write_per_run_csv(std::ostream& out, const std::vector<RunRecord>& runs) {
  out << kPerRunHeader << '\n';
  for (const auto& r : runs) {
    out << r.scheme << ',' << r.blackhole_count << ',' << format_g17(r.trust_interval_s) << ',' << r.replication << ','
        << r.seed << ',' << r.data_generated << ',' << r.data_delivered << ',' << format_g17(r.pdr) << ','
        << r.control_routing << ',' << r.control_trust << ','
        << (r.overhead ? format_g17(*r.overhead) : kUndefined) << '\n';
  }
}

inline std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
  std::ostringstream s;
  write_aggregate_csv(s, rows);
  return s.str();
}

/// Writes `text` to `path`, throwing if the file cannot be written.
inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace teds
