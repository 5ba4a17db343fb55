// Command-line front end: single runs, parameter sweeps and event traces.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "teds/teds.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> teds;
  std::optional<int> blackholes;
  std::optional<double> trust_interval;
  std::optional<double> p_loss;
  std::optional<double> sim_time;
  std::string out;
  int reps = 10;
  unsigned threads = 0;
  bool emit_per_run = false;
  std::vector<int> counts;
  std::vector<double> intervals;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "scenario file of key = value lines");
  cmd->add_option("--seed", o.seed, "seed (sweeps: seed of replication 0)");
  cmd->add_option("--teds", o.teds, "trust layer on|off")->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--blackholes", o.blackholes, "number of blackhole nodes");
  cmd->add_option("--trust-interval", o.trust_interval, "trust interval in seconds");
  cmd->add_option("--p-loss", o.p_loss, "per-copy link loss probability");
  cmd->add_option("--sim-time", o.sim_time, "simulated seconds");
  cmd->add_option("--out", o.out, "CSV output path");
}

teds::ScenarioConfig resolve(const Overrides& o) {
  teds::ScenarioConfig c;
  if (!o.config_path.empty()) c = teds::load_config(o.config_path, c);
  if (o.seed) c.seed = *o.seed;
  if (o.teds) c.teds_enabled = *o.teds == "on";
  if (o.blackholes) c.blackhole_count = *o.blackholes;
  if (o.trust_interval) c.trust_interval_s = *o.trust_interval;
  if (o.p_loss) c.p_loss = *o.p_loss;
  if (o.sim_time) c.sim_time_s = *o.sim_time;
  c.validate();
  return c;
}

std::string per_run_path(const std::string& out) {
  const auto dot = out.rfind('.');
  if (dot == std::string::npos || out.find('/', dot) != std::string::npos) return out + ".runs.csv";
  return out.substr(0, dot) + ".runs" + out.substr(dot);
}

void emit_sweep(const teds::SweepResult& res, const Overrides& o) {
  const std::string text = teds::aggregate_csv(res.rows);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    teds::write_file(o.out, text);
  }
  if (o.emit_per_run) {
    std::ostringstream runs;
    teds::write_per_run_csv(runs, res.runs);
    if (o.out.empty()) {
      std::cout << '\n' << runs.str();
    } else {
      teds::write_file(per_run_path(o.out), runs.str());
    }
  }
}

void print_report(const teds::ScenarioConfig& c, const teds::MetricsReport& m) {
  std::printf("scheme             %s\n", teds::scheme_name(c.teds_enabled).c_str());
  std::printf("seed               %llu\n", static_cast<unsigned long long>(c.seed));
  std::printf("blackholes         %d\n", c.blackhole_count);
  std::printf("trust interval     %g s\n", c.trust_interval_s);
  std::printf("generated          %llu\n", static_cast<unsigned long long>(m.data_generated));
  std::printf("delivered          %llu\n", static_cast<unsigned long long>(m.data_delivered));
  std::printf("pdr                %.6g\n", m.pdr);
  std::printf("control routing    %llu\n", static_cast<unsigned long long>(m.control_routing));
  std::printf("control trust      %llu\n", static_cast<unsigned long long>(m.control_trust));
  if (m.normalized_overhead) {
    std::printf("normalized overhead %.6g\n", *m.normalized_overhead);
  } else {
    std::printf("normalized overhead NA\n");
  }
  std::printf("adversaries       ");
  for (const auto& [node, t] : m.first_detection_time_s) {
    if (t) {
      std::printf(" %u@%.3f", node, *t);
    } else {
      std::printf(" %u@-", node);
    }
  }
  std::printf("\n");
  std::printf("blacklisted       ");
  for (auto n : m.blacklist_final) std::printf(" %u", n);
  std::printf("\n");
  for (std::size_t i = 0; i < m.flows.size(); ++i) {
    const auto& f = m.flows[i];
    std::printf("flow %2zu %3u -> %3u start %7.3f  %llu/%llu\n", i, f.flow.source, f.flow.destination,
                f.flow.start_time, static_cast<unsigned long long>(f.delivered),
                static_cast<unsigned long long>(f.generated));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trust-enhanced routing simulator"};
  app.require_subcommand(1);
  Overrides o;

  auto* run = app.add_subcommand("run", "single scenario, report to stdout");
  add_common(run, o);

  auto* sbh = app.add_subcommand("sweep-blackhole", "TEDS and AODV over a range of blackhole counts");
  add_common(sbh, o);
  sbh->add_option("--reps", o.reps, "replications per cell")->check(CLI::PositiveNumber);
  sbh->add_option("--counts", o.counts, "blackhole counts (default 0 2 ... 16)");
  sbh->add_option("--threads", o.threads, "worker threads (0: all cores)");
  sbh->add_flag("--emit-per-run", o.emit_per_run, "also write one row per run");

  auto* sti = app.add_subcommand("sweep-interval", "TEDS over a range of trust intervals");
  add_common(sti, o);
  sti->add_option("--reps", o.reps, "replications per cell")->check(CLI::PositiveNumber);
  sti->add_option("--intervals", o.intervals, "trust intervals in seconds (default 10 20 ... 60)");
  sti->add_option("--threads", o.threads, "worker threads (0: all cores)");
  sti->add_flag("--emit-per-run", o.emit_per_run, "also write one row per run");

  auto* trace = app.add_subcommand("trace", "single scenario, one line per transmission");
  add_common(trace, o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const auto cfg = resolve(o);
      const auto m = teds::run_scenario(cfg);
      print_report(cfg, m);
      if (!o.out.empty()) {
        teds::RunRecord r;
        r.scheme = teds::scheme_name(cfg.teds_enabled);
        r.blackhole_count = cfg.blackhole_count;
        r.trust_interval_s = cfg.trust_interval_s;
        r.seed = cfg.seed;
        r.data_generated = m.data_generated;
        r.data_delivered = m.data_delivered;
        r.pdr = m.pdr;
        r.control_routing = m.control_routing;
        r.control_trust = m.control_trust;
        r.overhead = m.normalized_overhead;
        std::ostringstream s;
        teds::write_per_run_csv(s, {r});
        teds::write_file(o.out, s.str());
      }
    } else if (sbh->parsed()) {
      const auto cfg = resolve(o);
      const auto counts = o.counts.empty() ? teds::kDefaultBlackholeCounts : o.counts;
      emit_sweep(teds::sweep_blackhole(cfg, counts, {o.reps, o.threads}), o);
    } else if (sti->parsed()) {
      // a tenth of the nodes unless told otherwise
      auto cfg = resolve(o);
      if (!o.blackholes) {
        cfg.blackhole_count = cfg.rows * cfg.cols / 10;
        cfg.validate();
      }
      const auto intervals = o.intervals.empty() ? teds::kDefaultTrustIntervals : o.intervals;
      emit_sweep(teds::sweep_trust_interval(cfg, intervals, {o.reps, o.threads}), o);
    } else if (trace->parsed()) {
      const auto cfg = resolve(o);
      const auto m = teds::run_scenario(cfg, true);
      std::ofstream file;
      std::ostream* out = &std::cout;
      if (!o.out.empty()) {
        file.open(o.out, std::ios::binary | std::ios::trunc);
        if (!file) throw std::runtime_error("cannot open '" + o.out + "' for writing");
        out = &file;
      }
      *out << "time,node,kind,packet_id,next_hop\n";
      for (const auto& rec : m.raw.trace) *out << teds::format_trace_line(rec) << '\n';
      out->flush();
      if (!*out) throw std::runtime_error("write to '" + o.out + "' failed");
    }
  } catch (const teds::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
