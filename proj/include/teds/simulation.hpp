#pragma once

// Single-threaded event loop that owns every node of one scenario.

#include <cstdio>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "teds/packets.hpp"
#include "teds/routing.hpp"
#include "teds/simnet.hpp"

namespace teds {

struct SimulationParams {
  double horizon = 300.0;
  double hop_latency = BroadcastMedium::kDefaultHopLatency;
  double p_loss = 0.0;
  double trust_interval = 20.0;
  double grace_period = kDefaultGracePeriod;
  int ewma_samples = 2;
  bool teds_enabled = true;
  std::uint32_t seq_boost = 100;
  std::size_t queue_capacity = 64;
  bool record_trace = false;    // per-transmission log
  bool record_details = false;  // trust, blacklist, watchdog and RREP logs
};

/// Everything needed to reproduce one run.
struct Scenario {
  Topology topology;
  std::vector<Flow> flows;
  std::vector<NodeId> adversaries;
  SimulationParams params;
  std::uint64_t seed = 1;
};

struct TransmissionRecord {
  SimTime time = 0.0;
  NodeId node = kNoNode;
  PacketKind kind = PacketKind::Data;
  PacketId packet_id = 0;
  NodeId next_hop = kBroadcast;
};

/// Stable one-line rendering: time,node,kind,packet_id,next_hop.
inline std::string format_trace_line(const TransmissionRecord& r) {
  char buf[128];
  if (r.next_hop == kBroadcast) {
    std::snprintf(buf, sizeof buf, "%.6f,%u,%s,%llu,*", r.time, r.node, std::string(to_string(r.kind)).c_str(),
                  static_cast<unsigned long long>(r.packet_id));
  } else {
    std::snprintf(buf, sizeof buf, "%.6f,%u,%s,%llu,%u", r.time, r.node, std::string(to_string(r.kind)).c_str(),
                  static_cast<unsigned long long>(r.packet_id), r.next_hop);
  }
  return buf;
}

struct BlacklistRecord {
  SimTime time = 0.0;
  NodeId by = kNoNode;
  NodeId accused = kNoNode;
  BlacklistCause cause = BlacklistCause::Detection;
};

struct TrustLogRecord {
  SimTime time = 0.0;
  NodeId by = kNoNode;
  std::variant<TrustObservation, TrustEvaluation> entry;
};

struct WatchLogRecord {
  SimTime time = 0.0;
  NodeId watcher = kNoNode;
  WatchEntry entry;
  WatchResolution resolution = WatchResolution::Expired;
};

struct ReplyLogRecord {
  SimTime time = 0.0;
  NodeId source = kNoNode;
  NodeId from = kNoNode;
  RouteReply reply;
  bool adopted = false;  // set on the reply that became the route
};

struct FlowResult {
  Flow flow;
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
};

struct SimulationResult {
  std::uint64_t data_generated = 0;
  std::uint64_t data_delivered = 0;
  std::uint64_t dropped_adversary = 0;
  std::uint64_t dropped_queue = 0;
  std::uint64_t dropped_no_route = 0;
  std::uint64_t dropped_loss = 0;
  std::uint64_t in_flight = 0;  // queued or on the air at the horizon

  std::uint64_t data_transmissions = 0;
  std::map<PacketKind, std::uint64_t> control_by_kind;
  std::uint64_t control_routing = 0;
  std::uint64_t control_trust = 0;

  std::vector<FlowResult> flows;
  std::vector<NodeId> adversaries;
  std::set<NodeId> blacklisted_any;                  // accused by at least one honest node
  std::map<NodeId, SimTime> first_detection;         // adversary or not
  std::map<NodeId, std::set<NodeId>> final_blacklists;  // honest node -> its blacklist

  std::vector<TransmissionRecord> trace;
  std::vector<BlacklistRecord> blacklist_log;
  std::vector<TrustLogRecord> trust_log;
  std::vector<WatchLogRecord> watch_log;
  std::vector<ReplyLogRecord> reply_log;
  std::uint64_t events_processed = 0;
  SimTime last_event_time = 0.0;

  std::uint64_t control_total() const { return control_routing + control_trust; }
};

class Simulator final : public NodeContext {
 public:
  explicit Simulator(Scenario scenario)
      : sc_(std::move(scenario)),
        medium_(sc_.topology, sc_.params.hop_latency, sc_.params.p_loss, RngStream(sc_.seed, RngConcern::LinkLoss)) {
    if (!(sc_.params.trust_interval > 0.0)) throw std::invalid_argument("trust interval must be positive");
    std::set<NodeId> endpoints;
    for (const auto& f : sc_.flows) {
      if (f.source >= sc_.topology.size() || f.destination >= sc_.topology.size()) {
        throw std::invalid_argument("flow endpoint outside the topology");
      }
      if (f.source == f.destination) throw std::invalid_argument("flow source equals destination");
      endpoints.insert(f.source);
      endpoints.insert(f.destination);
    }
    const std::set<NodeId> adversaries(sc_.adversaries.begin(), sc_.adversaries.end());
    for (NodeId a : adversaries) {
      if (a >= sc_.topology.size()) throw std::invalid_argument("adversary outside the topology");
      if (endpoints.contains(a)) throw std::invalid_argument("an adversary cannot be a flow endpoint");
    }
    agents_.reserve(sc_.topology.size());
    for (NodeId n = 0; n < sc_.topology.size(); ++n) {
      AgentConfig cfg;
      cfg.teds_enabled = sc_.params.teds_enabled;
      cfg.adversary = adversaries.contains(n);
      cfg.grace_period = sc_.params.grace_period;
      cfg.ewma_samples = sc_.params.ewma_samples;
      cfg.seq_boost = sc_.params.seq_boost;
      cfg.queue_capacity = sc_.params.queue_capacity;
      cfg.exempt = endpoints;
      agents_.push_back(std::make_unique<RoutingAgent>(n, std::move(cfg), *this));
      if (sc_.params.record_details) {
        agents_.back()->watchdog().set_resolution_listener(
            [this, n](const WatchEntry& e, WatchResolution how, SimTime at) {
              result_.watch_log.push_back({at, n, e, how});
            });
      }
    }
    result_.adversaries.assign(adversaries.begin(), adversaries.end());
  }

  const Scenario& scenario() const { return sc_; }
  const RoutingAgent& agent(NodeId n) const { return *agents_.at(n); }

  SimulationResult run() {
    if (ran_) throw std::logic_error("Simulator::run called twice");
    ran_ = true;
    for (std::size_t i = 0; i < sc_.flows.size(); ++i) {
      result_.flows.push_back(FlowResult{sc_.flows[i]});
      if (sc_.flows[i].max_packets > 0 && sc_.flows[i].start_time <= sc_.params.horizon) {
        queue_.schedule(sc_.flows[i].start_time, CbrTick{i, 0});
      }
    }
    if (sc_.params.teds_enabled && sc_.params.trust_interval <= sc_.params.horizon) {
      for (NodeId n = 0; n < agents_.size(); ++n) {
        queue_.schedule(sc_.params.trust_interval, NodeTimer{n, Timer{TimerKind::TrustInterval}});
      }
    }

    while (!queue_.empty() && queue_.next_time() <= sc_.params.horizon) {
      auto ev = queue_.pop();
      ++result_.events_processed;
      result_.last_event_time = ev.time;
      std::visit([&](auto& p) { dispatch(p); }, ev.payload);
    }
    finish();
    return std::move(result_);
  }

  // --- NodeContext ---------------------------------------------------------

  SimTime now() const override { return queue_.now(); }

  void transmit(NodeId sender, NodeId receiver, std::variant<DataPacket, ControlPacket> body) override {
    auto frame = std::make_shared<Frame>();
    frame->transmitter = sender;
    frame->receiver = receiver;
    frame->body = std::move(body);
    frame->frame_id = std::holds_alternative<DataPacket>(frame->body) ? 0 : next_control_id_++;
    const PacketKind kind = frame->kind();

    if (kind == PacketKind::Data) {
      ++result_.data_transmissions;
    } else {
      ++result_.control_by_kind[kind];
      if (is_routing_control(kind)) ++result_.control_routing;
      if (is_trust_control(kind)) ++result_.control_trust;
    }
    if (sc_.params.record_trace) {
      result_.trace.push_back({now(), sender, kind, frame->packet_id(), receiver});
    }

    std::shared_ptr<const Frame> shared = frame;
    medium_.transmit(
        sender, now(), [&](NodeId nb, SimTime at) { queue_.schedule(at, Delivery{nb, shared}); },
        [&](NodeId nb) {
          if (kind == PacketKind::Data && nb == receiver) ++result_.dropped_loss;
        });
  }

  void schedule(NodeId node, SimTime at, Timer timer) override { queue_.schedule(at, NodeTimer{node, timer}); }

  void data_delivered(NodeId, const DataPacket& pkt) override {
    ++result_.data_delivered;
    ++result_.flows.at(pkt.flow).delivered;
  }

  void data_dropped(NodeId, const DataPacket&, DropReason why) override {
    switch (why) {
      case DropReason::Adversary: ++result_.dropped_adversary; break;
      case DropReason::QueueOverflow: ++result_.dropped_queue; break;
      case DropReason::NoRoute: ++result_.dropped_no_route; break;
    }
  }

  void blacklisted(NodeId by, NodeId accused, BlacklistCause cause) override {
    result_.blacklisted_any.insert(accused);
    if (cause == BlacklistCause::Detection) result_.first_detection.try_emplace(accused, now());
    if (sc_.params.record_details) result_.blacklist_log.push_back({now(), by, accused, cause});
  }

  void trust_observed(NodeId by, const TrustObservation& obs) override {
    if (sc_.params.record_details) result_.trust_log.push_back({now(), by, obs});
  }

  void trust_evaluated(NodeId by, const TrustEvaluation& ev) override {
    if (sc_.params.record_details) result_.trust_log.push_back({now(), by, ev});
  }

  void reply_received(NodeId source, const RouteReply& rrep, NodeId from) override {
    if (sc_.params.record_details) result_.reply_log.push_back({now(), source, from, rrep, false});
  }

  void route_adopted(NodeId source, const RouteEntry& rt) override {
    if (!sc_.params.record_details) return;
    for (auto it = result_.reply_log.rbegin(); it != result_.reply_log.rend(); ++it) {
      if (it->source == source && it->reply.destination == rt.destination && it->reply.request_id == rt.request_id &&
          it->from == rt.next_hop) {
        it->adopted = true;
        break;
      }
    }
  }

 private:
  struct Delivery {
    NodeId to;
    std::shared_ptr<const Frame> frame;
  };
  struct NodeTimer {
    NodeId node;
    Timer timer;
  };
  struct CbrTick {
    std::size_t flow;
    int index;
  };
  using Payload = std::variant<Delivery, NodeTimer, CbrTick>;

  void dispatch(const Delivery& d) { agents_[d.to]->receive(*d.frame); }

  void dispatch(const NodeTimer& t) {
    agents_[t.node]->on_timer(t.timer);
    if (t.timer.kind == TimerKind::TrustInterval) {
      const SimTime next = now() + sc_.params.trust_interval;
      if (next <= sc_.params.horizon) queue_.schedule(next, NodeTimer{t.node, t.timer});
    }
  }

  void dispatch(const CbrTick& tick) {
    const Flow& f = sc_.flows[tick.flow];
    DataPacket pkt;
    pkt.id = next_data_id_++;
    pkt.source = f.source;
    pkt.destination = f.destination;
    pkt.flow = static_cast<std::uint32_t>(tick.flow);
    pkt.created = now();
    pkt.payload_bytes = f.payload_bytes;
    ++result_.data_generated;
    ++result_.flows[tick.flow].generated;
    agents_[f.source]->originate(pkt);

    const int next = tick.index + 1;
    if (next < f.max_packets) {
      const SimTime at = f.start_time + next / f.rate_pps;
      if (at <= sc_.params.horizon) queue_.schedule(at, CbrTick{tick.flow, next});
    }
  }

  void finish() {
    std::uint64_t in_flight = 0;
    queue_.for_each_pending([&](const auto& ev) {
      if (const auto* d = std::get_if<Delivery>(&ev.payload)) {
        if (d->frame->kind() == PacketKind::Data && d->frame->receiver == d->to) ++in_flight;
      }
    });
    for (const auto& a : agents_) in_flight += a->queue().size();
    result_.in_flight = in_flight;
    for (const auto& a : agents_) {
      if (!a->is_adversary()) result_.final_blacklists[a->id()] = a->trust().blacklisted();
    }
  }

  Scenario sc_;
  BroadcastMedium medium_;
  EventQueue<Payload> queue_;
  std::vector<std::unique_ptr<RoutingAgent>> agents_;
  SimulationResult result_;
  PacketId next_data_id_ = 1;
  PacketId next_control_id_ = 1'000'000'000'000ULL;
  bool ran_ = false;
};

inline SimulationResult simulate(Scenario scenario) { return Simulator(std::move(scenario)).run(); }

}  // namespace teds
