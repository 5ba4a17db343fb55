#pragma once

// On-demand distance-vector routing with trust hooks.
//
// A reduced AODV: RREQ flooding with duplicate suppression, destination-only
// RREP along the reverse path, RERR toward affected sources, no HELLO, no
// local repair, no expanding ring. On top of it sits the trust layer: each
// honest node watches its next hops, turns watchdog counters into direct
// trust once per interval, exchanges trust with its neighbors, fuses direct
// and indirect trust with Dempster's rule and blacklists neighbors that fall
// below the threshold. Adversaries answer every RREQ with a forged fresh
// route and silently drop data.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "teds/packets.hpp"
#include "teds/trust_engine.hpp"
#include "teds/types.hpp"
#include "teds/watchdog.hpp"

namespace teds {

struct RouteEntry {
  NodeId destination = kNoNode;
  NodeId next_hop = kNoNode;
  int hop_count = 0;
  std::uint32_t dest_seq = 0;
  bool valid = false;
  // Route discovery that produced this entry.
  NodeId request_origin = kNoNode;
  std::uint32_t request_id = 0;
};

enum class DropReason { Adversary, QueueOverflow, NoRoute };

enum class BlacklistCause { Detection, Alert };

/// Trust state one node keeps about one neighbor it has forwarded through.
struct TrustRecord {
  TrustValue direct{kInitialTrust};
  TrustValue overall{kInitialTrust};
  TrustClass last_class = TrustClass::Trusted;
  std::uint32_t updates = 0;
};

/// Outcome of one direct-trust update.
struct TrustObservation {
  NodeId subject = kNoNode;
  ForwardingStats stats;
  double forwarding_probability = 0.0;
  TrustValue measured;
  TrustValue previous;
  TrustValue direct;
};

/// Outcome of fusing direct and indirect trust for one neighbor.
struct TrustEvaluation {
  NodeId subject = kNoNode;
  TrustValue direct;
  BeliefMass combined;
  TrustValue overall;
  TrustClass verdict = TrustClass::Trusted;
  std::size_t recommendations_used = 0;
  std::size_t conflicts_discarded = 0;
};

/// Per-node trust bookkeeping: direct trust records, received
/// recommendations and the blacklist.
class TrustTable {
 public:
  /// Folds one interval of watchdog counters into the EWMA direct trust.
  /// A neighbor seen for the first time starts from the initial trust.
  TrustObservation observe(NodeId subject, const ForwardingStats& stats, double alpha) {
    auto& rec = records_[subject];
    TrustObservation obs;
    obs.subject = subject;
    obs.stats = stats;
    obs.forwarding_probability = forwarding_probability(stats);
    obs.measured = entropy_trust(obs.forwarding_probability);
    obs.previous = rec.direct;
    rec.direct = ewma_update(obs.measured, rec.direct, alpha);
    ++rec.updates;
    obs.direct = rec.direct;
    return obs;
  }

  /// Latest value reported by `recommender` about `subject` replaces any
  /// earlier one.
  void store_recommendation(NodeId recommender, NodeId subject, TrustValue reported) {
    recommendations_[subject][recommender] = reported;
  }

  /// Combines own direct trust with every usable recommendation, folded in
  /// ascending recommender order. A recommendation is usable when the
  /// recommender is not blacklisted and this node holds direct trust about
  /// it. Totally conflicting recommendations are discarded.
  TrustEvaluation evaluate(NodeId subject) const {
    const TrustRecord& rec = records_.at(subject);
    TrustEvaluation ev;
    ev.subject = subject;
    ev.direct = rec.direct;
    BeliefMass mass = bpa_from_trust(rec.direct);
    if (auto it = recommendations_.find(subject); it != recommendations_.end()) {
      for (const auto& [recommender, reported] : it->second) {
        if (recommender == subject || is_blacklisted(recommender)) continue;
        auto weight = records_.find(recommender);
        if (weight == records_.end()) continue;
        const TrustValue idt = indirect_trust(weight->second.direct, reported);
        try {
          mass = dempster_combine(mass, bpa_from_trust(idt));
          ++ev.recommendations_used;
        } catch (const TotalConflictError&) {
          ++ev.conflicts_discarded;
        }
      }
    }
    ev.combined = mass;
    ev.overall = overall_trust(mass);
    ev.verdict = classify(ev.overall);
    return ev;
  }

  void record_verdict(const TrustEvaluation& ev) {
    auto& rec = records_.at(ev.subject);
    rec.overall = ev.overall;
    rec.last_class = ev.verdict;
  }

  bool blacklist(NodeId n) { return blacklist_.insert(n).second; }
  bool is_blacklisted(NodeId n) const { return blacklist_.contains(n); }
  const std::set<NodeId>& blacklisted() const { return blacklist_; }

  const std::map<NodeId, TrustRecord>& records() const { return records_; }
  const TrustRecord* find(NodeId n) const {
    auto it = records_.find(n);
    return it == records_.end() ? nullptr : &it->second;
  }

  /// Recommendations currently held about `subject`, by recommender.
  std::map<NodeId, TrustValue> recommendations_about(NodeId subject) const {
    auto it = recommendations_.find(subject);
    return it == recommendations_.end() ? std::map<NodeId, TrustValue>{} : it->second;
  }

 private:
  std::map<NodeId, TrustRecord> records_;
  std::map<NodeId, std::map<NodeId, TrustValue>> recommendations_;
  std::set<NodeId> blacklist_;
};

// ---------------------------------------------------------------------------

enum class TimerKind { TrustInterval, WatchExpiry, DiscoveryTimeout };

struct Timer {
  TimerKind kind = TimerKind::TrustInterval;
  NodeId destination = kNoNode;  // discovery timeouts
  std::uint32_t request_id = 0;
};

/// Services the simulator provides to a node, plus observation hooks.
class NodeContext {
 public:
  virtual ~NodeContext() = default;

  virtual SimTime now() const = 0;
  /// Hands a frame to the radio. `receiver` is kBroadcast for floods.
  virtual void transmit(NodeId sender, NodeId receiver, std::variant<DataPacket, ControlPacket> body) = 0;
  virtual void schedule(NodeId node, SimTime at, Timer timer) = 0;

  virtual void data_delivered(NodeId /*at*/, const DataPacket&) {}
  virtual void data_dropped(NodeId /*at*/, const DataPacket&, DropReason) {}
  virtual void blacklisted(NodeId /*by*/, NodeId /*accused*/, BlacklistCause) {}
  virtual void trust_observed(NodeId /*by*/, const TrustObservation&) {}
  virtual void trust_evaluated(NodeId /*by*/, const TrustEvaluation&) {}
  virtual void reply_received(NodeId /*source*/, const RouteReply&, NodeId /*from*/) {}
  virtual void route_adopted(NodeId /*source*/, const RouteEntry&) {}
};

struct AgentConfig {
  bool teds_enabled = true;
  bool adversary = false;
  double grace_period = kDefaultGracePeriod;
  int ewma_samples = 2;
  std::uint32_t seq_boost = 100;
  std::size_t queue_capacity = 64;
  double discovery_timeout = 2.8;  // NET_TRAVERSAL_TIME
  int discovery_retries = 2;
  double active_timeout = 3.0;  // ACTIVE_ROUTE_TIMEOUT
  std::set<NodeId> exempt;      // flow endpoints; never blacklisted
};

class RoutingAgent {
 public:
  RoutingAgent(NodeId id, AgentConfig config, NodeContext& ctx)
      : id_(id), cfg_(std::move(config)), ctx_(&ctx), watchdog_(cfg_.grace_period),
        alpha_(smoothing_alpha(cfg_.ewma_samples)) {}

  RoutingAgent(const RoutingAgent&) = delete;
  RoutingAgent& operator=(const RoutingAgent&) = delete;

  NodeId id() const { return id_; }
  bool is_adversary() const { return cfg_.adversary; }
  bool monitoring() const { return cfg_.teds_enabled && !cfg_.adversary; }
  const AgentConfig& config() const { return cfg_; }

  const std::map<NodeId, RouteEntry>& routes() const { return routes_; }
  const TrustTable& trust() const { return trust_; }
  const Watchdog& watchdog() const { return watchdog_; }
  Watchdog& watchdog() { return watchdog_; }
  const std::deque<DataPacket>& queue() const { return queue_; }
  bool is_blacklisted(NodeId n) const { return trust_.is_blacklisted(n); }

  /// Valid route whose next hop is not blacklisted.
  const RouteEntry* usable_route(NodeId dest) const {
    auto it = routes_.find(dest);
    if (it == routes_.end() || !it->second.valid) return nullptr;
    if (trust_.is_blacklisted(it->second.next_hop)) return nullptr;
    return &it->second;
  }

  bool discovery_pending(NodeId dest) const {
    auto it = discoveries_.find(dest);
    return it != discoveries_.end() && it->second.active;
  }

  // --- inputs --------------------------------------------------------------

  /// A data packet produced by a local application.
  void originate(const DataPacket& pkt) {
    source_activity_[pkt.destination] = ctx_->now();
    if (const RouteEntry* rt = usable_route(pkt.destination)) {
      send_data(pkt, rt->next_hop);
      return;
    }
    enqueue(pkt);
    start_discovery(pkt.destination);
  }

  /// Every copy the radio hands this node, addressed to it or not.
  void receive(const Frame& frame) {
    heard_.insert(frame.transmitter);
    if (const auto* data = std::get_if<DataPacket>(&frame.body)) {
      if (monitoring()) watchdog_.record_overheard(frame.transmitter, data->id, ctx_->now());
      if (frame.receiver == id_) handle_data(*data, frame.transmitter);
      return;
    }
    if (frame.receiver != id_ && frame.receiver != kBroadcast) return;
    const auto& ctl = std::get<ControlPacket>(frame.body);
    if (cfg_.adversary) {
      adversary_control(ctl, frame.transmitter);
      return;
    }
    if (trust_.is_blacklisted(frame.transmitter)) return;
    std::visit([&](const auto& body) { handle(ctl, body, frame.transmitter); }, ctl.body);
  }

  void on_timer(const Timer& t) {
    switch (t.kind) {
      case TimerKind::TrustInterval: on_trust_interval(); break;
      case TimerKind::WatchExpiry: watchdog_.expire(ctx_->now()); break;
      case TimerKind::DiscoveryTimeout: on_discovery_timeout(t.destination, t.request_id); break;
    }
  }

  /// Trust-interval processing: update direct trust from the watchdog,
  /// share it, fuse with recommendations, act on untrusted neighbors.
  void on_trust_interval() {
    if (!monitoring()) return;
    const SimTime now = ctx_->now();
    watchdog_.expire(now);
    for (const auto& [nb, stats] : watchdog_.interval_stats()) {
      ctx_->trust_observed(id_, trust_.observe(nb, stats, alpha_));
    }

    TrustShare share;
    for (const auto& [subject, rec] : trust_.records()) {
      if (!trust_.is_blacklisted(subject)) share.entries.push_back({subject, rec.direct});
    }
    if (!share.entries.empty()) {
      ctx_->transmit(id_, kBroadcast, ControlPacket{id_, std::move(share)});
    }

    std::vector<NodeId> untrusted;
    for (const auto& [subject, rec] : trust_.records()) {
      if (trust_.is_blacklisted(subject) || cfg_.exempt.contains(subject)) continue;
      const TrustEvaluation ev = trust_.evaluate(subject);
      trust_.record_verdict(ev);
      ctx_->trust_evaluated(id_, ev);
      if (ev.verdict == TrustClass::Untrusted) untrusted.push_back(subject);
    }
    for (NodeId accused : untrusted) {
      const std::uint32_t seq = ++alert_seq_;
      alerts_seen_.insert({id_, seq});
      add_to_blacklist(accused, BlacklistCause::Detection);
      ctx_->transmit(id_, kBroadcast, ControlPacket{id_, TrustAlert{accused, seq}});
    }
  }

 private:
  // --- data path -----------------------------------------------------------

  void handle_data(const DataPacket& pkt, NodeId from) {
    if (pkt.destination == id_) {
      ctx_->data_delivered(id_, pkt);
      return;
    }
    if (cfg_.adversary) {
      ctx_->data_dropped(id_, pkt, DropReason::Adversary);
      return;
    }
    flows_[{pkt.source, pkt.destination}] = FlowRecord{from, ctx_->now()};
    if (const RouteEntry* rt = usable_route(pkt.destination)) {
      send_data(pkt, rt->next_hop);
      return;
    }
    ctx_->data_dropped(id_, pkt, DropReason::NoRoute);
    send_error({pkt.destination}, pkt.source, from);
  }

  void send_data(const DataPacket& pkt, NodeId next_hop) {
    if (monitoring() && watchdog_.find(pkt.id) == nullptr) {
      if (watchdog_.record_sent(next_hop, pkt.id, ctx_->now(), pkt.destination)) {
        ctx_->schedule(id_, ctx_->now() + watchdog_.grace_period(), Timer{TimerKind::WatchExpiry});
      }
    }
    ctx_->transmit(id_, next_hop, pkt);
  }

  void enqueue(const DataPacket& pkt) {
    if (queue_.size() >= cfg_.queue_capacity) {
      ctx_->data_dropped(id_, queue_.front(), DropReason::QueueOverflow);
      queue_.pop_front();
    }
    queue_.push_back(pkt);
  }

  void flush_queue(NodeId dest) {
    const RouteEntry* rt = usable_route(dest);
    if (rt == nullptr) return;
    const NodeId next = rt->next_hop;
    std::deque<DataPacket> keep;
    std::vector<DataPacket> ready;
    for (const auto& p : queue_) (p.destination == dest ? ready.emplace_back(p) : keep.emplace_back(p));
    queue_ = std::move(keep);
    for (const auto& p : ready) send_data(p, next);
  }

  void drop_queued(NodeId dest) {
    std::deque<DataPacket> keep;
    for (const auto& p : queue_) {
      if (p.destination == dest) {
        ctx_->data_dropped(id_, p, DropReason::NoRoute);
      } else {
        keep.push_back(p);
      }
    }
    queue_ = std::move(keep);
  }

  bool active_source_for(NodeId dest) const {
    auto it = source_activity_.find(dest);
    return it != source_activity_.end() && ctx_->now() - it->second <= cfg_.active_timeout;
  }

  // --- route discovery -----------------------------------------------------

  void start_discovery(NodeId dest) {
    if (discovery_pending(dest)) return;
    auto& d = discoveries_[dest];
    d.active = true;
    d.attempts = 0;
    send_request(dest, d);
  }

  struct Discovery {
    std::uint32_t request_id = 0;
    int attempts = 0;
    bool active = false;
  };

  void send_request(NodeId dest, Discovery& d) {
    RouteRequest rreq;
    rreq.destination = dest;
    if (auto it = routes_.find(dest); it != routes_.end()) {
      rreq.dest_seq = it->second.dest_seq;
      rreq.unknown_seq = false;
    }
    rreq.broadcast_id = ++rreq_id_;
    rreq.originator_seq = ++own_seq_;
    rreq.hop_count = 0;
    d.request_id = rreq.broadcast_id;
    ++d.attempts;
    requests_seen_.insert({id_, rreq.broadcast_id});
    const double wait = cfg_.discovery_timeout * static_cast<double>(1 << (d.attempts - 1));
    ctx_->schedule(id_, ctx_->now() + wait, Timer{TimerKind::DiscoveryTimeout, dest, rreq.broadcast_id});
    ctx_->transmit(id_, kBroadcast, ControlPacket{id_, rreq});
  }

  void on_discovery_timeout(NodeId dest, std::uint32_t request_id) {
    auto it = discoveries_.find(dest);
    if (it == discoveries_.end() || !it->second.active || it->second.request_id != request_id) return;
    if (usable_route(dest) != nullptr) {
      it->second.active = false;
      return;
    }
    if (it->second.attempts <= cfg_.discovery_retries) {
      send_request(dest, it->second);
      return;
    }
    it->second.active = false;
    drop_queued(dest);
  }

  /// Freshest destination sequence wins; equal sequence prefers fewer hops.
  /// Entries from an older discovery are always superseded.
  bool accept_route(const RouteEntry& candidate) const {
    auto it = routes_.find(candidate.destination);
    if (it == routes_.end() || !it->second.valid) return true;
    const RouteEntry& cur = it->second;
    if (trust_.is_blacklisted(cur.next_hop)) return true;
    if (cur.request_origin != candidate.request_origin || cur.request_id != candidate.request_id) return true;
    if (candidate.dest_seq != cur.dest_seq) return candidate.dest_seq > cur.dest_seq;
    return candidate.hop_count < cur.hop_count;
  }

  void update_reverse_route(NodeId origin, NodeId via, int hops, std::uint32_t seq) {
    auto it = routes_.find(origin);
    if (it != routes_.end() && it->second.valid && !trust_.is_blacklisted(it->second.next_hop)) {
      const RouteEntry& cur = it->second;
      if (seq < cur.dest_seq || (seq == cur.dest_seq && hops >= cur.hop_count)) return;
    }
    routes_[origin] = RouteEntry{origin, via, hops, seq, true, kNoNode, 0};
  }

  void handle(const ControlPacket& pkt, const RouteRequest& rreq, NodeId from) {
    if (pkt.originator == id_ || !requests_seen_.insert({pkt.originator, rreq.broadcast_id}).second) return;
    const int hops = rreq.hop_count + 1;
    update_reverse_route(pkt.originator, from, hops, rreq.originator_seq);
    if (rreq.destination == id_) {
      if (!rreq.unknown_seq && rreq.dest_seq == own_seq_ + 1) ++own_seq_;
      RouteReply rrep{id_, own_seq_, 0, pkt.originator, rreq.broadcast_id};
      ctx_->transmit(id_, from, ControlPacket{id_, rrep});
      return;
    }
    RouteRequest fwd = rreq;
    fwd.hop_count = hops;
    ctx_->transmit(id_, kBroadcast, ControlPacket{pkt.originator, fwd});
  }

  void handle(const ControlPacket& pkt, const RouteReply& rrep, NodeId from) {
    if (rrep.destination == id_) return;
    RouteEntry candidate{rrep.destination, from, rrep.hop_count + 1, rrep.dest_seq, true, rrep.requester,
                         rrep.request_id};
    if (rrep.requester == id_) {
      ctx_->reply_received(id_, rrep, from);
      auto d = discoveries_.find(rrep.destination);
      if (d == discoveries_.end() || d->second.request_id != rrep.request_id) return;
      if (!accept_route(candidate)) return;
      routes_[rrep.destination] = candidate;
      d->second.active = false;
      ctx_->route_adopted(id_, candidate);
      flush_queue(rrep.destination);
      return;
    }
    if (!accept_route(candidate)) return;
    const RouteEntry* back = usable_route(rrep.requester);
    if (back == nullptr) return;
    routes_[rrep.destination] = candidate;
    RouteReply fwd = rrep;
    fwd.hop_count = candidate.hop_count;
    ctx_->transmit(id_, back->next_hop, ControlPacket{pkt.originator, fwd});
  }

  void handle(const ControlPacket& pkt, const RouteError& rerr, NodeId from) {
    if (rerr.flooded && !errors_seen_.insert({pkt.originator, rerr.error_id}).second) return;
    std::vector<NodeId> broken;
    for (NodeId d : rerr.unreachable) {
      auto it = routes_.find(d);
      if (it != routes_.end() && it->second.valid && it->second.next_hop == from) {
        it->second.valid = false;
        broken.push_back(d);
      }
    }
    report_broken(broken);
    if (rerr.notify == id_) {
      for (NodeId d : rerr.unreachable) {
        if (usable_route(d) == nullptr && active_source_for(d)) start_discovery(d);
      }
      return;
    }
    // report_broken already covers the notified source if its flow runs
    // through this node.
    for (NodeId d : broken) {
      if (active_flow(rerr.notify, d)) return;
    }
    relay_error(pkt, rerr);
  }

  void relay_error(const ControlPacket& pkt, const RouteError& rerr) {
    for (NodeId d : rerr.unreachable) {
      if (auto prev = active_flow(rerr.notify, d)) {
        RouteError fwd = rerr;
        fwd.flooded = false;
        ctx_->transmit(id_, *prev, ControlPacket{pkt.originator, fwd});
        return;
      }
    }
    if (const RouteEntry* back = usable_route(rerr.notify); back != nullptr && !rerr.flooded) {
      ctx_->transmit(id_, back->next_hop, ControlPacket{pkt.originator, rerr});
      return;
    }
    RouteError fwd = rerr;
    if (!fwd.flooded) {
      fwd.flooded = true;
      fwd.error_id = ++error_id_;
      errors_seen_.insert({id_, fwd.error_id});
      ctx_->transmit(id_, kBroadcast, ControlPacket{id_, fwd});
      return;
    }
    ctx_->transmit(id_, kBroadcast, ControlPacket{pkt.originator, fwd});
  }

  void handle(const ControlPacket& pkt, const TrustShare& share, NodeId from) {
    if (!monitoring()) return;
    (void)pkt;
    for (const auto& e : share.entries) {
      if (e.subject == id_ || !heard_.contains(e.subject)) continue;
      trust_.store_recommendation(from, e.subject, e.trust);
    }
  }

  void handle(const ControlPacket& pkt, const TrustAlert& alert, NodeId /*from*/) {
    if (!cfg_.teds_enabled) return;
    if (!alerts_seen_.insert({pkt.originator, alert.alert_seq}).second) return;
    if (alert.accused != id_ && !cfg_.exempt.contains(alert.accused) && !trust_.is_blacklisted(alert.accused)) {
      add_to_blacklist(alert.accused, BlacklistCause::Alert);
    }
    ctx_->transmit(id_, kBroadcast, ControlPacket{pkt.originator, alert});
  }

  // --- blacklisting and route maintenance ----------------------------------

  void add_to_blacklist(NodeId accused, BlacklistCause cause) {
    if (!trust_.blacklist(accused)) return;
    ctx_->blacklisted(id_, accused, cause);
    std::vector<NodeId> broken;
    for (auto& [dest, rt] : routes_) {
      if (rt.valid && rt.next_hop == accused) {
        rt.valid = false;
        broken.push_back(dest);
      }
    }
    report_broken(broken);
  }

  std::optional<NodeId> active_flow(NodeId source, NodeId dest) const {
    auto it = flows_.find({source, dest});
    if (it == flows_.end() || ctx_->now() - it->second.last_seen > cfg_.active_timeout) return std::nullopt;
    return it->second.prev_hop;
  }

  /// Restarts discovery for destinations this node is actively sending to,
  /// and sends one RERR per upstream neighbor toward every active source
  /// routing through here.
  void report_broken(const std::vector<NodeId>& broken) {
    if (broken.empty()) return;
    std::map<std::pair<NodeId, NodeId>, std::vector<NodeId>> errors;  // (source, prev hop) -> dests
    for (NodeId d : broken) {
      if (active_source_for(d)) start_discovery(d);
      for (const auto& [key, rec] : flows_) {
        if (key.second != d || ctx_->now() - rec.last_seen > cfg_.active_timeout) continue;
        errors[{key.first, rec.prev_hop}].push_back(d);
      }
    }
    for (auto& [key, dests] : errors) {
      RouteError rerr;
      rerr.unreachable = std::move(dests);
      rerr.notify = key.first;
      ctx_->transmit(id_, key.second, ControlPacket{id_, rerr});
    }
  }

  void send_error(std::vector<NodeId> dests, NodeId notify, NodeId toward) {
    RouteError rerr;
    rerr.unreachable = std::move(dests);
    rerr.notify = notify;
    ctx_->transmit(id_, toward, ControlPacket{id_, rerr});
  }

  // --- adversary -----------------------------------------------------------

  /// Replies to every new route request with a forged, very fresh, one-hop
  /// route and ignores all other control traffic.
  void adversary_control(const ControlPacket& pkt, NodeId from) {
    const auto* rreq = std::get_if<RouteRequest>(&pkt.body);
    if (rreq == nullptr || pkt.originator == id_ || rreq->destination == id_) return;
    if (!requests_seen_.insert({pkt.originator, rreq->broadcast_id}).second) return;
    RouteReply forged{rreq->destination, rreq->dest_seq + cfg_.seq_boost, 1, pkt.originator, rreq->broadcast_id};
    ctx_->transmit(id_, from, ControlPacket{id_, forged});
  }

  struct FlowRecord {
    NodeId prev_hop = kNoNode;
    SimTime last_seen = 0.0;
  };

  NodeId id_;
  AgentConfig cfg_;
  NodeContext* ctx_;
  Watchdog watchdog_;
  double alpha_;
  TrustTable trust_;

  std::uint32_t own_seq_ = 0;
  std::uint32_t rreq_id_ = 0;
  std::uint32_t alert_seq_ = 0;
  std::uint32_t error_id_ = 0;

  std::map<NodeId, RouteEntry> routes_;
  std::map<NodeId, Discovery> discoveries_;
  std::deque<DataPacket> queue_;
  std::map<std::pair<NodeId, NodeId>, FlowRecord> flows_;
  std::map<NodeId, SimTime> source_activity_;
  std::set<std::pair<NodeId, std::uint32_t>> requests_seen_;
  std::set<std::pair<NodeId, std::uint32_t>> alerts_seen_;
  std::set<std::pair<NodeId, std::uint32_t>> errors_seen_;
  std::set<NodeId> heard_;
};

}  // namespace teds
