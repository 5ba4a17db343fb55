#pragma once

// Promiscuous-overhearing forwarding monitor.
//
// A node registers every data packet it hands to a neighbor for onward
// forwarding. The entry is cleared when the neighbor is overheard
// retransmitting the same packet id, or expires after the grace period.
// Counters accumulate per neighbor and are drained once per trust interval.

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include "teds/trust_engine.hpp"
#include "teds/types.hpp"

namespace teds {

inline constexpr double kDefaultGracePeriod = 2.0;

struct WatchEntry {
  NodeId next_hop = kNoNode;
  PacketId packet_id = 0;
  SimTime sent_at = 0.0;
  SimTime expiry = 0.0;
};

enum class WatchResolution { Overheard, Expired };

class Watchdog {
 public:
  using ResolutionListener = std::function<void(const WatchEntry&, WatchResolution, SimTime)>;

  explicit Watchdog(double grace_period = kDefaultGracePeriod) : grace_(grace_period) {
    if (!(grace_period > 0.0)) throw std::invalid_argument("watchdog grace period must be positive");
  }

  double grace_period() const { return grace_; }

  /// Registers a packet handed to `next_hop`. Nothing is tracked when the
  /// next hop is the packet's final destination, since it consumes rather
  /// than forwards. Returns whether an entry was created.
  bool record_sent(NodeId next_hop, PacketId packet_id, SimTime now, NodeId final_destination) {
    if (next_hop == final_destination) return false;
    if (live_.contains(packet_id)) {
      throw std::logic_error("watchdog: packet " + std::to_string(packet_id) + " already has a live entry");
    }
    WatchEntry e{next_hop, packet_id, now, now + grace_};
    live_.emplace(packet_id, e);
    by_expiry_.emplace(e.expiry, packet_id);
    ++counters_[next_hop].sent;
    ++live_per_neighbor_[next_hop];
    return true;
  }

  /// Handles a promiscuously received transmission. Only the designated next
  /// hop retransmitting the packet clears the entry.
  bool record_overheard(NodeId transmitter, PacketId packet_id, SimTime now) {
    auto it = live_.find(packet_id);
    if (it == live_.end() || it->second.next_hop != transmitter) return false;
    ++counters_[transmitter].overheard;
    resolve(it, WatchResolution::Overheard, now);
    return true;
  }

  /// Drops every entry whose expiry is <= now. Returns how many expired.
  std::size_t expire(SimTime now) {
    std::size_t n = 0;
    while (!by_expiry_.empty() && by_expiry_.begin()->first <= now) {
      const PacketId id = by_expiry_.begin()->second;
      auto it = live_.find(id);
      if (it != live_.end() && it->second.expiry <= now) {
        resolve(it, WatchResolution::Expired, now);
        ++n;
      } else {
        by_expiry_.erase(by_expiry_.begin());
      }
    }
    return n;
  }

  /// Counters accumulated since the previous call, keyed by neighbor.
  /// Neighbors with nothing resolved are omitted. Entries still inside their
  /// grace period are carried into the next interval rather than reported as
  /// unforwarded.
  std::map<NodeId, ForwardingStats> interval_stats() {
    std::map<NodeId, ForwardingStats> out;
    std::map<NodeId, ForwardingStats> next;
    for (const auto& [nb, c] : counters_) {
      const std::uint64_t pending = live_count(nb);
      const std::uint64_t resolved = c.sent - pending;
      if (resolved > 0) out.emplace(nb, ForwardingStats{resolved, c.overheard});
      if (pending > 0) next.emplace(nb, ForwardingStats{pending, 0});
    }
    counters_ = std::move(next);
    return out;
  }

  /// Current (undrained) counters for one neighbor.
  ForwardingStats counters(NodeId neighbor) const {
    auto it = counters_.find(neighbor);
    return it == counters_.end() ? ForwardingStats{} : it->second;
  }

  const WatchEntry* find(PacketId packet_id) const {
    auto it = live_.find(packet_id);
    return it == live_.end() ? nullptr : &it->second;
  }

  std::size_t live_entries() const { return live_.size(); }

  void set_resolution_listener(ResolutionListener l) { listener_ = std::move(l); }

 private:
  std::uint64_t live_count(NodeId nb) const {
    auto it = live_per_neighbor_.find(nb);
    return it == live_per_neighbor_.end() ? 0 : it->second;
  }

  void resolve(std::map<PacketId, WatchEntry>::iterator it, WatchResolution how, SimTime now) {
    const WatchEntry e = it->second;
    live_.erase(it);
    if (how == WatchResolution::Expired) by_expiry_.erase(by_expiry_.begin());
    if (--live_per_neighbor_[e.next_hop] == 0) live_per_neighbor_.erase(e.next_hop);
    if (listener_) listener_(e, how, now);
  }

  double grace_;
  std::map<PacketId, WatchEntry> live_;
  std::multimap<SimTime, PacketId> by_expiry_;
  std::map<NodeId, ForwardingStats> counters_;
  std::map<NodeId, std::uint64_t> live_per_neighbor_;
  ResolutionListener listener_;
};

}  // namespace teds
