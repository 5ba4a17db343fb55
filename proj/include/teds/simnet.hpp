#pragma once

// Discrete-event core: seeded random streams, a time-ordered event queue,
// the grid topology with unit-disk connectivity, the broadcast medium, and
// constant-bit-rate flow generation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "teds/types.hpp"

namespace teds {

// ---------------------------------------------------------------------------
// Random streams

/// Independent purposes that draw randomness. Each gets its own stream so
/// that changing one sweep axis does not shift the draws of another.
enum class RngConcern : std::uint64_t {
  Endpoints = 1,
  FlowStarts = 2,
  Adversaries = 3,
  LinkLoss = 4,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// mt19937_64 with portable uniform helpers (the std distributions are not
/// specified bit-for-bit across standard libraries).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  RngStream(std::uint64_t root, RngConcern concern)
      : engine_(splitmix64(splitmix64(root) ^ static_cast<std::uint64_t>(concern))) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("RngStream::index: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform01() < p;
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Event queue

/// Min-heap on (fire time, insertion sequence). Equal times fire in FIFO
/// order. Scheduling before the current time is a fatal error.
template <class Payload>
class EventQueue {
 public:
  struct Event {
    SimTime time;
    std::uint64_t sequence;
    Payload payload;
  };

  std::uint64_t schedule(SimTime at, Payload payload) {
    if (at < now_) {
      throw std::logic_error("event scheduled in the past: " + std::to_string(at) + " < " + std::to_string(now_));
    }
    const std::uint64_t seq = next_seq_++;
    heap_.push(Event{at, seq, std::move(payload)});
    return seq;
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  SimTime now() const { return now_; }
  SimTime next_time() const { return heap_.top().time; }

  /// Removes the earliest event and advances the clock to its time.
  Event pop() {
    Event e = heap_.top();
    heap_.pop();
    now_ = e.time;
    return e;
  }

  /// Visits pending events in unspecified order.
  template <class F>
  void for_each_pending(F&& f) const {
    auto copy = heap_;
    while (!copy.empty()) {
      f(copy.top());
      copy.pop();
    }
  }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.sequence > b.sequence;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_seq_ = 0;
  SimTime now_ = 0.0;
};

// ---------------------------------------------------------------------------
// Topology

struct Position {
  double x = 0.0;
  double y = 0.0;
};

class Topology {
 public:
  Topology() = default;
  Topology(int rows, int cols, std::vector<Position> positions, std::vector<std::vector<NodeId>> adjacency)
      : rows_(rows), cols_(cols), positions_(std::move(positions)), adjacency_(std::move(adjacency)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return positions_.size(); }

  NodeId node_at(int row, int col) const { return static_cast<NodeId>(row * cols_ + col); }
  int row_of(NodeId n) const { return static_cast<int>(n) / cols_; }
  int col_of(NodeId n) const { return static_cast<int>(n) % cols_; }

  const Position& position(NodeId n) const { return positions_.at(n); }

  /// Neighbors in ascending id order.
  const std::vector<NodeId>& neighbors(NodeId n) const { return adjacency_.at(n); }

  bool adjacent(NodeId a, NodeId b) const {
    const auto& nb = adjacency_.at(a);
    return std::binary_search(nb.begin(), nb.end(), b);
  }

  std::size_t edge_count() const {
    std::size_t deg = 0;
    for (const auto& nb : adjacency_) deg += nb.size();
    return deg / 2;
  }

  /// Left column, top to bottom.
  std::vector<NodeId> left_column() const { return column(0); }
  std::vector<NodeId> right_column() const { return column(cols_ - 1); }

  /// Nodes outside the first and last columns.
  std::vector<NodeId> interior_columns() const {
    std::vector<NodeId> out;
    for (int r = 0; r < rows_; ++r) {
      for (int c = 1; c + 1 < cols_; ++c) out.push_back(node_at(r, c));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<NodeId> column(int c) const {
    std::vector<NodeId> out;
    for (int r = 0; r < rows_; ++r) out.push_back(node_at(r, c));
    return out;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Position> positions_;
  std::vector<std::vector<NodeId>> adjacency_;
};

/// Regular grid, node id = row * cols + col, linked when within `range`.
inline Topology build_grid_topology(int rows, int cols, double spacing, double range) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid needs at least one row and one column");
  if (!(spacing > 0.0) || !(range > 0.0)) throw std::invalid_argument("grid spacing and range must be positive");

  const std::size_t n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  std::vector<Position> pos(n);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      pos[static_cast<std::size_t>(r * cols + c)] = Position{c * spacing, r * spacing};
    }
  }
  std::vector<std::vector<NodeId>> adj(n);
  const double range_sq = range * range;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double dx = pos[a].x - pos[b].x;
      const double dy = pos[a].y - pos[b].y;
      if (dx * dx + dy * dy <= range_sq) {
        adj[a].push_back(static_cast<NodeId>(b));
        adj[b].push_back(static_cast<NodeId>(a));
      }
    }
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return Topology(rows, cols, std::move(pos), std::move(adj));
}

// ---------------------------------------------------------------------------
// Broadcast medium

/// Idealised shared channel: every neighbor of the sender gets a copy after a
/// fixed latency, each copy independently lost with probability p_loss. No
/// collisions, no carrier sense, no bandwidth limit.
class BroadcastMedium {
 public:
  static constexpr double kDefaultHopLatency = 0.002;

  BroadcastMedium(const Topology& topology, double hop_latency, double p_loss, RngStream loss_rng)
      : topology_(&topology), latency_(hop_latency), p_loss_(p_loss), rng_(std::move(loss_rng)) {
    if (!(hop_latency > 0.0)) throw std::invalid_argument("hop latency must be positive");
    if (!(p_loss >= 0.0 && p_loss <= 1.0)) throw std::invalid_argument("p_loss must lie in [0, 1]");
  }

  double hop_latency() const { return latency_; }
  double p_loss() const { return p_loss_; }

  /// Calls deliver(neighbor, arrival_time) for every surviving copy, in
  /// ascending neighbor order, and lost(neighbor) for every dropped one.
  /// Returns the number of deliveries.
  template <class Deliver, class Lost>
  std::size_t transmit(NodeId sender, SimTime now, Deliver&& deliver, Lost&& lost) {
    std::size_t n = 0;
    for (NodeId nb : topology_->neighbors(sender)) {
      if (p_loss_ > 0.0 && rng_.bernoulli(p_loss_)) {
        lost(nb);
        continue;
      }
      deliver(nb, now + latency_);
      ++n;
    }
    return n;
  }

  template <class Deliver>
  std::size_t transmit(NodeId sender, SimTime now, Deliver&& deliver) {
    return transmit(sender, now, std::forward<Deliver>(deliver), [](NodeId) {});
  }

 private:
  const Topology* topology_;
  double latency_;
  double p_loss_;
  RngStream rng_;
};

// ---------------------------------------------------------------------------
// Traffic

struct Flow {
  NodeId source = kNoNode;
  NodeId destination = kNoNode;
  SimTime start_time = 0.0;
  double rate_pps = 4.0;
  int max_packets = 300;
  int payload_bytes = 512;
};

/// Send times of a CBR flow: start + k / rate for k < max_packets, stopping
/// at the horizon.
inline std::vector<SimTime> cbr_send_times(const Flow& flow, SimTime horizon) {
  if (!(flow.rate_pps > 0.0)) throw std::invalid_argument("flow rate must be positive");
  std::vector<SimTime> out;
  const double spacing = 1.0 / flow.rate_pps;
  for (int k = 0; k < flow.max_packets; ++k) {
    const SimTime t = flow.start_time + k * spacing;
    if (t > horizon) break;
    out.push_back(t);
  }
  return out;
}

struct FlowGenerationParams {
  int flow_count = 10;
  double start_min = 30.0;
  double start_max = 200.0;
  double rate_pps = 4.0;
  int max_packets = 300;
  int payload_bytes = 512;
};

/// Random flows from the left column to the right column. Endpoints and
/// start times come from separate streams.
inline std::vector<Flow> generate_flows(const Topology& topo, const FlowGenerationParams& p, RngStream& endpoint_rng,
                                        RngStream& start_rng) {
  if (topo.cols() < 2) throw std::invalid_argument("flows need at least two grid columns");
  const auto left = topo.left_column();
  const auto right = topo.right_column();
  std::vector<Flow> flows;
  flows.reserve(static_cast<std::size_t>(std::max(p.flow_count, 0)));
  for (int i = 0; i < p.flow_count; ++i) {
    Flow f;
    f.source = left[endpoint_rng.index(left.size())];
    f.destination = right[endpoint_rng.index(right.size())];
    f.start_time = start_rng.uniform(p.start_min, p.start_max);
    f.rate_pps = p.rate_pps;
    f.max_packets = p.max_packets;
    f.payload_bytes = p.payload_bytes;
    flows.push_back(f);
  }
  return flows;
}

/// First `count` entries of a seeded permutation of the interior nodes, so
/// that for a fixed seed larger adversary sets contain smaller ones.
inline std::vector<NodeId> place_adversaries(const Topology& topo, int count, RngStream& rng) {
  auto candidates = topo.interior_columns();
  if (count < 0 || static_cast<std::size_t>(count) > candidates.size()) {
    throw std::invalid_argument("adversary count " + std::to_string(count) + " exceeds the " +
                                std::to_string(candidates.size()) + " interior candidates");
  }
  rng.shuffle(candidates);
  candidates.resize(static_cast<std::size_t>(count));
  std::sort(candidates.begin(), candidates.end());
  return candidates;
}

}  // namespace teds
