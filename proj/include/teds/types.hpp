#pragma once

#include <cstdint>
#include <limits>

namespace teds {

using NodeId = std::uint32_t;
using PacketId = std::uint64_t;

/// Simulation time in seconds.
using SimTime = double;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr NodeId kBroadcast = kNoNode - 1;

}  // namespace teds
