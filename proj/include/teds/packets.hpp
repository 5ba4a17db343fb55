#pragma once

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "teds/trust_engine.hpp"
#include "teds/types.hpp"

namespace teds {

struct DataPacket {
  PacketId id = 0;  // assigned at the source, kept hop to hop
  NodeId source = kNoNode;
  NodeId destination = kNoNode;
  std::uint32_t flow = 0;
  SimTime created = 0.0;
  int payload_bytes = 512;
};

struct RouteRequest {
  NodeId destination = kNoNode;
  std::uint32_t dest_seq = 0;
  bool unknown_seq = true;
  std::uint32_t broadcast_id = 0;
  std::uint32_t originator_seq = 0;
  int hop_count = 0;
};

struct RouteReply {
  NodeId destination = kNoNode;
  std::uint32_t dest_seq = 0;
  int hop_count = 0;
  // The request being answered; the reply travels back to `requester`.
  NodeId requester = kNoNode;
  std::uint32_t request_id = 0;
};

struct RouteError {
  std::vector<NodeId> unreachable;
  NodeId notify = kNoNode;  // source the error is headed for
  std::uint32_t error_id = 0;
  bool flooded = false;
};

struct TrustShareEntry {
  NodeId subject = kNoNode;
  TrustValue trust;
};

struct TrustShare {
  std::vector<TrustShareEntry> entries;
};

struct TrustAlert {
  NodeId accused = kNoNode;
  std::uint32_t alert_seq = 0;
};

enum class PacketKind { Data, Rreq, Rrep, Rerr, TrustShare, TrustAlert };

inline std::string_view to_string(PacketKind k) {
  switch (k) {
    case PacketKind::Data: return "DATA";
    case PacketKind::Rreq: return "RREQ";
    case PacketKind::Rrep: return "RREP";
    case PacketKind::Rerr: return "RERR";
    case PacketKind::TrustShare: return "TRUST_SHARE";
    case PacketKind::TrustAlert: return "TRUST_ALERT";
  }
  return "?";
}

inline bool is_routing_control(PacketKind k) {
  return k == PacketKind::Rreq || k == PacketKind::Rrep || k == PacketKind::Rerr;
}

inline bool is_trust_control(PacketKind k) { return k == PacketKind::TrustShare || k == PacketKind::TrustAlert; }

struct ControlPacket {
  NodeId originator = kNoNode;
  std::variant<RouteRequest, RouteReply, RouteError, TrustShare, TrustAlert> body;

  PacketKind kind() const {
    switch (body.index()) {
      case 0: return PacketKind::Rreq;
      case 1: return PacketKind::Rrep;
      case 2: return PacketKind::Rerr;
      case 3: return PacketKind::TrustShare;
      default: return PacketKind::TrustAlert;
    }
  }
};

/// One link-layer transmission. `receiver` is kBroadcast for floods; every
/// radio neighbor gets a copy either way.
struct Frame {
  PacketId frame_id = 0;
  NodeId transmitter = kNoNode;
  NodeId receiver = kBroadcast;
  std::variant<DataPacket, ControlPacket> body;

  PacketKind kind() const {
    if (const auto* c = std::get_if<ControlPacket>(&body)) return c->kind();
    return PacketKind::Data;
  }

  /// Data packets report their end-to-end id; control frames their frame id.
  PacketId packet_id() const {
    if (const auto* d = std::get_if<DataPacket>(&body)) return d->id;
    return frame_id;
  }
};

}  // namespace teds
