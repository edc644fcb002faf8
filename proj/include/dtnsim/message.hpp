#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace dtnsim {

using NodeId = int;

// Immutable per-message facts shared by every copy.
struct MessageInfo {
  std::string id;
  NodeId source = -1;
  NodeId destination = -1;
  std::int64_t size = 0;     // bytes
  double created_at = 0;     // seconds
  double ttl_seconds = 0;    // resolved from the source group's TTL
};

using MessagePtr = std::shared_ptr<const MessageInfo>;

// Per-holder replica state.
struct Copy {
  MessagePtr msg;
  double received_at = 0;
  std::vector<NodeId> hop_path;  // starts with msg->source, grows one node per relay
  int copies_remaining = 0;      // spray quota; unused under epidemic
  bool in_flight = false;        // being transmitted; exempt from eviction/expiry
};

}  // namespace dtnsim
