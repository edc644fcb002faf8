#pragma once

// Range-disk contact detection and bandwidth-limited message transfers.
// Links only join nodes carrying the same interface type.

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dtnsim/geometry.hpp"
#include "dtnsim/message.hpp"

namespace dtnsim {

using InterfaceId = int;

struct InterfaceRuntime {
  std::string name;
  double speed_bps = 0;
  double range_m = 0;
};

struct LinkKey {
  NodeId a = -1;  // a < b always
  NodeId b = -1;
  InterfaceId iface = -1;
  auto operator<=>(const LinkKey&) const = default;
};

inline LinkKey make_link(NodeId x, NodeId y, InterfaceId iface) {
  return x < y ? LinkKey{x, y, iface} : LinkKey{y, x, iface};
}

struct ContactEvents {
  std::vector<LinkKey> up;    // sorted
  std::vector<LinkKey> down;  // sorted
};

// Uniform spatial grid, cell size = the largest interface range, so only the
// 3x3 cell neighborhood needs pairwise checks.
class ContactDetector {
 public:
  ContactDetector(std::vector<InterfaceRuntime> interfaces,
                  std::vector<std::vector<bool>> node_has_interface);

  ContactEvents step(const std::vector<Point>& positions);
  const std::set<LinkKey>& live() const { return live_; }

  // O(n^2) reference used by the equivalence tests.
  static std::set<LinkKey> naive_links(const std::vector<Point>& positions,
                                       const std::vector<InterfaceRuntime>& interfaces,
                                       const std::vector<std::vector<bool>>& node_has_interface);

 private:
  std::set<LinkKey> current_links(const std::vector<Point>& positions) const;

  std::vector<InterfaceRuntime> interfaces_;
  std::vector<std::vector<bool>> node_has_interface_;  // [iface][node]
  double cell_size_ = 0;
  std::set<LinkKey> live_;
};

struct TransferJob {
  LinkKey link;
  NodeId sender = -1;
  NodeId receiver = -1;
  std::string msg_id;
  std::int64_t bytes = 0;
  double start_time = 0;
  double completion_time = 0;  // start + bytes*8/speed
};

// One outgoing transfer per node at a time; incoming transfers are unlimited.
class TransferManager {
 public:
  TransferManager(std::vector<InterfaceRuntime> interfaces, int node_count);

  bool sender_busy(NodeId n) const { return busy_[n]; }

  // nullopt when the sender already has an outgoing job (caller retries on a
  // later step).
  std::optional<TransferJob> begin(const LinkKey& link, NodeId sender, const MessagePtr& msg,
                                   double now);

  struct StepResult {
    std::vector<TransferJob> aborted;    // link went down mid-transfer
    std::vector<TransferJob> completed;  // ties sorted by (receiver, sender, msg id)
  };
  // Aborts are decided before completions, so a job whose link died on the
  // same step it would finish is aborted.
  StepResult step(double now, const std::set<LinkKey>& live_links);

  const std::vector<TransferJob>& active() const { return active_; }

 private:
  std::vector<InterfaceRuntime> interfaces_;
  std::vector<bool> busy_;
  std::vector<TransferJob> active_;  // begin() order
};

}  // namespace dtnsim
