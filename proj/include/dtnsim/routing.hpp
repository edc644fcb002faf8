#pragma once

// The two routers behind one contract. Both produce per-direction ordered
// transfer intents at link-up: messages destined to the peer first, then
// relay candidates, each section oldest-received-first. The engine consumes
// intents one at a time as a sender's outgoing slot frees and revalidates
// each against live buffer state.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dtnsim/buffer.hpp"
#include "dtnsim/scenario.hpp"

namespace dtnsim {

struct TransferIntent {
  std::string msg_id;
  bool is_delivery = false;  // the peer is the message's destination
};

struct NodeView {
  NodeId id = -1;
  const Buffer* buffer = nullptr;
};

class RoutingPolicy {
 public:
  virtual ~RoutingPolicy() = default;

  virtual RouterVariant variant() const = 0;

  // Send queue for the sender->peer direction of a fresh link.
  std::vector<TransferIntent> link_up_intents(const NodeView& sender, const NodeView& peer) const;

  // Intent for a copy that just arrived at `sender` while the link to `peer`
  // is already live; nullopt when the copy should not be offered.
  virtual std::optional<TransferIntent> offer(const Copy& copy, const NodeView& sender,
                                              const NodeView& peer) const = 0;

  // Revalidation at send time: buffers change while intents sit queued.
  bool still_valid(const TransferIntent& intent, const NodeView& sender,
                   const NodeView& peer) const;

  // Copy-quota split applied when a relay transfer completes.
  virtual int receiver_quota(int sender_copies) const = 0;
  virtual int sender_quota_after_relay(int sender_copies) const = 0;
};

// Summary-vector flooding: replicate everything the peer lacks; keep the
// local copy after relaying, drop it only on delivering to the destination.
class EpidemicPolicy final : public RoutingPolicy {
 public:
  RouterVariant variant() const override { return RouterVariant::epidemic; }
  std::optional<TransferIntent> offer(const Copy& copy, const NodeView& sender,
                                      const NodeView& peer) const override;
  int receiver_quota(int) const override { return 0; }
  int sender_quota_after_relay(int n) const override { return n; }
};

// Quota-limited replication: holders with one remaining copy only transmit
// directly to the destination.
class SprayAndWaitPolicy final : public RoutingPolicy {
 public:
  SprayAndWaitPolicy(int copies, bool binary) : copies_(copies), binary_(binary) {}

  RouterVariant variant() const override { return RouterVariant::spray_and_wait; }
  std::optional<TransferIntent> offer(const Copy& copy, const NodeView& sender,
                                      const NodeView& peer) const override;
  // sender keeps ceil(n/2), receiver gets floor(n/2) in binary mode
  int receiver_quota(int n) const override { return binary_ ? n / 2 : 1; }
  int sender_quota_after_relay(int n) const override { return binary_ ? n - n / 2 : n - 1; }

  int initial_copies() const { return copies_; }

 private:
  int copies_;
  bool binary_;
};

std::unique_ptr<RoutingPolicy> make_policy(const RouterKind& kind);

}  // namespace dtnsim
