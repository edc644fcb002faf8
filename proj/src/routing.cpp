#include "dtnsim/routing.hpp"

namespace dtnsim {

std::vector<TransferIntent> RoutingPolicy::link_up_intents(const NodeView& sender,
                                                           const NodeView& peer) const {
  std::vector<TransferIntent> deliveries;
  std::vector<TransferIntent> relays;
  for (const Copy& copy : sender.buffer->copies()) {
    auto intent = offer(copy, sender, peer);
    if (!intent) continue;
    (intent->is_delivery ? deliveries : relays).push_back(std::move(*intent));
  }
  deliveries.insert(deliveries.end(), relays.begin(), relays.end());
  return deliveries;
}

bool RoutingPolicy::still_valid(const TransferIntent& intent, const NodeView& sender,
                                const NodeView& peer) const {
  const Copy* copy = sender.buffer->find(intent.msg_id);
  if (!copy) return false;  // dropped, expired, or delivered meanwhile
  return offer(*copy, sender, peer).has_value();
}

std::optional<TransferIntent> EpidemicPolicy::offer(const Copy& copy, const NodeView&,
                                                    const NodeView& peer) const {
  if (copy.msg->destination == peer.id) return TransferIntent{copy.msg->id, true};
  if (peer.buffer && peer.buffer->contains(copy.msg->id)) return std::nullopt;
  return TransferIntent{copy.msg->id, false};
}

std::optional<TransferIntent> SprayAndWaitPolicy::offer(const Copy& copy, const NodeView&,
                                                        const NodeView& peer) const {
  // wait-phase direct delivery: always send to the destination
  if (copy.msg->destination == peer.id) return TransferIntent{copy.msg->id, true};
  if (copy.copies_remaining <= 1) return std::nullopt;
  if (peer.buffer && peer.buffer->contains(copy.msg->id)) return std::nullopt;
  return TransferIntent{copy.msg->id, false};
}

std::unique_ptr<RoutingPolicy> make_policy(const RouterKind& kind) {
  if (kind.variant == RouterVariant::epidemic) return std::make_unique<EpidemicPolicy>();
  return std::make_unique<SprayAndWaitPolicy>(kind.copies, kind.binary);
}

}  // namespace dtnsim
