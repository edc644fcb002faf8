#include "dtnsim/connectivity.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <unordered_map>

namespace dtnsim {

ContactDetector::ContactDetector(std::vector<InterfaceRuntime> interfaces,
                                 std::vector<std::vector<bool>> node_has_interface)
    : interfaces_(std::move(interfaces)), node_has_interface_(std::move(node_has_interface)) {
  for (const auto& i : interfaces_) cell_size_ = std::max(cell_size_, i.range_m);
  if (cell_size_ <= 0) cell_size_ = 1;
}

std::set<LinkKey> ContactDetector::current_links(const std::vector<Point>& positions) const {
  std::set<LinkKey> links;
  const auto cell_of = [&](Point p) {
    return std::make_pair(static_cast<long long>(std::floor(p.x / cell_size_)),
                          static_cast<long long>(std::floor(p.y / cell_size_)));
  };
  struct CellHash {
    std::size_t operator()(const std::pair<long long, long long>& c) const {
      return std::hash<long long>()(c.first * 1000003LL + c.second);
    }
  };
  for (InterfaceId iface = 0; iface < static_cast<InterfaceId>(interfaces_.size()); ++iface) {
    const double range2 = interfaces_[iface].range_m * interfaces_[iface].range_m;
    std::unordered_map<std::pair<long long, long long>, std::vector<NodeId>, CellHash> grid;
    for (NodeId n = 0; n < static_cast<NodeId>(positions.size()); ++n)
      if (node_has_interface_[iface][n]) grid[cell_of(positions[n])].push_back(n);
    for (const auto& [cell, members] : grid) {
      for (long long dx = -1; dx <= 1; ++dx) {
        for (long long dy = -1; dy <= 1; ++dy) {
          auto it = grid.find({cell.first + dx, cell.second + dy});
          if (it == grid.end()) continue;
          for (NodeId a : members) {
            for (NodeId b : it->second) {
              if (a >= b) continue;
              if (dist2(positions[a], positions[b]) <= range2)
                links.insert(LinkKey{a, b, iface});
            }
          }
        }
      }
    }
  }
  return links;
}

ContactEvents ContactDetector::step(const std::vector<Point>& positions) {
  std::set<LinkKey> now = current_links(positions);
  ContactEvents ev;
  std::set_difference(now.begin(), now.end(), live_.begin(), live_.end(),
                      std::back_inserter(ev.up));
  std::set_difference(live_.begin(), live_.end(), now.begin(), now.end(),
                      std::back_inserter(ev.down));
  live_ = std::move(now);
  return ev;
}

std::set<LinkKey> ContactDetector::naive_links(
    const std::vector<Point>& positions, const std::vector<InterfaceRuntime>& interfaces,
    const std::vector<std::vector<bool>>& node_has_interface) {
  std::set<LinkKey> links;
  for (InterfaceId iface = 0; iface < static_cast<InterfaceId>(interfaces.size()); ++iface) {
    const double range2 = interfaces[iface].range_m * interfaces[iface].range_m;
    for (NodeId a = 0; a < static_cast<NodeId>(positions.size()); ++a) {
      if (!node_has_interface[iface][a]) continue;
      for (NodeId b = a + 1; b < static_cast<NodeId>(positions.size()); ++b) {
        if (!node_has_interface[iface][b]) continue;
        if (dist2(positions[a], positions[b]) <= range2) links.insert(LinkKey{a, b, iface});
      }
    }
  }
  return links;
}

TransferManager::TransferManager(std::vector<InterfaceRuntime> interfaces, int node_count)
    : interfaces_(std::move(interfaces)), busy_(node_count, false) {}

std::optional<TransferJob> TransferManager::begin(const LinkKey& link, NodeId sender,
                                                  const MessagePtr& msg, double now) {
  assert(sender == link.a || sender == link.b);
  if (busy_[sender]) return std::nullopt;
  TransferJob job;
  job.link = link;
  job.sender = sender;
  job.receiver = (sender == link.a) ? link.b : link.a;
  job.msg_id = msg->id;
  job.bytes = msg->size;
  job.start_time = now;
  job.completion_time = now + static_cast<double>(msg->size) * 8.0 / interfaces_[link.iface].speed_bps;
  busy_[sender] = true;
  active_.push_back(job);
  return job;
}

TransferManager::StepResult TransferManager::step(double now, const std::set<LinkKey>& live_links) {
  StepResult res;
  std::vector<TransferJob> keep;
  keep.reserve(active_.size());
  for (const auto& job : active_) {
    if (!live_links.count(job.link)) {
      res.aborted.push_back(job);
      busy_[job.sender] = false;
    } else if (job.completion_time <= now) {
      res.completed.push_back(job);
      busy_[job.sender] = false;
    } else {
      keep.push_back(job);
    }
  }
  active_ = std::move(keep);
  std::sort(res.completed.begin(), res.completed.end(), [](const auto& x, const auto& y) {
    return std::tie(x.completion_time, x.receiver, x.sender, x.msg_id) <
           std::tie(y.completion_time, y.receiver, y.sender, y.msg_id);
  });
  return res;
}

}  // namespace dtnsim
