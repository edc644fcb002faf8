#pragma once

// SOS creation events: one global renewal process with uniform gaps, uniform
// source over the victim hosts, uniform destination over the rescuer hosts.

#include <cstdint>
#include <string>
#include <vector>

#include "dtnsim/message.hpp"
#include "dtnsim/scenario.hpp"

namespace dtnsim {

struct CreationEvent {
  double time = 0;  // seconds, strictly < end_time
  NodeId source = -1;
  NodeId destination = -1;
  std::int64_t size = 0;  // bytes
  std::string id;         // "<prefix><seq>", seq from 1
};

struct TrafficHosts {
  std::vector<NodeId> sources;       // union of the source groups' node ids
  std::vector<NodeId> destinations;  // destination group's node ids
};

std::vector<CreationEvent> schedule_events(const TrafficSpec& spec, const TrafficHosts& hosts,
                                           std::uint64_t scenario_seed, double end_time);

// Optional export: time,id,source,destination,size
void write_events_csv(const std::vector<CreationEvent>& events, const std::string& path);

}  // namespace dtnsim
