#include "dtnsim/traffic.hpp"

#include <cassert>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "dtnsim/rng.hpp"

namespace dtnsim {

std::vector<CreationEvent> schedule_events(const TrafficSpec& spec, const TrafficHosts& hosts,
                                           std::uint64_t scenario_seed, double end_time) {
  std::vector<CreationEvent> events;
  if (!spec.enabled() || end_time <= 0) return events;
  if (spec.interval_max <= 0) return events;  // degenerate spec, nothing schedulable
  assert(!hosts.sources.empty() && !hosts.destinations.empty());

  UniformSource rng(derive_seed(scenario_seed, "traffic"));
  double t = 0;
  int seq = 0;
  while (true) {
    t += rng.uniform(spec.interval_min, spec.interval_max);
    if (t >= end_time) break;
    CreationEvent ev;
    ev.time = t;
    ev.source = hosts.sources[rng.uniform_index(hosts.sources.size())];
    ev.destination = hosts.destinations[rng.uniform_index(hosts.destinations.size())];
    ev.size = rng.uniform_int(spec.size_min, spec.size_max);
    ev.id = spec.name_prefix + std::to_string(++seq);
    events.push_back(std::move(ev));
  }
  return events;
}

void write_events_csv(const std::vector<CreationEvent>& events, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write events csv '" + path + "'");
  out << "time,id,source,destination,size\n";
  char buf[64];
  for (const auto& ev : events) {
    std::snprintf(buf, sizeof(buf), "%.4f", ev.time);
    out << buf << "," << ev.id << "," << ev.source << "," << ev.destination << "," << ev.size
        << "\n";
  }
}

}  // namespace dtnsim
