#include <algorithm>

#include "doctest.h"
#include "dtnsim/traffic.hpp"

using namespace dtnsim;

namespace {

TrafficSpec sos_spec() {
  TrafficSpec t;
  t.source_groups = {"VictimsA", "VictimsB", "VictimsC"};
  t.dest_group = "Rescuer";
  t.interval_min = 60;
  t.interval_max = 120;
  t.size_min = 500'000;
  t.size_max = 1'000'000;
  t.name_prefix = "SOS";
  return t;
}

TrafficHosts sos_hosts() {
  TrafficHosts h;
  for (NodeId n = 0; n < 120; ++n) h.sources.push_back(n);
  for (NodeId n = 120; n < 150; ++n) h.destinations.push_back(n);
  return h;
}

}  // namespace

TEST_CASE("event counts stay inside the renewal bounds for every seed") {
  const auto spec = sos_spec();
  const auto hosts = sos_hosts();
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto events = schedule_events(spec, hosts, seed, 43'200);
    const auto n = static_cast<long>(events.size());
    CHECK(n >= 360);  // 43200/120
    CHECK(n <= 720);  // 43200/60
  }
}

TEST_CASE("mean count over 20 seeds is near the expected 480") {
  const auto spec = sos_spec();
  const auto hosts = sos_hosts();
  double total = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
    total += static_cast<double>(schedule_events(spec, hosts, seed, 43'200).size());
  const double mean = total / 20.0;
  CHECK(mean >= 440.0);
  CHECK(mean <= 530.0);
}

TEST_CASE("event fields respect the spec ranges") {
  const auto events = schedule_events(sos_spec(), sos_hosts(), 17, 43'200);
  REQUIRE(!events.empty());
  double prev = 0;
  int seq = 0;
  for (const auto& ev : events) {
    const double gap = ev.time - prev;
    CHECK(gap >= 60.0);
    CHECK(gap < 120.0);
    prev = ev.time;
    CHECK(ev.time < 43'200);
    CHECK(ev.source >= 0);
    CHECK(ev.source < 120);
    CHECK(ev.destination >= 120);
    CHECK(ev.destination < 150);
    CHECK(ev.source != ev.destination);
    CHECK(ev.size >= 500'000);
    CHECK(ev.size <= 1'000'000);
    CHECK(ev.id == "SOS" + std::to_string(++seq));
  }
}

TEST_CASE("deterministic per seed, distinct across seeds") {
  const auto spec = sos_spec();
  const auto hosts = sos_hosts();
  const auto a = schedule_events(spec, hosts, 7, 43'200);
  const auto b = schedule_events(spec, hosts, 7, 43'200);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].time == b[i].time);
    CHECK(a[i].source == b[i].source);
    CHECK(a[i].destination == b[i].destination);
    CHECK(a[i].size == b[i].size);
  }
  const auto c = schedule_events(spec, hosts, 8, 43'200);
  bool differs = c.size() != a.size();
  for (std::size_t i = 0; !differs && i < std::min(a.size(), c.size()); ++i)
    differs = a[i].time != c[i].time || a[i].source != c[i].source;
  CHECK(differs);
}

TEST_CASE("degenerate horizons") {
  CHECK(schedule_events(sos_spec(), sos_hosts(), 1, 0).empty());
  TrafficSpec disabled;  // no source groups
  CHECK(schedule_events(disabled, sos_hosts(), 1, 43'200).empty());
}

TEST_CASE("fixed-gap interval produces a regular schedule") {
  auto spec = sos_spec();
  spec.interval_min = spec.interval_max = 200;
  const auto events = schedule_events(spec, sos_hosts(), 4, 600);
  REQUIRE(events.size() == 2);  // 200, 400; 600 is excluded
  CHECK(events[0].time == doctest::Approx(200));
  CHECK(events[1].time == doctest::Approx(400));
}
