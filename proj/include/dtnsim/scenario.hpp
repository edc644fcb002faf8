#pragma once

// Run configuration: world geometry, node groups, radio interfaces, SOS
// traffic and router selection. Parsed from a line-oriented `key = value`
// file (see README for the full key reference).

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtnsim {

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InterfaceSpec {
  double transmit_speed = 0;  // bits/second
  double transmit_range = 0;  // meters
  bool operator==(const InterfaceSpec&) const = default;
};

struct GroupSpec {
  std::string name;
  int count = 0;
  std::vector<std::string> interfaces;  // names declared in Scenario::interfaces
  std::vector<std::string> ok_maps;     // WKT files this group may move on
  double speed_min = 0;                 // m/s
  double speed_max = 0;                 // m/s
  std::int64_t buffer_size = 0;         // bytes
  double msg_ttl = 0;                   // minutes unless Scenario::ttl_in_seconds
  std::map<std::string, std::string> router_params;
  bool operator==(const GroupSpec&) const = default;
};

struct TrafficSpec {
  std::vector<std::string> source_groups;
  std::string dest_group;
  double interval_min = 0;     // seconds between creation events
  double interval_max = 0;
  std::int64_t size_min = 0;   // bytes
  std::int64_t size_max = 0;
  std::string name_prefix = "SOS";
  bool operator==(const TrafficSpec&) const = default;
  bool enabled() const { return !source_groups.empty(); }
};

enum class RouterVariant { epidemic, spray_and_wait };

struct RouterKind {
  RouterVariant variant = RouterVariant::epidemic;
  int copies = 16;     // spray only: initial copy quota L
  bool binary = true;  // spray only: halve quota on relay instead of handing one
  bool operator==(const RouterKind&) const = default;
};

struct Scenario {
  std::string name = "scenario";
  double end_time = 0;           // seconds
  double world_width = 0;        // meters
  double world_height = 0;       // meters
  double warmup = 0;             // seconds of movement-only pre-roll
  double time_step = 0.5;        // seconds
  std::uint64_t seed = 1;
  double report_interval = 300;  // seconds between timeline rows
  bool ttl_in_seconds = false;   // msg_ttl unit flag; default minutes
  std::map<std::string, InterfaceSpec> interfaces;
  std::vector<GroupSpec> groups;
  TrafficSpec traffic;
  RouterKind router;
  bool operator==(const Scenario&) const = default;

  double ttl_seconds(const GroupSpec& g) const {
    return ttl_in_seconds ? g.msg_ttl : g.msg_ttl * 60.0;
  }
  const GroupSpec* find_group(const std::string& name) const;
};

struct Violation {
  std::string where;    // "Group3.speed", "Traffic.interval", ...
  std::string message;
  bool operator==(const Violation&) const = default;
};

// "10M" -> 10'000'000, "500k" -> 500'000; decimal suffixes.
std::int64_t parse_size(const std::string& text);
std::string format_size(std::int64_t bytes);  // shortest exact k/M form

// Throws ScenarioError (with line number) on malformed lines or missing
// mandatory keys (endTime, worldSize, at least one group). Unknown keys are
// collected into `warnings` when given.
Scenario parse_scenario(const std::string& text,
                        std::vector<std::string>* warnings = nullptr);
Scenario load_scenario_file(const std::string& path,
                            std::vector<std::string>* warnings = nullptr);

// Canonical text form; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& s);

// Invariant check; empty means runnable. Referenced map files are resolved
// against base_dir (scenario file directory by convention).
std::vector<Violation> validate(const Scenario& s, const std::string& base_dir = ".");

// Sweep axes: "router", "seed", "<GroupName>.bufferSize" or "Group<N>.bufferSize".
// One scenario per value, identical otherwise. Throws ScenarioError on an
// unknown axis or unparseable value.
std::vector<Scenario> expand_sweep(const Scenario& s, const std::string& axis,
                                   const std::vector<std::string>& values);

std::string resolve_map_path(const std::string& base_dir, const std::string& map_file);

}  // namespace dtnsim
