#include "dtnsim/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace dtnsim {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw ScenarioError(key + ": trailing characters in '" + s + "'");
    return v;
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception&) {
    throw ScenarioError(key + ": expected a number, got '" + s + "'");
  }
}

std::int64_t parse_int(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw ScenarioError(key + ": trailing characters in '" + s + "'");
    return v;
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception&) {
    throw ScenarioError(key + ": expected an integer, got '" + s + "'");
  }
}

bool parse_bool(const std::string& s, const std::string& key) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ScenarioError(key + ": expected true/false, got '" + s + "'");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct RawEntry {
  int line;
  std::string value;
  bool used = false;
};

}  // namespace

const GroupSpec* Scenario::find_group(const std::string& group_name) const {
  for (const auto& g : groups)
    if (g.name == group_name) return &g;
  return nullptr;
}

std::int64_t parse_size(const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) throw ScenarioError("empty size value");
  double factor = 1.0;
  char suffix = s.back();
  if (suffix == 'k' || suffix == 'K') {
    factor = 1e3;
    s.pop_back();
  } else if (suffix == 'M' || suffix == 'm') {
    factor = 1e6;
    s.pop_back();
  }
  const double v = parse_double(trim(s), "size");
  if (v < 0) throw ScenarioError("negative size '" + text + "'");
  return static_cast<std::int64_t>(std::llround(v * factor));
}

std::string format_size(std::int64_t bytes) {
  if (bytes != 0 && bytes % 1'000'000 == 0) return std::to_string(bytes / 1'000'000) + "M";
  if (bytes != 0 && bytes % 1'000 == 0) return std::to_string(bytes / 1'000) + "k";
  return std::to_string(bytes);
}

Scenario parse_scenario(const std::string& text, std::vector<std::string>* warnings) {
  // Pass 1: collect key/value pairs so declarations may appear in any order.
  std::map<std::string, RawEntry> raw;
  {
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
      ++lineno;
      std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw ScenarioError("line " + std::to_string(lineno) + ": expected 'key = value', got '" +
                            line + "'");
      std::string key = trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      if (key.empty())
        throw ScenarioError("line " + std::to_string(lineno) + ": empty key");
      if (raw.count(key))
        throw ScenarioError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
      raw[key] = RawEntry{lineno, value};
    }
  }

  auto take = [&](const std::string& key) -> const std::string* {
    auto it = raw.find(key);
    if (it == raw.end()) return nullptr;
    it->second.used = true;
    return &it->second.value;
  };

  Scenario s;
  if (const auto* v = take("name")) s.name = *v;
  const auto* end_time = take("endTime");
  if (!end_time) throw ScenarioError("missing mandatory key 'endTime'");
  s.end_time = parse_double(*end_time, "endTime");

  const auto* world = take("worldSize");
  if (!world) throw ScenarioError("missing mandatory key 'worldSize'");
  auto wh = split_list(*world);
  if (wh.size() != 2) throw ScenarioError("worldSize: expected 'width, height'");
  s.world_width = parse_double(wh[0], "worldSize");
  s.world_height = parse_double(wh[1], "worldSize");

  if (const auto* v = take("warmup")) s.warmup = parse_double(*v, "warmup");
  if (const auto* v = take("timeStep")) s.time_step = parse_double(*v, "timeStep");
  if (const auto* v = take("seed")) s.seed = static_cast<std::uint64_t>(parse_int(*v, "seed"));
  if (const auto* v = take("reportInterval"))
    s.report_interval = parse_double(*v, "reportInterval");
  if (const auto* v = take("ttlUnit")) {
    if (*v == "seconds") s.ttl_in_seconds = true;
    else if (*v == "minutes") s.ttl_in_seconds = false;
    else throw ScenarioError("ttlUnit: expected minutes or seconds, got '" + *v + "'");
  }

  if (const auto* v = take("router")) {
    if (*v == "epidemic") s.router.variant = RouterVariant::epidemic;
    else if (*v == "snw") s.router.variant = RouterVariant::spray_and_wait;
    else throw ScenarioError("router: expected epidemic or snw, got '" + *v + "'");
  }
  if (const auto* v = take("snw.copies"))
    s.router.copies = static_cast<int>(parse_int(*v, "snw.copies"));
  if (const auto* v = take("snw.binary")) s.router.binary = parse_bool(*v, "snw.binary");

  if (const auto* v = take("interfaces")) {
    for (const auto& iface : split_list(*v)) {
      InterfaceSpec spec;
      if (const auto* sp = take(iface + ".transmitSpeed"))
        spec.transmit_speed = static_cast<double>(parse_size(*sp));
      if (const auto* rg = take(iface + ".transmitRange"))
        spec.transmit_range = parse_double(*rg, iface + ".transmitRange");
      s.interfaces[iface] = spec;
    }
  }

  // Group<N>.<field>; indices must be contiguous from 1.
  int max_group = 0;
  for (const auto& [key, entry] : raw) {
    (void)entry;
    if (key.rfind("Group", 0) != 0) continue;
    std::size_t dot = key.find('.');
    if (dot == std::string::npos) continue;
    const std::string num = key.substr(5, dot - 5);
    if (num.empty() || !std::all_of(num.begin(), num.end(),
                                    [](char c) { return std::isdigit((unsigned char)c); }))
      continue;
    max_group = std::max(max_group, std::stoi(num));
  }
  for (int n = 1; n <= max_group; ++n) {
    const std::string p = "Group" + std::to_string(n) + ".";
    GroupSpec g;
    g.name = "Group" + std::to_string(n);
    if (const auto* v = take(p + "name")) g.name = *v;
    if (const auto* v = take(p + "count")) g.count = static_cast<int>(parse_int(*v, p + "count"));
    if (const auto* v = take(p + "interfaces")) g.interfaces = split_list(*v);
    if (const auto* v = take(p + "okMaps")) g.ok_maps = split_list(*v);
    if (const auto* v = take(p + "speed")) {
      auto mm = split_list(*v);
      if (mm.size() != 2) throw ScenarioError(p + "speed: expected 'min, max'");
      g.speed_min = parse_double(mm[0], p + "speed");
      g.speed_max = parse_double(mm[1], p + "speed");
    }
    if (const auto* v = take(p + "bufferSize")) g.buffer_size = parse_size(*v);
    if (const auto* v = take(p + "msgTtl")) g.msg_ttl = parse_double(*v, p + "msgTtl");
    // pass-through router tuning, e.g. Group2.router.foo = bar
    for (auto& [key, entry] : raw) {
      if (!entry.used && key.rfind(p + "router.", 0) == 0) {
        g.router_params[key.substr((p + "router.").size())] = entry.value;
        entry.used = true;
      }
    }
    s.groups.push_back(std::move(g));
  }
  if (s.groups.empty()) throw ScenarioError("scenario declares no groups (need Group1.*)");

  if (const auto* v = take("Traffic.sources")) s.traffic.source_groups = split_list(*v);
  if (const auto* v = take("Traffic.dest")) s.traffic.dest_group = *v;
  if (const auto* v = take("Traffic.interval")) {
    auto mm = split_list(*v);
    if (mm.size() != 2) throw ScenarioError("Traffic.interval: expected 'min, max'");
    s.traffic.interval_min = parse_double(mm[0], "Traffic.interval");
    s.traffic.interval_max = parse_double(mm[1], "Traffic.interval");
  }
  if (const auto* v = take("Traffic.size")) {
    auto mm = split_list(*v);
    if (mm.size() != 2) throw ScenarioError("Traffic.size: expected 'min, max'");
    s.traffic.size_min = parse_size(mm[0]);
    s.traffic.size_max = parse_size(mm[1]);
  }
  if (const auto* v = take("Traffic.prefix")) s.traffic.name_prefix = *v;

  if (warnings) {
    for (const auto& [key, entry] : raw)
      if (!entry.used)
        warnings->push_back("line " + std::to_string(entry.line) + ": unknown key '" + key + "'");
  }
  return s;
}

Scenario load_scenario_file(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  Scenario s = parse_scenario(ss.str(), warnings);
  if (s.name == "scenario") s.name = std::filesystem::path(path).stem().string();
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "name = " << s.name << "\n";
  out << "endTime = " << format_double(s.end_time) << "\n";
  out << "worldSize = " << format_double(s.world_width) << ", " << format_double(s.world_height)
      << "\n";
  out << "warmup = " << format_double(s.warmup) << "\n";
  out << "timeStep = " << format_double(s.time_step) << "\n";
  out << "seed = " << s.seed << "\n";
  out << "reportInterval = " << format_double(s.report_interval) << "\n";
  out << "ttlUnit = " << (s.ttl_in_seconds ? "seconds" : "minutes") << "\n";
  out << "router = " << (s.router.variant == RouterVariant::epidemic ? "epidemic" : "snw") << "\n";
  out << "snw.copies = " << s.router.copies << "\n";
  out << "snw.binary = " << (s.router.binary ? "true" : "false") << "\n";

  if (!s.interfaces.empty()) {
    out << "\ninterfaces = ";
    bool first = true;
    for (const auto& [name, spec] : s.interfaces) {
      (void)spec;
      out << (first ? "" : ", ") << name;
      first = false;
    }
    out << "\n";
    for (const auto& [name, spec] : s.interfaces) {
      out << name << ".transmitSpeed = " << format_size(static_cast<std::int64_t>(spec.transmit_speed))
          << "\n";
      out << name << ".transmitRange = " << format_double(spec.transmit_range) << "\n";
    }
  }

  for (std::size_t i = 0; i < s.groups.size(); ++i) {
    const auto& g = s.groups[i];
    const std::string p = "Group" + std::to_string(i + 1) + ".";
    out << "\n" << p << "name = " << g.name << "\n";
    out << p << "count = " << g.count << "\n";
    if (!g.interfaces.empty()) {
      out << p << "interfaces = ";
      for (std::size_t k = 0; k < g.interfaces.size(); ++k)
        out << (k ? ", " : "") << g.interfaces[k];
      out << "\n";
    }
    if (!g.ok_maps.empty()) {
      out << p << "okMaps = ";
      for (std::size_t k = 0; k < g.ok_maps.size(); ++k) out << (k ? ", " : "") << g.ok_maps[k];
      out << "\n";
    }
    out << p << "speed = " << format_double(g.speed_min) << ", " << format_double(g.speed_max)
        << "\n";
    out << p << "bufferSize = " << g.buffer_size << "\n";
    out << p << "msgTtl = " << format_double(g.msg_ttl) << "\n";
    for (const auto& [k, v] : g.router_params) out << p << "router." << k << " = " << v << "\n";
  }

  if (s.traffic.enabled()) {
    out << "\nTraffic.sources = ";
    for (std::size_t k = 0; k < s.traffic.source_groups.size(); ++k)
      out << (k ? ", " : "") << s.traffic.source_groups[k];
    out << "\n";
    out << "Traffic.dest = " << s.traffic.dest_group << "\n";
    out << "Traffic.interval = " << format_double(s.traffic.interval_min) << ", "
        << format_double(s.traffic.interval_max) << "\n";
    out << "Traffic.size = " << s.traffic.size_min << ", " << s.traffic.size_max << "\n";
    out << "Traffic.prefix = " << s.traffic.name_prefix << "\n";
  }
  return out.str();
}

std::string resolve_map_path(const std::string& base_dir, const std::string& map_file) {
  std::filesystem::path p(map_file);
  if (p.is_absolute() || base_dir.empty()) return map_file;
  return (std::filesystem::path(base_dir) / p).string();
}

std::vector<Violation> validate(const Scenario& s, const std::string& base_dir) {
  std::vector<Violation> v;
  auto bad = [&](const std::string& where, const std::string& msg) {
    v.push_back(Violation{where, msg});
  };

  // endTime == 0 is allowed as the degenerate empty run.
  if (s.end_time < 0) bad("endTime", "must be >= 0");
  if (s.time_step <= 0) bad("timeStep", "must be > 0");
  if (s.warmup < 0) bad("warmup", "must be >= 0");
  if (s.report_interval <= 0) bad("reportInterval", "must be > 0");
  if (s.world_width <= 0 || s.world_height <= 0) bad("worldSize", "must be positive");
  if (s.router.copies < 1) bad("snw.copies", "must be >= 1");

  for (const auto& [name, spec] : s.interfaces) {
    if (spec.transmit_speed <= 0) bad(name + ".transmitSpeed", "must be > 0");
    if (spec.transmit_range <= 0) bad(name + ".transmitRange", "must be > 0");
  }

  std::set<std::string> group_names;
  for (std::size_t i = 0; i < s.groups.size(); ++i) {
    const auto& g = s.groups[i];
    const std::string p = "Group" + std::to_string(i + 1) + " (" + g.name + ")";
    if (!group_names.insert(g.name).second) bad(p + ".name", "duplicate group name");
    if (g.count <= 0) bad(p + ".count", "must be > 0");
    if (g.buffer_size <= 0) bad(p + ".bufferSize", "must be > 0");
    if (g.msg_ttl <= 0) bad(p + ".msgTtl", "must be > 0");
    if (g.speed_min < 0) bad(p + ".speed", "min must be >= 0");
    if (g.speed_min > g.speed_max)
      bad(p + ".speed", "speed_min " + format_double(g.speed_min) + " > speed_max " +
                            format_double(g.speed_max));
    if (g.interfaces.empty()) bad(p + ".interfaces", "group declares no interfaces");
    for (const auto& iface : g.interfaces)
      if (!s.interfaces.count(iface)) bad(p + ".interfaces", "undeclared interface '" + iface + "'");
    if (g.ok_maps.empty()) bad(p + ".okMaps", "group declares no movement maps");
    for (const auto& m : g.ok_maps) {
      const std::string path = resolve_map_path(base_dir, m);
      if (!std::filesystem::exists(path)) bad(p + ".okMaps", "map file not found: " + path);
    }
  }

  if (s.traffic.enabled()) {
    const auto& t = s.traffic;
    for (const auto& src : t.source_groups) {
      if (!s.find_group(src)) bad("Traffic.sources", "unknown group '" + src + "'");
      if (src == t.dest_group)
        bad("Traffic.sources", "source group '" + src + "' is also the destination group");
    }
    if (t.dest_group.empty()) bad("Traffic.dest", "missing destination group");
    else if (!s.find_group(t.dest_group)) bad("Traffic.dest", "unknown group '" + t.dest_group + "'");
    if (t.interval_min > t.interval_max) bad("Traffic.interval", "min > max");
    if (t.interval_min <= 0) bad("Traffic.interval", "must be > 0");
    if (t.size_min > t.size_max) bad("Traffic.size", "min > max");
    if (t.size_min <= 0) bad("Traffic.size", "must be > 0");
  }
  return v;
}

std::vector<Scenario> expand_sweep(const Scenario& s, const std::string& axis,
                                   const std::vector<std::string>& values) {
  std::vector<Scenario> out;
  if (axis == "router") {
    for (const auto& val : values) {
      Scenario c = s;
      if (val == "epidemic") c.router.variant = RouterVariant::epidemic;
      else if (val == "snw") c.router.variant = RouterVariant::spray_and_wait;
      else throw ScenarioError("sweep value '" + val + "' is not a router (epidemic|snw)");
      out.push_back(std::move(c));
    }
    return out;
  }
  if (axis == "seed") {
    for (const auto& val : values) {
      Scenario c = s;
      c.seed = static_cast<std::uint64_t>(parse_int(val, "seed"));
      out.push_back(std::move(c));
    }
    return out;
  }

  // <GroupName>.bufferSize or Group<N>.bufferSize
  const std::size_t dot = axis.find('.');
  if (dot != std::string::npos && axis.substr(dot + 1) == "bufferSize") {
    const std::string gname = axis.substr(0, dot);
    int index = -1;
    for (std::size_t i = 0; i < s.groups.size(); ++i) {
      if (s.groups[i].name == gname || "Group" + std::to_string(i + 1) == gname) {
        index = static_cast<int>(i);
        break;
      }
    }
    if (index < 0) throw ScenarioError("sweep axis '" + axis + "': no such group '" + gname + "'");
    for (const auto& val : values) {
      Scenario c = s;
      c.groups[index].buffer_size = parse_size(val);
      out.push_back(std::move(c));
    }
    return out;
  }
  throw ScenarioError("unknown sweep axis '" + axis +
                      "' (expected router, seed, or <group>.bufferSize)");
}

}  // namespace dtnsim
