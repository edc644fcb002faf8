// dtnsim command line: single runs, parameter sweeps, synthetic map
// generation, delivery-rate plot data, and scenario validation.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dtnsim/engine.hpp"
#include "dtnsim/map_gen.hpp"

namespace {

using namespace dtnsim;

std::string default_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("DTNSIM_OUT"); env && *env) return env;
  return "out";
}

std::string scenario_base_dir(const std::string& scenario_path) {
  auto dir = std::filesystem::path(scenario_path).parent_path().string();
  return dir.empty() ? "." : dir;
}

Scenario load_checked(const std::string& path, std::uint64_t* seed_override) {
  std::vector<std::string> warnings;
  Scenario s = load_scenario_file(path, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << path << ": " << w << "\n";
  if (seed_override) s.seed = *seed_override;
  return s;
}

int report_violations(const Scenario& s, const std::string& base_dir) {
  const auto violations = validate(s, base_dir);
  for (const auto& v : violations) std::cerr << "violation: " << v.where << ": " << v.message << "\n";
  return static_cast<int>(violations.size());
}

void print_result(const RunResult& r) {
  std::cout << "scenario=" << r.scenario_name << " router=" << r.router
            << " buffer=" << format_size(r.dest_buffer) << " seed=" << r.seed
            << " created=" << r.summary.created << " delivered=" << r.summary.delivered
            << " p=" << format_fixed(r.summary.delivery_probability)
            << " overhead=" << format_fixed(r.summary.overhead_ratio)
            << " latency_avg=" << format_fixed(r.summary.latency_avg)
            << " hops_avg=" << format_fixed(r.summary.hopcount_avg)
            << " buffertime_avg=" << format_fixed(r.summary.buffertime_avg) << "\n";
}

bool parse_world(const std::string& text, double& w, double& h) {
  const auto x = text.find('x');
  if (x == std::string::npos) return false;
  try {
    w = std::stod(text.substr(0, x));
    h = std::stod(text.substr(x + 1));
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

bool parse_zone(const std::string& text, ZoneRect& z) {
  std::stringstream ss(text);
  std::string part;
  std::vector<double> vals;
  try {
    while (std::getline(ss, part, ',')) vals.push_back(std::stod(part));
  } catch (const std::exception&) {
    return false;
  }
  if (vals.size() != 4) return false;
  z = ZoneRect{vals[0], vals[1], vals[2], vals[3]};
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dtnsim: deterministic store-carry-forward network simulator"};
  app.require_subcommand(1);

  std::string scenario_path, out_flag, axis, values_csv, timeline_path, plot_base = "plot";
  std::string world_text, ped_zone_text, shops_zone_text, contact_trace, events_csv;
  std::uint64_t seed = 0;
  bool seed_given = false;

  auto* run_cmd = app.add_subcommand("run", "run one scenario and write reports");
  run_cmd->add_option("-s,--scenario", scenario_path, "scenario file")->required();
  run_cmd->add_option("--seed", seed, "override the scenario seed")->each([&](const std::string&) {
    seed_given = true;
  });
  run_cmd->add_option("--out", out_flag, "output directory (default $DTNSIM_OUT or ./out)");
  run_cmd->add_option("--contact-trace", contact_trace, "write link up/down events to a CSV");
  run_cmd->add_option("--events", events_csv, "write message creation events to a CSV");

  auto* sweep_cmd = app.add_subcommand("sweep", "run a one-axis parameter sweep");
  sweep_cmd->add_option("-s,--scenario", scenario_path, "scenario file")->required();
  sweep_cmd->add_option("--axis", axis, "router | seed | <group>.bufferSize")->required();
  sweep_cmd->add_option("--values", values_csv, "comma-separated axis values")->required();
  sweep_cmd->add_option("--seed", seed, "override the scenario seed")
      ->each([&](const std::string&) { seed_given = true; });
  sweep_cmd->add_option("--out", out_flag, "output directory (default $DTNSIM_OUT or ./out)");

  auto* genmap_cmd = app.add_subcommand("genmap", "generate the synthetic three-zone map set");
  genmap_cmd->add_option("--world", world_text, "world size WxH in meters (default 4500x3400)");
  genmap_cmd->add_option("--seed", seed, "map generator seed")->each([&](const std::string&) {
    seed_given = true;
  });
  genmap_cmd->add_option("--out", out_flag, "output directory (default $DTNSIM_OUT or ./out)");
  genmap_cmd->add_option("--ped-zone", ped_zone_text, "pedestrian zone as x,y,w,h");
  genmap_cmd->add_option("--shops-zone", shops_zone_text, "shops zone as x,y,w,h");

  auto* plot_cmd = app.add_subcommand("plot", "emit gnuplot-ready delivery-rate data");
  plot_cmd->add_option("--timeline", timeline_path, "timeline.csv from a run")->required();
  plot_cmd->add_option("--out", plot_base, "output base name (writes <base>.dat and <base>.gp)");

  auto* validate_cmd = app.add_subcommand("validate", "check a scenario without running it");
  validate_cmd->add_option("-s,--scenario", scenario_path, "scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run_cmd->parsed()) {
      Scenario s = load_checked(scenario_path, seed_given ? &seed : nullptr);
      const std::string base = scenario_base_dir(scenario_path);
      if (report_violations(s, base) > 0) return 1;
      SimEngine engine(s, base);
      if (!contact_trace.empty()) engine.set_contact_trace(contact_trace);
      if (!events_csv.empty()) engine.set_events_csv(events_csv);
      RunResult r = engine.run(default_out_dir(out_flag));
      print_result(r);
      for (const auto& f : r.report_files) std::cout << "wrote " << f << "\n";
      return 0;
    }
    if (sweep_cmd->parsed()) {
      Scenario s = load_checked(scenario_path, seed_given ? &seed : nullptr);
      const std::string base = scenario_base_dir(scenario_path);
      if (report_violations(s, base) > 0) return 1;
      std::vector<std::string> values;
      std::stringstream ss(values_csv);
      std::string v;
      while (std::getline(ss, v, ',')) values.push_back(v);
      const auto results = run_sweep(s, axis, values, base, default_out_dir(out_flag));
      for (const auto& r : results) print_result(r);
      if (!results.empty())
        for (const auto& f : results.back().report_files) std::cout << "wrote " << f << "\n";
      return 0;
    }
    if (genmap_cmd->parsed()) {
      SyntheticMapConfig cfg;
      if (seed_given) cfg.seed = seed;
      if (!world_text.empty() && !parse_world(world_text, cfg.world_w, cfg.world_h)) {
        std::cerr << "error: --world expects WxH, e.g. 4500x3400\n";
        return 1;
      }
      if (!ped_zone_text.empty() && !parse_zone(ped_zone_text, cfg.ped_zone)) {
        std::cerr << "error: --ped-zone expects x,y,w,h\n";
        return 1;
      }
      if (!shops_zone_text.empty() && !parse_zone(shops_zone_text, cfg.shops_zone)) {
        std::cerr << "error: --shops-zone expects x,y,w,h\n";
        return 1;
      }
      const std::string out = default_out_dir(out_flag);
      write_synthetic_map(cfg, out);
      std::cout << "wrote " << out << "/roads.wkt, pedestrian_paths.wkt, shops.wkt\n";
      return 0;
    }
    if (plot_cmd->parsed()) {
      const std::string dat = write_plot_data(timeline_path, plot_base);
      std::cout << "wrote " << dat << " and " << plot_base << ".gp\n";
      std::cout << "render with: gnuplot -p " << plot_base << ".gp\n";
      return 0;
    }
    if (validate_cmd->parsed()) {
      Scenario s = load_checked(scenario_path, nullptr);
      const int n = report_violations(s, scenario_base_dir(scenario_path));
      if (n > 0) {
        std::cerr << n << " violation(s)\n";
        return 1;
      }
      std::cout << "ok: " << s.groups.size() << " groups, "
                << [&] {
                     int total = 0;
                     for (const auto& g : s.groups) total += g.count;
                     return total;
                   }()
                << " hosts\n";
      return 0;
    }
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const EngineError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const MapGenError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
