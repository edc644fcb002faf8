#pragma once

// Synthetic three-zone map: a jittered road grid spanning the whole world,
// plus two denser local-path zones (pedestrian paths and a shopping/built-up
// area). Zone graphs share exact points with the road grid, and the
// pedestrian file carries a connector ending on a shops vertex so the
// two-zone union is one component.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dtnsim {

struct MapGenError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZoneRect {
  double x = 0, y = 0;  // lower-left corner, meters
  double w = 0, h = 0;
};

struct SyntheticMapConfig {
  double world_w = 4500;
  double world_h = 3400;
  ZoneRect ped_zone{250, 1270, 1300, 400};
  ZoneRect shops_zone{250, 1730, 1300, 400};
  double road_spacing = 350;  // vertex pitch along a corridor   // meters between road grid lines
  double ped_spacing = 110;
  double shops_spacing = 100;
  double jitter = 0.22;        // vertex offset, fraction of the local spacing
  std::uint64_t seed = 7;
};

struct GeneratedMaps {
  std::string roads_wkt;
  std::string pedestrian_wkt;
  std::string shops_wkt;
};

// Throws MapGenError when a zone has no area or leaves the world.
GeneratedMaps generate_synthetic_map(const SyntheticMapConfig& cfg);

// Writes roads.wkt, pedestrian_paths.wkt, shops.wkt into out_dir.
void write_synthetic_map(const SyntheticMapConfig& cfg, const std::string& out_dir);

}  // namespace dtnsim
