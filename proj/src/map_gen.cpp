#include "dtnsim/map_gen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "dtnsim/geometry.hpp"
#include "dtnsim/rng.hpp"

namespace dtnsim {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void emit_linestring(std::string& out, const std::vector<Point>& pts) {
  out += "LINESTRING (";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ", ";
    out += fmt(pts[i].x) + " " + fmt(pts[i].y);
  }
  out += ")\n";
}

struct JitterGrid {
  int nx = 0, ny = 0;
  std::vector<Point> pts;  // row-major, index j*nx + i
  Point at(int i, int j) const { return pts[static_cast<std::size_t>(j) * nx + i]; }
};

// Evenly spaced grid over [x0,x1]x[y0,y1] with per-vertex jitter; the outer
// ring is kept un-jittered toward the outside so vertices stay in the box.
JitterGrid make_grid(double x0, double y0, double x1, double y1, double spacing, double jitter,
                     UniformSource& rng) {
  JitterGrid g;
  g.nx = std::max(2, static_cast<int>(std::lround((x1 - x0) / spacing)) + 1);
  g.ny = std::max(2, static_cast<int>(std::lround((y1 - y0) / spacing)) + 1);
  const double dx = (x1 - x0) / (g.nx - 1);
  const double dy = (y1 - y0) / (g.ny - 1);
  const double jx = jitter * dx;
  const double jy = jitter * dy;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      Point p{x0 + i * dx, y0 + j * dy};
      p.x += rng.uniform(-jx, jx);
      p.y += rng.uniform(-jy, jy);
      p.x = std::clamp(p.x, x0, x1);
      p.y = std::clamp(p.y, y0, y1);
      g.pts.push_back(p);
    }
  }
  return g;
}

bool in_rect(Point p, const ZoneRect& r) {
  return p.x >= r.x && p.x <= r.x + r.w && p.y >= r.y && p.y <= r.y + r.h;
}

// Emits the grid lines, skipping segments whose midpoint falls inside one of
// the blocked rectangles (collapsed built-up areas block the streets through
// them); each contiguous run becomes its own linestring.
std::string grid_wkt(const JitterGrid& g, const std::vector<ZoneRect>& blocked = {}) {
  const auto cut = [&](Point a, Point b) {
    const Point mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
    for (const auto& z : blocked)
      if (in_rect(mid, z)) return true;
    return false;
  };
  std::string out;
  const auto emit_line = [&](auto point_at, int count) {
    std::vector<Point> run;
    for (int k = 0; k < count; ++k) {
      const Point p = point_at(k);
      if (!run.empty() && cut(run.back(), p)) {
        if (run.size() >= 2) emit_linestring(out, run);
        run.clear();
      }
      run.push_back(p);
    }
    if (run.size() >= 2) emit_linestring(out, run);
  };
  for (int j = 0; j < g.ny; ++j)
    emit_line([&](int i) { return g.at(i, j); }, g.nx);
  for (int i = 0; i < g.nx; ++i)
    emit_line([&](int j) { return g.at(i, j); }, g.ny);
  return out;
}

int nearest_index(const std::vector<Point>& pts, Point target) {
  int best = 0;
  double best_d = dist2(pts[0], target);
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const double d = dist2(pts[k], target);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(k);
    }
  }
  return best;
}

void check_zone(const ZoneRect& z, double w, double h, const char* name) {
  if (z.w <= 0 || z.h <= 0) throw MapGenError(std::string(name) + " zone has no area");
  if (z.x < 0 || z.y < 0 || z.x + z.w > w || z.y + z.h > h)
    throw MapGenError(std::string(name) + " zone extends outside the world");
}

// Access gates tying the zone grid to the road grid: one path per zone side,
// from the surviving road vertex nearest that side's midpoint to its nearest
// zone vertex. Exact shared coordinates, so the parsed union merges there.
std::string road_ties_wkt(const JitterGrid& zone, const JitterGrid& roads, const ZoneRect& rect,
                          const std::vector<ZoneRect>& blocked) {
  std::vector<Point> outside;
  for (const Point& rv : roads.pts) {
    bool ok = true;
    for (const auto& z : blocked)
      if (in_rect(rv, z)) ok = false;
    if (ok) outside.push_back(rv);
  }
  const std::vector<Point> side_mids = {
      {rect.x + rect.w / 2, rect.y},           // south
      {rect.x + rect.w / 2, rect.y + rect.h},  // north
  };
  std::string out;
  std::vector<int> used;
  for (const Point& mid : side_mids) {
    const int ri = nearest_index(outside, mid);
    if (std::find(used.begin(), used.end(), ri) != used.end()) continue;
    used.push_back(ri);
    const Point rv = outside[ri];
    const Point zv = zone.pts[nearest_index(zone.pts, rv)];
    emit_linestring(out, {rv, zv});
  }
  return out;
}

}  // namespace

namespace {

// Corridor network: parallel east-west valley roads, adjacent corridors
// joined at alternating ends so the whole net is one long switchback route.
// Corridor pitch stays above typical radio ranges, so traffic between
// corridors has to be carried around the ends.
JitterGrid make_corridors(double x0, double y0, double x1, double y1, double vertex_spacing,
                          double jitter, UniformSource& rng) {
  constexpr double kPitch = 620;  // separation within a corridor pair
  // Two corridor pairs hug the north and south edges when the world is tall
  // enough, leaving a wide central band for the settlement zones; small
  // worlds fall back to evenly pitched corridors.
  std::vector<double> rows;
  if (y1 - y0 >= 2 * kPitch + 1400) {
    rows = {y0, y0 + kPitch, y1 - kPitch, y1};
  } else {
    const int ny = std::max(2, static_cast<int>(std::lround((y1 - y0) / kPitch)) + 1);
    for (int j = 0; j < ny; ++j) rows.push_back(y0 + j * (y1 - y0) / (ny - 1));
  }

  JitterGrid g;
  g.nx = std::max(2, static_cast<int>(std::lround((x1 - x0) / vertex_spacing)) + 1);
  g.ny = static_cast<int>(rows.size());
  const double dx = (x1 - x0) / (g.nx - 1);
  const double jx = jitter * dx;
  const double jy = 40.0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      Point p{x0 + i * dx, rows[j]};
      if (i > 0 && i < g.nx - 1) {  // end junctions stay exact
        p.x += rng.uniform(-jx, jx);
        p.y += rng.uniform(-jy, jy);
        p.x = std::clamp(p.x, x0, x1);
      }
      g.pts.push_back(p);
    }
  }
  return g;
}

std::string corridors_wkt(const JitterGrid& g, const std::vector<ZoneRect>& blocked) {
  std::string out;
  for (int j = 0; j < g.ny; ++j) {  // corridors
    std::vector<Point> row;
    for (int i = 0; i < g.nx; ++i) row.push_back(g.at(i, j));
    emit_linestring(out, row);
  }
  for (int j = 0; j + 1 < g.ny; ++j) {  // switchback connectors
    const int i = (j % 2 == 0) ? g.nx - 1 : 0;
    emit_linestring(out, {g.at(i, j), g.at(i, j + 1)});
  }
  (void)blocked;  // zones sit between corridors by construction
  return out;
}

}  // namespace

GeneratedMaps generate_synthetic_map(const SyntheticMapConfig& cfg) {
  if (cfg.world_w <= 0 || cfg.world_h <= 0) throw MapGenError("world has no area");
  check_zone(cfg.ped_zone, cfg.world_w, cfg.world_h, "pedestrian");
  check_zone(cfg.shops_zone, cfg.world_w, cfg.world_h, "shops");

  UniformSource rng(derive_seed(cfg.seed, "mapgen"));
  const double margin = std::min({150.0, cfg.world_w / 10, cfg.world_h / 10});

  const JitterGrid roads = make_corridors(margin, margin, cfg.world_w - margin,
                                          cfg.world_h - margin, cfg.road_spacing, cfg.jitter, rng);
  const auto& pz = cfg.ped_zone;
  const JitterGrid ped =
      make_grid(pz.x, pz.y, pz.x + pz.w, pz.y + pz.h, cfg.ped_spacing, cfg.jitter, rng);
  const auto& sz = cfg.shops_zone;
  const JitterGrid shops =
      make_grid(sz.x, sz.y, sz.x + sz.w, sz.y + sz.h, cfg.shops_spacing, cfg.jitter, rng);

  const std::vector<ZoneRect> blocked = {pz, sz};
  GeneratedMaps maps;
  maps.roads_wkt = corridors_wkt(roads, blocked);
  maps.pedestrian_wkt = grid_wkt(ped) + road_ties_wkt(ped, roads, pz, blocked);
  maps.shops_wkt = grid_wkt(shops) + road_ties_wkt(shops, roads, sz, blocked);

  // inter-zone connector, emitted in the pedestrian file and ending exactly
  // on a shops vertex; gives TruckB/DroneB (okMaps = both files) one component
  const Point shops_center{sz.x + sz.w / 2, sz.y + sz.h / 2};
  const Point ped_center{pz.x + pz.w / 2, pz.y + pz.h / 2};
  const Point pv = ped.pts[nearest_index(ped.pts, shops_center)];
  const Point sv = shops.pts[nearest_index(shops.pts, ped_center)];
  emit_linestring(maps.pedestrian_wkt, {pv, Point{sv.x, pv.y}, sv});

  return maps;
}

void write_synthetic_map(const SyntheticMapConfig& cfg, const std::string& out_dir) {
  const GeneratedMaps maps = generate_synthetic_map(cfg);
  std::filesystem::create_directories(out_dir);
  const auto write = [&](const std::string& name, const std::string& content) {
    const std::string path = (std::filesystem::path(out_dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MapGenError("cannot write map file '" + path + "'");
    out << content;
  };
  write("roads.wkt", maps.roads_wkt);
  write("pedestrian_paths.wkt", maps.pedestrian_wkt);
  write("shops.wkt", maps.shops_wkt);
}

}  // namespace dtnsim
