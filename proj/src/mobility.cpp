#include "dtnsim/mobility.hpp"

#include <algorithm>
#include <cassert>

namespace dtnsim {

namespace {
constexpr int kDestinationRetries = 8;

void refresh_position(MovementState& st, const MapGraph& g) {
  if (!st.leg_active()) {
    if (st.at_vertex >= 0) st.position = g.vertex(st.at_vertex);
    return;
  }
  const Point a = g.vertex(st.path[st.path_pos]);
  const Point b = g.vertex(st.path[st.path_pos + 1]);
  const double len = dist(a, b);
  const double t = len > 0 ? st.seg_offset / len : 0.0;
  st.position = Point{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
}
}  // namespace

void init_placement(MovementState& st, const MapGraph& g) {
  assert(g.vertex_count() > 0);
  st.at_vertex = static_cast<int>(st.rng.uniform_index(g.vertex_count()));
  st.path.clear();
  st.path_pos = 0;
  st.seg_offset = 0;
  st.position = g.vertex(st.at_vertex);
}

void next_leg(MovementState& st, const MapGraph& g, double speed_min, double speed_max) {
  assert(st.at_vertex >= 0);
  st.path.clear();
  st.path_pos = 0;
  st.seg_offset = 0;
  for (int attempt = 0; attempt < kDestinationRetries; ++attempt) {
    const int dest = static_cast<int>(st.rng.uniform_index(g.vertex_count()));
    auto path = shortest_path(g, st.at_vertex, dest);
    if (!path) continue;  // different component, redraw
    st.speed = st.rng.uniform(speed_min, speed_max);
    if (path->vertices.size() < 2) return;  // dest == current: idle leg
    st.path = std::move(path->vertices);
    return;
  }
  // every draw unreachable: stay put for this leg
}

void advance(MovementState& st, const MapGraph& g, double speed_min, double speed_max, double dt) {
  assert(dt > 0);
  double time_left = dt;
  while (time_left > 0) {
    if (!st.leg_active()) {
      next_leg(st, g, speed_min, speed_max);
      if (!st.leg_active()) break;  // idle leg consumes the rest of the step
    }
    if (st.speed <= 0) break;  // zero-speed leg cannot progress
    const int a = st.path[st.path_pos];
    const int b = st.path[st.path_pos + 1];
    const double seg_len = dist(g.vertex(a), g.vertex(b));
    const double remaining_m = seg_len - st.seg_offset;
    const double can_m = st.speed * time_left;
    if (can_m < remaining_m) {
      st.seg_offset += can_m;
      time_left = 0;
    } else {
      time_left -= remaining_m / st.speed;
      ++st.path_pos;
      st.seg_offset = 0;
      if (!st.leg_active()) {
        // arrived; next loop iteration draws a new leg with the leftover time
        st.at_vertex = st.path.back();
        st.path.clear();
        st.path_pos = 0;
      }
    }
  }
  refresh_position(st, g);
}

double distance_to_graph(const MapGraph& g, Point p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : g.edges()) {
    const Point a = g.vertex(e.a);
    const Point b = g.vertex(e.b);
    const double len2 = dist2(a, b);
    double t = 0;
    if (len2 > 0) t = std::clamp(((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / len2, 0.0, 1.0);
    const Point proj{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
    best = std::min(best, dist(p, proj));
  }
  for (const auto& v : g.vertices()) best = std::min(best, dist(p, v));
  return best;
}

}  // namespace dtnsim
