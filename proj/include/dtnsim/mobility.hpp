#pragma once

// Map-constrained random waypoint: pick a uniform random destination vertex,
// walk the shortest path to it at a per-leg uniform random speed, repeat.

#include <vector>

#include "dtnsim/map_graph.hpp"
#include "dtnsim/rng.hpp"

namespace dtnsim {

struct MovementState {
  Point position;
  int at_vertex = -1;          // valid when no leg is active
  std::vector<int> path;       // vertices of the active leg, path[0] = leg start
  std::size_t path_pos = 0;    // current segment is path[path_pos] -> path[path_pos+1]
  double seg_offset = 0;       // meters into the current segment
  double speed = 0;            // m/s, drawn per leg
  UniformSource rng;

  explicit MovementState(std::uint64_t seed) : rng(seed) {}
  bool leg_active() const { return path_pos + 1 < path.size(); }
};

// Uniform start vertex; consumes one draw from the node's stream.
void init_placement(MovementState& st, const MapGraph& g);

// Draw the next destination and speed. Unreachable destinations are redrawn a
// bounded number of times; when all draws fail the node stays put for the
// remainder of the current step (empty leg).
void next_leg(MovementState& st, const MapGraph& g, double speed_min, double speed_max);

// Move speed*dt meters along the active path, chaining into new legs when the
// destination is reached before dt runs out.
void advance(MovementState& st, const MapGraph& g, double speed_min, double speed_max, double dt);

// Distance from the position to the nearest point of any graph edge;
// the on-graph invariant bounds this by 1e-6.
double distance_to_graph(const MapGraph& g, Point p);

}  // namespace dtnsim
