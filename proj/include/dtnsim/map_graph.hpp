#pragma once

// Undirected weighted path graphs parsed from WKT LINESTRING /
// MULTILINESTRING entries. All node movement happens on these graphs.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtnsim/geometry.hpp"

namespace dtnsim {

struct WktError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Points closer than this are considered the same map vertex.
inline constexpr double kVertexMergeTolerance = 1e-3;  // meters

class MapGraph {
 public:
  struct Edge {
    int a = 0;
    int b = 0;
    double length = 0;  // meters; always the Euclidean endpoint distance
  };

  // Returns the vertex id, adding a vertex unless one already lies within
  // the merge tolerance.
  int add_vertex(Point p);
  // Ignores zero-length and duplicate edges.
  void add_edge(int a, int b);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  Point vertex(int id) const { return vertices_[id]; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::pair<int, double>>& neighbors(int v) const { return adj_[v]; }

  int component_of(int v) const;  // stable component ids, 0-based
  int component_count() const;
  bool same_component(int a, int b) const;

 private:
  void rebuild_components() const;

  std::vector<Point> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, double>>> adj_;
  // spatial hash for vertex merging
  long long cell_key(double x, double y) const;
  std::vector<std::pair<long long, int>> cells_;  // sorted (cell, vertex)
  mutable std::vector<int> component_;
  mutable int component_count_ = 0;
  mutable bool components_dirty_ = true;
};

struct PathResult {
  std::vector<int> vertices;  // from -> to inclusive; single element when from == to
  double length = 0;
};

// Minimal total length path; nullopt when the endpoints lie in different
// connected components.
std::optional<PathResult> shortest_path(const MapGraph& g, int from, int to);

// Throws WktError on malformed entries (with the entry index), single-point
// linestrings, or input without any geometry.
MapGraph parse_wkt(const std::string& text);
MapGraph load_wkt_file(const std::string& path);

// Union graph for groups whose okMaps span multiple files; shared points
// merge under the same tolerance as parsing.
MapGraph merge_graphs(const std::vector<const MapGraph*>& parts);

}  // namespace dtnsim
