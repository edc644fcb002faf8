#include "dtnsim/map_graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

namespace dtnsim {

long long MapGraph::cell_key(double x, double y) const {
  const long long cx = static_cast<long long>(std::floor(x / kVertexMergeTolerance));
  const long long cy = static_cast<long long>(std::floor(y / kVertexMergeTolerance));
  return cx * 2000003LL + cy;  // collisions only cost extra distance checks
}

int MapGraph::add_vertex(Point p) {
  // scan the 3x3 cell neighborhood so near-boundary points still merge
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) {
      const long long key =
          cell_key(p.x + dx * kVertexMergeTolerance, p.y + dy * kVertexMergeTolerance);
      auto it = std::lower_bound(cells_.begin(), cells_.end(), std::make_pair(key, -1));
      for (; it != cells_.end() && it->first == key; ++it) {
        if (dist(vertices_[it->second], p) <= kVertexMergeTolerance) return it->second;
      }
    }
  }
  const int id = static_cast<int>(vertices_.size());
  vertices_.push_back(p);
  adj_.emplace_back();
  const auto entry = std::make_pair(cell_key(p.x, p.y), id);
  cells_.insert(std::upper_bound(cells_.begin(), cells_.end(), entry), entry);
  components_dirty_ = true;
  return id;
}

void MapGraph::add_edge(int a, int b) {
  if (a == b) return;
  for (const auto& [n, len] : adj_[a]) {
    (void)len;
    if (n == b) return;  // duplicate
  }
  const double length = dist(vertices_[a], vertices_[b]);
  edges_.push_back(Edge{a, b, length});
  adj_[a].emplace_back(b, length);
  adj_[b].emplace_back(a, length);
  components_dirty_ = true;
}

void MapGraph::rebuild_components() const {
  component_.assign(vertices_.size(), -1);
  component_count_ = 0;
  for (int start = 0; start < static_cast<int>(vertices_.size()); ++start) {
    if (component_[start] != -1) continue;
    const int id = component_count_++;
    std::vector<int> stack{start};
    component_[start] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto& [n, len] : adj_[v]) {
        (void)len;
        if (component_[n] == -1) {
          component_[n] = id;
          stack.push_back(n);
        }
      }
    }
  }
  components_dirty_ = false;
}

int MapGraph::component_of(int v) const {
  if (components_dirty_) rebuild_components();
  return component_[v];
}

int MapGraph::component_count() const {
  if (components_dirty_) rebuild_components();
  return component_count_;
}

bool MapGraph::same_component(int a, int b) const { return component_of(a) == component_of(b); }

std::optional<PathResult> shortest_path(const MapGraph& g, int from, int to) {
  if (from == to) return PathResult{{from}, 0.0};
  if (!g.same_component(from, to)) return std::nullopt;

  const int n = g.vertex_count();
  std::vector<double> distv(n, std::numeric_limits<double>::infinity());
  std::vector<int> parent(n, -1);
  // (distance, vertex) with the vertex id as the deterministic tie break
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  distv[from] = 0;
  heap.emplace(0.0, from);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > distv[v]) continue;
    if (v == to) break;
    for (const auto& [nb, len] : g.neighbors(v)) {
      const double nd = d + len;
      if (nd < distv[nb]) {
        distv[nb] = nd;
        parent[nb] = v;
        heap.emplace(nd, nb);
      }
    }
  }
  PathResult res;
  res.length = distv[to];
  for (int v = to; v != -1; v = parent[v]) res.vertices.push_back(v);
  std::reverse(res.vertices.begin(), res.vertices.end());
  return res;
}

namespace {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  double number(int entry) {
    skip_ws();
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(text.substr(pos, 64), &used);
    } catch (const std::exception&) {
      throw WktError("entry " + std::to_string(entry) + ": expected a coordinate at offset " +
                     std::to_string(pos));
    }
    pos += used;
    return v;
  }
};

// "( x y, x y, ... )" appended as a chain of vertices/edges
void parse_point_list(Cursor& cur, MapGraph& g, int entry) {
  if (!cur.eat('(')) throw WktError("entry " + std::to_string(entry) + ": expected '('");
  std::vector<int> chain;
  while (true) {
    const double x = cur.number(entry);
    const double y = cur.number(entry);
    chain.push_back(g.add_vertex(Point{x, y}));
    if (cur.eat(',')) continue;
    if (cur.eat(')')) break;
    throw WktError("entry " + std::to_string(entry) + ": expected ',' or ')'");
  }
  if (chain.size() < 2)
    throw WktError("entry " + std::to_string(entry) + ": linestring needs at least 2 points");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) g.add_edge(chain[i], chain[i + 1]);
}

}  // namespace

MapGraph parse_wkt(const std::string& text) {
  MapGraph g;
  Cursor cur{text};
  int entry = 0;
  bool any = false;
  while (true) {
    cur.skip_ws();
    if (cur.pos >= text.size()) break;
    ++entry;
    if (text.compare(cur.pos, 15, "MULTILINESTRING") == 0) {
      cur.pos += 15;
      if (!cur.eat('(')) throw WktError("entry " + std::to_string(entry) + ": expected '('");
      do {
        parse_point_list(cur, g, entry);
      } while (cur.eat(','));
      if (!cur.eat(')')) throw WktError("entry " + std::to_string(entry) + ": expected ')'");
    } else if (text.compare(cur.pos, 10, "LINESTRING") == 0) {
      cur.pos += 10;
      parse_point_list(cur, g, entry);
    } else {
      throw WktError("entry " + std::to_string(entry) +
                     ": expected LINESTRING or MULTILINESTRING at offset " +
                     std::to_string(cur.pos));
    }
    any = true;
  }
  if (!any) throw WktError("no geometry found in WKT input");
  return g;
}

MapGraph load_wkt_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw WktError("cannot open map file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_wkt(ss.str());
  } catch (const WktError& e) {
    throw WktError(path + ": " + e.what());
  }
}

MapGraph merge_graphs(const std::vector<const MapGraph*>& parts) {
  MapGraph g;
  for (const MapGraph* part : parts) {
    std::vector<int> remap(part->vertex_count());
    for (int v = 0; v < part->vertex_count(); ++v) remap[v] = g.add_vertex(part->vertex(v));
    for (const auto& e : part->edges()) g.add_edge(remap[e.a], remap[e.b]);
  }
  return g;
}

}  // namespace dtnsim
