#pragma once

// Graphs with a rotation system, the text file format, statistics and
// subdivision.

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tcg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  int u = 0;
  int v = 0;
  bool is_loop() const { return u == v; }
};

// An edge end is encoded as 2*edge + side, side 0 sitting at edge.u and side 1
// at edge.v. Loops therefore contribute two distinct ends at one vertex.
inline int end_edge(int end) { return end >> 1; }
inline int end_side(int end) { return end & 1; }
inline int make_end(int edge, int side) { return 2 * edge + side; }

class Graph {
 public:
  Graph() = default;
  explicit Graph(int vertex_count) : rotation_(static_cast<std::size_t>(vertex_count)) {
    if (vertex_count < 0) throw Error("negative vertex count");
  }

  int vertex_count() const { return static_cast<int>(rotation_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
  const std::vector<Edge>& edges() const { return edges_; }

  int add_vertex() {
    rotation_.emplace_back();
    return vertex_count() - 1;
  }

  int add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    int id = edge_count();
    edges_.push_back({u, v});
    rotation_[static_cast<std::size_t>(u)].push_back(make_end(id, 0));
    rotation_[static_cast<std::size_t>(v)].push_back(make_end(id, 1));
    return id;
  }

  int degree(int v) const { return static_cast<int>(rotation_.at(static_cast<std::size_t>(v)).size()); }

  // Cyclic order of edge ends at v.
  const std::vector<int>& rotation_ends(int v) const { return rotation_.at(static_cast<std::size_t>(v)); }

  std::vector<int> rotation(int v) const {
    std::vector<int> out;
    for (int end : rotation_ends(v)) out.push_back(end_edge(end));
    return out;
  }

  void set_rotation_ends(int v, std::vector<int> ends) {
    check_vertex(v);
    std::vector<int> expected = rotation_[static_cast<std::size_t>(v)];
    std::vector<int> given = ends;
    std::sort(expected.begin(), expected.end());
    std::sort(given.begin(), given.end());
    if (expected != given) throw Error("rotation at vertex " + std::to_string(v) + " does not list its edge ends");
    rotation_[static_cast<std::size_t>(v)] = std::move(ends);
  }

  // Rotation given by edge ids; a loop is listed twice, its first occurrence
  // taken as the u-side end.
  void set_rotation(int v, const std::vector<int>& edge_ids) {
    std::vector<int> ends;
    std::map<int, int> seen;
    for (int e : edge_ids) {
      if (e < 0 || e >= edge_count()) throw Error("rotation at vertex " + std::to_string(v) + " names unknown edge " + std::to_string(e));
      const Edge& ed = edge(e);
      int side;
      if (ed.is_loop()) {
        side = seen[e]++;
        if (side > 1) throw Error("loop " + std::to_string(e) + " listed more than twice at vertex " + std::to_string(v));
      } else if (ed.u == v) {
        side = 0;
      } else if (ed.v == v) {
        side = 1;
      } else {
        throw Error("edge " + std::to_string(e) + " is not incident to vertex " + std::to_string(v));
      }
      ends.push_back(make_end(e, side));
    }
    set_rotation_ends(v, std::move(ends));
  }

  int other_end(int e, int v) const {
    const Edge& ed = edge(e);
    if (ed.u == v) return ed.v;
    if (ed.v == v) return ed.u;
    throw Error("edge " + std::to_string(e) + " is not incident to vertex " + std::to_string(v));
  }

  int vertex_of_end(int end) const {
    const Edge& ed = edge(end_edge(end));
    return end_side(end) == 0 ? ed.u : ed.v;
  }

  std::optional<int> root_hint;

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= vertex_count()) throw Error("vertex " + std::to_string(v) + " out of range");
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> rotation_;
};

// ---------------------------------------------------------------- file format

inline Graph parse_graph(std::istream& in) {
  std::optional<Graph> g;
  std::vector<std::pair<int, std::vector<int>>> rotations;
  std::optional<int> root;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> Error { return Error("line " + std::to_string(lineno) + ": " + msg); };
  auto read_int = [&](std::istringstream& ss, const char* what) {
    long long value;
    if (!(ss >> value)) throw fail(std::string("expected ") + what);
    if (value < 0 || value > 100000000) throw fail(std::string(what) + " out of range");
    return static_cast<int>(value);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string keyword;
    if (!(ss >> keyword)) continue;
    if (keyword == "graph") {
      if (g) throw fail("duplicate graph header");
      g.emplace(read_int(ss, "vertex count"));
    } else if (!g) {
      throw fail("expected 'graph <vertex_count>' header before '" + keyword + "'");
    } else if (keyword == "edge") {
      int u = read_int(ss, "edge endpoint");
      int v = read_int(ss, "edge endpoint");
      if (u >= g->vertex_count() || v >= g->vertex_count()) throw fail("edge endpoint out of range");
      g->add_edge(u, v);
    } else if (keyword == "rot") {
      int v = read_int(ss, "vertex");
      if (v >= g->vertex_count()) throw fail("vertex out of range");
      std::vector<int> ids;
      int e;
      while (ss >> e) ids.push_back(e);
      if (!ss.eof()) throw fail("malformed rotation");
      rotations.emplace_back(v, std::move(ids));
      rotations.back().second.push_back(lineno);
      continue;
    } else if (keyword == "root") {
      int v = read_int(ss, "vertex");
      if (v >= g->vertex_count()) throw fail("root out of range");
      root = v;
    } else {
      throw fail("unknown keyword '" + keyword + "'");
    }
    std::string extra;
    if (ss >> extra) throw fail("trailing token '" + extra + "'");
  }
  if (!g) throw Error("missing 'graph <vertex_count>' header");
  for (auto& [v, ids] : rotations) {
    lineno = ids.back();
    ids.pop_back();
    try {
      g->set_rotation(v, ids);
    } catch (const Error& err) {
      throw fail(err.what());
    }
  }
  g->root_hint = root;
  return *g;
}

inline Graph parse_graph_string(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file '" + path + "'");
  try {
    return parse_graph(in);
  } catch (const Error& err) {
    throw Error(path + ": " + err.what());
  }
}

inline std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << "graph " << g.vertex_count() << "\n";
  for (const auto& e : g.edges()) out << "edge " << e.u << " " << e.v << "\n";
  for (int v = 0; v < g.vertex_count(); ++v) {
    out << "rot " << v;
    for (int e : g.rotation(v)) out << " " << e;
    out << "\n";
  }
  if (g.root_hint) out << "root " << *g.root_hint << "\n";
  return out.str();
}

// ---------------------------------------------------------------- basics

inline std::vector<int> component_labels(const Graph& g) {
  std::vector<int> label(static_cast<std::size_t>(g.vertex_count()), -1);
  int next = 0;
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (label[s] != -1) continue;
    std::vector<int> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : g.rotation(v)) {
        int w = g.other_end(e, v);
        if (label[w] == -1) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

inline int component_count(const Graph& g) {
  auto labels = component_labels(g);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

inline bool is_connected(const Graph& g) { return component_count(g) == 1; }

inline bool is_simple(const Graph& g) {
  std::vector<std::pair<int, int>> seen;
  for (const auto& e : g.edges()) {
    if (e.is_loop()) return false;
    seen.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  }
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

inline bool is_forest(const Graph& g) {
  return g.edge_count() - g.vertex_count() + component_count(g) == 0;
}

struct GraphStats {
  int vertices = 0;
  int edges = 0;
  int m = 0;     // essential vertices (degree >= 3)
  int beta = 0;  // first Betti number
};

inline GraphStats graph_stats(const Graph& g) {
  GraphStats s;
  s.vertices = g.vertex_count();
  s.edges = g.edge_count();
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) >= 3) ++s.m;
  s.beta = g.edge_count() - g.vertex_count() + component_count(g);
  return s;
}

inline bool is_essential(const Graph& g, int v) { return g.degree(v) >= 3; }

// Length of a shortest cycle, or -1 for forests. Loops count 1, parallel
// edges 2.
inline int girth(const Graph& g) {
  int best = -1;
  auto better = [&](int len) {
    if (best == -1 || len < best) best = len;
  };
  for (const auto& e : g.edges())
    if (e.is_loop()) better(1);
  if (!is_simple(g)) {
    std::map<std::pair<int, int>, int> mult;
    for (const auto& e : g.edges())
      if (!e.is_loop() && ++mult[{std::min(e.u, e.v), std::max(e.u, e.v)}] > 1) better(2);
  }
  if (best != -1 && best <= 2) return best;
  // BFS from every vertex; a non-tree edge closes a cycle of length
  // dist[a] + dist[b] + 1, and the minimum over all roots is the girth.
  for (int s = 0; s < g.vertex_count(); ++s) {
    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<int> via(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<int> queue{s};
    dist[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int v = queue[head];
      for (int e : g.rotation(v)) {
        if (e == via[v]) continue;
        int w = g.other_end(e, v);
        if (dist[w] == -1) {
          dist[w] = dist[v] + 1;
          via[w] = e;
          queue.push_back(w);
        } else if (w != v) {
          better(dist[v] + dist[w] + 1);
        }
      }
    }
  }
  return best;
}

// A maximal path whose interior vertices all have degree 2. Endpoints have
// degree != 2, except for circle components where start == end is an
// arbitrary vertex.
struct Segment {
  int start = 0;
  int end = 0;
  std::vector<int> edges;     // in walking order
  std::vector<int> vertices;  // start, interior..., end
  bool closed() const { return start == end; }
};

inline std::vector<Segment> segments(const Graph& g) {
  std::vector<Segment> out;
  std::vector<bool> used(static_cast<std::size_t>(g.edge_count()), false);
  auto walk = [&](int start, int first_end) {
    Segment s;
    s.start = start;
    s.vertices.push_back(start);
    int end = first_end;
    int v = start;
    while (true) {
      int e = end_edge(end);
      used[e] = true;
      s.edges.push_back(e);
      const Edge& ed = g.edge(e);
      int w = end_side(end) == 0 ? ed.v : ed.u;
      s.vertices.push_back(w);
      v = w;
      if (g.degree(v) != 2 || v == start) break;
      const auto& rot = g.rotation_ends(v);
      int arrive = make_end(e, 1 - end_side(end));
      end = rot[0] == arrive ? rot[1] : rot[0];
    }
    s.end = v;
    out.push_back(std::move(s));
  };
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 2) continue;
    for (int end : g.rotation_ends(v))
      if (!used[end_edge(end)]) walk(v, end);
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) != 2) continue;
    int end = g.rotation_ends(v)[0];
    if (!used[end_edge(end)]) walk(v, end);
  }
  return out;
}

inline bool is_sufficiently_subdivided(const Graph& g, int n) {
  if (n < 1) return false;
  if (g.vertex_count() < n) return false;
  if (!is_simple(g)) return false;
  for (const auto& s : segments(g))
    if (!s.closed() && static_cast<int>(s.edges.size()) < n - 1) return false;
  int gi = girth(g);
  return gi == -1 || gi >= n + 1;
}

// ---------------------------------------------------------------- subdivision

// Splits edge e into `pieces` edges. The piece at edge.u keeps the id e; new
// vertices and edges are appended. Returns the edge ids from edge.u to edge.v.
inline std::vector<int> subdivide_edge(Graph& g, int e, int pieces) {
  if (pieces < 1) throw Error("subdivide_edge: pieces must be positive");
  std::vector<int> path{e};
  if (pieces == 1) return path;
  Edge original = g.edge(e);
  std::vector<Edge> edges = g.edges();
  std::vector<std::vector<int>> rot(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) rot[v] = g.rotation_ends(v);
  std::optional<int> hint = g.root_hint;

  std::vector<int> new_vertices;
  for (int i = 1; i < pieces; ++i) new_vertices.push_back(static_cast<int>(rot.size()) + i - 1);
  rot.resize(rot.size() + new_vertices.size());
  edges[e] = {original.u, new_vertices.front()};
  int last_edge = e;
  int prev = new_vertices.front();
  for (std::size_t i = 1; i <= new_vertices.size(); ++i) {
    int next = i < new_vertices.size() ? new_vertices[i] : original.v;
    int id = static_cast<int>(edges.size());
    edges.push_back({prev, next});
    path.push_back(id);
    rot[prev] = {make_end(last_edge, 1), make_end(id, 0)};
    last_edge = id;
    prev = next;
  }
  for (int& end : rot[original.v])
    if (end == make_end(e, 1)) end = make_end(last_edge, 1);

  Graph out(static_cast<int>(rot.size()));
  for (const auto& ed : edges) out.add_edge(ed.u, ed.v);
  for (int v = 0; v < out.vertex_count(); ++v) out.set_rotation_ends(v, rot[v]);
  out.root_hint = hint;
  g = std::move(out);
  return path;
}

struct Subdivision {
  Graph graph;
  // For every original edge, its replacement path from edge.u to edge.v.
  std::vector<std::vector<int>> edge_paths;
};

inline Subdivision subdivide_with_map(const Graph& g, int n) {
  if (n < 1) throw Error("subdivide_for_n: n must be at least 1");
  if (!is_connected(g)) throw Error("subdivide_for_n: graph is not connected");
  Subdivision result{g, {}};
  for (int e = 0; e < g.edge_count(); ++e) result.edge_paths.push_back({e});
  if (is_sufficiently_subdivided(g, n)) return result;

  auto segs = segments(g);
  std::map<std::pair<int, int>, int> between;
  for (const auto& s : segs)
    if (!s.closed()) ++between[{std::min(s.start, s.end), std::max(s.start, s.end)}];

  std::vector<int> target(segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    if (s.closed()) {
      target[i] = std::max(3, n + 1);
    } else {
      bool parallel = between[{std::min(s.start, s.end), std::max(s.start, s.end)}] > 1;
      target[i] = std::max({1, n - 1, parallel ? 2 : 1});
    }
    target[i] = std::max(target[i], static_cast<int>(s.edges.size()));
  }
  int vertices = g.vertex_count();
  for (std::size_t i = 0; i < segs.size(); ++i) vertices += target[i] - static_cast<int>(segs[i].edges.size());
  if (vertices < n) {
    if (segs.empty()) throw Error("subdivide_for_n: a single vertex cannot host " + std::to_string(n) + " robots");
    target[0] += n - vertices;
  }

  for (std::size_t i = 0; i < segs.size(); ++i) {
    int extra = target[i] - static_cast<int>(segs[i].edges.size());
    if (extra == 0) continue;
    int e = segs[i].edges.front();
    result.edge_paths[e] = subdivide_edge(result.graph, e, extra + 1);
  }
  return result;
}

inline Graph subdivide_for_n(const Graph& g, int n) { return subdivide_with_map(g, n).graph; }

}  // namespace tcg
