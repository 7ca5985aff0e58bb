#pragma once

// Rooted spanning trees, the walk-order labelling of vertices, directions,
// and the S-graph test.

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "graph.hpp"

namespace tcg {

struct TreeData {
  int root = 0;
  std::vector<bool> in_tree;        // per edge
  std::vector<int> tree_edges;      // ascending edge id
  std::vector<int> deleted_edges;   // ascending edge id
  std::vector<int> order;           // vertex -> label, order[root] == 0
  std::vector<int> by_order;        // label -> vertex
  std::vector<int> parent;          // vertex -> parent vertex, -1 at the root
  std::vector<int> parent_edge;     // vertex -> e^0, -1 at the root
  std::vector<int> depth;
  std::vector<int> tau, iota;       // per edge; order[tau] < order[iota]
  std::vector<int> wedge;           // per edge; tau for tree edges
  std::vector<std::vector<int>> dir_edges;  // vertex -> tree edge in direction i

  int tree_degree(int v) const { return direction_count(v) - (v == root ? 1 : 0); }
  int direction_count(int v) const { return static_cast<int>(dir_edges[v].size()); }
  bool is_deleted(int e) const { return !in_tree[e]; }
  bool less(int a, int b) const { return order[a] < order[b]; }

  int direction_of(int v, int e) const {
    const auto& d = dir_edges[v];
    auto it = std::find(d.begin(), d.end(), e);
    if (it == d.end()) throw Error("edge " + std::to_string(e) + " is not a tree edge at vertex " + std::to_string(v));
    return static_cast<int>(it - d.begin());
  }

  // e^i(u)
  int e_dir(int u, int i) const {
    if (i < 0 || i >= direction_count(u))
      throw Error("direction " + std::to_string(i) + " out of range at vertex " + std::to_string(u));
    if (u == root && i == 0) throw Error("the root has no direction 0");
    return dir_edges[u][i];
  }

  // v^i(u)
  int v_dir(int u, int i) const {
    int e = e_dir(u, i);
    return i == 0 ? tau[e] : iota[e];
  }
};

// Directions at the root are numbered from 1 so that e^0 is always the edge
// toward the root. dir_edges[root] therefore starts with a placeholder -1.
inline TreeData make_tree_data(const Graph& g, const std::vector<bool>& in_tree, int root) {
  const int nv = g.vertex_count();
  TreeData t;
  t.root = root;
  t.in_tree = in_tree;
  for (int e = 0; e < g.edge_count(); ++e) (in_tree[e] ? t.tree_edges : t.deleted_edges).push_back(e);
  if (static_cast<int>(t.tree_edges.size()) != nv - 1) throw Error("edge set is not a spanning tree (wrong size)");
  int root_tree_degree = 0;
  for (int e : g.rotation(root))
    if (in_tree[e]) ++root_tree_degree;
  if (nv > 1 && root_tree_degree != 1) throw Error("root " + std::to_string(root) + " is not a leaf of the tree");

  t.order.assign(nv, -1);
  t.parent.assign(nv, -1);
  t.parent_edge.assign(nv, -1);
  t.depth.assign(nv, 0);
  t.dir_edges.assign(nv, {});
  t.dir_edges[root].push_back(-1);

  int next = 0;
  // Explicit stack of (vertex, list of child ends, cursor).
  struct Frame {
    int v;
    std::vector<int> children;
    std::size_t cursor = 0;
  };
  auto children_of = [&](int v, int arrival_end) {
    const auto& rot = g.rotation_ends(v);
    std::vector<int> out;
    std::size_t start = 0;
    if (arrival_end >= 0) {
      auto it = std::find(rot.begin(), rot.end(), arrival_end);
      start = static_cast<std::size_t>(it - rot.begin()) + 1;
    }
    for (std::size_t k = 0; k < rot.size(); ++k) {
      int end = rot[(start + k) % rot.size()];
      int e = end_edge(end);
      if (!in_tree[e] || end == arrival_end) continue;
      out.push_back(end);
    }
    return out;
  };
  std::vector<Frame> stack;
  t.order[root] = next++;
  stack.push_back({root, children_of(root, -1)});
  for (int end : stack.back().children) t.dir_edges[root].push_back(end_edge(end));
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.cursor == f.children.size()) {
      stack.pop_back();
      continue;
    }
    int end = f.children[f.cursor++];
    int e = end_edge(end);
    int w = g.vertex_of_end(make_end(e, 1 - end_side(end)));
    if (t.order[w] != -1) throw Error("edge set is not a spanning tree (cycle)");
    t.order[w] = next++;
    t.parent[w] = f.v;
    t.parent_edge[w] = e;
    t.depth[w] = t.depth[f.v] + 1;
    int arrival = make_end(e, 1 - end_side(end));
    Frame child{w, children_of(w, arrival)};
    t.dir_edges[w].push_back(e);
    for (int c : child.children) t.dir_edges[w].push_back(end_edge(c));
    stack.push_back(std::move(child));
  }
  if (next != nv) throw Error("edge set is not a spanning tree (not spanning)");
  t.by_order.assign(nv, -1);
  for (int v = 0; v < nv; ++v) t.by_order[t.order[v]] = v;

  t.tau.resize(g.edge_count());
  t.iota.resize(g.edge_count());
  t.wedge.resize(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    int a = g.edge(e).u, b = g.edge(e).v;
    if (t.order[a] > t.order[b]) std::swap(a, b);
    t.tau[e] = a;
    t.iota[e] = b;
    while (t.depth[a] > t.depth[b]) a = t.parent[a];
    while (t.depth[b] > t.depth[a]) b = t.parent[b];
    while (a != b) {
      a = t.parent[a];
      b = t.parent[b];
    }
    t.wedge[e] = a;
  }
  return t;
}

// Kruskal over edges not touching an essential vertex first, then the rest,
// each group in ascending edge id.
inline std::vector<bool> default_tree_edges(const Graph& g) {
  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> ordered;
  for (int pass = 0; pass < 2; ++pass)
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      bool touches = is_essential(g, ed.u) || is_essential(g, ed.v);
      if (touches == (pass == 1)) ordered.push_back(e);
    }
  std::vector<bool> in_tree(g.edge_count(), false);
  for (int e : ordered) {
    int a = find(g.edge(e).u), b = find(g.edge(e).v);
    if (a == b) continue;
    parent[a] = b;
    in_tree[e] = true;
  }
  return in_tree;
}

inline TreeData choose_spanning_tree(const Graph& g, std::optional<int> root_hint = std::nullopt) {
  if (g.vertex_count() == 0) throw Error("empty graph has no spanning tree");
  if (!is_connected(g)) throw Error("graph is not connected");
  auto in_tree = default_tree_edges(g);
  if (!root_hint) root_hint = g.root_hint;
  std::vector<int> tdeg(g.vertex_count(), 0);
  for (int e = 0; e < g.edge_count(); ++e)
    if (in_tree[e]) {
      ++tdeg[g.edge(e).u];
      ++tdeg[g.edge(e).v];
    }
  int root = -1;
  if (root_hint) {
    if (*root_hint < 0 || *root_hint >= g.vertex_count()) throw Error("root hint out of range");
    if (g.vertex_count() > 1 && tdeg[*root_hint] != 1)
      throw Error("root hint " + std::to_string(*root_hint) + " is not a leaf of the spanning tree");
    root = *root_hint;
  } else if (g.vertex_count() == 1) {
    root = 0;
  } else {
    for (int v = 0; v < g.vertex_count() && root == -1; ++v)
      if (g.degree(v) == 1) root = v;
    for (int v = 0; v < g.vertex_count() && root == -1; ++v)
      if (tdeg[v] == 1) root = v;
  }
  if (root == -1) throw Error("no degree-1 vertex available for the root");
  return make_tree_data(g, in_tree, root);
}

struct DirectionTables {
  std::vector<std::vector<int>> e_table;  // (u, i) -> e^i(u); -1 where undefined
  std::vector<std::vector<int>> v_table;  // (u, i) -> v^i(u); -1 where undefined
};

inline DirectionTables direction_tables(const TreeData& t) {
  DirectionTables d;
  d.e_table.resize(t.dir_edges.size());
  d.v_table.resize(t.dir_edges.size());
  for (std::size_t u = 0; u < t.dir_edges.size(); ++u)
    for (int i = 0; i < t.direction_count(static_cast<int>(u)); ++i) {
      bool undefined = static_cast<int>(u) == t.root && i == 0;
      d.e_table[u].push_back(undefined ? -1 : t.e_dir(static_cast<int>(u), i));
      d.v_table[u].push_back(undefined ? -1 : t.v_dir(static_cast<int>(u), i));
    }
  return d;
}

inline bool is_essential_tree(const Graph& g, const TreeData& t) {
  for (int e : t.deleted_edges)
    if (g.degree(g.edge(e).u) != 2 || g.degree(g.edge(e).v) != 2) return false;
  return true;
}

// ---------------------------------------------------------------- S-graphs

// Edge sets of the 2-connected blocks (and bridges) of the subgraph induced by
// `keep`. Parallel edges and loops are handled by tracking edge ids.
inline std::vector<std::vector<int>> edge_blocks(const Graph& g, const std::vector<bool>& keep) {
  const int nv = g.vertex_count();
  std::vector<int> disc(nv, -1), low(nv, 0);
  std::vector<std::vector<int>> blocks;
  std::vector<int> edge_stack;
  std::vector<bool> edge_seen(g.edge_count(), false);
  int timer = 0;
  struct Frame {
    int v;
    int via;
    std::vector<int> ends;
    std::size_t cursor = 0;
  };
  for (int e = 0; e < g.edge_count(); ++e)
    if (g.edge(e).is_loop() && keep[g.edge(e).u]) {
      blocks.push_back({e});
      edge_seen[e] = true;
    }
  for (int s = 0; s < nv; ++s) {
    if (!keep[s] || disc[s] != -1) continue;
    std::vector<Frame> stack;
    disc[s] = low[s] = timer++;
    stack.push_back({s, -1, g.rotation_ends(s)});
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.cursor < f.ends.size()) {
        int e = end_edge(f.ends[f.cursor++]);
        if (e == f.via || edge_seen[e]) continue;
        int w = g.other_end(e, f.v);
        if (!keep[w]) continue;
        edge_seen[e] = true;
        edge_stack.push_back(e);
        if (disc[w] == -1) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, e, g.rotation_ends(w)});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      int v = f.v, via = f.via;
      stack.pop_back();
      if (stack.empty()) break;
      int u = stack.back().v;
      low[u] = std::min(low[u], low[v]);
      if (low[v] >= disc[u]) {
        std::vector<int> block;
        while (true) {
          int e = edge_stack.back();
          edge_stack.pop_back();
          block.push_back(e);
          if (e == via) break;
        }
        std::sort(block.begin(), block.end());
        blocks.push_back(std::move(block));
      }
    }
  }
  return blocks;
}

struct SGraphCheck {
  bool ok = false;
  std::string diagnostics;
  // For each essential vertex, the tree edge at v leading into the chosen
  // simple component (-1 where none qualifies).
  std::vector<int> simple_edge;
};

inline SGraphCheck is_s_graph(const Graph& g, const TreeData& t) {
  SGraphCheck out;
  out.simple_edge.assign(g.vertex_count(), -1);
  std::ostringstream diag;
  bool ok = true;
  int m = 0;
  for (int e : t.deleted_edges) {
    const Edge& ed = g.edge(e);
    if (!is_essential(g, ed.u) && !is_essential(g, ed.v)) {
      ok = false;
      diag << "deleted edge " << e << " has no essential endpoint; ";
    }
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!is_essential(g, v)) continue;
    ++m;
    int tdeg = t.tree_degree(v);
    if (tdeg < 4) {
      ok = false;
      diag << "essential vertex " << v << " has tree degree " << tdeg << " < 4; ";
    }
  }
  if (m == 0) {
    ok = false;
    diag << "no essential vertices; ";
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!is_essential(g, v)) continue;
    // components of G - {v}
    std::vector<int> comp(g.vertex_count(), -1);
    int ncomp = 0;
    for (int s = 0; s < g.vertex_count(); ++s) {
      if (s == v || comp[s] != -1) continue;
      std::vector<int> st{s};
      comp[s] = ncomp;
      while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        for (int e : g.rotation(x)) {
          int y = g.other_end(e, x);
          if (y != v && comp[y] == -1) {
            comp[y] = ncomp;
            st.push_back(y);
          }
        }
      }
      ++ncomp;
    }
    int best_edge = -1;
    int best_rank = 0;
    for (int c = 0; c < ncomp; ++c) {
      std::vector<bool> keep(g.vertex_count(), false);
      keep[v] = true;
      bool has_essential = false;
      for (int x = 0; x < g.vertex_count(); ++x)
        if (comp[x] == c) {
          keep[x] = true;
          has_essential = has_essential || is_essential(g, x);
        }
      bool simple = true;
      for (const auto& block : edge_blocks(g, keep)) {
        bool bridge = block.size() == 1 && !g.edge(block[0]).is_loop();
        if (bridge) continue;
        std::vector<int> verts;
        for (int e : block) {
          verts.push_back(g.edge(e).u);
          verts.push_back(g.edge(e).v);
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        int ess = 0;
        for (int x : verts) ess += is_essential(g, x) ? 1 : 0;
        if (ess > 1) simple = false;
      }
      if (!simple) continue;
      // tree edges at v into this component
      std::vector<int> into;
      for (int i = (v == t.root ? 1 : 0); i < t.direction_count(v); ++i) {
        int e = t.dir_edges[v][i];
        if (comp[g.other_end(e, v)] == c) into.push_back(e);
      }
      if (into.size() != 1) continue;
      int dir = t.direction_of(v, into[0]);
      if (dir == 0 && v != t.root) continue;
      int rank = (has_essential ? 1000000 : 0) + dir;
      if (best_edge == -1 || rank < best_rank) {
        best_edge = into[0];
        best_rank = rank;
      }
    }
    out.simple_edge[v] = best_edge;
    if (best_edge == -1) {
      ok = false;
      diag << "essential vertex " << v << " has no simple component in a nonzero direction; ";
    }
  }
  out.ok = ok;
  out.diagnostics = diag.str();
  if (!out.diagnostics.empty()) out.diagnostics.resize(out.diagnostics.size() - 2);
  return out;
}

// Moves the given tree edge at v to direction 1 by editing the rotation
// right after the edge toward the root.
inline void rotate_to_direction_one(Graph& g, const TreeData& t, int v, int edge) {
  if (v == t.root) throw Error("cannot reorder directions at the root");
  std::vector<int> rot = g.rotation_ends(v);
  int parent_end = -1, moved = -1;
  for (int end : rot) {
    if (end_edge(end) == t.parent_edge[v]) parent_end = end;
    if (end_edge(end) == edge) moved = end;
  }
  if (parent_end == -1 || moved == -1) throw Error("rotate_to_direction_one: edge not at vertex");
  rot.erase(std::find(rot.begin(), rot.end(), moved));
  auto it = std::find(rot.begin(), rot.end(), parent_end);
  rot.insert(it + 1, moved);
  g.set_rotation_ends(v, rot);
}

}  // namespace tcg
