#pragma once

// Vertex-disjoint cycle packing and the spanning tree adapted to a packing.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "gf2.hpp"
#include "graph.hpp"
#include "spanning_tree.hpp"

namespace tcg {

struct Cycle {
  std::vector<int> vertices;  // cyclic order
  std::vector<int> edges;     // edges[i] joins vertices[i] and vertices[i+1]
};

struct CyclePacking {
  int nu = 0;
  std::vector<Cycle> cycles;
  bool exact = true;  // false when the search budget ran out
  long long nodes = 0;
};

// Cycles that are minimal with respect to their vertex sets: loops, pairs of
// parallel edges, and chordless cycles of the underlying simple graph. Every
// cycle's vertex set contains one of these, so packings may use them alone.
inline std::vector<Cycle> minimal_cycles(const Graph& g, long long& budget) {
  const int nv = g.vertex_count();
  std::vector<Cycle> out;
  std::map<std::pair<int, int>, std::vector<int>> link;
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (ed.is_loop()) {
      out.push_back({{ed.u}, {e}});
      continue;
    }
    link[{std::min(ed.u, ed.v), std::max(ed.u, ed.v)}].push_back(e);
  }
  std::vector<std::vector<int>> adj(nv);
  for (const auto& [key, ids] : link) {
    adj[key.first].push_back(key.second);
    adj[key.second].push_back(key.first);
    if (ids.size() >= 2) out.push_back({{key.first, key.second}, {ids[0], ids[1]}});
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  auto adjacent = [&](int a, int b) { return std::binary_search(adj[a].begin(), adj[a].end(), b); };
  auto edge_between = [&](int a, int b) { return link.at({std::min(a, b), std::max(a, b)}).front(); };

  // Induced paths from the minimum vertex s; a cycle is reported once, with
  // path[1] < path.back().
  std::vector<int> path;
  std::vector<bool> on_path(nv, false);
  auto extend = [&](auto&& self, int s) -> void {
    if (budget-- <= 0) return;
    int last = path.back();
    for (int w : adj[last]) {
      if (w <= s || on_path[w]) continue;
      bool chord = false;
      for (std::size_t i = 1; i + 1 < path.size(); ++i)
        if (adjacent(path[i], w)) {
          chord = true;
          break;
        }
      if (chord) continue;
      if (path.size() >= 2 && adjacent(w, s)) {
        if (path[1] < w) {
          Cycle c;
          c.vertices = path;
          c.vertices.push_back(w);
          for (std::size_t i = 0; i < c.vertices.size(); ++i)
            c.edges.push_back(edge_between(c.vertices[i], c.vertices[(i + 1) % c.vertices.size()]));
          out.push_back(std::move(c));
        }
        continue;
      }
      path.push_back(w);
      on_path[w] = true;
      self(self, s);
      on_path[w] = false;
      path.pop_back();
    }
  };
  for (int s = 0; s < nv; ++s) {
    path = {s};
    on_path[s] = true;
    extend(extend, s);
    on_path[s] = false;
  }
  return out;
}

inline CyclePacking max_vertex_disjoint_cycles(const Graph& g, long long budget = 5000000) {
  CyclePacking result;
  long long enum_budget = budget;
  auto cycles = minimal_cycles(g, enum_budget);
  bool exhausted = enum_budget < 0;
  const int nv = g.vertex_count();

  std::vector<gf2::BitVector> masks;
  for (const auto& c : cycles) {
    gf2::BitVector m(nv);
    for (int v : c.vertices) m.set(v);
    masks.push_back(std::move(m));
  }
  // cycles indexed by their lowest vertex
  std::vector<std::vector<int>> by_low(nv);
  for (std::size_t i = 0; i < cycles.size(); ++i) by_low[masks[i].find_first()].push_back(static_cast<int>(i));

  std::unordered_map<gf2::BitVector, int, gf2::BitVectorHash> memo;
  long long search_budget = budget;
  // Largest packing inside `avail`: branch on the lowest vertex that still
  // carries a cycle.
  auto solve = [&](auto&& self, const gf2::BitVector& avail) -> int {
    if (--search_budget < 0) return 0;
    if (auto it = memo.find(avail); it != memo.end()) return it->second;
    int best = 0;
    std::size_t v = avail.find_first();
    while (v < static_cast<std::size_t>(nv)) {
      bool usable = false;
      for (int ci : by_low[v])
        if ((masks[ci] & avail) == masks[ci]) usable = true;
      if (usable) break;
      v = avail.find_next(v);
    }
    if (v < static_cast<std::size_t>(nv)) {
      gf2::BitVector without = avail;
      without.reset(v);
      best = self(self, without);
      for (int ci : by_low[v]) {
        if ((masks[ci] & avail) != masks[ci]) continue;
        gf2::BitVector rest = avail;
        for (std::size_t x = masks[ci].find_first(); x < static_cast<std::size_t>(nv); x = masks[ci].find_next(x)) rest.reset(x);
        best = std::max(best, 1 + self(self, rest));
      }
    }
    memo.emplace(avail, best);
    return best;
  };
  gf2::BitVector all(nv);
  for (int v = 0; v < nv; ++v) all.set(v);
  int nu = solve(solve, all);
  if (search_budget < 0) exhausted = true;

  // Recover a witness by replaying the memo.
  std::vector<Cycle> witness;
  if (!exhausted) {
    gf2::BitVector avail = all;
    int remaining = nu;
    while (remaining > 0) {
      std::size_t v = avail.find_first();
      bool advanced = false;
      for (; v < static_cast<std::size_t>(nv) && !advanced; v = avail.find_next(v)) {
        for (int ci : by_low[v]) {
          if ((masks[ci] & avail) != masks[ci]) continue;
          gf2::BitVector rest = avail;
          for (std::size_t x = masks[ci].find_first(); x < static_cast<std::size_t>(nv); x = masks[ci].find_next(x)) rest.reset(x);
          if (1 + solve(solve, rest) == remaining) {
            witness.push_back(cycles[ci]);
            avail = rest;
            --remaining;
            advanced = true;
            break;
          }
        }
      }
      if (!advanced) throw Error("cycle packing witness reconstruction failed");
    }
  } else {
    // Greedy fallback: shortest cycles first.
    std::vector<int> idx(cycles.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return cycles[a].vertices.size() < cycles[b].vertices.size(); });
    gf2::BitVector used(nv);
    for (int ci : idx)
      if ((masks[ci] & used).none()) {
        used |= masks[ci];
        witness.push_back(cycles[ci]);
      }
    nu = static_cast<int>(witness.size());
  }
  result.nu = nu;
  result.cycles = std::move(witness);
  result.exact = !exhausted;
  result.nodes = budget - search_budget;
  return result;
}

// ---------------------------------------------------------------- adapted tree

struct VertexDisjointTree {
  Graph graph;
  TreeData tree;
  std::vector<Cycle> cycles;              // in the returned graph
  std::vector<int> cycle_deleted_edges;   // one per cycle, same order
};

namespace detail {

// Replaces edge `e` of cycle `c` (joining c.vertices[i] and c.vertices[i+1])
// by the subdivided path.
inline void splice_cycle(Cycle& c, const Graph& g, int e, const std::vector<int>& path) {
  auto it = std::find(c.edges.begin(), c.edges.end(), e);
  if (it == c.edges.end()) return;
  std::size_t i = static_cast<std::size_t>(it - c.edges.begin());
  int a = c.vertices[i];
  std::vector<int> seq = path;
  // path runs from edge.u (the original u) to edge.v
  int start = g.edge(path.front()).u;
  if (start != a) std::reverse(seq.begin(), seq.end());
  std::vector<int> verts;
  int cur = a;
  for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
    cur = g.other_end(seq[k], cur);
    verts.push_back(cur);
  }
  c.edges.erase(c.edges.begin() + static_cast<long>(i));
  c.edges.insert(c.edges.begin() + static_cast<long>(i), seq.begin(), seq.end());
  c.vertices.insert(c.vertices.begin() + static_cast<long>(i) + 1, verts.begin(), verts.end());
}

inline std::vector<int> subdivide_tracked(Graph& g, std::vector<Cycle>& cycles, int e, int pieces) {
  auto path = subdivide_edge(g, e, pieces);
  for (auto& c : cycles) splice_cycle(c, g, e, path);
  return path;
}

}  // namespace detail

// Maps cycles of g through a subdivision.
inline std::vector<Cycle> map_cycles(const Subdivision& sub, const Graph& original, const std::vector<Cycle>& cycles) {
  std::vector<Cycle> out;
  for (const auto& c : cycles) {
    Cycle m;
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
      int a = c.vertices[i];
      int e = c.edges[i];
      std::vector<int> seq = sub.edge_paths[e];
      if (original.edge(e).u != a) std::reverse(seq.begin(), seq.end());
      int cur = a;
      for (int piece : seq) {
        m.vertices.push_back(cur);
        m.edges.push_back(piece);
        cur = sub.graph.other_end(piece, cur);
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

inline VertexDisjointTree build_vertex_disjoint_tree(const Graph& input, const std::vector<Cycle>& input_cycles) {
  if (!is_connected(input)) throw Error("build_vertex_disjoint_tree: graph is not connected");
  if (!is_simple(input)) throw Error("build_vertex_disjoint_tree: graph must be simple (subdivide first)");
  if (input_cycles.empty()) throw Error("build_vertex_disjoint_tree: no cycles supplied");
  Graph g = input;
  std::vector<Cycle> cycles = input_cycles;
  {
    std::vector<int> owner(g.vertex_count(), -1);
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      const auto& c = cycles[i];
      if (c.vertices.size() < 3 || c.vertices.size() != c.edges.size())
        throw Error("cycle " + std::to_string(i) + " is malformed");
      for (std::size_t k = 0; k < c.edges.size(); ++k) {
        const Edge& ed = g.edge(c.edges[k]);
        int a = c.vertices[k], b = c.vertices[(k + 1) % c.vertices.size()];
        if (!((ed.u == a && ed.v == b) || (ed.u == b && ed.v == a)))
          throw Error("cycle " + std::to_string(i) + " lists edge " + std::to_string(c.edges[k]) + " out of sequence");
      }
      for (int v : c.vertices) {
        if (owner[v] != -1) throw Error("cycles " + std::to_string(owner[v]) + " and " + std::to_string(i) + " share vertex " + std::to_string(v));
        owner[v] = static_cast<int>(i);
      }
    }
  }

  // Spanning forest F of the graph with each cycle contracted.
  auto cycle_of = [&](const Graph& gg) {
    std::vector<int> owner(gg.vertex_count(), -1);
    for (std::size_t i = 0; i < cycles.size(); ++i)
      for (int v : cycles[i].vertices) owner[v] = static_cast<int>(i);
    return owner;
  };
  std::vector<bool> on_cycle_edge(g.edge_count(), false);
  for (const auto& c : cycles)
    for (int e : c.edges) on_cycle_edge[e] = true;
  std::vector<int> owner = cycle_of(g);
  auto node = [&](int v) { return owner[v] >= 0 ? owner[v] : static_cast<int>(cycles.size()) + v; };
  std::vector<int> dsu(cycles.size() + g.vertex_count());
  std::iota(dsu.begin(), dsu.end(), 0);
  auto find = [&](int x) {
    while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
    return x;
  };
  std::vector<bool> forest(g.edge_count(), false);
  std::vector<int> extra;  // non-cycle, non-forest edges
  for (int e = 0; e < g.edge_count(); ++e) {
    if (on_cycle_edge[e]) continue;
    int a = find(node(g.edge(e).u)), b = find(node(g.edge(e).v));
    if (a == b) {
      extra.push_back(e);
      continue;
    }
    dsu[a] = b;
    forest[e] = true;
  }

  // Each extra edge becomes three pieces with the middle one deleted.
  std::vector<int> extra_deleted;
  std::vector<int> forest_edges;
  for (int e = 0; e < g.edge_count(); ++e)
    if (forest[e]) forest_edges.push_back(e);
  for (int e : extra) {
    auto path = detail::subdivide_tracked(g, cycles, e, 3);
    forest_edges.push_back(path[0]);
    forest_edges.push_back(path[2]);
    extra_deleted.push_back(path[1]);
  }
  owner = cycle_of(g);

  // Root: lowest off-cycle vertex of degree 1, otherwise a new degree-2
  // vertex on the first cycle.
  int root = -1;
  for (int v = 0; v < g.vertex_count() && root == -1; ++v)
    if (owner[v] == -1 && g.degree(v) == 1) root = v;
  int root_cycle = -1;
  std::vector<int> cycle_deleted(cycles.size(), -1);
  if (root == -1) {
    root_cycle = 0;
    Cycle& c = cycles[0];
    int e = *std::min_element(c.edges.begin(), c.edges.end());
    auto path = detail::subdivide_tracked(g, cycles, e, 3);
    int mid = path[1];
    // cycle now holds p and q as the ends of the middle piece
    root = g.edge(mid).u;
    cycle_deleted[0] = mid;
    owner = cycle_of(g);
  }

  // Entry vertex of every cycle: the cycle vertex met first from the root
  // along forest edges. Walk the forest (cycles contracted) from the root.
  std::vector<int> entry(cycles.size(), -1);
  std::vector<int> entry_edge(cycles.size(), -1);
  {
    std::vector<std::vector<int>> inc(g.vertex_count());
    for (int e : forest_edges) {
      inc[g.edge(e).u].push_back(e);
      inc[g.edge(e).v].push_back(e);
    }
    std::vector<bool> seen_vertex(g.vertex_count(), false);
    std::vector<bool> seen_cycle(cycles.size(), false);
    std::vector<int> queue;
    auto visit = [&](int v, int via) {
      if (owner[v] >= 0) {
        int ci = owner[v];
        if (seen_cycle[ci]) return;
        seen_cycle[ci] = true;
        entry[ci] = v;
        entry_edge[ci] = via;
        for (int x : cycles[ci].vertices) {
          seen_vertex[x] = true;
          queue.push_back(x);
        }
      } else {
        if (seen_vertex[v]) return;
        seen_vertex[v] = true;
        queue.push_back(v);
      }
    };
    visit(root, -1);
    for (std::size_t h = 0; h < queue.size(); ++h) {
      int v = queue[h];
      for (int e : inc[v]) visit(g.other_end(e, v), e);
    }
    for (std::size_t i = 0; i < cycles.size(); ++i)
      if (entry[i] == -1) throw Error("cycle " + std::to_string(i) + " is not reachable from the root");
  }

  // Pick the deleted edge of every other cycle next to its entry vertex.
  std::vector<int> near_vertex(cycles.size(), -1);
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    if (static_cast<int>(i) == root_cycle) continue;
    Cycle& c = cycles[i];
    int a = entry[i];
    auto pos = static_cast<std::size_t>(std::find(c.vertices.begin(), c.vertices.end(), a) - c.vertices.begin());
    std::size_t len = c.vertices.size();
    int nb_next = c.vertices[(pos + 1) % len], nb_prev = c.vertices[(pos + len - 1) % len];
    bool forward = nb_next < nb_prev;
    int b = forward ? nb_next : nb_prev;
    int b2 = forward ? c.vertices[(pos + 2) % len] : c.vertices[(pos + len - 2) % len];
    int ab = forward ? c.edges[pos] : c.edges[(pos + len - 1) % len];
    int bb2 = forward ? c.edges[(pos + 1) % len] : c.edges[(pos + len - 2) % len];
    if (g.degree(b) != 2 || g.degree(b2) != 2 || b2 == a) {
      auto path = detail::subdivide_tracked(g, cycles, ab, 3);
      cycle_deleted[i] = path[1];
      near_vertex[i] = g.edge(path[0]).u == a ? g.edge(path[0]).v : g.edge(path[0]).u;
      if (g.edge(path[2]).u == a || g.edge(path[2]).v == a)
        near_vertex[i] = g.other_end(path[2], a);
    } else {
      cycle_deleted[i] = bb2;
      near_vertex[i] = b;
    }
  }
  owner = cycle_of(g);

  std::vector<bool> in_tree(g.edge_count(), true);
  for (int e : extra_deleted) in_tree[e] = false;
  for (int e : cycle_deleted) in_tree[e] = false;

  // Rotations: at each cycle vertex other than the entry, the tree edge
  // continuing along the cycle comes right after the edge toward the root;
  // at the entry, the edge toward the deleted edge's near end goes first and
  // the other cycle edge second.
  TreeData t = make_tree_data(g, in_tree, root);
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const Cycle& c = cycles[i];
    std::size_t len = c.vertices.size();
    for (std::size_t k = 0; k < len; ++k) {
      int v = c.vertices[k];
      if (v == root) continue;
      std::vector<int> cyc_edges{c.edges[k], c.edges[(k + len - 1) % len]};
      std::vector<int> tree_cycle_children;
      for (int e : cyc_edges)
        if (in_tree[e] && e != t.parent_edge[v]) tree_cycle_children.push_back(e);
      if (tree_cycle_children.empty()) continue;
      if (static_cast<int>(i) != root_cycle && v == entry[i] && tree_cycle_children.size() == 2) {
        int first = -1;
        for (int e : tree_cycle_children)
          if (g.other_end(e, v) == near_vertex[i]) first = e;
        if (first == -1) throw Error("cycle " + std::to_string(i) + ": entry vertex lost its neighbour on the deleted edge");
        int second = tree_cycle_children[0] == first ? tree_cycle_children[1] : tree_cycle_children[0];
        rotate_to_direction_one(g, t, v, second);
        rotate_to_direction_one(g, t, v, first);
      } else {
        for (auto it = tree_cycle_children.rbegin(); it != tree_cycle_children.rend(); ++it) rotate_to_direction_one(g, t, v, *it);
      }
    }
  }
  t = make_tree_data(g, in_tree, root);

  // Verification of the promised properties.
  for (int e : t.deleted_edges) {
    const Edge& ed = g.edge(e);
    if (g.degree(ed.u) != 2 || g.degree(ed.v) != 2)
      throw Error("deleted edge " + std::to_string(e) + " has an endpoint of degree != 2");
  }
  std::vector<std::pair<int, int>> intervals;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    int count = 0;
    for (int e : cycles[i].edges)
      if (!t.in_tree[e]) ++count;
    if (count != 1) throw Error("cycle " + std::to_string(i) + " does not contain exactly one deleted edge");
    int e = cycle_deleted[i];
    intervals.emplace_back(t.order[t.wedge[e]], t.order[t.iota[e]]);
  }
  for (std::size_t i = 0; i < intervals.size(); ++i)
    for (std::size_t j = i + 1; j < intervals.size(); ++j)
      if (!(intervals[i].second < intervals[j].first || intervals[j].second < intervals[i].first))
        throw Error("cycles " + std::to_string(i) + " and " + std::to_string(j) + " have overlapping intervals");
  return {std::move(g), std::move(t), std::move(cycles), std::move(cycle_deleted)};
}

}  // namespace tcg
