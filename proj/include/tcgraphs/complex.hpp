#pragma once

// Cells of the discretized configuration spaces UD^n and D^n, their boundary
// operator and cellular homology.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gf2.hpp"
#include "graph.hpp"

namespace tcg {

// A cell is a list of items: a vertex v is item v, an edge e is item
// vertex_count + e. Unordered cells keep their items sorted; ordered cells
// keep robot positions.
using Items = std::vector<int>;

struct ItemsHash {
  std::size_t operator()(const Items& items) const {
    std::size_t h = items.size();
    for (int x : items) h = h * 0x100000001b3ULL ^ static_cast<std::size_t>(x + 0x9e3779b9);
    return h;
  }
};

struct Chain {
  int degree = 0;
  std::vector<int> support;  // sorted cell indices
  friend bool operator==(const Chain&, const Chain&) = default;
};

// Sorts and cancels pairs.
inline void normalize_mod2(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  std::vector<int> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(v[i]);
    i = j;
  }
  v.swap(out);
}

inline Chain chain_sum(const Chain& a, const Chain& b) {
  Chain out{a.degree, {}};
  std::set_symmetric_difference(a.support.begin(), a.support.end(), b.support.begin(), b.support.end(),
                                std::back_inserter(out.support));
  return out;
}

class Complex {
 public:
  Complex(Graph g, int n, bool ordered) : graph_(std::move(g)), n_(n), ordered_(ordered) {
    cells_.resize(static_cast<std::size_t>(n) + 1);
    index_.resize(static_cast<std::size_t>(n) + 1);
  }

  const Graph& graph() const { return graph_; }
  int n() const { return n_; }
  bool ordered() const { return ordered_; }
  int top_dimension() const { return n_; }
  int vertex_count() const { return graph_.vertex_count(); }

  bool is_vertex(int item) const { return item < graph_.vertex_count(); }
  int edge_of(int item) const { return item - graph_.vertex_count(); }
  int edge_item(int e) const { return graph_.vertex_count() + e; }

  std::size_t count(int dim) const {
    return dim < 0 || dim > n_ ? 0 : cells_[static_cast<std::size_t>(dim)].size();
  }
  std::size_t total_cells() const {
    std::size_t t = 0;
    for (const auto& c : cells_) t += c.size();
    return t;
  }
  const Items& cell(int dim, int idx) const { return cells_[static_cast<std::size_t>(dim)][static_cast<std::size_t>(idx)]; }
  const std::vector<Items>& cells(int dim) const { return cells_[static_cast<std::size_t>(dim)]; }

  int dimension_of(const Items& items) const {
    int d = 0;
    for (int x : items) d += is_vertex(x) ? 0 : 1;
    return d;
  }

  // Index of the cell within its dimension, or -1.
  int find(const Items& items) const {
    int d = dimension_of(items);
    if (d > n_ || static_cast<int>(items.size()) != n_) return -1;
    const auto& idx = index_[static_cast<std::size_t>(d)];
    auto it = idx.find(items);
    return it == idx.end() ? -1 : it->second;
  }

  // Unordered lookup that sorts first.
  int find_sorted(Items items) const {
    if (!ordered_) std::sort(items.begin(), items.end());
    return find(items);
  }

  void add_cell(Items items) {
    int d = dimension_of(items);
    auto& list = cells_[static_cast<std::size_t>(d)];
    index_[static_cast<std::size_t>(d)].emplace(items, static_cast<int>(list.size()));
    list.push_back(std::move(items));
  }

  // Vertices covered by the closure of the cell.
  std::vector<int> occupied(const Items& items) const {
    std::vector<int> out;
    for (int x : items) {
      if (is_vertex(x)) {
        out.push_back(x);
      } else {
        const Edge& ed = graph_.edge(edge_of(x));
        out.push_back(ed.u);
        out.push_back(ed.v);
      }
    }
    return out;
  }

  std::string describe(const Items& items) const {
    std::string s = "{";
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) s += ", ";
      if (is_vertex(items[i])) {
        s += "v" + std::to_string(items[i]);
      } else {
        const Edge& ed = graph_.edge(edge_of(items[i]));
        s += "e" + std::to_string(edge_of(items[i])) + "(" + std::to_string(ed.u) + "-" + std::to_string(ed.v) + ")";
      }
    }
    return s + "}";
  }

 private:
  Graph graph_;
  int n_;
  bool ordered_;
  std::vector<std::vector<Items>> cells_;
  std::vector<std::unordered_map<Items, int, ItemsHash>> index_;
};

namespace detail {

inline std::vector<gf2::BitVector> conflict_table(const Graph& g) {
  const int nv = g.vertex_count();
  const int items = nv + g.edge_count();
  std::vector<gf2::BitVector> conflict(static_cast<std::size_t>(items), gf2::BitVector(static_cast<std::size_t>(items)));
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    int ie = nv + e;
    for (int end : {ed.u, ed.v}) {
      conflict[ie].set(end);
      conflict[end].set(ie);
      for (int f : g.rotation(end)) {
        conflict[ie].set(nv + f);
        conflict[nv + f].set(ie);
      }
    }
  }
  for (int i = 0; i < items; ++i) conflict[i].set(i);
  return conflict;
}

inline void check_subdivision(const Graph& g, int n) {
  if (!is_sufficiently_subdivided(g, n))
    throw Error("graph is not sufficiently subdivided for n = " + std::to_string(n) + "; run subdivide_for_n first");
}

}  // namespace detail

struct EnumerateOptions {
  bool check_subdivision = true;
};

inline Complex enumerate_unordered(const Graph& g, int n, EnumerateOptions opts = {}) {
  if (n < 1) throw Error("n must be at least 1");
  if (opts.check_subdivision) detail::check_subdivision(g, n);
  Complex x(g, n, false);
  auto conflict = detail::conflict_table(g);
  const int items = g.vertex_count() + g.edge_count();
  Items current;
  gf2::BitVector blocked(static_cast<std::size_t>(items));
  auto walk = [&](auto&& self, int from, const gf2::BitVector& taken) -> void {
    if (static_cast<int>(current.size()) == n) {
      x.add_cell(current);
      return;
    }
    int need = n - static_cast<int>(current.size());
    for (int i = from; i + need <= items; ++i) {
      if (taken.test(static_cast<std::size_t>(i))) continue;
      current.push_back(i);
      gf2::BitVector next = taken;
      next |= conflict[i];
      self(self, i + 1, next);
      current.pop_back();
    }
  };
  walk(walk, 0, blocked);
  return x;
}

inline Complex enumerate_ordered(const Graph& g, int n, EnumerateOptions opts = {}) {
  Complex base = enumerate_unordered(g, n, opts);
  Complex x(g, n, true);
  for (int d = 0; d <= n; ++d) {
    std::vector<Items> all;
    for (const auto& c : base.cells(d)) {
      Items p = c;
      do all.push_back(p);
      while (std::next_permutation(p.begin(), p.end()));
    }
    std::sort(all.begin(), all.end());
    for (auto& c : all) x.add_cell(std::move(c));
  }
  return x;
}

// Faces of a cell: every edge replaced by each of its endpoints. Returned as
// indices into dimension dim-1, mod 2.
inline std::vector<int> boundary_indices(const Complex& x, int dim, int idx) {
  if (dim < 1) throw Error("boundary of a 0-cell is undefined");
  const Items& c = x.cell(dim, idx);
  std::vector<int> out;
  for (std::size_t pos = 0; pos < c.size(); ++pos) {
    if (x.is_vertex(c[pos])) continue;
    const Edge& ed = x.graph().edge(x.edge_of(c[pos]));
    for (int end : {ed.u, ed.v}) {
      Items face = c;
      face[pos] = end;
      int f = x.find_sorted(face);
      if (f < 0) throw Error("face " + x.describe(face) + " of " + x.describe(c) + " is missing from the complex");
      out.push_back(f);
    }
  }
  normalize_mod2(out);
  return out;
}

inline Chain boundary(const Complex& x, const Chain& c) {
  Chain out{c.degree - 1, {}};
  for (int idx : c.support) {
    auto f = boundary_indices(x, c.degree, idx);
    out.support.insert(out.support.end(), f.begin(), f.end());
  }
  normalize_mod2(out.support);
  return out;
}

inline Chain boundary(const Complex& x, const Items& cell) {
  int d = x.dimension_of(cell);
  int idx = x.find(cell);
  if (idx < 0) throw Error("cell " + x.describe(cell) + " is not in the complex");
  return {d - 1, boundary_indices(x, d, idx)};
}

inline gf2::SparseColumns boundary_matrix(const Complex& x, int dim) {
  gf2::SparseColumns m;
  m.rows = x.count(dim - 1);
  for (int i = 0; i < static_cast<int>(x.count(dim)); ++i) {
    auto f = boundary_indices(x, dim, i);
    m.cols.emplace_back(f.begin(), f.end());
  }
  return m;
}

// Betti numbers over Z/2, one per dimension 0..n.
inline std::vector<int> cellular_homology(const Complex& x) {
  const int n = x.n();
  std::vector<std::size_t> rank(static_cast<std::size_t>(n) + 2, 0);
  for (int d = 1; d <= n; ++d) rank[d] = gf2::sparse_rank(boundary_matrix(x, d));
  std::vector<int> betti;
  for (int d = 0; d <= n; ++d)
    betti.push_back(static_cast<int>(x.count(d) - rank[d] - rank[d + 1]));
  return betti;
}

inline bool is_connected(const Complex& x) {
  if (x.count(0) == 0) return false;
  std::size_t r = x.n() >= 1 ? gf2::sparse_rank(boundary_matrix(x, 1)) : 0;
  return x.count(0) - r == 1;
}

inline long long euler_characteristic(const Complex& x) {
  long long chi = 0;
  for (int d = 0; d <= x.n(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(x.count(d));
  return chi;
}

}  // namespace tcg
