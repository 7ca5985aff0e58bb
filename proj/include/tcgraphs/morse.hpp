#pragma once

// The discrete gradient field on UD^n built from a rooted spanning tree, the
// Morse complex it induces, and the reductions r and r_I.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "gf2.hpp"
#include "graph.hpp"
#include "spanning_tree.hpp"

namespace tcg {

enum class CellType { Critical, Redundant, Collapsible };

inline const char* to_string(CellType t) {
  switch (t) {
    case CellType::Critical: return "critical";
    case CellType::Redundant: return "redundant";
    case CellType::Collapsible: return "collapsible";
  }
  return "?";
}

inline bool occupies(const Complex& x, const Items& c, int vertex) {
  for (int item : c) {
    if (x.is_vertex(item)) {
      if (item == vertex) return true;
    } else {
      const Edge& ed = x.graph().edge(x.edge_of(item));
      if (ed.u == vertex || ed.v == vertex) return true;
    }
  }
  return false;
}

inline bool is_blocked(const Complex& x, const TreeData& t, const Items& c, int v) {
  if (std::find(c.begin(), c.end(), v) == c.end() || !x.is_vertex(v))
    throw Error("vertex " + std::to_string(v) + " is not a member of " + x.describe(c));
  if (v == t.root) return true;
  return occupies(x, c, t.parent[v]);
}

inline bool is_order_disrespecting(const Complex& x, const TreeData& t, const Items& c, int e) {
  if (std::find(c.begin(), c.end(), x.edge_item(e)) == c.end())
    throw Error("edge " + std::to_string(e) + " is not a member of " + x.describe(c));
  if (t.is_deleted(e)) return true;
  for (int item : c) {
    if (!x.is_vertex(item) || item == t.root) continue;
    if (t.parent[item] == t.tau[e] && t.less(item, t.iota[e])) return true;
  }
  return false;
}

// Lowest-labelled unblocked vertex, or -1.
inline int minimal_unblocked_vertex(const Complex& x, const TreeData& t, const Items& c) {
  int best = -1;
  for (int item : c) {
    if (!x.is_vertex(item) || is_blocked(x, t, c, item)) continue;
    if (best == -1 || t.less(item, best)) best = item;
  }
  return best;
}

// Classification read off the cell itself: critical when all vertices are
// blocked and all edges order-disrespecting; redundant when some unblocked
// vertex lies below every order-respecting edge's iota; collapsible when some
// order-respecting edge has only blocked vertices below its iota.
inline CellType classify_by_theorem(const Complex& x, const TreeData& t, const Items& c) {
  std::vector<int> unblocked, respecting;
  std::vector<int> vertices;
  bool all_blocked = true, all_disrespecting = true;
  for (int item : c) {
    if (x.is_vertex(item)) {
      vertices.push_back(item);
      if (!is_blocked(x, t, c, item)) {
        unblocked.push_back(item);
        all_blocked = false;
      }
    } else if (!is_order_disrespecting(x, t, c, x.edge_of(item))) {
      respecting.push_back(x.edge_of(item));
      all_disrespecting = false;
    }
  }
  bool critical = all_blocked && all_disrespecting;
  bool redundant = false;
  for (int v : unblocked) {
    bool ok = true;
    for (int e : respecting)
      if (!t.less(v, t.iota[e])) ok = false;
    if (ok) redundant = true;
  }
  bool collapsible = false;
  for (int e : respecting) {
    bool ok = true;
    for (int v : unblocked)
      if (t.less(v, t.iota[e])) ok = false;
    if (ok) collapsible = true;
  }
  int hits = (critical ? 1 : 0) + (redundant ? 1 : 0) + (collapsible ? 1 : 0);
  if (hits != 1) throw Error("cell " + x.describe(c) + " matches " + std::to_string(hits) + " classification clauses");
  return critical ? CellType::Critical : redundant ? CellType::Redundant : CellType::Collapsible;
}

struct GradientField {
  std::vector<std::vector<CellType>> labels;  // [dim][cell]
  std::vector<std::vector<int>> up;           // W: [dim][cell] -> cell in dim+1, or -1
  std::vector<std::vector<int>> down;         // [dim][cell] -> its W-preimage in dim-1, or -1

  std::size_t count(int dim, CellType type) const {
    return static_cast<std::size_t>(std::count(labels[dim].begin(), labels[dim].end(), type));
  }
};

inline void check_same_graph(const Complex& x, const TreeData& t) {
  if (x.ordered()) throw Error("the gradient field is defined on the unordered complex only");
  if (static_cast<int>(t.order.size()) != x.graph().vertex_count() ||
      static_cast<int>(t.in_tree.size()) != x.graph().edge_count())
    throw Error("spanning tree does not belong to the complex's graph");
}

inline GradientField build_gradient(const Complex& x, const TreeData& t) {
  check_same_graph(x, t);
  const int n = x.n();
  GradientField w;
  w.labels.resize(n + 1);
  w.up.resize(n + 1);
  w.down.resize(n + 1);
  for (int d = 0; d <= n; ++d) {
    w.up[d].assign(x.count(d), -1);
    w.down[d].assign(x.count(d), -1);
    w.labels[d].assign(x.count(d), CellType::Critical);
  }
  for (int d = 0; d <= n; ++d) {
    for (int i = 0; i < static_cast<int>(x.count(d)); ++i) {
      if (w.down[d][i] != -1) {
        w.labels[d][i] = CellType::Collapsible;
        continue;
      }
      const Items& c = x.cell(d, i);
      int v = minimal_unblocked_vertex(x, t, c);
      if (v == -1) {
        w.labels[d][i] = CellType::Critical;
        continue;
      }
      Items target = c;
      *std::find(target.begin(), target.end(), v) = x.edge_item(t.parent_edge[v]);
      int j = x.find_sorted(target);
      if (j < 0 || d + 1 > n) throw Error("gradient target of " + x.describe(c) + " is missing");
      if (w.down[d + 1][j] != -1) throw Error("gradient target of " + x.describe(c) + " is already matched");
      w.up[d][i] = j;
      w.down[d + 1][j] = i;
      w.labels[d][i] = CellType::Redundant;
    }
  }
  for (int d = 0; d <= n; ++d)
    for (int i = 0; i < static_cast<int>(x.count(d)); ++i) {
      CellType intrinsic = classify_by_theorem(x, t, x.cell(d, i));
      if (intrinsic != w.labels[d][i])
        throw Error("cell " + x.describe(x.cell(d, i)) + " is " + to_string(w.labels[d][i]) +
                    " by construction but " + to_string(intrinsic) + " by classification");
    }
  return w;
}

// ---------------------------------------------------------------- flows

// Stable value of f = 1 + dW + Wd on a chain.
inline Chain f_infinity(const Complex& x, const GradientField& w, const Chain& c) {
  const int p = c.degree;
  Chain cur = c;
  std::size_t cap = x.count(p) + 1;
  for (std::size_t iter = 0; iter <= cap; ++iter) {
    std::vector<int> add;
    // dW
    if (p + 1 <= x.n())
      for (int s : cur.support) {
        int up = w.up[p][s];
        if (up < 0) continue;
        auto f = boundary_indices(x, p + 1, up);
        add.insert(add.end(), f.begin(), f.end());
      }
    // Wd
    if (p >= 1) {
      Chain bd = boundary(x, cur);
      for (int s : bd.support) {
        int up = w.up[p - 1][s];
        if (up >= 0) add.push_back(up);
      }
    }
    normalize_mod2(add);
    if (add.empty()) return cur;
    Chain next{p, {}};
    std::set_symmetric_difference(cur.support.begin(), cur.support.end(), add.begin(), add.end(),
                                  std::back_inserter(next.support));
    if (next.support == cur.support) return cur;
    cur = std::move(next);
  }
  throw Error("f_infinity did not stabilise; the gradient field is broken");
}

// Stable value of F = 1 + dW on a chain.
inline Chain F_infinity(const Complex& x, const GradientField& w, const Chain& c) {
  const int p = c.degree;
  Chain cur = c;
  std::size_t cap = x.count(p) + 1;
  for (std::size_t iter = 0; iter <= cap; ++iter) {
    std::vector<int> add;
    if (p + 1 <= x.n())
      for (int s : cur.support) {
        int up = w.up[p][s];
        if (up < 0) continue;
        auto f = boundary_indices(x, p + 1, up);
        add.insert(add.end(), f.begin(), f.end());
      }
    normalize_mod2(add);
    if (add.empty()) return cur;
    Chain next{p, {}};
    std::set_symmetric_difference(cur.support.begin(), cur.support.end(), add.begin(), add.end(),
                                  std::back_inserter(next.support));
    cur = std::move(next);
  }
  throw Error("F_infinity did not stabilise; the gradient field is broken");
}

// pi F^infinity, returned as the critical cells (indices into the complex)
// with odd coefficient. Collapsible cells are fixed by F and never feed back,
// so they are dropped as they appear.
inline std::vector<int> project_F_infinity(const Complex& x, const GradientField& w, const Chain& c) {
  const int p = c.degree;
  std::vector<int> critical, redundant;
  for (int s : c.support) {
    if (w.labels[p][s] == CellType::Critical) critical.push_back(s);
    if (w.labels[p][s] == CellType::Redundant) redundant.push_back(s);
  }
  std::size_t cap = x.count(p) + 1;
  for (std::size_t iter = 0; !redundant.empty(); ++iter) {
    if (iter > cap) throw Error("F_infinity did not stabilise; the gradient field is broken");
    std::vector<int> add;
    for (int s : redundant) {
      auto f = boundary_indices(x, p + 1, w.up[p][s]);
      add.insert(add.end(), f.begin(), f.end());
    }
    // each redundant s appears in the boundary of W(s), cancelling itself
    add.insert(add.end(), redundant.begin(), redundant.end());
    normalize_mod2(add);
    redundant.clear();
    for (int s : add) {
      if (w.labels[p][s] == CellType::Critical) critical.push_back(s);
      if (w.labels[p][s] == CellType::Redundant) redundant.push_back(s);
    }
  }
  normalize_mod2(critical);
  return critical;
}

inline int worker_threads() {
  if (const char* env = std::getenv("TC_GRAPHS_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8U));
}

template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  int threads = std::min<int>(worker_threads(), static_cast<int>(std::max<std::size_t>(count, 1)));
  if (threads <= 1 || count < 8) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int k = 0; k < threads; ++k)
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------- Morse complex

class MorseComplexData {
 public:
  std::vector<std::vector<int>> critical;  // [dim] -> complex indices
  std::vector<std::vector<int>> position;  // [dim][cell] -> row in critical, or -1
  std::vector<gf2::BitMatrix> boundary;    // [dim]: rows critical dim-1, cols critical dim

  int top_critical_dimension() const {
    int top = -1;
    for (int d = 0; d < static_cast<int>(critical.size()); ++d)
      if (!critical[d].empty()) top = d;
    return top;
  }

  // f^infinity of a critical cell, cached.
  const Chain& f_infinity_of(const Complex& x, const GradientField& w, int dim, int cell) const {
    std::lock_guard<std::mutex> lock(*mutex_);
    auto key = std::make_pair(dim, cell);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Chain value = f_infinity(x, w, Chain{dim, {cell}});
    return cache_.emplace(key, std::move(value)).first->second;
  }

 private:
  mutable std::map<std::pair<int, int>, Chain> cache_;
  std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
};

inline MorseComplexData morse_boundary(const Complex& x, const GradientField& w) {
  MorseComplexData m;
  const int n = x.n();
  m.critical.resize(n + 1);
  m.position.resize(n + 1);
  m.boundary.resize(n + 1);
  for (int d = 0; d <= n; ++d) {
    m.position[d].assign(x.count(d), -1);
    for (int i = 0; i < static_cast<int>(x.count(d)); ++i)
      if (w.labels[d][i] == CellType::Critical) {
        m.position[d][i] = static_cast<int>(m.critical[d].size());
        m.critical[d].push_back(i);
      }
  }
  m.boundary[0] = gf2::BitMatrix(0, m.critical[0].size());
  for (int d = 1; d <= n; ++d) {
    std::vector<std::vector<int>> cols(m.critical[d].size());
    parallel_for(m.critical[d].size(), [&](std::size_t k) {
      Chain bd{d - 1, boundary_indices(x, d, m.critical[d][k])};
      cols[k] = project_F_infinity(x, w, bd);
    });
    gf2::BitMatrix b(m.critical[d - 1].size(), m.critical[d].size());
    for (std::size_t k = 0; k < cols.size(); ++k)
      for (int cell : cols[k]) b.set(static_cast<std::size_t>(m.position[d - 1][cell]), k);
    m.boundary[d] = std::move(b);
  }
  return m;
}

struct MorseHomology {
  std::vector<int> betti;
  // [dim] -> representative cycles as vectors over the critical cells of dim
  std::vector<std::vector<gf2::BitVector>> basis;
};

inline MorseHomology morse_homology(const MorseComplexData& m) {
  MorseHomology h;
  const int n = static_cast<int>(m.critical.size()) - 1;
  for (int d = 0; d <= n; ++d) {
    const std::size_t size = m.critical[d].size();
    std::vector<gf2::BitVector> candidates;
    std::vector<gf2::BitVector> kernel;
    if (d == 0) {
      for (std::size_t i = 0; i < size; ++i) kernel.push_back(gf2::BitVector::unit(size, i));
    } else {
      kernel = gf2::kernel_basis(m.boundary[d]);
    }
    for (std::size_t i = 0; i < size; ++i)
      if (d == 0 || m.boundary[d].column(i).none()) candidates.push_back(gf2::BitVector::unit(size, i));
    candidates.insert(candidates.end(), kernel.begin(), kernel.end());
    std::vector<gf2::BitVector> boundaries;
    if (d + 1 <= n)
      for (std::size_t j = 0; j < m.critical[d + 1].size(); ++j) boundaries.push_back(m.boundary[d + 1].column(j));
    auto reps = gf2::quotient_basis(candidates, boundaries);
    // a critical cell that is itself a representative appears in no other one
    for (std::size_t a = 0; a < reps.size(); ++a) {
      if (reps[a].count() != 1) continue;
      std::size_t cell = reps[a].find_first();
      for (std::size_t b = 0; b < reps.size(); ++b)
        if (b != a && reps[b].test(cell)) reps[b].flip(cell);
    }
    h.betti.push_back(static_cast<int>(reps.size()));
    h.basis.push_back(std::move(reps));
  }
  return h;
}

// Chain in the complex represented by a Morse cycle (indices into critical).
inline Chain critical_chain(const MorseComplexData& m, int dim, const gf2::BitVector& v) {
  Chain c{dim, {}};
  for (std::size_t i = v.find_first(); i < v.size(); i = v.find_next(i)) c.support.push_back(m.critical[dim][i]);
  std::sort(c.support.begin(), c.support.end());
  return c;
}

// ---------------------------------------------------------------- reductions

inline Items reduce(const Complex& x, const TreeData& t, const Items& c) {
  if (classify_by_theorem(x, t, c) != CellType::Redundant) throw Error("reduce: " + x.describe(c) + " is not redundant");
  int v = minimal_unblocked_vertex(x, t, c);
  Items out = c;
  *std::find(out.begin(), out.end(), v) = t.parent[v];
  std::sort(out.begin(), out.end());
  return out;
}

struct InitialReduction {
  Items cell;
  bool defective = false;
};

inline InitialReduction initial_reduce(const Complex& x, const TreeData& t, const Items& c) {
  if (!is_essential_tree(x.graph(), t)) throw Error("initial_reduce needs an essential spanning tree");
  if (classify_by_theorem(x, t, c) != CellType::Redundant)
    throw Error("initial_reduce: " + x.describe(c) + " is not redundant");
  int v = minimal_unblocked_vertex(x, t, c);
  int lo = t.order[t.parent[v]], hi = t.order[v];
  for (int item : c) {
    if (x.is_vertex(item)) continue;
    int e = x.edge_of(item);
    if (!t.is_deleted(e)) continue;
    int a = t.order[t.tau[e]], b = t.order[t.iota[e]];
    bool nested = a <= lo && hi <= b;
    bool disjoint = hi < a || b < lo;
    if (!nested && !disjoint) return {c, true};
  }
  return {reduce(x, t, c), false};
}

// ---------------------------------------------------------------- bundle

struct MorseSpace {
  Graph graph;
  TreeData tree;
  Complex complex;
  GradientField field;
  MorseComplexData morse;
  MorseHomology homology;
};

inline std::unique_ptr<MorseSpace> build_morse_space(const Graph& g, const TreeData& t, int n,
                                                     EnumerateOptions opts = {}) {
  Complex x = enumerate_unordered(g, n, opts);
  GradientField w = build_gradient(x, t);
  MorseComplexData m = morse_boundary(x, w);
  MorseHomology h = morse_homology(m);
  return std::unique_ptr<MorseSpace>(
      new MorseSpace{g, t, std::move(x), std::move(w), std::move(m), std::move(h)});
}

}  // namespace tcg
