#pragma once

// Equivalence classes of cells, their partial order, the phi cochains and
// their cup products, evaluation on Morse homology, and the zero-divisor
// cup-length search.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "gf2.hpp"
#include "graph.hpp"
#include "morse.hpp"

namespace tcg {

struct EqClass {
  std::vector<int> edges;                    // sorted edge ids
  std::vector<std::pair<int, int>> counts;   // (component min vertex, vertex count), nonzero counts only

  int degree() const { return static_cast<int>(edges.size()); }
  friend auto operator<=>(const EqClass&, const EqClass&) = default;
  friend bool operator==(const EqClass&, const EqClass&) = default;
};

inline std::string describe(const EqClass& c) {
  std::string s = "[E={";
  for (std::size_t i = 0; i < c.edges.size(); ++i) s += (i ? "," : "") + std::to_string(c.edges[i]);
  s += "}";
  for (auto [v, k] : c.counts) s += " C" + std::to_string(v) + ":" + std::to_string(k);
  return s + "]";
}

// Label of each vertex by the minimal vertex of its component in the graph
// with the closed edges E removed; -1 for endpoints of E.
inline std::vector<int> closed_complement_labels(const Graph& g, const std::vector<int>& edges) {
  const int nv = g.vertex_count();
  std::vector<bool> removed(nv, false), cut(g.edge_count(), false);
  for (int e : edges) {
    cut[e] = true;
    removed[g.edge(e).u] = true;
    removed[g.edge(e).v] = true;
  }
  std::vector<int> label(nv, -1);
  for (int s = 0; s < nv; ++s) {
    if (removed[s] || label[s] != -1) continue;
    std::vector<int> st{s};
    label[s] = s;
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      for (int e : g.rotation(x)) {
        if (cut[e]) continue;
        int y = g.other_end(e, x);
        if (!removed[y] && label[y] == -1) {
          label[y] = s;
          st.push_back(y);
        }
      }
    }
  }
  return label;
}

inline EqClass class_from_labels(const Complex& x, const Items& cell, std::vector<int> edges,
                                 const std::vector<int>& label) {
  EqClass c;
  c.edges = std::move(edges);
  std::map<int, int> count;
  for (int item : cell) {
    if (!x.is_vertex(item)) continue;
    if (label[item] < 0) throw Error("cell " + x.describe(cell) + " has a vertex on one of its own edges");
    ++count[label[item]];
  }
  c.counts.assign(count.begin(), count.end());
  return c;
}

inline std::vector<int> edges_of(const Complex& x, const Items& cell) {
  std::vector<int> out;
  for (int item : cell)
    if (!x.is_vertex(item)) out.push_back(x.edge_of(item));
  std::sort(out.begin(), out.end());
  return out;
}

inline EqClass class_of(const Complex& x, const Items& cell) {
  auto edges = edges_of(x, cell);
  return class_from_labels(x, cell, edges, closed_complement_labels(x.graph(), edges));
}

// A cell realising the class: vertices placed at the lowest vertices of each
// component.
inline Items representative(const Complex& x, const EqClass& c) {
  auto label = closed_complement_labels(x.graph(), c.edges);
  Items cell;
  for (int e : c.edges) cell.push_back(x.edge_item(e));
  for (auto [comp, k] : c.counts) {
    int placed = 0;
    for (int v = 0; v < x.vertex_count() && placed < k; ++v)
      if (label[v] == comp) {
        cell.push_back(v);
        ++placed;
      }
    if (placed < k) throw Error("class " + describe(c) + " is not realisable");
  }
  std::sort(cell.begin(), cell.end());
  return cell;
}

// a <= b: some representative of b turns into a member of a after replacing
// the edges outside E(a) by endpoints.
inline bool class_leq(const Complex& x, const EqClass& a, const EqClass& b) {
  if (!std::includes(b.edges.begin(), b.edges.end(), a.edges.begin(), a.edges.end())) return false;
  std::vector<int> drop;
  std::set_difference(b.edges.begin(), b.edges.end(), a.edges.begin(), a.edges.end(), std::back_inserter(drop));
  if (drop.size() > 20) throw Error("class_leq: too many edges to replace");
  Items rep = representative(x, b);
  auto label = closed_complement_labels(x.graph(), a.edges);
  for (std::uint32_t choice = 0; choice < (1U << drop.size()); ++choice) {
    Items cell = rep;
    for (std::size_t i = 0; i < drop.size(); ++i) {
      const Edge& ed = x.graph().edge(drop[i]);
      *std::find(cell.begin(), cell.end(), x.edge_item(drop[i])) = (choice >> i) & 1U ? ed.v : ed.u;
    }
    std::sort(cell.begin(), cell.end());
    if (class_from_labels(x, cell, a.edges, label) == a) return true;
  }
  return false;
}

// ---------------------------------------------------------------- class index

class ClassIndex {
 public:
  explicit ClassIndex(const Complex& x) : x_(&x) {
    cell_class_.resize(x.n() + 1);
    std::map<std::vector<int>, std::vector<int>> label_cache;
    for (int d = 0; d <= x.n(); ++d) {
      cell_class_[d].resize(x.count(d));
      for (int i = 0; i < static_cast<int>(x.count(d)); ++i) {
        const Items& cell = x.cell(d, i);
        auto edges = edges_of(x, cell);
        auto it = label_cache.find(edges);
        if (it == label_cache.end()) it = label_cache.emplace(edges, closed_complement_labels(x.graph(), edges)).first;
        EqClass c = class_from_labels(x, cell, edges, it->second);
        auto found = ids_.find(c);
        int id;
        if (found == ids_.end()) {
          id = static_cast<int>(classes_.size());
          ids_.emplace(c, id);
          by_edges_[c.edges].push_back(id);
          classes_.push_back(std::move(c));
          members_.emplace_back();
        } else {
          id = found->second;
        }
        cell_class_[d][i] = id;
        members_[id].push_back(i);
      }
    }
  }

  const Complex& complex() const { return *x_; }
  std::size_t size() const { return classes_.size(); }
  const EqClass& at(int id) const { return classes_[id]; }
  int degree(int id) const { return classes_[id].degree(); }
  int class_of_cell(int dim, int cell) const { return cell_class_[dim][cell]; }
  const std::vector<int>& members(int id) const { return members_[id]; }

  int id_of(const EqClass& c) const {
    auto it = ids_.find(c);
    return it == ids_.end() ? -1 : it->second;
  }

  std::vector<int> classes_of_degree(int d) const {
    std::vector<int> out;
    for (int id = 0; id < static_cast<int>(classes_.size()); ++id)
      if (classes_[id].degree() == d) out.push_back(id);
    return out;
  }

  const std::vector<int>& with_edges(const std::vector<int>& edges) const {
    static const std::vector<int> none;
    auto it = by_edges_.find(edges);
    return it == by_edges_.end() ? none : it->second;
  }

  bool leq(int a, int b) const {
    auto key = std::make_pair(a, b);
    {
      std::lock_guard<std::mutex> lock(*mutex_);
      auto it = leq_cache_.find(key);
      if (it != leq_cache_.end()) return it->second;
    }
    bool v = class_leq(*x_, classes_[a], classes_[b]);
    std::lock_guard<std::mutex> lock(*mutex_);
    leq_cache_.emplace(key, v);
    return v;
  }

 private:
  const Complex* x_;
  std::vector<EqClass> classes_;
  std::map<EqClass, int> ids_;
  std::map<std::vector<int>, std::vector<int>> by_edges_;
  std::vector<std::vector<int>> cell_class_;
  std::vector<std::vector<int>> members_;
  mutable std::map<std::pair<int, int>, bool> leq_cache_;
  std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
};

// The degree-1 classes below [cell], one per edge.
inline std::vector<int> one_cell_factors(const ClassIndex& idx, const Items& cell) {
  const Complex& x = idx.complex();
  auto edges = edges_of(x, cell);
  if (edges.empty()) throw Error("one_cell_factors needs a cell of dimension at least 1");
  if (edges.size() > 21) throw Error("one_cell_factors: too many edges");
  std::vector<int> out;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    std::vector<int> others;
    for (std::size_t j = 0; j < edges.size(); ++j)
      if (j != k) others.push_back(edges[j]);
    int found = -1;
    for (std::uint32_t choice = 0; choice < (1U << others.size()); ++choice) {
      Items c = cell;
      for (std::size_t i = 0; i < others.size(); ++i) {
        const Edge& ed = x.graph().edge(others[i]);
        *std::find(c.begin(), c.end(), x.edge_item(others[i])) = (choice >> i) & 1U ? ed.v : ed.u;
      }
      std::sort(c.begin(), c.end());
      int id = idx.id_of(class_of(x, c));
      if (id < 0) throw Error("one_cell_factors: face class missing from the index");
      if (found == -1) found = id;
      if (found != id)
        throw Error("one_cell_factors: edge " + std::to_string(edges[k]) + " of " + x.describe(cell) +
                    " lies below two distinct 1-classes");
    }
    out.push_back(found);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// All classes of dimension |factors| lying above every factor.
inline std::vector<int> upper_bound_classes(const ClassIndex& idx, const std::vector<int>& factors) {
  std::vector<int> edges;
  for (int f : factors) {
    if (idx.degree(f) != 1) throw Error("upper_bound_classes expects degree-1 classes");
    edges.push_back(idx.at(f).edges[0]);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) return {};
  const Graph& g = idx.complex().graph();
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const Edge& a = g.edge(edges[i]);
      const Edge& b = g.edge(edges[j]);
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) return {};
    }
  std::vector<int> out;
  for (int cand : idx.with_edges(edges)) {
    bool ok = true;
    for (int f : factors)
      if (!idx.leq(f, cand)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(cand);
  }
  return out;
}

// ---------------------------------------------------------------- cochains

struct PhiCochain {
  int degree = 0;
  std::vector<int> classes;  // sorted class ids
  bool is_zero() const { return classes.empty(); }
  friend bool operator==(const PhiCochain&, const PhiCochain&) = default;
};

inline PhiCochain phi(const ClassIndex& idx, int id) { return {idx.degree(id), {id}}; }

inline PhiCochain phi_sum(int degree, std::vector<int> ids) {
  normalize_mod2(ids);
  return {degree, std::move(ids)};
}

// Product of distinct degree-1 classes.
inline PhiCochain phi_product(const ClassIndex& idx, const std::vector<int>& factors) {
  std::vector<int> sorted = factors;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return {static_cast<int>(factors.size()), {}};
  if (sorted.empty()) return {0, idx.classes_of_degree(0)};
  return phi_sum(static_cast<int>(sorted.size()), upper_bound_classes(idx, sorted));
}

inline PhiCochain cup_product(const ClassIndex& idx, const PhiCochain& a, const PhiCochain& b) {
  std::vector<int> acc;
  auto factors_of = [&](int id) {
    if (idx.degree(id) == 0) return std::vector<int>{};
    const Items& cell = idx.complex().cell(idx.degree(id), idx.members(id).front());
    auto f = one_cell_factors(idx, cell);
    auto ub = upper_bound_classes(idx, f);
    if (ub != std::vector<int>{id})
      throw Error("cup_product: " + describe(idx.at(id)) + " is not the only upper bound of its 1-cell factors");
    return f;
  };
  if (a.degree == 0 && !a.is_zero()) return b;
  if (b.degree == 0 && !b.is_zero()) return a;
  for (int ca : a.classes) {
    auto fa = factors_of(ca);
    for (int cb : b.classes) {
      auto f = fa;
      auto fb = factors_of(cb);
      f.insert(f.end(), fb.begin(), fb.end());
      auto p = phi_product(idx, f);
      acc.insert(acc.end(), p.classes.begin(), p.classes.end());
    }
  }
  return phi_sum(a.degree + b.degree, acc);
}

// phi(sigma) for every cell sigma of the given dimension.
inline bool cochain_value(const ClassIndex& idx, const PhiCochain& a, int cell) {
  int id = idx.class_of_cell(a.degree, cell);
  return std::binary_search(a.classes.begin(), a.classes.end(), id);
}

// ---------------------------------------------------------------- evaluation

// Evaluates phi cochains on the Morse homology basis through f^infinity.
class CupEvaluator {
 public:
  CupEvaluator(const MorseSpace& s, const ClassIndex& idx) : s_(&s), idx_(&idx) {
    odd_.resize(s.complex.n() + 1);
    ready_.assign(s.complex.n() + 1, false);
  }

  const MorseSpace& space() const { return *s_; }
  const ClassIndex& index() const { return *idx_; }

  int betti(int dim) const {
    if (dim < 0 || dim >= static_cast<int>(s_->homology.betti.size())) return 0;
    return s_->homology.betti[dim];
  }

  // Classes with odd multiplicity in f^infinity of the k-th critical cell.
  const std::vector<int>& odd_classes(int dim, int k) const {
    prepare(dim);
    return odd_[dim][k];
  }

  gf2::BitVector evaluate(const PhiCochain& a) const {
    const int p = a.degree;
    gf2::BitVector out(static_cast<std::size_t>(betti(p)));
    if (a.is_zero() || out.size() == 0) return out;
    prepare(p);
    const auto& basis = s_->homology.basis[p];
    for (std::size_t z = 0; z < basis.size(); ++z) {
      bool parity = false;
      for (std::size_t k = basis[z].find_first(); k < basis[z].size(); k = basis[z].find_next(k)) {
        for (int cls : odd_[p][k])
          if (std::binary_search(a.classes.begin(), a.classes.end(), cls)) parity = !parity;
      }
      if (parity) out.set(z);
    }
    return out;
  }

 private:
  void prepare(int dim) const {
    if (ready_[dim]) return;
    const auto& crit = s_->morse.critical[dim];
    std::vector<std::vector<int>> odd(crit.size());
    parallel_for(crit.size(), [&](std::size_t k) {
      const Chain& c = s_->morse.f_infinity_of(s_->complex, s_->field, dim, crit[k]);
      std::vector<int> ids;
      for (int cell : c.support) ids.push_back(idx_->class_of_cell(dim, cell));
      normalize_mod2(ids);
      odd[k] = std::move(ids);
    });
    odd_[dim] = std::move(odd);
    ready_[dim] = true;
  }

  const MorseSpace* s_;
  const ClassIndex* idx_;
  mutable std::vector<std::vector<std::vector<int>>> odd_;
  mutable std::vector<bool> ready_;
};

// a evaluated on a Morse cycle given as a vector over the critical cells.
inline bool pair(const CupEvaluator& ev, const PhiCochain& a, int dim, const gf2::BitVector& cycle) {
  if (dim != a.degree) throw Error("pair: degree mismatch");
  bool parity = false;
  for (std::size_t k = cycle.find_first(); k < cycle.size(); k = cycle.find_next(k))
    for (int cls : ev.odd_classes(dim, static_cast<int>(k)))
      if (std::binary_search(a.classes.begin(), a.classes.end(), cls)) parity = !parity;
  return parity;
}

// ---------------------------------------------------------------- zcl search

struct ZclTerm {
  std::vector<int> left, right;  // generator class ids
};

struct ZclCertificate {
  std::vector<int> generators;  // class ids of the product's factors
  int left_degree = 0, right_degree = 0;
  int left_basis = -1, right_basis = -1;
  std::vector<ZclTerm> terms;   // split terms with both sides nonzero in cohomology
};

struct ZclResult {
  int k = 0;
  bool budget_exhausted = false;
  std::uint64_t evaluations = 0;
  ZclCertificate certificate;
};

class ZclSearch {
 public:
  ZclSearch(const CupEvaluator& ev, std::vector<int> pool, std::uint64_t budget)
      : ev_(&ev), pool_(std::move(pool)), budget_(budget) {
    std::sort(pool_.begin(), pool_.end());
    pool_.erase(std::unique(pool_.begin(), pool_.end()), pool_.end());
    if (pool_.size() > 64) throw Error("zcl pool exceeds 64 generators");
    for (int id : pool_)
      if (ev.index().degree(id) != 1) throw Error("zcl generators must be degree-1 classes");
  }

  const std::vector<int>& pool() const { return pool_; }
  std::uint64_t evaluations() const { return evaluations_; }

  gf2::BitVector eval(std::uint64_t mask) {
    ++evaluations_;
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    std::vector<int> factors;
    for (std::size_t i = 0; i < pool_.size(); ++i)
      if ((mask >> i) & 1U) factors.push_back(pool_[i]);
    auto v = ev_->evaluate(phi_product(ev_->index(), factors));
    memo_.emplace(mask, v);
    return v;
  }

  // Whether the product of the zero-divisors over `mask` is nonzero; fills
  // the witness when it is.
  bool nonzero(std::uint64_t mask, ZclCertificate* witness) {
    const int size = std::popcount(mask);
    const int n = ev_->space().complex.n();
    for (int p = 0; p <= size; ++p) {
      int q = size - p;
      if (p > n || q > n || ev_->betti(p) == 0 || ev_->betti(q) == 0) continue;
      gf2::BitMatrix m(static_cast<std::size_t>(ev_->betti(p)), static_cast<std::size_t>(ev_->betti(q)));
      std::vector<ZclTerm> terms;
      for (std::uint64_t left = mask;; left = (left - 1) & mask) {
        if (std::popcount(left) == p) {
          auto l = eval(left);
          if (l.any()) {
            auto r = eval(mask & ~left);
            if (r.any()) {
              for (std::size_t a = l.find_first(); a < l.size(); a = l.find_next(a))
                for (std::size_t b = r.find_first(); b < r.size(); b = r.find_next(b)) m.flip(a, b);
              if (witness) terms.push_back({ids(left), ids(mask & ~left)});
            }
          }
        }
        if (left == 0) break;
      }
      for (std::size_t a = 0; a < m.rows(); ++a) {
        auto row = m.row(a);
        if (row.none()) continue;
        if (witness) {
          witness->generators = ids(mask);
          witness->left_degree = p;
          witness->right_degree = q;
          witness->left_basis = static_cast<int>(a);
          witness->right_basis = static_cast<int>(row.find_first());
          std::reverse(terms.begin(), terms.end());
          witness->terms = std::move(terms);
        }
        return true;
      }
    }
    return false;
  }

  ZclResult run(int max_depth = -1) {
    ZclResult res;
    int top = 0;
    for (int d = 0; d <= ev_->space().complex.n(); ++d)
      if (ev_->betti(d) > 0) top = d;
    int limit = 2 * top;
    if (max_depth >= 0) limit = std::min(limit, max_depth);
    limit = std::min<int>(limit, static_cast<int>(pool_.size()));
    if (ev_->betti(0) == 0) return res;
    nonzero(0, &res.certificate);
    auto dfs = [&](auto&& self, std::uint64_t mask, int next, int depth) -> void {
      for (int g = next; g < static_cast<int>(pool_.size()); ++g) {
        if (depth + 1 > limit) return;
        if (evaluations_ >= budget_) {
          res.budget_exhausted = true;
          return;
        }
        std::uint64_t m2 = mask | (std::uint64_t{1} << g);
        ZclCertificate cert;
        if (!nonzero(m2, &cert)) continue;
        if (depth + 1 > res.k) {
          res.k = depth + 1;
          res.certificate = std::move(cert);
        }
        self(self, m2, g + 1, depth + 1);
        if (res.budget_exhausted) return;
      }
    };
    dfs(dfs, 0, 0, 0);
    res.evaluations = evaluations_;
    return res;
  }

 private:
  std::vector<int> ids(std::uint64_t mask) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < pool_.size(); ++i)
      if ((mask >> i) & 1U) out.push_back(pool_[i]);
    return out;
  }

  const CupEvaluator* ev_;
  std::vector<int> pool_;
  std::uint64_t budget_;
  std::uint64_t evaluations_ = 0;
  std::unordered_map<std::uint64_t, gf2::BitVector> memo_;
};

inline ZclResult zcl_lower_bound(const CupEvaluator& ev, const std::vector<int>& generators,
                                 std::uint64_t budget = 1000000) {
  if (!is_connected(ev.space().complex)) throw Error("zcl_lower_bound needs a connected complex");
  ZclSearch search(ev, generators, budget);
  return search.run();
}

}  // namespace tcg
