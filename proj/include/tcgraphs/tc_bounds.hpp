#pragma once

// Upper and lower bounds for the topological complexity of UD^n, the explicit
// Phi and Psi critical cells, and the certificates built from them.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cohomology.hpp"
#include "complex.hpp"
#include "cycles.hpp"
#include "graph.hpp"
#include "morse.hpp"
#include "spanning_tree.hpp"

namespace tcg {

// ---------------------------------------------------------------- upper bounds

inline int k_formula(const GraphStats& s, int n) {
  int k = std::min(n, (n + s.beta) / 2);
  if (s.m == 0) return s.beta >= 1 ? std::min(k, 1) : 0;
  return std::min(k, s.m);
}

struct UpperBounds {
  int K = 0;
  int formula = 1;
  int dimension = 1;
  int max_critical_dimension = 0;
};

inline UpperBounds upper_bounds(const Graph& g, int n, const Complex& x, const MorseComplexData& m) {
  if (!is_connected(x)) throw Error("upper_bounds: the configuration space is not connected");
  UpperBounds b;
  b.K = k_formula(graph_stats(g), n);
  b.formula = 2 * b.K + 1;
  b.max_critical_dimension = std::max(0, m.top_critical_dimension());
  b.dimension = 2 * b.max_critical_dimension + 1;
  return b;
}

// ---------------------------------------------------------------- explicit cells

inline std::vector<int> essential_vertices(const Graph& g) {
  std::vector<int> out;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (is_essential(g, v)) out.push_back(v);
  return out;
}

struct NormalizedSGraph {
  Graph graph;
  TreeData tree;
  SGraphCheck check;
};

// Puts the simple component at each essential vertex in direction 1.
inline NormalizedSGraph normalize_s_graph(Graph g, const TreeData& t) {
  SGraphCheck check = is_s_graph(g, t);
  if (!check.ok) throw Error("not an S-graph: " + check.diagnostics);
  for (int v : essential_vertices(g)) rotate_to_direction_one(g, t, v, check.simple_edge[v]);
  TreeData t2 = make_tree_data(g, t.in_tree, t.root);
  SGraphCheck again = is_s_graph(g, t2);
  if (!again.ok) throw Error("S-graph normalisation broke the S-graph property: " + again.diagnostics);
  for (int v : essential_vertices(g))
    if (t2.e_dir(v, 1) != check.simple_edge[v])
      throw Error("S-graph normalisation failed at vertex " + std::to_string(v));
  return {std::move(g), std::move(t2), std::move(again)};
}

inline void require_critical(const Complex& x, const TreeData& t, const Items& cell, const std::string& what) {
  if (x.find_sorted(cell) < 0) throw Error(what + " " + x.describe(cell) + " is not a cell of the complex");
  if (classify_by_theorem(x, t, cell) != CellType::Critical)
    throw Error(what + " " + x.describe(cell) + " is not critical");
}

// S has one entry in {2, 3} per essential vertex, in increasing vertex order.
inline Items construct_phi_cell(const Complex& x, const TreeData& t, const std::vector<int>& S) {
  const Graph& g = x.graph();
  auto ess = essential_vertices(g);
  const int m = static_cast<int>(ess.size());
  if (static_cast<int>(S.size()) != m) throw Error("construct_phi_cell: S must have one entry per essential vertex");
  if (x.n() < 2 * m) throw Error("construct_phi_cell: n must be at least 2m");
  SGraphCheck check = is_s_graph(g, t);
  if (!check.ok) throw Error("construct_phi_cell: not an S-graph: " + check.diagnostics);
  Items cell;
  for (int i = 0; i < m; ++i) {
    int v = ess[i];
    if (S[i] != 2 && S[i] != 3) throw Error("construct_phi_cell: entries of S must be 2 or 3");
    if (t.e_dir(v, 1) != check.simple_edge[v])
      throw Error("construct_phi_cell: direction 1 at vertex " + std::to_string(v) + " is not a simple component");
    cell.push_back(x.edge_item(t.e_dir(v, S[i])));
    cell.push_back(t.v_dir(v, 1));
  }
  int cur = m > 0 ? t.v_dir(ess[0], 1) : -1;
  for (int j = 0; j < x.n() - 2 * m; ++j) {
    if (t.direction_count(cur) < 2) throw Error("construct_phi_cell: branch too short to stack blocked vertices");
    cur = t.v_dir(cur, 1);
    cell.push_back(cur);
  }
  std::sort(cell.begin(), cell.end());
  require_critical(x, t, cell, "Phi cell");
  return cell;
}

inline Items construct_psi_cell(const Complex& x, const TreeData& t, const std::vector<int>& deleted) {
  if (static_cast<int>(deleted.size()) != x.n()) throw Error("construct_psi_cell: need exactly n deleted edges");
  Items cell;
  for (int e : deleted) {
    if (!t.is_deleted(e)) throw Error("construct_psi_cell: edge " + std::to_string(e) + " is a tree edge");
    cell.push_back(x.edge_item(e));
  }
  std::sort(cell.begin(), cell.end());
  for (std::size_t i = 0; i < deleted.size(); ++i)
    for (std::size_t j = i + 1; j < deleted.size(); ++j) {
      int a1 = t.order[t.wedge[deleted[i]]], b1 = t.order[t.iota[deleted[i]]];
      int a2 = t.order[t.wedge[deleted[j]]], b2 = t.order[t.iota[deleted[j]]];
      if (!(b1 < a2 || b2 < a1)) throw Error("construct_psi_cell: deleted-edge intervals overlap");
    }
  require_critical(x, t, cell, "Psi cell");
  return cell;
}

// ---------------------------------------------------------------- reports

enum class TCStatus { ok, not_connected, degenerate };

inline const char* to_string(TCStatus s) {
  switch (s) {
    case TCStatus::ok: return "ok";
    case TCStatus::not_connected: return "not_connected";
    case TCStatus::degenerate: return "degenerate";
  }
  return "?";
}

struct TCOptions {
  std::uint64_t budget = 1000000;      // zcl monomial evaluations
  long long cycle_budget = 5000000;    // nu search nodes
  std::size_t pool_cap = 64;
};

struct Certificate {
  std::string name;
  int k = 0;
  bool budget_exhausted = false;
  std::uint64_t evaluations = 0;
  std::vector<std::string> generators;
  std::string witness;
  std::vector<std::string> terms;
  std::vector<std::string> trace;
};

struct TCReport {
  int n = 0;
  TCStatus status = TCStatus::degenerate;
  std::string message;
  GraphStats stats;
  int subdivided_vertices = 0, subdivided_edges = 0;
  int nu = -1;
  bool nu_exact = true;
  int K = 0;
  std::vector<int> critical_counts;
  std::vector<int> betti;
  int upper_formula = 0, upper_dimension = 0;
  int lower = 1;
  std::optional<int> exact;
  bool budget_exhausted = false;
  Certificate certificate;
  std::vector<std::string> trace;

  int upper() const { return std::min(upper_formula, upper_dimension); }
};

inline std::string join(const std::vector<int>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

inline std::string format_report(const TCReport& r) {
  std::ostringstream out;
  out << "status = " << to_string(r.status) << "\n";
  if (!r.message.empty()) out << "message = " << r.message << "\n";
  out << "n = " << r.n << "\n";
  out << "vertices = " << r.stats.vertices << "\n";
  out << "edges = " << r.stats.edges << "\n";
  out << "m = " << r.stats.m << "\n";
  out << "beta = " << r.stats.beta << "\n";
  if (r.status == TCStatus::ok) {
    out << "subdivided_vertices = " << r.subdivided_vertices << "\n";
    out << "subdivided_edges = " << r.subdivided_edges << "\n";
    out << "nu = " << r.nu << "\n";
    out << "nu_exact = " << (r.nu_exact ? "true" : "false") << "\n";
    out << "K = " << r.K << "\n";
    out << "critical_cells = " << join(r.critical_counts) << "\n";
    out << "betti = " << join(r.betti) << "\n";
    out << "upper_formula = " << r.upper_formula << "\n";
    out << "upper_dimension = " << r.upper_dimension << "\n";
    out << "lower = " << r.lower << "\n";
    out << "interval = [" << r.lower << "," << r.upper() << "]\n";
    out << "exact = " << (r.exact ? std::to_string(*r.exact) : std::string("none")) << "\n";
    out << "certificate = " << r.certificate.name << "\n";
    out << "zcl = " << r.certificate.k << "\n";
    out << "zcl_evaluations = " << r.certificate.evaluations << "\n";
    for (std::size_t i = 0; i < r.certificate.generators.size(); ++i)
      out << "generator." << i << " = " << r.certificate.generators[i] << "\n";
    if (!r.certificate.witness.empty()) out << "witness = " << r.certificate.witness << "\n";
    for (std::size_t i = 0; i < r.certificate.terms.size(); ++i)
      out << "term." << i << " = " << r.certificate.terms[i] << "\n";
  }
  out << "budget_exhausted = " << (r.budget_exhausted ? "true" : "false") << "\n";
  std::vector<std::string> trace = r.trace;
  trace.insert(trace.end(), r.certificate.trace.begin(), r.certificate.trace.end());
  for (std::size_t i = 0; i < trace.size(); ++i) out << "trace." << i << " = " << trace[i] << "\n";
  return out.str();
}

// ---------------------------------------------------------------- certificates

namespace detail {

inline std::string class_list(const ClassIndex& idx, const std::vector<int>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? " * " : "") + describe(idx.at(ids[i]));
  return s.empty() ? "1" : s;
}

inline void fill_zcl(Certificate& c, const ClassIndex& idx, const ZclCertificate& z) {
  for (int id : z.generators) c.generators.push_back(describe(idx.at(id)));
  c.witness = "H_" + std::to_string(z.left_degree) + "[" + std::to_string(z.left_basis) + "] x H_" +
              std::to_string(z.right_degree) + "[" + std::to_string(z.right_basis) + "]";
  for (const auto& t : z.terms) c.terms.push_back(class_list(idx, t.left) + " (x) " + class_list(idx, t.right));
}

// [cell] holds no other critical or collapsible cell.
inline bool only_redundant_companions(const MorseSpace& s, const ClassIndex& idx, int dim, int cell) {
  int id = idx.class_of_cell(dim, cell);
  for (int other : idx.members(id))
    if (other != cell && s.field.labels[dim][other] != CellType::Redundant) return false;
  return true;
}

inline int require_least_upper_bound(const ClassIndex& idx, const Items& cell, const std::vector<int>& factors,
                                     const std::string& what) {
  const Complex& x = idx.complex();
  int id = idx.id_of(class_of(x, cell));
  auto ub = upper_bound_classes(idx, factors);
  if (ub != std::vector<int>{id})
    throw Error(what + ": its class is not the only upper bound of its 1-cell factors (" +
                std::to_string(ub.size()) + " upper bounds)");
  return id;
}

// The edge of a degree-1 class.
inline int class_edge(const ClassIndex& idx, int id) { return idx.at(id).edges.at(0); }

}  // namespace detail

struct PreparedSpace {
  std::unique_ptr<MorseSpace> space;
  std::unique_ptr<ClassIndex> index;
  std::unique_ptr<CupEvaluator> evaluator;
};

inline PreparedSpace prepare_space(const Graph& g, const TreeData& t, int n) {
  PreparedSpace p;
  p.space = build_morse_space(g, t, n);
  p.index = std::make_unique<ClassIndex>(p.space->complex);
  p.evaluator = std::make_unique<CupEvaluator>(*p.space, *p.index);
  return p;
}

// Runs the S-graph argument on a normalised space.
inline Certificate s_graph_certificate(const PreparedSpace& p, const TCOptions& opts = {}) {
  const MorseSpace& s = *p.space;
  const ClassIndex& idx = *p.index;
  const Complex& x = s.complex;
  auto ess = essential_vertices(s.graph);
  const int m = static_cast<int>(ess.size());
  Certificate c;
  c.name = "s_graph";
  Items phi2 = construct_phi_cell(x, s.tree, std::vector<int>(m, 2));
  Items phi3 = construct_phi_cell(x, s.tree, std::vector<int>(m, 3));
  c.trace.push_back("phi_2 = " + x.describe(phi2));
  c.trace.push_back("phi_3 = " + x.describe(phi3));
  for (const Items* cell : {&phi2, &phi3})
    if (!detail::only_redundant_companions(s, idx, m, x.find_sorted(*cell)))
      throw Error("the class of " + x.describe(*cell) + " holds a non-redundant companion");
  auto f2 = one_cell_factors(idx, phi2);
  auto f3 = one_cell_factors(idx, phi3);
  detail::require_least_upper_bound(idx, phi2, f2, "phi_2");
  detail::require_least_upper_bound(idx, phi3, f3, "phi_3");

  // the factor at each essential vertex
  auto vertex_of = [&](int id) {
    const Edge& ed = s.graph.edge(detail::class_edge(idx, id));
    for (int i = 0; i < m; ++i)
      if (ed.u == ess[i] || ed.v == ess[i]) return i;
    throw Error("factor " + describe(idx.at(id)) + " does not meet an essential vertex");
  };
  std::vector<int> pool = f2;
  pool.insert(pool.end(), f3.begin(), f3.end());
  std::sort(pool.begin(), pool.end());
  if (std::adjacent_find(pool.begin(), pool.end()) != pool.end()) throw Error("phi_2 and phi_3 share a 1-cell factor");

  ZclSearch search(*p.evaluator, pool, opts.budget);
  const auto& gens = search.pool();
  std::uint64_t full = gens.size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << gens.size()) - 1);
  ZclCertificate z;
  if (!search.nonzero(full, &z)) throw Error("the product of the 2m zero-divisors vanishes");
  c.k = static_cast<int>(gens.size());

  // every surviving split is phi_[Phi_S'] (x) phi_[Phi_S''] for mixed S', S''
  std::size_t checked = 0;
  for (std::uint64_t left = full;; left = (left - 1) & full) {
    if (std::popcount(left) == m) {
      for (std::uint64_t side : {left, full & ~left}) {
        std::vector<int> ids;
        std::vector<int> S(m, 0);
        bool clash = false;
        for (std::size_t i = 0; i < gens.size(); ++i) {
          if (!((side >> i) & 1U)) continue;
          ids.push_back(gens[i]);
          int vi = vertex_of(gens[i]);
          int val = std::binary_search(f2.begin(), f2.end(), gens[i]) ? 2 : 3;
          if (S[vi] != 0) clash = true;
          S[vi] = val;
        }
        auto ub = upper_bound_classes(idx, ids);
        if (clash) {
          if (!ub.empty()) throw Error("a product with two factors at one vertex has an upper bound");
          continue;
        }
        int want = idx.id_of(class_of(x, construct_phi_cell(x, s.tree, S)));
        if (ub != std::vector<int>{want}) throw Error("an Other Terms product is not a single Phi class");
        ++checked;
      }
    }
    if (left == 0) break;
  }
  c.trace.push_back("other_terms_classified = " + std::to_string(checked));
  c.evaluations = search.evaluations();
  detail::fill_zcl(c, idx, z);
  c.trace.push_back("product of " + std::to_string(c.k) + " zero-divisors is nonzero");
  return c;
}

inline Certificate psi_certificate(const PreparedSpace& p, const VertexDisjointTree& vt, int n,
                                   const TCOptions& opts = {}) {
  const MorseSpace& s = *p.space;
  const ClassIndex& idx = *p.index;
  const Complex& x = s.complex;
  Certificate c;
  c.name = "vertex_disjoint";
  if (static_cast<int>(vt.cycles.size()) < 2 * n) throw Error("need 2n vertex-disjoint cycles");
  std::vector<int> r1(vt.cycle_deleted_edges.begin(), vt.cycle_deleted_edges.begin() + n);
  std::vector<int> r2(vt.cycle_deleted_edges.begin() + n, vt.cycle_deleted_edges.begin() + 2 * n);
  Items psi1 = construct_psi_cell(x, s.tree, r1);
  Items psi2 = construct_psi_cell(x, s.tree, r2);
  c.trace.push_back("psi_1 = " + x.describe(psi1));
  c.trace.push_back("psi_2 = " + x.describe(psi2));
  for (const Items* cell : {&psi1, &psi2}) {
    int idx_cell = x.find_sorted(*cell);
    int pos = s.morse.position[n][idx_cell];
    if (n >= 1 && s.morse.boundary[n].column(static_cast<std::size_t>(pos)).any())
      throw Error("Morse boundary of " + x.describe(*cell) + " is nonzero");
    if (idx.members(idx.class_of_cell(n, idx_cell)).size() != 1)
      throw Error("the class of " + x.describe(*cell) + " holds another cell");
  }
  auto f1 = one_cell_factors(idx, psi1);
  auto f2 = one_cell_factors(idx, psi2);
  detail::require_least_upper_bound(idx, psi1, f1, "psi_1");
  detail::require_least_upper_bound(idx, psi2, f2, "psi_2");
  std::vector<int> pool = f1;
  pool.insert(pool.end(), f2.begin(), f2.end());

  ZclSearch search(*p.evaluator, pool, opts.budget);
  const auto& gens = search.pool();
  if (static_cast<int>(gens.size()) != 2 * n) throw Error("Psi factors are not 2n distinct classes");
  std::uint64_t full = gens.size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << gens.size()) - 1);
  ZclCertificate z;
  if (!search.nonzero(full, &z)) throw Error("the product of the 2n zero-divisors vanishes");
  c.k = 2 * n;

  // every surviving split is phi_[Psi_I] (x) phi_[Psi_J] with I, J partitioning the cycles
  std::size_t checked = 0;
  for (std::uint64_t left = full;; left = (left - 1) & full) {
    if (std::popcount(left) == n) {
      for (std::uint64_t side : {left, full & ~left}) {
        std::vector<int> ids, edges;
        for (std::size_t i = 0; i < gens.size(); ++i)
          if ((side >> i) & 1U) {
            ids.push_back(gens[i]);
            edges.push_back(detail::class_edge(idx, gens[i]));
          }
        auto ub = upper_bound_classes(idx, ids);
        int want = idx.id_of(class_of(x, construct_psi_cell(x, s.tree, edges)));
        if (ub != std::vector<int>{want}) throw Error("a split term is not a single Psi class");
        ++checked;
      }
    }
    if (left == 0) break;
  }
  c.trace.push_back("psi_terms_classified = " + std::to_string(checked));
  c.evaluations = search.evaluations();
  detail::fill_zcl(c, idx, z);
  c.trace.push_back("product of " + std::to_string(c.k) + " zero-divisors is nonzero");
  return c;
}

inline std::vector<int> default_pool(const PreparedSpace& p, std::size_t cap, std::vector<std::string>& trace) {
  const ClassIndex& idx = *p.index;
  auto all = idx.classes_of_degree(1);
  if (all.size() <= cap) {
    trace.push_back("zcl pool = all " + std::to_string(all.size()) + " degree-1 classes");
    return all;
  }
  std::vector<int> pool;
  for (int cell : p.space->morse.critical[1]) pool.push_back(idx.class_of_cell(1, cell));
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  trace.push_back("zcl pool = classes of " + std::to_string(pool.size()) + " critical 1-cells");
  if (pool.size() > cap) {
    pool.resize(cap);
    trace.push_back("zcl pool truncated to " + std::to_string(cap));
  }
  return pool;
}

inline Certificate zcl_certificate(const PreparedSpace& p, const TCOptions& opts = {}) {
  Certificate c;
  c.name = "zcl";
  auto pool = default_pool(p, opts.pool_cap, c.trace);
  ZclSearch search(*p.evaluator, pool, opts.budget);
  ZclResult r = search.run();
  c.k = r.k;
  c.budget_exhausted = r.budget_exhausted;
  c.evaluations = r.evaluations;
  detail::fill_zcl(c, *p.index, r.certificate);
  return c;
}

// ---------------------------------------------------------------- assembly

namespace detail {

inline void fill_space_data(TCReport& r, const PreparedSpace& p) {
  const MorseSpace& s = *p.space;
  r.subdivided_vertices = s.graph.vertex_count();
  r.subdivided_edges = s.graph.edge_count();
  r.critical_counts.clear();
  for (const auto& crit : s.morse.critical) r.critical_counts.push_back(static_cast<int>(crit.size()));
  r.betti = s.homology.betti;
  UpperBounds b = upper_bounds(s.graph, r.n, s.complex, s.morse);
  r.K = b.K;
  r.upper_formula = b.formula;
  r.upper_dimension = r.upper_dimension == 0 ? b.dimension : std::min(r.upper_dimension, b.dimension);
}

inline void finish(TCReport& r) {
  r.lower = std::max(1, r.certificate.k + 1);
  r.budget_exhausted = r.budget_exhausted || r.certificate.budget_exhausted;
  if (r.lower > r.upper()) throw Error("lower bound " + std::to_string(r.lower) + " exceeds upper bound " +
                                       std::to_string(r.upper()));
  if (r.lower == r.upper()) r.exact = r.lower;
}

inline bool start_report(TCReport& r, const Graph& g, int n) {
  r.n = n;
  r.stats = graph_stats(g);
  if (n < 1 || g.vertex_count() == 0) {
    r.status = TCStatus::degenerate;
    r.message = n < 1 ? "n must be at least 1" : "empty graph";
    return false;
  }
  if (!is_connected(g)) {
    r.status = TCStatus::not_connected;
    r.message = "graph is not connected";
    return false;
  }
  return true;
}

}  // namespace detail

// g must already be sufficiently subdivided; t is any spanning tree meeting
// the S-graph conditions.
inline TCReport certify_s_graph(const Graph& g, const TreeData& t, int n, const TCOptions& opts = {}) {
  TCReport r;
  if (!detail::start_report(r, g, n)) return r;
  if (n < 2 * r.stats.m) throw Error("certify_s_graph: n must be at least 2m");
  auto norm = normalize_s_graph(g, t);
  PreparedSpace p = prepare_space(norm.graph, norm.tree, n);
  if (!is_connected(p.space->complex)) throw Error("certify_s_graph: configuration space is not connected");
  r.status = TCStatus::ok;
  detail::fill_space_data(r, p);
  r.certificate = s_graph_certificate(p, opts);
  detail::finish(r);
  return r;
}

inline TCReport certify_vertex_disjoint(const Graph& g, int n, const TCOptions& opts = {}) {
  TCReport r;
  if (!detail::start_report(r, g, n)) return r;
  CyclePacking packing = max_vertex_disjoint_cycles(g, opts.cycle_budget);
  r.nu = packing.nu;
  r.nu_exact = packing.exact;
  if (packing.nu < 2 || 2 * n > packing.nu)
    throw Error("certify_vertex_disjoint: need nu >= 2 and n <= nu/2 (nu = " + std::to_string(packing.nu) + ")");
  Subdivision sub = subdivide_with_map(g, n);
  std::vector<Cycle> chosen(packing.cycles.begin(), packing.cycles.begin() + 2 * n);
  VertexDisjointTree vt = build_vertex_disjoint_tree(sub.graph, map_cycles(sub, g, chosen));
  PreparedSpace p = prepare_space(vt.graph, vt.tree, n);
  if (!is_connected(p.space->complex)) throw Error("certify_vertex_disjoint: configuration space is not connected");
  r.status = TCStatus::ok;
  detail::fill_space_data(r, p);
  r.certificate = psi_certificate(p, vt, n, opts);
  detail::finish(r);
  return r;
}

// Subdivides, builds the space, and runs the strongest certificate that
// applies.
inline TCReport tc_report(const Graph& g, int n, const TCOptions& opts = {}) {
  TCReport r;
  if (!detail::start_report(r, g, n)) return r;
  Graph sub = subdivide_for_n(g, n);
  TreeData t = choose_spanning_tree(sub);
  SGraphCheck sg = is_s_graph(sub, t);
  std::unique_ptr<NormalizedSGraph> norm;
  if (sg.ok) {
    norm = std::make_unique<NormalizedSGraph>(normalize_s_graph(sub, t));
    sub = norm->graph;
    t = norm->tree;
    r.trace.push_back("s_graph = yes");
  } else {
    r.trace.push_back("s_graph = no (" + sg.diagnostics + ")");
  }
  PreparedSpace base = prepare_space(sub, t, n);
  if (!is_connected(base.space->complex)) {
    r.status = TCStatus::not_connected;
    r.message = "configuration space is not connected";
    return r;
  }
  r.status = TCStatus::ok;
  detail::fill_space_data(r, base);

  CyclePacking packing = max_vertex_disjoint_cycles(g, opts.cycle_budget);
  r.nu = packing.nu;
  r.nu_exact = packing.exact;

  if (sg.ok && n >= 2 * r.stats.m) {
    try {
      r.certificate = s_graph_certificate(base, opts);
      detail::finish(r);
      return r;
    } catch (const Error& e) {
      r.trace.push_back(std::string("s_graph certificate failed: ") + e.what());
    }
  }
  if (packing.nu >= 2 && 2 * n <= packing.nu) {
    try {
      TCReport vd = certify_vertex_disjoint(g, n, opts);
      r.upper_dimension = std::min(r.upper_dimension, vd.upper_dimension);
      r.certificate = vd.certificate;
      detail::finish(r);
      return r;
    } catch (const Error& e) {
      r.trace.push_back(std::string("vertex_disjoint certificate failed: ") + e.what());
    }
  }
  r.certificate = zcl_certificate(base, opts);
  if (!packing.exact) r.budget_exhausted = true;
  detail::finish(r);
  return r;
}

}  // namespace tcg
