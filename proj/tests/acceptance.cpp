// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "oracles.hpp"

namespace {

struct Check {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) note << "first failure: " << what << ";";
    ok = ok && cond;
  }
};

using Criterion = std::function<void(Check&)>;

std::unique_ptr<tcg::MorseSpace> space(const tcg::Graph& g0, int n) {
  auto g = tcg::subdivide_for_n(g0, n);
  return tcg::build_morse_space(g, tcg::choose_spanning_tree(g), n);
}

std::string describe(const tcg::TCReport& r) {
  std::ostringstream s;
  s << "interval [" << r.lower << "," << r.upper() << "]"
    << " exact " << (r.exact ? std::to_string(*r.exact) : std::string("none")) << " certificate " << r.certificate.name;
  return s.str();
}

void exact_tc(Check& c, const char* name, int n, int want, const char* certificate, const std::string& trace_mark) {
  auto r = tcg::tc_report(oracle::corpus(name), n);
  c.require(r.status == tcg::TCStatus::ok, std::string(name) + " status");
  c.require(r.exact && *r.exact == want, std::string(name) + " " + describe(r));
  c.require(r.certificate.name == certificate, std::string(name) + " certificate " + r.certificate.name);
  c.require(!r.budget_exhausted, std::string(name) + " budget");
  auto text = tcg::format_report(r);
  c.require(text.find(trace_mark) != std::string::npos, std::string(name) + " trace lacks '" + trace_mark + "'");
  c.note << " " << name << " n=" << n << ": " << describe(r) << ";";
}

void oracle_equivalence(Check& c) {
  const std::vector<std::pair<const char*, int>> pairs = {
      {"y", 2},       {"y", 3},       {"star4", 2},         {"tree_two_deg4", 3}, {"figure1", 1},
      {"figure1", 2}, {"figure1", 3}, {"banana3", 2},       {"banana3", 3},       {"two_triangles", 1},
      {"two_triangles", 2}, {"four_triangles", 1}, {"four_triangles", 2}, {"k6", 2}, {"wedge2", 2}};
  for (auto [name, n] : pairs) {
    auto s = space(oracle::corpus(name), n);
    c.require(s->homology.betti == oracle::dense_betti(s->complex), std::string(name) + " n=" + std::to_string(n));
  }
  c.note << pairs.size() << " (graph, n) pairs";
}

const std::vector<std::string> kCorpus = {"y",       "path",   "star4",  "tree_two_deg4", "k6",
                                          "banana3", "wedge2", "circle", "figure1",       "s_graph_m1",
                                          "s_graph_m2", "two_triangles", "four_triangles"};

void one_robot(Check& c) {
  for (const auto& name : kCorpus) {
    auto s = space(oracle::corpus(name), 1);
    int beta = tcg::graph_stats(s->graph).beta;
    c.require(oracle::dense_betti(s->complex) == std::vector<int>{1, beta}, name + " homology");
    c.require(s->homology.betti == std::vector<int>{1, beta}, name + " Morse homology");
    std::vector<int> zero, one;
    for (int i : s->morse.critical[0]) zero.push_back(s->complex.cell(0, i)[0]);
    for (int i : s->morse.critical[1]) one.push_back(s->complex.edge_of(s->complex.cell(1, i)[0]));
    c.require(zero == std::vector<int>{s->tree.root}, name + " critical 0-cells");
    c.require(one == s->tree.deleted_edges, name + " critical 1-cells");
  }
  c.note << kCorpus.size() << " graphs";
}

void tree_boundaries(Check& c) {
  int matrices = 0;
  for (const auto& name : kCorpus) {
    auto g = oracle::corpus(name);
    if (!tcg::is_forest(g)) continue;
    for (int n = 1; n <= 4; ++n) {
      auto s = space(g, n);
      for (int d = 1; d <= n; ++d, ++matrices)
        c.require(s->morse.boundary[d].is_zero(), name + " n=" + std::to_string(n) + " d=" + std::to_string(d));
    }
  }
  c.note << matrices << " boundary matrices on trees";
}

void structural(Check& c) {
  const std::vector<std::pair<const char*, int>> cases = {{"y", 3},       {"star4", 2},  {"circle", 2},
                                                          {"banana3", 2}, {"figure1", 2}, {"two_triangles", 2},
                                                          {"k6", 2},      {"s_graph_m1", 2}};
  long long cells = 0;
  for (auto [name, n] : cases) {
    auto s = space(oracle::corpus(name), n);
    const auto& x = s->complex;
    const auto& w = s->field;
    const auto& t = s->tree;
    std::string tag = std::string(name) + " n=" + std::to_string(n);
    long long chi = 0;
    for (int d = 0; d <= n; ++d) {
      chi += (d % 2 ? -1 : 1) * static_cast<long long>(s->morse.critical[d].size());
      for (int i = 0; i < static_cast<int>(x.count(d)); ++i, ++cells) {
        auto label = w.labels[d][i];
        c.require(label == tcg::classify_by_theorem(x, t, x.cell(d, i)), tag + " classification");
        c.require((label == tcg::CellType::Redundant) == (w.up[d][i] >= 0), tag + " redundant pairing");
        c.require((label == tcg::CellType::Collapsible) == (w.down[d][i] >= 0), tag + " collapsible pairing");
        if (d >= 2) c.require(tcg::boundary(x, tcg::boundary(x, tcg::Chain{d, {i}})).support.empty(), tag + " dd");
      }
      if (d >= 2) c.require((s->morse.boundary[d - 1] * s->morse.boundary[d]).is_zero(), tag + " Morse dd");
      for (int k : s->morse.critical[d]) {
        auto f = tcg::f_infinity(x, w, tcg::Chain{d, {k}});
        for (int j : f.support) c.require(j == k || w.labels[d][j] == tcg::CellType::Collapsible, tag + " f-infinity");
      }
    }
    c.require(chi == tcg::euler_characteristic(x), tag + " Euler characteristic");

    tcg::ClassIndex idx(x);
    const int k = static_cast<int>(idx.size());
    for (int a = 0; a < k; ++a) {
      c.require(idx.leq(a, a), tag + " reflexive");
      int d = idx.degree(a);
      if (d < n)
        for (int sgm = 0; sgm < static_cast<int>(x.count(d + 1)); ++sgm) {
          bool parity = false;
          for (int f : tcg::boundary_indices(x, d + 1, sgm)) parity ^= idx.class_of_cell(d, f) == a;
          c.require(!parity, tag + " cocycle");
        }
      for (int b = 0; b < k; ++b) {
        if (!idx.leq(a, b)) continue;
        if (a != b) c.require(!idx.leq(b, a), tag + " antisymmetric");
        for (int e = 0; e < k; ++e)
          if (idx.leq(b, e)) c.require(idx.leq(a, e), tag + " transitive");
      }
    }
    std::vector<bool> has_critical(idx.size(), false);
    for (int d = 0; d <= n; ++d)
      for (int cc : s->morse.critical[d]) has_critical[idx.class_of_cell(d, cc)] = true;
    for (int d = 1; d <= n; ++d)
      for (int i = 0; i < static_cast<int>(x.count(d)); ++i) {
        auto f = tcg::one_cell_factors(idx, x.cell(d, i));
        c.require(static_cast<int>(f.size()) == d, tag + " factor count");
        std::vector<int> edges;
        for (int a : f) edges.push_back(idx.at(a).edges[0]);
        std::sort(edges.begin(), edges.end());
        c.require(edges == tcg::edges_of(x, x.cell(d, i)), tag + " factors cover the edges");
        for (std::size_t p = 0; p < edges.size(); ++p)
          for (std::size_t q = p + 1; q < edges.size(); ++q) {
            const auto& e1 = x.graph().edge(edges[p]);
            const auto& e2 = x.graph().edge(edges[q]);
            c.require(e1.u != e2.u && e1.u != e2.v && e1.v != e2.u && e1.v != e2.v, tag + " disjoint factors");
          }
        if (w.labels[d][i] == tcg::CellType::Critical)
          for (int a = 0; a < k; ++a)
            if (idx.leq(a, idx.class_of_cell(d, i))) c.require(has_critical[a], tag + " critical below critical");
      }
    long long fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    auto ordered = tcg::enumerate_ordered(x.graph(), n);
    for (int d = 0; d <= n; ++d) c.require(ordered.count(d) == fact * x.count(d), tag + " ordered count");
  }

  // reduction identities over essential spanning trees
  int identities = 0;
  for (auto [name, n] : std::vector<std::pair<const char*, int>>{{"two_triangles", 2}, {"four_triangles", 2}, {"figure1", 2}}) {
    auto g = oracle::corpus(name);
    auto packing = tcg::max_vertex_disjoint_cycles(g);
    auto sub = tcg::subdivide_with_map(g, n);
    auto vt = tcg::build_vertex_disjoint_tree(sub.graph, tcg::map_cycles(sub, g, packing.cycles));
    auto s = tcg::build_morse_space(vt.graph, vt.tree, n);
    const auto& x = s->complex;
    const auto& t = s->tree;
    auto piF = [&](int d, const tcg::Items& cell) {
      return tcg::project_F_infinity(x, s->field, tcg::Chain{d, {x.find(cell)}});
    };
    for (int d = 0; d <= n; ++d)
      for (int i = 0; i < static_cast<int>(x.count(d)); ++i) {
        const auto& cell = x.cell(d, i);
        for (int item : cell) {
          if (x.is_vertex(item) || !t.is_deleted(x.edge_of(item)) || t.tau[x.edge_of(item)] == t.root) continue;
          int e = x.edge_of(item);
          for (int v : cell)
            if (x.is_vertex(v) && v != t.root)
              c.require(t.parent[v] != t.tau[e] && t.parent[v] != t.iota[e], std::string(name) + " blocked by deleted edge");
        }
        if (d == n || s->field.labels[d][i] != tcg::CellType::Redundant) continue;
        auto r = tcg::initial_reduce(x, t, cell);
        if (r.defective) continue;
        c.require(piF(d, cell) == piF(d, r.cell), std::string(name) + " initial reduction");
        ++identities;
        const auto& wc = x.cell(d + 1, s->field.up[d][i]);
        for (int item : cell) {
          if (x.is_vertex(item) || !t.is_deleted(x.edge_of(item))) continue;
          for (int end : {t.tau[x.edge_of(item)], t.iota[x.edge_of(item)]}) {
            auto face = wc;
            *std::find(face.begin(), face.end(), item) = end;
            std::sort(face.begin(), face.end());
            c.require(piF(d, face).empty(), std::string(name) + " vanishing face");
            ++identities;
          }
        }
      }
  }
  c.require(identities > 0, "no reduction identities exercised");
  c.note << cells << " cells, " << identities << " reduction identities";
}

void nu_complete(Check& c) {
  for (int m = 3; m <= 9; ++m) {
    std::string text = "graph " + std::to_string(m) + "\n";
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) text += "edge " + std::to_string(a) + " " + std::to_string(b) + "\n";
    auto p = tcg::max_vertex_disjoint_cycles(tcg::parse_graph_string(text));
    c.require(p.exact && p.nu == m / 3, "K_" + std::to_string(m) + " gives " + std::to_string(p.nu));
    c.note << "K_" << m << "=" << p.nu << " ";
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Criterion>> criteria = {
      {"oracle_equivalence", oracle_equivalence},
      {"one_robot_sanity", one_robot},
      {"tree_boundaries", tree_boundaries},
      {"s_graph_exact",
       [](Check& c) {
         exact_tc(c, "s_graph_m1", 2, 3, "s_graph", "product of 2 zero-divisors is nonzero");
         exact_tc(c, "s_graph_m2", 4, 5, "s_graph", "product of 4 zero-divisors is nonzero");
       }},
      {"vertex_disjoint_cycles_exact",
       [](Check& c) {
         exact_tc(c, "two_triangles", 1, 3, "vertex_disjoint", "psi_1 = ");
         exact_tc(c, "four_triangles", 2, 5, "vertex_disjoint", "psi_2 = ");
       }},
      {"complete_graph_k6", [](Check& c) { exact_tc(c, "k6", 1, 3, "vertex_disjoint", "nu = 2"); }},
      {"tree_two_degree_four",
       [](Check& c) {
         auto r = tcg::tc_report(oracle::corpus("tree_two_deg4"), 4);
         c.require(r.K == 2, "K = " + std::to_string(r.K));
         c.require(r.exact && *r.exact == 5, describe(r));
         c.note << describe(r);
       }},
      {"honest_interval_y",
       [](Check& c) {
         auto r = tcg::tc_report(oracle::corpus("y"), 2);
         c.require(r.lower == 2 && r.upper() == 3, describe(r));
         c.require(!r.exact, "exactness asserted");
         c.require(!r.budget_exhausted, "budget");
         c.note << describe(r);
       }},
      {"structural_invariants", structural},
      {"nu_complete_graphs", nu_complete},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.note << " exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (c.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " (" << std::fixed
              << std::setprecision(2) << secs << "s) " << c.note.str() << "\n";
    failures += c.ok ? 0 : 1;
  }
  return failures;
}
