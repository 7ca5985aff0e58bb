#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tcgraphs/tcgraphs.hpp"

namespace {

struct RunConfig {
  std::string command;
  std::string input;
  int n = 1;
  bool ordered = false;
  std::uint64_t budget = 1000000;
  long long cycle_budget = 5000000;
  std::string out;
};

std::string header(const RunConfig& c) {
  std::ostringstream h;
  h << "# tc-graphs " << c.command << "\n";
  h << "# input = " << c.input << "\n";
  if (c.command != "stats") h << "# n = " << c.n << "\n";
  if (c.command == "homology") h << "# ordered = " << (c.ordered ? "true" : "false") << "\n";
  if (c.command == "tc") h << "# budget = " << c.budget << "\n";
  h << "# cycle_budget = " << c.cycle_budget << "\n";
  return h.str();
}

int cmd_stats(const RunConfig& c, std::ostream& out) {
  tcg::Graph g = tcg::load_graph(c.input);
  auto s = tcg::graph_stats(g);
  out << "vertices = " << s.vertices << "\n";
  out << "edges = " << s.edges << "\n";
  out << "m = " << s.m << "\n";
  out << "beta = " << s.beta << "\n";
  out << "connected = " << (tcg::is_connected(g) ? "true" : "false") << "\n";
  auto packing = tcg::max_vertex_disjoint_cycles(g, c.cycle_budget);
  out << "nu = " << packing.nu << "\n";
  out << "nu_exact = " << (packing.exact ? "true" : "false") << "\n";
  std::string verdict = "no";
  try {
    tcg::Graph sub = tcg::subdivide_for_n(g, 1);
    auto check = tcg::is_s_graph(sub, tcg::choose_spanning_tree(sub));
    verdict = check.ok ? "yes" : "no (" + check.diagnostics + ")";
  } catch (const tcg::Error& e) {
    verdict = std::string("no (") + e.what() + ")";
  }
  out << "s_graph = " << verdict << "\n";
  return packing.exact ? 0 : 1;
}

int cmd_homology(const RunConfig& c, std::ostream& out) {
  tcg::Graph g = tcg::load_graph(c.input);
  if (c.n < 1) throw tcg::Error("--n must be at least 1");
  if (!tcg::is_connected(g)) {
    out << "status = not_connected\n";
    return 1;
  }
  tcg::Graph sub = tcg::subdivide_for_n(g, c.n);
  out << "subdivided_vertices = " << sub.vertex_count() << "\n";
  out << "subdivided_edges = " << sub.edge_count() << "\n";
  tcg::Complex x = c.ordered ? tcg::enumerate_ordered(sub, c.n) : tcg::enumerate_unordered(sub, c.n);
  std::vector<int> counts;
  for (int d = 0; d <= c.n; ++d) counts.push_back(static_cast<int>(x.count(d)));
  out << "cells = " << tcg::join(counts) << "\n";
  auto cellular = tcg::cellular_homology(x);
  out << "betti_cellular = " << tcg::join(cellular) << "\n";
  bool connected = tcg::is_connected(x);
  if (!c.ordered) {
    auto space = tcg::build_morse_space(sub, tcg::choose_spanning_tree(sub), c.n);
    std::vector<int> crit;
    bool zero = true;
    for (int d = 0; d <= c.n; ++d) {
      crit.push_back(static_cast<int>(space->morse.critical[d].size()));
      if (!space->morse.boundary[d].is_zero()) zero = false;
    }
    out << "critical_cells = " << tcg::join(crit) << "\n";
    out << "betti_morse = " << tcg::join(space->homology.betti) << "\n";
    out << "agreement = " << (space->homology.betti == cellular ? "true" : "false") << "\n";
    out << "morse_boundary_zero = " << (zero ? "true" : "false") << "\n";
  }
  out << "status = " << (connected ? "ok" : "not_connected") << "\n";
  return connected ? 0 : 1;
}

int cmd_tc(const RunConfig& c, std::ostream& out) {
  tcg::Graph g = tcg::load_graph(c.input);
  tcg::TCOptions opts;
  opts.budget = c.budget;
  opts.cycle_budget = c.cycle_budget;
  tcg::TCReport r = tcg::tc_report(g, c.n, opts);
  out << tcg::format_report(r);
  return r.status == tcg::TCStatus::ok && !r.budget_exhausted ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Configuration spaces of graphs: homology and topological complexity bounds"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* stats = app.add_subcommand("stats", "graph statistics, nu and the S-graph verdict");
  stats->add_option("file", cfg.input, "graph file")->required();
  stats->add_option("--cycle-budget", cfg.cycle_budget, "node budget for the cycle packing search");

  auto* homology = app.add_subcommand("homology", "cell counts and Betti numbers of UD^n or D^n");
  homology->add_option("file", cfg.input, "graph file")->required();
  homology->add_option("--n", cfg.n, "number of robots")->required();
  homology->add_flag("--ordered", cfg.ordered, "use the ordered space D^n");

  auto* tc = app.add_subcommand("tc", "bounds on the topological complexity of UD^n");
  tc->add_option("file", cfg.input, "graph file")->required();
  tc->add_option("--n", cfg.n, "number of robots")->required();
  tc->add_option("--budget", cfg.budget, "monomial evaluation budget for the cup-length search");
  tc->add_option("--cycle-budget", cfg.cycle_budget, "node budget for the cycle packing search");
  tc->add_option("--out", cfg.out, "write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();

  std::ostringstream body;
  int code = 0;
  try {
    if (cfg.command == "stats") code = cmd_stats(cfg, body);
    else if (cfg.command == "homology") code = cmd_homology(cfg, body);
    else code = cmd_tc(cfg, body);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::string text = header(cfg) + body.str();
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out);
    if (!f) {
      std::cerr << "error: cannot write " << cfg.out << "\n";
      return 2;
    }
    f << text;
  } else {
    std::cout << text;
  }
  return code;
}
