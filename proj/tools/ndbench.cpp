// Kuramoto work-precision benchmark on Watts-Strogatz graphs.
//
//   ndbench --nodes 10,100,1000 --tols 1e-3:1e-3,1e-6:1e-6 --out wpd.csv

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netdyn/errors.hpp"
#include "netdyn/graph.hpp"
#include "netdyn/wpd.hpp"

namespace {

std::vector<netdyn::bench::Tolerance> parse_tols(const std::string& spec) {
  std::vector<netdyn::bench::Tolerance> out;
  std::stringstream items(spec);
  std::string item;
  while (std::getline(items, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--tols", "expected rtol:atol, got " + item);
    try {
      out.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw CLI::ValidationError("--tols", "not a number in " + item);
    }
  }
  if (out.empty()) throw CLI::ValidationError("--tols", "empty ladder");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i].rtol < out[i - 1].rtol)) throw CLI::ValidationError("--tols", "rtol must decrease");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kuramoto work-precision benchmark"};

  std::vector<std::size_t> nodes{10, 100, 1000};
  netdyn::bench::BenchConfig base;
  std::string tols;
  std::string backend = "both";
  std::string out_path = "wpd.csv";
  std::string graph_out;

  app.add_option("--nodes", nodes, "Network sizes")->delimiter(',');
  app.add_option("--degree", base.degree, "Mean degree k")->capture_default_str();
  app.add_option("--rewire", base.rewire, "Rewiring probability")->capture_default_str();
  app.add_option("--tols", tols, "Ladder rtol:atol[,rtol:atol...] (default 1e-3..1e-9, atol = rtol)");
  app.add_option("--reps", base.reps, "Repetitions")->capture_default_str();
  app.add_option("--seed", base.seed, "Base seed")->capture_default_str();
  app.add_option("--backend", backend, "assembled|incidence|both")
      ->check(CLI::IsMember({"assembled", "incidence", "both"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "CSV output path")->capture_default_str();
  app.add_option("--graph-out", graph_out, "Edge list of the first repetition's graph (per size: <path>.<n>)");
  app.add_option("--coupling", base.coupling, "Coupling strength sigma")->capture_default_str();
  app.add_option("--min-timing-ms", base.min_timing_ms, "CPU time accumulated per timed solve")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    if (!tols.empty()) base.ladder = parse_tols(tols);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  }
  if (backend == "both") {
    base.backends = {netdyn::bench::Backend::Assembled, netdyn::bench::Backend::Incidence};
  } else {
    base.backends = {netdyn::bench::parse_backend(backend)};
  }

  std::ofstream csv(out_path);
  if (!csv) {
    std::cerr << "cannot open " << out_path << '\n';
    return 1;
  }
  netdyn::bench::write_csv_header(csv);

  try {
    for (std::size_t n : nodes) {
      netdyn::bench::BenchConfig cfg = base;
      cfg.n_nodes = n;
      if (!graph_out.empty()) {
        const std::string path = nodes.size() == 1 ? graph_out : graph_out + "." + std::to_string(n);
        netdyn::save_edge_list(
            netdyn::watts_strogatz(n, cfg.degree, cfg.rewire, netdyn::bench::rep_seed(cfg.seed, 0)), path);
      }
      const auto rows = netdyn::bench::run_wpd(cfg);
      netdyn::bench::write_csv_rows(rows, csv);
      csv.flush();

      for (const auto& s : netdyn::bench::summarize(rows)) {
        std::printf("N=%-5zu %-9s rtol=%-8.1e atol=%-8.1e median_error=%-12.4e median_ms_per_node=%-12.4e",
                    s.n_nodes, netdyn::bench::to_string(s.backend).c_str(), s.rtol, s.atol, s.median_error,
                    s.median_cpu_ms_per_node);
        if (s.failures) std::printf(" failures=%zu", s.failures);
        std::printf("\n");
      }
    }
  } catch (const netdyn::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
