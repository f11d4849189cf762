#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "netdyn/solver.hpp"

namespace netdyn::bench {

enum class Backend { Assembled, Incidence };

std::string to_string(Backend b);
Backend parse_backend(const std::string& name);

struct Tolerance {
  double rtol;
  double atol;
};

/// rtol = atol = 1e-3, 1e-4, ..., 1e-9
std::vector<Tolerance> default_ladder();

struct BenchConfig {
  std::size_t n_nodes = 100;
  std::size_t degree = 4;
  double rewire = 0.2;
  double coupling = 5.0;
  TimeSpan span{0.0, 10.0};
  std::vector<Tolerance> ladder = default_ladder();
  std::size_t reps = 10;
  std::uint64_t seed = 42;
  std::vector<Backend> backends{Backend::Assembled, Backend::Incidence};
  /// Each timed solve is repeated until this much CPU time has accumulated.
  double min_timing_ms = 5.0;
  double reference_rtol = 1e-12;
  double reference_atol = 1e-14;
};

struct WpdRow {
  std::size_t n_nodes;
  Backend backend;
  double rtol;
  double atol;
  double error;  // NaN when the solve failed
  double cpu_ms_per_node;
  std::size_t rep;
  std::uint64_t seed;
};

/// Seeds of repetition r: the graph uses seed + r, the random initial data
/// seed + r + 0x9E3779B97F4A7C15 so the two streams differ.
std::uint64_t rep_seed(std::uint64_t seed, std::size_t rep);
std::uint64_t init_seed(std::uint64_t graph_seed);

/// For every repetition: a fresh Watts-Strogatz graph and random Kuramoto data,
/// a tight reference solve, then one timed solve per backend and ladder entry.
/// Error is ||u(t1) - u_ref(t1)||_2 / sqrt(N). Throws if the reference fails.
std::vector<WpdRow> run_wpd(const BenchConfig& cfg);

struct WpdSummary {
  std::size_t n_nodes;
  Backend backend;
  double rtol;
  double atol;
  double median_error;
  double median_cpu_ms_per_node;
  std::size_t failures;
};

/// Medians over repetitions per (n_nodes, backend, rtol, atol), in first-seen order.
std::vector<WpdSummary> summarize(const std::vector<WpdRow>& rows);

inline constexpr const char* kCsvHeader = "n_nodes,backend,rtol,atol,error,cpu_ms_per_node,rep,seed";

void write_csv_header(std::ostream& out);
void write_csv_rows(const std::vector<WpdRow>& rows, std::ostream& out);

}  // namespace netdyn::bench
