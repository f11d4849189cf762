#include "netdyn/wpd.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <limits>
#include <map>
#include <ostream>
#include <tuple>

#include "netdyn/errors.hpp"
#include "netdyn/graph.hpp"
#include "netdyn/kuramoto.hpp"

namespace netdyn::bench {

namespace {

double cpu_ms() { return 1000.0 * static_cast<double>(std::clock()) / CLOCKS_PER_SEC; }

double rms_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(a.size()));
}

double median(std::vector<double> v) {
  std::erase_if(v, [](double x) { return std::isnan(x); });
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

std::string to_string(Backend b) { return b == Backend::Assembled ? "assembled" : "incidence"; }

Backend parse_backend(const std::string& name) {
  if (name == "assembled") return Backend::Assembled;
  if (name == "incidence") return Backend::Incidence;
  throw ParameterError("unknown backend: " + name);
}

std::vector<Tolerance> default_ladder() {
  std::vector<Tolerance> ladder;
  for (int e = 3; e <= 9; ++e) {
    const double tol = std::pow(10.0, -e);
    ladder.push_back({tol, tol});
  }
  return ladder;
}

std::uint64_t rep_seed(std::uint64_t seed, std::size_t rep) { return seed + rep; }
std::uint64_t init_seed(std::uint64_t graph_seed) { return graph_seed + 0x9E3779B97F4A7C15ULL; }

std::vector<WpdRow> run_wpd(const BenchConfig& cfg) {
  if (cfg.ladder.empty()) throw ParameterError("tolerance ladder is empty");
  if (cfg.backends.empty()) throw ParameterError("no backend selected");
  if (!(cfg.min_timing_ms >= 0.0)) throw ParameterError("min_timing_ms must be non-negative");

  std::vector<WpdRow> rows;
  for (std::size_t rep = 0; rep < cfg.reps; ++rep) {
    const std::uint64_t seed = rep_seed(cfg.seed, rep);
    const Graph g = watts_strogatz(cfg.n_nodes, cfg.degree, cfg.rewire, seed);

    kuramoto::Variant variant;
    variant.coupling = Coupling::Antisymmetric;
    const kuramoto::System sys =
        kuramoto::build(g, variant, cfg.coupling, kuramoto::InitialData::Random, init_seed(seed));
    const RhsFn incidence = kuramoto::incidence_rhs(oriented_incidence(g), sys.omega, cfg.coupling);

    SolverConfig ref_cfg;
    ref_cfg.rtol = cfg.reference_rtol;
    ref_cfg.atol = cfg.reference_atol;
    ref_cfg.save_steps = false;
    const std::vector<double> reference =
        integrate_dp5(sys.nf, sys.x0, cfg.span, sys.params, ref_cfg).final_state();

    for (const Tolerance& tol : cfg.ladder) {
      SolverConfig sc;
      sc.rtol = tol.rtol;
      sc.atol = tol.atol;
      sc.save_steps = false;
      for (Backend backend : cfg.backends) {
        const auto solve = [&] {
          return backend == Backend::Assembled ? integrate_dp5(sys.nf, sys.x0, cfg.span, sys.params, sc)
                                               : integrate_dp5(incidence, sys.x0, cfg.span, sc);
        };
        WpdRow row{cfg.n_nodes, backend, tol.rtol, tol.atol, std::numeric_limits<double>::quiet_NaN(),
                   0.0,         rep,     seed};
        const double start = cpu_ms();
        double elapsed = 0.0;
        std::size_t runs = 0;
        try {
          std::vector<double> final_state;
          do {
            final_state = solve().final_state();
            ++runs;
            elapsed = cpu_ms() - start;
          } while (elapsed < cfg.min_timing_ms);
          row.error = rms_distance(final_state, reference);
        } catch (const SolverError&) {
          elapsed = cpu_ms() - start;
          runs = std::max<std::size_t>(runs, 1);
        }
        row.cpu_ms_per_node = elapsed / static_cast<double>(runs) / static_cast<double>(cfg.n_nodes);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::vector<WpdSummary> summarize(const std::vector<WpdRow>& rows) {
  using Key = std::tuple<std::size_t, Backend, double, double>;
  std::vector<Key> order;
  std::map<Key, std::pair<std::vector<double>, std::vector<double>>> groups;
  std::map<Key, std::size_t> failures;
  for (const WpdRow& r : rows) {
    const Key key{r.n_nodes, r.backend, r.rtol, r.atol};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.first.push_back(r.error);
    it->second.second.push_back(r.cpu_ms_per_node);
    if (std::isnan(r.error)) ++failures[key];
  }
  std::vector<WpdSummary> out;
  for (const Key& key : order) {
    const auto& [errors, times] = groups.at(key);
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key), median(errors),
                   median(times), failures[key]});
  }
  return out;
}

void write_csv_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void write_csv_rows(const std::vector<WpdRow>& rows, std::ostream& out) {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  for (const WpdRow& r : rows) {
    out << r.n_nodes << ',' << to_string(r.backend) << ',' << r.rtol << ',' << r.atol << ',';
    if (std::isnan(r.error)) {
      out << "nan";
    } else {
      out << r.error;
    }
    out << ',' << r.cpu_ms_per_node << ',' << r.rep << ',' << r.seed << '\n';
  }
  out.precision(old);
}

}  // namespace netdyn::bench
