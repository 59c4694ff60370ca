#include "sgdmds/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "sgdmds/datasets.hpp"
#include "sgdmds/stress.hpp"

namespace sgdmds::bench {

const char* to_string(Solver solver) noexcept { return solver == Solver::Sgd ? "sgd" : "smacof"; }

std::size_t first_stable_step(const SolverTrace& trace, double tol) {
  if (trace.empty()) return 0;
  for (std::size_t t = 1; t < trace.size(); ++t) {
    if (relative_change(trace[t - 1].raw_stress, trace[t].raw_stress) < tol) return trace[t].step;
  }
  return trace.back().step;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const TraceEntry* entry_at_step(const SolverTrace& trace, std::size_t step) {
  for (const TraceEntry& e : trace.entries())
    if (e.step == step) return &e;
  return nullptr;
}

}  // namespace

CellOutcome run_cell(const InputData& input, const CellSpec& spec) {
  CellOutcome out;
  BenchResult& r = out.result;
  r.dataset = input.name;
  r.solver = spec.solver;
  r.mode = spec.mode;
  r.seed = spec.seed;
  try {
    const auto start = std::chrono::steady_clock::now();
    std::optional<DissimilarityProvider> owned;
    const DissimilarityProvider* provider = nullptr;
    if (input.dissimilarities) {
      if (spec.mode == ProviderMode::Lazy)
        throw ConfigError("lazy mode needs feature input; dissimilarity matrices are precomputed");
      provider = input.dissimilarities.get();
    } else if (input.features) {
      owned = spec.mode == ProviderMode::Precomputed ? make_precomputed_provider(*input.features)
                                                     : make_lazy_provider(input.features);
      provider = &*owned;
      r.d = input.features->dim();
    } else {
      throw ConfigError("benchmark input '" + input.name + "' has no data");
    }
    r.n = provider->size();
    r.provider_seconds = seconds_since(start);

    const auto fit_start = std::chrono::steady_clock::now();
    if (spec.solver == Solver::Sgd) {
      SgdConfig cfg = spec.sgd;
      cfg.rng_seed = spec.seed;
      cfg.mode = spec.mode == ProviderMode::Precomputed ? SgdMode::PairStream : SgdMode::LazySample;
      SgdResult res = fit_sgd(*provider, spec.weights, cfg);
      out.trace = std::move(res.trace);
      out.embedding = std::move(res.embedding);
    } else {
      SmacofConfig cfg = spec.smacof;
      cfg.rng_seed = spec.seed;
      SmacofResult res = fit_smacof(*provider, spec.weights, cfg);
      out.trace = std::move(res.trace);
      out.embedding = std::move(res.embedding);
    }
    const double fit_seconds = seconds_since(fit_start);

    r.wall_time_total = r.provider_seconds + fit_seconds;
    if (out.trace.empty()) {
      const StressReport s = full_stress(*provider, spec.weights, out.embedding);
      r.final_raw_stress = s.raw_stress;
      r.final_normalized_stress = s.normalized_stress;
      r.wall_time_to_stable = r.wall_time_total;
    } else {
      r.final_raw_stress = out.trace.back().raw_stress;
      r.final_normalized_stress = out.trace.back().normalized_stress;
      r.steps_total = out.trace.back().step;
      r.epochs_or_iters_to_stable = first_stable_step(out.trace);
      const TraceEntry* stable = entry_at_step(out.trace, r.epochs_or_iters_to_stable);
      r.wall_time_to_stable = r.provider_seconds + (stable ? stable->elapsed_seconds : fit_seconds);
      r.wall_time_to_stable = std::min(r.wall_time_to_stable, r.wall_time_total);
    }
  } catch (const std::exception& e) {
    r.error = e.what();
    r.final_raw_stress = std::numeric_limits<double>::quiet_NaN();
    r.final_normalized_stress = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

std::vector<CellOutcome> run_cells(const std::vector<InputData>& inputs,
                                   const std::vector<std::pair<std::size_t, CellSpec>>& cells,
                                   std::size_t threads) {
  std::vector<CellOutcome> outcomes(cells.size());
  threads = std::max<std::size_t>(1, std::min(threads, cells.size()));
  if (threads == 1) {
    for (std::size_t c = 0; c < cells.size(); ++c) outcomes[c] = run_cell(inputs.at(cells[c].first), cells[c].second);
    return outcomes;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (std::size_t c = next++; c < cells.size(); c = next++) {
        outcomes[c] = run_cell(inputs.at(cells[c].first), cells[c].second);
        outcomes[c].result.timing_reliable = false;
      }
    });
  }
  for (auto& t : workers) t.join();
  return outcomes;
}

void write_results_csv(const std::vector<BenchResult>& results, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << kResultsHeader << '\n';
  for (const BenchResult& r : results) {
    std::string error = r.error;
    std::replace(error.begin(), error.end(), ',', ';');
    std::replace(error.begin(), error.end(), '\n', ' ');
    out << r.dataset << ',' << to_string(r.solver) << ',' << to_string(r.mode) << ',' << r.seed << ',' << r.n
        << ',' << r.d << ',' << format_real(r.final_raw_stress) << ',' << format_real(r.final_normalized_stress)
        << ',' << r.epochs_or_iters_to_stable << ',' << r.steps_total << ',' << format_real(r.provider_seconds) << ','
        << format_real(r.wall_time_total) << ',' << format_real(r.wall_time_to_stable) << ','
        << (r.timing_reliable ? 1 : 0) << ',' << error << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::string DatasetSummary::lower_stress_solver() const {
  if (!sgd_median_stress || !smacof_median_stress) return "n/a";
  if (*sgd_median_stress < *smacof_median_stress) return "sgd";
  if (*smacof_median_stress < *sgd_median_stress) return "smacof";
  return "tie";
}

std::vector<DatasetSummary> summarize(const std::vector<BenchResult>& results) {
  std::vector<std::string> order;
  std::map<std::string, std::map<Solver, std::pair<std::vector<double>, std::vector<double>>>> groups;
  std::map<std::string, std::size_t> failures;
  for (const BenchResult& r : results) {
    if (!groups.count(r.dataset)) order.push_back(r.dataset);
    auto& g = groups[r.dataset][r.solver];
    if (!r.ok()) {
      ++failures[r.dataset];
      continue;
    }
    g.first.push_back(r.final_normalized_stress);
    g.second.push_back(r.wall_time_to_stable);
  }
  std::vector<DatasetSummary> out;
  for (const std::string& name : order) {
    DatasetSummary s;
    s.dataset = name;
    s.failures = failures[name];
    for (auto& [solver, values] : groups[name]) {
      if (values.first.empty()) continue;
      if (solver == Solver::Sgd) {
        s.sgd_median_stress = median(values.first);
        s.sgd_median_time_to_stable = median(values.second);
      } else {
        s.smacof_median_stress = median(values.first);
        s.smacof_median_time_to_stable = median(values.second);
      }
    }
    out.push_back(s);
  }
  return out;
}

std::string format_summary(const std::vector<DatasetSummary>& summary) {
  const auto cell = [](const std::optional<double>& v, int precision) {
    if (!v) return std::string("-");
    std::ostringstream o;
    o << std::setprecision(precision) << *v;
    return o.str();
  };
  std::ostringstream o;
  o << std::left << std::setw(28) << "dataset" << std::setw(14) << "sgd_stress" << std::setw(14)
    << "smacof_stress" << std::setw(12) << "sgd_time" << std::setw(12) << "smacof_time" << "lower_stress\n";
  std::size_t sgd_wins = 0;
  for (const DatasetSummary& s : summary) {
    o << std::left << std::setw(28) << s.dataset << std::setw(14) << cell(s.sgd_median_stress, 6)
      << std::setw(14) << cell(s.smacof_median_stress, 6) << std::setw(12)
      << cell(s.sgd_median_time_to_stable, 4) << std::setw(12) << cell(s.smacof_median_time_to_stable, 4)
      << s.lower_stress_solver();
    if (s.failures) o << " (" << s.failures << " failed)";
    o << '\n';
    if (s.lower_stress_solver() == "sgd") ++sgd_wins;
  }
  o << "sgd lower median stress on " << sgd_wins << " of " << summary.size() << " datasets\n";
  return o.str();
}

std::size_t peak_rss_bytes() {
  std::ifstream status("/proc/self/status");
  std::string line;
  while (std::getline(status, line)) {
    if (line.rfind("VmHWM:", 0) == 0) {
      std::istringstream in(line.substr(6));
      std::size_t kb = 0;
      in >> kb;
      return kb * 1024;
    }
  }
  return 0;
}

bool reset_peak_rss() {
  std::ofstream clear("/proc/self/clear_refs");
  if (!clear) return false;
  clear << "5";
  clear.flush();
  return static_cast<bool>(clear);
}

std::size_t thread_cap_from_env() {
  const char* env = std::getenv("STRESS_SGD_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) return 1;
  return static_cast<std::size_t>(v);
}

}  // namespace sgdmds::bench
