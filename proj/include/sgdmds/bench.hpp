#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sgdmds/data_model.hpp"
#include "sgdmds/sgd.hpp"
#include "sgdmds/smacof.hpp"

namespace sgdmds::bench {

enum class Solver { Sgd, Smacof };

const char* to_string(Solver solver) noexcept;

/// Relative traced-stress change that marks a run as stable, for both solvers.
inline constexpr double kStableRelTol = 1e-3;

/// One benchmark dataset: either feature rows (any provider mode) or a
/// ready-made precomputed dissimilarity matrix.
struct InputData {
  std::string name;
  std::shared_ptr<const Dataset> features;
  std::shared_ptr<const DissimilarityProvider> dissimilarities;
};

struct CellSpec {
  Solver solver = Solver::Sgd;
  ProviderMode mode = ProviderMode::Precomputed;
  std::uint64_t seed = 0;
  SgdConfig sgd;
  SmacofConfig smacof;
  WeightScheme weights;
};

/// One row of results.csv.
struct BenchResult {
  std::string dataset;
  Solver solver = Solver::Sgd;
  ProviderMode mode = ProviderMode::Precomputed;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t d = 0;
  double final_raw_stress = 0.0;
  double final_normalized_stress = 0.0;
  std::size_t epochs_or_iters_to_stable = 0;
  std::size_t steps_total = 0;
  double provider_seconds = 0.0;
  double wall_time_total = 0.0;
  double wall_time_to_stable = 0.0;
  bool timing_reliable = true;
  std::string error;

  bool ok() const noexcept { return error.empty(); }
};

struct CellOutcome {
  BenchResult result;
  SolverTrace trace;
  Embedding embedding;
};

/// First trace step t >= 1 whose relative change from step t-1 is below `tol`;
/// the last step when the run never stabilizes.
std::size_t first_stable_step(const SolverTrace& trace, double tol = kStableRelTol);

/// Builds the provider (timed; counted in wall times), runs the solver with the
/// cell's seed and fills a BenchResult. Exceptions become the error field.
CellOutcome run_cell(const InputData& input, const CellSpec& spec);

/// Runs cells in order, or across up to `threads` workers. Output order
/// matches `cells`; timing_reliable is cleared when threads > 1.
std::vector<CellOutcome> run_cells(const std::vector<InputData>& inputs,
                                   const std::vector<std::pair<std::size_t, CellSpec>>& cells,
                                   std::size_t threads);

/// Fixed results.csv header.
inline constexpr const char* kResultsHeader =
    "dataset,solver,mode,seed,n,d,final_raw_stress,final_normalized_stress,epochs_or_iters_to_stable,steps_total,"
    "provider_seconds,wall_time_total,wall_time_to_stable,timing_reliable,error";

void write_results_csv(const std::vector<BenchResult>& results, const std::filesystem::path& path);

/// Per-dataset comparison of the solvers' median final normalized stress.
struct DatasetSummary {
  std::string dataset;
  std::optional<double> sgd_median_stress;
  std::optional<double> smacof_median_stress;
  std::optional<double> sgd_median_time_to_stable;
  std::optional<double> smacof_median_time_to_stable;
  std::size_t failures = 0;

  /// "sgd", "smacof", "tie", or "n/a".
  std::string lower_stress_solver() const;
};

std::vector<DatasetSummary> summarize(const std::vector<BenchResult>& results);

std::string format_summary(const std::vector<DatasetSummary>& summary);

double median(std::vector<double> values);

/// Peak resident set size of this process (VmHWM), 0 if unavailable.
std::size_t peak_rss_bytes();

/// Resets the kernel's peak-RSS watermark; false if unsupported.
bool reset_peak_rss();

/// Cell-level worker cap from STRESS_SGD_THREADS (default 1).
std::size_t thread_cap_from_env();

}  // namespace sgdmds::bench
