#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "sgdmds/data_model.hpp"
#include "sgdmds/stress.hpp"

namespace sgdmds {

using Rng = std::mt19937_64;

enum class SgdMode {
  PairStream,  // every pair once per epoch, fresh permutation each epoch
  LazySample,  // i != j drawn with replacement, dissimilarity computed on demand
};

const char* to_string(SgdMode mode) noexcept;

/// How solver traces measure stress after each step.
struct TracePolicy {
  enum class Kind { Full, Sampled, Off };
  Kind kind = Kind::Full;
  std::size_t samples = 0;

  static TracePolicy full() { return {Kind::Full, 0}; }
  static TracePolicy sampled(std::size_t k) { return {Kind::Sampled, k}; }
  static TracePolicy off() { return {Kind::Off, 0}; }
};

/// Default sample size for sampled traces.
inline constexpr std::size_t kDefaultTraceSamples = 100000;

/// N above which traces switch to sampled stress unless configured otherwise.
inline constexpr std::size_t kSampledTraceThreshold = 20000;

struct SgdConfig {
  int n_epochs = 30;
  double eta0 = 0.5;
  double switch_fraction = 0.4;
  double decay_ratio = 10.0;
  std::size_t dim = 2;
  std::uint64_t rng_seed = 0;
  std::optional<double> init_scale;  // nullopt selects the automatic scale
  double early_stop_rel_tol = 1e-3;  // 0 disables early stopping
  SgdMode mode = SgdMode::PairStream;
  std::optional<std::size_t> lazy_updates_per_epoch;  // default N(N-1)/2
  std::optional<TracePolicy> trace_stress;            // default Full, Sampled above 20k points

  /// Throws ConfigError if any field is out of range.
  void validate() const;
};

/// Constants of the hybrid learning-rate schedule: exponential decay from
/// eta_max down by a factor decay_ratio at t_switch, then harmonic decay.
struct ScheduleState {
  double eta_max = 0.0;
  int t_switch = 1;
  double lambda = 0.0;
  int n_epochs = 1;

  /// eta_max = eta0 / w_min, t_switch = ceil(switch_fraction * n_epochs),
  /// lambda = ln(decay_ratio) / t_switch.
  static ScheduleState make(const SgdConfig& config, double w_min);
};

/// eta(epoch). Exponential before t_switch, eta_switch / (1 + epoch - t_switch)
/// after; both phases give eta_max / decay_ratio at t_switch.
/// Throws std::out_of_range for epoch outside [0, n_epochs).
double learning_rate(const ScheduleState& state, int epoch);

/// Coordinates i.i.d. uniform in [-scale/2, scale/2].
Embedding init_embedding(std::size_t n, std::size_t m, double scale, std::uint64_t rng_seed);

/// Max delta over min(1000, N(N-1)/2) pairs: every pair when there are at most
/// 1000, otherwise a seeded sample. Falls back to 1 when all sampled deltas are 0.
double auto_init_scale(const DissimilarityProvider& provider, std::uint64_t rng_seed);

/// init_embedding sized for `provider`, resolving an automatic scale. Shared by
/// both solvers so that runs with the same seed start from the same layout.
Embedding init_embedding(const DissimilarityProvider& provider, std::size_t m,
                         std::optional<double> scale, std::uint64_t rng_seed);

/// Smallest weight over all pairs (Precomputed) or over a seeded 1000-pair
/// sample (Lazy).
double estimate_min_weight(const DissimilarityProvider& provider, const WeightScheme& scheme,
                           std::uint64_t rng_seed);

/// One clipped pair move. With mu = min(weight * eta, 1), each endpoint moves
/// (mu / 2)(d - delta) along the pair axis in opposite directions, so the
/// midpoint is preserved and the new distance is (1 - mu) d + mu delta.
/// Coincident endpoints are first separated by a tiny seeded random offset.
void apply_pair_update(Embedding& emb, std::size_t i, std::size_t j, double delta, double weight,
                       double eta, Rng& rng);

/// Optional per-visit observer, used for coverage checks.
using PairVisitor = std::function<void(std::size_t, std::size_t)>;

/// One pair of a shuffled epoch, carried with its dissimilarity.
struct PairRecord {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  double delta = 0.0;
};

/// Pair counts up to which epochs shuffle PairRecords rather than indices.
inline constexpr std::size_t kDefaultRecordPairs = std::size_t{1} << 26;

/// Reusable permutation buffer for PairStream epochs.
///
/// Both forms apply the same Fisher-Yates permutation to the canonical pair
/// order, so they yield identical trajectories. Records avoid decoding and
/// gathering per visit at 16 bytes per pair; larger inputs fall back to
/// 4-byte indices.
class PairOrder {
 public:
  explicit PairOrder(std::size_t max_record_pairs = kDefaultRecordPairs) : max_record_pairs_(max_record_pairs) {}

  /// Refills with the canonical order 0..K-1 and shuffles.
  void reshuffle(std::size_t pair_count, Rng& rng);

  /// Shuffles records of a Precomputed provider, or indices when it has more
  /// than max_record_pairs pairs.
  void reshuffle(const DissimilarityProvider& provider, Rng& rng);

  bool uses_records() const noexcept { return !records_.empty(); }
  const std::vector<std::uint32_t>& indices() const noexcept { return order_; }
  const std::vector<PairRecord>& records() const noexcept { return records_; }

 private:
  std::size_t max_record_pairs_;
  std::vector<std::uint32_t> order_;
  std::vector<PairRecord> records_;
};

/// Visits each pair exactly once in a fresh random order, updating in place.
/// Requires a Precomputed provider. Returns N(N-1)/2.
std::size_t run_epoch_pairstream(const DissimilarityProvider& provider, const WeightScheme& scheme,
                                 Embedding& emb, double eta, Rng& rng, PairOrder& order,
                                 const PairVisitor& visit = nullptr);

std::size_t run_epoch_pairstream(const DissimilarityProvider& provider, const WeightScheme& scheme,
                                 Embedding& emb, double eta, Rng& rng);

/// `updates` with-replacement samples; allocates nothing. Returns `updates`.
std::size_t run_epoch_lazysample(const DissimilarityProvider& provider, const WeightScheme& scheme,
                                 Embedding& emb, double eta, std::size_t updates, Rng& rng,
                                 const PairVisitor& visit = nullptr);

struct SgdResult {
  Embedding embedding;
  SolverTrace trace;
  int epochs_run = 0;
  bool stopped_early = false;
};

/// Full optimizer: shared initializer, w_min-normalized schedule, one trace
/// entry for the initial layout and one per epoch, early stop on relative
/// traced-stress change. Throws SolverError on non-finite coordinates.
SgdResult fit_sgd(const DissimilarityProvider& provider, const WeightScheme& scheme,
                  const SgdConfig& config);

/// Resolved trace policy for a given N.
TracePolicy resolve_trace_policy(const std::optional<TracePolicy>& requested, std::size_t n);

/// Stress for a trace entry under `policy` (must not be Off).
StressReport traced_stress(const DissimilarityProvider& provider, const WeightScheme& scheme,
                           const Embedding& emb, const TracePolicy& policy, std::uint64_t seed);

/// Independent stream seed derived from a user seed (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// |prev - cur| / max(prev, machine epsilon).
double relative_change(double previous, double current) noexcept;

}  // namespace sgdmds
