#include "sgdmds/sgd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sgdmds {

namespace seed_stream {
constexpr std::uint64_t kInitCoords = 1;
constexpr std::uint64_t kInitScale = 2;
constexpr std::uint64_t kMinWeight = 3;
constexpr std::uint64_t kUpdates = 4;
constexpr std::uint64_t kTrace = 5;
}  // namespace seed_stream

constexpr double kJitterScale = 1e-9;
constexpr std::size_t kScaleSamplePairs = 1000;
constexpr std::size_t kMinWeightSamplePairs = 1000;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

const char* to_string(SgdMode mode) noexcept {
  return mode == SgdMode::PairStream ? "pairstream" : "lazysample";
}

void SgdConfig::validate() const {
  if (n_epochs < 1) throw ConfigError("n_epochs must be at least 1");
  if (!(eta0 > 0.0) || !std::isfinite(eta0)) throw ConfigError("eta0 must be positive and finite");
  if (!(switch_fraction > 0.0 && switch_fraction < 1.0))
    throw ConfigError("switch_fraction must lie in (0, 1)");
  if (!(decay_ratio > 1.0) || !std::isfinite(decay_ratio))
    throw ConfigError("decay_ratio must be finite and greater than 1");
  if (dim < 1) throw ConfigError("target dimension must be at least 1");
  if (init_scale && (!(*init_scale > 0.0) || !std::isfinite(*init_scale)))
    throw ConfigError("init_scale must be positive and finite");
  if (!(early_stop_rel_tol >= 0.0) || !std::isfinite(early_stop_rel_tol))
    throw ConfigError("early_stop_rel_tol must be non-negative");
  if (trace_stress && trace_stress->kind == TracePolicy::Kind::Sampled && trace_stress->samples < 1)
    throw ConfigError("sampled trace needs at least one sample");
  const double t_switch = std::ceil(switch_fraction * n_epochs);
  if (t_switch < 1.0 || t_switch > n_epochs) throw ConfigError("switch point falls outside the epoch range");
}

ScheduleState ScheduleState::make(const SgdConfig& config, double w_min) {
  config.validate();
  if (!(w_min > 0.0) || !std::isfinite(w_min)) throw ConfigError("w_min must be positive and finite");
  ScheduleState s;
  s.eta_max = config.eta0 / w_min;
  s.t_switch = static_cast<int>(std::ceil(config.switch_fraction * config.n_epochs));
  s.lambda = std::log(config.decay_ratio) / s.t_switch;
  s.n_epochs = config.n_epochs;
  return s;
}

double learning_rate(const ScheduleState& state, int epoch) {
  if (epoch < 0 || epoch >= state.n_epochs)
    throw std::out_of_range("epoch " + std::to_string(epoch) + " outside [0, " +
                            std::to_string(state.n_epochs) + ")");
  if (epoch < state.t_switch) return state.eta_max * std::exp(-state.lambda * epoch);
  const double eta_switch = state.eta_max * std::exp(-state.lambda * state.t_switch);
  return eta_switch / (1.0 + static_cast<double>(epoch - state.t_switch));
}

Embedding init_embedding(std::size_t n, std::size_t m, double scale, std::uint64_t rng_seed) {
  if (n < 2) throw ConfigError("embedding needs at least 2 points");
  if (m < 1) throw ConfigError("embedding needs at least 1 dimension");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigError("init scale must be positive");
  Rng rng(derive_seed(rng_seed, seed_stream::kInitCoords));
  std::uniform_real_distribution<double> coord(-scale / 2.0, scale / 2.0);
  Embedding emb(n, m);
  for (double& v : emb.coords()) v = coord(rng);
  return emb;
}

double auto_init_scale(const DissimilarityProvider& provider, std::uint64_t rng_seed) {
  const std::size_t n = provider.size();
  double max_delta = 0.0;
  if (provider.pair_count() <= kScaleSamplePairs) {
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) max_delta = std::max(max_delta, provider(i, j));
  } else {
    Rng rng(derive_seed(rng_seed, seed_stream::kInitScale));
    std::uniform_int_distribution<std::size_t> first(0, n - 1);
    std::uniform_int_distribution<std::size_t> second(0, n - 2);
    for (std::size_t s = 0; s < kScaleSamplePairs; ++s) {
      const std::size_t i = first(rng);
      std::size_t j = second(rng);
      if (j >= i) ++j;
      max_delta = std::max(max_delta, provider(i, j));
    }
  }
  return max_delta > 0.0 ? max_delta : 1.0;
}

Embedding init_embedding(const DissimilarityProvider& provider, std::size_t m,
                         std::optional<double> scale, std::uint64_t rng_seed) {
  const double s = scale ? *scale : auto_init_scale(provider, rng_seed);
  return init_embedding(provider.size(), m, s, rng_seed);
}

double estimate_min_weight(const DissimilarityProvider& provider, const WeightScheme& scheme,
                           std::uint64_t rng_seed) {
  if (scheme.kind == WeightKind::Uniform) return 1.0;
  const std::size_t n = provider.size();
  double w_min = std::numeric_limits<double>::infinity();
  if (provider.mode() == ProviderMode::Precomputed) {
    for (double delta : provider.packed()) w_min = std::min(w_min, scheme(delta));
  } else if (provider.pair_count() <= kMinWeightSamplePairs) {
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) w_min = std::min(w_min, scheme(provider(i, j)));
  } else {
    Rng rng(derive_seed(rng_seed, seed_stream::kMinWeight));
    std::uniform_int_distribution<std::size_t> first(0, n - 1);
    std::uniform_int_distribution<std::size_t> second(0, n - 2);
    for (std::size_t s = 0; s < kMinWeightSamplePairs; ++s) {
      const std::size_t i = first(rng);
      std::size_t j = second(rng);
      if (j >= i) ++j;
      w_min = std::min(w_min, scheme(provider(i, j)));
    }
  }
  return w_min;
}

namespace {

void separate_coincident(double* xi, std::size_t m, double delta, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  double norm = 0.0;
  std::vector<double> dir(m);
  while (norm == 0.0) {
    norm = 0.0;
    for (double& v : dir) {
      v = gauss(rng);
      norm += v * v;
    }
    norm = std::sqrt(norm);
  }
  const double step = kJitterScale * std::max(delta, 1.0) / norm;
  for (std::size_t k = 0; k < m; ++k) xi[k] += step * dir[k];
}

// M > 0 fixes the dimension at compile time; M == 0 reads it from m. Both
// evaluate the same expressions in the same order.
template <std::size_t M>
inline void update_pair(double* xi, double* xj, std::size_t m, double delta, double weight, double eta,
                        Rng& rng) {
  if constexpr (M > 0) m = M;
  double d2 = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double t = xi[k] - xj[k];
    d2 += t * t;
  }
  double d = std::sqrt(d2);
  if (d == 0.0) [[unlikely]] {
    separate_coincident(xi, m, delta, rng);
    d2 = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double t = xi[k] - xj[k];
      d2 += t * t;
    }
    d = std::sqrt(d2);
  }
  const double mu = std::min(weight * eta, 1.0);
  const double f = 0.5 * mu * (d - delta) / d;
  for (std::size_t k = 0; k < m; ++k) {
    const double r = f * (xi[k] - xj[k]);
    xi[k] -= r;
    xj[k] += r;
  }
}

template <std::size_t M>
void sweep_records(const std::vector<PairRecord>& records, const WeightScheme& scheme, double* x,
                   std::size_t m, double eta, Rng& rng, const PairVisitor& visit) {
  for (const PairRecord& r : records) {
    if (visit) visit(r.i, r.j);
    update_pair<M>(x + r.i * m, x + r.j * m, m, r.delta, scheme(r.delta), eta, rng);
  }
}

template <std::size_t M>
void sweep_indices(const std::vector<std::uint32_t>& order, const DissimilarityProvider& provider,
                   const WeightScheme& scheme, double* x, std::size_t m, double eta, Rng& rng,
                   const PairVisitor& visit) {
  const std::size_t n = provider.size();
  for (const std::uint32_t k : order) {
    const auto [i, j] = pair_from_index(k, n);
    const double delta = provider.by_index(k);
    if (visit) visit(i, j);
    update_pair<M>(x + i * m, x + j * m, m, delta, scheme(delta), eta, rng);
  }
}

template <std::size_t M>
void sweep_samples(const DissimilarityProvider& provider, const WeightScheme& scheme, double* x,
                   std::size_t m, double eta, std::size_t updates, Rng& rng, const PairVisitor& visit) {
  const std::size_t n = provider.size();
  std::uniform_int_distribution<std::size_t> first(0, n - 1);
  std::uniform_int_distribution<std::size_t> second(0, n - 2);
  for (std::size_t s = 0; s < updates; ++s) {
    const std::size_t i = first(rng);
    std::size_t j = second(rng);
    if (j >= i) ++j;
    const double delta = provider(i, j);
    if (visit) visit(i, j);
    update_pair<M>(x + i * m, x + j * m, m, delta, scheme(delta), eta, rng);
  }
}

}  // namespace

void apply_pair_update(Embedding& emb, std::size_t i, std::size_t j, double delta, double weight,
                       double eta, Rng& rng) {
  if (i == j) throw std::invalid_argument("pair update needs i != j");
  if (i >= emb.size() || j >= emb.size()) throw std::out_of_range("pair update index out of range");
  if (!(eta > 0.0)) throw std::invalid_argument("learning rate must be positive");
  update_pair<0>(emb.row(i).data(), emb.row(j).data(), emb.dim(), delta, weight, eta, rng);
}

void PairOrder::reshuffle(std::size_t pair_count, Rng& rng) {
  if (pair_count > std::numeric_limits<std::uint32_t>::max())
    throw CapacityError(pair_count * sizeof(std::uint32_t));
  records_.clear();
  order_.resize(pair_count);
  std::iota(order_.begin(), order_.end(), std::uint32_t{0});
  std::shuffle(order_.begin(), order_.end(), rng);
}

void PairOrder::reshuffle(const DissimilarityProvider& provider, Rng& rng) {
  if (provider.mode() != ProviderMode::Precomputed)
    throw ConfigError("pair-stream epochs need a precomputed provider");
  const std::size_t count = provider.pair_count();
  if (count > max_record_pairs_ || count == 0) {
    reshuffle(count, rng);
    return;
  }
  order_.clear();
  records_.resize(count);
  const std::size_t n = provider.size();
  const std::span<const double> packed = provider.packed();
  std::size_t k = 0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++k)
      records_[k] = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), packed[k]};
  std::shuffle(records_.begin(), records_.end(), rng);
}

std::size_t run_epoch_pairstream(const DissimilarityProvider& provider, const WeightScheme& scheme,
                                 Embedding& emb, double eta, Rng& rng, PairOrder& order,
                                 const PairVisitor& visit) {
  if (provider.mode() != ProviderMode::Precomputed)
    throw ConfigError("pair-stream epochs need a precomputed provider");
  if (provider.size() != emb.size()) throw std::invalid_argument("provider/embedding size mismatch");
  const std::size_t m = emb.dim();
  order.reshuffle(provider, rng);
  double* x = emb.coords().data();
  if (order.uses_records()) {
    if (m == 2)
      sweep_records<2>(order.records(), scheme, x, m, eta, rng, visit);
    else
      sweep_records<0>(order.records(), scheme, x, m, eta, rng, visit);
  } else {
    if (m == 2)
      sweep_indices<2>(order.indices(), provider, scheme, x, m, eta, rng, visit);
    else
      sweep_indices<0>(order.indices(), provider, scheme, x, m, eta, rng, visit);
  }
  return provider.pair_count();
}

std::size_t run_epoch_pairstream(const DissimilarityProvider& provider, const WeightScheme& scheme,
                                 Embedding& emb, double eta, Rng& rng) {
  PairOrder order;
  return run_epoch_pairstream(provider, scheme, emb, eta, rng, order);
}

std::size_t run_epoch_lazysample(const DissimilarityProvider& provider, const WeightScheme& scheme,
                                 Embedding& emb, double eta, std::size_t updates, Rng& rng,
                                 const PairVisitor& visit) {
  if (provider.size() != emb.size()) throw std::invalid_argument("provider/embedding size mismatch");
  const std::size_t m = emb.dim();
  double* x = emb.coords().data();
  if (m == 2)
    sweep_samples<2>(provider, scheme, x, m, eta, updates, rng, visit);
  else
    sweep_samples<0>(provider, scheme, x, m, eta, updates, rng, visit);
  return updates;
}

TracePolicy resolve_trace_policy(const std::optional<TracePolicy>& requested, std::size_t n) {
  if (requested) return *requested;
  return n > kSampledTraceThreshold ? TracePolicy::sampled(kDefaultTraceSamples) : TracePolicy::full();
}

StressReport traced_stress(const DissimilarityProvider& provider, const WeightScheme& scheme,
                           const Embedding& emb, const TracePolicy& policy, std::uint64_t seed) {
  switch (policy.kind) {
    case TracePolicy::Kind::Full:
      return full_stress(provider, scheme, emb);
    case TracePolicy::Kind::Sampled:
      // Same pairs every call so consecutive entries are directly comparable.
      return sampled_stress(provider, scheme, emb, policy.samples, seed);
    case TracePolicy::Kind::Off:
      break;
  }
  throw std::logic_error("stress tracing is disabled");
}

double relative_change(double previous, double current) noexcept {
  return std::abs(previous - current) / std::max(previous, std::numeric_limits<double>::epsilon());
}

SgdResult fit_sgd(const DissimilarityProvider& provider, const WeightScheme& scheme,
                  const SgdConfig& config) {
  config.validate();
  const std::size_t n = provider.size();
  if (n < 2) throw ConfigError("SGD needs at least 2 points");
  if (config.mode == SgdMode::PairStream && provider.mode() != ProviderMode::Precomputed)
    throw ConfigError("pair-stream mode needs a precomputed provider; use lazy sampling instead");

  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };

  SgdResult result;
  result.embedding = init_embedding(provider, config.dim, config.init_scale, config.rng_seed);
  Embedding& emb = result.embedding;

  const double w_min = estimate_min_weight(provider, scheme, config.rng_seed);
  const ScheduleState schedule = ScheduleState::make(config, w_min);
  const TracePolicy policy = resolve_trace_policy(config.trace_stress, n);
  const bool tracing = policy.kind != TracePolicy::Kind::Off;
  const std::uint64_t trace_seed = derive_seed(config.rng_seed, seed_stream::kTrace);
  const std::size_t lazy_updates = config.lazy_updates_per_epoch.value_or(provider.pair_count());

  double previous = 0.0;
  if (tracing) {
    const StressReport s = traced_stress(provider, scheme, emb, policy, trace_seed);
    result.trace.append({0, s.raw_stress, s.normalized_stress, std::nullopt, elapsed()});
    previous = s.raw_stress;
  }

  Rng rng(derive_seed(config.rng_seed, seed_stream::kUpdates));
  PairOrder order;
  for (int epoch = 0; epoch < config.n_epochs; ++epoch) {
    const double eta = learning_rate(schedule, epoch);
    if (config.mode == SgdMode::PairStream)
      run_epoch_pairstream(provider, scheme, emb, eta, rng, order);
    else
      run_epoch_lazysample(provider, scheme, emb, eta, lazy_updates, rng);
    result.epochs_run = epoch + 1;

    if (!emb.all_finite())
      throw SolverError("SGD produced non-finite coordinates at epoch " + std::to_string(epoch));

    if (tracing) {
      const StressReport s = traced_stress(provider, scheme, emb, policy, trace_seed);
      result.trace.append({static_cast<std::size_t>(epoch + 1), s.raw_stress, s.normalized_stress, eta,
                           elapsed()});
      const double change = relative_change(previous, s.raw_stress);
      previous = s.raw_stress;
      if (config.early_stop_rel_tol > 0.0 && change < config.early_stop_rel_tol) {
        result.stopped_early = epoch + 1 < config.n_epochs;
        break;
      }
    }
  }
  return result;
}

}  // namespace sgdmds
