#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "sgdmds/data_model.hpp"

namespace sgdmds {

/// Stress of a configuration.
///
/// raw_stress is sum_{i<j} w_ij (delta_ij - d_ij)^2. normalized_stress divides
/// it by sum_{i<j} w_ij delta_ij^2, which makes values comparable across
/// datasets of different scale (0 when every delta is 0 and the fit is exact).
struct StressReport {
  double raw_stress = 0.0;
  double normalized_stress = 0.0;
  std::size_t pair_count_evaluated = 0;
};

/// Exact stress over all N(N-1)/2 pairs, summed in canonical pair order with
/// long double accumulation. Works on either provider mode.
StressReport full_stress(const DissimilarityProvider& provider, const WeightScheme& scheme,
                         const Embedding& emb);

/// Returns the next pair to evaluate; i != j.
using PairSampler = std::function<std::pair<std::size_t, std::size_t>()>;

/// Monte-Carlo estimate of raw stress from `sample_count` uniformly drawn pairs
/// (with replacement), scaled by N(N-1)/2. The normalized value is the ratio
/// of the two sampled sums. Reproducible for a fixed seed.
StressReport sampled_stress(const DissimilarityProvider& provider, const WeightScheme& scheme,
                            const Embedding& emb, std::size_t sample_count, std::uint64_t rng_seed);

/// Same estimator driven by a caller-supplied sampler.
StressReport sampled_stress(const DissimilarityProvider& provider, const WeightScheme& scheme,
                            const Embedding& emb, std::size_t sample_count,
                            const PairSampler& sampler);

struct PairGradient {
  std::vector<double> grad_i;
  std::vector<double> grad_j;
};

/// Partial derivatives of w (delta - d)^2 with respect to xi and xj.
/// Throws DegeneratePairError when xi == xj, where the gradient is undefined.
PairGradient pair_gradient(double delta, double weight, std::span<const double> xi,
                           std::span<const double> xj);

}  // namespace sgdmds
