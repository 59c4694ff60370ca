#include "sgdmds/stress.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace sgdmds {

namespace {

void check_sizes(const DissimilarityProvider& provider, const Embedding& emb) {
  if (provider.size() != emb.size())
    throw std::invalid_argument("provider has " + std::to_string(provider.size()) +
                                " points but embedding has " + std::to_string(emb.size()) + " rows");
}

StressReport make_report(long double num, long double den, std::size_t evaluated) {
  StressReport r;
  r.raw_stress = static_cast<double>(num);
  r.normalized_stress = den > 0.0L ? static_cast<double>(num / den) : (num > 0.0L ? 1.0 : 0.0);
  r.pair_count_evaluated = evaluated;
  return r;
}

}  // namespace

StressReport full_stress(const DissimilarityProvider& provider, const WeightScheme& scheme,
                         const Embedding& emb) {
  check_sizes(provider, emb);
  const std::size_t n = emb.size();
  long double num = 0.0L;
  long double den = 0.0L;
  const bool packed = provider.mode() == ProviderMode::Precomputed;
  std::size_t k = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      const double delta = packed ? provider.by_index(k) : provider(i, j);
      const double w = scheme(delta);
      const double r = delta - embedded_distance(emb, i, j);
      num += static_cast<long double>(w * r * r);
      den += static_cast<long double>(w * delta * delta);
    }
  }
  return make_report(num, den, k);
}

StressReport sampled_stress(const DissimilarityProvider& provider, const WeightScheme& scheme,
                            const Embedding& emb, std::size_t sample_count, std::uint64_t rng_seed) {
  check_sizes(provider, emb);
  if (provider.size() < 2) throw std::invalid_argument("sampled stress needs N >= 2");
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<std::size_t> first(0, provider.size() - 1);
  std::uniform_int_distribution<std::size_t> second(0, provider.size() - 2);
  PairSampler sampler = [&]() {
    const std::size_t i = first(rng);
    std::size_t j = second(rng);
    if (j >= i) ++j;
    return std::pair{i, j};
  };
  return sampled_stress(provider, scheme, emb, sample_count, sampler);
}

StressReport sampled_stress(const DissimilarityProvider& provider, const WeightScheme& scheme,
                            const Embedding& emb, std::size_t sample_count,
                            const PairSampler& sampler) {
  check_sizes(provider, emb);
  if (provider.size() < 2) throw std::invalid_argument("sampled stress needs N >= 2");
  if (sample_count < 1) throw std::invalid_argument("sample_count must be at least 1");
  long double num = 0.0L;
  long double den = 0.0L;
  for (std::size_t s = 0; s < sample_count; ++s) {
    const auto [i, j] = sampler();
    const double delta = provider(i, j);
    const double w = scheme(delta);
    const double r = delta - embedded_distance(emb, i, j);
    num += static_cast<long double>(w * r * r);
    den += static_cast<long double>(w * delta * delta);
  }
  // Scale by K/count; exactly 1 for an exhaustive sample.
  const long double scale =
      static_cast<long double>(provider.pair_count()) / static_cast<long double>(sample_count);
  StressReport r = make_report(num, den, sample_count);
  r.raw_stress = static_cast<double>(num * scale);
  return r;
}

PairGradient pair_gradient(double delta, double weight, std::span<const double> xi,
                           std::span<const double> xj) {
  if (xi.size() != xj.size()) throw std::invalid_argument("points have different dimensions");
  double s = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k) s += (xi[k] - xj[k]) * (xi[k] - xj[k]);
  const double d = std::sqrt(s);
  if (d == 0.0) throw DegeneratePairError("coincident points: pair gradient undefined");

  PairGradient g{std::vector<double>(xi.size()), std::vector<double>(xi.size())};
  const double c = 2.0 * weight * (d - delta) / d;
  for (std::size_t k = 0; k < xi.size(); ++k) {
    g.grad_i[k] = c * (xi[k] - xj[k]);
    g.grad_j[k] = -g.grad_i[k];
  }
  return g;
}

}  // namespace sgdmds
