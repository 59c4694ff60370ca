#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>

#include "sgdmds/data_model.hpp"

namespace sgdmds {

struct SmacofConfig {
  int max_iter = 300;
  double rel_tol = 1e-4;
  std::size_t dim = 2;
  std::uint64_t rng_seed = 0;
  std::optional<double> init_scale;
  bool trace_stress = true;

  void validate() const;
};

/// Guttman transform X' = V^+ B(X) X for a fixed provider and weight scheme.
///
/// For uniform weights V^+ B(X) X reduces to B(X) X / N. For general weights
/// the Cholesky factor of V + 11^T is computed once at construction; since
/// B(X) X has zero column sums, solving (V + 11^T) X' = B(X) X gives the
/// pseudo-inverse solution.
class GuttmanTransform {
 public:
  /// Throws SolverError if V + 11^T is not positive definite.
  GuttmanTransform(const DissimilarityProvider& provider, const WeightScheme& scheme);
  ~GuttmanTransform();
  GuttmanTransform(GuttmanTransform&&) noexcept;
  GuttmanTransform& operator=(GuttmanTransform&&) noexcept;

  /// Returns X'. When `input_stress` is non-null it receives the raw stress of
  /// `x`, computed in the same pass over the pairs.
  Embedding operator()(const Embedding& x, double* input_stress = nullptr,
                       double* input_normalized = nullptr) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One majorization step; factors V on every call for non-uniform weights,
/// so loops should hold a GuttmanTransform instead.
Embedding guttman_step(const DissimilarityProvider& provider, const WeightScheme& scheme,
                       const Embedding& emb);

struct SmacofResult {
  Embedding embedding;
  SolverTrace trace;
  int iterations = 0;
  bool converged = false;
};

/// Iterates the Guttman transform from the shared random initializer until
/// (s_prev - s) / max(s_prev, eps) < rel_tol or max_iter. Trace entry t holds
/// the stress of X_t; the returned embedding is the last traced one.
SmacofResult fit_smacof(const DissimilarityProvider& provider, const WeightScheme& scheme,
                        const SmacofConfig& config);

}  // namespace sgdmds
