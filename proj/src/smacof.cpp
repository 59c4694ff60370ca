#include "sgdmds/smacof.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgdmds/sgd.hpp"

namespace sgdmds {

void SmacofConfig::validate() const {
  if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
  if (!(rel_tol >= 0.0) || !std::isfinite(rel_tol)) throw ConfigError("rel_tol must be non-negative");
  if (dim < 1) throw ConfigError("target dimension must be at least 1");
  if (init_scale && (!(*init_scale > 0.0) || !std::isfinite(*init_scale)))
    throw ConfigError("init_scale must be positive and finite");
}

struct GuttmanTransform::Impl {
  const DissimilarityProvider* provider = nullptr;
  WeightScheme scheme;
  bool uniform = true;
  Eigen::LLT<Eigen::MatrixXd> factor;
};

GuttmanTransform::GuttmanTransform(const DissimilarityProvider& provider, const WeightScheme& scheme)
    : impl_(std::make_unique<Impl>()) {
  impl_->provider = &provider;
  impl_->scheme = scheme;
  impl_->uniform = scheme.kind == WeightKind::Uniform;
  if (impl_->uniform) return;

  const auto n = static_cast<Eigen::Index>(provider.size());
  // V + 11^T: off-diagonal 1 - w_ij, diagonal sum_j w_ij + 1.
  Eigen::MatrixXd v = Eigen::MatrixXd::Ones(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double w = scheme(provider(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
      v(i, j) -= w;
      v(j, i) -= w;
      v(i, i) += w;
      v(j, j) += w;
    }
  }
  impl_->factor.compute(v);
  if (impl_->factor.info() != Eigen::Success)
    throw SolverError("weight Laplacian is singular beyond its centering null space");
}

GuttmanTransform::~GuttmanTransform() = default;
GuttmanTransform::GuttmanTransform(GuttmanTransform&&) noexcept = default;
GuttmanTransform& GuttmanTransform::operator=(GuttmanTransform&&) noexcept = default;

Embedding GuttmanTransform::operator()(const Embedding& x, double* input_stress,
                                       double* input_normalized) const {
  const DissimilarityProvider& provider = *impl_->provider;
  const WeightScheme& scheme = impl_->scheme;
  const std::size_t n = x.size();
  const std::size_t m = x.dim();
  if (provider.size() != n)
    throw std::invalid_argument("provider has " + std::to_string(provider.size()) +
                                " points but embedding has " + std::to_string(n) + " rows");

  // bx = B(X) X, row i = sum_{j != i} w_ij delta_ij / d_ij (x_i - x_j).
  std::vector<double> bx(n * m, 0.0);
  std::vector<double> row_acc(m);
  const bool packed = provider.mode() == ProviderMode::Precomputed;
  const double* xs = x.coords().data();
  long double num = 0.0L;
  long double den = 0.0L;
  std::size_t k = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double* xi = xs + i * m;
    std::fill(row_acc.begin(), row_acc.end(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      const double* xj = xs + j * m;
      const double delta = packed ? provider.by_index(k) : provider(i, j);
      const double w = scheme(delta);
      double d2 = 0.0;
      for (std::size_t c = 0; c < m; ++c) {
        const double t = xi[c] - xj[c];
        d2 += t * t;
      }
      const double d = std::sqrt(d2);
      const double r = delta - d;
      num += static_cast<long double>(w * r * r);
      den += static_cast<long double>(w * delta * delta);
      if (d > 0.0) {
        const double b = w * delta / d;
        double* acc_j = bx.data() + j * m;
        for (std::size_t c = 0; c < m; ++c) {
          const double t = b * (xi[c] - xj[c]);
          row_acc[c] += t;
          acc_j[c] -= t;
        }
      }
    }
    double* acc_i = bx.data() + i * m;
    for (std::size_t c = 0; c < m; ++c) acc_i[c] += row_acc[c];
  }
  if (input_stress) *input_stress = static_cast<double>(num);
  if (input_normalized)
    *input_normalized = den > 0.0L ? static_cast<double>(num / den) : (num > 0.0L ? 1.0 : 0.0);

  if (impl_->uniform) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (double& v : bx) v *= inv_n;
    return Embedding(n, m, std::move(bx));
  }

  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> rhs(bx.data(), static_cast<Eigen::Index>(n),
                                       static_cast<Eigen::Index>(m));
  const RowMajor solved = impl_->factor.solve(Eigen::MatrixXd(rhs));
  return Embedding(n, m, std::vector<double>(solved.data(), solved.data() + solved.size()));
}

Embedding guttman_step(const DissimilarityProvider& provider, const WeightScheme& scheme,
                       const Embedding& emb) {
  return GuttmanTransform(provider, scheme)(emb);
}

SmacofResult fit_smacof(const DissimilarityProvider& provider, const WeightScheme& scheme,
                        const SmacofConfig& config) {
  config.validate();
  if (provider.size() < 2) throw ConfigError("SMACOF needs at least 2 points");

  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };

  SmacofResult result;
  Embedding x = init_embedding(provider, config.dim, config.init_scale, config.rng_seed);
  const GuttmanTransform transform(provider, scheme);

  double previous = std::numeric_limits<double>::infinity();
  for (int t = 0;; ++t) {
    double stress = 0.0;
    double normalized = 0.0;
    Embedding next = transform(x, &stress, &normalized);
    if (config.trace_stress)
      result.trace.append({static_cast<std::size_t>(t), stress, normalized, std::nullopt, elapsed()});

    if (t > 0) {
      const double improvement =
          (previous - stress) / std::max(previous, std::numeric_limits<double>::epsilon());
      if (improvement < config.rel_tol) {
        result.converged = true;
        break;
      }
    }
    if (t == config.max_iter) break;
    if (!next.all_finite())
      throw SolverError("SMACOF produced non-finite coordinates at iteration " + std::to_string(t + 1));
    previous = stress;
    x = std::move(next);
    result.iterations = t + 1;
  }
  result.embedding = std::move(x);
  return result;
}

}  // namespace sgdmds
