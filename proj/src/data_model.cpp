#include "sgdmds/data_model.hpp"

#include <atomic>
#include <limits>
#include <new>
#include <stdexcept>

namespace sgdmds {

namespace {
std::atomic<std::size_t> g_packed_buffers{0};
}

std::pair<std::size_t, std::size_t> pair_from_index(std::size_t k, std::size_t n) noexcept {
  // Closed-form row estimate, then exact integer fix-up.
  const double b = 2.0 * static_cast<double>(n) - 1.0;
  const double disc = b * b - 8.0 * static_cast<double>(k);
  auto i = static_cast<std::size_t>(std::max(0.0, std::floor((b - std::sqrt(std::max(disc, 0.0))) / 2.0)));
  if (i > n - 2) i = n - 2;
  while (i > 0 && pair_row_start(i, n) > k) --i;
  while (i + 1 < n - 1 && pair_row_start(i + 1, n) <= k) ++i;
  const std::size_t j = k - pair_row_start(i, n) + i + 1;
  return {i, j};
}

Dataset::Dataset(std::vector<double> features, std::size_t n, std::size_t d,
                 std::vector<std::string> labels, std::string name)
    : features_(std::move(features)), n_(n), d_(d), labels_(std::move(labels)), name_(std::move(name)) {
  if (n_ < 2) throw DataError("dataset needs at least 2 rows, got " + std::to_string(n_));
  if (d_ < 1) throw DataError("dataset needs at least 1 feature column");
  if (features_.size() != n_ * d_)
    throw DataError("feature buffer has " + std::to_string(features_.size()) + " values, expected " +
                    std::to_string(n_ * d_));
  for (std::size_t idx = 0; idx < features_.size(); ++idx) {
    if (!std::isfinite(features_[idx]))
      throw DataError("non-finite feature at row " + std::to_string(idx / d_) + ", column " +
                      std::to_string(idx % d_));
  }
  if (!labels_.empty() && labels_.size() != n_)
    throw DataError("label count " + std::to_string(labels_.size()) + " does not match row count " +
                    std::to_string(n_));
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept {
  long double s = 0.0L;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const long double t = static_cast<long double>(a[k]) - static_cast<long double>(b[k]);
    s += t * t;
  }
  return static_cast<double>(std::sqrt(s));
}

const char* to_string(ProviderMode mode) noexcept {
  return mode == ProviderMode::Precomputed ? "precomputed" : "lazy";
}

const char* to_string(WeightKind kind) noexcept {
  return kind == WeightKind::Uniform ? "uniform" : "invsq";
}

DissimilarityProvider DissimilarityProvider::from_packed(std::size_t n, std::vector<double> packed) {
  if (n < 2) throw DataError("dissimilarity matrix needs at least 2 points");
  if (packed.size() != sgdmds::pair_count(n))
    throw DataError("packed dissimilarities have " + std::to_string(packed.size()) +
                    " entries, expected " + std::to_string(sgdmds::pair_count(n)));
  for (double v : packed) {
    if (!std::isfinite(v) || v < 0.0) throw DataError("dissimilarities must be finite and non-negative");
  }
  DissimilarityProvider p;
  p.mode_ = ProviderMode::Precomputed;
  p.n_ = n;
  p.packed_ = std::move(packed);
  g_packed_buffers.fetch_add(1, std::memory_order_relaxed);
  return p;
}

double DissimilarityProvider::at(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_)
    throw std::out_of_range("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") out of range for N = " + std::to_string(n_));
  if (i == j) throw std::out_of_range("self-dissimilarity is not queryable");
  return (*this)(i, j);
}

DissimilarityProvider make_precomputed_provider(const Dataset& dataset) {
  const std::size_t n = dataset.size();
  const std::size_t count = pair_count(n);
  const std::size_t limit = std::numeric_limits<std::size_t>::max() / sizeof(double);
  if (count > limit) throw CapacityError(std::numeric_limits<std::size_t>::max());

  DissimilarityProvider p;
  try {
    p.packed_.resize(count);
  } catch (const std::bad_alloc&) {
    throw CapacityError(count * sizeof(double));
  } catch (const std::length_error&) {
    throw CapacityError(count * sizeof(double));
  }
  double* out = p.packed_.data();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto xi = dataset.row(i);
    for (std::size_t j = i + 1; j < n; ++j) *out++ = euclidean_distance(xi, dataset.row(j));
  }
  p.mode_ = ProviderMode::Precomputed;
  p.n_ = n;
  g_packed_buffers.fetch_add(1, std::memory_order_relaxed);
  return p;
}

DissimilarityProvider make_lazy_provider(std::shared_ptr<const Dataset> dataset) {
  if (!dataset) throw ConfigError("lazy provider needs a dataset");
  DissimilarityProvider p;
  p.mode_ = ProviderMode::Lazy;
  p.n_ = dataset->size();
  p.dataset_ = std::move(dataset);
  return p;
}

double get_dissimilarity(const DissimilarityProvider& provider, std::size_t i, std::size_t j) {
  return provider.at(i, j);
}

std::size_t packed_buffers_allocated() noexcept {
  return g_packed_buffers.load(std::memory_order_relaxed);
}

double get_weight(const WeightScheme& scheme, double delta) noexcept { return scheme(delta); }

Embedding::Embedding(std::size_t n, std::size_t m, std::vector<double> coords)
    : n_(n), m_(m), coords_(std::move(coords)) {
  if (coords_.size() != n_ * m_)
    throw std::invalid_argument("embedding buffer has " + std::to_string(coords_.size()) +
                                " values, expected " + std::to_string(n_ * m_));
}

bool Embedding::all_finite() const noexcept {
  for (double v : coords_)
    if (!std::isfinite(v)) return false;
  return true;
}

void SolverTrace::append(const TraceEntry& entry) {
  if (entries_.empty()) {
    if (entry.step != 0) throw std::logic_error("trace must start at step 0");
  } else {
    if (entry.step <= entries_.back().step) throw std::logic_error("trace steps must strictly increase");
    if (entry.elapsed_seconds < entries_.back().elapsed_seconds)
      throw std::logic_error("trace elapsed time must not decrease");
  }
  entries_.push_back(entry);
}

}  // namespace sgdmds
