#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sgdmds/errors.hpp"

namespace sgdmds {

// ---------------------------------------------------------------------------
// Pair linearization
//
// Pairs (i, j) with i < j are packed row-major into the upper triangle:
//     k = i*N - i*(i+1)/2 + (j - i - 1)
// This is both the storage layout of precomputed dissimilarities and the
// canonical pair order that the SGD solver permutes every epoch.
// ---------------------------------------------------------------------------

constexpr std::size_t pair_count(std::size_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Offset of the first pair (i, i+1) of row i.
constexpr std::size_t pair_row_start(std::size_t i, std::size_t n) noexcept {
  return i * n - i * (i + 1) / 2;
}

/// Linear index of pair (i, j); requires i < j < n.
constexpr std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) noexcept {
  return pair_row_start(i, n) + (j - i - 1);
}

/// Inverse of pair_index.
std::pair<std::size_t, std::size_t> pair_from_index(std::size_t k, std::size_t n) noexcept;

// ---------------------------------------------------------------------------

/// Feature-based input: N rows of D real features, optional per-row labels.
class Dataset {
 public:
  /// `features` is row-major, n*d values. Throws DataError on N < 2, D < 1,
  /// size mismatch, non-finite values, or a label count different from N.
  Dataset(std::vector<double> features, std::size_t n, std::size_t d,
          std::vector<std::string> labels = {}, std::string name = "dataset");

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return d_; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {features_.data() + i * d_, d_};
  }
  std::span<const double> features() const noexcept { return features_; }

  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

 private:
  std::vector<double> features_;
  std::size_t n_;
  std::size_t d_;
  std::vector<std::string> labels_;
  std::string name_;
};

/// Euclidean distance, accumulated in long double and rounded once to double.
/// Both provider modes go through this function so their values agree bitwise.
double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept;

// ---------------------------------------------------------------------------

enum class ProviderMode { Precomputed, Lazy };

const char* to_string(ProviderMode mode) noexcept;

/// Uniform read-only access to dissimilarities delta_ij.
///
/// Precomputed mode owns a packed upper-triangular array of N(N-1)/2 values.
/// Lazy mode keeps a shared reference to the Dataset and recomputes each
/// Euclidean distance on demand; it owns no pairwise storage.
///
/// Immutable after construction; safe for concurrent readers.
class DissimilarityProvider {
 public:
  /// Wraps an existing packed array. Throws DataError if the length is not
  /// N(N-1)/2 or any entry is negative or non-finite.
  static DissimilarityProvider from_packed(std::size_t n, std::vector<double> packed);

  ProviderMode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return n_; }
  std::size_t pair_count() const noexcept { return sgdmds::pair_count(n_); }

  /// Checked access; throws std::out_of_range on bad indices or i == j.
  double at(std::size_t i, std::size_t j) const;

  /// Hot-path access. Requires i != j, both < N; order does not matter.
  double operator()(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    if (mode_ == ProviderMode::Precomputed) return packed_[pair_index(i, j, n_)];
    return euclidean_distance(dataset_->row(i), dataset_->row(j));
  }

  /// Packed values by linear pair index (Precomputed only).
  double by_index(std::size_t k) const noexcept { return packed_[k]; }

  /// Empty in Lazy mode.
  std::span<const double> packed() const noexcept { return packed_; }

  /// Null for providers built from a matrix file.
  const Dataset* dataset() const noexcept { return dataset_.get(); }

 private:
  friend DissimilarityProvider make_precomputed_provider(const Dataset&);
  friend DissimilarityProvider make_lazy_provider(std::shared_ptr<const Dataset>);

  DissimilarityProvider() = default;

  ProviderMode mode_ = ProviderMode::Precomputed;
  std::size_t n_ = 0;
  std::vector<double> packed_;
  std::shared_ptr<const Dataset> dataset_;
};

/// Computes all N(N-1)/2 Euclidean distances once. Throws CapacityError when
/// the packed buffer cannot be allocated.
DissimilarityProvider make_precomputed_provider(const Dataset& dataset);

/// On-the-fly distances; O(D) per query, no pairwise allocation.
DissimilarityProvider make_lazy_provider(std::shared_ptr<const Dataset> dataset);

/// Checked lookup, same as provider.at(i, j).
double get_dissimilarity(const DissimilarityProvider& provider, std::size_t i, std::size_t j);

/// Number of packed pairwise buffers allocated by this process so far.
std::size_t packed_buffers_allocated() noexcept;

// ---------------------------------------------------------------------------

enum class WeightKind { Uniform, InverseSquare };

struct WeightScheme {
  WeightKind kind = WeightKind::Uniform;
  double epsilon_floor = 1e-8;

  double operator()(double delta) const noexcept {
    if (kind == WeightKind::Uniform) return 1.0;
    const double d = std::max(delta, epsilon_floor);
    return 1.0 / (d * d);
  }

  static WeightScheme uniform() { return {}; }
  static WeightScheme inverse_square(double floor = 1e-8) {
    return {WeightKind::InverseSquare, floor};
  }
};

double get_weight(const WeightScheme& scheme, double delta) noexcept;

const char* to_string(WeightKind kind) noexcept;

// ---------------------------------------------------------------------------

/// N x m configuration, row-major.
class Embedding {
 public:
  Embedding() = default;
  Embedding(std::size_t n, std::size_t m) : n_(n), m_(m), coords_(n * m, 0.0) {}
  Embedding(std::size_t n, std::size_t m, std::vector<double> coords);

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return m_; }

  std::span<double> row(std::size_t i) noexcept { return {coords_.data() + i * m_, m_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {coords_.data() + i * m_, m_};
  }

  double& operator()(std::size_t i, std::size_t k) noexcept { return coords_[i * m_ + k]; }
  double operator()(std::size_t i, std::size_t k) const noexcept { return coords_[i * m_ + k]; }

  std::span<double> coords() noexcept { return coords_; }
  std::span<const double> coords() const noexcept { return coords_; }

  bool all_finite() const noexcept;

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<double> coords_;
};

/// Distance between rows i and j of an embedding, in double precision.
inline double embedded_distance(const Embedding& x, std::size_t i, std::size_t j) noexcept {
  const double* a = x.row(i).data();
  const double* b = x.row(j).data();
  double s = 0.0;
  for (std::size_t k = 0; k < x.dim(); ++k) {
    const double t = a[k] - b[k];
    s += t * t;
  }
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------

struct TraceEntry {
  std::size_t step = 0;
  double raw_stress = 0.0;
  double normalized_stress = 0.0;
  std::optional<double> learning_rate;  // absent for SMACOF and the initial SGD entry
  double elapsed_seconds = 0.0;
};

/// Per-epoch / per-iteration record of a solver run.
class SolverTrace {
 public:
  /// Throws std::logic_error if step does not strictly increase (starting at 0)
  /// or elapsed time decreases.
  void append(const TraceEntry& entry);

  const std::vector<TraceEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const TraceEntry& back() const { return entries_.back(); }
  const TraceEntry& operator[](std::size_t i) const { return entries_[i]; }

 private:
  std::vector<TraceEntry> entries_;
};

}  // namespace sgdmds
