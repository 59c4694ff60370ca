#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sgdmds/data_model.hpp"

namespace sgdmds {

struct BlobSpec {
  std::size_t n = 0;
  std::size_t d = 2;
  std::size_t k_clusters = 5;
  double cluster_std = 1.0;
  double center_box = 10.0;
  std::uint64_t rng_seed = 0;

  /// Throws ConfigError unless n >= k_clusters >= 1, n >= 2, d >= 1,
  /// cluster_std >= 0 and center_box > 0.
  void validate() const;
};

/// Label column selector: by header name or by zero-based column index.
using LabelColumn = std::variant<std::string, std::size_t>;

/// Reads a comma-separated feature table (LF or CRLF, optional single header
/// line). Every non-label cell must be a finite real. Throws DataError with
/// row/column context on parse failures, ragged rows or empty input.
Dataset load_feature_csv(const std::filesystem::path& path, bool has_header,
                         std::optional<LabelColumn> label_column = std::nullopt);

/// Guesses the header (first row not fully numeric) and uses a column named
/// "label" as labels when present.
Dataset load_feature_csv_auto(const std::filesystem::path& path);

/// Reads a square dissimilarity matrix without header. Accepts asymmetry and
/// nonzero diagonal within 1e-9 relative and stores (M_ij + M_ji) / 2.
DissimilarityProvider load_dissimilarity_csv(const std::filesystem::path& path);

/// Symmetric relative tolerance used by load_dissimilarity_csv.
inline constexpr double kSymmetryTolerance = 1e-9;

/// Same checks and symmetrization for a row-major n x n matrix already in
/// memory. `source` prefixes error messages.
DissimilarityProvider dissimilarity_from_square(std::span<const double> matrix, std::size_t n,
                                                const std::string& source);

/// Gaussian blobs: k centers uniform in [-box, box]^d, point i assigned to
/// center i % k, iid N(0, std^2) offsets. Labels hold the cluster index.
Dataset generate_blobs(const BlobSpec& spec);

/// Header x0..x{m-1}[,label]; 17 significant digits so values round-trip.
void save_embedding_csv(const Embedding& emb, const std::vector<std::string>* labels,
                        const std::filesystem::path& path);

/// Header f0..f{d-1},label.
void save_feature_csv(const Dataset& dataset, const std::filesystem::path& path);

/// Columns step,raw_stress,normalized_stress,learning_rate,elapsed_seconds.
/// A missing learning rate is written as an empty cell.
void save_trace_csv(const SolverTrace& trace, const std::filesystem::path& path);

/// Shortest decimal text with 17 significant digits.
std::string format_real(double value);

}  // namespace sgdmds
