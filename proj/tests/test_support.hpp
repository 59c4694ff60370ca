#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sgdmds/data_model.hpp"

namespace sgdmds::testing {

/// Reference distance in plain double precision, written independently of
/// the library's long double accumulation.
inline double brute_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

inline std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

inline Dataset random_dataset(std::size_t n, std::size_t d, std::uint64_t seed, double spread = 5.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-spread, spread);
  std::vector<double> f(n * d);
  for (double& v : f) v = u(rng);
  return Dataset(std::move(f), n, d);
}

/// N points in the plane; dissimilarities are their exact distances.
inline Dataset planar_dataset(std::size_t n, std::uint64_t seed, double spread = 10.0) {
  return random_dataset(n, 2, seed, spread);
}

inline Embedding random_embedding(std::size_t n, std::size_t m, std::uint64_t seed, double spread = 5.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-spread, spread);
  Embedding e(n, m);
  for (double& v : e.coords()) v = u(rng);
  return e;
}

inline bool rel_close(double a, double b, double rel, double abs_floor = 0.0) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

/// Fresh temporary directory under the system temp path.
inline std::filesystem::path temp_dir(const std::string& tag) {
  static std::mt19937_64 rng(std::random_device{}());
  auto dir = std::filesystem::temp_directory_path() / ("sgdmds_" + tag + "_" + std::to_string(rng()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace sgdmds::testing
