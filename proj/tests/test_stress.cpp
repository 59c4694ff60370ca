#include <doctest.h>

#include <cmath>
#include <random>

#include "sgdmds/data_model.hpp"
#include "sgdmds/stress.hpp"
#include "test_support.hpp"

using namespace sgdmds;
using namespace sgdmds::testing;

namespace {

// Plain double-loop over i < j, written without the library's pair indexing.
double oracle_raw_stress(const DissimilarityProvider& p, const WeightScheme& w, const Embedding& e) {
  double s = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < e.dim(); ++k) d2 += (e(i, k) - e(j, k)) * (e(i, k) - e(j, k));
      const double diff = p.at(i, j) - std::sqrt(d2);
      s += w(p.at(i, j)) * diff * diff;
    }
  }
  return s;
}

double pair_term(double delta, double weight, const std::vector<double>& xi, const std::vector<double>& xj) {
  const double d = brute_distance(xi, xj);
  return weight * (delta - d) * (delta - d);
}

}  // namespace

TEST_CASE("two points at distance 3 with delta 1 give stress 4") {
  const auto p = DissimilarityProvider::from_packed(2, {1.0});
  const Embedding e(2, 1, {0.0, 3.0});
  const StressReport s = full_stress(p, WeightScheme::uniform(), e);
  CHECK(s.raw_stress == 4.0);
  CHECK(s.normalized_stress == 4.0);
  CHECK(s.pair_count_evaluated == 1);
}

TEST_CASE("exact embedding has zero stress") {
  const Dataset ds = planar_dataset(12, 5);
  const auto p = make_precomputed_provider(ds);
  const Embedding e(12, 2, to_vector(ds.features()));
  const StressReport s = full_stress(p, WeightScheme::uniform(), e);
  CHECK(s.raw_stress < 1e-20);
}

TEST_CASE("full stress matches double-loop oracle") {
  for (const auto& scheme : {WeightScheme::uniform(), WeightScheme::inverse_square()}) {
    const auto p = make_precomputed_provider(random_dataset(6, 4, 9));
    const Embedding e = random_embedding(6, 2, 10);
    const double oracle = oracle_raw_stress(p, scheme, e);
    double norm = 0.0;
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = i + 1; j < 6; ++j) norm += scheme(p.at(i, j)) * p.at(i, j) * p.at(i, j);
    const StressReport s = full_stress(p, scheme, e);
    CHECK(s.raw_stress == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(s.normalized_stress == doctest::Approx(oracle / norm).epsilon(1e-12));
  }
}

TEST_CASE("full stress is identical on lazy and precomputed providers") {
  auto ds = std::make_shared<const Dataset>(random_dataset(40, 6, 2));
  const Embedding e = random_embedding(40, 2, 3);
  const auto a = full_stress(make_precomputed_provider(*ds), WeightScheme::uniform(), e);
  const auto b = full_stress(make_lazy_provider(ds), WeightScheme::uniform(), e);
  CHECK(a.raw_stress == b.raw_stress);
}

TEST_CASE("all-zero dissimilarities") {
  const auto p = DissimilarityProvider::from_packed(3, {0.0, 0.0, 0.0});
  CHECK(full_stress(p, WeightScheme::uniform(), Embedding(3, 2)).normalized_stress == 0.0);
  const Embedding spread(3, 1, {0.0, 1.0, 2.0});
  CHECK(full_stress(p, WeightScheme::uniform(), spread).normalized_stress == 1.0);
}

TEST_CASE("sampled stress with an exhaustive sampler equals full stress") {
  const auto p = make_precomputed_provider(random_dataset(10, 3, 4));
  const Embedding e = random_embedding(10, 2, 5);
  std::size_t i = 0, j = 1;
  PairSampler all = [&] {
    const auto out = std::make_pair(i, j);
    if (++j == 10) j = ++i + 1;
    return out;
  };
  const StressReport s = sampled_stress(p, WeightScheme::uniform(), e, pair_count(10), all);
  const StressReport f = full_stress(p, WeightScheme::uniform(), e);
  CHECK(s.raw_stress == doctest::Approx(f.raw_stress).epsilon(1e-12));
  CHECK(s.normalized_stress == doctest::Approx(f.normalized_stress).epsilon(1e-12));
  CHECK(s.pair_count_evaluated == pair_count(10));
}

TEST_CASE("sampled stress: unbiased within 5% and reproducible") {
  const auto p = make_precomputed_provider(random_dataset(400, 5, 6));
  const Embedding e = random_embedding(400, 2, 7);
  const double exact = full_stress(p, WeightScheme::uniform(), e).raw_stress;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const StressReport s = sampled_stress(p, WeightScheme::uniform(), e, 20000, seed);
    CHECK(std::abs(s.raw_stress - exact) <= 0.05 * exact);
    CHECK(s.raw_stress == sampled_stress(p, WeightScheme::uniform(), e, 20000, seed).raw_stress);
  }
  CHECK(sampled_stress(p, WeightScheme::uniform(), e, 20000, 1).raw_stress !=
        sampled_stress(p, WeightScheme::uniform(), e, 20000, 2).raw_stress);
}

TEST_CASE("pair gradient: worked example") {
  // factor 2 w (d - delta) / d = 2 * 1 * (2 - 1) / 2 = 1, times xi - xj = (-2, 0)
  const std::vector<double> xi{0.0, 0.0}, xj{2.0, 0.0};
  const PairGradient g = pair_gradient(1.0, 1.0, xi, xj);
  CHECK(g.grad_i[0] == doctest::Approx(-2.0));
  CHECK(g.grad_i[1] == doctest::Approx(0.0));
  CHECK(g.grad_j[0] == doctest::Approx(2.0));
}

TEST_CASE("pair gradient: d = 5, delta = 3") {
  // factor 2 (5 - 3) / 5 = 0.8 times (xi - xj) = (5, 0)
  const std::vector<double> xi{5.0, 0.0}, xj{0.0, 0.0};
  const PairGradient g = pair_gradient(3.0, 1.0, xi, xj);
  CHECK(g.grad_i[0] == doctest::Approx(4.0));
  CHECK(g.grad_j[0] == doctest::Approx(-4.0));
}

TEST_CASE("pair gradient is undefined for coincident points") {
  const std::vector<double> x{1.0, 1.0};
  CHECK_THROWS_AS(pair_gradient(1.0, 1.0, x, x), DegeneratePairError);
}

TEST_CASE("pair gradient matches central finite differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> pos(0.1, 4.0);
  for (int draw = 0; draw < 100; ++draw) {
    const std::size_t m = 1 + draw % 4;
    std::vector<double> xi(m), xj(m);
    for (auto& v : xi) v = u(rng);
    for (auto& v : xj) v = u(rng);
    const double delta = pos(rng), w = pos(rng);
    const PairGradient g = pair_gradient(delta, w, xi, xj);
    const double h = 1e-6;
    for (std::size_t k = 0; k < m; ++k) {
      auto plus = xi, minus = xi;
      plus[k] += h;
      minus[k] -= h;
      const double fd = (pair_term(delta, w, plus, xj) - pair_term(delta, w, minus, xj)) / (2 * h);
      CHECK(std::abs(g.grad_i[k] - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
      CHECK(g.grad_j[k] == -g.grad_i[k]);
    }
  }
}

TEST_CASE("stress is invariant under rigid motions") {
  const auto p = make_precomputed_provider(random_dataset(15, 3, 12));
  const Embedding e = random_embedding(15, 2, 13);
  Embedding moved(15, 2);
  const double c = std::cos(0.7), s = std::sin(0.7);
  for (std::size_t i = 0; i < 15; ++i) {
    moved(i, 0) = c * e(i, 0) - s * e(i, 1) + 3.5;
    moved(i, 1) = -(s * e(i, 0) + c * e(i, 1)) - 1.25;  // rotation, reflection, translation
  }
  const double a = full_stress(p, WeightScheme::uniform(), e).raw_stress;
  const double b = full_stress(p, WeightScheme::uniform(), moved).raw_stress;
  CHECK(b == doctest::Approx(a).epsilon(1e-10));
}
