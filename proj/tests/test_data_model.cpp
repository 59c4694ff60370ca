#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "sgdmds/data_model.hpp"
#include "test_support.hpp"

using namespace sgdmds;
using sgdmds::testing::brute_distance;
using sgdmds::testing::random_dataset;

TEST_CASE("pair linearization is a bijection onto 0..K-1") {
  for (std::size_t n : {2u, 3u, 7u, 50u, 301u}) {
    std::size_t expected = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j, ++expected) {
        REQUIRE(pair_index(i, j, n) == expected);
        const auto [a, b] = pair_from_index(expected, n);
        REQUIRE(a == i);
        REQUIRE(b == j);
      }
    }
    CHECK(expected == pair_count(n));
  }
}

TEST_CASE("pair_from_index stays exact for large N") {
  const std::size_t n = 90000;
  for (std::size_t i : {0ul, 1ul, 4567ul, 45000ul, 89997ul, 89998ul}) {
    for (std::size_t j : {i + 1, std::min(i + 2, n - 1), n - 1}) {
      if (j <= i) continue;
      const auto [a, b] = pair_from_index(pair_index(i, j, n), n);
      CHECK(a == i);
      CHECK(b == j);
    }
  }
}

TEST_CASE("dataset validation") {
  CHECK_THROWS_AS(Dataset({1.0}, 1, 1), DataError);
  CHECK_THROWS_AS(Dataset({}, 2, 0), DataError);
  CHECK_THROWS_AS(Dataset({1.0, 2.0, 3.0}, 2, 2), DataError);
  CHECK_THROWS_AS(Dataset({1.0, NAN}, 2, 1), DataError);
  CHECK_THROWS_AS(Dataset({1.0, INFINITY}, 2, 1), DataError);
  CHECK_THROWS_AS(Dataset({1.0, 2.0}, 2, 1, {"a"}), DataError);
  const Dataset ok({0.0, 1.0}, 2, 1, {"a", "b"}, "tiny");
  CHECK(ok.size() == 2);
  CHECK(ok.has_labels());
  CHECK(ok.name() == "tiny");
}

TEST_CASE("precomputed provider: 3-4-5 triangle") {
  const Dataset ds({0, 0, 3, 4}, 2, 2);
  const auto p = make_precomputed_provider(ds);
  CHECK(p.mode() == ProviderMode::Precomputed);
  CHECK(p.packed().size() == 1);
  CHECK(get_dissimilarity(p, 0, 1) == 5.0);
}

TEST_CASE("unit square corners give {1,1,1,1,sqrt2,sqrt2}") {
  auto ds = std::make_shared<const Dataset>(std::vector<double>{0, 0, 1, 0, 1, 1, 0, 1}, 4, 2);
  // Hand oracle: four sides of length 1, two diagonals of length sqrt(2).
  std::multiset<double> expected{1, 1, 1, 1, std::sqrt(2.0), std::sqrt(2.0)};
  for (const auto& p : {make_precomputed_provider(*ds), make_lazy_provider(ds)}) {
    std::multiset<double> got;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) got.insert(p.at(i, j));
    REQUIRE(got.size() == expected.size());
    auto a = got.begin();
    for (auto b = expected.begin(); b != expected.end(); ++a, ++b) CHECK(*a == doctest::Approx(*b).epsilon(1e-15));
  }
}

TEST_CASE("checked access rejects bad indices and i == j") {
  const auto p = make_precomputed_provider(random_dataset(5, 3, 1));
  CHECK_THROWS_AS(p.at(2, 2), std::out_of_range);
  CHECK_THROWS_AS(p.at(5, 0), std::out_of_range);
  CHECK_THROWS_AS(p.at(0, 17), std::out_of_range);
}

TEST_CASE("random 5x3 dataset matches brute-force distances in both modes") {
  auto ds = std::make_shared<const Dataset>(random_dataset(5, 3, 42));
  const auto pre = make_precomputed_provider(*ds);
  const auto lazy = make_lazy_provider(ds);
  int pairs = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      if (i == j) continue;
      const auto ri = ds->row(i);
      const auto rj = ds->row(j);
      const double oracle = brute_distance({ri.begin(), ri.end()}, {rj.begin(), rj.end()});
      CHECK(pre.at(i, j) == doctest::Approx(oracle).epsilon(1e-14));
      CHECK(lazy.at(i, j) == doctest::Approx(oracle).epsilon(1e-14));
      CHECK(pre.at(i, j) == pre.at(j, i));
      if (i < j) ++pairs;
    }
  }
  CHECK(pairs == 10);
}

TEST_CASE("identical rows have zero dissimilarity") {
  const Dataset ds({1.5, -2.0, 1.5, -2.0, 0.0, 0.0}, 3, 2);
  CHECK(make_precomputed_provider(ds).at(0, 1) == 0.0);
}

TEST_CASE("property: lazy and precomputed agree bitwise") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 2 + seed * 9;  // up to 173
    const std::size_t d = 1 + seed % 7;
    auto ds = std::make_shared<const Dataset>(random_dataset(n, d, seed * 31 + 7));
    const auto pre = make_precomputed_provider(*ds);
    const auto lazy = make_lazy_provider(ds);
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) REQUIRE(pre(i, j) == lazy(j, i));
  }
}

TEST_CASE("lazy construction allocates no packed buffer") {
  const std::size_t before = packed_buffers_allocated();
  auto ds = std::make_shared<const Dataset>(random_dataset(25000, 10, 3));
  const auto lazy = make_lazy_provider(ds);
  CHECK(lazy.mode() == ProviderMode::Lazy);
  CHECK(lazy.packed().empty());
  CHECK(lazy.size() == 25000);
  CHECK(lazy.at(0, 24999) > 0.0);
  CHECK(packed_buffers_allocated() == before);
}

TEST_CASE("from_packed validates length and values") {
  CHECK_THROWS_AS(DissimilarityProvider::from_packed(3, {1.0, 2.0}), DataError);
  CHECK_THROWS_AS(DissimilarityProvider::from_packed(3, {1.0, -2.0, 1.0}), DataError);
  const auto p = DissimilarityProvider::from_packed(3, {1.0, 2.0, 3.0});
  CHECK(p.at(0, 2) == 2.0);
  CHECK(p.at(2, 1) == 3.0);
  CHECK(p.dataset() == nullptr);
}

TEST_CASE("weights") {
  CHECK(get_weight(WeightScheme::uniform(), 7.3) == 1.0);
  CHECK(get_weight(WeightScheme::inverse_square(), 2.0) == 0.25);
  // max(0, 1e-8)^-2 = 1e16
  CHECK(get_weight(WeightScheme::inverse_square(1e-8), 0.0) == doctest::Approx(1e16).epsilon(1e-15));
  for (double delta : {0.0, 1e-12, 1e-3, 1.0, 1e6}) {
    const double w = get_weight(WeightScheme::inverse_square(), delta);
    CHECK(w > 0.0);
    CHECK(std::isfinite(w));
  }
}

TEST_CASE("solver trace enforces ordering") {
  SolverTrace t;
  CHECK_THROWS_AS(t.append({1, 0, 0, std::nullopt, 0}), std::logic_error);
  t.append({0, 1.0, 0.5, std::nullopt, 0.0});
  t.append({1, 0.5, 0.25, 0.5, 0.1});
  CHECK_THROWS_AS(t.append({1, 0.4, 0.2, 0.5, 0.2}), std::logic_error);
  CHECK_THROWS_AS(t.append({2, 0.4, 0.2, 0.5, 0.05}), std::logic_error);
  CHECK(t.size() == 2);
}

TEST_CASE("embedding basics") {
  Embedding e(3, 2);
  e(1, 0) = 3.0;
  e(2, 1) = 4.0;
  CHECK(embedded_distance(e, 1, 2) == 5.0);
  CHECK(e.all_finite());
  e(0, 0) = NAN;
  CHECK_FALSE(e.all_finite());
  CHECK_THROWS(Embedding(2, 2, std::vector<double>{1, 2, 3}));
}
