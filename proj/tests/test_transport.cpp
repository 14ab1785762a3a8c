#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vizstate/assignment.hpp"
#include "vizstate/optimal_transport.hpp"
#include "vizstate/rng.hpp"
#include "vizstate/similarity.hpp"

using namespace vizstate;

namespace {

// Independent exact oracle: with uniform masses 1/m and 1/n, replicating each
// left point n times and each right point m times turns the transportation LP
// into a plain (mn x mn) assignment problem whose optimum equals mn * EMD.
double replication_oracle(const std::vector<std::vector<double>>& cost) {
  const std::size_t m = cost.size();
  const std::size_t n = cost[0].size();
  CostMatrix big{m * n, m * n, {}};
  big.cost.resize(m * n * m * n);
  for (std::size_t i = 0; i < m * n; ++i)
    for (std::size_t j = 0; j < m * n; ++j)
      big.at(i, j) = cost[i / n][j / m];
  return assignment_cost(big, solve_assignment(big)) / static_cast<double>(m * n);
}

std::vector<std::vector<double>> random_cost(Rng& rng, std::size_t m, std::size_t n) {
  std::vector<std::vector<double>> cost(m, std::vector<double>(n));
  for (auto& row : cost)
    for (auto& c : row) c = rng.uniform(0.0, 100.0);
  return cost;
}

Color random_color(Rng& rng) {
  return Color{static_cast<int>(rng.uniform_int(0, 255)),
               static_cast<int>(rng.uniform_int(0, 255)),
               static_cast<int>(rng.uniform_int(0, 255))};
}

}  // namespace

TEST_CASE("emd matches the replication oracle on random costs") {
  Rng rng(11);
  for (int iter = 0; iter < 60; ++iter) {
    const auto m = static_cast<std::size_t>(rng.uniform_int(1, 5));
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 5));
    const auto cost = random_cost(rng, m, n);
    CHECK(emd_uniform(cost) == doctest::Approx(replication_oracle(cost)).epsilon(1e-9));
  }
}

TEST_CASE("color_array_distance equals the oracle on 100 random color arrays") {
  Rng rng(12);
  for (int iter = 0; iter < 100; ++iter) {
    const auto m = static_cast<std::size_t>(rng.uniform_int(1, 5));
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 5));
    std::vector<Color> a, b;
    for (std::size_t i = 0; i < m; ++i) a.push_back(random_color(rng));
    for (std::size_t j = 0; j < n; ++j) b.push_back(random_color(rng));
    std::vector<std::vector<double>> cost(m, std::vector<double>(n));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) cost[i][j] = delta_e(a[i], b[j]);
    CHECK(color_array_distance(a, b) ==
          doctest::Approx(replication_oracle(cost)).epsilon(1e-6));
  }
}

TEST_CASE("identical and permuted arrays have zero distance") {
  std::vector<Color> a = {{255, 0, 0}, {0, 255, 0}, {0, 0, 255}};
  std::vector<Color> b = {{0, 0, 255}, {255, 0, 0}, {0, 255, 0}};
  CHECK(color_array_distance(a, a) == doctest::Approx(0.0));
  CHECK(color_array_distance(a, b) == doctest::Approx(0.0));
}

TEST_CASE("singleton arrays reduce to deltaE") {
  const Color c1{10, 20, 30}, c2{200, 100, 50};
  CHECK(color_array_distance({c1}, {c2}) == doctest::Approx(delta_e(c1, c2)).epsilon(1e-12));
}

TEST_CASE("empty input throws") {
  CHECK_THROWS_AS(color_array_distance({}, {Color{1, 2, 3}}), Error);
}
