#include <doctest.h>

#include "oracles.hpp"
#include "seirah/error.hpp"
#include "seirah/graph.hpp"

using namespace seirah;

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((NetworkParams{2, 1, 0.0}.validate()), ParameterError);
  CHECK_THROWS_AS((NetworkParams{10, 0, 0.0}.validate()), ParameterError);
  CHECK_THROWS_AS((NetworkParams{10, 10, 0.0}.validate()), ParameterError);
  CHECK_THROWS_AS((NetworkParams{10, 4, -0.1}.validate()), ParameterError);
  CHECK_THROWS_AS((NetworkParams{10, 4, 1.5}.validate()), ParameterError);
  CHECK_NOTHROW((NetworkParams{10, 4, 1.0}.validate()));
}

TEST_CASE("graph construction rejects bad edges") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), ParameterError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), ParameterError);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), ParameterError);
  Graph g(4, {{2, 1}, {0, 3}});
  CHECK(g.edge_count() == 2);
  CHECK(g.edges()[0] == Edge{0, 3});
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(3, 0));
  CHECK_FALSE(g.has_edge(0, 1));
}

TEST_CASE("p = 0 gives the exact ring lattice") {
  for (std::uint32_t k : {2u, 4u, 6u, 10u}) {
    GenerationStats stats;
    const auto g = generate_newman_watts({1000, k, 0.0}, 3, &stats);
    CHECK(g.edge_count() == 1000u * k / 2);
    CHECK(stats.shortcuts_added == 0);
    for (NodeId u = 0; u < 1000; ++u) {
      REQUIRE(g.degree(u) == k);
      for (std::uint32_t d = 1; d <= k / 2; ++d) REQUIRE(g.has_edge(u, (u + d) % 1000));
    }
  }
}

TEST_CASE("odd k rounds down to floor(k/2) per side") {
  const auto g = generate_newman_watts({20, 5, 0.0}, 1);
  CHECK(g.edge_count() == 40);
  for (NodeId u = 0; u < 20; ++u) CHECK(g.degree(u) == 4);
}

TEST_CASE("smallest ring with p = 1 stays simple") {
  const auto g = generate_newman_watts({3, 2, 1.0}, 7);
  CHECK(g.edge_count() == 3);
}

TEST_CASE("generation is deterministic per seed") {
  const NetworkParams params{500, 4, 0.1};
  CHECK(generate_newman_watts(params, 11) == generate_newman_watts(params, 11));
  CHECK_FALSE(generate_newman_watts(params, 11) == generate_newman_watts(params, 12));
}

TEST_CASE("shortcut oracle agrees with exhaustive enumeration") {
  for (double p : {0.1, 0.5, 1.0}) {
    const double closed = oracle::expected_shortcuts(5, 5, p);
    const double enumerated = oracle::expected_shortcuts_enumerated(5, 2, p);
    CHECK(closed == doctest::Approx(enumerated).epsilon(1e-12));
  }
}

TEST_CASE("small-n shortcut counts match the exact expectation") {
  // n = 5, k = 2: 5 lattice edges, 5 free pairs.
  const double p = 0.5;
  const int seeds = 4000;
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < seeds; ++s) {
    GenerationStats stats;
    generate_newman_watts({5, 2, p}, static_cast<Seed>(s), &stats);
    sum += stats.shortcuts_added;
    sum_sq += static_cast<double>(stats.shortcuts_added) * stats.shortcuts_added;
  }
  const double mean = sum / seeds;
  const double sd = std::sqrt(sum_sq / seeds - mean * mean);
  CHECK(oracle::within_3_sigma(mean, {oracle::expected_shortcuts_enumerated(5, 2, p), sd}, seeds));
}

TEST_CASE("shortcut attempts are binomial in the lattice edge count") {
  const std::uint32_t n = 1000, k = 4;
  for (double p : {0.05, 0.1, 0.5}) {
    double attempts = 0.0;
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) {
      GenerationStats stats;
      generate_newman_watts({n, k, p}, static_cast<Seed>(1000 + s), &stats);
      CHECK(stats.lattice_edges == n * k / 2);
      attempts += stats.shortcut_attempts;
    }
    CHECK(oracle::within_3_sigma(attempts / seeds, oracle::binomial(n * k / 2.0, p), seeds));
  }
}

TEST_CASE("clustering of the ring matches 3(k-2)/(4(k-1))") {
  for (std::uint32_t k : {4u, 6u, 10u}) {
    const auto g = generate_newman_watts({300, k, 0.0}, 1);
    CHECK(mean_clustering(g) == doctest::Approx(oracle::ring_clustering(k)).epsilon(1e-12));
  }
}

TEST_CASE("shortcuts shrink the mean path length") {
  const auto ring = generate_newman_watts({400, 4, 0.0}, 1);
  const auto small_world = generate_newman_watts({400, 4, 0.1}, 1);
  // Ring lattice with k/2 = 2 per side: mean distance about n / (2k) ~ 50.
  CHECK(mean_shortest_path(ring) > 40.0);
  CHECK(mean_shortest_path(small_world) < 0.5 * mean_shortest_path(ring));
}
