#include "doctest.h"

#include "oracles.hpp"
#include "swnet/errors.hpp"
#include "swnet/generator.hpp"

using namespace swnet;

TEST_CASE("ring lattice structure") {
  const Graph g = ring_lattice(10, 4);
  CHECK(g.num_edges() == 20);
  for (Node v = 0; v < 10; ++v) CHECK(g.degree(v) == 4);
  CHECK(g.has_edge(0, 9));
  CHECK(g.has_edge(0, 8));
  CHECK_FALSE(g.has_edge(0, 7));
  CHECK(transitivity(g).cc == doctest::Approx(oracle::cc(g)).epsilon(1e-12));
}

TEST_CASE("ring lattice rejects bad degree") {
  CHECK_THROWS_AS(ring_lattice(10, 5), InvalidParams);
  CHECK_THROWS_AS(ring_lattice(10, 0), InvalidParams);
  CHECK_THROWS_AS(ring_lattice(6, 6), InvalidParams);
  CHECK_THROWS_AS(watts_strogatz({10, 3, 0.1, 1}), InvalidParams);
  CHECK_THROWS_AS(watts_strogatz({10, 4, 1.5, 1}), InvalidParams);
}

TEST_CASE("p = 0 gives the lattice and its closed-form clustering") {
  const Graph g = watts_strogatz({10000, 6, 0.0, 1});
  CHECK(g == ring_lattice(10000, 6));
  CHECK(transitivity(g).cc == doctest::Approx(0.6).epsilon(1e-12));
  for (int k : {4, 6, 8}) {
    const Graph small = ring_lattice(40, k);
    const double closed = 3.0 * (k - 2) / (4.0 * (k - 1));
    CHECK(oracle::cc(small) == doctest::Approx(closed).epsilon(1e-12));
  }
}

TEST_CASE("rewiring keeps the edge count and connectivity") {
  for (double p : {0.05, 0.2, 1.0}) {
    const Graph g = watts_strogatz({2000, 6, p, 11});
    CHECK(g.num_edges() == 6000);
    CHECK(is_connected(g));
  }
}

TEST_CASE("generation is a pure function of the seed") {
  const Graph a = watts_strogatz({1000, 6, 0.2, 42});
  const Graph b = watts_strogatz({1000, 6, 0.2, 42});
  const Graph c = watts_strogatz({1000, 6, 0.2, 43});
  CHECK(a == b);
  CHECK_FALSE(a == c);
}

TEST_CASE("more rewiring means shorter paths and less clustering") {
  const Graph lo = watts_strogatz({2000, 6, 0.01, 3});
  const Graph hi = watts_strogatz({2000, 6, 0.3, 3});
  CHECK(average_path_length(hi).apl < average_path_length(lo).apl);
  CHECK(transitivity(hi).cc < transitivity(lo).cc);
}
