#include "swnet/generator.hpp"

#include <string>

#include "swnet/errors.hpp"
#include "swnet/random.hpp"

namespace swnet {

namespace {

void validate(Node n, int k) {
  if (k < 2 || k % 2 != 0) {
    throw InvalidParams("degree k must be even and at least 2 (got " +
                        std::to_string(k) + ")");
  }
  if (k >= n) {
    throw InvalidParams("degree k must be smaller than the node count (k=" +
                        std::to_string(k) + ", n=" + std::to_string(n) + ")");
  }
}

Graph rewire_once(const WsParams& params, std::uint64_t seed) {
  Graph g = ring_lattice(params.n, params.k);
  if (params.p == 0.0) return g;
  RandomStream rng(seed);
  const Node n = params.n;
  for (int lane = 1; lane <= params.k / 2; ++lane) {
    for (Node i = 0; i < n; ++i) {
      if (rng.uniform() >= params.p) continue;
      const Node far = static_cast<Node>((i + lane) % n);
      if (!g.has_edge(i, far)) continue;
      if (g.degree(i) + 1 >= static_cast<std::size_t>(n)) continue;  // nowhere to go
      Node target;
      do {
        target = static_cast<Node>(rng.index(static_cast<std::size_t>(n)));
      } while (target == i || g.has_edge(i, target));
      g.remove_edge(i, far);
      g.add_edge(i, target);
    }
  }
  return g;
}

}  // namespace

Graph ring_lattice(Node n, int k) {
  validate(n, k);
  Graph g(n);
  for (int lane = 1; lane <= k / 2; ++lane) {
    for (Node i = 0; i < n; ++i) g.add_edge(i, static_cast<Node>((i + lane) % n));
  }
  return g;
}

Graph watts_strogatz(const WsParams& params) {
  validate(params.n, params.k);
  if (!(params.p >= 0.0 && params.p <= 1.0)) {
    throw InvalidParams("rewiring probability must lie in [0,1]");
  }
  for (int attempt = 0; attempt <= kWsMaxRetries; ++attempt) {
    const std::uint64_t seed =
        attempt == 0 ? params.seed : derive_seed(params.seed, "ws-retry", attempt);
    Graph g = rewire_once(params, seed);
    if (is_connected(g)) return g;
  }
  throw GenerationFailed("Watts-Strogatz: no connected sample after " +
                         std::to_string(kWsMaxRetries) + " retries");
}

}  // namespace swnet
