#ifndef SWNET_GENERATOR_HPP
#define SWNET_GENERATOR_HPP

#include <cstdint>

#include "swnet/graph.hpp"

namespace swnet {

struct WsParams {
  Node n = 0;
  int k = 6;       // even; k/2 neighbours on each side of the ring
  double p = 0.0;  // rewiring probability
  std::uint64_t seed = 0;
};

/// Ring lattice: node i adjacent to i±1, ..., i±k/2 (mod n).
/// Requires k even and 2 <= k < n; throws InvalidParams otherwise.
Graph ring_lattice(Node n, int k);

/// Watts–Strogatz small world. Starting from ring_lattice(n, k), lanes
/// s = 1..k/2 are scanned in order and each clockwise edge (i, i+s) has its
/// far endpoint moved, with probability p, to a uniformly random node that
/// is neither i nor already adjacent to i.
///
/// Disconnected samples are discarded and regenerated from
/// derive_seed(seed, "ws-retry", attempt); after 100 retries GenerationFailed
/// is thrown.
Graph watts_strogatz(const WsParams& params);

/// Number of regeneration attempts allowed for a disconnected sample.
inline constexpr int kWsMaxRetries = 100;

}  // namespace swnet

#endif  // SWNET_GENERATOR_HPP
