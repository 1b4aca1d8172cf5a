#ifndef SWNET_EPIDEMIC_HPP
#define SWNET_EPIDEMIC_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "swnet/graph.hpp"
#include "swnet/random.hpp"

namespace swnet {

/// SIRS model with deterministic clocks: an infected node recovers after
/// tau_i steps and a recovered node loses immunity after tau_r steps.
struct EpidemicParams {
  int tau_i = 4;
  int tau_r = 9;
  double init_infected_frac = 0.1;
  double init_recovered_frac = 0.0;

  void validate() const;
};

enum class Phase : std::uint8_t { Susceptible, Infected, Recovered };

/// Age counts steps spent in the current phase, starting at 1; it is
/// unused (0) for susceptible nodes.
struct NodeState {
  Phase phase = Phase::Susceptible;
  std::uint16_t age = 0;

  friend bool operator==(const NodeState&, const NodeState&) = default;
};

struct EpidemicState {
  std::vector<NodeState> nodes;
  long t = 0;

  std::size_t count(Phase phase) const;
};

struct DensityRecord {
  long t = 0;
  std::size_t s = 0;
  std::size_t i = 0;
  std::size_t r = 0;
  double rho_i = 0.0;
};

using DensitySeries = std::vector<DensityRecord>;

DensityRecord measure(const EpidemicState& state);

/// Fraction of node j's neighbours that are infected, n_j / k_j. Isolated
/// nodes get probability 0.
double infection_probability(Node j, const EpidemicState& state, const Graph& g);

/// Places floor(infected * N) infected and floor(recovered * N) recovered
/// nodes uniformly at random, ages uniform in 1..tau. Draws a fixed number of
/// random values (N - 1 for the placement, N for the ages) whatever the
/// densities, so nearby densities under the same seed give overlapping
/// configurations.
EpidemicState seed_densities(const Graph& g, double infected, double recovered,
                             const EpidemicParams& params, RandomStream& rng);

/// seed_densities at the configured initial fractions.
EpidemicState seed_state(const Graph& g, const EpidemicParams& params, RandomStream& rng);

/// One synchronous update from the time-t configuration. Consumes exactly one
/// uniform draw per node, in node order; susceptible nodes compare it with
/// n_j / k_j.
void step(EpidemicState& state, const Graph& g, const EpidemicParams& params,
          RandomStream& rng);

/// Seeds a state and records densities at t = 0..steps.
DensitySeries run(const Graph& g, const EpidemicParams& params, long steps,
                  RandomStream& rng);

/// Iterates an existing state, recording densities at every step including
/// the starting one.
DensitySeries evolve(EpidemicState& state, const Graph& g, const EpidemicParams& params,
                     long steps, RandomStream& rng);

/// CSV with header "t,S,I,R,rho_I", densities with 6 fractional digits.
void write_density_csv(std::ostream& out, const DensitySeries& series);

std::vector<double> infected_density(const DensitySeries& series);

}  // namespace swnet

#endif  // SWNET_EPIDEMIC_HPP
