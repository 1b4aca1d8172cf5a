#include "swnet/epidemic.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "swnet/errors.hpp"

namespace swnet {

void EpidemicParams::validate() const {
  if (tau_i < 1 || tau_r < 1) throw InvalidParams("tau_i and tau_r must be at least 1");
  if (tau_i > 65535 || tau_r > 65535) throw InvalidParams("clock lengths must fit 16 bits");
  if (!(init_infected_frac >= 0.0 && init_infected_frac <= 1.0) ||
      !(init_recovered_frac >= 0.0 && init_recovered_frac <= 1.0) ||
      init_infected_frac + init_recovered_frac > 1.0 + 1e-12) {
    throw InvalidParams("initial fractions must lie in [0,1] and sum to at most 1");
  }
}

std::size_t EpidemicState::count(Phase phase) const {
  std::size_t c = 0;
  for (const NodeState& s : nodes) c += s.phase == phase;
  return c;
}

DensityRecord measure(const EpidemicState& state) {
  DensityRecord rec;
  rec.t = state.t;
  for (const NodeState& s : state.nodes) {
    switch (s.phase) {
      case Phase::Susceptible: ++rec.s; break;
      case Phase::Infected: ++rec.i; break;
      case Phase::Recovered: ++rec.r; break;
    }
  }
  if (!state.nodes.empty()) {
    rec.rho_i = static_cast<double>(rec.i) / static_cast<double>(state.nodes.size());
  }
  return rec;
}

double infection_probability(Node j, const EpidemicState& state, const Graph& g) {
  auto nbrs = g.neighbors(j);
  if (nbrs.empty()) return 0.0;
  std::size_t infected = 0;
  for (Node u : nbrs) infected += state.nodes[u].phase == Phase::Infected;
  return static_cast<double>(infected) / static_cast<double>(nbrs.size());
}

namespace {

// floor(x * n), robust to representation error such as 0.29 * 100.
std::size_t floor_count(double x, std::size_t n) {
  return static_cast<std::size_t>(std::floor(x * static_cast<double>(n) + 1e-9));
}

}  // namespace

EpidemicState seed_densities(const Graph& g, double infected, double recovered,
                             const EpidemicParams& params, RandomStream& rng) {
  params.validate();
  const auto n = static_cast<std::size_t>(g.num_nodes());
  const std::size_t n_inf = floor_count(infected, n);
  const std::size_t n_rec = floor_count(recovered, n);
  if (infected < 0.0 || recovered < 0.0 || n_inf + n_rec > n) {
    throw InvalidParams("initial densities must be non-negative and sum to at most 1");
  }

  std::vector<Node> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t a = 0; a + 1 < n; ++a) std::swap(order[a], order[a + rng.index(n - a)]);

  EpidemicState state;
  state.nodes.resize(n);
  for (std::size_t a = 0; a < n_inf; ++a) state.nodes[order[a]].phase = Phase::Infected;
  for (std::size_t a = n_inf; a < n_inf + n_rec; ++a) {
    state.nodes[order[a]].phase = Phase::Recovered;
  }
  for (NodeState& s : state.nodes) {
    const double u = rng.uniform();
    if (s.phase == Phase::Infected) {
      s.age = static_cast<std::uint16_t>(1 + static_cast<int>(u * params.tau_i));
    } else if (s.phase == Phase::Recovered) {
      s.age = static_cast<std::uint16_t>(1 + static_cast<int>(u * params.tau_r));
    }
  }
  return state;
}

EpidemicState seed_state(const Graph& g, const EpidemicParams& params, RandomStream& rng) {
  return seed_densities(g, params.init_infected_frac, params.init_recovered_frac, params, rng);
}

void step(EpidemicState& state, const Graph& g, const EpidemicParams& params,
          RandomStream& rng) {
  const auto n = state.nodes.size();
  // Infected-neighbour counts from the time-t configuration.
  std::vector<std::uint32_t> pressure(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    if (state.nodes[u].phase != Phase::Infected) continue;
    for (Node v : g.neighbors(static_cast<Node>(u))) ++pressure[v];
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double draw = rng.uniform();
    NodeState& s = state.nodes[j];
    switch (s.phase) {
      case Phase::Susceptible: {
        const std::size_t k = g.degree(static_cast<Node>(j));
        if (k > 0 && draw * static_cast<double>(k) < static_cast<double>(pressure[j])) {
          s = {Phase::Infected, 1};
        }
        break;
      }
      case Phase::Infected:
        s = s.age >= params.tau_i ? NodeState{Phase::Recovered, 1}
                                  : NodeState{Phase::Infected, static_cast<std::uint16_t>(s.age + 1)};
        break;
      case Phase::Recovered:
        s = s.age >= params.tau_r ? NodeState{Phase::Susceptible, 0}
                                  : NodeState{Phase::Recovered, static_cast<std::uint16_t>(s.age + 1)};
        break;
    }
  }
  ++state.t;
}

DensitySeries evolve(EpidemicState& state, const Graph& g, const EpidemicParams& params,
                     long steps, RandomStream& rng) {
  DensitySeries series;
  series.reserve(static_cast<std::size_t>(steps) + 1);
  series.push_back(measure(state));
  for (long s = 0; s < steps; ++s) {
    step(state, g, params, rng);
    series.push_back(measure(state));
  }
  return series;
}

DensitySeries run(const Graph& g, const EpidemicParams& params, long steps,
                  RandomStream& rng) {
  if (steps < 1) throw InvalidParams("steps must be at least 1");
  EpidemicState state = seed_state(g, params, rng);
  return evolve(state, g, params, steps, rng);
}

void write_density_csv(std::ostream& out, const DensitySeries& series) {
  out << "t,S,I,R,rho_I\n";
  char buf[128];
  for (const DensityRecord& rec : series) {
    std::snprintf(buf, sizeof buf, "%ld,%zu,%zu,%zu,%.6f\n", rec.t, rec.s, rec.i, rec.r,
                  rec.rho_i);
    out << buf;
  }
}

std::vector<double> infected_density(const DensitySeries& series) {
  std::vector<double> rho(series.size());
  for (std::size_t t = 0; t < series.size(); ++t) rho[t] = series[t].rho_i;
  return rho;
}

}  // namespace swnet
