#ifndef SWNET_COARSE_HPP
#define SWNET_COARSE_HPP

#include <Eigen/Core>

#include <cstdint>

#include "swnet/epidemic.hpp"
#include "swnet/graph.hpp"
#include "swnet/random.hpp"

namespace swnet {

/// Macroscopic state: infected and recovered densities.
struct CoarseState {
  double rho_i = 0.0;
  double rho_r = 0.0;

  Eigen::Vector2d vector() const { return {rho_i, rho_r}; }
  static CoarseState from(const Eigen::Vector2d& v) { return {v(0), v(1)}; }

  /// Throws InvalidCoarseState unless both densities are non-negative and
  /// sum to at most one.
  void validate() const;
};

/// Closest valid coarse state: clamps to the simplex rho_i, rho_r >= 0,
/// rho_i + rho_r <= 1.
CoarseState project(const Eigen::Vector2d& v);

/// Micro state with floor(rho_i N) infected and floor(rho_r N) recovered
/// nodes at uniformly random positions with uniform ages.
EpidemicState lift(const CoarseState& coarse, const Graph& g, const EpidemicParams& params,
                   RandomStream& rng);

/// Densities (i_count / N, r_count / N).
CoarseState restrict_state(const EpidemicState& state);

struct CoarseStepConfig {
  long horizon = 20;
  int replicas = 32;
  int workers = 1;
  /// Steps run after lifting and before the start state is restricted, so
  /// the micro state can rebuild the spatial correlations the lift discards.
  long healing = 20;
};

/// Coarse states at the start (after healing) and end of a burst.
struct CoarseBurst {
  CoarseState start;
  CoarseState end;
  double drift_se = 0.0;  // standard error of |end - start| over replicas
};

/// Replica r lifts c with derive_seed(seed, "replica", r), runs `healing`
/// steps, restricts (start), runs `horizon` more steps and restricts again
/// (end). Both are averaged over replicas.
CoarseBurst coarse_burst(const CoarseState& coarse, const Graph& g, const EpidemicParams& params,
                         const CoarseStepConfig& cfg, std::uint64_t seed);

/// Coarse map Phi(c): mean over replicas of restrict(evolve(lift(c))) after
/// healing + horizon steps. Replica r uses derive_seed(seed, "replica", r), so two
/// calls with the same seed share random numbers (common random numbers).
CoarseState coarse_timestep(const CoarseState& coarse, const Graph& g,
                            const EpidemicParams& params, const CoarseStepConfig& cfg,
                            std::uint64_t seed);

CoarseState coarse_timestep(const CoarseState& coarse, const Graph& g,
                            const EpidemicParams& params, const CoarseStepConfig& cfg,
                            RandomStream& rng);

/// Finite-difference derivative of the coarse map with common random numbers:
/// central differences with step h, one-sided where the stencil would leave
/// the simplex.
Eigen::Matrix2d coarse_jacobian(const CoarseState& coarse, const Graph& g,
                                const EpidemicParams& params, const CoarseStepConfig& cfg,
                                std::uint64_t seed, double h);

struct NewtonConfig {
  CoarseStepConfig step;
  double fd_step = 0.01;
  double tol = 1e-3;  // also met once the residual is within 3 standard errors
  int max_iters = 20;
  int max_halvings = 8;
  double max_step = 0.05;  // longest Newton step in the (rho_i, rho_r) plane
};

struct CoarseFixedPoint {
  CoarseState state;
  double residual = 0.0;  // |Phi(c) - c|
  bool converged = false;
  int iterations = 0;
  Eigen::Matrix2d jacobian = Eigen::Matrix2d::Zero();  // of the start -> end map
  Eigen::Vector2cd eigenvalues = Eigen::Vector2cd::Zero();
  Eigen::Vector2d multipliers = Eigen::Vector2d::Zero();  // |eigenvalues|, descending
  bool stable = false;        // every multiplier inside the unit circle
  bool complex_pair = false;  // eigenvalues form a complex-conjugate pair

  double max_multiplier() const { return multipliers(0); }
};

/// Damped Newton on G(c) = end(c) - start(c) of coarse_burst, which is
/// Phi(c) - c when healing is 0 (up to the 1/N rounding of the lift). Each
/// iteration draws one seed that is shared by the residual, the Jacobian
/// stencil and the line search; the step is capped at max_step and halved
/// until the residual decreases. From a guess with rho_i > 0 the iteration
/// never steps onto rho_i = 0. The reported state is the healed start state, and the
/// multipliers are those of the start -> end map, D end (D start)^-1.
/// Non-convergence is reported in the result rather than raised.
CoarseFixedPoint coarse_fixed_point(const CoarseState& guess, const Graph& g,
                                    const EpidemicParams& params, const NewtonConfig& cfg,
                                    RandomStream& rng);

}  // namespace swnet

#endif  // SWNET_COARSE_HPP
