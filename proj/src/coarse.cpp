#include "swnet/coarse.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

#include "swnet/errors.hpp"
#include "swnet/parallel.hpp"

namespace swnet {

void CoarseState::validate() const {
  if (!(rho_i >= 0.0 && rho_r >= 0.0 && rho_i + rho_r <= 1.0 + 1e-12)) {
    throw InvalidCoarseState("coarse state (" + std::to_string(rho_i) + ", " +
                             std::to_string(rho_r) + ") is outside the density simplex");
  }
}

CoarseState project(const Eigen::Vector2d& v) {
  Eigen::Vector2d p = v.cwiseMax(0.0);
  const double total = p.sum();
  if (total > 1.0) p /= total;
  return CoarseState::from(p);
}

EpidemicState lift(const CoarseState& coarse, const Graph& g, const EpidemicParams& params,
                   RandomStream& rng) {
  coarse.validate();
  return seed_densities(g, coarse.rho_i, coarse.rho_r, params, rng);
}

CoarseState restrict_state(const EpidemicState& state) {
  if (state.nodes.empty()) return {};
  const auto n = static_cast<double>(state.nodes.size());
  return {static_cast<double>(state.count(Phase::Infected)) / n,
          static_cast<double>(state.count(Phase::Recovered)) / n};
}

CoarseBurst coarse_burst(const CoarseState& coarse, const Graph& g, const EpidemicParams& params,
                         const CoarseStepConfig& cfg, std::uint64_t seed) {
  if (cfg.horizon < 1 || cfg.replicas < 1 || cfg.healing < 0) {
    throw InvalidParams("coarse time-stepper needs horizon >= 1, replicas >= 1, healing >= 0");
  }
  coarse.validate();
  const auto replicas = static_cast<std::size_t>(cfg.replicas);
  std::vector<Eigen::Vector2d> starts(replicas), ends(replicas);
  parallel_for(replicas, cfg.workers, [&](std::size_t r) {
    RandomStream rng(derive_seed(seed, "replica", r));
    EpidemicState state = lift(coarse, g, params, rng);
    for (long t = 0; t < cfg.healing; ++t) step(state, g, params, rng);
    starts[r] = restrict_state(state).vector();
    for (long t = 0; t < cfg.horizon; ++t) step(state, g, params, rng);
    ends[r] = restrict_state(state).vector();
  });
  const auto count = static_cast<double>(replicas);
  Eigen::Vector2d start = Eigen::Vector2d::Zero(), end = Eigen::Vector2d::Zero();
  for (std::size_t r = 0; r < replicas; ++r) {
    start += starts[r];
    end += ends[r];
  }
  start /= count;
  end /= count;
  CoarseBurst out{CoarseState::from(start), CoarseState::from(end), 0.0};
  if (replicas > 1) {
    Eigen::Vector2d var = Eigen::Vector2d::Zero();
    for (std::size_t r = 0; r < replicas; ++r) {
      var += (ends[r] - starts[r] - (end - start)).cwiseAbs2();
    }
    out.drift_se = std::sqrt(var.sum() / (count - 1.0) / count);
  }
  return out;
}

CoarseState coarse_timestep(const CoarseState& coarse, const Graph& g,
                            const EpidemicParams& params, const CoarseStepConfig& cfg,
                            std::uint64_t seed) {
  return coarse_burst(coarse, g, params, cfg, seed).end;
}

CoarseState coarse_timestep(const CoarseState& coarse, const Graph& g,
                            const EpidemicParams& params, const CoarseStepConfig& cfg,
                            RandomStream& rng) {
  return coarse_timestep(coarse, g, params, cfg, rng.next_seed());
}

Eigen::Matrix2d coarse_jacobian(const CoarseState& coarse, const Graph& g,
                                const EpidemicParams& params, const CoarseStepConfig& cfg,
                                std::uint64_t seed, double h) {
  const Eigen::Vector2d c = coarse.vector();
  auto phi = [&](const Eigen::Vector2d& x) {
    return coarse_timestep(CoarseState::from(x), g, params, cfg, seed).vector();
  };
  auto feasible = [](const Eigen::Vector2d& x) {
    return x(0) >= 0.0 && x(1) >= 0.0 && x.sum() <= 1.0;
  };
  Eigen::Matrix2d jac;
  for (int d = 0; d < 2; ++d) {
    Eigen::Vector2d plus = c, minus = c;
    plus(d) += h;
    minus(d) -= h;
    const bool up = feasible(plus), down = feasible(minus);
    if (up && down) {
      jac.col(d) = (phi(plus) - phi(minus)) / (2.0 * h);
    } else if (up) {
      jac.col(d) = (phi(plus) - phi(c)) / h;
    } else if (down) {
      jac.col(d) = (phi(c) - phi(minus)) / h;
    } else {
      throw InvalidCoarseState("finite-difference stencil does not fit in the simplex");
    }
  }
  return jac;
}

namespace {

void classify(CoarseFixedPoint& fp) {
  Eigen::EigenSolver<Eigen::Matrix2d> solver(fp.jacobian, false);
  fp.eigenvalues = solver.eigenvalues();
  Eigen::Vector2d mags = fp.eigenvalues.cwiseAbs();
  if (mags(1) > mags(0)) std::swap(mags(0), mags(1));
  fp.multipliers = mags;
  fp.stable = mags(0) < 1.0;
  fp.complex_pair = std::abs(fp.eigenvalues(0).imag()) > 0.0;
}

}  // namespace

CoarseFixedPoint coarse_fixed_point(const CoarseState& guess, const Graph& g,
                                    const EpidemicParams& params, const NewtonConfig& cfg,
                                    RandomStream& rng) {
  guess.validate();
  CoarseFixedPoint fp;
  Eigen::Vector2d c = guess.vector();
  std::uint64_t seed = rng.next_seed();

  // Start and end states of the burst from x, stacked.
  double noise = 0.0;
  auto burst = [&](const Eigen::Vector2d& x, std::uint64_t s, double* se = nullptr) {
    const CoarseBurst b = coarse_burst(CoarseState::from(x), g, params, cfg.step, s);
    if (se != nullptr) *se = b.drift_se;
    Eigen::Matrix2d m;
    m << b.start.vector(), b.end.vector();
    return m;
  };
  auto residual = [](const Eigen::Matrix2d& m) { return Eigen::Vector2d(m.col(1) - m.col(0)); };
  auto feasible = [](const Eigen::Vector2d& x) {
    return x(0) >= 0.0 && x(1) >= 0.0 && x.sum() <= 1.0;
  };
  // Derivatives of the start and end states with respect to the lifted state.
  auto derivatives = [&](const Eigen::Vector2d& x, const Eigen::Matrix2d& at_x,
                         std::uint64_t s, Eigen::Matrix2d& d_start, Eigen::Matrix2d& d_end) {
    const double h = cfg.fd_step;
    for (int d = 0; d < 2; ++d) {
      Eigen::Vector2d plus = x, minus = x;
      plus(d) += h;
      minus(d) -= h;
      const bool up = feasible(plus), down = feasible(minus);
      Eigen::Matrix2d diff;
      if (up && down) {
        diff = (burst(plus, s) - burst(minus, s)) / (2.0 * h);
      } else if (up) {
        diff = (burst(plus, s) - at_x) / h;
      } else if (down) {
        diff = (at_x - burst(minus, s)) / h;
      } else {
        throw InvalidCoarseState("finite-difference stencil does not fit in the simplex");
      }
      d_start.col(d) = diff.col(0);
      d_end.col(d) = diff.col(1);
    }
  };

  const bool interior = guess.rho_i > 0.0;
  Eigen::Matrix2d at_c = burst(c, seed, &noise);
  Eigen::Vector2d gc = residual(at_c);
  auto settled = [&] { return gc.norm() <= std::max(cfg.tol, 3.0 * noise); };
  for (fp.iterations = 0; fp.iterations < cfg.max_iters; ++fp.iterations) {
    if (settled()) {
      fp.converged = true;
      break;
    }
    Eigen::Matrix2d d_start, d_end;
    derivatives(c, at_c, seed, d_start, d_end);
    const Eigen::FullPivLU<Eigen::Matrix2d> lu(d_end - d_start);
    if (!lu.isInvertible()) break;
    Eigen::Vector2d delta = lu.solve(-gc);
    if (delta.norm() > cfg.max_step) delta *= cfg.max_step / delta.norm();

    double lambda = 1.0;
    bool improved = false;
    Eigen::Vector2d trial;
    Eigen::Matrix2d at_trial;
    for (int halving = 0; halving <= cfg.max_halvings; ++halving, lambda *= 0.5) {
      trial = project(c + lambda * delta).vector();
      // An interior guess must not fall onto the absorbing extinct state.
      if (interior && trial(0) <= 0.0) continue;
      at_trial = burst(trial, seed);
      if (interior && at_trial(0, 0) <= 0.0) continue;
      if (residual(at_trial).norm() < gc.norm()) {
        improved = true;
        break;
      }
    }
    if (!improved) break;
    c = trial;
    // Fresh noise for the next iteration's residual and derivative.
    seed = rng.next_seed();
    at_c = burst(c, seed, &noise);
    gc = residual(at_c);
  }
  if (!fp.converged && settled()) fp.converged = true;

  fp.state = CoarseState::from(at_c.col(0));
  fp.residual = gc.norm();
  Eigen::Matrix2d d_start, d_end;
  derivatives(c, at_c, seed, d_start, d_end);
  const Eigen::FullPivLU<Eigen::Matrix2d> lu(d_start);
  fp.jacobian = lu.isInvertible() ? Eigen::Matrix2d(d_end * lu.inverse()) : d_end;
  classify(fp);
  return fp;
}

}  // namespace swnet
