#ifndef SWNET_SWEEP_HPP
#define SWNET_SWEEP_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swnet/coarse.hpp"
#include "swnet/epidemic.hpp"
#include "swnet/graph.hpp"
#include "swnet/spectral.hpp"
#include "swnet/tuner.hpp"

namespace swnet {

enum class SweepAxis { Apl, Cc };

std::string to_string(SweepAxis axis);
SweepAxis parse_axis(const std::string& text);

/// Ensemble of direct simulations on one graph, summarised for a diagram.
struct EnsembleConfig {
  int replicas = 3;
  long steps = 2000;
  long burn_in = 1000;
  RegimeConfig regime;
  int workers = 1;
};

struct EnsembleSummary {
  double mean_i = 0.0;  // mean over replicas of the post-burn-in mean
  double mean_r = 0.0;
  double amplitude_mean = 0.0;
  double amplitude_max = 0.0;
  std::optional<double> dominant_period;  // median over oscillatory replicas
  Regime regime = Regime::Stationary;     // majority verdict
  std::vector<RegimeReport> replicas;
};

/// Replica r runs from derive_seed(seed, "ensemble", r).
EnsembleSummary simulate_ensemble(const Graph& g, const EpidemicParams& params,
                                  const EnsembleConfig& cfg, std::uint64_t seed);

struct SweepConfig {
  JointSchedule tuning;
  EnsembleConfig ensemble;
  bool fixed_point = true;
  NewtonConfig newton;
};

struct SweepPoint {
  SweepAxis axis = SweepAxis::Apl;
  double target = 0.0;
  double achieved_apl = 0.0;
  double achieved_cc = 0.0;
  TuneStatus tuning = TuneStatus::Converged;
  EnsembleSummary ensemble;
  std::optional<CoarseFixedPoint> fixed_point;
  std::uint64_t seed = 0;
};

/// For each target: tune the previous point's graph (the base graph for the
/// first) to (target on `axis`, fixed_value on the other metric), simulate an
/// ensemble, and locate the coarse fixed point from the ensemble mean.
/// Tuning failures are recorded in the point and the sweep continues.
/// Point p uses seed derive_seed(master, "sweep-point", p).
std::vector<SweepPoint> bifurcation_sweep(const Graph& base, SweepAxis axis, double fixed_value,
                                          std::span<const double> targets,
                                          const EpidemicParams& epidemic,
                                          const SweepConfig& cfg, RandomStream& rng);

/// CSV, one row per point, header
/// axis,target,achieved_apl,achieved_cc,mean_I,amplitude_mean,amplitude_max,
/// dominant_period,regime,fp_rho_I,fp_residual,fp_max_multiplier,fp_stable,seed
void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points);

}  // namespace swnet

#endif  // SWNET_SWEEP_HPP
